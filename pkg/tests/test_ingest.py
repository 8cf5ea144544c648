import io
import json

import pytest

from copnet.errors import ConfigurationError
from copnet.ingest import (
    CSV_COLUMNS,
    MentionEdge,
    ParseError,
    TweetRecord,
    count_hashtags,
    extract_mention_edges,
    parse_tweet_stream,
    serialize_record,
)


def parse_all(text: str, format: str = "jsonlines"):
    stream = io.BytesIO(text.encode("utf-8"))
    return list(parse_tweet_stream(stream, format=format))


def jl(**kw) -> str:
    base = {"id": "t1", "author": "u1", "ts": 100, "mentions": [], "hashtags": [], "text": ""}
    base.update(kw)
    return json.dumps(base)


class TestParseTweetStream:
    def test_empty_file_yields_nothing(self):
        assert parse_all("") == []

    def test_single_record(self):
        [(lineno, record)] = parse_all(jl(mentions=["u2"]))
        assert lineno == 1
        assert isinstance(record, TweetRecord)
        assert record.author_id == "u1"
        assert record.mention_ids == ("u2",)

    def test_truncated_line_yields_error_others_survive(self):
        text = "\n".join([jl(id="a"), '{"id": "b", "author":', jl(id="c")])
        items = parse_all(text)
        assert len(items) == 3
        assert isinstance(items[0][1], TweetRecord)
        assert isinstance(items[1][1], ParseError)
        assert items[1][0] == 2 and items[1][1].line_number == 2
        assert isinstance(items[2][1], TweetRecord)

    def test_unknown_keys_ignored_and_missing_fields_default_empty(self):
        line = '{"id": "t", "author": "u", "ts": 5, "spam": 1}'
        [(_, record)] = parse_all(line)
        assert record.mention_ids == ()
        assert record.hashtags == ()
        assert record.text == ""

    def test_blank_lines_are_skipped(self):
        items = parse_all(jl() + "\n\n" + jl(id="t2") + "\n")
        assert [lineno for lineno, _ in items] == [1, 3]

    def test_invalid_fields_become_parse_errors(self):
        for line in (
            jl(author=""),
            jl(ts=-1),
            jl(ts="soon"),
            jl(mentions=["u2", ""]),
            '[1, 2]',
        ):
            [(_, item)] = parse_all(line)
            assert isinstance(item, ParseError), line

    def test_unknown_format_rejected(self):
        with pytest.raises(ConfigurationError):
            parse_all("x", format="parquet")

    def test_csv_round(self):
        header = ",".join(CSV_COLUMNS)
        rows = [header, 't1,u1,100,u2;u3,tag1;Tag2,"hello, world"']
        [(_, record)] = parse_all("\n".join(rows), format="csv")
        assert record.mention_ids == ("u2", "u3")
        assert record.hashtags == ("tag1", "Tag2")
        assert record.text == "hello, world"

    def test_csv_header_mismatch_is_fatal(self):
        with pytest.raises(ConfigurationError):
            parse_all("a,b,c\n1,2,3", format="csv")

    def test_csv_bad_row_is_parse_error(self):
        header = ",".join(CSV_COLUMNS)
        items = parse_all(header + "\nt1,u1,nope,,,x", format="csv")
        assert isinstance(items[0][1], ParseError)


class TestRoundTrip:
    RECORDS = [
        TweetRecord("t1", "u1", 0, ("u2",), ("climate",), "hello #climate @u2"),
        TweetRecord("t2", "u9", 1448841600, (), (), ""),
        TweetRecord("t3", "ü", 7, ("a", "a"), ("Tag", "tag"), 'quote " comma, end'),
    ]

    @pytest.mark.parametrize("format", ["jsonlines", "csv"])
    def test_serialize_then_parse_is_identity(self, format):
        for record in self.RECORDS:
            line = serialize_record(record, format=format)
            if format == "csv":
                line = ",".join(CSV_COLUMNS) + "\n" + line
            [(_, back)] = parse_all(line, format=format)
            assert back == record


class TestExtractMentionEdges:
    def test_no_mentions(self):
        record = TweetRecord("t", "u1", 5, (), (), "")
        assert extract_mention_edges(record) == []

    def test_direct_mapping(self):
        record = TweetRecord("t", "u1", 100, ("u2", "u3"), (), "")
        assert extract_mention_edges(record) == [
            MentionEdge("u1", "u2", 100, 1.0),
            MentionEdge("u1", "u3", 100, 1.0),
        ]

    def test_duplicate_mentions_produce_duplicate_edges(self):
        record = TweetRecord("t", "u1", 100, ("u2", "u2"), (), "")
        edges = extract_mention_edges(record)
        assert edges == [MentionEdge("u1", "u2", 100, 1.0)] * 2

    def test_output_length_always_matches_mention_count(self):
        for mentions in [(), ("a",), ("a", "b", "a", "u1")]:
            record = TweetRecord("t", "u1", 0, mentions, (), "")
            assert len(extract_mention_edges(record)) == len(mentions)


def records_with_tags(*tag_lists):
    return [TweetRecord(f"t{i}", "u", 0, (), tuple(tags), "")
            for i, tags in enumerate(tag_lists)]


class TestCountHashtags:
    def test_majority_element(self):
        records = records_with_tags(["a"], ["a"], ["b"])
        assert count_hashtags(records, k=1) == [("a", 2)]

    def test_case_folding(self):
        records = records_with_tags(["A"], ["a"])
        assert count_hashtags(records, k=2) == [("a", 2)]

    def test_lexicographic_tie_break(self):
        records = records_with_tags(["y"], ["x"])
        assert count_hashtags(records, k=2) == [("x", 1), ("y", 1)]

    def test_fewer_distinct_than_k(self):
        records = records_with_tags(["solo"])
        assert count_hashtags(records, k=10) == [("solo", 1)]

    def test_counts_conserve_total_occurrences(self):
        records = records_with_tags(["a", "b"], ["B", "c", "a"], [], ["a"])
        total = sum(len(r.hashtags) for r in records)
        counts = count_hashtags(records, k=100)
        assert sum(c for _, c in counts) == total

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            count_hashtags([], k=0)
