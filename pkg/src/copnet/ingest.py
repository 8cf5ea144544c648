"""Tweet-record ingestion: streaming parsers, mention-edge extraction, hashtag counts.

Records are parsed line by line; a damaged line yields a :class:`ParseError`
instead of aborting the stream, so large crawled corpora ingest end to end.
Parsed records are immutable and safe to share across threads.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Union

from .errors import ConfigurationError

FORMATS = ("jsonlines", "csv")

CSV_COLUMNS = ("tweet_id", "author_id", "timestamp", "mentions", "hashtags", "text")


@dataclass(frozen=True)
class TweetRecord:
    """One tweet: author, time, who it mentions, its hashtags and text."""

    tweet_id: str
    author_id: str
    timestamp: int
    mention_ids: tuple[str, ...] = ()
    hashtags: tuple[str, ...] = ()
    text: str = ""


@dataclass(frozen=True)
class MentionEdge:
    """Directed mention: the author points at the mentioned user."""

    src: str
    dst: str
    timestamp: int
    weight: float = 1.0


@dataclass(frozen=True)
class ParseError:
    """A line that could not be turned into a record, and why."""

    line_number: int
    reason: str


def _as_str_list(value, what: str) -> tuple[str, ...]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ValueError(f"{what} must be a list of strings")
    return tuple(value)


def _make_record(tweet_id, author_id, timestamp, mentions, hashtags, text) -> TweetRecord:
    """Validate raw fields and build a TweetRecord; raises ValueError with a reason."""
    if not isinstance(tweet_id, str):
        raise ValueError("id must be a string")
    if not isinstance(author_id, str) or not author_id:
        raise ValueError("author must be a non-empty string")
    if isinstance(timestamp, bool) or not isinstance(timestamp, int):
        raise ValueError("ts must be an integer")
    if timestamp < 0:
        raise ValueError("ts must be >= 0")
    if any(m == "" for m in mentions):
        raise ValueError("mentions must not contain empty ids")
    if not isinstance(text, str):
        raise ValueError("text must be a string")
    # Hashtags are stored bare; tolerate a stray leading '#'.
    tags = tuple(t[1:] if t.startswith("#") else t for t in hashtags)
    return TweetRecord(
        tweet_id=tweet_id,
        author_id=author_id,
        timestamp=timestamp,
        mention_ids=tuple(mentions),
        hashtags=tags,
        text=text,
    )


def _parse_json_line(line: str) -> TweetRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ValueError("line is not a JSON object")
    for key in ("id", "author", "ts"):
        if key not in obj:
            raise ValueError(f"missing required key {key!r}")
    return _make_record(
        obj["id"],
        obj["author"],
        obj["ts"],
        _as_str_list(obj.get("mentions", []), "mentions"),
        _as_str_list(obj.get("hashtags", []), "hashtags"),
        obj.get("text", ""),
    )


def _split_field(field: str) -> tuple[str, ...]:
    # ';'-separated list field; empty field means no entries.
    return tuple(part for part in field.split(";") if part != "")


def _parse_csv_row(row: list[str]) -> TweetRecord:
    if len(row) != len(CSV_COLUMNS):
        raise ValueError(f"expected {len(CSV_COLUMNS)} columns, got {len(row)}")
    tweet_id, author_id, ts_field, mentions, hashtags, text = row
    try:
        timestamp = int(ts_field)
    except ValueError:
        raise ValueError(f"timestamp is not an integer: {ts_field!r}") from None
    return _make_record(
        tweet_id, author_id, timestamp, _split_field(mentions), _split_field(hashtags), text
    )


def _iter_text_lines(source) -> Iterator[str]:
    if isinstance(source, io.TextIOBase):
        yield from source
        return
    for line in source:
        yield line.decode("utf-8") if isinstance(line, bytes) else line


def parse_tweet_stream(
    source: Union[IO[bytes], IO[str], Iterable[str]],
    format: str = "jsonlines",
) -> Iterator[tuple[int, Union[TweetRecord, ParseError]]]:
    """Lazily parse a line-oriented stream of tweet records.

    Yields ``(line_number, TweetRecord)`` for well-formed lines and
    ``(line_number, ParseError)`` for damaged ones; a single bad line never
    aborts the stream.  Line numbers are 1-based.  ``format`` is either
    ``"jsonlines"`` or ``"csv"`` (header row required for csv).
    """
    if format not in FORMATS:
        raise ConfigurationError(f"unknown input format {format!r}; expected one of {FORMATS}")

    lines = _iter_text_lines(source)
    if format == "jsonlines":
        for lineno, line in enumerate(lines, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                yield lineno, _parse_json_line(stripped)
            except ValueError as exc:
                yield lineno, ParseError(lineno, str(exc))
        return

    # csv: the reader must see raw lines so quoted newlines are not an issue
    # for this schema (text is a single field on one line).
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None:
        return
    if [h.strip() for h in header] != list(CSV_COLUMNS):
        raise ConfigurationError(
            f"csv header mismatch: expected {','.join(CSV_COLUMNS)}, got {','.join(header)}"
        )
    for row in reader:
        lineno = reader.line_num
        if not row:
            continue
        try:
            yield lineno, _parse_csv_row(row)
        except ValueError as exc:
            yield lineno, ParseError(lineno, str(exc))


def serialize_record(record: TweetRecord, format: str = "jsonlines") -> str:
    """Render a record back to one line of the given format (without newline)."""
    if format == "jsonlines":
        return json.dumps(
            {
                "id": record.tweet_id,
                "author": record.author_id,
                "ts": record.timestamp,
                "mentions": list(record.mention_ids),
                "hashtags": list(record.hashtags),
                "text": record.text,
            },
            ensure_ascii=False,
        )
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="")
        writer.writerow(
            [
                record.tweet_id,
                record.author_id,
                str(record.timestamp),
                ";".join(record.mention_ids),
                ";".join(record.hashtags),
                record.text,
            ]
        )
        return buf.getvalue()
    raise ConfigurationError(f"unknown output format {format!r}; expected one of {FORMATS}")


def extract_mention_edges(record: TweetRecord) -> list[MentionEdge]:
    """One unit-weight edge per mention, in order; duplicates are preserved.

    Repeated mentions of the same user in one tweet represent emphasis and
    are kept as separate edges so they accumulate as weight downstream.
    """
    return [
        MentionEdge(src=record.author_id, dst=m, timestamp=record.timestamp)
        for m in record.mention_ids
    ]


def count_hashtags(records: Iterable[TweetRecord], k: int) -> list[tuple[str, int]]:
    """Top-k hashtags by descending count, case-folded to lowercase.

    Ties break by ascending hashtag; fewer than ``k`` distinct hashtags
    yield a shorter list.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    counts = Counter(tag.lower() for record in records for tag in record.hashtags)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]
