import json

import pytest
from conftest import COP21_WEEK

from copnet.cli import main
from copnet.temporal_graph import WEEK_SECONDS


def jline(i, author, mentions, ts, tags=(), text="hello world"):
    return json.dumps({"id": f"t{i}", "author": author, "ts": ts,
                       "mentions": list(mentions), "hashtags": list(tags), "text": text})


@pytest.fixture
def triangle_corpus(tmp_path):
    """Two mention triangles in one week; every user has 2 edge endpoints... times 40."""
    lines = []
    i = 0
    week_start = 7 * WEEK_SECONDS
    for rep in range(40):
        for a, b in [("x0", "x1"), ("x1", "x2"), ("x2", "x0"),
                     ("y0", "y1"), ("y1", "y2"), ("y2", "y0")]:
            lines.append(jline(i, a, [b], week_start + i, tags=["Go", "go"],
                               text="good progress on clean energy"))
            i += 1
    path = tmp_path / "tweets.jsonl"
    path.write_text("\n".join(lines) + "\n")
    return path


def run(*argv):
    return main([str(a) for a in argv])


class TestIngest:
    def test_writes_edges_and_hashtags(self, tmp_path, triangle_corpus, capsys):
        out = tmp_path / "out"
        assert run("ingest", "--input", triangle_corpus, "--outdir", out) == 0
        edges = (out / "edges.csv").read_text().splitlines()
        assert edges[0] == "src,dst,week,weight"
        assert "x0,x1,7,40.0" in edges
        assert len(edges) == 7  # 6 aggregated arcs
        tags = json.loads((out / "hashtags.json").read_text())
        assert tags[0] == {"tag": "go", "count": 480}
        assert "0 parse errors" in capsys.readouterr().err

    def test_empty_input_gives_header_only(self, tmp_path):
        src = tmp_path / "empty.jsonl"
        src.write_text("")
        out = tmp_path / "out"
        assert run("ingest", "--input", src, "--outdir", out) == 0
        assert (out / "edges.csv").read_text() == "src,dst,week,weight\n"
        assert json.loads((out / "hashtags.json").read_text()) == []

    def test_malformed_lines_warn_but_exit_zero(self, tmp_path, capsys):
        src = tmp_path / "tweets.jsonl"
        src.write_text(jline(0, "u1", ["u2"], 5) + "\n{broken\n")
        out = tmp_path / "out"
        assert run("ingest", "--input", src, "--outdir", out) == 0
        err = capsys.readouterr().err
        assert "line 2" in err and "1 parse errors" in err

    def test_missing_input_is_fatal(self, tmp_path, capsys):
        assert run("ingest", "--input", tmp_path / "nope.jsonl", "--outdir", tmp_path) == 1
        assert "error:" in capsys.readouterr().err


class TestCommunities:
    def test_two_triangle_series(self, tmp_path, triangle_corpus):
        out = tmp_path / "out"
        run("ingest", "--input", triangle_corpus, "--outdir", out)
        assert run("communities", "--outdir", out, "--threshold", 80, "--seed", 0) == 0
        assert (out / "communities.csv").read_text() == (
            "week,num_communities,modularity\n7,2,0.5\n"
        )

    def test_threshold_filters_everything(self, tmp_path, triangle_corpus, capsys):
        out = tmp_path / "out"
        run("ingest", "--input", triangle_corpus, "--outdir", out)
        assert run("communities", "--outdir", out, "--threshold", 1000) == 0
        assert "no snapshots survived" in capsys.readouterr().err
        assert (out / "communities.csv").read_text() == "week,num_communities,modularity\n"

    def test_missing_edges_file_is_fatal(self, tmp_path, capsys):
        assert run("communities", "--outdir", tmp_path / "void") == 1
        assert "ingest" in capsys.readouterr().err

    def test_seed_spread_file(self, tmp_path, triangle_corpus):
        out = tmp_path / "out"
        run("ingest", "--input", triangle_corpus, "--outdir", out)
        assert run("communities", "--outdir", out, "--threshold", 80,
                   "--seeds", "0,1,2") == 0
        lines = (out / "communities_spread.csv").read_text().splitlines()
        assert lines[0] == "week,seed,num_communities,modularity"
        assert len(lines) == 4

    def test_rerun_is_byte_identical(self, tmp_path, triangle_corpus):
        out = tmp_path / "out"
        run("ingest", "--input", triangle_corpus, "--outdir", out)
        run("communities", "--outdir", out, "--threshold", 80)
        first = (out / "communities.csv").read_bytes()
        run("communities", "--outdir", out, "--threshold", 80)
        assert (out / "communities.csv").read_bytes() == first


class TestEvents:
    def test_custom_single_event_calendar(self, tmp_path, triangle_corpus):
        out = tmp_path / "out"
        run("ingest", "--input", triangle_corpus, "--outdir", out)
        calendar = tmp_path / "events.csv"
        # week 7 starts at 1970-02-19; anchor the event inside it
        calendar.write_text("name,start,end,location\nTEST,1970-02-20,1970-02-21,Testville\n")
        assert run("events", "--outdir", out, "--threshold", 80,
                   "--events", calendar, "--window", 2) == 0
        report = (out / "event_TEST.csv").read_text().splitlines()
        assert len(report) == 6
        assert report[3] == "TEST,7,0,6,6,0.2,2,0.5"

    def test_bundled_calendar_yields_13_reports(self, tmp_path, triangle_corpus):
        out = tmp_path / "out"
        run("ingest", "--input", triangle_corpus, "--outdir", out)
        assert run("events", "--outdir", out, "--threshold", 80, "--window", 0) == 0
        reports = sorted(p.name for p in out.glob("event_*.csv"))
        assert len(reports) == 13
        assert reports[0] == "event_COP13.csv"
        # w=0 windows have a single row
        for name in reports:
            assert len((out / name).read_text().splitlines()) == 2


class TestSentimentCmd:
    def test_distribution_json(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text("\n".join([
            jline(0, "u1", [], 0, text="good good"),
            jline(1, "u2", [], 0, text="bad"),
            jline(2, "u3", [], 0, text="nothing matching"),
            jline(3, "u4", [], 0, text="good"),
        ]) + "\n")
        out = tmp_path / "out"
        assert run("sentiment", "--input", src, "--outdir", out) == 0
        dist = json.loads((out / "sentiment.json").read_text())
        assert dist == {"positive": 0.5, "negative": 0.25, "neutral": 0.25, "n": 4}

    def test_custom_lexicon_and_band(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text(jline(0, "u1", [], 0, text="meh zap") + "\n")
        lexicon = tmp_path / "lex.csv"
        lexicon.write_text("token,polarity\nmeh,0.1\nzap,0.2\n")
        out = tmp_path / "out"
        assert run("sentiment", "--input", src, "--outdir", out,
                   "--lexicon", lexicon, "--neutral-band", 0.5) == 0
        dist = json.loads((out / "sentiment.json").read_text())
        assert dist["neutral"] == 1.0

    def test_empty_corpus_is_fatal(self, tmp_path, capsys):
        src = tmp_path / "tweets.jsonl"
        src.write_text("")
        assert run("sentiment", "--input", src, "--outdir", tmp_path) == 1
        assert "error:" in capsys.readouterr().err


class TestTopicsCmd:
    def test_topics_json_shape(self, tmp_path, triangle_corpus):
        out = tmp_path / "out"
        assert run("topics", "--input", triangle_corpus, "--outdir", out,
                   "--topics-k", 2, "--min-df", 1, "--max-iters", 30) == 0
        topics = json.loads((out / "topics.json").read_text())
        assert [t["topic"] for t in topics] == [0, 1]
        for t in topics:
            assert t["words"], "every topic reports words"
            for entry in t["words"]:
                assert set(entry) == {"term", "score"}
                assert entry["score"] >= 0.0
        vocab_lines = (out / "vocab.csv").read_text().splitlines()
        assert vocab_lines[0] == "term,index,df"
        assert len(vocab_lines) > 1


class TestConfigResolution:
    def test_config_file_and_flag_override(self, tmp_path, triangle_corpus):
        out_flag = tmp_path / "flag_out"
        config = tmp_path / "config.json"
        config.write_text(json.dumps({
            "input": str(triangle_corpus), "outdir": str(tmp_path / "cfg_out"),
            "hashtag_k": 1,
        }))
        assert run("ingest", "--config", config, "--outdir", out_flag) == 0
        assert (out_flag / "edges.csv").exists()
        assert not (tmp_path / "cfg_out").exists()
        tags = json.loads((out_flag / "hashtags.json").read_text())
        assert len(tags) == 1  # hashtag_k from config survives

    def test_env_var_sets_outdir(self, tmp_path, triangle_corpus, monkeypatch):
        env_out = tmp_path / "env_out"
        monkeypatch.setenv("COPNET_OUTPUT_DIR", str(env_out))
        assert run("ingest", "--input", triangle_corpus) == 0
        assert (env_out / "edges.csv").exists()

    def test_flag_beats_env_var(self, tmp_path, triangle_corpus, monkeypatch):
        monkeypatch.setenv("COPNET_OUTPUT_DIR", str(tmp_path / "env_out"))
        flag_out = tmp_path / "flag_out"
        assert run("ingest", "--input", triangle_corpus, "--outdir", flag_out) == 0
        assert (flag_out / "edges.csv").exists()
        assert not (tmp_path / "env_out").exists()

    def test_unknown_config_key_is_fatal(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text('{"mystery": 1}')
        assert run("ingest", "--config", config) == 1
        assert "unknown keys" in capsys.readouterr().err

    def test_out_of_range_value_is_fatal(self, tmp_path, triangle_corpus, capsys):
        assert run("communities", "--outdir", tmp_path,
                   "--threshold", 0) == 1
        assert "threshold" in capsys.readouterr().err


class TestReport:
    def test_report_runs_all_stages(self, tmp_path, corpus_path):
        out = tmp_path / "out"
        assert run("report", "--input", corpus_path, "--outdir", out,
                   "--threshold", 25, "--seed", 7, "--min-df", 2,
                   "--topics-k", 5, "--max-iters", 40) == 0
        produced = {p.name for p in out.iterdir()}
        assert {"edges.csv", "hashtags.json", "communities.csv",
                "sentiment.json", "topics.json", "vocab.csv"} <= produced
        assert len([n for n in produced if n.startswith("event_")]) == 13
        # the COP21 window overlaps the corpus
        cop21 = (out / "event_COP21.csv").read_text().splitlines()
        data_rows = [line for line in cop21[1:] if not line.endswith(",,,,,")]
        assert len(data_rows) == 21
