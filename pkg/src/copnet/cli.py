"""Command-line pipeline: mention graphs, communities, events, sentiment, topics.

Stages hand off through files in the output directory, with ``edges.csv``
(the weekly aggregated mention edge list) as the interchange format, so
any stage can be rerun on its own.  All randomness flows from explicit
seeds in the configuration; identical config and inputs produce
byte-identical outputs.

Configuration precedence, lowest to highest: built-in defaults, JSON
config file (``--config``), the ``COPNET_OUTPUT_DIR`` environment variable
(output directory only), explicit command-line flags.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .community import community_count_series, write_series_csv
from .errors import ConfigurationError, CopnetError
from .events import event_window, load_default_events, load_events, window_report, write_window_report_csv
from .ingest import ParseError, count_hashtags, extract_mention_edges, parse_tweet_stream
from .sentiment import Lexicon, load_default_lexicon, load_lexicon, sentiment_distribution
from .temporal_graph import TemporalGraph, build_weekly_snapshots, filter_low_degree, read_edge_list, write_edge_list
from .topics import build_tfidf, fit_minibatch_nmf, reconstruction_error, tokenize, top_words, write_vocabulary_csv

OUTPUT_DIR_ENV = "COPNET_OUTPUT_DIR"


@dataclass(frozen=True)
class PipelineConfig:
    input: Optional[str] = None
    format: str = "jsonlines"
    threshold: int = 100
    degree_mode: str = "occurrences"
    seed: int = 0
    seeds: Optional[tuple[int, ...]] = None
    hashtag_k: int = 8
    lexicon: Optional[str] = None
    neutral_band: float = 0.0
    topics_k: int = 10
    batch_size: int = 256
    max_iters: int = 200
    tol: float = 1e-4
    nmf_seed: int = 0
    min_df: int = 2
    top_n: int = 20
    events: Optional[str] = None
    window: int = 10
    outdir: str = "."

    def validate(self) -> None:
        # The deep checks live in the owning modules; these catch plainly
        # out-of-range values before any work starts.
        if self.format not in ("jsonlines", "csv"):
            raise ConfigurationError(f"unknown input format {self.format!r}")
        if self.degree_mode not in ("occurrences", "distinct"):
            raise ConfigurationError(f"unknown degree mode {self.degree_mode!r}")
        for name, value, low in (
            ("threshold", self.threshold, 1),
            ("hashtag_k", self.hashtag_k, 1),
            ("topics_k", self.topics_k, 1),
            ("batch_size", self.batch_size, 1),
            ("max_iters", self.max_iters, 1),
            ("min_df", self.min_df, 1),
            ("top_n", self.top_n, 1),
            ("window", self.window, 0),
        ):
            if value < low:
                raise ConfigurationError(f"{name} must be >= {low}, got {value}")
        if self.neutral_band < 0:
            raise ConfigurationError(f"neutral_band must be >= 0, got {self.neutral_band}")
        if self.tol < 0:
            raise ConfigurationError(f"tol must be >= 0, got {self.tol}")


_CONFIG_FIELDS = {f.name for f in fields(PipelineConfig)}


def _parse_seed_list(value) -> tuple[int, ...]:
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        value = [int(p) for p in parts]
    seeds = tuple(int(v) for v in value)
    if not seeds:
        raise ConfigurationError("seed list must not be empty")
    return seeds


def load_config(path) -> dict:
    """Read a JSON config file; keys must match PipelineConfig fields."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigurationError(f"config file {path}: expected a JSON object")
    unknown = sorted(set(raw) - _CONFIG_FIELDS)
    if unknown:
        raise ConfigurationError(f"config file {path}: unknown keys {unknown}")
    if "seeds" in raw and raw["seeds"] is not None:
        raw["seeds"] = _parse_seed_list(raw["seeds"])
    return raw


def resolve_config(args: argparse.Namespace) -> PipelineConfig:
    values: dict = {}
    config_path = getattr(args, "config", None)
    if config_path:
        values.update(load_config(config_path))
    env_outdir = os.environ.get(OUTPUT_DIR_ENV)
    if env_outdir:
        values["outdir"] = env_outdir
    for name in _CONFIG_FIELDS:
        flag_value = getattr(args, name, None)
        if flag_value is not None:
            values[name] = flag_value
    if values.get("seeds") is not None:
        values["seeds"] = _parse_seed_list(values["seeds"])
    config = PipelineConfig(**values)
    config.validate()
    return config


# ---------------------------------------------------------------------------
# shared stage helpers

def _outdir(config: PipelineConfig) -> Path:
    path = Path(config.outdir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _read_records(config: PipelineConfig) -> tuple[list, int]:
    """Parse the input corpus; print each bad line and return the good records."""
    if not config.input:
        raise ConfigurationError("this command needs --input")
    records = []
    n_errors = 0
    with open(config.input, "rb") as fh:
        for lineno, item in parse_tweet_stream(fh, format=config.format):
            if isinstance(item, ParseError):
                n_errors += 1
                print(f"warning: line {lineno}: {item.reason}", file=sys.stderr)
            else:
                records.append(item)
    return records, n_errors


def _load_graph(config: PipelineConfig) -> TemporalGraph:
    edges_path = _outdir(config) / "edges.csv"
    if not edges_path.exists():
        raise ConfigurationError(
            f"{edges_path} not found; run the ingest command first (or report, which bundles it)"
        )
    graph = read_edge_list(edges_path)
    return filter_low_degree(graph, threshold=config.threshold, mode=config.degree_mode)


def _lexicon_for(config: PipelineConfig) -> Lexicon:
    if config.lexicon:
        return load_lexicon(config.lexicon)
    return load_default_lexicon()


def _events_for(config: PipelineConfig):
    if config.events:
        return load_events(config.events)
    return load_default_events()


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def _event_file_name(name: str) -> str:
    safe = re.sub(r"[^0-9A-Za-z_.-]+", "_", name)
    return f"event_{safe}.csv"


# ---------------------------------------------------------------------------
# subcommands

def cmd_ingest(config: PipelineConfig) -> int:
    out = _outdir(config)
    records, n_errors = _read_records(config)
    edges = [edge for record in records for edge in extract_mention_edges(record)]
    graph = build_weekly_snapshots(edges)
    write_edge_list(graph, out / "edges.csv")
    top = count_hashtags(records, k=config.hashtag_k)
    _write_json(out / "hashtags.json", [{"tag": tag, "count": count} for tag, count in top])
    print(
        f"ingest: {len(records)} records, {len(edges)} mention edges, "
        f"{n_errors} parse errors",
        file=sys.stderr,
    )
    return 0


def cmd_communities(config: PipelineConfig) -> int:
    out = _outdir(config)
    graph = _load_graph(config)
    series = community_count_series(graph, seed=config.seed)
    if not series:
        print("warning: no snapshots survived the degree filter", file=sys.stderr)
    write_series_csv(out / "communities.csv", series)
    if config.seeds is not None and len(config.seeds) > 1:
        rows = []
        for seed in config.seeds:
            for week, count, q in community_count_series(graph, seed=seed):
                rows.append((week, seed, count, q))
        with open(out / "communities_spread.csv", "w", newline="", encoding="utf-8") as fh:
            fh.write("week,seed,num_communities,modularity\n")
            for week, seed, count, q in rows:
                fh.write(f"{week},{seed},{count},{q!r}\n")
    return 0


def cmd_events(config: PipelineConfig) -> int:
    out = _outdir(config)
    graph = _load_graph(config)
    for event in _events_for(config):
        win = event_window(graph, event, w=config.window)
        rows = window_report(win, seed=config.seed)
        write_window_report_csv(rows, out / _event_file_name(event.name))
    return 0


def cmd_sentiment(config: PipelineConfig) -> int:
    out = _outdir(config)
    records, _ = _read_records(config)
    if not records:
        raise ConfigurationError("sentiment needs at least one parsable record")
    lex = _lexicon_for(config)
    dist = sentiment_distribution(records, lex, neutral_band=config.neutral_band)
    payload = {
        "positive": dist["positive"],
        "negative": dist["negative"],
        "neutral": dist["neutral"],
        "n": len(records),
    }
    _write_json(out / "sentiment.json", payload)
    return 0


def cmd_topics(config: PipelineConfig) -> int:
    out = _outdir(config)
    records, _ = _read_records(config)
    corpus = [tokenize(record.text) for record in records]
    vocab, X = build_tfidf(corpus, min_df=config.min_df)
    model = fit_minibatch_nmf(
        X,
        k=config.topics_k,
        batch_size=config.batch_size,
        max_iters=config.max_iters,
        tol=config.tol,
        seed=config.nmf_seed,
    )
    payload = [
        {
            "topic": index,
            "words": [
                {"term": term, "score": score}
                for term, score in top_words(model, vocab, index, n=config.top_n)
            ],
        }
        for index in range(model.k)
    ]
    _write_json(out / "topics.json", payload)
    write_vocabulary_csv(out / "vocab.csv", vocab)
    print(
        f"topics: k={model.k}, {len(model.epoch_errors)} epochs, "
        f"reconstruction error {reconstruction_error(X, model):.6f}",
        file=sys.stderr,
    )
    return 0


def cmd_report(config: PipelineConfig) -> int:
    """Run every stage in order against one output directory."""
    code = cmd_ingest(config)
    for stage in (cmd_communities, cmd_events, cmd_sentiment, cmd_topics):
        code = max(code, stage(config))
    return code


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON config file")
    parser.add_argument("--outdir", metavar="DIR", help="output directory (default .)")


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", metavar="PATH", help="tweet corpus file")
    parser.add_argument("--format", choices=["jsonlines", "csv"], help="corpus format")


def _add_graph(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threshold", type=int, metavar="N", help="degree filter threshold (default 100)")
    parser.add_argument(
        "--degree-mode",
        dest="degree_mode",
        choices=["occurrences", "distinct"],
        help="count edge occurrences or distinct neighbors",
    )
    parser.add_argument("--seed", type=int, metavar="N", help="community detection seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="copnet",
        description="Temporal mention-graph analytics: communities, events, sentiment, topics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a corpus into edges.csv and hashtags.json")
    _add_common(p)
    _add_input(p)
    p.add_argument("--hashtag-k", dest="hashtag_k", type=int, metavar="N", help="top hashtags to keep (default 8)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("communities", help="weekly community counts from edges.csv")
    _add_common(p)
    _add_graph(p)
    p.add_argument("--seeds", metavar="N,N,...", help="extra seeds; writes a per-seed spread file")
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("events", help="per-event window reports from edges.csv")
    _add_common(p)
    _add_graph(p)
    p.add_argument("--events", metavar="PATH", help="events CSV (default: bundled COP calendar)")
    p.add_argument("--window", type=int, metavar="W", help="half-width in weeks (default 10)")
    p.set_defaults(func=cmd_events)

    p = sub.add_parser("sentiment", help="corpus polarity distribution")
    _add_common(p)
    _add_input(p)
    p.add_argument("--lexicon", metavar="PATH", help="token,polarity CSV (default: bundled)")
    p.add_argument("--neutral-band", dest="neutral_band", type=float, metavar="B", help="neutral half-width (default 0)")
    p.set_defaults(func=cmd_sentiment)

    p = sub.add_parser("topics", help="TF-IDF + NMF topics from the corpus")
    _add_common(p)
    _add_input(p)
    p.add_argument("--topics-k", dest="topics_k", type=int, metavar="K", help="number of topics (default 10)")
    p.add_argument("--batch-size", dest="batch_size", type=int, metavar="N", help="mini-batch size (default 256)")
    p.add_argument("--max-iters", dest="max_iters", type=int, metavar="N", help="epoch cap (default 200)")
    p.add_argument("--tol", type=float, metavar="T", help="relative error tolerance (default 1e-4)")
    p.add_argument("--nmf-seed", dest="nmf_seed", type=int, metavar="N", help="factorization seed (default 0)")
    p.add_argument("--min-df", dest="min_df", type=int, metavar="N", help="minimum document frequency (default 2)")
    p.add_argument("--top-n", dest="top_n", type=int, metavar="N", help="words per topic (default 20)")
    p.set_defaults(func=cmd_topics)

    p = sub.add_parser("report", help="run every stage into one output directory")
    _add_common(p)
    _add_input(p)
    _add_graph(p)
    p.add_argument("--hashtag-k", dest="hashtag_k", type=int, metavar="N")
    p.add_argument("--seeds", metavar="N,N,...")
    p.add_argument("--events", metavar="PATH")
    p.add_argument("--window", type=int, metavar="W")
    p.add_argument("--lexicon", metavar="PATH")
    p.add_argument("--neutral-band", dest="neutral_band", type=float, metavar="B")
    p.add_argument("--topics-k", dest="topics_k", type=int, metavar="K")
    p.add_argument("--batch-size", dest="batch_size", type=int, metavar="N")
    p.add_argument("--max-iters", dest="max_iters", type=int, metavar="N")
    p.add_argument("--tol", type=float, metavar="T")
    p.add_argument("--nmf-seed", dest="nmf_seed", type=int, metavar="N")
    p.add_argument("--min-df", dest="min_df", type=int, metavar="N")
    p.add_argument("--top-n", dest="top_n", type=int, metavar="N")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        return args.func(config)
    except (CopnetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
