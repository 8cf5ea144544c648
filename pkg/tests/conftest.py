"""Shared fixtures: small exact graphs and the synthetic tweet corpus."""

from __future__ import annotations

import json

import numpy as np
import pytest

from copnet.temporal_graph import WEEK_SECONDS, Snapshot, make_snapshot

# Directed arcs, one per undirected edge.  Nodes 0-2 and 3-5 form unit
# triangles; the partition by triangle has quality score exactly 0.5.
TRIANGLE_ARCS = [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0),
                 (3, 4, 1.0), (4, 5, 1.0), (5, 3, 1.0)]

# Same two triangles plus a single bridge arc; best partition is still the
# two triangles, with score 5/14.
BRIDGE_ARCS = TRIANGLE_ARCS + [(2, 3, 1.0)]

COP21_WEEK = 2395  # 2015-11-30T00:00:00Z falls in this epoch-anchored week

# Filled by the acceptance suite's criterion() helper; echoed after the run
# so the per-criterion verdicts are visible without -s.
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def two_triangles() -> Snapshot:
    return make_snapshot(0, TRIANGLE_ARCS)


@pytest.fixture
def bridge_graph() -> Snapshot:
    return make_snapshot(0, BRIDGE_ARCS)


# ---------------------------------------------------------------------------
# synthetic corpus: ~1k tweets from 40 users across the 21 weeks around the
# COP21 start week, with two mention blocks, topic word pools, and a few
# deliberately malformed lines.

TOPIC_POOLS = (
    ["energy", "renewable", "solar", "wind", "power", "clean", "grid", "carbon"],
    ["policy", "agreement", "talks", "deal", "negotiation", "paris", "summit", "pledge"],
)
MOOD_POOLS = (
    ["great", "good", "hope", "progress", "win"],
    ["terrible", "bad", "disaster", "failure", "threat"],
)
FILLERS = ["world", "global", "week", "report", "news", "people", "городе"]
HASHTAG_POOL = ["climate", "COP21", "Paris", "energy", "science",
                "policy", "action", "future", "earth", "green"]

BAD_LINES = [
    '{"id": "bad1", "author": "u00", "ts": 1448841600, "mentions": ["u01"',
    '{"id": "bad2", "author": "", "ts": 1448841600, "mentions": [], "hashtags": [], "text": "x"}',
    '{"id": "bad3", "author": "u00", "ts": -5, "mentions": [], "hashtags": [], "text": "x"}',
]


def generate_corpus_lines(n_tweets: int = 1000, seed: int = 20151130) -> list[str]:
    rng = np.random.default_rng(seed)
    users = [f"u{i:02d}" for i in range(40)]
    lines: list[str] = []
    for i in range(n_tweets):
        block = int(rng.integers(0, 2))
        members = users[:20] if block == 0 else users[20:]
        author = members[int(rng.integers(0, len(members)))]
        week = COP21_WEEK - 10 + int(rng.integers(0, 21))
        ts = week * WEEK_SECONDS + int(rng.integers(0, WEEK_SECONDS))
        n_mentions = int(rng.integers(1, 3))
        mentions = []
        for _ in range(n_mentions):
            pool = members if rng.random() < 0.9 else users
            target = pool[int(rng.integers(0, len(pool)))]
            mentions.append(target)
        words = [TOPIC_POOLS[block][int(rng.integers(0, 8))] for _ in range(5)]
        words.append(MOOD_POOLS[int(rng.random() < 0.4)][int(rng.integers(0, 5))])
        words.append(FILLERS[int(rng.integers(0, len(FILLERS)))])
        tags = sorted({HASHTAG_POOL[int(rng.integers(0, len(HASHTAG_POOL)))]
                       for _ in range(int(rng.integers(0, 3)))})
        text_bits = [f"@{m}" for m in mentions] + words + [f"#{t}" for t in tags]
        if rng.random() < 0.2:
            text_bits.append("https://example.org/a1")
        lines.append(json.dumps({
            "id": f"t{i:05d}",
            "author": author,
            "ts": ts,
            "mentions": mentions,
            "hashtags": tags,
            "text": " ".join(text_bits),
        }, ensure_ascii=False))
    # malformed lines spread through the file, never aborting the stream
    lines.insert(100, BAD_LINES[0])
    lines.insert(500, BAD_LINES[1])
    lines.append(BAD_LINES[2])
    return lines


@pytest.fixture(scope="session")
def corpus_path(tmp_path_factory) -> str:
    path = tmp_path_factory.mktemp("corpus") / "tweets.jsonl"
    path.write_text("\n".join(generate_corpus_lines()) + "\n", encoding="utf-8")
    return str(path)
