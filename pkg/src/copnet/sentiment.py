"""Lexicon-based polarity scoring and corpus sentiment distribution.

A text's polarity is the plain average of the lexicon polarities of its
tokens (same tokenizer as topic modeling); tokens outside the lexicon
contribute nothing, and a text with no matches scores 0.0.  There is no
negation or intensifier handling: tokens are scored independently.  A
loaded lexicon is immutable and scoring is pure, so records may be scored
in parallel.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Literal, Optional, Sequence

from .ingest import TweetRecord
from .topics import tokenize

SentimentLabel = Literal["positive", "negative", "neutral"]

LABELS = ("positive", "negative", "neutral")


@dataclass(frozen=True)
class Lexicon:
    """Lowercase token -> polarity in [-1, +1]."""

    entries: dict[str, float]

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(source) -> Lexicon:
    """Load a ``token,polarity`` CSV (header required).

    Tokens are lowercased; duplicate tokens keep the last value and emit a
    warning; polarities outside [-1, +1] are rejected.
    """
    close = False
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        fh = open(source, newline="", encoding="utf-8")
        close = True
    else:
        fh = source
    try:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["token", "polarity"]:
            raise ValueError("lexicon file must start with a 'token,polarity' header")
        entries: dict[str, float] = {}
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"lexicon row {reader.line_num}: expected 2 columns, got {len(row)}")
            token = row[0].strip().lower()
            if not token:
                raise ValueError(f"lexicon row {reader.line_num}: empty token")
            polarity = float(row[1])
            if not -1.0 <= polarity <= 1.0:
                raise ValueError(
                    f"lexicon row {reader.line_num}: polarity {polarity} outside [-1, 1]"
                )
            if token in entries:
                warnings.warn(f"duplicate lexicon token {token!r}; keeping the last value")
            entries[token] = polarity
        return Lexicon(entries=entries)
    finally:
        if close:
            fh.close()


def load_default_lexicon() -> Lexicon:
    """Bundled general-purpose polarity lexicon."""
    with resources.files("copnet.data").joinpath("default_lexicon.csv").open(
        "r", encoding="utf-8"
    ) as fh:
        return load_lexicon(fh)


def score_polarity(text: str, lex: Lexicon, stopwords: Optional[frozenset] = None) -> float:
    """Average lexicon polarity over the text's tokens; 0.0 when nothing matches."""
    values = [lex.entries[t] for t in tokenize(text, stopwords) if t in lex.entries]
    if not values:
        return 0.0
    return sum(values) / len(values)


def classify(polarity: float, neutral_band: float = 0.0) -> SentimentLabel:
    """Three-way label: the neutral band [-band, +band] is inclusive."""
    if neutral_band < 0:
        raise ValueError(f"neutral_band must be >= 0, got {neutral_band}")
    if polarity > neutral_band:
        return "positive"
    if polarity < -neutral_band:
        return "negative"
    return "neutral"


def sentiment_distribution(
    records: Sequence[TweetRecord],
    lex: Lexicon,
    neutral_band: float = 0.0,
    stopwords: Optional[frozenset] = None,
) -> dict[str, float]:
    """Fraction of positive/negative/neutral records; fractions sum to 1."""
    n = len(records)
    if n == 0:
        raise ValueError("sentiment distribution needs at least one record")
    counts = {label: 0 for label in LABELS}
    for record in records:
        counts[classify(score_polarity(record.text, lex, stopwords), neutral_band)] += 1
    return {label: counts[label] / n for label in LABELS}
