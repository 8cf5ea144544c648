"""Tokenization, TF-IDF vectorization and mini-batch NMF topic extraction.

The document-term matrix uses raw term counts weighted by a smoothed log
inverse document frequency, ln((1+N)/(1+df)) + 1, with each non-empty row
L2-normalized.  Topics come from a nonnegative factorization X ~ H @ W
(H: document-topic, W: topic-term) fitted by multiplicative updates on
seeded shuffled mini-batches; the W step uses exponentially weighted batch
accumulators (decay 0.9, reset each epoch) so full-batch runs reduce to
the classical alternating updates.  Fitted models are immutable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy import sparse

from .errors import NumericalError, VocabularyError

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_EPS = 1e-12
_ACCUMULATOR_DECAY = 0.9

_default_stopwords: Optional[frozenset] = None


def default_stopwords() -> frozenset:
    """Bundled English stopword list (one token per line in data/stopwords.txt)."""
    global _default_stopwords
    if _default_stopwords is None:
        text = resources.files("copnet.data").joinpath("stopwords.txt").read_text("utf-8")
        _default_stopwords = frozenset(w for w in text.split() if w)
    return _default_stopwords


def tokenize(text: str, stopwords: Optional[frozenset] = None) -> list[str]:
    """Lowercase and split a tweet into content tokens.

    URL tokens (http/https) and @-mentions are dropped, a leading '#' is
    stripped, tokens are maximal alphanumeric runs of length >= 2, and
    stopwords are removed.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    out = []
    for chunk in text.lower().split():
        if chunk.startswith("@"):
            continue
        if chunk.startswith("http://") or chunk.startswith("https://"):
            continue
        if chunk.startswith("#"):
            chunk = chunk[1:]
        for token in _TOKEN_RE.findall(chunk):
            if len(token) >= 2 and token not in stopwords:
                out.append(token)
    return out


@dataclass(frozen=True)
class Vocabulary:
    """Retained terms with their column indices and document frequencies."""

    terms: tuple[str, ...]
    index: dict[str, int]
    doc_freq: np.ndarray

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class NmfModel:
    """Nonnegative factor pair approximating the document-term matrix as H @ W."""

    W: np.ndarray  # topics x terms
    H: np.ndarray  # docs x topics
    k: int
    epoch_errors: tuple[float, ...] = ()


def build_tfidf(
    corpus: Sequence[list[str]], min_df: int = 2
) -> tuple[Vocabulary, sparse.csr_matrix]:
    """TF-IDF matrix over tokenized documents.

    Terms appearing in fewer than ``min_df`` documents are dropped; entries
    are raw count x (ln((1+N)/(1+df)) + 1); non-empty rows are scaled to
    unit L2 norm.  Raises VocabularyError when nothing survives the filter.
    """
    if min_df < 1:
        raise ValueError(f"min_df must be >= 1, got {min_df}")
    n_docs = len(corpus)
    if n_docs == 0:
        raise VocabularyError("corpus is empty")
    df: dict[str, int] = {}
    for tokens in corpus:
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1
    terms = tuple(sorted(t for t, f in df.items() if f >= min_df))
    if not terms:
        raise VocabularyError(
            f"no term appears in at least {min_df} documents; vocabulary is empty"
        )
    index = {t: i for i, t in enumerate(terms)}
    doc_freq = np.array([df[t] for t in terms], dtype=np.int64)
    idf = np.log((1.0 + n_docs) / (1.0 + doc_freq)) + 1.0

    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for tokens in corpus:
        counts: dict[int, int] = {}
        for term in tokens:
            col = index.get(term)
            if col is not None:
                counts[col] = counts.get(col, 0) + 1
        for col in sorted(counts):
            indices.append(col)
            data.append(counts[col] * idf[col])
        indptr.append(len(indices))
    matrix = sparse.csr_matrix(
        (np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(n_docs, len(terms)),
    )
    norms = np.sqrt(np.asarray(matrix.multiply(matrix).sum(axis=1)).ravel())
    scale = np.divide(1.0, norms, out=np.zeros_like(norms), where=norms > 0)
    matrix = sparse.diags(scale) @ matrix
    matrix = matrix.tocsr()
    matrix.sort_indices()
    return Vocabulary(terms=terms, index=index, doc_freq=doc_freq), matrix


def _frobenius_error(X: sparse.csr_matrix, W: np.ndarray, H: np.ndarray) -> float:
    """||X - H W||_F without densifying X."""
    norm_x = float(X.data @ X.data) if X.nnz else 0.0
    gram_h = H.T @ H
    gram_w = W @ W.T
    norm_hw = float(np.sum(gram_h * gram_w))
    cross = float(np.sum((X.T @ H) * W.T))
    return float(np.sqrt(max(norm_x + norm_hw - 2.0 * cross, 0.0)))


def fit_minibatch_nmf(
    X: sparse.csr_matrix,
    k: int = 10,
    batch_size: int = 256,
    max_iters: int = 200,
    tol: float = 1e-4,
    seed: int = 0,
    on_epoch: Optional[Callable[[int, np.ndarray, np.ndarray, float], None]] = None,
) -> NmfModel:
    """Fit X ~ H @ W by mini-batch multiplicative updates.

    W and H start strictly positive from a seeded uniform draw scaled by
    sqrt(mean(X)/k).  Each epoch shuffles document rows into batches; per
    batch the H rows are updated multiplicatively for the squared Frobenius
    objective, then W from decayed batch accumulators.  Stops when the
    relative change of the full-corpus error between epochs drops below
    ``tol`` or after ``max_iters`` epochs.  Deterministic given the seed.

    ``on_epoch`` is called as ``on_epoch(epoch, W, H, error)`` after each
    epoch with live (read-only) factors, for instrumentation.
    """
    X = X.tocsr()
    n_docs, n_terms = X.shape
    if k < 1 or k > min(n_docs, n_terms):
        raise ValueError(f"k must be in 1..min(docs, terms)={min(n_docs, n_terms)}, got {k}")
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    if X.nnz and X.data.min() < 0:
        raise ValueError("X must be nonnegative")

    rng = np.random.default_rng(seed)
    scale = np.sqrt(X.mean() / k) if X.nnz else 1.0
    W = np.clip(rng.random((k, n_terms)), 1e-9, None) * scale
    H = np.clip(rng.random((n_docs, k)), 1e-9, None) * scale

    errors: list[float] = []
    for epoch in range(max_iters):
        perm = rng.permutation(n_docs)
        acc_gram = np.zeros((k, k))
        acc_cross = np.zeros((k, n_terms))
        for start in range(0, n_docs, batch_size):
            batch = perm[start : start + batch_size]
            xb = X[batch]
            hb = H[batch]
            hb = hb * (xb @ W.T) / (hb @ (W @ W.T) + _EPS)
            H[batch] = hb
            acc_gram = _ACCUMULATOR_DECAY * acc_gram + hb.T @ hb
            acc_cross = _ACCUMULATOR_DECAY * acc_cross + (xb.T @ hb).T
            W = W * acc_cross / (acc_gram @ W + _EPS)
        error = _frobenius_error(X, W, H)
        if not np.isfinite(error) or not np.all(np.isfinite(W)) or not np.all(np.isfinite(H)):
            raise NumericalError(f"non-finite values at epoch {epoch}")
        errors.append(error)
        if on_epoch is not None:
            on_epoch(epoch, W, H, error)
        if len(errors) >= 2:
            previous = errors[-2]
            if abs(previous - error) <= tol * max(previous, _EPS):
                break
    return NmfModel(W=W, H=H, k=k, epoch_errors=tuple(errors))


def reconstruction_error(X: sparse.csr_matrix, model: NmfModel) -> float:
    """Frobenius norm of X - H @ W."""
    if model.H.shape != (X.shape[0], model.k) or model.W.shape[0] != model.k or model.W.shape[1] != X.shape[1]:
        raise ValueError(
            f"shape mismatch: X {X.shape}, H {model.H.shape}, W {model.W.shape}"
        )
    return _frobenius_error(X.tocsr(), model.W, model.H)


def top_words(
    model: NmfModel, vocab: Vocabulary, topic: int, n: int = 20
) -> list[tuple[str, float]]:
    """The n highest-scoring terms of one topic, ties broken by term."""
    if not 0 <= topic < model.k:
        raise ValueError(f"topic must be in 0..{model.k - 1}, got {topic}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    scores = model.W[topic]
    ranked = sorted(range(len(vocab.terms)), key=lambda i: (-scores[i], vocab.terms[i]))
    return [(vocab.terms[i], float(scores[i])) for i in ranked[:n]]


def write_vocabulary_csv(path, vocab: Vocabulary) -> None:
    """Export ``term,index,df`` rows."""
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["term", "index", "df"])
        for i, term in enumerate(vocab.terms):
            writer.writerow([term, i, int(vocab.doc_freq[i])])
