"""Sliding-window char/word n-grams and fixed-length count vectors."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import kernels

FAMILIES = ("char", "word")


@dataclass(frozen=True)
class FeatureSpec:
    """Maximum char order ``c`` and word order ``w``; 0 disables a family.

    ``char_spaces=False`` restricts char n-grams to single words instead of
    sliding across the interior spaces.
    """

    c: int = 4
    w: int = 1
    char_spaces: bool = True

    def __post_init__(self):
        if self.c < 0 or self.w < 0:
            raise ValueError(f"n-gram orders must be non-negative, got c={self.c}, w={self.w}")
        if self.c + self.w < 1:
            raise ValueError("at least one of c, w must be positive")

    def orders(self):
        """Yield enabled ``(family, n)`` pairs."""
        for n in range(1, self.c + 1):
            yield "char", n
        for n in range(1, self.w + 1):
            yield "word", n


def extract_ngrams(text: str, family: str, n: int, char_spaces: bool = True) -> Counter:
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    if family == "char":
        if char_spaces:
            return Counter(kernels.char_ngram_counts(text, n))
        counts = {}
        for token in text.split():
            kernels.char_ngram_counts(token, n, counts)
        return Counter(counts)
    if family == "word":
        tokens = text.split()
        return Counter(" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1))
    raise ValueError(f"unknown n-gram family {family!r}")


def gram_counts(text: str, spec: FeatureSpec) -> dict:
    """All enabled n-grams of ``text`` as ``{(family, gram): count}``."""
    out = {}
    for family, n in spec.orders():
        for gram, k in extract_ngrams(text, family, n, spec.char_spaces).items():
            out[(family, gram)] = k
    return out


@dataclass(frozen=True)
class Vocabulary:
    spec: FeatureSpec
    grams: tuple  # (family, gram) pairs in column order
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "grams", tuple(self.grams))
        object.__setattr__(self, "index", {g: i for i, g in enumerate(self.grams)})

    @property
    def entries(self) -> dict:
        return self.index

    def __len__(self) -> int:
        return len(self.grams)

    @classmethod
    def from_grams(cls, spec: FeatureSpec, grams) -> "Vocabulary":
        return cls(spec, sorted(set(grams), key=lambda g: (FAMILIES.index(g[0]), g[1])))


@dataclass(frozen=True)
class FeatureVector:
    counts: np.ndarray

    def __len__(self) -> int:
        return len(self.counts)


def build_vocab(texts, spec: FeatureSpec) -> Vocabulary:
    """Union of every enabled n-gram over ``texts`` (strings or a Corpus)."""
    seen = set()
    n_docs = 0
    for item in texts:
        text = item if isinstance(item, str) else item.text
        seen.update(gram_counts(text, spec))
        n_docs += 1
    if n_docs == 0:
        raise ValueError("cannot build a vocabulary from an empty corpus")
    return Vocabulary.from_grams(spec, seen)


def featurize(text: str, vocab: Vocabulary) -> FeatureVector:
    """Count vector of ``text`` over ``vocab``; out-of-vocabulary grams are dropped."""
    counts = np.zeros(len(vocab), dtype=np.int64)
    for gram, k in gram_counts(text, vocab.spec).items():
        j = vocab.index.get(gram)
        if j is not None:
            counts[j] = k
    return FeatureVector(counts)


def featurize_many(texts, vocab: Vocabulary) -> sp.csr_matrix:
    """Sparse ``(n_texts, |vocab|)`` count matrix, rows in input order."""
    indptr = [0]
    indices = []
    data = []
    for text in texts:
        row = sorted(
            (j, k) for gram, k in gram_counts(text, vocab.spec).items()
            if (j := vocab.index.get(gram)) is not None
        )
        indices.extend(j for j, _ in row)
        data.extend(k for _, k in row)
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.asarray(data, dtype=np.int64), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(len(indptr) - 1, len(vocab)),
    )
