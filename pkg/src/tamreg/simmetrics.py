"""Parallel-text similarity: Levenshtein, corpus BLEU, chrF, histograms."""
from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass

from . import kernels

BLEU_MAX_ORDER = 4
CHRF_ORDER = 6
CHRF_BETA = 2
SIGNATURE = (
    f"bleu: tok=whitespace, order={BLEU_MAX_ORDER}, smooth=none | "
    f"chrf: order={CHRF_ORDER}, beta={CHRF_BETA}, whitespace=removed | "
    "lev: unit-cost chars, norm=max-len"
)


def levenshtein(a: str, b: str) -> int:
    return kernels.levenshtein(a, b)


def normalized_levenshtein(a: str, b: str) -> float:
    """Edit distance divided by the longer length; 0.0 for two empty strings."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 0.0
    return kernels.levenshtein(a, b) / longest


def _check_pairs(hyps, refs):
    hyps, refs = list(hyps), list(refs)
    if len(hyps) != len(refs):
        raise ValueError(f"{len(hyps)} hypotheses vs {len(refs)} references")
    if not hyps:
        raise ValueError("need at least one sentence pair")
    return hyps, refs


def _word_ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def corpus_bleu(hypotheses, references, max_order: int = BLEU_MAX_ORDER) -> float:
    """Unsmoothed corpus BLEU on whitespace tokens, in [0, 100]."""
    hyps, refs = _check_pairs(hypotheses, references)
    matches = [0] * max_order
    totals = [0] * max_order
    hyp_len = ref_len = 0
    for hyp, ref in zip(hyps, refs):
        h, r = hyp.split(), ref.split()
        hyp_len += len(h)
        ref_len += len(r)
        for n in range(1, max_order + 1):
            hc, rc = _word_ngrams(h, n), _word_ngrams(r, n)
            matches[n - 1] += sum(min(k, rc[g]) for g, k in hc.items())
            totals[n - 1] += max(len(h) - n + 1, 0)
    if min(matches) == 0:
        return 0.0
    log_prec = sum(math.log(m / t) for m, t in zip(matches, totals)) / max_order
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)
    return 100.0 * bp * math.exp(log_prec)


def chrf(hypotheses, references, max_order: int = CHRF_ORDER, beta: float = CHRF_BETA) -> float:
    """Corpus chrF in [0, 100]: mean per-order F-beta over char n-grams.

    Whitespace is deleted first. Orders with no n-grams on either side are
    left out of the mean.
    """
    hyps, refs = _check_pairs(hypotheses, references)
    match = [0] * max_order
    hyp_tot = [0] * max_order
    ref_tot = [0] * max_order
    for hyp, ref in zip(hyps, refs):
        h = "".join(hyp.split())
        r = "".join(ref.split())
        for n in range(1, max_order + 1):
            hc = kernels.char_ngram_counts(h, n)
            rc = kernels.char_ngram_counts(r, n)
            match[n - 1] += sum(min(k, rc.get(g, 0)) for g, k in hc.items())
            hyp_tot[n - 1] += max(len(h) - n + 1, 0)
            ref_tot[n - 1] += max(len(r) - n + 1, 0)
    b2 = beta * beta
    scores = []
    for m, ht, rt in zip(match, hyp_tot, ref_tot):
        if ht == 0 and rt == 0:
            continue
        p = m / ht if ht else 0.0
        r = m / rt if rt else 0.0
        scores.append((1 + b2) * p * r / (b2 * p + r) if p + r > 0 else 0.0)
    if not scores:
        return 0.0
    return 100.0 * sum(scores) / len(scores)


@dataclass(frozen=True)
class SimilarityReport:
    mean_levenshtein: float
    mean_normalized_levenshtein: float
    bleu: float
    chrf: float
    n_pairs: int

    def as_dict(self) -> dict:
        return {
            "n_pairs": self.n_pairs,
            "lev": self.mean_levenshtein,
            "lev_norm": self.mean_normalized_levenshtein,
            "bleu": self.bleu,
            "chrf": self.chrf,
        }


def compare_parallel(corpus_a, corpus_b) -> SimilarityReport:
    """Position-aligned comparison; ``corpus_b`` is the BLEU/chrF reference."""
    a = [s if isinstance(s, str) else s.text for s in corpus_a]
    b = [s if isinstance(s, str) else s.text for s in corpus_b]
    _check_pairs(a, b)
    dists = [levenshtein(x, y) for x, y in zip(a, b)]
    norms = [normalized_levenshtein(x, y) for x, y in zip(a, b)]
    return SimilarityReport(
        mean_levenshtein=sum(dists) / len(dists),
        mean_normalized_levenshtein=sum(norms) / len(norms),
        bleu=corpus_bleu(a, b),
        chrf=chrf(a, b),
        n_pairs=len(a),
    )


@dataclass(frozen=True)
class Histogram:
    bin_edges: tuple
    counts: tuple


def histogram(values, n_bins: int = 20) -> Histogram:
    """Uniform bins over [0, 1]; each bin is right-open except the last."""
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    edges = tuple(i / n_bins for i in range(n_bins + 1))
    counts = [0] * n_bins
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"value {v} outside [0, 1]")
        counts[min(bisect.bisect_right(edges, v) - 1, n_bins - 1)] += 1
    return Histogram(edges, tuple(counts))
