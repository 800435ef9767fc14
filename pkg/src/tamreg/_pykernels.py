"""Pure-Python kernels. Same API as the compiled ``_ckernels`` module."""


def levenshtein(a, b):
    """Unit-cost edit distance between two strings, two-row DP."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def char_ngram_counts(text, n, counts=None):
    """Add the sliding-window character n-grams of ``text`` to ``counts``."""
    if counts is None:
        counts = {}
    for i in range(len(text) - n + 1):
        gram = text[i:i + n]
        counts[gram] = counts.get(gram, 0) + 1
    return counts
