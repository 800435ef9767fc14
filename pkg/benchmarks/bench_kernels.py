"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--pairs 2000] [--repeat 5]
"""
import argparse
import random
import sys
import timeit

from tamreg import _pykernels, kernels


def workload(n_pairs, seed=0):
    rng = random.Random(seed)
    alphabet = "aeioukgcdtnpmyrlvzh "
    pairs = [("".join(rng.choices(alphabet, k=rng.randint(20, 80))),
              "".join(rng.choices(alphabet, k=rng.randint(20, 80)))) for _ in range(n_pairs)]
    texts = [a + b for a, b in pairs]
    return pairs, texts


def bench(impl, pairs, texts, repeat):
    lev = lambda: [impl.levenshtein(a, b) for a, b in pairs]
    ngrams = lambda: [impl.char_ngram_counts(t, n) for t in texts for n in range(1, 5)]
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in
            (("levenshtein", lev), ("char_ngram_counts", ngrams))}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernels not built; reinstall with Cython available", file=sys.stderr)
        return 1
    from tamreg import _ckernels

    pairs, texts = workload(args.pairs)
    py = bench(_pykernels, pairs, texts, args.repeat)
    cy = bench(_ckernels, pairs, texts, args.repeat)
    print(f"{'kernel':<20} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name in py:
        print(f"{name:<20} {py[name]:10.4f} {cy[name]:10.4f} {py[name] / cy[name]:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
