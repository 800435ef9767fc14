"""Command-line entry point: ``tamreg <subcommand> ...``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors.
Results go to stdout (or ``--out``); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .corpus import FORMATS, Corpus, iter_corpus_lines, load_corpus, write_corpus, format_sentence
from .errors import TamregError
from .evalharness import (
    ExperimentConfig,
    ExperimentError,
    evaluate,
    format_audit_report,
    format_eval_report,
    run_experiment,
    synthetic_parallel_corpus,
    to_json,
)
from .evalharness import audit as run_audit
from .features import FeatureSpec, featurize_many
from .nbayes import VARIANTS, load_model, predict_many, save_model, train_corpus
from .simmetrics import SIGNATURE, compare_parallel, histogram, normalized_levenshtein
from .textnorm import DATA_DIR, augment_corpus, load_variant_rules, normalize
from .translit import load_cascade, load_translit_table, transliterate, convert

RULES_ENV = "TAMREG_RULES_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def rules_file(name: str) -> Path:
    """Default data file, looked up in ``$TAMREG_RULES_DIR`` first."""
    env = os.environ.get(RULES_ENV)
    if env and (Path(env) / name).is_file():
        return Path(env) / name
    return DATA_DIR / name


@contextlib.contextmanager
def _reader(path):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


@contextlib.contextmanager
def _writer(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _read_corpus(path, fmt) -> Corpus:
    if path == "-":
        return Corpus(list(iter_corpus_lines(sys.stdin, fmt, "<stdin>")), name="stdin")
    return load_corpus(path, fmt)


def _write_corpus(corpus, path, fmt):
    if path == "-":
        sys.stdout.writelines(format_sentence(s, fmt) + "\n" for s in corpus)
    else:
        write_corpus(corpus, path, fmt)


def _lines(path):
    with _reader(path) as fh:
        return [line.rstrip("\r\n") for line in fh]


# -- subcommands ------------------------------------------------------------

def cmd_normalize(args):
    with _reader(args.inp) as src, _writer(args.out) as dst:
        for line in src:
            dst.write(normalize(line) + "\n")


def cmd_augment(args):
    corpus = _read_corpus(args.inp, args.format)
    rules = load_variant_rules(args.rules or rules_file("variants.tsv"))
    _write_corpus(augment_corpus(corpus, rules), args.out, args.format)


def cmd_translit(args):
    table = load_translit_table(args.table or rules_file("tamil_translit.tsv"))
    with _reader(args.inp) as src, _writer(args.out) as dst:
        for line in src:
            dst.write(transliterate(line.rstrip("\r\n"), table) + "\n")


def cmd_convert(args):
    cascade = load_cascade(args.cascade or rules_file("cascade.tsv"))
    trace_fh = open(args.trace, "w", encoding="utf-8", newline="\n") if args.trace else None
    try:
        with _reader(args.inp) as src, _writer(args.out) as dst:
            for lineno, line in enumerate(src, 1):
                spoken, traces = convert(normalize(line), cascade)
                dst.write(spoken + "\n")
                if trace_fh is not None:
                    for t in traces:
                        trace_fh.write(json.dumps({"line": lineno, "input": t.input, "output": t.output,
                                                   "steps": [list(s) for s in t.steps]}) + "\n")
    finally:
        if trace_fh is not None:
            trace_fh.close()


def cmd_featurize(args):
    model = load_model(args.model)
    texts = [normalize(t) for t in _lines(args.inp)]
    X = featurize_many(texts, model.vocab) if texts else None
    with _writer(args.out) as dst:
        for i in range(len(texts)):
            row = X.getrow(i)
            dst.write(" ".join(f"{j}:{k}" for j, k in zip(row.indices, row.data)) + "\n")


def cmd_train(args):
    corpus = _read_corpus(args.inp, args.format)
    spec = FeatureSpec(args.c, args.w, not args.no_char_spaces)
    model = train_corpus(corpus, spec, args.variant, alpha=args.alpha, var_smoothing=args.var_smoothing)
    save_model(model, args.out)
    print(f"trained {args.variant} model: {len(model.vocab)} features, {len(corpus)} sentences -> {args.out}",
          file=sys.stderr)


def cmd_predict(args):
    model = load_model(args.model)
    with _reader(args.inp) as src:
        texts = [s.text for s in iter_corpus_lines(src, args.format, args.inp)]
    with _writer(args.out) as dst:
        for label in predict_many(model, texts):
            dst.write(label.label + "\n")


def cmd_evaluate(args):
    model = load_model(args.model)
    report = evaluate(model, _read_corpus(args.inp, args.format))
    with _writer(args.out) as dst:
        dst.write(to_json(report) if args.json else format_eval_report(report))


def _parse_seeds(text):
    try:
        seeds = []
        for part in text.split(","):
            if "-" in part.strip()[1:]:
                lo, hi = part.split("-", 1)
                seeds.extend(range(int(lo), int(hi) + 1))
            else:
                seeds.append(int(part))
        return tuple(seeds)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def cmd_experiment(args):
    if not args.inp and not args.synthetic:
        raise UsageError("experiment needs --in or --synthetic")
    config = ExperimentConfig(
        variant=args.variant, c=args.c, w=args.w, alpha=args.alpha, var_smoothing=args.var_smoothing,
        train_fraction=args.train_fraction, seeds=args.seeds, augment=not args.no_augment,
        variant_rules=str(args.rules or rules_file("variants.tsv")),
        corpus_paths=tuple(args.inp or ()), corpus_format=args.format,
        char_spaces=not args.no_char_spaces, jobs=args.jobs,
    )
    corpus = None
    if args.synthetic:
        corpus = synthetic_parallel_corpus(cascade=load_cascade(args.cascade or rules_file("cascade.tsv")))
    report = run_experiment(config, corpus)
    with _writer(args.out) as dst:
        dst.write(to_json(report) if args.json else format_eval_report(report))


def cmd_audit(args):
    model = load_model(args.model)
    if args.inp == "-":
        report = run_audit(model, None, args.format, args.limit, args.name or "<stdin>", lines=sys.stdin)
    else:
        report = run_audit(model, args.inp, args.format, args.limit, args.name)
    with _writer(args.out) as dst:
        dst.write(to_json(report) if args.json else format_audit_report(report))


def _parallel_texts(args):
    a, b = _lines(args.a), _lines(args.b)
    if not args.no_normalize:
        a, b = [normalize(t) for t in a], [normalize(t) for t in b]
    if len(a) != len(b):
        raise ValueError(f"{args.a} has {len(a)} lines but {args.b} has {len(b)}")
    return a, b


def cmd_metrics(args):
    a, b = _parallel_texts(args)
    report = compare_parallel(a, b)
    with _writer(args.out) as dst:
        if args.json:
            d = report.as_dict()
            d.update({"set1": args.a, "set2": args.b, "signature": SIGNATURE})
            dst.write(json.dumps(d, sort_keys=True) + "\n")
            return
        dst.write(f"# {SIGNATURE}\n")
        dst.write(f"{'Set 1':<20} {'Set 2':<20} {'Lev.':>8} {'(norm.)':>8} {'BLEU':>8} {'chrF':>8} {'pairs':>7}\n")
        dst.write(f"{Path(args.a).name:<20} {Path(args.b).name:<20} {report.mean_levenshtein:8.2f} "
                  f"{report.mean_normalized_levenshtein:8.2f} {report.bleu:8.2f} {report.chrf:8.2f} "
                  f"{report.n_pairs:7d}\n")


def cmd_histogram(args):
    a, b = _parallel_texts(args)
    hist = histogram([normalized_levenshtein(x, y) for x, y in zip(a, b)], args.bins)
    with _writer(args.out) as dst:
        if args.json:
            dst.write(json.dumps({"bin_edges": hist.bin_edges, "counts": hist.counts}) + "\n")
            return
        dst.write("bin_lo\tbin_hi\tcount\n")
        for lo, hi, k in zip(hist.bin_edges, hist.bin_edges[1:], hist.counts):
            dst.write(f"{lo:.4f}\t{hi:.4f}\t{k}\n")


# -- parser -----------------------------------------------------------------

def _io(p, fmt_default=None, inp_help="input file, - for stdin"):
    p.add_argument("--in", dest="inp", metavar="PATH", default="-", help=inp_help)
    p.add_argument("--out", metavar="PATH", default="-", help="output file, - for stdout")
    if fmt_default:
        p.add_argument("--format", choices=FORMATS, default=fmt_default, help="corpus format")


def _hyper(p):
    p.add_argument("--variant", choices=VARIANTS, default="multinomial", help="likelihood model")
    p.add_argument("-c", type=int, default=4, help="max char n-gram order (0 disables)")
    p.add_argument("-w", type=int, default=1, help="max word n-gram order (0 disables)")
    p.add_argument("--alpha", type=float, default=1.0, help="multinomial additive smoothing")
    p.add_argument("--var-smoothing", type=float, default=1e-9, help="gaussian variance smoothing factor")
    p.add_argument("--no-char-spaces", action="store_true", default=False,
                   help="keep char n-grams inside words")


def _json_flag(p):
    p.add_argument("--json", action="store_true", default=False, help="emit one JSON object instead of key: value lines")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="tamreg", description="Literary/Spoken Tamil register tools.", formatter_class=fmt)
    parser.add_argument("--version", action="version", version=f"tamreg {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_, formatter_class=fmt)
        p.set_defaults(func=func)
        return p

    p = add("normalize", cmd_normalize, "lowercase, strip punctuation, collapse whitespace (one line per line)")
    _io(p)

    p = add("augment", cmd_augment, "expand a labelled corpus with orthographic variants")
    _io(p, "jsonl")
    p.add_argument("--rules", default=None, help=f"variant rule file (default: ${RULES_ENV}/variants.tsv or shipped)")

    p = add("translit", cmd_translit, "romanise Tamil-script text")
    _io(p)
    p.add_argument("--table", default=None,
                   help=f"transliteration table (default: ${RULES_ENV}/tamil_translit.tsv or shipped)")

    p = add("convert", cmd_convert, "rewrite Literary Tamil lines as Spoken Tamil")
    _io(p)
    p.add_argument("--cascade", default=None, help=f"cascade file (default: ${RULES_ENV}/cascade.tsv or shipped)")
    p.add_argument("--trace", default=None, help="write per-word rule traces as JSON lines to this file")

    p = add("featurize", cmd_featurize, "sparse count vectors (index:count) against a model's vocabulary")
    _io(p)
    p.add_argument("--model", required=True, help="model file")

    p = add("train", cmd_train, "fit a Naive Bayes model on a labelled corpus")
    p.add_argument("--in", dest="inp", metavar="PATH", default="-", help="labelled corpus, - for stdin")
    p.add_argument("--format", choices=FORMATS, default="jsonl", help="corpus format")
    p.add_argument("--out", metavar="PATH", required=True, help="model file to write")
    _hyper(p)

    p = add("predict", cmd_predict, "one register label per input line")
    _io(p, "plain")
    p.add_argument("--model", required=True, help="model file")

    p = add("evaluate", cmd_evaluate, "accuracy and per-register F1 on a labelled corpus")
    _io(p, "jsonl")
    p.add_argument("--model", required=True, help="model file")
    _json_flag(p)

    p = add("experiment", cmd_experiment, "seeded split/augment/fit/evaluate runs, averaged")
    p.add_argument("--in", dest="inp", metavar="PATH", action="append", default=None, help="labelled corpus (repeatable)")
    p.add_argument("--out", metavar="PATH", default="-", help="output file, - for stdout")
    p.add_argument("--format", choices=FORMATS, default="jsonl", help="corpus format")
    p.add_argument("--synthetic", action="store_true", default=False,
                   help="use the bundled Literary seed list and its cascade conversions")
    p.add_argument("--cascade", default=None, help="cascade for --synthetic")
    _hyper(p)
    p.add_argument("--train-fraction", type=float, default=0.8, help="per-class training share")
    p.add_argument("--seeds", type=_parse_seeds, default=(1, 2, 3, 4, 5), help="comma list or range, e.g. 1-5")
    p.add_argument("--no-augment", action="store_true", default=False, help="skip training-side augmentation")
    p.add_argument("--rules", default=None, help="variant rule file for augmentation")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for seeds")
    _json_flag(p)

    p = add("audit", cmd_audit, "estimate the Literary share of a corpus")
    _io(p, "plain")
    p.add_argument("--model", required=True, help="model file")
    p.add_argument("--limit", type=int, default=None, help="only the first N non-blank lines")
    p.add_argument("--name", default=None, help="dataset name in the report")
    _json_flag(p)

    for name, func, help_ in (
        ("metrics", cmd_metrics, "Levenshtein, BLEU and chrF between two line-aligned files"),
        ("histogram", cmd_histogram, "histogram of normalised Levenshtein distances as TSV"),
    ):
        p = add(name, func, help_)
        p.add_argument("--a", required=True, help="first file (hypothesis side)")
        p.add_argument("--b", required=True, help="second file (reference side)")
        p.add_argument("--out", metavar="PATH", default="-", help="output file, - for stdout")
        p.add_argument("--no-normalize", action="store_true", default=False, help="compare lines as-is")
        if name == "histogram":
            p.add_argument("--bins", type=int, default=20, help="number of uniform bins over [0, 1]")
        _json_flag(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"tamreg {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (TamregError, ExperimentError, ValueError, KeyError, OSError) as exc:
        print(f"tamreg {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
