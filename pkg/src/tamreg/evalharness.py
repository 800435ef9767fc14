"""Held-out evaluation, seeded multi-run experiments and corpus audits."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from .corpus import Corpus, Register, Sentence, iter_corpus_lines, load_corpus, split_stratified
from .features import FeatureSpec
from .nbayes import NBModel, predict_many, train_corpus
from .textnorm import DATA_DIR, augment_corpus, load_variant_rules, normalize
from .translit import RuleCascade, convert, default_cascade

SEED_FILE = DATA_DIR / "literary_seed.txt"
AUDIT_BATCH = 1024


class ExperimentError(RuntimeError):
    def __init__(self, seed, cause):
        self.seed = seed
        super().__init__(f"seed {seed}: {cause}")


@dataclass(frozen=True)
class SeedResult:
    seed: int
    accuracy: float
    f1_spoken: float
    f1_literary: float
    n_test: int


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    f1_spoken: float
    f1_literary: float
    n_test: int
    per_seed: Optional[tuple] = None

    def as_dict(self) -> dict:
        d = asdict(self)
        if self.per_seed is None:
            del d["per_seed"]
        return d


@dataclass(frozen=True)
class AuditReport:
    dataset_name: str
    n_lines: int
    n_literary: int
    per_line_labels: Optional[tuple] = None
    estimator: str = ""

    @property
    def pct_literary(self) -> float:
        return self.n_literary / self.n_lines

    def as_dict(self) -> dict:
        d = {
            "dataset": self.dataset_name,
            "estimator": self.estimator,
            "n_lines": self.n_lines,
            "n_literary": self.n_literary,
            "pct_literary": self.pct_literary,
        }
        if self.per_line_labels is not None:
            d["labels"] = [r.label for r in self.per_line_labels]
        return d


def _f1(tp, fp, fn) -> float:
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    return 2 * p * r / (p + r) if p + r else 0.0


def score(gold, predicted) -> EvalReport:
    """Accuracy and per-register F1 from parallel label lists."""
    gold, predicted = list(gold), list(predicted)
    if len(gold) != len(predicted):
        raise ValueError(f"{len(gold)} gold labels vs {len(predicted)} predictions")
    if not gold:
        raise ValueError("cannot evaluate an empty test set")
    f1 = {}
    for k in Register:
        tp = sum(g == k and p == k for g, p in zip(gold, predicted))
        fp = sum(g != k and p == k for g, p in zip(gold, predicted))
        fn = sum(g == k and p != k for g, p in zip(gold, predicted))
        f1[k] = _f1(tp, fp, fn)
    correct = sum(g == p for g, p in zip(gold, predicted))
    return EvalReport(correct / len(gold), f1[Register.SPOKEN], f1[Register.LITERARY], len(gold))


def _classify(model, texts) -> list:
    if isinstance(model, NBModel):
        return predict_many(model, texts)
    return [model(t) for t in texts]


def evaluate(model, test: Corpus) -> EvalReport:
    """Score ``model`` (an NBModel or a text -> Register callable) on a labelled corpus."""
    if not test.is_labelled():
        raise ValueError("test corpus has unlabelled sentences")
    return score(test.labels, _classify(model, test.texts))


@dataclass(frozen=True)
class ExperimentConfig:
    variant: str = "multinomial"
    c: int = 4
    w: int = 1
    alpha: float = 1.0
    var_smoothing: float = 1e-9
    train_fraction: float = 0.8
    seeds: tuple = (1, 2, 3, 4, 5)
    augment: bool = True
    variant_rules: Optional[str] = None
    corpus_paths: tuple = ()
    corpus_format: str = "jsonl"
    char_spaces: bool = True
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(self.seeds))
        object.__setattr__(self, "corpus_paths", tuple(str(p) for p in self.corpus_paths))
        if not self.seeds:
            raise ValueError("need at least one seed")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be distinct")

    @property
    def spec(self) -> FeatureSpec:
        return FeatureSpec(self.c, self.w, self.char_spaces)


def load_experiment_corpus(config: ExperimentConfig) -> Corpus:
    if not config.corpus_paths:
        raise ValueError("no corpus paths in experiment config")
    corpora = [load_corpus(p, config.corpus_format) for p in config.corpus_paths]
    if len(corpora) == 1:
        return corpora[0]
    merged = [Sentence(f"{c.name}:{s.id}", s.text, s.label, s.provenance) for c in corpora for s in c]
    return Corpus(merged, name="+".join(c.name for c in corpora))


def _normalized(corpus: Corpus) -> Corpus:
    return Corpus([Sentence(s.id, normalize(s.text), s.label, s.provenance) for s in corpus
                   if normalize(s.text)], name=corpus.name)


def run_seed(config: ExperimentConfig, corpus: Corpus, seed: int) -> SeedResult:
    """One split / augment / fit / evaluate pass."""
    try:
        train, test = split_stratified(corpus, config.train_fraction, seed)
        train = _normalized(train)
        if config.augment:
            rules = load_variant_rules(config.variant_rules) if config.variant_rules else load_variant_rules()
            train = augment_corpus(train, rules)
        model = train_corpus(train, config.spec, config.variant, alpha=config.alpha,
                             var_smoothing=config.var_smoothing)
        r = evaluate(model, test)
    except Exception as exc:
        raise ExperimentError(seed, exc) from exc
    return SeedResult(seed, r.accuracy, r.f1_spoken, r.f1_literary, r.n_test)


def _mean(xs) -> float:
    return sum(xs) / len(xs)


def run_experiment(config: ExperimentConfig, corpus: Optional[Corpus] = None) -> EvalReport:
    """Average held-out metrics over ``config.seeds``; results keep seed order.

    Augmentation, when on, touches the training split only.
    """
    if corpus is None:
        corpus = load_experiment_corpus(config)
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            results = list(pool.map(run_seed, [config] * len(config.seeds), [corpus] * len(config.seeds),
                                    config.seeds))
    else:
        results = [run_seed(config, corpus, s) for s in config.seeds]
    return EvalReport(
        accuracy=_mean([r.accuracy for r in results]),
        f1_spoken=_mean([r.f1_spoken for r in results]),
        f1_literary=_mean([r.f1_literary for r in results]),
        n_test=results[0].n_test,
        per_seed=tuple(results),
    )


def audit(model, path, fmt: str = "plain", limit: Optional[int] = None, name: Optional[str] = None,
          keep_labels: bool = False, lines=None) -> AuditReport:
    """Estimate the Literary share of a corpus by classifying line by line.

    The file is streamed in fixed-size batches; ``limit`` stops after that
    many non-blank lines. ``lines`` may replace ``path`` with any iterable.
    """
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be positive, got {limit}")
    name = name or (Path(path).stem if path not in (None, "-") else "<stdin>")
    n_lines = n_lit = 0
    labels = [] if keep_labels else None
    batch = []

    def flush():
        nonlocal n_lit
        preds = _classify(model, batch)
        n_lit += sum(p == Register.LITERARY for p in preds)
        if labels is not None:
            labels.extend(preds)
        batch.clear()

    fh = open(path, encoding="utf-8") if lines is None else None
    try:
        for sentence in iter_corpus_lines(fh if fh is not None else lines, fmt, path):
            if limit is not None and n_lines >= limit:
                break
            batch.append(sentence.text)
            n_lines += 1
            if len(batch) >= AUDIT_BATCH:
                flush()
        if batch:
            flush()
    finally:
        if fh is not None:
            fh.close()
    if n_lines == 0:
        raise ValueError(f"corpus {name!r} has no lines to audit")
    estimator = f"nb-{model.variant}" if isinstance(model, NBModel) else getattr(model, "__name__", "callable")
    return AuditReport(name, n_lines, n_lit, tuple(labels) if labels is not None else None, estimator)


def synthetic_parallel_corpus(seed_path=SEED_FILE, cascade: Optional[RuleCascade] = None) -> Corpus:
    """Literary seed sentences paired with their cascade-converted Spoken forms.

    Pairs the cascade leaves unchanged are dropped; they carry no register signal.
    """
    cascade = cascade or default_cascade()
    out = []
    with open(seed_path, encoding="utf-8") as fh:
        for i, line in enumerate(fh):
            literary = normalize(line)
            if not literary:
                continue
            spoken, _ = convert(literary, cascade)
            if spoken == literary:
                continue
            out.append(Sentence(f"lit-{i:06d}", literary, Register.LITERARY, "synthetic"))
            out.append(Sentence(f"spk-{i:06d}", spoken, Register.SPOKEN, "synthetic"))
    return Corpus(out, name="synthetic")


def format_eval_report(report: EvalReport) -> str:
    lines = [
        f"accuracy: {report.accuracy!r}",
        f"f1_spoken: {report.f1_spoken!r}",
        f"f1_literary: {report.f1_literary!r}",
        f"n_test: {report.n_test}",
    ]
    for r in report.per_seed or ():
        lines.append(f"seed {r.seed}: accuracy={r.accuracy!r} f1_spoken={r.f1_spoken!r} "
                     f"f1_literary={r.f1_literary!r} n_test={r.n_test}")
    return "\n".join(lines) + "\n"


def format_audit_report(report: AuditReport) -> str:
    return (
        f"dataset: {report.dataset_name}\n"
        f"estimator: {report.estimator}\n"
        f"n_lines: {report.n_lines}\n"
        f"n_literary: {report.n_literary}\n"
        f"pct_literary: {100 * report.pct_literary:.1f}%\n"
    )


def to_json(report) -> str:
    return json.dumps(report.as_dict(), sort_keys=True) + "\n"
