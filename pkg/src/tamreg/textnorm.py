"""Normalization and orthographic-variant augmentation."""
from __future__ import annotations

import itertools
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus, Sentence
from .errors import RuleFileError

ANCHORS = ("anywhere", "word_initial", "word_final", "whole_word")
DEFAULT_CAP = 16
DATA_DIR = Path(__file__).with_name("data")
DEFAULT_VARIANT_FILE = DATA_DIR / "variants.tsv"


def normalize(text: str) -> str:
    """Lowercase, drop Unicode punctuation (categories P*), collapse whitespace."""
    kept = "".join(ch for ch in text if not unicodedata.category(ch).startswith("P"))
    return " ".join(kept.lower().split())


def find_sites(text: str, pattern: str, anchor: str) -> list:
    """Start offsets of non-overlapping, left-to-right anchored matches.

    Word boundaries are the text edges and single spaces, so ``text`` must be
    normalized.
    """
    sites = []
    n = len(pattern)
    start = text.find(pattern)
    while start != -1:
        end = start + n
        ok_start = start == 0 or text[start - 1] == " "
        ok_end = end == len(text) or text[end] == " "
        if (
            anchor == "anywhere"
            or (anchor == "word_initial" and ok_start)
            or (anchor == "word_final" and ok_end)
            or (anchor == "whole_word" and ok_start and ok_end)
        ):
            sites.append(start)
            start = text.find(pattern, end)
        else:
            start = text.find(pattern, start + 1)
    return sites


def replace_sites(text: str, sites, width: int, replacement: str) -> str:
    out = []
    pos = 0
    for s in sorted(sites):
        out.append(text[pos:s])
        out.append(replacement)
        pos = s + width
    out.append(text[pos:])
    return "".join(out)


@dataclass(frozen=True)
class VariantRule:
    id: str
    pattern: str
    alternatives: tuple
    anchor: str = "anywhere"

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        if not self.pattern:
            raise ValueError(f"rule {self.id}: empty pattern")
        if not self.alternatives:
            raise ValueError(f"rule {self.id}: no alternatives")
        if self.pattern in self.alternatives:
            raise ValueError(f"rule {self.id}: pattern {self.pattern!r} is also an alternative")
        if self.anchor not in ANCHORS:
            raise ValueError(f"rule {self.id}: unknown anchor {self.anchor!r}")
        if any(s != s.lower() for s in (self.pattern, *self.alternatives)):
            raise ValueError(f"rule {self.id}: patterns and alternatives must be lowercase")

    def sites(self, text: str) -> list:
        return find_sites(text, self.pattern, self.anchor)

    def apply_all(self, text: str, alternative: str) -> str:
        return replace_sites(text, self.sites(text), len(self.pattern), alternative)


@dataclass(frozen=True)
class VariantRuleSet:
    rules: tuple
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.cap < 1:
            raise ValueError(f"cap must be positive, got {self.cap}")
        ids = [r.id for r in self.rules]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate rule ids in rule set")


def variant_texts(text: str, rules: VariantRuleSet) -> list:
    """Deduplicated variant strings of ``text``, original first, at most ``cap``."""
    out = [text]
    applicable = []
    for rule in rules.rules:
        sites = rule.sites(text)
        if not sites:
            continue
        applicable.append(rule)
        width = len(rule.pattern)
        for alt in rule.alternatives:
            for site in sites:
                out.append(replace_sites(text, [site], width, alt))
            out.append(replace_sites(text, sites, width, alt))
    for r1, r2 in itertools.combinations(applicable, 2):
        for a1 in r1.alternatives:
            first = r1.apply_all(text, a1)
            for a2 in r2.alternatives:
                out.append(r2.apply_all(first, a2))
    return list(dict.fromkeys(out))[: rules.cap]


def augment(sentence: Sentence, rules: VariantRuleSet) -> list:
    """Expand one normalized sentence into orthographic variants.

    Index 0 is the input. Variants keep label and provenance and get ids
    ``<id>-aug1``, ``<id>-aug2``, ...
    """
    texts = variant_texts(sentence.text, rules)
    return [sentence] + [
        Sentence(f"{sentence.id}-aug{i}", t, sentence.label, sentence.provenance)
        for i, t in enumerate(texts[1:], 1)
    ]


def augment_corpus(corpus: Corpus, rules: VariantRuleSet) -> Corpus:
    out = []
    for s in corpus:
        out.extend(augment(s, rules))
    return Corpus(out, name=f"{corpus.name}.aug")


def load_variant_rules(path=DEFAULT_VARIANT_FILE) -> VariantRuleSet:
    """Read a rule file: ``id<TAB>anchor<TAB>pattern<TAB>alt1|alt2``.

    ``#`` starts a comment line; an optional ``!cap N`` line sets the cap.
    """
    rules = []
    seen = set()
    cap = DEFAULT_CAP
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if line.startswith("!cap"):
                try:
                    cap = int(line.split()[1])
                    if cap < 1:
                        raise ValueError
                except (IndexError, ValueError):
                    raise RuleFileError(path, lineno, f"bad cap header {line!r}") from None
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise RuleFileError(path, lineno, f"expected 4 tab-separated fields, got {len(fields)}")
            rule_id, anchor, pattern, alts = fields
            if rule_id in seen:
                raise RuleFileError(path, lineno, f"duplicate rule id {rule_id!r}")
            try:
                rules.append(VariantRule(rule_id, pattern, alts.split("|") if alts else (), anchor))
            except ValueError as exc:
                raise RuleFileError(path, lineno, str(exc)) from None
            seen.add(rule_id)
    return VariantRuleSet(rules, cap)
