"""Tamil-script romanisation and the Literary -> Spoken rewrite cascade."""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import RuleFileError

DATA_DIR = Path(__file__).with_name("data")
DEFAULT_TABLE_FILE = DATA_DIR / "tamil_translit.tsv"
DEFAULT_CASCADE_FILE = DATA_DIR / "cascade.tsv"

STAGES = ("lexical", "phonological")
ANCHORS = ("anywhere", "word_initial", "word_final", "whole_word")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


# -- transliteration --------------------------------------------------------

@dataclass(frozen=True)
class TranslitTable:
    entries: dict  # codepoint string -> latin
    max_len: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "max_len", max((len(k) for k in self.entries), default=1))


def load_translit_table(path=DEFAULT_TABLE_FILE) -> TranslitTable:
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            try:
                cps, latin = line.split("\t")
                key = "".join(chr(int(h, 16)) for h in cps.split())
            except ValueError:
                raise RuleFileError(path, lineno, "expected 'HEX [HEX...]<TAB>latin'") from None
            if not key:
                raise RuleFileError(path, lineno, "empty codepoint sequence")
            entries[key] = latin
    return TranslitTable(entries)


_default_table = None


def default_table() -> TranslitTable:
    global _default_table
    if _default_table is None:
        _default_table = load_translit_table()
    return _default_table


def transliterate(text: str, table: TranslitTable = None) -> str:
    """Greedy longest-match romanisation; unmapped codepoints pass through."""
    table = table or default_table()
    text = unicodedata.normalize("NFC", text)
    out = []
    i = 0
    while i < len(text):
        for n in range(min(table.max_len, len(text) - i), 0, -1):
            latin = table.entries.get(text[i:i + n])
            if latin is not None:
                out.append(latin)
                i += n
                break
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


# -- rewrite rules ----------------------------------------------------------

def parse_pattern(pattern: str) -> tuple:
    """Split a pattern into tokens, each a frozenset of allowed characters."""
    tokens = []
    i = 0
    while i < len(pattern):
        if pattern[i] == "[":
            close = pattern.find("]", i)
            if close <= i + 1:
                raise ValueError(f"bad character class in {pattern!r}")
            tokens.append(frozenset(pattern[i + 1:close]))
            i = close + 1
        else:
            tokens.append(frozenset(pattern[i]))
            i += 1
    if not tokens:
        raise ValueError("empty pattern")
    return tuple(tokens)


@dataclass(frozen=True)
class RewriteRule:
    id: str
    stage: str
    anchor: str
    pattern: str
    replacement: str
    enabled: bool = True
    min_length: int = 0
    tokens: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.stage not in STAGES:
            raise ValueError(f"rule {self.id}: unknown stage {self.stage!r}")
        if self.anchor not in ANCHORS:
            raise ValueError(f"rule {self.id}: unknown anchor {self.anchor!r}")
        if self.stage == "lexical" and self.anchor != "whole_word":
            raise ValueError(f"rule {self.id}: lexical rules must be anchored whole_word")
        object.__setattr__(self, "tokens", parse_pattern(self.pattern))
        if self.stage == "lexical" and any(len(t) != 1 for t in self.tokens):
            raise ValueError(f"rule {self.id}: lexical patterns must be literal")

    def _matches_at(self, word: str, i: int) -> bool:
        return all(word[i + k] in tok for k, tok in enumerate(self.tokens))

    def sites(self, word: str) -> list:
        n = len(self.tokens)
        if len(word) < max(n, self.min_length):
            return []
        if self.anchor == "whole_word":
            return [0] if n == len(word) and self._matches_at(word, 0) else []
        if self.anchor == "word_initial":
            return [0] if self._matches_at(word, 0) else []
        if self.anchor == "word_final":
            return [len(word) - n] if self._matches_at(word, len(word) - n) else []
        sites = []
        i = 0
        while i <= len(word) - n:
            if self._matches_at(word, i):
                sites.append(i)
                i += n
            else:
                i += 1
        return sites

    def apply(self, word: str) -> str:
        """Rewrite every (non-overlapping) site in a single word."""
        n = len(self.tokens)
        out = []
        pos = 0
        for s in self.sites(word):
            out.append(word[pos:s])
            out.append(self.replacement.replace("&", word[s:s + n]))
            pos = s + n
        out.append(word[pos:])
        return "".join(out)

    def output_tokens(self) -> tuple:
        out = []
        for ch in self.replacement:
            out.extend(self.tokens if ch == "&" else [frozenset(ch)])
        return tuple(out)


@dataclass(frozen=True)
class ConversionTrace:
    input: str
    steps: tuple  # (rule id, before, after)
    output: str


def may_create_site(r1: RewriteRule, r2: RewriteRule) -> bool:
    """Conservatively decide whether text written by ``r1`` can form a new
    ``r2`` site. Characters outside the rewritten span are wildcards."""
    R = r1.output_tokens()
    P = r2.tokens
    if not R:
        return True
    x_empty = r1.anchor in ("word_initial", "whole_word")
    y_empty = r1.anchor in ("word_final", "whole_word")
    if r2.min_length and len(R) > len(r1.tokens) and not (
        r1.anchor == r2.anchor and r1.anchor in ("word_initial", "word_final")
    ):
        return True
    for o in range(-(len(P) - 1), len(R)):
        end = o + len(P)
        if x_empty and o < 0:
            continue
        if y_empty and end > len(R):
            continue
        if r2.anchor in ("word_initial", "whole_word") and (o > 0 or (x_empty and o != 0)):
            continue
        if r2.anchor in ("word_final", "whole_word") and (end < len(R) or (y_empty and end != len(R))):
            continue
        if all(P[k] & R[o + k] for k in range(len(P)) if 0 <= o + k < len(R)):
            return True
    return False


@dataclass(frozen=True)
class RuleCascade:
    rules: tuple

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        ids = [r.id for r in self.rules]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate rule ids in cascade")
        seen_phon = False
        for r in self.rules:
            if r.stage == "phonological":
                seen_phon = True
            elif seen_phon:
                raise ValueError(f"lexical rule {r.id} follows a phonological rule")

    @property
    def lexicon(self) -> dict:
        return {r.pattern: r for r in self.rules if r.enabled and r.stage == "lexical"}

    @property
    def protected(self) -> frozenset:
        """Lexical outputs; already Spoken, never rewritten again."""
        return frozenset(r.replacement for r in self.lexicon.values())

    @property
    def phonological(self) -> tuple:
        return tuple(r for r in self.rules if r.enabled and r.stage == "phonological")

    def rule(self, rule_id: str) -> RewriteRule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def conflicts(self) -> list:
        """Ordered pairs of enabled rules where the first may feed the second.

        An empty list means :func:`convert` is idempotent on its own output.
        """
        phon = self.phonological
        lex = tuple(self.lexicon.values())
        return [(r1.id, r2.id) for r1 in phon for r2 in phon + lex if may_create_site(r1, r2)]

    def convert_word(self, word: str) -> ConversionTrace:
        steps = []
        lex = self.lexicon.get(word)
        if lex is not None:
            return ConversionTrace(word, ((lex.id, word, lex.replacement),), lex.replacement)
        if word in self.protected:
            return ConversionTrace(word, (), word)
        current = word
        for rule in self.phonological:
            if rule.sites(current):
                after = rule.apply(current)
                steps.append((rule.id, current, after))
                current = after
        return ConversionTrace(word, tuple(steps), current)


def convert(text: str, cascade: RuleCascade = None):
    """Rewrite normalized Literary text word by word.

    Returns ``(spoken_text, traces)`` with one trace per input word.
    """
    cascade = cascade or default_cascade()
    traces = [cascade.convert_word(w) for w in text.split()]
    return " ".join(t.output for t in traces), traces


def replay(trace: ConversionTrace, cascade: RuleCascade) -> str:
    """Re-run the recorded steps; raises if any step does not reproduce."""
    current = trace.input
    for rule_id, before, after in trace.steps:
        if current != before:
            raise ValueError(f"trace diverged before {rule_id}: {current!r} != {before!r}")
        rule = cascade.rule(rule_id)
        current = rule.replacement if rule.stage == "lexical" else rule.apply(current)
        if current != after:
            raise ValueError(f"rule {rule_id} produced {current!r}, trace says {after!r}")
    if current != trace.output:
        raise ValueError(f"replay ended at {current!r}, trace says {trace.output!r}")
    return current


def _parse_bool(value: str) -> bool:
    v = value.strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ValueError(f"bad enabled flag {value!r}")


def load_cascade(path=DEFAULT_CASCADE_FILE) -> RuleCascade:
    """``id stage anchor pattern replacement enabled [min_word_length]``, tab separated."""
    rules = []
    seen = set()
    seen_phon = False
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) not in (6, 7):
                raise RuleFileError(path, lineno, f"expected 6 or 7 tab-separated fields, got {len(fields)}")
            try:
                rule = RewriteRule(
                    fields[0], fields[1], fields[2], fields[3], fields[4],
                    _parse_bool(fields[5]), int(fields[6]) if len(fields) == 7 else 0,
                )
            except ValueError as exc:
                raise RuleFileError(path, lineno, str(exc)) from None
            if rule.id in seen:
                raise RuleFileError(path, lineno, f"duplicate rule id {rule.id!r}")
            if rule.stage == "lexical" and seen_phon:
                raise RuleFileError(path, lineno, f"lexical rule {rule.id} after a phonological rule")
            seen_phon = seen_phon or rule.stage == "phonological"
            seen.add(rule.id)
            rules.append(rule)
    return RuleCascade(rules)


_default_cascade = None


def default_cascade() -> RuleCascade:
    global _default_cascade
    if _default_cascade is None:
        _default_cascade = load_cascade()
    return _default_cascade
