"""Corpus data types, file I/O and seeded stratified splitting."""
from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .errors import CorpusFormatError

FORMATS = ("jsonl", "tsv", "plain")


class Register(enum.IntEnum):
    """Diglossic register. The integer order (Literary first) breaks ties."""

    LITERARY = 0
    SPOKEN = 1

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, value: str) -> "Register":
        try:
            return cls[value.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown register label {value!r} (expected 'literary' or 'spoken')") from None

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Sentence:
    id: str
    text: str
    label: Optional[Register] = None
    provenance: str = ""

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"sentence {self.id!r} has empty text")


@dataclass(frozen=True)
class ParallelTriple:
    """One source sentence in Literary form plus two Spoken renderings."""

    id: str
    literary: str
    spoken1: str
    spoken2: str

    def __post_init__(self):
        for name in ("literary", "spoken1", "spoken2"):
            if not getattr(self, name).strip():
                raise ValueError(f"triple {self.id!r}: {name} is empty")


@dataclass(frozen=True)
class Corpus:
    sentences: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        seen = set()
        for s in self.sentences:
            if s.id in seen:
                raise ValueError(f"duplicate sentence id {s.id!r} in corpus {self.name!r}")
            seen.add(s.id)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    def __getitem__(self, i):
        return self.sentences[i]

    @property
    def texts(self) -> list:
        return [s.text for s in self.sentences]

    @property
    def labels(self) -> list:
        return [s.label for s in self.sentences]

    def is_labelled(self) -> bool:
        return all(s.label is not None for s in self.sentences)


def _auto_id(lineno: int) -> str:
    return f"{lineno:06d}"


def parse_line(line: str, fmt: str, lineno: int, path="<stream>", provenance: str = "") -> Optional[Sentence]:
    """Parse one corpus line (0-based ``lineno``). Blank lines yield None."""
    line = line.rstrip("\r\n")
    if not line.strip():
        return None
    try:
        if fmt == "plain":
            return Sentence(_auto_id(lineno), line.strip(), None, provenance)
        if fmt == "tsv":
            if "\t" not in line:
                raise ValueError("expected 'text<TAB>label'")
            text, raw_label = line.rsplit("\t", 1)
            label = Register.parse(raw_label) if raw_label.strip() else None
            return Sentence(_auto_id(lineno), text.strip(), label, provenance)
        if fmt == "jsonl":
            obj = json.loads(line)
            if not isinstance(obj, dict) or not isinstance(obj.get("text"), str):
                raise ValueError("expected an object with a string 'text' key")
            raw_label = obj.get("label")
            label = Register.parse(raw_label) if raw_label else None
            return Sentence(
                str(obj.get("id", _auto_id(lineno))),
                obj["text"].strip(),
                label,
                obj.get("provenance", provenance),
            )
    except ValueError as exc:  # json.JSONDecodeError is a ValueError
        raise CorpusFormatError(path, lineno + 1, str(exc)) from None
    raise ValueError(f"unknown corpus format {fmt!r}; expected one of {FORMATS}")


def iter_corpus_lines(lines: Iterable[str], fmt: str, path="<stream>", provenance: str = "") -> Iterator[Sentence]:
    for lineno, line in enumerate(lines):
        sentence = parse_line(line, fmt, lineno, path, provenance)
        if sentence is not None:
            yield sentence


def load_corpus(path, fmt: str = "jsonl") -> Corpus:
    """Read a corpus file. Missing ids become zero-padded 0-based line numbers."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown corpus format {fmt!r}; expected one of {FORMATS}")
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        sentences = list(iter_corpus_lines(fh, fmt, path, provenance=path.stem))
    try:
        return Corpus(sentences, name=path.stem)
    except ValueError as exc:
        raise CorpusFormatError(path, 0, str(exc)) from None


def format_sentence(sentence: Sentence, fmt: str) -> str:
    if fmt == "jsonl":
        obj = {"id": sentence.id, "text": sentence.text}
        if sentence.label is not None:
            obj["label"] = sentence.label.label
        obj["provenance"] = sentence.provenance
        return json.dumps(obj, ensure_ascii=False)
    if "\n" in sentence.text or "\t" in sentence.text:
        raise ValueError(f"sentence {sentence.id!r}: text with tabs or newlines needs jsonl")
    if fmt == "tsv":
        return f"{sentence.text}\t{sentence.label.label if sentence.label is not None else ''}"
    if fmt == "plain":
        return sentence.text
    raise ValueError(f"unknown corpus format {fmt!r}; expected one of {FORMATS}")


def write_corpus(corpus: Corpus, path, fmt: str = "jsonl") -> None:
    lines = [format_sentence(s, fmt) + "\n" for s in corpus]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(lines)


def split_stratified(corpus: Corpus, train_fraction: float = 0.8, seed: int = 0):
    """Split a labelled corpus per register.

    Each class contributes ``floor(train_fraction * n_class)`` sentences to
    train. Members are drawn with ``random.Random(seed)`` (Mersenne Twister),
    shuffling classes in register order. Both halves keep the corpus order.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    by_class = {r: [] for r in Register}
    for idx, s in enumerate(corpus):
        if s.label is None:
            raise ValueError(f"sentence {s.id!r} is unlabelled; cannot stratify")
        by_class[s.label].append(idx)
    rng = random.Random(seed)
    train_idx = set()
    for register in Register:
        members = by_class[register]
        if not members:
            continue
        if len(members) < 2:
            raise ValueError(f"class {register.label} has {len(members)} member(s); need at least 2")
        shuffled = list(members)
        rng.shuffle(shuffled)
        train_idx.update(shuffled[: math.floor(train_fraction * len(members))])
    train = [s for i, s in enumerate(corpus) if i in train_idx]
    test = [s for i, s in enumerate(corpus) if i not in train_idx]
    return Corpus(train, name=f"{corpus.name}.train"), Corpus(test, name=f"{corpus.name}.test")
