"""Regenerate src/tamreg/data/tamil_translit.tsv (practical romanisation)."""
from pathlib import Path

VOWELS = {
    0x0B85: "a", 0x0B86: "aa", 0x0B87: "i", 0x0B88: "ee", 0x0B89: "u", 0x0B8A: "oo",
    0x0B8E: "e", 0x0B8F: "e", 0x0B90: "ai", 0x0B92: "o", 0x0B93: "o", 0x0B94: "au",
}
SIGNS = {
    0x0BBE: "aa", 0x0BBF: "i", 0x0BC0: "ee", 0x0BC1: "u", 0x0BC2: "oo", 0x0BC6: "e",
    0x0BC7: "e", 0x0BC8: "ai", 0x0BCA: "o", 0x0BCB: "o", 0x0BCC: "au",
}
CONSONANTS = {
    0x0B95: "k", 0x0B99: "ng", 0x0B9A: "s", 0x0B9C: "j", 0x0B9E: "nj", 0x0B9F: "d",
    0x0BA3: "n", 0x0BA4: "th", 0x0BA8: "n", 0x0BA9: "n", 0x0BAA: "p", 0x0BAE: "m",
    0x0BAF: "y", 0x0BB0: "r", 0x0BB1: "r", 0x0BB2: "l", 0x0BB3: "l", 0x0BB4: "zh",
    0x0BB5: "v", 0x0BB6: "sh", 0x0BB7: "sh", 0x0BB8: "s", 0x0BB9: "h",
}
PULLI = 0x0BCD
# two-consonant clusters whose romanisation is not the concatenation
CLUSTERS = {
    (0x0B9F, 0x0B9F): "tt",   # ட்ட
    (0x0BB1, 0x0BB1): "tr",   # ற்ற
    (0x0BA9, 0x0BB1): "ndr",  # ன்ற
    (0x0BA8, 0x0BA4): "ndh",  # ந்த
    (0x0BA3, 0x0B9F): "nd",   # ண்ட
    (0x0B99, 0x0B95): "ng",   # ங்க
    (0x0B9E, 0x0B9A): "nj",   # ஞ்ச
    (0x0B9A, 0x0B9A): "cc",   # ச்ச
    (0x0BA4, 0x0BA4): "tth",  # த்த
}
OTHER = {0x0B83: "h"}  # aytham


def rows():
    for cp, lat in {**VOWELS, **OTHER}.items():
        yield (cp,), lat
    for cp, lat in CONSONANTS.items():
        yield (cp,), lat + "a"
        yield (cp, PULLI), lat
        for sign, v in SIGNS.items():
            yield (cp, sign), lat + v
    for (c1, c2), lat in CLUSTERS.items():
        yield (c1, PULLI, c2), lat + "a"
        yield (c1, PULLI, c2, PULLI), lat
        for sign, v in SIGNS.items():
            yield (c1, PULLI, c2, sign), lat + v


def main():
    out = Path(__file__).resolve().parents[1] / "src" / "tamreg" / "data" / "tamil_translit.tsv"
    lines = ["# Tamil script -> practical Latin romanisation; longest match wins.",
             "# codepoints (hex, space separated)<TAB>latin"]
    for seq, lat in rows():
        lines.append(" ".join(f"{cp:04X}" for cp in seq) + "\t" + lat)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
