"""Regenerate src/tamreg/data/literary_seed.txt.

Template-built romanised Literary Tamil sentences used as the bundled seed
list for the synthetic parallel corpus. Output is fixed by ``SEED``.
"""
import itertools
import random
from pathlib import Path

SEED = 20230601
PER_TEMPLATE = 70

SUBJECTS = {
    "aan": ["avan", "en thambi", "andha siruvan", "mannan", "vivasaayi", "ennudaiya nanban", "kavignan"],
    "aal": ["aval", "en thangai", "andha sirumi", "raani", "aasiriyai", "ennudaiya thozhi"],
    "aar": ["avar", "aasiriyar", "maruthuvar", "thalaivar", "en thaaththaa", "vanigar"],
    "aargal": ["avargal", "maanavargal", "makkal", "vivasaayigal", "kuzhandhaigal"],
    "en": ["naan"],
    "om": ["naangal", "naam"],
}
LOCATIVES = ["veettil", "pallikkoodaththil", "ooril", "kaattil", "nagaraththil", "kadalil", "koyilil",
             "sandhaiyil", "thottaththil", "vayalil", "malaiyil", "araiyil", "noolagaththil",
             "maruthuvamanaiyil", "thiraiyarangil"]
STAY_STEMS = ["irundh", "vaazhndh", "padithth", "velai seidh", "vilaiyaadin", "thoongin", "kaaththirundh"]
OBJECTS = ["pazhaththai", "puththagaththai", "kadidhaththai", "paadalai", "unavai", "padaththai",
           "seidhiyai", "kadhaiyai", "vandiyai", "panaththai", "maalaiyai", "kudaiyai"]
OBJ_STEMS = ["vaangin", "padithth", "ezhudhin", "paarth", "kett", "samaithth", "kodutth", "thedin"]
NOUNS = ["vaalum", "vaanam", "kadal", "malar", "nagaram", "saalai", "veedu", "maram", "aaru", "kulam",
         "thottam", "ilai", "kadhavu", "malai", "sattai"]
ADVERBIALS = ["vellaiyaaga", "azhagaaga", "periyadhaaga", "siriyadhaaga", "uyaramaaga", "neelamaaga",
              "sivappaaga", "amaidhiyaaga", "suththamaaga", "pachchaiyaaga", "pazhaiyadhaaga"]
DATIVES = ["pallikku", "koyilukku", "sandhaikku", "oorukku", "nagaraththirku", "veettirku",
           "maruthuvamanaikku", "kadaikku", "vayalukku", "nilaiyaththirku"]
MOTION_STEMS = ["sendr", "vandh", "thirumbin", "nadandhu sendr", "vegamaaga odin"]
THINGS = ["puththagam", "panam", "saavi", "kadidham", "pazham", "kudai", "paathiram", "vilakku", "madikkanini"]
PLACES_ON = ["meesaiyil", "pettiyil", "araiyil", "vandiyil", "paiyil", "veettil", "kadaiyil"]
PLURALS = ["marangal", "paravaigal", "meengal", "veedugal", "malargal", "kadaigal", "maadugal", "kovilgal"]
QUANT = ["pala", "niraiya", "sila", "aayiram", "irandu"]
FEELINGS = ["magizhcci", "kovam", "bayam", "varuththam", "aachchariyam", "nimmadhi"]
FEEL_DATIVES = ["avanukku", "avalukku", "avarukku", "makkalukku", "enakku", "mannanukku", "kuzhandhaikku"]
FEEL_VERBS = ["erpattadhu", "undaanadhu", "vandhadhu", "adhigamaanadhu"]
TIMES = ["netru", "indru", "naalai", "kaalaiyil", "maalaiyil", "iravil", "pala aandugalukku munbu"]


def finite(stem, ending):
    return stem + ending


def templates():
    people = [(s, e) for e, subs in SUBJECTS.items() for s in subs]
    yield [f"{s} {loc} {finite(v, e)}" for (s, e), loc, v in itertools.product(people, LOCATIVES, STAY_STEMS)]
    yield [f"{t} {s} {o} {finite(v, e)}" for t, (s, e), o, v in itertools.product(TIMES, people, OBJECTS, OBJ_STEMS)]
    yield [f"{n} {a} ulladhu" for n, a in itertools.product(NOUNS, ADVERBIALS)]
    yield [f"indha {n} mikavum {a} ulladhu" for n, a in itertools.product(NOUNS, ADVERBIALS)]
    yield [f"{s} {d} {finite(v, e)}" for (s, e), d, v in itertools.product(people, DATIVES, MOTION_STEMS)]
    yield [f"{t} {p} illai" for t, p in itertools.product(THINGS, PLACES_ON)]
    yield [f"{loc} {q} {pl} ulladhu" for loc, q, pl in itertools.product(LOCATIVES, QUANT, PLURALS)]
    yield [f"{d} {f} {v}" for d, f, v in itertools.product(FEEL_DATIVES, FEELINGS, FEEL_VERBS)]


def main():
    rng = random.Random(SEED)
    out = []
    for pool in templates():
        pool = sorted(set(pool))
        rng.shuffle(pool)
        out.extend(pool[:PER_TEMPLATE])
    path = Path(__file__).resolve().parents[1] / "src" / "tamreg" / "data" / "literary_seed.txt"
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    print(f"wrote {len(out)} sentences to {path}")


if __name__ == "__main__":
    main()
