"""Forcing in a two-world model: plain, internal j, strong and Cohen.

Run: python3 demos/03_forcing.py
"""
from pathlib import Path

from jtrans import parse
from jtrans.kripke import Evaluator, ForcingKind, check_section5, load_model, random_model, random_sentence
import random

m = load_model(Path(__file__).with_name("data") / "chain2.km")
ev = Evaluator(m)
print("worlds:", m.worlds, " q <= p, P holds only at q")

rows = ["P", "~P", "~~P", "P | ~P", "(P -> P) -> P"]
print(f"\n{'formula':16} {'|-':6} {'[j]':6} {'|-s':6} {'|-c':6}")
for text in rows:
    f = parse(text)
    cells = [ev.forces("p", f), ev.internal_j("p", f),
             ev.strong("p", f, ForcingKind.STRONG), ev.strong("p", f, ForcingKind.COHEN)]
    print(f"{text:16} " + " ".join(f"{str(c):6}" for c in cells))

# Cohen forcing differs from strong forcing pointwise on (P -> P) -> P, yet
# both are dense below p.
f = parse("(P -> P) -> P")
print("\ndense-below Cohen at p:", ev.dense("p", lambda r: ev.strong(r, f, ForcingKind.COHEN)))

# The five identities on random models.
rng = random.Random(1)
sig = {"P": 0, "Q": 0, "R": 1}
for k in range(3):
    mm = random_model(rng, 5, 2, sig)
    rep = check_section5(mm, [random_sentence(rng, sig, 4) for _ in range(20)])
    print(f"\nrandom model {k}: {len(mm.worlds)} worlds, domain {len(mm.domain)}")
    print(rep)
