"""Deciding sequents in minimal, intuitionistic and classical logic.

Run: python3 demos/02_provers.py
"""
from jtrans import Iff, Sequent, decide, gg_translate, kuroda_translate, parse, parse_sequent
from jtrans.kripke import dumps_model, refuting_world
from jtrans.nucleus import commutes_with_implication, dneg, or_a, implication_commutation

for text in ["|- P | ~P", "|- ~~(P | ~P)", "|- _|_ -> P", "|- ((P -> Q) -> P) -> P"]:
    s = parse_sequent(text)
    row = {lg: decide(lg, s, countermodel=False).derivable for lg in ("mqc", "iqc", "cqc")}
    print(f"{text:28}", "  ".join(f"{lg}={'yes' if ok else 'no ':3}" for lg, ok in row.items()))

# A failed intuitionistic search comes with a Kripke countermodel.
s = parse_sequent("|- P | ~P")
v = decide("iqc", s)
print("\ncountermodel for", s)
print(dumps_model(v.countermodel), end="")
print("refuted at world", refuting_world(v.countermodel, s))

# Minimal-logic countermodels may force falsum at some worlds.
v = decide("mqc", parse_sequent("|- _|_ -> P"))
print("\nMQC countermodel for ex falso:")
print(dumps_model(v.countermodel), end="")

# Proof traces.
print("\nproof of P & Q |- Q & P:")
for line in decide("iqc", parse_sequent("P & Q |- Q & P")).witness:
    print("  ", line)

# Double negation commutes with implication intuitionistically, not minimally.
print("\ndneg commutes with -> over IQC:", commutes_with_implication(dneg(), "iqc"))
print("dneg commutes with -> over MQC:", commutes_with_implication(dneg(), "mqc"))
print("MQC witness:", implication_commutation(dneg(), "mqc").sequent)

# Both translations agree up to provable equivalence.
f = parse("(P -> Q | R) -> ~S")
for j in (dneg(), or_a("A")):
    same = decide("mqc", Sequent((), Iff(gg_translate(f, j), kuroda_translate(f, j))), countermodel=False)
    print(f"MQC |- gg <-> kuroda for {j.name}: {same.derivable}")
