"""Translating formulas with different nuclei.

Run: python3 demos/01_translations.py
"""
from jtrans import builtins, gg_translate, kuroda_inner, kuroda_translate, parse, pretty
from jtrans.nucleus import parse_nucleus
from jtrans.translate import translate_sequent
from jtrans.formula import parse_sequent

# A nucleus is a template with a HOLE; applying it plugs a formula in.
dneg = parse_nucleus("dneg")
print("dneg applied to P:", pretty(dneg(parse("P"))))

# The two translations place j differently.
f = parse("forall x. (P(x) -> exists y. R(y))")
print("\nformula       :", pretty(f))
print("gg            :", pretty(gg_translate(f, dneg)))
print("kuroda inner  :", pretty(kuroda_inner(f, dneg)))
print("kuroda        :", pretty(kuroda_translate(f, dneg)))

# Any of the example nuclei works the same way; here with parameter Q.
g = parse("P | ~P")
print(f"\n{'nucleus':12} {'gg':40} kuroda")
for j in builtins("Q"):
    print(f"{j.name:12} {pretty(gg_translate(g, j)):40} {pretty(kuroda_translate(g, j))}")

# Sequents: Kuroda gives the hypotheses the inner map only.
s = parse_sequent("P -> Q; P |- Q")
print("\nsequent:", s)
print("gg     :", translate_sequent(s, "gg", dneg))
print("kuroda :", translate_sequent(s, "kuroda", dneg))
