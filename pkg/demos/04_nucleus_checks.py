"""Which templates are nuclei?

Run: python3 demos/04_nucleus_checks.py
"""
from jtrans.nucleus import check_axioms, check_lemma_properties, parse_nucleus

for spec in ["dneg", "or[A]", "from[A]", "peirce[A]", "template:HOLE & A", "template:~HOLE",
             "template:(HOLE -> A) | HOLE"]:
    j = parse_nucleus(spec)
    for logic in ("mqc", "iqc"):
        rep = check_axioms(j, logic)
        failed = ", ".join(i.name for i in rep.failures()) or "-"
        print(f"{spec:28} {logic}: {'nucleus' if rep.passed else 'not a nucleus':14} failed: {failed}")

print()
print(check_lemma_properties(parse_nucleus("peirce[A]"), "mqc"))
