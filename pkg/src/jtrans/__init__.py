"""Nucleus-parametric negative translations with propositional provers and
finite Kripke-model checks."""
from .formula import (
    BOTTOM, And, Atom, Bottom, Box, Const, Exists, Forall, Formula, Func, Iff,
    Implies, Not, Or, ParseError, Sequent, Var, alpha_eq, free_vars, normalize,
    parse, parse_sequent, pretty, substitute,
)
from .kripke import (
    ForcingKind, KripkeModel, ModelError, eval_forces, eval_internal_j,
    eval_strong, load_model, loads_model,
)
from .prover import (
    BudgetExceeded, GenConfig, Logic, OutOfFragment, Verdict, check_equiv,
    decide, random_derivable_sequent,
)
from .nucleus import (
    HOLE, INTERNAL_J, AxiomReport, Nucleus, apply, builtin, builtins,
    check_axioms, check_lemma_properties, commutes_with_implication,
    parse_nucleus,
)
from .translate import (
    PreconditionError, Scheme, classic_kuroda, gg_translate, kuroda_inner,
    kuroda_translate, translate, translate_sequent,
)

__version__ = "0.1.0"
