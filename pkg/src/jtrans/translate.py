"""Nucleus-parametric translations of formulas and sequents.

``gg_translate`` wraps atoms, ``|`` nodes and ``exists`` nodes in ``j``.
``kuroda_inner`` leaves atoms alone and wraps the body of each ``forall``
and the consequent of each ``->``; ``kuroda_translate`` adds one more ``j``
at the root.  ``classic_kuroda`` skips the consequent wrapping, which is
only sound when ``j`` commutes with implication.

``_|_`` is treated as an atom: ``gg(_|_) = j(_|_)`` and ``J(_|_) = _|_``.
Outputs are literal clause-by-clause results, not simplified.
"""
from __future__ import annotations

import enum

from .formula import (
    And, Atom, Bottom, Box, Exists, Forall, Formula, Implies, Or, Sequent, normalize, subformulas,
)
from .nucleus import Nucleus, apply, commutes_with_implication
from .prover import Logic


class Scheme(str, enum.Enum):
    GG = "gg"
    KURODA = "kuroda"
    KURODA_INNER = "kuroda-inner"
    CLASSIC_KURODA = "classic-kuroda"


class PreconditionError(ValueError):
    """classic-kuroda requested for a nucleus that does not commute with
    implication in the chosen logic."""


def _gg(f: Formula, j: Nucleus) -> Formula:
    if isinstance(f, (Atom, Bottom)):
        return apply(j, f)
    if isinstance(f, And):
        return And(_gg(f.left, j), _gg(f.right, j))
    if isinstance(f, Or):
        return apply(j, Or(_gg(f.left, j), _gg(f.right, j)))
    if isinstance(f, Implies):
        return Implies(_gg(f.left, j), _gg(f.right, j))
    if isinstance(f, Exists):
        return apply(j, Exists(f.var, _gg(f.body, j)))
    if isinstance(f, Forall):
        return Forall(f.var, _gg(f.body, j))
    raise ValueError(f"cannot translate {type(f).__name__}")


def _inner(f: Formula, j: Nucleus, classic: bool) -> Formula:
    if isinstance(f, (Atom, Bottom)):
        return f
    if isinstance(f, And):
        return And(_inner(f.left, j, classic), _inner(f.right, j, classic))
    if isinstance(f, Or):
        return Or(_inner(f.left, j, classic), _inner(f.right, j, classic))
    if isinstance(f, Implies):
        concl = _inner(f.right, j, classic)
        return Implies(_inner(f.left, j, classic), concl if classic else apply(j, concl))
    if isinstance(f, Exists):
        return Exists(f.var, _inner(f.body, j, classic))
    if isinstance(f, Forall):
        return Forall(f.var, apply(j, _inner(f.body, j, classic)))
    raise ValueError(f"cannot translate {type(f).__name__}")


def _check_input(f: Formula) -> Formula:
    if any(isinstance(g, Box) for g in subformulas(f)):
        raise ValueError("the modal marker [j] may not occur in a formula being translated")
    return normalize(f)


def gg_translate(f: Formula, j: Nucleus) -> Formula:
    return normalize(_gg(_check_input(f), j))


def kuroda_inner(f: Formula, j: Nucleus) -> Formula:
    return normalize(_inner(_check_input(f), j, classic=False))


def kuroda_translate(f: Formula, j: Nucleus) -> Formula:
    return apply(j, kuroda_inner(f, j))


def classic_kuroda_inner(f: Formula, j: Nucleus) -> Formula:
    return normalize(_inner(_check_input(f), j, classic=True))


def classic_kuroda(f: Formula, j: Nucleus) -> Formula:
    """Kuroda with undecorated implications, then an outer ``j``.  The
    caller is responsible for the commutation precondition; see
    :func:`require_commutation`."""
    return apply(j, classic_kuroda_inner(f, j))


def require_commutation(j: Nucleus, logic: Logic | str) -> None:
    if not commutes_with_implication(j, logic):
        raise PreconditionError(
            f"nucleus {j.name} does not commute with implication over {Logic(logic).value.upper()}; "
            "classic-kuroda is not available")


def translate(f: Formula, scheme: Scheme | str, j: Nucleus, logic: Logic | str | None = None) -> Formula:
    """Dispatch on ``scheme``.  For classic-kuroda a ``logic`` must be given
    and the commutation check must pass."""
    scheme = Scheme(scheme)
    if scheme is Scheme.GG:
        return gg_translate(f, j)
    if scheme is Scheme.KURODA:
        return kuroda_translate(f, j)
    if scheme is Scheme.KURODA_INNER:
        return kuroda_inner(f, j)
    if logic is None:
        raise PreconditionError("classic-kuroda needs a logic to check commutation against")
    require_commutation(j, logic)
    return classic_kuroda(f, j)


def translate_sequent(s: Sequent, scheme: Scheme | str, j: Nucleus) -> Sequent:
    """GG maps every formula by ``gg_translate``.  The Kuroda schemes give the
    hypotheses the inner map only and the conclusion the full translation."""
    scheme = Scheme(scheme)
    if scheme is Scheme.GG:
        return Sequent([gg_translate(h, j) for h in s.hypotheses], gg_translate(s.conclusion, j))
    if scheme is Scheme.CLASSIC_KURODA:
        return Sequent([classic_kuroda_inner(h, j) for h in s.hypotheses], classic_kuroda(s.conclusion, j))
    if scheme is Scheme.KURODA_INNER:
        return Sequent([kuroda_inner(h, j) for h in s.hypotheses], kuroda_inner(s.conclusion, j))
    return Sequent([kuroda_inner(h, j) for h in s.hypotheses], kuroda_translate(s.conclusion, j))
