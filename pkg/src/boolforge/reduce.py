"""Unification of an equation system and suppression of intermediary variables."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Signature
from .errors import BoolforgeError
from .expr import Expr, Problem, conj, disj, Xnor, Xor
from .vekm import NaturalMap, build_map


@dataclass(frozen=True)
class UnifiedEquation:
    h: Expr  # h = 1
    r: Expr  # r = 0, r = ~h


def unify(problem: Problem) -> UnifiedEquation:
    if not problem.equations:
        raise BoolforgeError("cannot unify an empty system")
    h = conj(Xnor(s, t) for s, t in problem.equations)
    r = disj(Xor(s, t) for s, t in problem.equations)
    return UnifiedEquation(h, r)


def _suppress(m: NaturalMap, names: Sequence[str], how: str) -> NaturalMap:
    for name in names:
        if name not in m.unknowns:
            raise BoolforgeError(f"cannot suppress {name!r}: not an unknown of the map")
    for name in names:
        m = m.eliminate(name, how)
    return m


def suppress(h: NaturalMap, suppressed: Sequence[str]) -> NaturalMap:
    """Resultant g = AND over binary A of h(A, Z) for the ``h = 1`` form."""
    return _suppress(h, suppressed, "and")


def suppress_zero_form(r: NaturalMap, suppressed: Sequence[str]) -> NaturalMap:
    """Resultant f = OR over binary A of r(A, Z) for the ``r = 0`` form."""
    return _suppress(r, suppressed, "or")


def problem_map(problem: Problem, sig: Signature | None = None) -> NaturalMap:
    """Natural map of the derived equation g(Z) = 1 over the problem's unknowns."""
    sig = sig or problem.signature()
    unified = unify(problem)
    h = build_map(unified.h, sig, problem.unknowns + problem.suppressed)
    return suppress(h, problem.suppressed)
