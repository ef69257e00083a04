"""Subsumptive general solutions from successive disjunctive eliminants.

With elimination order ``Z_1, ..., Z_n`` the chain is ``g_1 = g`` and
``g_{k+1} = g_k(Z_k=0) | g_k(Z_k=1)``; ``g_{n+1}`` is a single element that
must equal 1.  Solving in reverse order bounds each unknown by::

    s_k = ~g_k(0) & g_k(1)  with don't-care ~g_k(0)
    t_k = g_k(1)            with don't-care ~g_k(0)

both functions of the not-yet-eliminated unknowns ``Z_{k+1}, ..., Z_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import minimize as qm
from .algebra import Elem, Signature, collapse, to_sop_text
from .errors import BoolforgeError, InconsistentEquation
from .expr import (ONE, And, Expr, Not, Or, Var, conj, disj, evaluate, generator_env, parse_expr,
                   substitute)
from .parametric import ParamSolution, _fresh_names, _pool_candidates
from .vekm import NaturalMap


@dataclass(frozen=True)
class EliminantChain:
    order: tuple[str, ...]  # Z_1 first
    maps: tuple[NaturalMap, ...]  # g_1 .. g_{n+1}

    @property
    def final(self) -> Elem:
        return self.maps[-1].cells[0]

    @property
    def sig(self) -> Signature:
        return self.maps[0].sig


def eliminants(m: NaturalMap, order: Sequence[str] | None = None) -> EliminantChain:
    """Disjunctive eliminant chain; default order eliminates the last-declared unknown first."""
    order = tuple(reversed(m.unknowns)) if order is None else tuple(order)
    if sorted(order) != sorted(m.unknowns):
        raise BoolforgeError(f"elimination order {order} is not a permutation of {m.unknowns}")
    maps = [m]
    for name in order:
        maps.append(maps[-1].eliminate(name, "or"))
    return EliminantChain(order, tuple(maps))


@dataclass(frozen=True)
class ConsistencyStatus:
    kind: str  # 'consistent', 'conditional', 'inconsistent'
    condition: Elem  # must equal 0; zero when consistent

    def __bool__(self):
        return self.kind != "inconsistent"


def check_consistency(chain: EliminantChain, sig: Signature | None = None) -> ConsistencyStatus:
    final = chain.final if sig is None else chain.final.project(sig)
    if final.is_one():
        return ConsistencyStatus("consistent", final.sig.zero())
    if final.is_zero():
        return ConsistencyStatus("inconsistent", ~final)
    return ConsistencyStatus("conditional", ~final)


@dataclass(frozen=True)
class IncompleteFn:
    """on | (arbitrary & dc), cell-wise over the same unknowns."""
    on: NaturalMap
    dc: NaturalMap

    @property
    def lower(self) -> NaturalMap:
        return self.on

    @property
    def upper(self) -> NaturalMap:
        return self.on | self.dc

    def admits(self, f: NaturalMap) -> bool:
        return self.on <= f and f <= self.upper

    def text(self) -> str:
        return minimize(self)


@dataclass(frozen=True)
class UnknownInterval:
    name: str
    s: IncompleteFn
    t: IncompleteFn
    lower: NaturalMap  # ~g_k(0), unmodified endpoint
    upper: NaturalMap  # g_k(1), unmodified endpoint

    @property
    def depends_on(self) -> tuple[str, ...]:
        return self.s.on.unknowns


@dataclass(frozen=True)
class IntervalSolution:
    sig: Signature
    unknowns: tuple[str, ...]  # declared order
    bounds: tuple[UnknownInterval, ...]  # Z_n first
    consistency: Elem  # must equal 1

    def interval(self, name: str) -> UnknownInterval:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def to_text(self) -> str:
        lines = [f"{b.s.text()} <= {b.name} <= {b.t.text()}" for b in self.bounds]
        lines.append(f"consistency: {to_sop_text(self.consistency)} = 1")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        def fn(f: IncompleteFn):
            return {"on": f.on.to_json()["cells"], "dc": f.dc.to_json()["cells"], "text": f.text()}

        return {
            "schema": 1,
            "kind": "subsumptive",
            "generators": list(self.sig.generators),
            "nullified": sorted(self.sig.nullified),
            "consistency": list(self.consistency.atoms),
            "consistency_text": to_sop_text(self.consistency),
            "bounds": [{"unknown": b.name, "depends_on": list(b.depends_on),
                        "s": fn(b.s), "t": fn(b.t)} for b in self.bounds],
        }


def intervals(chain: EliminantChain) -> IntervalSolution:
    status = check_consistency(chain)
    if status.kind == "inconsistent":
        raise InconsistentEquation("the final eliminant is 0")
    sig = chain.sig
    consistency_elem = chain.final
    if status.kind == "conditional":
        sig = collapse(sig, status.condition.atoms)
    bounds = []
    for name, gk in zip(chain.order, chain.maps):
        gk = gk.project(sig)
        g0, g1 = gk.restrict(name, 0), gk.restrict(name, 1)
        not_g0 = ~g0
        s = IncompleteFn(not_g0 & g1, not_g0)
        t = IncompleteFn(g1, not_g0)
        bounds.append(UnknownInterval(name, s, t, not_g0, g1))
    return IntervalSolution(sig, chain.maps[0].unknowns, tuple(reversed(bounds)), consistency_elem)


def _map_expr(m: NaturalMap) -> Expr:
    """SOP expression of a map over generators and its unknowns (cell by cell)."""
    terms = []
    for a, cell in enumerate(m.cells):
        if not cell:
            continue
        lits = [Var(u) if a >> (m.n - 1 - j) & 1 else Not(Var(u)) for j, u in enumerate(m.unknowns)]
        body = parse_expr(to_sop_text(cell))
        terms.append(conj(([] if body == ONE else [body]) + lits) if lits else body)
    return disj(terms)


def to_parametric(iv: IntervalSolution, params: Sequence[str] | None = None) -> ParamSolution:
    """Z_k = s_k | (p_k & t_k), don't-cares taken as 0 in s_k and as 1 in t_k."""
    sig = iv.sig
    names = [b.name for b in iv.bounds]
    if params is None:
        params = _fresh_names(_pool_candidates(), len(names), set(sig.generators) | set(names))
    solved: dict[str, Expr] = {}
    for b, p in zip(iv.bounds, params):
        s_expr = substitute(_map_expr(b.s.on), solved)
        t_expr = substitute(_map_expr(b.t.upper), solved)
        solved[b.name] = Or(s_expr, And(Var(p), t_expr))
    exprs = tuple(_simplify(solved[u], sig, tuple(params)) for u in iv.unknowns)
    return ParamSolution("shared", sig, iv.unknowns, tuple(params), exprs)


def _simplify(e: Expr, sig: Signature, params: tuple[str, ...]) -> Expr:
    names = sig.generators + params
    if len(names) > qm.MAX_VARS:
        return e
    ext = Signature(names)
    value = evaluate(e, generator_env(ext), ext)
    np = len(params)
    dc = [i << np | q for i in sig.nullified for q in range(1 << np)]
    return parse_expr(qm.sop_text(names, value.atoms, dc))


def minimize(f) -> str:
    """Minimized SOP text of an Elem, a NaturalMap, or an IncompleteFn.

    Variables are the generators followed by the map unknowns; nullified atoms
    and the don't-care part count as don't-cares.
    """
    if isinstance(f, Elem):
        return to_sop_text(f)
    if isinstance(f, NaturalMap):
        on, dc = f, None
    elif isinstance(f, IncompleteFn):
        on, dc = f.on, f.dc
    else:
        raise TypeError(f"cannot minimize {type(f).__name__}")
    sig = on.sig
    n = on.n
    names = sig.generators + on.unknowns
    ons, dcs = [], []
    for a in range(len(on.cells)):
        ons.extend(i << n | a for i in on.cells[a].atoms)
        dcs.extend(i << n | a for i in sig.nullified)
        if dc is not None:
            dcs.extend(i << n | a for i in dc.cells[a].atoms)
    return qm.sop_text(names, ons, dcs)

