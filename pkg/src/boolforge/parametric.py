"""Parametric general solutions built from orthonormal tags on the natural map.

Every appearance of an atom across the map cells receives one tag from an
orthonormal set over that atom's parameters.  Collecting tags cell-wise gives
the auxiliary function G(A, p), and unknown ``Z_u`` is the disjunction of
G(A, p) over cells with ``A_u = 1``.

Two parameter schemes are offered:

* ``shared``: one pool of ``ceil(log2(max n_i))`` parameters ranging over the
  (collapsed) algebra, giving compact formulas;
* ``independent``: ``ceil(log2 n_i)`` two-valued parameters owned by each atom,
  so each atom's contribution can be chosen separately.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import minimize
from .algebra import Elem, Signature, max_k
from .errors import BoolforgeError, InconsistentEquation
from .expr import (And, Expr, Or, conj, disj, evaluate, fold, free_vars,
                   from_json as expr_from_json, generator_env, parse_expr, to_json as expr_to_json,
                   to_text)
from .vekm import NaturalMap, atom_counts, consistency, collapse_map


def param_count(n_i: int) -> int:
    """ceil(log2 n_i) for n_i >= 1."""
    return (n_i - 1).bit_length()


@dataclass(frozen=True)
class TagSet:
    l: int
    tags: tuple[frozenset[int], ...]

    def is_orthonormal(self) -> bool:
        seen: set[int] = set()
        for t in self.tags:
            if not t or seen & t:
                return False
            seen |= t
        return seen == set(range(1 << self.l))

    def index_of(self, minterm: int) -> int:
        for j, t in enumerate(self.tags):
            if minterm in t:
                return j
        raise BoolforgeError(f"minterm {minterm} not covered")

    def tag_expr(self, j: int, params: Sequence[str]) -> Expr:
        return sop_expr(params, self.tags[j])


def make_tags(n_i: int) -> TagSet:
    if n_i < 1:
        raise BoolforgeError("an atom with no appearances cannot be tagged")
    l = param_count(n_i)
    tags = [frozenset({j}) for j in range(n_i - 1)]
    tags.append(frozenset(range(n_i - 1, 1 << l)))
    return TagSet(l, tuple(tags))


def sop_expr(names: Sequence[str], on, dc=()) -> Expr:
    return parse_expr(minimize.sop_text(tuple(names), on, dc))


@dataclass(frozen=True)
class ContributionTable:
    """Per asserted atom, the cells (as 0/1 vectors, ascending) it may contribute to."""
    sig: Signature
    unknowns: tuple[str, ...]
    rows: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]

    def as_dict(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        return dict(self.rows)

    def row(self, atom: int) -> tuple[tuple[int, ...], ...]:
        return self.as_dict()[atom]

    def size(self) -> int:
        out = 1
        for _, row in self.rows:
            out *= len(row)
        return out

    def to_json(self) -> dict:
        return {
            "generators": list(self.sig.generators),
            "nullified": sorted(self.sig.nullified),
            "unknowns": list(self.unknowns),
            "rows": [{"atom": i, "term": self.sig.atom_text(i), "contributions": [list(v) for v in row]}
                     for i, row in self.rows],
        }


def contribution_table(m: NaturalMap) -> ContributionTable:
    m = collapse_map(m)
    rows = []
    for i in m.sig.live_atoms:
        row = tuple(m.vector(a) for a, cell in enumerate(m.cells) if i in cell)
        rows.append((i, row))
    return ContributionTable(m.sig, m.unknowns, tuple(rows))


@dataclass(frozen=True)
class ParamSolution:
    scheme: str  # 'shared' or 'independent'
    sig: Signature  # collapsed
    unknowns: tuple[str, ...]
    params: tuple[str, ...]
    exprs: tuple[Expr, ...]
    owners: tuple[tuple[str, int], ...] = ()  # independent scheme: param -> atom

    @property
    def binary_params(self) -> bool:
        return self.scheme == "independent"

    def expr(self, unknown: str) -> Expr:
        return self.exprs[self.unknowns.index(unknown)]

    def evaluate(self, assignment: Mapping[str, object]) -> tuple[Elem, ...]:
        """Unknown values for a parameter assignment (Elems, or 0/1 for binary params)."""
        env = generator_env(self.sig)
        for p in self.params:
            v = assignment[p]
            if isinstance(v, Elem):
                env[p] = v.project(self.sig)
            else:
                env[p] = self.sig.one() if v else self.sig.zero()
        return tuple(evaluate(e, env, self.sig) for e in self.exprs)

    def to_text(self) -> str:
        lines = [f"{u} = {to_text(e)}" for u, e in zip(self.unknowns, self.exprs)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "parametric",
            "scheme": self.scheme,
            "generators": list(self.sig.generators),
            "nullified": sorted(self.sig.nullified),
            "unknowns": list(self.unknowns),
            "params": [{"name": p, "atom": dict(self.owners).get(p)} for p in self.params],
            "exprs": {u: to_text(e) for u, e in zip(self.unknowns, self.exprs)},
            "ast": {u: expr_to_json(e) for u, e in zip(self.unknowns, self.exprs)},
        }

    @classmethod
    def from_json(cls, data: dict) -> ParamSolution:
        sig = Signature(tuple(data["generators"]), frozenset(data.get("nullified", ())))
        unknowns = tuple(data["unknowns"])
        # the text form is authoritative so hand-edited files behave as expected
        if "exprs" in data:
            exprs = tuple(parse_expr(data["exprs"][u]) for u in unknowns)
        else:
            exprs = tuple(expr_from_json(data["ast"][u]) for u in unknowns)
        params, owners = [], []
        for p in data.get("params", ()):
            if isinstance(p, str):
                params.append(p)
            else:
                params.append(p["name"])
                if p.get("atom") is not None:
                    owners.append((p["name"], p["atom"]))
        return cls(data.get("scheme", "shared"), sig, unknowns, tuple(params), exprs, tuple(owners))


def _fresh_names(candidates, count: int, taken) -> list[str]:
    out = []
    for name in candidates:
        if len(out) == count:
            break
        if name not in taken:
            out.append(name)
    return out


def _pool_candidates():
    yield from ("u", "v", "w")
    j = 4
    while True:
        yield f"u{j}"
        j += 1


def _indexed_candidates(prefix: str):
    j = 1
    while True:
        yield f"{prefix}{j}"
        j += 1


def _prepare(m: NaturalMap) -> NaturalMap:
    c = consistency(m)
    if c.absolute:
        raise InconsistentEquation("every atom is absent from every cell")
    return collapse_map(m)


def _tag_functions(row_cells: Sequence[int], tags: TagSet, n: int) -> list[set[int]]:
    """For each unknown u, the parameter minterms whose tag selects a cell with A_u = 1."""
    out = []
    for u in range(n):
        sel: set[int] = set()
        for j, a in enumerate(row_cells):
            if a >> (n - 1 - u) & 1:
                sel |= tags.tags[j]
        out.append(sel)
    return out


def _global_exprs(m: NaturalMap, params: Sequence[str], choose) -> list[Expr] | None:
    """Minimize each unknown jointly over generators and parameters when small enough.

    ``choose(i, q)`` gives the cell atom ``i`` contributes to under parameter minterm ``q``.
    """
    sig = m.sig
    e = len(params)
    names = sig.generators + tuple(params)
    if len(names) > minimize.MAX_VARS:
        return None
    ons: list[list[int]] = [[] for _ in range(m.n)]
    dcs = [i << e | q for i in sig.nullified for q in range(1 << e)]
    for i in sig.live_atoms:
        for q in range(1 << e):
            a = choose(i, q)
            for u in range(m.n):
                if a >> (m.n - 1 - u) & 1:
                    ons[u].append(i << e | q)
    return [sop_expr(names, on, dcs) for on in ons]


def _factors(e: Expr) -> list[Expr]:
    if isinstance(e, And):
        return _factors(e.left) + _factors(e.right)
    return [e]


def _meet(a: Expr, b: Expr) -> Expr:
    # flat conjunction so the printer does not parenthesize nested products
    if isinstance(a, Or) or isinstance(b, Or):
        return And(a, b)
    return conj(_factors(a) + _factors(b))


def solve_independent(m: NaturalMap) -> tuple[ParamSolution, ContributionTable]:
    m = _prepare(m)
    sig = m.sig
    counts = atom_counts(m)
    taken = set(sig.generators) | set(m.unknowns)
    total = sum(param_count(counts[i]) for i in sig.live_atoms)
    names = _fresh_names(_indexed_candidates("p"), total, taken)

    table = contribution_table(m)
    terms: list[list[Expr]] = [[] for _ in range(m.n)]
    owners = []
    layout = []  # (atom, param names, tagset, cells)
    offset = 0
    for i, row in table.rows:
        tags = make_tags(len(row))
        own = names[offset:offset + tags.l]
        offset += tags.l
        owners.extend((p, i) for p in own)
        cells = [m.index_of(v) for v in row]
        layout.append((i, own, tags, cells))
        atom = parse_expr(sig.atom_text(i))
        for u, sel in enumerate(_tag_functions(cells, tags, m.n)):
            if not sel:
                continue
            if len(sel) == 1 << tags.l:
                terms[u].append(atom)
            else:
                terms[u].append(_meet(atom, sop_expr(own, sel)))

    exprs = None
    if offset + sig.k <= minimize.MAX_VARS:
        starts = {}
        pos = 0
        for i, own, tags, cells in layout:
            starts[i] = (pos, tags, cells)
            pos += tags.l

        def choose(i, q):
            start, tags, cells = starts[i]
            local = q >> (offset - start - tags.l) & ((1 << tags.l) - 1)
            return cells[tags.index_of(local)]

        exprs = _global_exprs(m, names, choose)
    if exprs is None:
        exprs = [disj(t) for t in terms]
    sol = ParamSolution("independent", sig, m.unknowns, tuple(names), tuple(exprs), tuple(owners))
    return sol, table


def solve_shared(m: NaturalMap) -> ParamSolution:
    m = _prepare(m)
    sig = m.sig
    counts = atom_counts(m)
    e = param_count(max(counts[i] for i in sig.live_atoms))
    taken = set(sig.generators) | set(m.unknowns)
    pool = _fresh_names(_pool_candidates(), e, taken)

    # atoms with identical appearance patterns share one tag set
    groups: dict[tuple[int, ...], list[int]] = {}
    for i in sig.live_atoms:
        cells = tuple(a for a, cell in enumerate(m.cells) if i in cell)
        groups.setdefault(cells, []).append(i)

    terms: list[list[Expr]] = [[] for _ in range(m.n)]
    plan = {}
    for cells, atoms in groups.items():
        tags = make_tags(len(cells))
        params = pool[:tags.l]
        for i in atoms:
            plan[i] = (tags, cells)
        term = sop_expr(sig.generators, atoms, sig.nullified)
        for u, sel in enumerate(_tag_functions(cells, tags, m.n)):
            if not sel:
                continue
            if len(sel) == 1 << tags.l:
                terms[u].append(term)
            else:
                terms[u].append(_meet(term, sop_expr(params, sel)))

    def choose(i, q):
        tags, cells = plan[i]
        return cells[tags.index_of(q >> (e - tags.l))]

    exprs = _global_exprs(m, pool, choose)
    if exprs is None:
        exprs = [disj(t) for t in terms]
    return ParamSolution("shared", sig, m.unknowns, tuple(pool), tuple(exprs))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    exhaustive: bool = True
    counterexample: dict | None = None

    def __bool__(self):
        return self.ok


def _atom_residuals(sol_sig: Signature, exprs: Sequence[Expr], atom: int) -> list[Expr]:
    bits = sol_sig.atom_bits(atom)
    return [fold(e, bits) for e in exprs]


def _check_atom(m: NaturalMap, atom: int, residuals: Sequence[Expr], params: Sequence[str],
                samples: int, rng: random.Random):
    """Returns (reached cell set, failing parameter assignment or None, exhaustive flag)."""
    names = sorted(set().union(*(free_vars(r) for r in residuals)) if residuals else set())
    stray = set(names) - set(params)
    if stray:
        raise BoolforgeError(f"solution mentions unknown names {sorted(stray)}")
    good = {a for a, cell in enumerate(m.cells) if atom in cell}
    if len(names) <= max_k():
        local = Signature(tuple(names))
        env = generator_env(local)
        values = [evaluate(r, env, local) for r in residuals]
        reached = set()
        bad = local.zero()
        n = len(values)
        for a in range(len(m.cells)):
            term = local.one()
            for u, z in enumerate(values):
                term &= z if a >> (n - 1 - u) & 1 else ~z
            if term:
                reached.add(a)
                if a not in good:
                    bad |= term
        if bad:
            q = bad.atoms[0]
            return reached, {p: local.atom_bits(q).get(p, 0) for p in params}, True
        return reached, None, True
    reached = set()
    for _ in range(samples):
        assign = {p: rng.getrandbits(1) for p in names}
        a = 0
        for r in residuals:
            a = a << 1 | fold(r, assign).value
        reached.add(a)
        if a not in good:
            return reached, {p: assign.get(p, 0) for p in params}, False
    return reached, None, False


def _target(m: NaturalMap, sol: ParamSolution) -> NaturalMap:
    target = collapse_map(m)
    if target.unknowns != sol.unknowns:
        raise BoolforgeError(f"solution unknowns {sol.unknowns} differ from map unknowns {m.unknowns}")
    if target.sig.generators != sol.sig.generators:
        raise BoolforgeError("solution and map use different generators")
    return target


def verify(sol: ParamSolution, m: NaturalMap, samples: int = 4096, seed: int = 0) -> Verdict:
    """Check that every parameter assignment yields a solution of g = 1.

    Evaluation is atom-wise, so checking each live atom against every 0/1
    assignment of the parameters it depends on is equivalent to checking all
    element-valued (or all binary) parameter assignments.
    """
    target = _target(m, sol)
    rng = random.Random(seed)
    exhaustive = True
    for i in target.sig.live_atoms:
        residuals = _atom_residuals(target.sig, sol.exprs, i)
        _, bad, full = _check_atom(target, i, residuals, sol.params, samples, rng)
        exhaustive &= full
        if bad is not None:
            values = tuple(int(fold(r, bad).value) for r in residuals)
            return Verdict(False, full, {"atom": i, "term": target.sig.atom_text(i),
                                         "params": bad, "cell": list(values)})
    return Verdict(True, exhaustive)


def reachable_cells(sol: ParamSolution, m: NaturalMap) -> dict[int, set[int]]:
    """Per live atom, the cells its contribution can take as the parameters vary."""
    target = _target(m, sol)
    rng = random.Random(0)
    out = {}
    for i in target.sig.live_atoms:
        residuals = _atom_residuals(target.sig, sol.exprs, i)
        reached, _, _ = _check_atom(target, i, residuals, sol.params, 4096, rng)
        out[i] = reached
    return out


def is_complete(sol: ParamSolution, m: NaturalMap) -> bool:
    """True iff every admissible cell of every atom is reachable."""
    target = _target(m, sol)
    reached = reachable_cells(sol, m)
    return all(reached[i] >= {a for a, c in enumerate(target.cells) if i in c}
               for i in target.sig.live_atoms)

