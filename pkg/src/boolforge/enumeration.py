"""Listing, checking and picking particular solutions.

A particular solution is built atom by atom: every asserted atom picks one of
its admissible cells (its contribution), and unknown ``Z_u`` collects the
atoms whose chosen cell has ``A_u = 1``.  The choices are independent, so
the solution set is the Cartesian product of the contribution rows.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .algebra import Elem, Signature, to_sop_text
from .errors import CapExceeded
from .expr import Expr, fold
from .parametric import ContributionTable
from .vekm import NaturalMap, collapse_map

ORACLE_CAP = 24
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ParticularSolution:
    unknowns: tuple[str, ...]
    values: tuple[Elem, ...]

    def __getitem__(self, name: str) -> Elem:
        return self.values[self.unknowns.index(name)]

    def total_atoms(self) -> int:
        return sum(v.count() for v in self.values)

    def to_text(self) -> str:
        return ", ".join(f"{u} = {to_sop_text(v)}" for u, v in zip(self.unknowns, self.values))

    def to_json(self) -> dict:
        return {"kind": "particular", "unknowns": list(self.unknowns),
                "values": {u: {"text": to_sop_text(v), "atoms": list(v.atoms)}
                           for u, v in zip(self.unknowns, self.values)}}


def assemble(table: ContributionTable, choice: Sequence[tuple[int, ...]]) -> ParticularSolution:
    """Solution from one contribution vector per table row (rows in table order)."""
    n = len(table.unknowns)
    bits = [0] * n
    for (atom, _), vec in zip(table.rows, choice):
        for u in range(n):
            if vec[u]:
                bits[u] |= 1 << atom
    return ParticularSolution(table.unknowns, tuple(Elem(table.sig, b) for b in bits))


def enumerate_all(table: ContributionTable, limit: int | None = None) -> Iterator[ParticularSolution]:
    """Every particular solution, lexicographic in (atom index, contribution index)."""
    if not table.rows:
        return  # absolutely inconsistent: nothing to enumerate
    product = itertools.product(*(row for _, row in table.rows))
    if limit is not None:
        product = itertools.islice(product, limit)
    for choice in product:
        yield assemble(table, choice)


def verify_solution(m: NaturalMap, s: ParticularSolution) -> bool:
    target = collapse_map(m)
    values = [v.project(target.sig) for v in s.values]
    return target.evaluate(values).is_one()


def brute_force(m: NaturalMap, cap: int = ORACLE_CAP) -> set[ParticularSolution]:
    """Exact solution set by trying every element vector over the collapsed algebra."""
    target = collapse_map(m)
    sig = target.sig
    live = sig.live_atoms
    kp, n = len(live), target.n
    if kp * n > cap:
        raise CapExceeded("brute-force oracle (live atoms x unknowns)", kp * n, cap)
    if kp == 0:
        return set()
    # candidate c encodes unknown u in bits [u*kp, (u+1)*kp) of c, over live atoms
    local_mask = np.uint64((1 << kp) - 1)
    cells = []
    for a, cell in enumerate(target.cells):
        local = sum(1 << j for j, i in enumerate(live) if i in cell)
        if local:
            cells.append((a, np.uint64(local)))
    out = set()
    total = 1 << (kp * n)
    for start in range(0, total, _CHUNK):
        c = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
        zs = [(c >> np.uint64(u * kp)) & local_mask for u in range(n)]
        ok = np.zeros(len(c), dtype=np.uint64)
        for a, local in cells:
            term = np.full(len(c), local)
            for u in range(n):
                term &= zs[u] if a >> (n - 1 - u) & 1 else ~zs[u] & local_mask
            ok |= term
        for h in c[ok == local_mask].tolist():
            vals = []
            for u in range(n):
                word = h >> (u * kp) & ((1 << kp) - 1)
                bits = 0
                for j, i in enumerate(live):
                    if word >> j & 1:
                        bits |= 1 << i
                vals.append(Elem(sig, bits))
            out.add(ParticularSolution(target.unknowns, tuple(vals)))
    return out


def _atom_ok(predicate: tuple[Expr, Expr], sig: Signature, unknowns, atom: int, vec) -> bool:
    env = dict(sig.atom_bits(atom))
    env.update(zip(unknowns, vec))
    lhs, rhs = predicate
    return fold(lhs, env).value == fold(rhs, env).value


def pick(table: ContributionTable, how, limit: int | None = None) -> ParticularSolution | None:
    """First solution in enumeration order with a desired feature.

    ``how`` is ``"min-atoms"``, ``("independent-of", generator)``, an equation
    ``(lhs, rhs)`` of expressions over generators and unknowns, or a callable
    predicate on a :class:`ParticularSolution` (searched by streaming).
    """
    sig = table.sig
    if how == "min-atoms":
        choice = [min(row, key=sum) for _, row in table.rows]
        return assemble(table, choice)
    if isinstance(how, tuple) and len(how) == 2 and how[0] == "independent-of":
        return _pick_independent(table, how[1])
    if isinstance(how, tuple) and len(how) == 2 and all(isinstance(x, Expr) for x in how):
        # an equation holds iff it holds at every live atom, so choices stay per-atom
        choice = []
        for atom, row in table.rows:
            ok = [vec for vec in row if _atom_ok(how, sig, table.unknowns, atom, vec)]
            if not ok:
                return None
            choice.append(ok[0])
        return assemble(table, choice)
    if callable(how):
        for s in enumerate_all(table, limit):
            if how(s):
                return s
        return None
    raise ValueError(f"unsupported pick criterion {how!r}")


def _pick_independent(table: ContributionTable, generator: str) -> ParticularSolution | None:
    sig = table.sig
    bit = 1 << (sig.k - 1 - sig.index(generator))
    rows = table.as_dict()
    chosen: dict[int, tuple[int, ...]] = {}
    for atom, row in table.rows:
        if atom in chosen:
            continue
        partner = atom ^ bit
        if partner in rows:
            common = [vec for vec in row if vec in set(rows[partner])]
            if not common:
                return None
            chosen[atom] = chosen[partner] = common[0]
        else:
            chosen[atom] = row[0]
    return assemble(table, [chosen[a] for a, _ in table.rows])


def is_independent_of(x: Elem, generator: str) -> bool:
    """x does not depend on ``generator`` (dead atoms are unconstrained)."""
    sig = x.sig
    bit = 1 << (sig.k - 1 - sig.index(generator))
    for i in sig.live_atoms:
        j = i ^ bit
        if j in sig.nullified:
            continue
        if (i in x) != (j in x):
            return False
    return True
