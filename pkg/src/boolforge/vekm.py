"""Natural maps (variable-entered Karnaugh maps) of a function g(Z) = 1.

Cell ``A`` of a map over unknowns ``(Z_1, ..., Z_n)`` holds the discriminant
``g(A)``; ``A`` is an int with unknown 0 as the most significant bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import NamedTuple, Sequence

from . import minimize
from .algebra import Elem, Signature, collapse, elem_from_json, to_sop_text
from .errors import BoolforgeError
from .expr import Expr, evaluate, free_vars, generator_env


@dataclass(frozen=True)
class NaturalMap:
    sig: Signature
    unknowns: tuple[str, ...]
    cells: tuple[Elem, ...]

    def __post_init__(self):
        object.__setattr__(self, "unknowns", tuple(self.unknowns))
        object.__setattr__(self, "cells", tuple(self.cells))
        if len(set(self.unknowns)) != len(self.unknowns):
            raise BoolforgeError(f"duplicate unknowns {self.unknowns}")
        if len(self.cells) != 1 << len(self.unknowns):
            raise BoolforgeError(
                f"{len(self.unknowns)} unknowns need {1 << len(self.unknowns)} cells, "
                f"got {len(self.cells)}")
        for c in self.cells:
            if c.sig != self.sig:
                raise BoolforgeError("every cell must share the map signature")

    @classmethod
    def constant(cls, sig: Signature, unknowns: Sequence[str], value: Elem) -> NaturalMap:
        return cls(sig, tuple(unknowns), (value,) * (1 << len(unknowns)))

    @property
    def n(self) -> int:
        return len(self.unknowns)

    def bit_of(self, name: str) -> int:
        """Bit position of ``name`` inside a cell index."""
        try:
            return self.n - 1 - self.unknowns.index(name)
        except ValueError:
            raise BoolforgeError(f"{name!r} is not an unknown of this map") from None

    def vector(self, a: int) -> tuple[int, ...]:
        return tuple(a >> (self.n - 1 - u) & 1 for u in range(self.n))

    def index_of(self, vector: Sequence[int]) -> int:
        a = 0
        for bit in vector:
            a = a << 1 | int(bit)
        return a

    def restrict(self, name: str, value: int) -> NaturalMap:
        """The map with ``name`` fixed to the constant 0 or 1."""
        b = self.bit_of(name)
        rest = tuple(u for u in self.unknowns if u != name)
        cells = []
        for a in range(1 << (self.n - 1)):
            high = a >> b << (b + 1)
            low = a & ((1 << b) - 1)
            cells.append(self.cells[high | value << b | low])
        return NaturalMap(self.sig, rest, tuple(cells))

    def eliminate(self, name: str, how: str = "or") -> NaturalMap:
        """Disjunctive (``or``) or conjunctive (``and``) elimination of one unknown."""
        lo, hi = self.restrict(name, 0), self.restrict(name, 1)
        if how == "or":
            cells = (x | y for x, y in zip(lo.cells, hi.cells))
        elif how == "and":
            cells = (x & y for x, y in zip(lo.cells, hi.cells))
        else:
            raise ValueError(how)
        return NaturalMap(self.sig, lo.unknowns, tuple(cells))

    def project(self, sig: Signature) -> NaturalMap:
        return NaturalMap(sig, self.unknowns, tuple(c.project(sig) for c in self.cells))

    def __invert__(self):
        return NaturalMap(self.sig, self.unknowns, tuple(~c for c in self.cells))

    def _zip(self, other, op):
        if other.sig != self.sig or other.unknowns != self.unknowns:
            raise BoolforgeError("maps differ in signature or unknowns")
        return NaturalMap(self.sig, self.unknowns, tuple(op(x, y) for x, y in zip(self.cells, other.cells)))

    def __and__(self, other):
        return self._zip(other, lambda x, y: x & y)

    def __or__(self, other):
        return self._zip(other, lambda x, y: x | y)

    def __le__(self, other):
        if other.sig != self.sig or other.unknowns != self.unknowns:
            raise BoolforgeError("maps differ in signature or unknowns")
        return all(x <= y for x, y in zip(self.cells, other.cells))

    def minterm(self, values: Sequence[Elem], a: int) -> Elem:
        """Z^A for element-valued Z."""
        term = self.sig.one()
        for u, z in enumerate(values):
            term &= z if a >> (self.n - 1 - u) & 1 else ~z
        return term

    def evaluate(self, values: Sequence[Elem]) -> Elem:
        """g(Z) through the minterm canonical form: OR over A of g(A) & Z^A."""
        if len(values) != self.n:
            raise BoolforgeError(f"expected {self.n} values, got {len(values)}")
        out = self.sig.zero()
        for a, cell in enumerate(self.cells):
            if cell:
                out |= cell & self.minterm(values, a)
        return out

    def to_json(self) -> dict:
        return {
            "generators": list(self.sig.generators),
            "unknowns": list(self.unknowns),
            "nullified": sorted(self.sig.nullified),
            "cells": [list(c.atoms) for c in self.cells],
        }

    @classmethod
    def from_json(cls, data: dict) -> NaturalMap:
        sig = Signature(tuple(data["generators"]), frozenset(data.get("nullified", ())))
        cells = []
        for c in data["cells"]:
            if isinstance(c, dict):
                cells.append(elem_from_json(c).project(sig))
            else:
                cells.append(sig.from_atoms(c))
        return cls(sig, tuple(data["unknowns"]), tuple(cells))


def build_map(g: Expr, sig: Signature, unknowns: Sequence[str]) -> NaturalMap:
    unknowns = tuple(unknowns)
    stray = free_vars(g) - set(sig.generators) - set(unknowns)
    if stray:
        raise BoolforgeError(f"unbound variables: {', '.join(sorted(stray))}")
    env = generator_env(sig)
    zero, one = sig.zero(), sig.one()
    n = len(unknowns)
    cells = []
    for a in range(1 << n):
        for u, name in enumerate(unknowns):
            env[name] = one if a >> (n - 1 - u) & 1 else zero
        cells.append(evaluate(g, env, sig))
    return NaturalMap(sig, unknowns, tuple(cells))


def atom_counts(m: NaturalMap) -> tuple[int, ...]:
    """n_i: the number of cells whose discriminant contains atom ``i``."""
    counts = [0] * m.sig.size
    for cell in m.cells:
        b = cell.bits
        while b:
            low = b & -b
            counts[low.bit_length() - 1] += 1
            b ^= low
    return tuple(counts)


@dataclass(frozen=True)
class Consistency:
    kill: frozenset[int]
    condition: Elem  # must equal 0
    absolute: bool  # every live atom is dead

    @property
    def unconditional(self) -> bool:
        return not self.kill

    def collapsed(self) -> Signature:
        return collapse(self.condition.sig, self.kill)


def consistency(m: NaturalMap) -> Consistency:
    counts = atom_counts(m)
    kill = frozenset(i for i in m.sig.live_atoms if counts[i] == 0)
    condition = m.sig.from_atoms(kill)
    return Consistency(kill, condition, absolute=len(kill) == m.sig.live_count)


class SolutionCount(NamedTuple):
    unconditional: int
    conditional: int


def count_solutions(m: NaturalMap) -> SolutionCount:
    counts = atom_counts(m)
    live = [counts[i] for i in m.sig.live_atoms]
    unconditional = prod(live)
    asserted = [c for c in live if c]
    # an algebra with every atom dead admits no solution at all
    conditional = prod(asserted) if asserted else 0
    return SolutionCount(unconditional, conditional)


def collapse_map(m: NaturalMap) -> NaturalMap:
    """Project ``m`` onto the sub-algebra left after imposing its consistency condition."""
    return m.project(consistency(m).collapsed())


def gray(bits: int) -> list[int]:
    return [i ^ (i >> 1) for i in range(1 << bits)]


def _cell_label(cell: Elem, style: str) -> str:
    if style == "atoms":
        if not cell:
            return "0"
        # compact minterm names, e.g. ~ab~c
        return ", ".join(cell.sig.atom_text(i).replace(" & ", "") for i in cell.atoms)
    if style == "sop":
        return to_sop_text(cell)
    raise ValueError(f"unknown style {style!r}")


def _code(value: int, width: int) -> str:
    return format(value, f"0{width}b") if width else "-"


def render_text(m: NaturalMap, style: str = "sop") -> str:
    """Karnaugh-style grid, Gray-coded on both axes, each cell in brackets.

    Row variables are the first ``n // 2`` unknowns, column variables the rest.
    Without unknowns the single cell is printed alone; above six unknowns the
    cells are listed one per line in binary order.
    """
    n = m.n
    if n == 0:
        return f"[{_cell_label(m.cells[0], style)}]\n"
    if n > 6:
        lines = [" ".join(m.unknowns)]
        for a, cell in enumerate(m.cells):
            lines.append(f"{_code(a, n)}: [{_cell_label(cell, style)}]")
        return "\n".join(lines) + "\n"
    rbits = n // 2
    cbits = n - rbits
    rows, cols = gray(rbits), gray(cbits)
    corner = "".join(m.unknowns[:rbits]) + "\\" + "".join(m.unknowns[rbits:])
    header = [corner] + [_code(c, cbits) for c in cols]
    table = [header]
    for r in rows:
        line = [_code(r, rbits)]
        for c in cols:
            line.append(f"[{_cell_label(m.cells[r << cbits | c], style)}]")
        table.append(line)
    widths = [max(len(row[j]) for row in table) for j in range(len(header))]
    out = ["  ".join(text.ljust(w) for text, w in zip(row, widths)).rstrip() for row in table]
    return "\n".join(out) + "\n"


def map_function_text(m: NaturalMap, dc: NaturalMap | None = None) -> str:
    """Minimized SOP of the map as a function of generators and unknowns."""
    names = m.sig.generators + m.unknowns
    on, dcs = [], []
    n = m.n
    for a, cell in enumerate(m.cells):
        for i in cell.atoms:
            on.append(i << n | a)
        for i in m.sig.nullified:
            dcs.append(i << n | a)
        if dc is not None:
            for i in dc.cells[a].atoms:
                dcs.append(i << n | a)
    return minimize.sop_text(names, on, dcs)
