"""Elements of a finite free Boolean algebra FB(g1, ..., gk), possibly collapsed.

An element is the set of atoms (minterms of the generators) it contains,
stored as a ``2**k``-bit Python int.  Atom index ``i`` encodes one minterm:
bit ``k-1-j`` of ``i`` is 1 iff generator ``j`` appears uncomplemented, so
generator 0 is the most significant bit.  For generators ``(a, b, c)`` atom 0
is ``~a & ~b & ~c`` and atom 7 is ``a & b & c``.

Collapsing a signature nullifies atoms without renumbering them; elements of
the collapsed algebra simply never contain the dead indices.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import minimize
from .errors import BoolforgeError, CapExceeded, SignatureMismatch

DEFAULT_MAX_K = 20
RESERVED = frozenset({"0", "1"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def max_k() -> int:
    env = os.environ.get("BOOLFORGE_MAX_K")
    if env:
        return int(env)
    return DEFAULT_MAX_K


def _generator_mask(k: int, j: int) -> int:
    # atoms where generator j is 1: blocks of 2**b ones after 2**b zeros
    b = k - 1 - j
    half = 1 << b
    period = half << 1
    unit = ((1 << half) - 1) << half
    reps = (1 << k) // period
    return unit * (((1 << (period * reps)) - 1) // ((1 << period) - 1))


@dataclass(frozen=True)
class Signature:
    generators: tuple[str, ...]
    nullified: frozenset[int] = frozenset()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "nullified", frozenset(self.nullified))
        cap = max_k()
        if len(gens) > cap:
            raise CapExceeded("generator count", len(gens), cap)
        if len(set(gens)) != len(gens):
            raise BoolforgeError(f"duplicate generator names in {gens}")
        for name in gens:
            if name in RESERVED or not _IDENT.match(name):
                raise BoolforgeError(f"invalid generator name {name!r}")
        bad = [i for i in self.nullified if not 0 <= i < self.size]
        if bad:
            raise BoolforgeError(f"nullified atoms out of range: {sorted(bad)}")

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        """Atom universe size K = 2**k (dead atoms included)."""
        return 1 << len(self.generators)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def live_mask(self) -> int:
        dead = 0
        for i in self.nullified:
            dead |= 1 << i
        return self.full_mask & ~dead

    @cached_property
    def live_atoms(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if i not in self.nullified)

    @property
    def live_count(self) -> int:
        return self.size - len(self.nullified)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise BoolforgeError(f"unknown generator {name!r}") from None

    def atom_bits(self, i: int) -> dict[str, int]:
        """Generator values (0/1) for atom ``i``."""
        k = self.k
        return {g: (i >> (k - 1 - j)) & 1 for j, g in enumerate(self.generators)}

    def atom_text(self, i: int) -> str:
        if self.k == 0:
            return "1"
        bits = self.atom_bits(i)
        return " & ".join(g if bits[g] else "~" + g for g in self.generators)

    def zero(self) -> Elem:
        return Elem(self, 0)

    def one(self) -> Elem:
        return Elem(self, self.live_mask)

    def atom(self, i: int) -> Elem:
        self._check_live(i)
        return Elem(self, 1 << i)

    def generator(self, name: str) -> Elem:
        return from_generator(self, name)

    def from_atoms(self, atoms: Iterable[int]) -> Elem:
        bits = 0
        for i in atoms:
            self._check_live(i)
            bits |= 1 << i
        return Elem(self, bits)

    def elements(self):
        """Every element of the (collapsed) algebra, in binary order over live atoms."""
        live = self.live_atoms
        for c in range(1 << len(live)):
            bits = 0
            for j, i in enumerate(live):
                if c >> j & 1:
                    bits |= 1 << i
            yield Elem(self, bits)

    def _check_live(self, i: int):
        if not 0 <= i < self.size:
            raise BoolforgeError(f"atom index {i} out of range [0, {self.size})")
        if i in self.nullified:
            raise BoolforgeError(f"atom {i} is nullified")

    def __str__(self):
        base = f"FB({', '.join(self.generators)})"
        if self.nullified:
            base += f" / {{{', '.join(self.atom_text(i) for i in sorted(self.nullified))}}}"
        return base


@dataclass(frozen=True)
class Elem:
    sig: Signature
    bits: int

    def __post_init__(self):
        if self.bits & ~self.sig.live_mask:
            raise BoolforgeError("element contains atoms outside the live set")

    def _coerce(self, other):
        if not isinstance(other, Elem):
            return NotImplemented
        if other.sig != self.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")
        return other

    def __and__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Elem(self.sig, self.bits & other.bits)

    def __or__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Elem(self.sig, self.bits | other.bits)

    def __xor__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Elem(self.sig, self.bits ^ other.bits)

    def __invert__(self):
        return Elem(self.sig, self.sig.live_mask & ~self.bits)

    def xnor(self, other) -> Elem:
        return ~(self ^ other)

    def __le__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.bits & ~other.bits == 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other.bits & ~self.bits == 0

    def __lt__(self, other):
        return self <= other and self != other

    def __gt__(self, other):
        return self >= other and self != other

    def __bool__(self):
        return self.bits != 0

    def __contains__(self, atom: int):
        return bool(self.bits >> atom & 1)

    @property
    def atoms(self) -> tuple[int, ...]:
        b = self.bits
        return tuple(i for i in range(self.sig.size) if b >> i & 1)

    def count(self) -> int:
        return bin(self.bits).count("1")

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_one(self) -> bool:
        return self.bits == self.sig.live_mask

    def project(self, sig: Signature) -> Elem:
        """Image in another signature over the same generators (dead atoms cleared)."""
        if sig.generators != self.sig.generators:
            raise SignatureMismatch(f"{self.sig} vs {sig}")
        return Elem(sig, self.bits & sig.live_mask)

    def to_hex(self) -> str:
        return format(self.bits, "x")

    def to_json(self) -> dict:
        return {
            "generators": list(self.sig.generators),
            "nullified": sorted(self.sig.nullified),
            "atoms": list(self.atoms),
        }

    def __str__(self):
        return to_sop_text(self)

    def __repr__(self):
        return f"Elem({to_sop_text(self)!r} over {self.sig})"


def _check(x: Elem, y: Elem):
    if x.sig != y.sig:
        raise SignatureMismatch(f"{x.sig} vs {y.sig}")


def and_(x: Elem, y: Elem) -> Elem:
    _check(x, y)
    return x & y


def or_(x: Elem, y: Elem) -> Elem:
    _check(x, y)
    return x | y


def not_(x: Elem) -> Elem:
    return ~x


def xor(x: Elem, y: Elem) -> Elem:
    _check(x, y)
    return x ^ y


def xnor(x: Elem, y: Elem) -> Elem:
    _check(x, y)
    return ~(x ^ y)


def leq(x: Elem, y: Elem) -> bool:
    _check(x, y)
    return x <= y


def from_generator(sig: Signature, name: str) -> Elem:
    j = sig.index(name)
    return Elem(sig, _generator_mask(sig.k, j) & sig.live_mask)


def quotient_by_atom(x: Elem, i: int) -> int:
    """x / T_i: 1 iff atom ``i`` is contained in ``x``."""
    x.sig._check_live(i)
    return x.bits >> i & 1


def collapse(sig: Signature, kill: Iterable[int]) -> Signature:
    kill = frozenset(kill)
    for i in kill:
        sig._check_live(i)
    if not kill:
        return sig
    return Signature(sig.generators, sig.nullified | kill)


def to_sop_text(x: Elem, minimized: bool = True) -> str:
    """Sum-of-products text over the generators; dead atoms are don't-cares."""
    sig = x.sig
    if x.bits == 0:
        return "0"
    if x.is_one():
        return "1"
    if minimized:
        return minimize.sop_text(sig.generators, x.atoms, sig.nullified)
    return minimize.cubes_to_text(minimize.canonical_cubes(sig.k, x.atoms), sig.generators)


def elem_from_json(data: dict) -> Elem:
    sig = Signature(tuple(data["generators"]), frozenset(data.get("nullified", ())))
    if "hex" in data:
        return Elem(sig, int(data["hex"], 16))
    return sig.from_atoms(data["atoms"])


def elem_from_hex(sig: Signature, text: str) -> Elem:
    return Elem(sig, int(text, 16))
