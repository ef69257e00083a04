"""Two-level (sum-of-products) minimization by Quine-McCluskey with don't-cares.

Cubes are ``(value, free)`` pairs of ints over ``nvars`` variables, variable 0
being the most significant bit of a minterm index.  A bit set in ``free``
means the variable is absent from the product.
"""
from __future__ import annotations

import logging
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

MAX_VARS = 10
_SEARCH_BUDGET = 20000


def _popcount(x: int) -> int:
    return bin(x).count("1")


def cube_covers(cube, minterm):
    value, free = cube
    return (minterm & ~free) == value


def cube_minterms(cube, nvars):
    value, free = cube
    bits = [b for b in range(nvars) if free >> b & 1]
    for combo in range(1 << len(bits)):
        m = value
        for j, b in enumerate(bits):
            if combo >> j & 1:
                m |= 1 << b
        yield m


def prime_implicants(nvars: int, on: Iterable[int], dc: Iterable[int] = ()) -> list:
    current = {(m, 0) for m in set(on) | set(dc)}
    primes = set()
    while current:
        merged = set()
        used = set()
        by_free: dict[int, list] = {}
        for cube in current:
            by_free.setdefault(cube[1], []).append(cube)
        for free, cubes in by_free.items():
            values = {c[0] for c in cubes}
            for value in values:
                for b in range(nvars):
                    bit = 1 << b
                    if free & bit or value & bit:
                        continue
                    partner = value | bit
                    if partner in values:
                        merged.add((value, free | bit))
                        used.add((value, free))
                        used.add((partner, free))
        primes |= current - used
        current = merged
    return sorted(primes, key=lambda c: (-_popcount(c[1]), c))


def _cost(cube, nvars):
    return nvars - _popcount(cube[1])


def minimum_cover(nvars: int, on: Iterable[int], primes: Sequence) -> list:
    """Exact minimum cover (fewest terms, then fewest literals).

    Falls back to the best cover found so far once the search budget is spent.
    """
    targets = frozenset(on)
    if not targets:
        return []
    covers = [frozenset(m for m in targets if cube_covers(p, m)) for p in primes]
    by_minterm: dict[int, list[int]] = {m: [] for m in targets}
    for idx, cov in enumerate(covers):
        for m in cov:
            by_minterm[m].append(idx)

    # greedy seed for the bound
    uncovered = set(targets)
    greedy = []
    while uncovered:
        idx = max(range(len(primes)),
                  key=lambda i: (len(covers[i] & uncovered), -_cost(primes[i], nvars)))
        greedy.append(idx)
        uncovered -= covers[idx]
    best = [greedy, (len(greedy), sum(_cost(primes[i], nvars) for i in greedy))]
    nodes = [0]

    def search(uncovered, chosen, terms, lits):
        if nodes[0] > _SEARCH_BUDGET:
            return
        nodes[0] += 1
        if not uncovered:
            if (terms, lits) < best[1]:
                best[0], best[1] = list(chosen), (terms, lits)
            return
        if (terms + 1, lits) >= best[1]:
            return
        pivot = min(uncovered, key=lambda m: (len(by_minterm[m]), m))
        options = sorted(by_minterm[pivot],
                         key=lambda i: (-len(covers[i] & uncovered), _cost(primes[i], nvars)))
        for idx in options:
            chosen.append(idx)
            search(uncovered - covers[idx], chosen, terms + 1, lits + _cost(primes[idx], nvars))
            chosen.pop()

    search(frozenset(targets), [], 0, 0)
    if nodes[0] > _SEARCH_BUDGET:
        log.debug("cover search budget exhausted; result may be non-minimal")
    return sorted((primes[i] for i in best[0]), key=lambda c: (-c[0], c[1]))


def minimize_cubes(nvars: int, on: Iterable[int], dc: Iterable[int] = ()) -> list:
    on = set(on)
    dc = set(dc) - on
    if not on:
        return []
    if len(on) + len(dc) == 1 << nvars:
        return [(0, (1 << nvars) - 1)]
    primes = prime_implicants(nvars, on, dc)
    return minimum_cover(nvars, on, primes)


def canonical_cubes(nvars: int, on: Iterable[int]) -> list:
    return [(m, 0) for m in sorted(on)]


def cube_text(cube, names: Sequence[str]) -> str:
    nvars = len(names)
    value, free = cube
    lits = []
    for j, name in enumerate(names):
        b = nvars - 1 - j
        if free >> b & 1:
            continue
        lits.append(name if value >> b & 1 else "~" + name)
    return " & ".join(lits) if lits else "1"


def cubes_to_text(cubes, names: Sequence[str]) -> str:
    if not cubes:
        return "0"
    return " | ".join(cube_text(c, names) for c in cubes)


def sop_text(names: Sequence[str], on: Iterable[int], dc: Iterable[int] = ()) -> str:
    """Minimized SOP text; canonical minterm form when there are too many variables."""
    on = set(on)
    if len(names) > MAX_VARS:
        return cubes_to_text(canonical_cubes(len(names), on), names)
    return cubes_to_text(minimize_cubes(len(names), on, dc), names)
