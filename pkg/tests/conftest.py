import itertools

import pytest
from hypothesis import strategies as st

from boolforge.algebra import Elem, Signature
from boolforge.expr import And, Const, Not, Or, Var, Xnor, Xor, parse_problem
from boolforge.reduce import problem_map
from boolforge.vekm import NaturalMap

WORKED = """\
generators a b c;
unknowns X Y;
equation c & (a | X) & (b | Y) = 0;
"""

GEN_NAMES = ("a", "b", "c", "d")
UNK_NAMES = ("X", "Y", "Z")


@pytest.fixture
def worked_problem():
    return parse_problem(WORKED)


@pytest.fixture
def worked_map(worked_problem):
    return problem_map(worked_problem)


def atoms_of(sig, text):
    """Atom set of a generator expression, by brute-force truth table."""
    from boolforge.expr import parse_expr, truth

    e = parse_expr(text)
    out = set()
    for i in range(sig.size):
        if i in sig.nullified:
            continue
        if truth(e, sig.atom_bits(i)):
            out.add(i)
    return out


@st.composite
def signatures(draw, max_k=4, min_k=0, nullify=True):
    k = draw(st.integers(min_k, max_k))
    gens = GEN_NAMES[:k]
    dead = frozenset()
    if nullify and k:
        dead = frozenset(draw(st.sets(st.integers(0, (1 << k) - 1), max_size=(1 << k) - 1)))
    return Signature(gens, dead)


@st.composite
def elems(draw, sig):
    bits = draw(st.integers(0, sig.full_mask))
    return Elem(sig, bits & sig.live_mask)


@st.composite
def maps(draw, max_k=4, max_n=3, min_n=0, sig=None):
    sig = sig or draw(signatures(max_k))
    n = draw(st.integers(min_n, max_n))
    cells = tuple(draw(elems(sig)) for _ in range(1 << n))
    return NaturalMap(sig, UNK_NAMES[:n], cells)


def exprs(names):
    leaves = st.one_of(st.sampled_from([Const(0), Const(1)]),
                       st.sampled_from([Var(x) for x in names]) if names else st.nothing())
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            kids.map(Not),
            st.tuples(kids, kids).map(lambda p: And(*p)),
            st.tuples(kids, kids).map(lambda p: Or(*p)),
            st.tuples(kids, kids).map(lambda p: Xor(*p)),
            st.tuples(kids, kids).map(lambda p: Xnor(*p)),
        ),
        max_leaves=8,
    )


def all_vectors(sig, n):
    """Every n-tuple of elements of sig (small cases only)."""
    return itertools.product(list(sig.elements()), repeat=n)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
