import pytest
from hypothesis import given, settings, strategies as st

from boolforge.algebra import Signature, collapse
from boolforge.enumeration import enumerate_all
from boolforge.errors import BoolforgeError, InconsistentEquation
from boolforge.expr import parse_expr
from boolforge.parametric import ParamSolution, contribution_table, is_complete, verify
from boolforge.subsumptive import (IncompleteFn, check_consistency, eliminants, intervals,
                                   minimize, to_parametric)
from boolforge.vekm import NaturalMap, build_map, consistency

from conftest import atoms_of, maps

ABC = Signature(("a", "b", "c"))
ABC7 = collapse(ABC, {7})


def _cells(sig, unknowns, text):
    return build_map(parse_expr(text), sig, unknowns)


def test_chain_worked(worked_map):
    chain = eliminants(worked_map)
    assert chain.order == ("Y", "X")
    g1 = chain.maps[1]
    assert g1.unknowns == ("X",)
    assert set(g1.cells[0].atoms) == atoms_of(ABC, "~a | ~b | ~c")
    assert set(g1.cells[1].atoms) == atoms_of(ABC, "~b | ~c")
    assert set(chain.final.atoms) == atoms_of(ABC, "~a | ~b | ~c")
    status = check_consistency(chain)
    assert status.kind == "conditional" and status.condition.atoms == (7,)


def test_chain_trivial():
    sig = Signature(("a",))
    one = NaturalMap.constant(sig, ("X", "Y"), sig.one())
    chain = eliminants(one)
    assert all(c.is_one() for m in chain.maps for c in m.cells)
    assert check_consistency(chain).kind == "consistent"
    zero = NaturalMap.constant(sig, ("X",), sig.zero())
    assert check_consistency(eliminants(zero)).kind == "inconsistent"
    with pytest.raises(InconsistentEquation):
        intervals(eliminants(zero))
    with pytest.raises(BoolforgeError):
        eliminants(one, ("X", "Q"))


def test_intervals_worked(worked_map):
    iv = intervals(eliminants(worked_map))
    assert [b.name for b in iv.bounds] == ["X", "Y"]
    x, y = iv.interval("X"), iv.interval("Y")
    zero_x = NaturalMap.constant(ABC7, (), ABC7.zero())
    assert x.s.admits(zero_x)
    assert x.t.admits(_cells(ABC7, (), "~b | ~c"))
    assert y.depends_on == ("X",)
    assert y.s.admits(NaturalMap.constant(ABC7, ("X",), ABC7.zero()))
    assert y.t.admits(_cells(ABC7, ("X",), "~c | ~a & ~X"))
    text = iv.to_text()
    assert "consistency: ~a | ~b | ~c = 1" in text
    assert iv.to_json()["kind"] == "subsumptive"


def test_intervals_trivial():
    sig = Signature(())
    one = NaturalMap.constant(sig, ("X", "Y"), sig.one())
    iv = intervals(eliminants(one))
    for b in iv.bounds:
        assert all(c.is_zero() for c in b.s.lower.cells)
        assert all(c.is_one() for c in b.t.upper.cells)
    forced = _cells(sig, ("Z",), "Z")
    b = intervals(eliminants(forced)).interval("Z")
    assert b.s.lower.cells[0].is_one() and b.t.lower.cells[0].is_one()


def test_to_parametric_worked(worked_map):
    sol = to_parametric(intervals(eliminants(worked_map)))
    assert len(sol.params) == 2
    assert verify(sol, worked_map) and is_complete(sol, worked_map)


def test_reference_formula_verifies(worked_map):
    sol = ParamSolution("shared", ABC7, ("X", "Y"), ("u", "v"),
                        (parse_expr("u & (~b | ~c)"), parse_expr("v & (~c | ~a & ~u | ~a & b)")))
    assert verify(sol, worked_map) and is_complete(sol, worked_map)


def test_to_parametric_trivial():
    sig = Signature(())
    free = intervals(eliminants(NaturalMap.constant(sig, ("Z",), sig.one())))
    sol = to_parametric(free)
    assert str(sol.exprs[0]) == sol.params[0]
    forced = intervals(eliminants(_cells(sig, ("Z",), "Z")))
    assert str(to_parametric(forced).exprs[0]) == "1"


def test_minimize():
    on = ABC7.one()
    assert minimize(on) == "1"
    assert minimize(ABC.zero()) == "0"
    assert minimize(ABC.atom(5)) == "a & ~b & c"
    f = IncompleteFn(_cells(ABC7, ("X",), "~c & X"), _cells(ABC7, ("X",), "~X"))
    assert minimize(f) == "~c"
    with pytest.raises(TypeError):
        minimize(3)


def test_custom_order(worked_map):
    iv = intervals(eliminants(worked_map, ("X", "Y")))
    assert [b.name for b in iv.bounds] == ["Y", "X"]
    assert verify(to_parametric(iv), worked_map)


@settings(max_examples=150, deadline=None)
@given(maps(max_k=3, max_n=3, min_n=1))
def test_chain_recurrence(m):
    chain = eliminants(m)
    for name, cur, nxt in zip(chain.order, chain.maps, chain.maps[1:]):
        assert nxt == cur.restrict(name, 0) | cur.restrict(name, 1)
    total = m.sig.zero()
    for c in m.cells:
        total |= c
    assert chain.final == total
    assert (~chain.final) == consistency(m).condition


@settings(max_examples=150, deadline=None)
@given(maps(max_k=3, max_n=2, min_n=1), st.randoms(use_true_random=False))
def test_bounds_hold_for_every_solution(m, rng):
    if consistency(m).absolute:
        return
    iv = intervals(eliminants(m))
    sols = list(enumerate_all(contribution_table(m), limit=300))
    for b in iv.bounds:
        others = b.depends_on
        for fn in (b.s, b.t):
            fills = [fn.lower, fn.upper]
            for _ in range(3):
                cells = tuple(o | (d & d.sig.from_atoms(a for a in d.atoms if rng.random() < 0.5))
                              for o, d in zip(fn.on.cells, fn.dc.cells))
                fills.append(NaturalMap(fn.on.sig, fn.on.unknowns, cells))
            for s in sols:
                z = s[b.name]
                args = [s[o] for o in others]
                for f in fills:
                    if fn is b.s:
                        assert f.evaluate(args) <= z
                    else:
                        assert z <= f.evaluate(args)


@settings(max_examples=100, deadline=None)
@given(maps(max_k=3, max_n=3, min_n=1))
def test_to_parametric_sound_and_complete(m):
    if consistency(m).absolute:
        return
    sol = to_parametric(intervals(eliminants(m)))
    assert verify(sol, m) and is_complete(sol, m)
