from __future__ import annotations

import operator
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ldkep.errors import DomainError, PoolError, StructureError
from ldkep.groups import SymmetricGroup, conjugation
from ldkep.laver import build_laver_table, laver_apply
from ldkep.magma import (
    OperationPool,
    OpId,
    PoolPair,
    Term,
    check_ld,
    check_mutual_ld,
    check_pool_pair,
    free_pool_pair,
    iterated_left_mul,
    render,
    single_pool_pair,
)


def test_op_id_round_trip_and_validation():
    assert str(OpId("B", 12)) == "B12"
    assert OpId.parse("A3") == OpId("A", 3)
    assert OpId("A", 1) < OpId("A", 2) < OpId("B", 0)
    for bad in ("", "A", "Ax", "C1"):
        with pytest.raises(DomainError):
            OpId.parse(bad)
    with pytest.raises(DomainError):
        OpId("A", -1)


def test_pool_lookup():
    pools = free_pool_pair(["a", "b"], ["c"])
    assert pools.label(OpId("A", 1)) == "b"
    assert pools.label(OpId("B", 0)) == "c"
    assert pools.a.op_ids() == [OpId("A", 0), OpId("A", 1)]
    with pytest.raises(PoolError):
        pools.resolve(OpId("B", 1))
    with pytest.raises(DomainError):
        OperationPool("A", (), ())
    with pytest.raises(StructureError):
        OperationPool("A", ("x", "y"), (operator.add,))


def test_iterated_left_mul_empty_chain_is_identity():
    assert iterated_left_mul([], [], "e", free_pool_pair(["o"])) == "e"


def test_iterated_left_mul_order():
    pools = free_pool_pair(["o1", "o2"])
    got = iterated_left_mul(["x1", "x2", "x3"], [OpId("A", 0), OpId("A", 1), OpId("A", 0)], "y", pools)
    assert render(got) == "x3 o1 (x2 o2 (x1 o1 y))"
    with pytest.raises(StructureError):
        iterated_left_mul(["x1"], [], "y", pools)


def test_iterated_left_mul_single_conjugation():
    g = SymmetricGroup(5)
    rng = random.Random(3)
    x, h = g.random(rng), g.random(rng)
    pools = single_pool_pair("conj", conjugation)
    assert iterated_left_mul([x], [OpId("A", 0)], h, pools) == x.inverse() * h * x


def test_render_nesting():
    t = Term("*", Term("*", "a", "b"), "c")
    assert render(t) == "(a * b) * c"
    assert render(t, top=False) == "((a * b) * c)"
    assert str(Term("+", "a", Term("+", "b", "c"))) == "a + (b + c)"


def test_check_ld_laver_exhaustive_l2():
    t = build_laver_table(2)
    op = lambda x, y: laver_apply(t, x, y)
    triples = [(x, y, z) for x in t.elements() for y in t.elements() for z in t.elements()]
    assert check_ld(op, triples) == []


def test_check_ld_conjugation_s5():
    g = SymmetricGroup(5)
    rng = random.Random(1)
    triples = [(g.random(rng), g.random(rng), g.random(rng)) for _ in range(1000)]
    assert check_ld(conjugation, triples) == []


def test_check_detects_non_distributive_operation():
    sub = lambda x, y: (x - y) % 7
    found = check_ld(sub, [(x, y, z) for x in range(7) for y in range(7) for z in range(7)])
    assert found and all(f.law == "a/b" for f in found)
    assert len(check_ld(sub, [(1, 2, 3)] * 10, stop_after=3)) == 3


@given(st.integers(0, 10), st.integers(0, 10), st.integers(0, 10))
def test_mutual_checks_both_directions(x, y, z):
    succ = lambda a, b: b + 1
    first = lambda a, b: a
    # succ distributes over first, first does not distribute over succ
    found = check_mutual_ld(succ, first, [(x, y, z)])
    assert [v.law for v in found] == ["b/a"]
    assert check_mutual_ld(succ, succ, [(x, y, z)]) == []


def test_check_pool_pair_keys():
    pools = PoolPair(
        OperationPool("A", ("add", "max"), (lambda a, b: a + b, max)),
        OperationPool("B", ("max",), (max,)),
    )
    report = check_pool_pair(pools, [(1, 2, 3), (5, 0, 4)])
    assert set(report) == {("add", "max"), ("max", "max")}
    assert report[("max", "max")] == []
