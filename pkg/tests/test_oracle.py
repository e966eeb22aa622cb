"""Exact oracle: values, witnesses, decision form, and agreement properties."""

from __future__ import annotations

import random

import pytest

from twomaxsat.errors import TooManyVariablesError
from twomaxsat.formula import (
    Assignment,
    DnfConjunction,
    DnfFormula,
    Literal,
    Variable,
    cnf_to_dnf,
    eval_cnf,
    eval_dnf,
    formula_from_ints,
)
from twomaxsat.oracle import decide_2maxsat, oracle_max_dnf, oracle_max_sat


def test_ce1_value_and_witness(ce1):
    result = oracle_max_sat(ce1)
    assert result.max_count == 2
    assert result.witness.values == (False,)
    assert result.assignments_tried == 2


def test_ce3_value(ce3):
    assert oracle_max_sat(ce3).max_count == 1


def test_running_value(running):
    assert oracle_max_sat(running).max_count == 2


def test_witness_is_lexicographically_least(running):
    result = oracle_max_sat(running)
    best = result.max_count
    for idx in range(2**running.m0):
        a = Assignment(tuple(bool((idx >> (running.m0 - 1 - k)) & 1) for k in range(running.m0)))
        if eval_cnf(running, a) == best:
            assert a.values == result.witness.values
            break


def test_witness_reproduces_max(ce1, ce2, ce3, running):
    for f in (ce1, ce2, ce3, running):
        result = oracle_max_sat(f)
        assert eval_cnf(f, result.witness) == result.max_count


def test_oracle_max_dnf_derived(ce1, running):
    assert oracle_max_dnf(cnf_to_dnf(ce1)).max_count == 2
    d = cnf_to_dnf(running)
    result = oracle_max_dnf(d)
    assert result.max_count == 2
    assert eval_dnf(d, result.witness) == 2
    assert result.assignments_tried == 2**d.m


def test_oracle_single_conjunction_dnf():
    v = Variable(0, "v1")
    d = DnfFormula(
        (DnfConjunction("a", (Literal(v, True), Literal(v, True)), 0, True),),
        (v,),
    )
    assert oracle_max_dnf(d).max_count == 1


@pytest.mark.parametrize(
    "name, k, expected",
    [("ce1", 2, True), ("ce1", 3, False), ("ce3", 2, False), ("running", 2, True)],
)
def test_decide(name, k, expected, request):
    f = request.getfixturevalue(name)
    assert decide_2maxsat(f, k) is expected


def test_decide_requires_positive_k(ce1):
    with pytest.raises(ValueError):
        decide_2maxsat(ce1, 0)


def test_decide_monotone(ce1, ce2, ce3, running):
    for f in (ce1, ce2, ce3, running):
        previous = True
        for k in range(1, 2 * f.n0 + 2):
            now = decide_2maxsat(f, k)
            assert previous or not now  # once false, stays false
            previous = now


def test_variable_cap():
    f = formula_from_ints([[1, 2], [3, -1]], 3)
    with pytest.raises(TooManyVariablesError):
        oracle_max_sat(f, variable_cap=2)
    d = cnf_to_dnf(f)  # m = 5
    with pytest.raises(TooManyVariablesError):
        oracle_max_dnf(d, variable_cap=4)


def test_oracle_agrees_with_direct_evaluation():
    # dual route: the bit-parallel oracle versus per-assignment eval_cnf
    rng = random.Random(11)
    for _ in range(150):
        m0 = rng.randint(1, 4)
        n0 = rng.randint(1, 5)
        clauses = []
        for _ in range(n0):
            a = rng.randint(1, m0) * rng.choice((1, -1))
            b = a if rng.random() < 0.3 else rng.randint(1, m0) * rng.choice((1, -1))
            clauses.append([a, b])
        f = formula_from_ints(clauses, m0)
        best = max(
            eval_cnf(
                f,
                Assignment(tuple(bool((idx >> (m0 - 1 - k)) & 1) for k in range(m0))),
            )
            for idx in range(2**m0)
        )
        assert oracle_max_sat(f).max_count == best


def test_transformation_agreement_sampled():
    # oracle_max_dnf(cnf_to_dnf(F)) == oracle_max_sat(F) at the 6/6 scale, sampled
    rng = random.Random(23)
    for _ in range(300):
        m0 = rng.randint(1, 6)
        n0 = rng.randint(1, 6)
        clauses = []
        for _ in range(n0):
            a = rng.randint(1, m0) * rng.choice((1, -1))
            b = a if rng.random() < 0.3 else rng.randint(1, m0) * rng.choice((1, -1))
            clauses.append([a, b])
        f = formula_from_ints(clauses, m0)
        assert oracle_max_dnf(cnf_to_dnf(f)).max_count == oracle_max_sat(f).max_count
