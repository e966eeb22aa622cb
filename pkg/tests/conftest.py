"""Shared fixtures: the recorded example formulas and small-formula enumeration."""

from __future__ import annotations

import itertools

import pytest

from twomaxsat.formula import CnfFormula, formula_from_ints, parse_cnf
from twomaxsat.harness import (
    CE1_DIMACS,
    CE2_DIMACS,
    CE3_DIMACS,
    RUNNING_DIMACS,
)

CE1_ORDERING = "y1>y2>v1"
CE2_ORDERING = "v1>y1>y2"
CE3_ORDERING = "y2>y1>v1"


@pytest.fixture
def running() -> CnfFormula:
    return parse_cnf(RUNNING_DIMACS)


@pytest.fixture
def ce1() -> CnfFormula:
    return parse_cnf(CE1_DIMACS)


@pytest.fixture
def ce2() -> CnfFormula:
    return parse_cnf(CE2_DIMACS)


@pytest.fixture
def ce3() -> CnfFormula:
    return parse_cnf(CE3_DIMACS)


def all_clause_shapes(m0: int) -> list[tuple[int, int]]:
    """Every ordered literal pair over m0 variables (duplicates included)."""
    lits = [v * s for v in range(1, m0 + 1) for s in (1, -1)]
    return [(a, b) for a in lits for b in lits]


def all_formulas(max_n0: int, max_m0: int):
    """Exhaustive enumeration of small formulas, all literal combinations."""
    for m0 in range(1, max_m0 + 1):
        shapes = all_clause_shapes(m0)
        for n0 in range(1, max_n0 + 1):
            for combo in itertools.product(shapes, repeat=n0):
                yield formula_from_ints([list(c) for c in combo], m0)
