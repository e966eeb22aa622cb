"""Boolean formula data model: 2-CNF input, derived 2-DNF, padding, evaluation.

The CNF->DNF conversion splits every clause (l1 v l2) into the pair of
conjunctions (l1 ^ y_i) and (l2 ^ ~y_i) over a fresh auxiliary variable y_i,
so a DNF built from n0 clauses over m0 variables has n = 2*n0 conjunctions
over m = m0 + n0 variables.  Conjunctions are tagged with letters a, b, c, ...
in emission order.  Padding then marks every variable absent from a
conjunction as a "starred" (tautological) item.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    ClauseArityError,
    EmptyFormulaError,
    MalformedHeaderError,
    PartialAssignmentError,
    UnknownVariableError,
)


class VarKind(enum.Enum):
    ORIGINAL = "original"
    AUXILIARY = "auxiliary"


@dataclass(frozen=True)
class Variable:
    """A variable with a dense id and a display name (v1..vm, y1..yn)."""

    id: int
    name: str
    kind: VarKind = VarKind.ORIGINAL

    def __repr__(self) -> str:
        return f"Variable({self.name})"


@dataclass(frozen=True)
class Literal:
    variable: Variable
    positive: bool

    def __str__(self) -> str:
        return self.variable.name if self.positive else f"~{self.variable.name}"

    @property
    def dimacs(self) -> int:
        n = self.variable.id + 1
        return n if self.positive else -n


@dataclass(frozen=True)
class Clause:
    """Exactly two literal slots; 1-literal input clauses are stored duplicated."""

    literals: tuple[Literal, Literal]
    index: int

    def __str__(self) -> str:
        return f"({self.literals[0]} v {self.literals[1]})"


@dataclass(frozen=True)
class CnfFormula:
    clauses: tuple[Clause, ...]
    variables: tuple[Variable, ...]

    @property
    def n0(self) -> int:
        return len(self.clauses)

    @property
    def m0(self) -> int:
        return len(self.variables)

    def __str__(self) -> str:
        return " ^ ".join(str(c) for c in self.clauses)


def conjunction_label(index: int) -> str:
    """Letter tag for conjunction `index`: a..z, then aa, ab, ..."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    if index < 26:
        return letters[index]
    return letters[index // 26 - 1] + letters[index % 26]


@dataclass(frozen=True)
class DnfConjunction:
    label: str
    literals: tuple[Literal, Literal]
    origin_clause: int
    y_polarity: bool  # True for the (l1 ^ y_i) half, False for (l2 ^ ~y_i)

    def __str__(self) -> str:
        return f"({self.literals[0]} ^ {self.literals[1]})"


@dataclass(frozen=True)
class DnfFormula:
    conjunctions: tuple[DnfConjunction, ...]
    variables: tuple[Variable, ...]

    @property
    def n(self) -> int:
        return len(self.conjunctions)

    @property
    def m(self) -> int:
        return len(self.variables)

    def __str__(self) -> str:
        return " v ".join(str(c) for c in self.conjunctions)


@dataclass(frozen=True)
class PaddedConjunction:
    """A conjunction plus the starred (missing, tautological) variables."""

    base: DnfConjunction
    present: frozenset[tuple[Variable, bool]]
    starred: frozenset[Variable]

    @property
    def label(self) -> str:
        return self.base.label


@dataclass(frozen=True)
class Assignment:
    """Truth values indexed by variable id; must cover the table it is used on."""

    values: tuple[bool, ...]

    @classmethod
    def from_map(cls, variables: Sequence[Variable], named: Mapping[str, bool]) -> Assignment:
        return cls(tuple(bool(named[v.name]) for v in variables))

    def __getitem__(self, variable: Variable) -> bool:
        return self.values[variable.id]

    def literal(self, lit: Literal) -> bool:
        return self.values[lit.variable.id] == lit.positive

    def named(self, variables: Sequence[Variable]) -> dict[str, bool]:
        return {v.name: self.values[v.id] for v in variables}


def _require_total(a: Assignment, variables: Sequence[Variable]) -> None:
    if len(a.values) < len(variables):
        raise PartialAssignmentError(
            f"assignment covers {len(a.values)} variables, need {len(variables)}"
        )


def formula_from_ints(pairs: Iterable[Sequence[int]], m0: int) -> CnfFormula:
    """Build a CnfFormula from DIMACS-style literal pairs (1-based, sign = polarity)."""
    variables = tuple(Variable(i, f"v{i + 1}", VarKind.ORIGINAL) for i in range(m0))
    clauses = []
    for idx, lits in enumerate(pairs):
        if not 1 <= len(lits) <= 2:
            raise ClauseArityError(f"clause {idx + 1}: need 1 or 2 literals, got {len(lits)}")
        norm = list(lits)
        if len(norm) == 1:
            norm = [norm[0], norm[0]]
        built = []
        for raw in norm:
            v = abs(raw)
            if raw == 0 or v > m0:
                raise UnknownVariableError(f"clause {idx + 1}: variable index {raw} out of range")
            built.append(Literal(variables[v - 1], raw > 0))
        clauses.append(Clause((built[0], built[1]), idx))
    if not clauses:
        raise EmptyFormulaError("formula has no clauses")
    return CnfFormula(tuple(clauses), variables)


def parse_cnf(text: str | bytes) -> CnfFormula:
    """Parse the DIMACS-like format: comments `c ...`, header `p cnf m0 n0`, clause lines.

    Clause lines hold 1 or 2 nonzero integers terminated by 0; a single literal
    is normalized to a duplicated pair.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    header: tuple[int, int] | None = None
    raw_clauses: list[list[int]] = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise MalformedHeaderError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise MalformedHeaderError(f"line {lineno}: expected 'p cnf <m0> <n0>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise MalformedHeaderError(f"line {lineno}: non-integer header field") from exc
            if header[0] < 0 or header[1] < 0:
                raise MalformedHeaderError(f"line {lineno}: negative header field")
            continue
        if header is None:
            raise MalformedHeaderError(f"line {lineno}: clause before header")
        try:
            ints = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise ClauseArityError(f"line {lineno}: non-integer token") from exc
        if not ints or ints[-1] != 0:
            raise ClauseArityError(f"line {lineno}: clause not terminated by 0")
        lits = ints[:-1]
        if any(v == 0 for v in lits):
            raise ClauseArityError(f"line {lineno}: embedded 0 in clause")
        if not 1 <= len(lits) <= 2:
            raise ClauseArityError(f"line {lineno}: {len(lits)} literal slots (need 1 or 2)")
        raw_clauses.append(lits)
    if header is None:
        raise MalformedHeaderError("missing 'p cnf' header")
    m0, n0 = header
    if n0 == 0 or not raw_clauses:
        raise EmptyFormulaError("empty formula rejected (2-MAXSAT needs positive k < n)")
    if len(raw_clauses) != n0:
        raise MalformedHeaderError(f"header declares {n0} clauses, found {len(raw_clauses)}")
    for lineno_free in raw_clauses:
        for raw in lineno_free:
            if abs(raw) > m0:
                raise UnknownVariableError(f"variable index {raw} exceeds declared m0={m0}")
    return formula_from_ints(raw_clauses, m0)


def render_cnf(f: CnfFormula) -> str:
    """Serialize in the normalized 2-literal form (parse_cnf round-trips it)."""
    lines = [f"p cnf {f.m0} {f.n0}"]
    for clause in f.clauses:
        lines.append(f"{clause.literals[0].dimacs} {clause.literals[1].dimacs} 0")
    return "\n".join(lines) + "\n"


def cnf_to_dnf(f: CnfFormula) -> DnfFormula:
    """Step 1: clause i = (l1 v l2) becomes (l1 ^ y_i) v (l2 ^ ~y_i)."""
    aux = tuple(
        Variable(f.m0 + i, f"y{i + 1}", VarKind.AUXILIARY) for i in range(f.n0)
    )
    variables = f.variables + aux
    conjunctions = []
    for clause in f.clauses:
        y = aux[clause.index]
        l1, l2 = clause.literals
        conjunctions.append(
            DnfConjunction(
                label=conjunction_label(2 * clause.index),
                literals=(l1, Literal(y, True)),
                origin_clause=clause.index,
                y_polarity=True,
            )
        )
        conjunctions.append(
            DnfConjunction(
                label=conjunction_label(2 * clause.index + 1),
                literals=(l2, Literal(y, False)),
                origin_clause=clause.index,
                y_polarity=False,
            )
        )
    return DnfFormula(tuple(conjunctions), variables)


def pad_missing(d: DnfFormula) -> list[PaddedConjunction]:
    """Step 2: list each conjunction's own literals and star every other variable."""
    padded = []
    for conj in d.conjunctions:
        own = {lit.variable for lit in conj.literals}
        present = frozenset((lit.variable, lit.positive) for lit in conj.literals)
        starred = frozenset(v for v in d.variables if v not in own)
        padded.append(PaddedConjunction(conj, present, starred))
    return padded


def eval_cnf(f: CnfFormula, a: Assignment) -> int:
    """Count clauses satisfied by a total assignment (range 0..n0)."""
    _require_total(a, f.variables)
    return sum(
        1
        for clause in f.clauses
        if a.literal(clause.literals[0]) or a.literal(clause.literals[1])
    )


def eval_dnf(d: DnfFormula, a: Assignment) -> int:
    """Count conjunctions satisfied by a total assignment (range 0..n)."""
    _require_total(a, d.variables)
    return sum(
        1
        for conj in d.conjunctions
        if a.literal(conj.literals[0]) and a.literal(conj.literals[1])
    )


def satisfied_dnf_labels(d: DnfFormula, a: Assignment) -> frozenset[str]:
    """Labels of the conjunctions a total assignment satisfies."""
    _require_total(a, d.variables)
    return frozenset(
        conj.label
        for conj in d.conjunctions
        if a.literal(conj.literals[0]) and a.literal(conj.literals[1])
    )
