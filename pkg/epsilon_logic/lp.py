"""
Exact feasibility of small linear systems over the rationals.

Equality rows are removed by Gauss-Jordan elimination, inequalities by
Fourier-Motzkin elimination. Systems with strict rows are first decided
through the homogenized transposition theorem (a weak system in the dual
multipliers), then solved with a positive margin on every strict row.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from beartype import beartype
from beartype.typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import config as CFG
from .syntax import Rational

_Vector = Tuple[Fraction, ...]
_Inequality = Tuple[_Vector, Fraction]  # coefficients . x >= rhs
_Pivot = Tuple[int, _Vector, Fraction]  # x[col] = rhs - sum of other coefficients . x


class Relation(Enum):
    GEQ = ">="
    GT = ">"
    EQ = "="


_RELATIONS: Dict[str, Tuple[Relation, int]] = {
    ">=": (Relation.GEQ, 1),
    ">": (Relation.GT, 1),
    "=": (Relation.EQ, 1),
    "<=": (Relation.GEQ, -1),
    "<": (Relation.GT, -1),
}


@beartype
@dataclass(frozen=True)
class Row:
    """coefficients . x  relation  rhs"""

    coefficients: _Vector
    relation: Relation
    rhs: Fraction

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coefficients, point)), Fraction(0))

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        lhs = self.value(point)
        if self.relation is Relation.GEQ:
            return lhs >= self.rhs
        if self.relation is Relation.GT:
            return lhs > self.rhs
        return lhs == self.rhs


@beartype
@dataclass(frozen=True)
class LinSystem:
    """Rows over named rational variables."""

    variables: Tuple[str, ...]
    rows: Tuple[Row, ...] = ()

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row.coefficients) != len(self.variables):
                raise ValueError(CFG.ERRORS.ROW_LENGTH.format(
                    actual=len(row.coefficients), expected=len(self.variables)))

    def add(self, coefficients: Mapping[str, Rational], relation: Union[str, Relation], rhs: Rational) -> "LinSystem":
        """
        A copy with one more row.

        `relation` is a Relation or one of ">=", ">", "=", "<=", "<"; the last
        two are stored as negated ">=" and ">" rows.
        """
        if isinstance(relation, Relation):
            relation, sign = relation, 1
        elif relation in _RELATIONS:
            relation, sign = _RELATIONS[relation]
        else:
            raise ValueError(CFG.ERRORS.UNKNOWN_RELATION.format(relation=relation))
        for name in coefficients:
            if name not in self.variables:
                raise ValueError(CFG.ERRORS.UNKNOWN_LP_VARIABLE.format(name=name))
        vector = tuple(sign * Fraction(coefficients.get(name, 0)) for name in self.variables)
        return LinSystem(self.variables, self.rows + (Row(vector, relation, sign * Fraction(rhs)),))

    @property
    def has_strict_rows(self) -> bool:
        return any(row.relation is Relation.GT for row in self.rows)

    def satisfied_by(self, point: Mapping[str, Fraction]) -> bool:
        values = [point[name] for name in self.variables]
        return all(row.satisfied_by(values) for row in self.rows)

    def __str__(self) -> str:
        lines = []
        for row in self.rows:
            terms = [f"{c}*{name}" for c, name in zip(row.coefficients, self.variables) if c != 0]
            lines.append(f"{' + '.join(terms) or '0'} {row.relation.value} {row.rhs}")
        return "\n".join(lines)


@beartype
@dataclass(frozen=True)
class Feasible:
    """A point satisfying every row exactly; `margin` is the slack forced on strict rows."""

    point: Dict[str, Fraction]
    margin: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return True

    def __str__(self) -> str:
        return "Feasible(" + ", ".join(f"{name}={value}" for name, value in self.point.items()) + ")"


@beartype
@dataclass(frozen=True)
class Infeasible:
    """No point exists; `certificate` holds dual multipliers of the strict rows when available."""

    reason: str
    certificate: Optional[Tuple[Fraction, ...]] = field(default=None)

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"Infeasible({self.reason})"


Outcome = Union[Feasible, Infeasible]


# Elimination


def _eliminate(coefficients: _Vector, rhs: Fraction, pivot: _Pivot) -> Tuple[_Vector, Fraction]:
    col, pivot_coefficients, pivot_rhs = pivot
    factor = coefficients[col]
    if factor == 0:
        return coefficients, rhs
    return tuple(a - factor * b for a, b in zip(coefficients, pivot_coefficients)), rhs - factor * pivot_rhs


def _gauss(equalities: Sequence[Tuple[_Vector, Fraction]]) -> Optional[List[_Pivot]]:
    """Reduced row echelon form of the equality rows, pivoting on the leftmost nonzero column."""
    pivots: List[_Pivot] = []
    for coefficients, rhs in equalities:
        for pivot in pivots:
            coefficients, rhs = _eliminate(coefficients, rhs, pivot)
        col = next((j for j, c in enumerate(coefficients) if c != 0), None)
        if col is None:
            if rhs != 0:
                return None
            continue
        scale = coefficients[col]
        new = (col, tuple(c / scale for c in coefficients), rhs / scale)
        pivots = [(p_col, *_eliminate(p_coefficients, p_rhs, new)) for p_col, p_coefficients, p_rhs in pivots]
        pivots.append(new)
    return pivots


def _reduce(rows: Sequence[_Inequality], pivots: Sequence[_Pivot]) -> List[_Inequality]:
    reduced = []
    for coefficients, rhs in rows:
        for pivot in pivots:
            coefficients, rhs = _eliminate(coefficients, rhs, pivot)
        reduced.append((coefficients, rhs))
    return reduced


def _back_substitute(values: List[Fraction], pivots: Sequence[_Pivot]) -> None:
    for col, coefficients, rhs in pivots:
        values[col] = rhs - sum((c * values[j] for j, c in enumerate(coefficients) if j != col), Fraction(0))


def _normalize(rows: Sequence[_Inequality]) -> Optional[List[_Inequality]]:
    """
    Scales rows to unit max-coefficient and keeps the tightest copy of each.

    Returns None when some row reads 0 >= positive.
    """
    tightest: Dict[_Vector, Fraction] = {}
    for coefficients, rhs in rows:
        scale = max((abs(c) for c in coefficients), default=Fraction(0))
        if scale == 0:
            if rhs > 0:
                return None
            continue
        coefficients = tuple(c / scale for c in coefficients)
        rhs = rhs / scale
        if coefficients not in tightest or tightest[coefficients] < rhs:
            tightest[coefficients] = rhs
    return list(tightest.items())


def _choose(lower: Optional[Fraction], upper: Optional[Fraction]) -> Fraction:
    if lower is not None and upper is not None:
        return (lower + upper) / 2
    if lower is not None:
        return max(lower, Fraction(0))
    if upper is not None:
        return min(upper, Fraction(0))
    return Fraction(0)


def _fourier_motzkin(size: int, rows: Sequence[_Inequality]) -> Optional[List[Fraction]]:
    """A solution of the weak rows, or None. Eliminates the last variable first."""
    current = _normalize(rows)
    if current is None:
        return None
    stages: List[Tuple[int, List[_Inequality]]] = []
    for k in reversed(range(size)):
        stages.append((k, current))
        lower = [row for row in current if row[0][k] > 0]
        upper = [row for row in current if row[0][k] < 0]
        combined = [row for row in current if row[0][k] == 0]
        for low_coefficients, low_rhs in lower:
            for up_coefficients, up_rhs in upper:
                mu, lam = -up_coefficients[k], low_coefficients[k]
                combined.append((
                    tuple(mu * a + lam * b for a, b in zip(low_coefficients, up_coefficients)),
                    mu * low_rhs + lam * up_rhs,
                ))
        current = _normalize(combined)
        if current is None:
            return None
    values = [Fraction(0)] * size
    for k, stage_rows in reversed(stages):
        lower_bound: Optional[Fraction] = None
        upper_bound: Optional[Fraction] = None
        for coefficients, rhs in stage_rows:
            c = coefficients[k]
            if c == 0:
                continue
            bound = (rhs - sum((coefficients[j] * values[j] for j in range(k)), Fraction(0))) / c
            if c > 0:
                lower_bound = bound if lower_bound is None else max(lower_bound, bound)
            else:
                upper_bound = bound if upper_bound is None else min(upper_bound, bound)
        values[k] = _choose(lower_bound, upper_bound)
    return values


def _solve(size: int, equalities: Sequence[Tuple[_Vector, Fraction]], inequalities: Sequence[_Inequality]) -> Union[List[Fraction], str]:
    pivots = _gauss(equalities)
    if pivots is None:
        return CFG.LOGS.REASON_EQUALITIES
    values = _fourier_motzkin(size, _reduce(inequalities, pivots))
    if values is None:
        return CFG.LOGS.REASON_INEQUALITIES
    _back_substitute(values, pivots)
    return values


def _split(system: LinSystem) -> Tuple[List[_Inequality], List[_Inequality], List[_Inequality]]:
    by_relation: Dict[Relation, List[_Inequality]] = {relation: [] for relation in Relation}
    for row in system.rows:
        by_relation[row.relation].append((row.coefficients, row.rhs))
    return by_relation[Relation.EQ], by_relation[Relation.GEQ], by_relation[Relation.GT]


def _outcome(system: LinSystem, solved: Union[List[Fraction], str], margin: Optional[Fraction] = None) -> Outcome:
    if isinstance(solved, str):
        return Infeasible(solved)
    return Feasible(dict(zip(system.variables, solved)), margin)


@beartype
def feasible_weak(system: LinSystem) -> Outcome:
    """Decides a system of weak and equality rows and returns a witness point."""
    if system.has_strict_rows:
        raise ValueError(CFG.ERRORS.STRICT_ROWS)
    equalities, weak, _ = _split(system)
    return _outcome(system, _solve(len(system.variables), equalities, weak))


def _transposition_certificate(size: int, weak: Sequence[_Inequality], strict: Sequence[_Inequality]) -> Optional[Tuple[Fraction, ...]]:
    """
    Multipliers proving that weak and strict rows have no common solution.

    Homogenize with t > 0: rows a.x - b.t > 0 (strict, plus t itself) and
    a.x - b.t >= 0 (weak). They are unsolvable exactly when y >= 0 with
    sum(y) = 1 and z >= 0 exist such that y.S + z.W = 0.
    """
    zero = Fraction(0)
    strict_rows = [coefficients + (-rhs,) for coefficients, rhs in strict] + [(zero,) * size + (Fraction(1),)]
    weak_rows = [coefficients + (-rhs,) for coefficients, rhs in weak]
    rows = strict_rows + weak_rows
    count = len(rows)
    unit = [tuple(Fraction(int(i == j)) for j in range(count)) for i in range(count)]
    equalities = [(tuple(row[col] for row in rows), zero) for col in range(size + 1)]
    equalities.append((tuple(Fraction(int(i < len(strict_rows))) for i in range(count)), Fraction(1)))
    solved = _solve(count, equalities, [(unit[i], zero) for i in range(count)])
    if isinstance(solved, str):
        return None
    return tuple(solved[:len(strict_rows)])


@beartype
def feasible(system: LinSystem) -> Outcome:
    """
    Decides a system that may contain strict rows and returns a witness point.

    The witness solves the weak system obtained by raising every strict row's
    right-hand side by a margin 1, 1/2, 1/4, ... until one fits.
    """
    if not system.has_strict_rows:
        return feasible_weak(system)
    size = len(system.variables)
    equalities, weak, strict = _split(system)
    pivots = _gauss(equalities)
    if pivots is None:
        return Infeasible(CFG.LOGS.REASON_EQUALITIES)
    weak, strict = _reduce(weak, pivots), _reduce(strict, pivots)
    certificate = _transposition_certificate(size, weak, strict)
    if certificate is not None:
        return Infeasible(CFG.LOGS.REASON_STRICT, certificate)
    margin = CFG.PARAMETERS.MARGIN_START
    for _ in range(CFG.PARAMETERS.MARGIN_MAX_HALVINGS):
        shifted = weak + [(coefficients, rhs + margin) for coefficients, rhs in strict]
        values = _fourier_motzkin(size, shifted)
        if values is not None:
            _back_substitute(values, pivots)
            return _outcome(system, values, margin)
        margin *= CFG.PARAMETERS.MARGIN_FACTOR
    raise RuntimeError(CFG.ERRORS.MARGIN_NOT_FOUND)
