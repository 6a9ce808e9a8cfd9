"""
Finite relational structures carrying a rational probability measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from beartype import beartype
from beartype.typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from . import config as CFG
from .syntax import (
    And, Atom, Const, Equal, Forall, Formula, Iff, Implies, Not, Or,
    Signature, Term, Var,
)

Relation = FrozenSet[Tuple[str, ...]]


@beartype
@dataclass(frozen=True)
class FiniteModel:
    """
    A finite structure with a probability measure on its universe.

    Predicates without an entry in `relations` are empty. Construction does
    not validate; use validate_model or ensure_valid.
    """

    signature: Signature
    universe: Tuple[str, ...]
    relations: Mapping[str, Relation]
    constants: Mapping[str, str]
    measure: Mapping[str, Fraction]

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> tuple:
        """A hashable identity: two models with equal keys are equal."""
        return (
            self.signature,
            self.universe,
            tuple(sorted((name, tuple(sorted(rows))) for name, rows in self.relations.items() if rows)),
            tuple(sorted(self.constants.items())),
            tuple(self.measure.get(element) for element in self.universe),
        )

    @property
    def size(self) -> int:
        return len(self.universe)

    def relation(self, name: str) -> Relation:
        return self.relations.get(name, frozenset())

    def interpret(self, term: Term, env: Mapping[str, str]) -> str:
        if isinstance(term, Var):
            if term.name not in env:
                raise ValueError(CFG.ERRORS.UNBOUND_VARIABLE.format(name=term.name))
            return env[term.name]
        if isinstance(term, Const):
            if term.name not in self.constants:
                raise ValueError(CFG.ERRORS.MISSING_CONSTANT.format(name=term.name))
            return self.constants[term.name]
        return term.label

    def holds(self, atom: Formula, env: Mapping[str, str]) -> bool:
        """Truth of an atomic formula under an assignment of elements to variables."""
        if isinstance(atom, Equal):
            return self.interpret(atom.left, env) == self.interpret(atom.right, env)
        row = tuple(self.interpret(term, env) for term in atom.terms)
        return row in self.relation(atom.pred)

    def mass(self, elements: Iterable[str]) -> Fraction:
        return sum((self.measure[element] for element in elements), Fraction(0))


@beartype
@dataclass(frozen=True)
class ModelReport:
    """Outcome of model validation: an empty problem list means the model is valid."""

    problems: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(self.problems)


@beartype
def validate_model(model: FiniteModel) -> ModelReport:
    problems: List[str] = []
    signature = model.signature
    if not model.universe:
        problems.append(CFG.ERRORS.EMPTY_UNIVERSE)
    seen = set()
    for element in model.universe:
        if element in seen:
            problems.append(CFG.ERRORS.DUPLICATE_ELEMENT.format(label=element))
        seen.add(element)
    for element in model.universe:
        if element not in model.measure:
            problems.append(CFG.ERRORS.MISSING_MASS.format(label=element))
        elif model.measure[element] < 0:
            problems.append(CFG.ERRORS.NEGATIVE_MASS.format(label=element, mass=model.measure[element]))
    for element in model.measure:
        if element not in seen:
            problems.append(CFG.ERRORS.UNKNOWN_ELEMENT.format(label=element, where="measure"))
    total = sum((mass for element, mass in model.measure.items() if element in seen), Fraction(0))
    if model.universe and total != 1:
        problems.append(CFG.ERRORS.MEASURE_SUM.format(total=total))
    for name, rows in model.relations.items():
        arity = signature.arity(name)
        if arity is None:
            problems.append(CFG.ERRORS.UNDECLARED_RELATION.format(name=name))
            continue
        for row in sorted(rows):
            if len(row) != arity:
                problems.append(CFG.ERRORS.TUPLE_ARITY.format(
                    row=row, name=name, actual=len(row), expected=arity))
            for element in row:
                if element not in seen:
                    problems.append(CFG.ERRORS.UNKNOWN_ELEMENT.format(label=element, where=name))
    for name in signature.constants:
        if name not in model.constants:
            problems.append(CFG.ERRORS.MISSING_CONSTANT.format(name=name))
    for name, element in model.constants.items():
        if name not in signature.constants:
            problems.append(CFG.ERRORS.UNDECLARED_CONSTANT.format(name=name))
        elif element not in seen:
            problems.append(CFG.ERRORS.UNKNOWN_ELEMENT.format(label=element, where=name))
    return ModelReport(tuple(problems))


@beartype
def ensure_valid(model: FiniteModel) -> FiniteModel:
    report = validate_model(model)
    if not report.ok:
        raise ValueError(CFG.ERRORS.INVALID_MODEL.format(report=report))
    return model


@beartype
def classical_eval(model: FiniteModel, formula: Formula, env: Optional[Mapping[str, str]] = None) -> bool:
    """Tarskian truth; the measure plays no role."""
    return _classical(model, formula, dict(env or {}))


def _classical(model: FiniteModel, formula: Formula, env: Dict[str, str]) -> bool:
    if isinstance(formula, (Atom, Equal)):
        return model.holds(formula, env)
    if isinstance(formula, Not):
        return not _classical(model, formula.body, env)
    if isinstance(formula, And):
        return all(_classical(model, child, env) for child in formula.children)
    if isinstance(formula, Or):
        return any(_classical(model, child, env) for child in formula.children)
    if isinstance(formula, Implies):
        return not _classical(model, formula.premise, env) or _classical(model, formula.conclusion, env)
    if isinstance(formula, Iff):
        return _classical(model, formula.left, env) == _classical(model, formula.right, env)
    instances = (_classical(model, formula.body, {**env, formula.var: element}) for element in model.universe)
    return all(instances) if isinstance(formula, Forall) else any(instances)


# Monadic cells


@beartype
def cell_label(cell: FrozenSet[int]) -> str:
    """Label of the cell holding exactly the predicates with these 1-based indices."""
    return CFG.PARAMETERS.CELL_LABEL.format(members=",".join(str(index) for index in sorted(cell)))


def _cell_order(cell: FrozenSet[int]) -> Tuple[int, Tuple[int, ...]]:
    return len(cell), tuple(sorted(cell))


@beartype
def all_cells(signature: Signature) -> Tuple[FrozenSet[int], ...]:
    """Every subset of predicate indices, smallest first."""
    count = len(signature.predicates)
    cells = [frozenset(i + 1 for i in range(count) if mask >> i & 1) for mask in range(2 ** count)]
    return tuple(sorted(cells, key=_cell_order))


@beartype
def simple_model(signature: Signature, masses: Mapping[FrozenSet[int], Fraction]) -> FiniteModel:
    """The simple model whose elements are the given cells with the given masses."""
    if not signature.is_monadic_relational:
        raise ValueError(CFG.ERRORS.NOT_MONADIC)
    cells = sorted(masses, key=_cell_order)
    relations = {
        name: frozenset((cell_label(cell),) for cell in cells if index in cell)
        for index, name in enumerate(signature.predicate_names, start=1)
    }
    return FiniteModel(
        signature=signature,
        universe=tuple(cell_label(cell) for cell in cells),
        relations=relations,
        constants={},
        measure={cell_label(cell): masses[cell] for cell in cells},
    )


@beartype
def quotient_monadic(model: FiniteModel) -> FiniteModel:
    """
    Collapses elements satisfying the same predicates into one cell element
    carrying their total mass. The result satisfies exactly the same
    sentences as the input under every semantics.
    """
    signature = model.signature
    if not signature.is_monadic_relational:
        raise ValueError(CFG.ERRORS.NOT_MONADIC)
    masses: Dict[FrozenSet[int], Fraction] = {}
    for element in model.universe:
        cell = frozenset(
            index for index, name in enumerate(signature.predicate_names, start=1)
            if (element,) in model.relation(name)
        )
        masses[cell] = masses.get(cell, Fraction(0)) + model.measure[element]
    return simple_model(signature, masses)


# Enumeration


def _compositions(size: int, total: int) -> Iterator[Tuple[int, ...]]:
    if size == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(size - 1, total - first):
            yield (first,) + rest


@beartype
def weight_vectors(size: int, total: int) -> Iterator[Tuple[int, ...]]:
    """Non-negative integer vectors of the given length and sum with gcd 1, in lexicographic order."""
    for weights in _compositions(size, total):
        if math.gcd(*weights) == 1:
            yield weights


@beartype
def element_labels(size: int) -> Tuple[str, ...]:
    return tuple(CFG.PARAMETERS.ELEMENT_LABEL.format(index=index) for index in range(1, size + 1))


@beartype
def relation_choices(universe: Tuple[str, ...], arity: int) -> Iterator[Relation]:
    """Every relation of the given arity over the universe."""
    rows = list(product(universe, repeat=arity))
    for mask in range(2 ** len(rows)):
        yield frozenset(row for bit, row in enumerate(rows) if mask >> bit & 1)


@beartype
def enumerate_models(signature: Signature, max_size: int, max_denominator: int) -> Iterator[FiniteModel]:
    """
    Every model with at most max_size elements whose masses are multiples of
    1/t for some t <= max_denominator.

    Order: weight sum t, then size, then the weight vector lexicographically,
    then relations and constants. Each measure is produced from its reduced
    weight vector only, so no model appears twice.
    """
    for total in range(1, max_denominator + 1):
        for size in range(1, max_size + 1):
            universe = element_labels(size)
            for weights in weight_vectors(size, total):
                measure = {element: Fraction(weight, total) for element, weight in zip(universe, weights)}
                relation_sets = [list(relation_choices(universe, arity)) for _, arity in signature.predicates]
                for chosen in product(*relation_sets):
                    relations = dict(zip(signature.predicate_names, chosen))
                    for interpretation in product(universe, repeat=len(signature.constants)):
                        yield FiniteModel(
                            signature=signature,
                            universe=universe,
                            relations=relations,
                            constants=dict(zip(signature.constants, interpretation)),
                            measure=measure,
                        )
