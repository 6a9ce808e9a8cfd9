"""
Decision procedures: the threshold-zero fragments, the monadic fragment,
and bounded searches for finite models.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, islice, product

from beartype import beartype
from beartype.typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import config as CFG
from .lp import LinSystem, feasible
from .models import (
    FiniteModel, all_cells, element_labels, enumerate_models, relation_choices, simple_model, weight_vectors,
)
from .semantics import QEvaluator, QNode, QTree, Residual, Semantics, eval_q, evaluate, verify_qtree
from .syntax import (
    Formula, Not, PropFormula, PropVar, QSentence, QuantifierType, Rational, Signature,
    contains_equality, e_coerce, f_coerce, free_variables, propositionalize, split_prenex, symbols,
    to_prenex, validity_convert,
)
from .tools import check_epsilon


class Verdict(Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    VALID = "valid"
    INVALID = "invalid"
    BUDGET_EXHAUSTED = "budget_exhausted"


@beartype
@dataclass(frozen=True)
class DecisionOutcome:
    """A verdict with the evidence that supports it."""

    verdict: Verdict
    witness: Optional[FiniteModel] = None
    counter: Optional[FiniteModel] = None
    certificate: Optional[Union[QTree, Mapping[PropVar, bool]]] = None

    @property
    def positive(self) -> bool:
        return self.verdict in (Verdict.SATISFIABLE, Verdict.VALID)

    def __str__(self) -> str:
        parts = [f"verdict={self.verdict.value}"]
        if self.witness is not None:
            parts.append(f"witness={self.witness.size} element(s)")
        if self.counter is not None:
            parts.append(f"counter={self.counter.size} element(s)")
        return f"DecisionOutcome({', '.join(parts)})"


@beartype
@dataclass(frozen=True)
class TautologyResult:
    tautology: bool
    falsifying: Optional[Dict[PropVar, bool]] = None

    def __bool__(self) -> bool:
        return self.tautology


@beartype
def taut_check(formula: PropFormula) -> TautologyResult:
    """Truth-table check, rows in order all-false first."""
    names = formula.variables
    limit = CFG.PARAMETERS.MAX_TAUTOLOGY_VARIABLES
    if len(names) > limit:
        raise ValueError(CFG.ERRORS.TOO_MANY_VARIABLES.format(count=len(names), limit=limit))
    for values in product((False, True), repeat=len(names)):
        assignment = dict(zip(names, values))
        if not formula.evaluate(assignment):
            return TautologyResult(False, assignment)
    return TautologyResult(True)


def _require_sentence(formula: Formula) -> None:
    free = free_variables(formula)
    if free:
        raise ValueError(CFG.ERRORS.FREE_VARIABLES.format(names=", ".join(sorted(free))))


# Threshold zero


class ZeroProblem(Enum):
    F_VALIDITY = "0f-valid"
    E_SATISFIABILITY = "0e-sat"
    COUNTABLE_F_VALIDITY = "countable-0f-valid"
    COUNTABLE_E_SATISFIABILITY = "countable-0e-sat"

    @property
    def asks_validity(self) -> bool:
        return self in (ZeroProblem.F_VALIDITY, ZeroProblem.COUNTABLE_F_VALIDITY)


class ZeroDecider:
    """
    Decides validity under F-semantics and satisfiability under E-semantics
    at epsilon = 0 by reduction to a propositional tautology check.

    Countable variants have the same answers and share the procedure.
    """

    def __init__(self, signature: Optional[Signature] = None, *, logger: Optional[logging.Logger] = None) -> None:
        self.signature = signature
        self._logger = logger or logging.getLogger(self.__class__.__name__)

    def decide(self, sentence: Formula, problem: ZeroProblem) -> DecisionOutcome:
        _require_sentence(sentence)
        if contains_equality(sentence):
            raise ValueError(CFG.ERRORS.CONTAINS_EQUALITY)
        inferred = Signature.infer(sentence)
        signature = inferred if self.signature is None else self.signature.extend(inferred.predicates, inferred.constants)
        validity = problem.asks_validity
        target = sentence if validity else Not(sentence)
        converted = validity_convert(to_prenex(target), signature)
        matrix = propositionalize(converted)
        self._logger.debug(CFG.LOGS.ZERO_REDUCED.format(count=len(matrix.variables)))
        result = taut_check(matrix)
        if result.tautology:
            self._logger.info(CFG.LOGS.ZERO_TAUTOLOGY)
            return DecisionOutcome(Verdict.VALID if validity else Verdict.UNSATISFIABLE)
        model: Optional[FiniteModel] = self._countermodel(converted, result.falsifying, signature)
        if evaluate(model, target, 0, Semantics.F):
            self._logger.warning(CFG.LOGS.ZERO_DOWNGRADED)
            model = None
        else:
            self._logger.info(CFG.LOGS.ZERO_COUNTERMODEL.format(size=model.size))
        if validity:
            return DecisionOutcome(Verdict.INVALID, counter=model, certificate=result.falsifying)
        return DecisionOutcome(Verdict.SATISFIABLE, witness=model, certificate=result.falsifying)

    def _countermodel(self, converted: Formula, falsifying: Mapping[PropVar, bool], signature: Signature) -> FiniteModel:
        """
        One element per matrix variable and per constant; the fresh leading
        variable carries all the mass, and atoms hold as the assignment says.
        """
        prefix, matrix = split_prenex(converted)
        occurring = free_variables(matrix)
        names = [name for index, (_, name) in enumerate(prefix) if index == 0 or name in occurring]
        names += [name for name in signature.constants if name not in names]
        relations: Dict[str, set] = {name: set() for name in signature.predicate_names}
        for var, value in falsifying.items():
            if value:
                relations.setdefault(var.pred, set()).add(var.index)
        return FiniteModel(
            signature=signature,
            universe=tuple(names),
            relations={name: frozenset(rows) for name, rows in relations.items()},
            constants={name: name for name in signature.constants},
            measure={name: Fraction(int(index == 0)) for index, name in enumerate(names)},
        )


@beartype
def decide_zero(sentence: Formula, problem: ZeroProblem, signature: Optional[Signature] = None) -> DecisionOutcome:
    return ZeroDecider(signature).decide(sentence, problem)


# Monadic fragment


_Class = Tuple[int, Residual]


class _TreeSearch:
    """
    Looks for a q-tree and masses over one fixed set of cells.

    Subtrees are shared by class (level, residual matrix): two nodes with the
    same residual at the same level can always reuse one subtree. Each class
    gets a node set; measured levels contribute rows to a linear system over
    the cell masses, which is kept feasible while choices are made.
    """

    def __init__(self, signature: Signature, cells: Sequence[FrozenSet[int]], sentence: QSentence, positive: bool) -> None:
        self.skeleton = simple_model(signature, {cell: Fraction(0) for cell in cells})
        self.cells = dict(zip(self.skeleton.universe, sorted(cells, key=lambda cell: (len(cell), sorted(cell)))))
        self.labels = self.skeleton.universe
        self.sentence = sentence
        self.height = len(sentence.prefix)
        self.evaluator = QEvaluator(self.skeleton, sentence)
        self._live: Dict[_Class, bool] = {}
        system = LinSystem(self.labels)
        for label in self.labels:
            system = system.add({label: 1}, ">" if positive else ">=", 0)
        self.system = system.add({label: 1 for label in self.labels}, "=", 1)

    def live(self, level: int, residual: Residual) -> bool:
        """Whether some node set can be chosen here, ignoring the masses."""
        if level == self.height:
            return residual is True
        key = (level, residual)
        if key not in self._live:
            kind, _ = self.sentence.prefix[level]
            children = [self.live(level + 1, self.evaluator.child(level, residual, label)) for label in self.labels]
            if kind.quantifier is QuantifierType.EXISTS:
                alive = any(children)
            elif kind.quantifier is QuantifierType.FORALL:
                alive = all(children)
            elif kind.quantifier is QuantifierType.WEAK and kind.threshold == 0:
                alive = True
            elif kind.quantifier is QuantifierType.STRONG and kind.threshold == 1:
                alive = False
            else:
                alive = any(children)
            self._live[key] = alive
        return self._live[key]

    def candidates(self, level: int, residual: Residual) -> Iterator[Tuple[str, ...]]:
        kind, _ = self.sentence.prefix[level]
        alive = [label for label in self.labels if self.live(level + 1, self.evaluator.child(level, residual, label))]
        if kind.quantifier is QuantifierType.EXISTS:
            yield from ((label,) for label in alive)
        elif kind.quantifier is QuantifierType.FORALL:
            if len(alive) == len(self.labels):
                yield self.labels
        elif kind.quantifier is QuantifierType.WEAK and kind.threshold == 0:
            yield ()
        elif not (kind.quantifier is QuantifierType.STRONG and kind.threshold == 1):
            for size in range(len(alive), 0, -1):
                yield from combinations(alive, size)

    def constrain(self, system: LinSystem, level: int, members: Tuple[str, ...]) -> LinSystem:
        kind, _ = self.sentence.prefix[level]
        if kind.is_classical or (kind.quantifier is QuantifierType.WEAK and kind.threshold == 0):
            return system
        relation = ">" if kind.quantifier is QuantifierType.STRONG else ">="
        return system.add({label: 1 for label in members}, relation, kind.threshold)

    def run(self) -> Optional[Tuple[QTree, Dict[FrozenSet[int], Fraction]]]:
        root = self.evaluator.root()
        if not self.live(0, root):
            return None
        if self.height == 0:
            outcome = feasible(self.system)
            return (QTree(()), {self.cells[label]: outcome.point[label] for label in self.labels}) if outcome else None
        found = self._search({}, [(0, root)], self.system)
        if found is None:
            return None
        assignment, point = found
        masses = {self.cells[label]: point[label] for label in self.labels}
        return QTree(self.sentence.kinds, self._build(assignment, 0, root)), masses

    def _search(
        self,
        assignment: Dict[_Class, Tuple[str, ...]],
        pending: List[_Class],
        system: LinSystem,
    ) -> Optional[Tuple[Dict[_Class, Tuple[str, ...]], Dict[str, Fraction]]]:
        while pending and pending[0] in assignment:
            pending = pending[1:]
        if not pending:
            outcome = feasible(system)
            return (assignment, outcome.point) if outcome else None
        (level, residual), rest = pending[0], pending[1:]
        for members in self.candidates(level, residual):
            extended = self.constrain(system, level, members)
            if extended is not system and not feasible(extended):
                continue
            children = []
            if level + 1 < self.height:
                children = [(level + 1, self.evaluator.child(level, residual, label)) for label in members]
            found = self._search({**assignment, (level, residual): members}, rest + children, extended)
            if found is not None:
                return found
        return None

    def _build(self, assignment: Dict[_Class, Tuple[str, ...]], level: int, residual: Residual) -> QNode:
        members = assignment[(level, residual)]
        if level + 1 == self.height:
            return QNode(members)
        return QNode(members, tuple(
            self._build(assignment, level + 1, self.evaluator.child(level, residual, label)) for label in members
        ))


class MonadicDecider:
    """
    Decides q-satisfiability over a monadic relational signature.

    Every satisfiable sentence has a simple model whose elements are cells
    (sets of predicates), so universes are tried as sets of cells in
    increasing size; for each, node sets are searched class by class with
    the masses left to a linear system.
    """

    def __init__(self, signature: Signature, *, logger: Optional[logging.Logger] = None) -> None:
        if not signature.is_monadic_relational:
            raise ValueError(CFG.ERRORS.NOT_MONADIC)
        self.signature = signature
        self.cells = all_cells(signature)
        self._logger = logger or logging.getLogger(self.__class__.__name__)

    def decide(
        self,
        sentence: Union[Formula, QSentence],
        semantics: Semantics = Semantics.E,
        epsilon: Rational = 0,
    ) -> DecisionOutcome:
        epsilon = Fraction(epsilon)
        check_epsilon(epsilon)
        if isinstance(sentence, QSentence):
            q, positive = sentence, False
        elif semantics is Semantics.F:
            if epsilon == 1:
                raise ValueError(CFG.ERRORS.F_EPSILON_ONE)
            q, positive = f_coerce(sentence, epsilon), True
        else:
            q, positive = e_coerce(sentence, epsilon), False
        self.signature.check(q)
        self._logger.debug(CFG.LOGS.MONADIC_CELLS.format(cells=len(self.cells), predicates=len(self.signature.predicates)))
        for size in range(1, len(self.cells) + 1):
            for universe in combinations(self.cells, size):
                self._logger.debug(CFG.LOGS.MONADIC_UNIVERSE.format(universe=[sorted(cell) for cell in universe]))
                found = _TreeSearch(self.signature, universe, q, positive).run()
                if found is None:
                    continue
                tree, masses = found
                witness = simple_model(self.signature, masses)
                if not eval_q(witness, q) or not verify_qtree(witness, q, tree):
                    raise RuntimeError(CFG.ERRORS.WITNESS_REJECTED)
                self._logger.info(CFG.LOGS.MONADIC_WITNESS.format(
                    size=witness.size, masses=", ".join(f"{label}={witness.measure[label]}" for label in witness.universe)))
                return DecisionOutcome(Verdict.SATISFIABLE, witness=witness, certificate=tree)
        self._logger.info(CFG.LOGS.MONADIC_UNSATISFIABLE)
        return DecisionOutcome(Verdict.UNSATISFIABLE)


@beartype
def decide_monadic(
    sentence: Union[Formula, QSentence],
    signature: Signature,
    semantics: Semantics = Semantics.E,
    epsilon: Rational = 0,
) -> DecisionOutcome:
    return MonadicDecider(signature).decide(sentence, semantics, epsilon)


# Bounded search


def _first_satisfying(task: Tuple[Sequence[Tuple[int, FiniteModel]], Formula, Fraction, Semantics]) -> Optional[Tuple[int, FiniteModel]]:
    chunk, formula, epsilon, semantics = task
    for index, model in chunk:
        if evaluate(model, formula, epsilon, semantics):
            return index, model
    return None


class FiniteSatSearch:
    """
    Semi-decides finite satisfiability by walking enumerate_models in order.

    The budget bounds the weight sum (the common denominator of the masses);
    sizes are capped by max_size, which defaults to the budget. With several
    jobs the stream is cut into batches and the lowest satisfying index in a
    batch wins, so the answer does not depend on the number of workers.
    """

    def __init__(
        self,
        signature: Signature,
        *,
        max_size: Optional[int] = None,
        jobs: int = 1,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        if jobs < 1:
            raise ValueError(CFG.ERRORS.BAD_JOBS.format(jobs=jobs))
        self.signature = signature
        self.max_size = max_size
        self.jobs = jobs
        self._logger = logger or logging.getLogger(self.__class__.__name__)

    def run(self, formula: Formula, epsilon: Rational, semantics: Semantics, budget: int) -> DecisionOutcome:
        if budget < 1:
            raise ValueError(CFG.ERRORS.BAD_BUDGET.format(budget=budget))
        epsilon = Fraction(epsilon)
        check_epsilon(epsilon)
        _require_sentence(formula)
        self.signature.check(formula)
        checked = 0

        def counted() -> Iterator[Tuple[int, FiniteModel]]:
            nonlocal checked
            for index, model in enumerate(enumerate_models(self.signature, self.max_size or budget, budget)):
                checked = index + 1
                yield index, model

        hit = self._scan(counted(), formula, epsilon, semantics)
        if hit is None:
            self._logger.info(CFG.LOGS.ENUM_EXHAUSTED.format(budget=budget, checked=checked))
            return DecisionOutcome(Verdict.BUDGET_EXHAUSTED)
        index, model = hit
        self._logger.info(CFG.LOGS.ENUM_WITNESS.format(index=index, size=model.size))
        return DecisionOutcome(Verdict.SATISFIABLE, witness=model)

    def _scan(
        self,
        models: Iterator[Tuple[int, FiniteModel]],
        formula: Formula,
        epsilon: Fraction,
        semantics: Semantics,
    ) -> Optional[Tuple[int, FiniteModel]]:
        if self.jobs == 1:
            return _first_satisfying((models, formula, epsilon, semantics))
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            while True:
                batch = list(islice(models, CFG.PARAMETERS.PARALLEL_BATCH * self.jobs))
                if not batch:
                    return None
                tasks = [(batch[start::self.jobs], formula, epsilon, semantics) for start in range(self.jobs)]
                hits = [hit for hit in pool.map(_first_satisfying, tasks) if hit is not None]
                if hits:
                    return min(hits, key=lambda hit: hit[0])


@beartype
def semi_decide_finite_sat(
    formula: Formula,
    epsilon: Rational,
    semantics: Semantics,
    budget: int,
    signature: Optional[Signature] = None,
    max_size: Optional[int] = None,
    jobs: int = 1,
) -> DecisionOutcome:
    search = FiniteSatSearch(signature or Signature.infer(formula), max_size=max_size, jobs=jobs)
    return search.run(formula, epsilon, semantics, budget)


class SimultaneousModelSearch:
    """
    Bounded search for one finite model q-satisfying several sentences.

    The measure is fixed first; symbols are then interpreted one at a time,
    preferring a symbol that completes some sentence, and every sentence
    whose symbols are all interpreted is checked as soon as possible,
    shortest prefix first.
    """

    def __init__(
        self,
        signature: Signature,
        *,
        max_size: int = CFG.PARAMETERS.DEFAULT_SIMULTANEOUS_SIZE,
        max_denominator: int = CFG.PARAMETERS.DEFAULT_SIMULTANEOUS_DENOMINATOR,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        self.signature = signature
        self.max_size = max_size
        self.max_denominator = max_denominator
        self._logger = logger or logging.getLogger(self.__class__.__name__)

    def _symbol_order(self, needs: Sequence[FrozenSet[str]], thresholded: Sequence[bool]) -> List[str]:
        """
        Symbols completing a sentence go first: those completing the most
        sentences with a threshold strictly between 0 and 1, then the cheapest,
        then those completing the most sentences. Otherwise cheapest first.
        """
        def cost(name: str) -> Tuple[int, str]:
            return (self.signature.arity(name) or 0), name

        remaining = sorted(set().union(*needs), key=cost) if needs else []
        order: List[str] = []
        while remaining:
            done = set(order)

            def completed(name: str) -> List[int]:
                return [index for index, need in enumerate(needs) if need <= done | {name} and not need <= done]

            def rank(name: str) -> Tuple[int, int, int, str]:
                indices = completed(name)
                return -sum(thresholded[index] for index in indices), cost(name)[0], -len(indices), name

            completing = [name for name in remaining if completed(name)]
            if completing:
                chosen = min(completing, key=rank)
            else:
                chosen = min(remaining, key=cost)
            order.append(chosen)
            remaining.remove(chosen)
        return order

    def run(self, sentences: Sequence[QSentence]) -> Optional[FiniteModel]:
        for sentence in sentences:
            self.signature.check(sentence)
        needs = [symbols(sentence.matrix) for sentence in sentences]
        thresholded = [
            any(not kind.is_classical and 0 < kind.threshold < 1 for kind in sentence.kinds) for sentence in sentences
        ]
        order = self._symbol_order(needs, thresholded)
        by_length = sorted(range(len(sentences)), key=lambda index: len(sentences[index].prefix))
        # checks[i + 1] holds the sentences completed once order[i] is interpreted
        checks: List[List[int]] = [[] for _ in range(len(order) + 1)]
        for index in by_length:
            stage = max((order.index(name) + 1 for name in needs[index]), default=0)
            checks[stage].append(index)
        for size in range(1, self.max_size + 1):
            universe = element_labels(size)
            for total in range(1, self.max_denominator + 1):
                for weights in weight_vectors(size, total):
                    measure = {element: Fraction(weight, total) for element, weight in zip(universe, weights)}
                    self._logger.debug(CFG.LOGS.SIMULTANEOUS_UNIVERSE.format(size=size, masses=weights))
                    state = _Staging(self.signature, universe, measure, sentences, order, checks)
                    model = state.complete()
                    if model is not None:
                        self._logger.info(CFG.LOGS.SIMULTANEOUS_FOUND.format(size=size))
                        return model
        return None


class _Staging:
    def __init__(self, signature, universe, measure, sentences, order, checks) -> None:
        self.signature = signature
        self.universe = universe
        self.measure = measure
        self.sentences = sentences
        self.order = order
        self.checks = checks
        self.relations: Dict[str, FrozenSet[Tuple[str, ...]]] = {}
        self.constants: Dict[str, str] = {}

    def model(self) -> FiniteModel:
        constants = {name: self.universe[0] for name in self.signature.constants}
        constants.update(self.constants)
        return FiniteModel(self.signature, self.universe, dict(self.relations), constants, self.measure)

    def passes(self, stage: int) -> bool:
        if not self.checks[stage]:
            return True
        model = self.model()
        return all(eval_q(model, self.sentences[index]) for index in self.checks[stage])

    def complete(self) -> Optional[FiniteModel]:
        if not self.passes(0):
            return None
        return self._assign(0)

    def _assign(self, position: int) -> Optional[FiniteModel]:
        if position == len(self.order):
            return self.model()
        name = self.order[position]
        arity = self.signature.arity(name)
        if arity is None:
            choices: Iterable = self.universe
        else:
            choices = relation_choices(self.universe, arity)
        for choice in choices:
            if arity is None:
                self.constants[name] = choice
            else:
                self.relations[name] = choice
            if self.passes(position + 1):
                found = self._assign(position + 1)
                if found is not None:
                    return found
        self.constants.pop(name, None)
        self.relations.pop(name, None)
        return None


@beartype
def find_simultaneous_model(
    signature: Signature,
    sentences: Sequence[QSentence],
    max_size: int = CFG.PARAMETERS.DEFAULT_SIMULTANEOUS_SIZE,
    max_denominator: int = CFG.PARAMETERS.DEFAULT_SIMULTANEOUS_DENOMINATOR,
) -> Optional[FiniteModel]:
    """A model with at most max_size elements and masses over denominators <= max_denominator q-satisfying every sentence, or None."""
    search = SimultaneousModelSearch(signature, max_size=max_size, max_denominator=max_denominator)
    return search.run(sentences)
