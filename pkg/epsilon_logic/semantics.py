"""
Truth of formulas in measured finite models.

Three readings are supported. Under E-semantics a universal holds when the
set of witnesses has measure at least 1 - epsilon; under F-semantics an
existential holds when the set of witnesses has measure strictly above
epsilon; q-sentences spell their thresholds out in the prefix and are
evaluated through q-trees.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from beartype import beartype
from beartype.typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import config as CFG
from .models import FiniteModel, classical_eval
from .syntax import (
    And, Atom, Const, Element, Equal, Forall, Formula, Iff, Implies, Not, Or,
    QSentence, QuantifierKind, QuantifierType, Rational, Term, Var,
    free_variables, fresh_variable, substitute, to_nnf,
)
from .tools import check_epsilon

Residual = Union[bool, Formula]


class Semantics(Enum):
    E = "E"
    F = "F"


def _measure_reaches(
    model: FiniteModel,
    test: Callable[[str], bool],
    threshold: Fraction,
    strict: bool,
) -> bool:
    """Whether the elements passing `test` have measure >= threshold (> if strict)."""

    def reached(mass: Fraction) -> bool:
        return mass > threshold if strict else mass >= threshold

    achieved = Fraction(0)
    remaining = model.mass(model.universe)
    for element in model.universe:
        if reached(achieved):
            return True
        mass = model.measure[element]
        if mass == 0:
            continue
        remaining -= mass
        if test(element):
            achieved += mass
        elif not reached(achieved + remaining):
            return False
    return reached(achieved)


def _holds(model: FiniteModel, formula: Formula, env: Dict[str, str], epsilon: Fraction, semantics: Semantics) -> bool:
    # formula is in NNF
    if isinstance(formula, (Atom, Equal)):
        return model.holds(formula, env)
    if isinstance(formula, Not):
        return not _holds(model, formula.body, env, epsilon, semantics)
    if isinstance(formula, And):
        return all(_holds(model, child, env, epsilon, semantics) for child in formula.children)
    if isinstance(formula, Or):
        return any(_holds(model, child, env, epsilon, semantics) for child in formula.children)

    def instance(element: str) -> bool:
        return _holds(model, formula.body, {**env, formula.var: element}, epsilon, semantics)

    if isinstance(formula, Forall):
        if semantics is Semantics.E:
            return _measure_reaches(model, instance, 1 - epsilon, strict=False)
        return all(instance(element) for element in model.universe)
    if semantics is Semantics.F:
        return _measure_reaches(model, instance, epsilon, strict=True)
    return any(instance(element) for element in model.universe)


@beartype
def evaluate(
    model: FiniteModel,
    formula: Union[Formula, QSentence],
    epsilon: Rational,
    semantics: Semantics,
    env: Optional[Mapping[str, str]] = None,
) -> bool:
    """Truth under the given semantics; q-sentences ignore epsilon and semantics."""
    if isinstance(formula, QSentence):
        return eval_q(model, formula, env)
    epsilon = Fraction(epsilon)
    check_epsilon(epsilon)
    return _holds(model, to_nnf(formula), dict(env or {}), epsilon, semantics)


@beartype
def eval_e(model: FiniteModel, formula: Formula, epsilon: Rational, env: Optional[Mapping[str, str]] = None) -> bool:
    return evaluate(model, formula, epsilon, Semantics.E, env)


@beartype
def eval_f(model: FiniteModel, formula: Formula, epsilon: Rational, env: Optional[Mapping[str, str]] = None) -> bool:
    return evaluate(model, formula, epsilon, Semantics.F, env)


# Partial evaluation


def _ground_term(term: Term, env: Mapping[str, str]) -> Term:
    if isinstance(term, Var) and term.name in env:
        return Element(env[term.name])
    return term


def _is_ground(term: Term) -> bool:
    return isinstance(term, (Element, Const))


def _negate(value: Residual) -> Residual:
    return (not value) if isinstance(value, bool) else Not(value)


@beartype
def ground(formula: Residual, model: FiniteModel, env: Mapping[str, str]) -> Residual:
    """
    Substitutes elements for variables in a quantifier-free formula and
    simplifies every atom that became ground to its truth value.

    Returns a bool once nothing is left to decide.
    """
    if isinstance(formula, bool):
        return formula
    return _ground(formula, model, env)


def _ground(formula: Formula, model: FiniteModel, env: Mapping[str, str]) -> Residual:
    if isinstance(formula, Atom):
        terms = tuple(_ground_term(term, env) for term in formula.terms)
        if all(_is_ground(term) for term in terms):
            return model.holds(Atom(formula.pred, terms), {})
        return Atom(formula.pred, terms)
    if isinstance(formula, Equal):
        left, right = _ground_term(formula.left, env), _ground_term(formula.right, env)
        if _is_ground(left) and _is_ground(right):
            return model.interpret(left, {}) == model.interpret(right, {})
        return Equal(left, right)
    if isinstance(formula, Not):
        return _negate(_ground(formula.body, model, env))
    if isinstance(formula, (And, Or)):
        conjunctive = isinstance(formula, And)
        parts: List[Formula] = []
        for child in formula.children:
            value = _ground(child, model, env)
            if isinstance(value, bool):
                if value != conjunctive:
                    return value
                continue
            parts.append(value)
        if not parts:
            return conjunctive
        if len(parts) == 1:
            return parts[0]
        return And(tuple(parts)) if conjunctive else Or(tuple(parts))
    if isinstance(formula, Implies):
        return _ground(Or((Not(formula.premise), formula.conclusion)), model, env)
    if isinstance(formula, Iff):
        left, right = _ground(formula.left, model, env), _ground(formula.right, model, env)
        if isinstance(left, bool) and isinstance(right, bool):
            return left == right
        if isinstance(left, bool):
            return right if left else _negate(right)
        if isinstance(right, bool):
            return left if right else _negate(left)
        return Iff(left, right)
    raise ValueError(CFG.ERRORS.CONTAINS_QUANTIFIER)


# Q-trees


@beartype
@dataclass(frozen=True)
class QNode:
    """A tree node: the chosen set of elements, and one child per element below the last level."""

    members: Tuple[str, ...]
    children: Tuple["QNode", ...] = ()

    def child(self, element: str) -> "QNode":
        return self.children[self.members.index(element)]


@beartype
@dataclass(frozen=True)
class Bran:
    """A root-to-leaf path: one element picked from each node along the way."""

    steps: Tuple[Tuple[str, QNode], ...]

    @property
    def elements(self) -> Tuple[str, ...]:
        return tuple(element for element, _ in self.steps)


@beartype
@dataclass(frozen=True)
class QTree:
    levels: Tuple[QuantifierKind, ...]
    root: Optional[QNode] = None

    @property
    def height(self) -> int:
        return len(self.levels)

    def brans(self) -> Iterator[Bran]:
        if self.root is None:
            yield Bran(())
            return
        yield from self._walk(self.root, 0, ())

    def _walk(self, node: QNode, depth: int, steps: tuple) -> Iterator[Bran]:
        for index, element in enumerate(node.members):
            path = steps + ((element, node),)
            if depth + 1 == self.height:
                yield Bran(path)
            else:
                yield from self._walk(node.children[index], depth + 1, path)

    def render(self) -> str:
        """One node per line: `level k [set: a b c] (via parent-element)`."""
        if self.root is None:
            return ""
        lines: List[str] = []

        def visit(node: QNode, depth: int, via: Optional[str]) -> None:
            suffix = "" if via is None else f" (via {via})"
            lines.append(f"{'  ' * depth}level {depth + 1} [set: {' '.join(node.members)}]{suffix}")
            for element, child in zip(node.members, node.children):
                visit(child, depth + 1, element)

        visit(self.root, 0, None)
        return "\n".join(lines) + "\n"


class QEvaluator:
    """
    Decides the q-truth of one sentence in one model.

    A node at each level is the maximal set of elements whose subtree can be
    completed; the level condition is then checked on that set. Residual
    matrices (what is left after substituting the elements chosen so far)
    are memoized per level, so equal residuals are decided once.
    """

    def __init__(self, model: FiniteModel, sentence: QSentence, *, logger: Optional[logging.Logger] = None) -> None:
        self.model = model
        self.sentence = sentence
        self._matrix = to_nnf(sentence.matrix)
        self._total = model.mass(model.universe)
        self._memo: Dict[Tuple[int, Formula], bool] = {}
        self._logger = logger or logging.getLogger(self.__class__.__name__)

    def root(self, env: Optional[Mapping[str, str]] = None) -> Residual:
        return ground(self._matrix, self.model, env or {})

    def child(self, level: int, residual: Residual, element: str) -> Residual:
        _, name = self.sentence.prefix[level]
        return ground(residual, self.model, {name: element})

    def holds(self, env: Optional[Mapping[str, str]] = None) -> bool:
        return self.remainder(0, self.root(env))

    def remainder(self, level: int, residual: Residual) -> bool:
        """Truth of the prefix from `level` on, applied to the residual matrix."""
        if isinstance(residual, bool):
            return self._constant(level, residual)
        if level == len(self.sentence.prefix):
            raise ValueError(CFG.ERRORS.UNBOUND_VARIABLE.format(name=residual))
        key = (level, residual)
        cached = self._memo.get(key)
        if cached is None:
            kind, name = self.sentence.prefix[level]
            if name not in free_variables(residual):
                # every element leaves the same residual
                cached = self._fold(kind, self.remainder(level + 1, residual))
            else:
                cached = self._quantify(level, lambda element: self.remainder(level + 1, self.child(level, residual, element)))
            self._memo[key] = cached
        return cached

    def members(self, level: int, residual: Residual) -> Tuple[str, ...]:
        """The maximal set of elements at this level whose subtrees succeed."""
        return tuple(
            element for element in self.model.universe
            if self.remainder(level + 1, self.child(level, residual, element))
        )

    def node(self, level: int, residual: Residual) -> QNode:
        kind, _ = self.sentence.prefix[level]
        members = self.members(level, residual)
        if kind.quantifier is QuantifierType.EXISTS:
            members = members[:1]
        if level + 1 == len(self.sentence.prefix):
            return QNode(members)
        return QNode(members, tuple(self.node(level + 1, self.child(level, residual, element)) for element in members))

    def _quantify(self, level: int, test: Callable[[str], bool]) -> bool:
        kind, _ = self.sentence.prefix[level]
        if kind.quantifier is QuantifierType.EXISTS:
            return any(test(element) for element in self.model.universe)
        if kind.quantifier is QuantifierType.FORALL:
            return all(test(element) for element in self.model.universe)
        return _measure_reaches(self.model, test, kind.threshold, strict=kind.quantifier is QuantifierType.STRONG)

    def _fold(self, kind: QuantifierKind, value: bool) -> bool:
        if kind.is_classical:
            return value
        return kind.admits(self._total if value else Fraction(0))

    def _constant(self, level: int, value: bool) -> bool:
        for kind in reversed(self.sentence.kinds[level:]):
            value = self._fold(kind, value)
        return value


@beartype
def eval_q(model: FiniteModel, sentence: QSentence, env: Optional[Mapping[str, str]] = None) -> bool:
    """
    Whether some q-tree for the sentence exists over the model.

    `env` binds variables outside the prefix; closed sentences need none.
    """
    return QEvaluator(model, sentence).holds(env)


@beartype
def find_qtree(model: FiniteModel, sentence: QSentence) -> Optional[QTree]:
    """
    A q-tree witnessing the sentence, or None.

    Nodes are maximal sets; EXISTS nodes keep only their first element.
    """
    evaluator = QEvaluator(model, sentence)
    root = evaluator.root()
    if not evaluator.remainder(0, root):
        evaluator._logger.debug(CFG.LOGS.QTREE_MISSING)
        return None
    evaluator._logger.debug(CFG.LOGS.QTREE_FOUND.format(height=len(sentence.prefix)))
    if not sentence.prefix:
        return QTree(())
    return QTree(sentence.kinds, evaluator.node(0, root))


def _check_shape(model: FiniteModel, node: QNode, depth: int, height: int) -> None:
    if len(set(node.members)) != len(node.members):
        raise ValueError(CFG.ERRORS.MALFORMED_TREE.format(level=depth + 1))
    for element in node.members:
        if element not in model.measure:
            raise ValueError(CFG.ERRORS.UNKNOWN_ELEMENT.format(label=element, where=f"level {depth + 1}"))
    if depth + 1 == height:
        if node.children:
            raise ValueError(CFG.ERRORS.MALFORMED_TREE.format(level=depth + 1))
        return
    if len(node.children) != len(node.members):
        raise ValueError(CFG.ERRORS.MALFORMED_TREE.format(level=depth + 1))
    for child in node.children:
        _check_shape(model, child, depth + 1, height)


def _level_holds(model: FiniteModel, kind: QuantifierKind, members: Tuple[str, ...]) -> bool:
    if kind.quantifier is QuantifierType.EXISTS:
        return len(members) >= 1
    if kind.quantifier is QuantifierType.FORALL:
        return set(members) == set(model.universe)
    return kind.admits(model.mass(members))


def _levels_hold(model: FiniteModel, kinds: Sequence[QuantifierKind], node: QNode, depth: int) -> bool:
    if not _level_holds(model, kinds[depth], node.members):
        return False
    return all(_levels_hold(model, kinds, child, depth + 1) for child in node.children)


def _check_tree(model: FiniteModel, tree: QTree, height: int) -> None:
    if tree.height != height:
        raise ValueError(CFG.ERRORS.TREE_HEIGHT.format(height=tree.height, length=height))
    if height == 0:
        return
    if tree.root is None:
        raise ValueError(CFG.ERRORS.MALFORMED_TREE.format(level=1))
    _check_shape(model, tree.root, 0, height)


@beartype
def verify_levels(model: FiniteModel, levels: Sequence[QuantifierKind], tree: QTree) -> bool:
    """Whether the tree satisfies the level conditions alone, with no matrix."""
    _check_tree(model, tree, len(levels))
    if tree.root is None:
        return True
    return _levels_hold(model, levels, tree.root, 0)


@beartype
def verify_qtree(model: FiniteModel, sentence: QSentence, tree: QTree) -> bool:
    """Checks the level conditions of the sentence's prefix and the matrix on every bran."""
    _check_tree(model, tree, len(sentence.prefix))
    if tree.root is None:
        return classical_eval(model, sentence.matrix)
    if not _levels_hold(model, sentence.kinds, tree.root, 0):
        return False
    names = sentence.variables
    return all(classical_eval(model, sentence.matrix, dict(zip(names, bran.elements))) for bran in tree.brans())


@beartype
def wedge(first: QTree, second: QTree) -> QTree:
    """Hangs a copy of `second` below every leaf element of `first`."""
    if first.root is None:
        return second
    if second.root is None:
        return first
    height = first.height

    def graft(node: QNode, depth: int) -> QNode:
        if depth + 1 == height:
            return QNode(node.members, tuple(second.root for _ in node.members))
        return QNode(node.members, tuple(graft(child, depth + 1) for child in node.children))

    return QTree(first.levels + second.levels, graft(first.root, 0))


@beartype
def wedge_all(trees: Sequence[QTree]) -> QTree:
    result = QTree(())
    for tree in trees:
        result = wedge(result, tree)
    return result


@beartype
def conjoin_qsentences(first: QSentence, second: QSentence) -> QSentence:
    """
    The prefix of `first`, then that of `second` renamed apart, over the
    conjunction of the matrices.
    """
    used = set(first.variables) | set(second.variables)
    renaming: Dict[str, Term] = {}
    prefix = []
    for kind, name in second.prefix:
        if name in first.variables:
            fresh = fresh_variable(name, used)
            used.add(fresh)
            renaming[name] = Var(fresh)
            name = fresh
        prefix.append((kind, name))
    return QSentence(first.prefix + tuple(prefix), And.of(first.matrix, substitute(second.matrix, renaming)))
