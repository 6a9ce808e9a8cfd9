"""
Relational first-order formulas and prenex q-sentences.

Formulas are immutable trees. Every transformation in this module returns a
new tree and never mutates its input.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto
from fractions import Fraction
from itertools import count

from beartype import beartype
from beartype.typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from . import config as CFG
from .tools import check_epsilon

Rational = Union[Fraction, int]


class Term:
    """Base class of argument terms."""


@beartype
@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@beartype
@dataclass(frozen=True)
class Const(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@beartype
@dataclass(frozen=True)
class Element(Term):
    """A universe element standing in for a variable in a ground instance."""

    label: str

    def __str__(self) -> str:
        return self.label


class Formula:
    """Base class of first-order formulas."""

    def __str__(self) -> str:
        return format_formula(self)


@beartype
@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    terms: Tuple[Term, ...]


@beartype
@dataclass(frozen=True)
class Equal(Formula):
    left: Term
    right: Term


@beartype
@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@beartype
@dataclass(frozen=True)
class And(Formula):
    """Conjunction. The empty conjunction is the constant true."""

    children: Tuple[Formula, ...] = ()

    @classmethod
    def of(cls, *parts: Formula) -> Formula:
        """Builds a flattened conjunction, collapsing a single part to itself."""
        flat: List[Formula] = []
        for part in parts:
            flat.extend(part.children if isinstance(part, And) else (part,))
        return flat[0] if len(flat) == 1 else cls(tuple(flat))


@beartype
@dataclass(frozen=True)
class Or(Formula):
    """Disjunction. The empty disjunction is the constant false."""

    children: Tuple[Formula, ...] = ()

    @classmethod
    def of(cls, *parts: Formula) -> Formula:
        flat: List[Formula] = []
        for part in parts:
            flat.extend(part.children if isinstance(part, Or) else (part,))
        return flat[0] if len(flat) == 1 else cls(tuple(flat))


@beartype
@dataclass(frozen=True)
class Implies(Formula):
    premise: Formula
    conclusion: Formula


@beartype
@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@beartype
@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@beartype
@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


TRUE = And(())
FALSE = Or(())


class QuantifierType(Enum):
    """Quantifiers of the q-language."""

    EXISTS = auto()
    FORALL = auto()
    WEAK = auto()
    STRONG = auto()

    @property
    def keyword(self) -> str:
        return {
            QuantifierType.EXISTS: CFG.GRAMMAR.EXISTS,
            QuantifierType.FORALL: CFG.GRAMMAR.FORALL,
            QuantifierType.WEAK: CFG.GRAMMAR.WEAK,
            QuantifierType.STRONG: CFG.GRAMMAR.STRONG,
        }[self]


@beartype
@dataclass(frozen=True)
class QuantifierKind:
    """
    A quantifier together with its threshold.

    WEAK(t) holds of a set of measure at least t, STRONG(t) of a set of
    measure strictly above t. EXISTS and FORALL carry no threshold.
    """

    quantifier: QuantifierType
    threshold: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.quantifier in (QuantifierType.WEAK, QuantifierType.STRONG):
            if self.threshold is None:
                raise ValueError(CFG.ERRORS.THRESHOLD_REQUIRED.format(kind=self.quantifier.name))
            if not 0 <= self.threshold <= 1:
                raise ValueError(CFG.ERRORS.THRESHOLD_RANGE.format(value=self.threshold))
        elif self.threshold is not None:
            raise ValueError(CFG.ERRORS.THRESHOLD_FORBIDDEN.format(kind=self.quantifier.name))

    def __str__(self) -> str:
        if self.threshold is None:
            return self.quantifier.keyword
        return f"{self.quantifier.keyword} {self.threshold}"

    @property
    def is_classical(self) -> bool:
        return self.quantifier in (QuantifierType.EXISTS, QuantifierType.FORALL)

    def admits(self, mass: Fraction) -> bool:
        """Whether a set of the given measure meets a WEAK or STRONG threshold."""
        if self.quantifier is QuantifierType.WEAK:
            return mass >= self.threshold
        if self.quantifier is QuantifierType.STRONG:
            return mass > self.threshold
        raise ValueError(CFG.ERRORS.THRESHOLD_FORBIDDEN.format(kind=self.quantifier.name))

    # Convenient constructors
    @classmethod
    def EXISTS(cls) -> "QuantifierKind":
        return cls(QuantifierType.EXISTS)

    @classmethod
    def FORALL(cls) -> "QuantifierKind":
        return cls(QuantifierType.FORALL)

    @classmethod
    def WEAK(cls, threshold: Rational) -> "QuantifierKind":
        return cls(QuantifierType.WEAK, Fraction(threshold))

    @classmethod
    def STRONG(cls, threshold: Rational) -> "QuantifierKind":
        return cls(QuantifierType.STRONG, Fraction(threshold))


Prefix = Tuple[Tuple[QuantifierKind, str], ...]
ClassicalPrefix = Tuple[Tuple[QuantifierType, str], ...]


@beartype
@dataclass(frozen=True)
class QSentence:
    """A prenex q-sentence: a quantifier prefix over a quantifier-free matrix."""

    prefix: Prefix
    matrix: Formula

    def __post_init__(self) -> None:
        seen: Set[str] = set()
        for _, name in self.prefix:
            if name in seen:
                raise ValueError(CFG.ERRORS.DUPLICATE_PREFIX_VARIABLE.format(name=name))
            seen.add(name)
        if not is_quantifier_free(self.matrix):
            raise ValueError(CFG.ERRORS.Q_MATRIX_NOT_QUANTIFIER_FREE)
        free = free_variables(self.matrix) - seen
        if free:
            raise ValueError(CFG.ERRORS.FREE_VARIABLES.format(names=", ".join(sorted(free))))

    def __str__(self) -> str:
        return format_qsentence(self)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(name for _, name in self.prefix)

    @property
    def kinds(self) -> Tuple[QuantifierKind, ...]:
        return tuple(kind for kind, _ in self.prefix)

    @property
    def is_classical(self) -> bool:
        return all(kind.is_classical for kind in self.kinds)

    def to_formula(self) -> Formula:
        """The equivalent first-order sentence of a q-sentence without q-quantifiers."""
        if not self.is_classical:
            raise ValueError(CFG.ERRORS.Q_QUANTIFIERS_PRESENT)
        return quantify(tuple((kind.quantifier, name) for kind, name in self.prefix), self.matrix)


@beartype
@dataclass(frozen=True)
class Signature:
    """Predicate symbols with arities, constant symbols and the equality flag."""

    predicates: Tuple[Tuple[str, int], ...] = ()
    constants: Tuple[str, ...] = ()
    has_equality: bool = False

    def __post_init__(self) -> None:
        seen: Set[str] = set()
        for name, arity in self.predicates:
            if arity < 1:
                raise ValueError(CFG.ERRORS.BAD_ARITY.format(name=name, arity=arity))
            if name in seen:
                raise ValueError(CFG.ERRORS.DUPLICATE_SYMBOL.format(name=name))
            seen.add(name)
        for name in self.constants:
            if name in seen:
                raise ValueError(CFG.ERRORS.DUPLICATE_SYMBOL.format(name=name))
            seen.add(name)

    @property
    def predicate_names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.predicates)

    @property
    def is_monadic_relational(self) -> bool:
        return not self.constants and not self.has_equality and all(arity == 1 for _, arity in self.predicates)

    def arity(self, name: str) -> Optional[int]:
        for predicate, arity in self.predicates:
            if predicate == name:
                return arity
        return None

    def check(self, formula: Union[Formula, QSentence]) -> None:
        """Raises ValueError unless every symbol of the formula is declared with the right arity."""
        body = formula.matrix if isinstance(formula, QSentence) else formula
        for atom in atoms(body):
            if isinstance(atom, Equal):
                if not self.has_equality:
                    raise ValueError(CFG.ERRORS.EQUALITY_UNDECLARED)
                terms: Tuple[Term, ...] = (atom.left, atom.right)
            else:
                arity = self.arity(atom.pred)
                if arity is None:
                    raise ValueError(CFG.ERRORS.UNDECLARED_PREDICATE.format(name=atom.pred))
                if arity != len(atom.terms):
                    raise ValueError(CFG.ERRORS.ARITY_MISMATCH.format(
                        name=atom.pred, expected=arity, actual=len(atom.terms)))
                terms = atom.terms
            for term in terms:
                if isinstance(term, Const) and term.name not in self.constants:
                    raise ValueError(CFG.ERRORS.UNDECLARED_CONSTANT.format(name=term.name))

    def extend(
        self,
        predicates: Sequence[Tuple[str, int]] = (),
        constants: Sequence[str] = (),
    ) -> "Signature":
        return Signature(
            predicates=self.predicates + tuple(p for p in predicates if p not in self.predicates),
            constants=self.constants + tuple(c for c in constants if c not in self.constants),
            has_equality=self.has_equality,
        )

    @classmethod
    def infer(cls, *formulas: Union[Formula, QSentence]) -> "Signature":
        """The smallest signature declaring every symbol the formulas use."""
        predicates: Dict[str, int] = {}
        constants: Dict[str, None] = {}
        equality = False
        for formula in formulas:
            body = formula.matrix if isinstance(formula, QSentence) else formula
            for atom in atoms(body):
                if isinstance(atom, Equal):
                    equality = True
                    terms: Tuple[Term, ...] = (atom.left, atom.right)
                else:
                    predicates.setdefault(atom.pred, len(atom.terms))
                    terms = atom.terms
                for term in terms:
                    if isinstance(term, Const):
                        constants.setdefault(term.name)
        return cls(tuple(predicates.items()), tuple(constants), equality)


@beartype
@dataclass(frozen=True)
class PropVar:
    """The propositional variable standing for one atom, e.g. p(R,x,y)."""

    pred: str
    index: Tuple[str, ...]

    def __str__(self) -> str:
        return f"p({','.join((self.pred,) + self.index)})"


@beartype
@dataclass(frozen=True)
class PropFormula:
    """A quantifier-free, equality-free matrix read as a propositional formula."""

    matrix: Formula

    def __post_init__(self) -> None:
        if not is_quantifier_free(self.matrix):
            raise ValueError(CFG.ERRORS.CONTAINS_QUANTIFIER)
        for atom in atoms(self.matrix):
            if isinstance(atom, Equal):
                raise ValueError(CFG.ERRORS.CONTAINS_EQUALITY)
            if any(isinstance(term, Element) for term in atom.terms):
                raise ValueError(CFG.ERRORS.CONTAINS_ELEMENT)

    @property
    def variables(self) -> Tuple[PropVar, ...]:
        """Distinct propositional variables in order of first occurrence."""
        seen: Dict[PropVar, None] = {}
        for atom in atoms(self.matrix):
            seen.setdefault(_prop_var(atom))
        return tuple(seen)

    def evaluate(self, assignment: Mapping[PropVar, bool]) -> bool:
        return _prop_eval(self.matrix, assignment)

    def __str__(self) -> str:
        return format_formula(self.matrix)


# Traversal


def _term_name(term: Term) -> str:
    return term.label if isinstance(term, Element) else term.name


def _prop_var(atom: Atom) -> PropVar:
    return PropVar(atom.pred, tuple(_term_name(term) for term in atom.terms))


def _prop_eval(formula: Formula, assignment: Mapping[PropVar, bool]) -> bool:
    if isinstance(formula, Atom):
        return assignment[_prop_var(formula)]
    if isinstance(formula, Not):
        return not _prop_eval(formula.body, assignment)
    if isinstance(formula, And):
        return all(_prop_eval(child, assignment) for child in formula.children)
    if isinstance(formula, Or):
        return any(_prop_eval(child, assignment) for child in formula.children)
    if isinstance(formula, Implies):
        return not _prop_eval(formula.premise, assignment) or _prop_eval(formula.conclusion, assignment)
    if isinstance(formula, Iff):
        return _prop_eval(formula.left, assignment) == _prop_eval(formula.right, assignment)
    raise ValueError(CFG.ERRORS.CONTAINS_QUANTIFIER)


def subformulas(formula: Formula) -> Tuple[Formula, ...]:
    """Immediate subformulas."""
    if isinstance(formula, Not):
        return (formula.body,)
    if isinstance(formula, (And, Or)):
        return formula.children
    if isinstance(formula, Implies):
        return (formula.premise, formula.conclusion)
    if isinstance(formula, Iff):
        return (formula.left, formula.right)
    if isinstance(formula, (Forall, Exists)):
        return (formula.body,)
    return ()


def atoms(formula: Formula) -> Iterator[Union[Atom, Equal]]:
    """Atomic subformulas, left to right, with repetitions."""
    if isinstance(formula, (Atom, Equal)):
        yield formula
        return
    for child in subformulas(formula):
        yield from atoms(child)


@beartype
def contains_equality(formula: Formula) -> bool:
    return any(isinstance(atom, Equal) for atom in atoms(formula))


@beartype
def symbols(formula: Formula) -> FrozenSet[str]:
    """Predicate and constant symbols used by the formula."""
    names: Set[str] = set()
    for atom in atoms(formula):
        terms = (atom.left, atom.right) if isinstance(atom, Equal) else atom.terms
        if isinstance(atom, Atom):
            names.add(atom.pred)
        names.update(term.name for term in terms if isinstance(term, Const))
    return frozenset(names)


@beartype
def free_variables(formula: Formula) -> FrozenSet[str]:
    return frozenset(_free(formula, frozenset()))


def _free(formula: Formula, bound: FrozenSet[str]) -> Iterator[str]:
    if isinstance(formula, (Atom, Equal)):
        terms = (formula.left, formula.right) if isinstance(formula, Equal) else formula.terms
        for term in terms:
            if isinstance(term, Var) and term.name not in bound:
                yield term.name
    elif isinstance(formula, (Forall, Exists)):
        yield from _free(formula.body, bound | {formula.var})
    else:
        for child in subformulas(formula):
            yield from _free(child, bound)


@beartype
def variables(formula: Formula) -> FrozenSet[str]:
    """Every variable name occurring in the formula, bound or free."""
    names: Set[str] = set()
    _collect_variables(formula, names)
    return frozenset(names)


def _collect_variables(formula: Formula, names: Set[str]) -> None:
    if isinstance(formula, (Atom, Equal)):
        terms = (formula.left, formula.right) if isinstance(formula, Equal) else formula.terms
        names.update(term.name for term in terms if isinstance(term, Var))
        return
    if isinstance(formula, (Forall, Exists)):
        names.add(formula.var)
    for child in subformulas(formula):
        _collect_variables(child, names)


@beartype
def is_quantifier_free(formula: Formula) -> bool:
    if isinstance(formula, (Forall, Exists)):
        return False
    return all(is_quantifier_free(child) for child in subformulas(formula))


@beartype
def is_prenex(formula: Formula) -> bool:
    return is_quantifier_free(split_prenex(formula)[1])


@beartype
def quantifier_depth(formula: Formula) -> int:
    below = max((quantifier_depth(child) for child in subformulas(formula)), default=0)
    return below + 1 if isinstance(formula, (Forall, Exists)) else below


@beartype
def split_prenex(formula: Formula) -> Tuple[ClassicalPrefix, Formula]:
    """Separates the leading quantifiers from the rest of the formula."""
    prefix: List[Tuple[QuantifierType, str]] = []
    while isinstance(formula, (Forall, Exists)):
        quantifier = QuantifierType.FORALL if isinstance(formula, Forall) else QuantifierType.EXISTS
        prefix.append((quantifier, formula.var))
        formula = formula.body
    return tuple(prefix), formula


@beartype
def quantify(prefix: Sequence[Tuple[QuantifierType, str]], matrix: Formula) -> Formula:
    """Wraps the matrix in a classical prefix, outermost quantifier first."""
    result = matrix
    for quantifier, name in reversed(prefix):
        if quantifier is QuantifierType.FORALL:
            result = Forall(name, result)
        elif quantifier is QuantifierType.EXISTS:
            result = Exists(name, result)
        else:
            raise ValueError(CFG.ERRORS.Q_QUANTIFIERS_PRESENT)
    return result


@beartype
def fresh_variable(base: str, taken: Union[Set[str], FrozenSet[str]]) -> str:
    """The name base_k with the smallest k >= 1 not in taken."""
    for index in count(1):
        candidate = CFG.PARAMETERS.FRESH_VARIABLE.format(base=base, index=index)
        if candidate not in taken:
            return candidate
    raise AssertionError("unreachable")


# Substitution


def _substitute_term(term: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    return term


@beartype
def substitute(formula: Formula, mapping: Mapping[str, Term]) -> Formula:
    """
    Replaces free occurrences of variables.

    Replacement terms must not contain variables bound at the substitution
    site; every caller in this package substitutes fresh names or elements.
    """
    return _substitute(formula, mapping)


def _substitute(formula: Formula, mapping: Mapping[str, Term]) -> Formula:
    if not mapping:
        return formula
    if isinstance(formula, Atom):
        return Atom(formula.pred, tuple(_substitute_term(term, mapping) for term in formula.terms))
    if isinstance(formula, Equal):
        return Equal(_substitute_term(formula.left, mapping), _substitute_term(formula.right, mapping))
    if isinstance(formula, Not):
        return Not(_substitute(formula.body, mapping))
    if isinstance(formula, And):
        return And(tuple(_substitute(child, mapping) for child in formula.children))
    if isinstance(formula, Or):
        return Or(tuple(_substitute(child, mapping) for child in formula.children))
    if isinstance(formula, Implies):
        return Implies(_substitute(formula.premise, mapping), _substitute(formula.conclusion, mapping))
    if isinstance(formula, Iff):
        return Iff(_substitute(formula.left, mapping), _substitute(formula.right, mapping))
    inner = {name: term for name, term in mapping.items() if name != formula.var}
    return type(formula)(formula.var, _substitute(formula.body, inner))


# Normal forms


@beartype
def to_nnf(formula: Formula) -> Formula:
    """
    Negation normal form.

    Implications and biconditionals are expanded, negations are pushed onto
    atoms, and quantifiers are dualized. Applying it twice changes nothing.
    """
    return _nnf(formula, True)


def _nnf(formula: Formula, positive: bool) -> Formula:
    if isinstance(formula, (Atom, Equal)):
        return formula if positive else Not(formula)
    if isinstance(formula, Not):
        return _nnf(formula.body, not positive)
    if isinstance(formula, (And, Or)):
        children = tuple(_nnf(child, positive) for child in formula.children)
        conjunctive = isinstance(formula, And) == positive
        return And(children) if conjunctive else Or(children)
    if isinstance(formula, Implies):
        return _nnf(Or((Not(formula.premise), formula.conclusion)), positive)
    if isinstance(formula, Iff):
        both = And((Implies(formula.left, formula.right), Implies(formula.right, formula.left)))
        return _nnf(both, positive)
    body = _nnf(formula.body, positive)
    universal = isinstance(formula, Forall) == positive
    return Forall(formula.var, body) if universal else Exists(formula.var, body)


@beartype
def prenex_parts(formula: Formula) -> Tuple[ClassicalPrefix, Formula]:
    """
    Prefix and quantifier-free matrix of the prenex form of a formula.

    The formula is first put in NNF, then quantifiers are pulled out left to
    right. A bound variable that clashes with one already used is renamed to
    var_k with the smallest k that occurs nowhere else.
    """
    nnf = to_nnf(formula)
    taken = set(free_variables(nnf))
    prefix: List[Tuple[QuantifierType, str]] = []
    matrix = _pull(nnf, taken, prefix)
    return tuple(prefix), matrix


def _pull(formula: Formula, taken: Set[str], prefix: List[Tuple[QuantifierType, str]]) -> Formula:
    if isinstance(formula, (Forall, Exists)):
        name, body = formula.var, formula.body
        if name in taken:
            fresh = fresh_variable(name, taken | variables(body))
            body = substitute(body, {name: Var(fresh)})
            name = fresh
        taken.add(name)
        quantifier = QuantifierType.FORALL if isinstance(formula, Forall) else QuantifierType.EXISTS
        prefix.append((quantifier, name))
        return _pull(body, taken, prefix)
    if isinstance(formula, And):
        return And(tuple(_pull(child, taken, prefix) for child in formula.children))
    if isinstance(formula, Or):
        return Or(tuple(_pull(child, taken, prefix) for child in formula.children))
    return formula


@beartype
def to_prenex(formula: Formula) -> Formula:
    return quantify(*prenex_parts(formula))


def _require_sentence(formula: Formula) -> None:
    free = free_variables(formula)
    if free:
        raise ValueError(CFG.ERRORS.FREE_VARIABLES.format(names=", ".join(sorted(free))))


def _coerce(formula: Formula, universal: QuantifierKind, existential: QuantifierKind) -> QSentence:
    _require_sentence(formula)
    prefix, matrix = prenex_parts(formula)
    kinds = {QuantifierType.FORALL: universal, QuantifierType.EXISTS: existential}
    return QSentence(tuple((kinds[quantifier], name) for quantifier, name in prefix), matrix)


@beartype
def e_coerce(formula: Formula, epsilon: Rational) -> QSentence:
    """Prenexes the sentence and reads every universal as WEAK(1 - epsilon)."""
    epsilon = Fraction(epsilon)
    check_epsilon(epsilon)
    return _coerce(formula, QuantifierKind.WEAK(1 - epsilon), QuantifierKind.EXISTS())


@beartype
def f_coerce(formula: Formula, epsilon: Rational) -> QSentence:
    """Prenexes the sentence and reads every existential as STRONG(epsilon)."""
    epsilon = Fraction(epsilon)
    check_epsilon(epsilon)
    return _coerce(formula, QuantifierKind.FORALL(), QuantifierKind.STRONG(epsilon))


@beartype
def relativize(formula: Formula, predicate: str, signature: Optional[Signature] = None) -> Formula:
    """Guards each quantifier of a prenex formula with a unary predicate."""
    if not is_prenex(formula):
        raise ValueError(CFG.ERRORS.NOT_PRENEX)
    if signature is not None and signature.arity(predicate) != 1:
        raise ValueError(CFG.ERRORS.ARITY_MISMATCH.format(
            name=predicate, expected=1, actual=signature.arity(predicate)))
    prefix, result = split_prenex(formula)
    for quantifier, name in reversed(prefix):
        guard = Atom(predicate, (Var(name),))
        if quantifier is QuantifierType.FORALL:
            result = Forall(name, Implies(guard, result))
        else:
            result = Exists(name, And((guard, result)))
    return result


@beartype
def validity_convert(formula: Union[Formula, QSentence], signature: Optional[Signature] = None) -> Formula:
    """
    Turns a prenex sentence into a universal one that is valid exactly when
    the original is valid under F-semantics at threshold zero.

    Every existential variable is replaced by one fresh variable y, which is
    quantified first, followed by the original universals in order. The
    fresh name avoids the formula's variables and symbols and the
    signature's constants.
    """
    if isinstance(formula, QSentence):
        formula = formula.to_formula()
    if not is_prenex(formula):
        raise ValueError(CFG.ERRORS.NOT_PRENEX)
    prefix, matrix = split_prenex(formula)
    used = variables(formula) | symbols(formula)
    if signature is not None:
        used |= frozenset(signature.constants)
    fresh = CFG.PARAMETERS.VALIDITY_VARIABLE
    if fresh in used:
        fresh = fresh_variable(fresh, used)
    existentials = {name: Var(fresh) for quantifier, name in prefix if quantifier is QuantifierType.EXISTS}
    universals = [(QuantifierType.FORALL, name) for quantifier, name in prefix if quantifier is QuantifierType.FORALL]
    return quantify([(QuantifierType.FORALL, fresh)] + universals, substitute(matrix, existentials))


@beartype
def propositionalize(formula: Formula) -> PropFormula:
    """Reads the matrix of a universal prenex sentence as a propositional formula."""
    prefix, matrix = split_prenex(formula)
    if any(quantifier is not QuantifierType.FORALL for quantifier, _ in prefix):
        raise ValueError(CFG.ERRORS.NOT_UNIVERSAL)
    if not is_quantifier_free(matrix):
        raise ValueError(CFG.ERRORS.NOT_UNIVERSAL)
    if contains_equality(matrix):
        raise ValueError(CFG.ERRORS.CONTAINS_EQUALITY)
    return PropFormula(matrix)


# Printing


def _wrap(head: str, *parts: str) -> str:
    return "(" + " ".join((head,) + parts) + ")"


@beartype
def format_formula(formula: Formula) -> str:
    """S-expression text that parse_formula reads back to the same tree."""
    if isinstance(formula, Atom):
        return _wrap(formula.pred, *(str(term) for term in formula.terms))
    if isinstance(formula, Equal):
        return _wrap(CFG.GRAMMAR.EQUALS, str(formula.left), str(formula.right))
    if isinstance(formula, Not):
        return _wrap(CFG.GRAMMAR.NOT, format_formula(formula.body))
    if isinstance(formula, And):
        return _wrap(CFG.GRAMMAR.AND, *(format_formula(child) for child in formula.children))
    if isinstance(formula, Or):
        return _wrap(CFG.GRAMMAR.OR, *(format_formula(child) for child in formula.children))
    if isinstance(formula, Implies):
        return _wrap(CFG.GRAMMAR.IMPLIES, format_formula(formula.premise), format_formula(formula.conclusion))
    if isinstance(formula, Iff):
        return _wrap(CFG.GRAMMAR.IFF, format_formula(formula.left), format_formula(formula.right))
    if isinstance(formula, Forall):
        return _wrap(CFG.GRAMMAR.FORALL, formula.var, format_formula(formula.body))
    return _wrap(CFG.GRAMMAR.EXISTS, formula.var, format_formula(formula.body))


@beartype
def format_qsentence(sentence: QSentence) -> str:
    text = format_formula(sentence.matrix)
    for kind, name in reversed(sentence.prefix):
        text = _wrap(str(kind), name, text)
    return text
