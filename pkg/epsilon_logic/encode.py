"""
Turing machines over the tape alphabet {0, 1} and their encoding as a
family of q-sentences.

Time points and tape cells are both elements of the relativizing
predicate N, ordered by lt, with minc and maxc its endpoints. The family is
q-satisfiable in some model exactly when the machine halts from a blank tape;
witness_model builds that model from a halting run.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from beartype import beartype
from beartype.typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from . import config as CFG
from .models import FiniteModel
from .semantics import conjoin_qsentences
from .syntax import (
    And, Atom, Const, Forall, Formula, Iff, Implies, Not, Or, QSentence, QuantifierKind, Signature, Term, Var,
    e_coerce, relativize, substitute, to_prenex,
)

_IDENTIFIER = re.compile(CFG.GRAMMAR.IDENTIFIER)


class Move(Enum):
    LEFT = "L"
    RIGHT = "R"


@beartype
@dataclass(frozen=True)
class Transition:
    """In `state` reading `read`: write `write`, move, and go to `target`."""

    state: str
    read: int
    target: str
    write: int
    move: Move


@beartype
@dataclass(frozen=True)
class TuringMachine:
    states: Tuple[str, ...]
    initial: str
    accepting: FrozenSet[str]
    rejecting: FrozenSet[str]
    transitions: Tuple[Transition, ...]

    def __post_init__(self) -> None:
        known = set(self.states)
        for state in self.states:
            if not _IDENTIFIER.fullmatch(state):
                raise ValueError(CFG.ERRORS.BAD_STATE_NAME.format(state=state))
        for state in (self.initial, *sorted(self.accepting | self.rejecting)):
            if state not in known:
                raise ValueError(CFG.ERRORS.UNKNOWN_STATE.format(state=state))
        overlap = self.accepting & self.rejecting
        if overlap:
            raise ValueError(CFG.ERRORS.HALTING_OVERLAP.format(states=", ".join(sorted(overlap))))
        seen = set()
        for rule in self.transitions:
            for state in (rule.state, rule.target):
                if state not in known:
                    raise ValueError(CFG.ERRORS.UNKNOWN_STATE.format(state=state))
            for symbol in (rule.read, rule.write):
                if symbol not in (0, 1):
                    raise ValueError(CFG.ERRORS.BAD_SYMBOL.format(symbol=symbol))
            if rule.state in self.halting:
                raise ValueError(CFG.ERRORS.HALTING_TRANSITION.format(state=rule.state))
            if (rule.state, rule.read) in seen:
                raise ValueError(CFG.ERRORS.DUPLICATE_TRANSITION.format(state=rule.state, symbol=rule.read))
            seen.add((rule.state, rule.read))
        for state in self.states:
            if state in self.halting:
                continue
            for symbol in (0, 1):
                if (state, symbol) not in seen:
                    raise ValueError(CFG.ERRORS.MISSING_TRANSITION.format(state=state, symbol=symbol))

    @property
    def halting(self) -> FrozenSet[str]:
        return self.accepting | self.rejecting

    def rule(self, state: str, symbol: int) -> Transition:
        for rule in self.transitions:
            if rule.state == state and rule.read == symbol:
                return rule
        raise ValueError(CFG.ERRORS.MISSING_TRANSITION.format(state=state, symbol=symbol))


@beartype
@dataclass(frozen=True)
class Configuration:
    state: str
    head: int
    ones: FrozenSet[int] = frozenset()

    def read(self) -> int:
        return int(self.head in self.ones)


@beartype
@dataclass(frozen=True)
class Halted:
    """A halting run; `steps` counts configurations, the initial one included."""

    steps: int
    history: Tuple[Configuration, ...]

    @property
    def final(self) -> Configuration:
        return self.history[-1]


@beartype
@dataclass(frozen=True)
class NotHalted:
    history: Tuple[Configuration, ...]


@beartype
def simulate(machine: TuringMachine, max_steps: int) -> Union[Halted, NotHalted]:
    """
    Runs the machine from a blank tape with the head on cell 1 at time 1.

    A left move on cell 1 leaves the head where it is.
    """
    if max_steps < 0:
        raise ValueError(CFG.ERRORS.BAD_STEPS.format(steps=max_steps))
    current = Configuration(machine.initial, 1)
    history = [current]
    for _ in range(max_steps):
        if current.state in machine.halting:
            break
        rule = machine.rule(current.state, current.read())
        ones = current.ones | {current.head} if rule.write else current.ones - {current.head}
        head = current.head + 1 if rule.move is Move.RIGHT else max(1, current.head - 1)
        current = Configuration(rule.target, head, frozenset(ones))
        history.append(current)
    if current.state in machine.halting:
        return Halted(len(history), tuple(history))
    return NotHalted(tuple(history))


# Encoding

MIN = Const("minc")
MAX = Const("maxc")
DOMAIN = CFG.PARAMETERS.DOMAIN_PREDICATE


def _var(name: str) -> Var:
    return Var(name)


def _eq(left: Term, right: Term) -> Atom:
    return Atom("eq", (left, right))


def _lt(left: Term, right: Term) -> Atom:
    return Atom("lt", (left, right))


def _state(state: str) -> str:
    return f"S_{state}"


def _forall(names: Tuple[str, ...], body: Formula) -> Formula:
    for name in reversed(names):
        body = Forall(name, body)
    return body


@beartype
def successor(later: Term, earlier: Term, bound: str = "s") -> Formula:
    """`later` is the immediate lt-successor of `earlier`."""
    s = Var(bound)
    return And((
        _lt(earlier, later),
        Forall(bound, Iff(_lt(s, later), Or((_lt(s, earlier), _eq(s, earlier))))),
        Forall(bound, Iff(_lt(earlier, s), Or((_lt(later, s), _eq(later, s))))),
    ))


@beartype
def shift(formula: Formula, offsets: Mapping[str, int]) -> Formula:
    """
    The formula with each listed variable moved one step along the order.

    shift(phi(p, t), {"p": -1, "t": 1}) is
    forall p_prev forall t_next ((p succ p_prev and t_next succ t) -> phi(p_prev, t_next)).
    """
    renames: Dict[str, Term] = {}
    conditions: List[Formula] = []
    for name, offset in offsets.items():
        moved = f"{name}_next" if offset > 0 else f"{name}_prev"
        renames[name] = Var(moved)
        if offset > 0:
            conditions.append(successor(Var(moved), Var(name)))
        else:
            conditions.append(successor(Var(name), Var(moved)))
    guard = conditions[0] if len(conditions) == 1 else And(tuple(conditions))
    return _forall(tuple(term.name for term in renames.values()), Implies(guard, substitute(formula, renames)))


def _guarded(formula: Formula) -> Formula:
    return relativize(to_prenex(formula), DOMAIN)


def _tape(cell: Term, time: Term, symbol: int) -> Formula:
    atom = Atom("T", (cell, time))
    return atom if symbol else Not(atom)


@beartype
def encoding_signature(machine: TuringMachine) -> Signature:
    predicates = [(DOMAIN, 1), ("eq", 2), ("lt", 2), ("R", 2), ("T", 2), ("H", 2)]
    predicates += [(_state(state), 1) for state in machine.states]
    return Signature(tuple(predicates), (MIN.name, MAX.name))


@beartype
@dataclass(frozen=True)
class EncodedPart:
    group: str
    label: str
    source: Formula
    sentence: QSentence


@beartype
@dataclass(frozen=True)
class TMEncoding:
    machine: TuringMachine
    signature: Signature
    parts: Tuple[EncodedPart, ...]

    @property
    def sentences(self) -> Tuple[QSentence, ...]:
        return tuple(part.sentence for part in self.parts)

    def conjunction(self) -> QSentence:
        """All parts as one q-sentence."""
        result = self.parts[0].sentence
        for part in self.parts[1:]:
            result = conjoin_qsentences(result, part.sentence)
        return result


def _equality_axioms(signature: Signature) -> List[Tuple[str, Formula]]:
    x, y, z = _var("x"), _var("y"), _var("z")
    axioms = [
        ("equality.reflexive", Forall("x", _eq(x, x))),
        ("equality.symmetric", _forall(("x", "y"), Implies(_eq(x, y), _eq(y, x)))),
        ("equality.transitive", _forall(("x", "y", "z"), Implies(And((_eq(x, y), _eq(y, z))), _eq(x, z)))),
        ("equality.strict", _forall(("x", "y"), Implies(_eq(x, y), Not(_lt(x, y))))),
    ]
    for name, arity in signature.predicates:
        names = tuple(f"x{index}" for index in range(1, arity + 1))
        for position in range(arity):
            moved = tuple(Var("y") if index == position else Var(names[index]) for index in range(arity))
            premise = And((Atom(name, tuple(Var(n) for n in names)), _eq(Var(names[position]), Var("y"))))
            axioms.append((
                f"indiscernible.{name}.{position + 1}",
                _forall(names + ("y",), Implies(premise, Atom(name, moved))),
            ))
    return axioms


def _transition(rule: Transition) -> Formula:
    p, t, u = _var("p"), _var("t"), _var("u")
    condition = And((Atom(_state(rule.state), (t,)), Atom("H", (p, t)), _tape(p, t, rule.read)))
    if rule.move is Move.RIGHT:
        head = shift(Atom("H", (p, t)), {"p": 1, "t": 1})
    else:
        # a left move on minc stays on minc
        head = And((
            Implies(_eq(p, MIN), shift(Atom("H", (p, t)), {"t": 1})),
            Implies(Not(_eq(p, MIN)), shift(Atom("H", (p, t)), {"p": -1, "t": 1})),
        ))
    keep = Forall("t_next", Implies(
        successor(Var("t_next"), t),
        Iff(Atom("T", (u, t)), Atom("T", (u, Var("t_next")))),
    ))
    locality = Forall("u", Implies(Not(_eq(u, p)), keep))
    effects = And((
        shift(Atom(_state(rule.target), (t,)), {"t": 1}),
        shift(_tape(p, t, rule.write), {"t": 1}),
        head,
        locality,
    ))
    return _forall(("p", "t"), Implies(condition, effects))


def _halting_part(machine: TuringMachine) -> Formula:
    return Or(tuple(Atom(_state(state), (MAX,)) for state in machine.states if state in machine.halting))


def _t0(machine: TuringMachine, signature: Signature) -> List[Tuple[str, Formula]]:
    x, y, z, p, t = (_var(name) for name in "xyzpt")
    parts = _equality_axioms(signature)
    parts += [
        ("order.irreflexive", _guarded(Forall("x", Not(_lt(x, x))))),
        ("order.transitive", _guarded(_forall(("x", "y", "z"), Implies(And((_lt(x, y), _lt(y, z))), _lt(x, z))))),
        ("order.total", _guarded(_forall(("x", "y"), Or((_lt(x, y), _eq(x, y), _lt(y, x)))))),
        ("bounds.domain", And((Atom(DOMAIN, (MIN,)), Atom(DOMAIN, (MAX,))))),
        ("bounds.min", _guarded(Forall("x", Or((_eq(x, MIN), _lt(MIN, x)))))),
        ("bounds.max", _guarded(Forall("x", Or((_eq(x, MAX), _lt(x, MAX)))))),
        ("init.state", Atom(_state(machine.initial), (MIN,))),
        ("init.head", Forall("p", Iff(_eq(p, MIN), Atom("H", (p, MIN))))),
        ("init.tape", _guarded(Forall("p", Not(Atom("T", (p, MIN)))))),
    ]
    states = machine.states
    exclusive = [
        Not(And((Atom(_state(first), (t,)), Atom(_state(second), (t,)))))
        for index, first in enumerate(states) for second in states[index + 1:]
    ]
    some_state = Or(tuple(Atom(_state(state), (t,)) for state in states))
    parts.append(("state.unique", _guarded(Forall("t", And((some_state, *exclusive))))))
    for rule in machine.transitions:
        parts.append((f"transition.{rule.state}.{rule.read}", _guarded(_transition(rule))))
    parts.append(("halting", _halting_part(machine)))
    parts.append(("padding", _forall(("x", "y"), Implies(Atom("R", (x, y)), Not(Atom(DOMAIN, (y,)))))))
    return parts


def _half(psi: Formula) -> Formula:
    # at least half of the mass on each side of psi
    return And((Forall("y", psi), Forall("y", Not(psi))))


def _t_half() -> List[Tuple[str, Formula]]:
    x, y = _var("x"), _var("y")
    in_domain = Atom(DOMAIN, (x,))
    later = Or((Atom("R", (x, y)), And((Atom(DOMAIN, (y,)), _lt(x, y)))))
    itself = Or((Atom("R", (x, y)), _eq(x, y)))
    return [
        ("half.domain", And((Forall("x", in_domain), Forall("x", Not(in_domain))))),
        ("half.successor", Forall("x", And((in_domain, Or((_eq(x, MAX), _half(later))))))),
        ("half.self", Forall("x", And((in_domain, Or((_eq(x, MAX), _half(itself))))))),
    ]


@beartype
def encode_tm(machine: TuringMachine) -> TMEncoding:
    """
    The q-sentences that are simultaneously satisfiable exactly when the
    machine halts from a blank tape.

    Part groups: "T0" (order, equality, run constraints, read at threshold
    0), "forcing" (the point minc carries a quarter of the mass), and "T1/2"
    (read at threshold 1/2, forcing the geometric masses along N).

    lt is axiomatized as irreflexive rather than asymmetric on distinct
    elements; with transitivity the two agree on N. The extra
    `equality.strict` axiom keeps eq and lt disjoint outside N as well.
    A transition rewrites only the cell under the head, and a left move on
    minc leaves the head there, as `simulate` does.
    """
    signature = encoding_signature(machine)
    parts: List[EncodedPart] = []
    for label, formula in _t0(machine, signature):
        parts.append(EncodedPart("T0", label, formula, e_coerce(formula, 0)))
    x = _var("x")
    forcing = [
        ("forcing.min", _eq(x, MIN), QuantifierKind.WEAK(Fraction(1, 4))),
        ("forcing.rest", Not(_eq(x, MIN)), QuantifierKind.WEAK(Fraction(3, 4))),
    ]
    for label, matrix, kind in forcing:
        parts.append(EncodedPart("forcing", label, Forall("x", matrix), QSentence(((kind, "x"),), matrix)))
    for label, formula in _t_half():
        parts.append(EncodedPart("T1/2", label, formula, e_coerce(formula, Fraction(1, 2))))
    return TMEncoding(machine, signature, tuple(parts))


@beartype
def witness_model(machine: TuringMachine, max_steps: int) -> Optional[FiniteModel]:
    """
    The model satisfying every part of encode_tm for a machine that halts
    within max_steps, or None.

    Elements are "1".."2m" for a run of m configurations; i and m + i carry
    mass 2^-(i+1) for i < m, and m and 2m carry 2^-m each. A run of one
    configuration is padded by repeating it.
    """
    run = simulate(machine, max_steps)
    if not isinstance(run, Halted):
        return None
    history = list(run.history)
    while len(history) < 2:
        history.append(history[-1])
    m = len(history)
    labels = [str(index) for index in range(1, 2 * m + 1)]
    measure = {}
    for index in range(1, m + 1):
        mass = Fraction(1, 2 ** (index + 1)) if index < m else Fraction(1, 2 ** m)
        measure[str(index)] = mass
        measure[str(index + m)] = mass
    relations = {
        DOMAIN: frozenset((str(index),) for index in range(1, m + 1)),
        "eq": frozenset((label, label) for label in labels),
        "lt": frozenset((str(i), str(j)) for i in range(1, 2 * m + 1) for j in range(i + 1, 2 * m + 1)),
        "R": frozenset((str(i), str(j)) for i in range(1, 2 * m + 1) for j in range(1, 2 * m + 1) if i >= j - m >= 1),
        "H": frozenset((str(config.head), str(time)) for time, config in enumerate(history, start=1)),
        "T": frozenset((str(cell), str(time)) for time, config in enumerate(history, start=1) for cell in config.ones),
    }
    for state in machine.states:
        relations[_state(state)] = frozenset(
            (str(time),) for time, config in enumerate(history, start=1) if config.state == state
        )
    return FiniteModel(
        signature=encoding_signature(machine),
        universe=tuple(labels),
        relations=relations,
        constants={MIN.name: "1", MAX.name: str(m)},
        measure=measure,
    )
