from fractions import Fraction

import pytest

from epsilon_logic.encode import Move, Transition, TuringMachine
from epsilon_logic.models import FiniteModel
from epsilon_logic.parser import parse_formula
from epsilon_logic.syntax import Signature

MONADIC = Signature((("P", 1),))
MIXED = Signature((("P", 1), ("R", 2)))
EQUALITY = Signature((), (), True)

# Sentences of quantifier depth <= 3 over one unary and one binary predicate
MIXED_SENTENCES = (
    "(forall x (P x))",
    "(exists x (P x))",
    "(forall x (exists y (R x y)))",
    "(exists x (forall y (R x y)))",
    "(forall x (implies (P x) (exists y (R x y))))",
    "(exists x (and (P x) (forall y (not (R y x)))))",
    "(forall x (forall y (implies (R x y) (R y x))))",
    "(exists x (exists y (forall z (or (R x z) (P y)))))",
    "(not (forall x (or (P x) (exists y (R y x)))))",
    "(and (forall x (P x)) (exists x (not (P x))))",
    "(exists x (forall y (iff (P x) (R x y))))",
    "(or (exists x (R x x)) (forall x (not (P x))))",
)

EPSILON_GRID = tuple(Fraction(value) for value in ("0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"))


def make_model(signature, universe, relations=None, constants=None, measure=None):
    """A model over string labels; the measure defaults to uniform."""
    universe = tuple(universe)
    if measure is None:
        measure = {label: Fraction(1, len(universe)) for label in universe}
    rows = {}
    for name, items in (relations or {}).items():
        rows[name] = frozenset(item if isinstance(item, tuple) else (item,) for item in items)
    return FiniteModel(
        signature=signature,
        universe=universe,
        relations=rows,
        constants=dict(constants or {}),
        measure={label: Fraction(mass) for label, mass in measure.items()},
    )


def machine(states, rules, accepting=("qa",), rejecting=()):
    """A machine from (state, read, target, write, move) rules; the first state is initial."""
    return TuringMachine(
        states=tuple(states),
        initial=states[0],
        accepting=frozenset(accepting),
        rejecting=frozenset(rejecting),
        transitions=tuple(Transition(s, r, t, w, Move(m)) for s, r, t, w, m in rules),
    )


@pytest.fixture
def mixed_sentences():
    return [parse_formula(text, MIXED) for text in MIXED_SENTENCES]


@pytest.fixture
def halts_at_two():
    """Writes 1, moves right and accepts."""
    return machine(("q0", "qa"), [("q0", 0, "qa", 1, "R"), ("q0", 1, "qa", 1, "R")])


@pytest.fixture
def halts_at_three():
    return machine(("q0", "q1", "qa"), [
        ("q0", 0, "q1", 1, "R"), ("q0", 1, "q1", 1, "R"),
        ("q1", 0, "qa", 0, "L"), ("q1", 1, "qa", 0, "L"),
    ])


@pytest.fixture
def halts_at_five():
    states = ("q0", "q1", "q2", "q3", "qa")
    rules = []
    for current, following in zip(states, states[1:]):
        rules += [(current, 0, following, 1, "R"), (current, 1, following, 1, "R")]
    return machine(states, rules)


@pytest.fixture
def self_loop():
    return machine(("q0", "qa"), [("q0", 0, "q0", 0, "R"), ("q0", 1, "q0", 1, "R")])
