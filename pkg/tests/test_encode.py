from fractions import Fraction

import pytest

from conftest import machine
from epsilon_logic import config as CFG
from epsilon_logic.decide import find_simultaneous_model
from epsilon_logic.encode import (
    Configuration, Halted, Move, NotHalted, Transition, TuringMachine, encode_tm, shift, simulate, successor,
    witness_model,
)
from epsilon_logic.models import FiniteModel
from epsilon_logic.semantics import eval_q
from epsilon_logic.syntax import And, Atom, Forall, Iff, Implies, Or, Var

p, t = Var("p"), Var("t")


def part_count(tm):
    return 32 + len(tm.states) + len(tm.transitions)


def moved(model, source, target, amount):
    measure = dict(model.measure)
    measure[source] -= amount
    measure[target] += amount
    return FiniteModel(model.signature, model.universe, model.relations, model.constants, measure)


class TestSimulation:
    """Running machines from a blank tape"""

    def test_halting_runs(self, halts_at_two, halts_at_three):
        """Test step counts and final configurations"""
        test_cases = [
            (halts_at_two, 2, Configuration("qa", 2, frozenset({1}))),
            (halts_at_three, 3, Configuration("qa", 1, frozenset({1}))),
        ]

        for tm, steps, final in test_cases:
            result = simulate(tm, 10)
            assert isinstance(result, Halted), f"Failed for input: {tm.states}"
            assert result.steps == steps, f"Failed for input: {tm.states}"
            assert result.final == final, f"Failed for input: {tm.states}"

    def test_not_halted(self, self_loop, halts_at_five):
        result = simulate(self_loop, 10)
        assert isinstance(result, NotHalted)
        assert len(result.history) == 11
        assert isinstance(simulate(halts_at_five, 3), NotHalted)
        assert simulate(halts_at_five, 4).steps == 5

    def test_left_edge(self):
        """Test that a left move on cell 1 stays put"""
        tm = machine(("q0", "qa"), [("q0", 0, "qa", 1, "L"), ("q0", 1, "qa", 1, "L")])
        assert simulate(tm, 5).final == Configuration("qa", 1, frozenset({1}))

    def test_bad_steps(self, halts_at_two):
        with pytest.raises(ValueError, match=CFG.ERRORS.BAD_STEPS.format(steps=-1)):
            simulate(halts_at_two, -1)


class TestMachineValidation:
    def test_errors(self):
        """Test malformed machines"""
        loop = [("q0", 0, "qa", 1, "R"), ("q0", 1, "qa", 1, "R")]
        test_cases = [
            (lambda: machine(("q0", "qa"), loop, accepting=("qz",)), CFG.ERRORS.UNKNOWN_STATE.format(state="qz")),
            (lambda: machine(("q0", "qa"), loop[:1]), CFG.ERRORS.MISSING_TRANSITION.format(state="q0", symbol=1)),
            (lambda: machine(("q0", "qa"), loop + [("qa", 0, "q0", 0, "R")]),
             CFG.ERRORS.HALTING_TRANSITION.format(state="qa")),
            (lambda: machine(("q0", "qa"), loop, rejecting=("qa",)), CFG.ERRORS.HALTING_OVERLAP.format(states="qa")),
            (lambda: machine(("q0", "qa"), loop + [("q0", 0, "qa", 0, "L")]),
             CFG.ERRORS.DUPLICATE_TRANSITION.format(state="q0", symbol=0)),
        ]

        for build, message in test_cases:
            with pytest.raises(ValueError) as error:
                build()
            assert str(error.value) == message, f"Failed for input: {message}"

    def test_bad_symbol(self):
        rules = (Transition("q0", 2, "qa", 1, Move.RIGHT), Transition("q0", 1, "qa", 1, Move.RIGHT))
        with pytest.raises(ValueError, match=CFG.ERRORS.BAD_SYMBOL.format(symbol=2)):
            TuringMachine(("q0", "qa"), "q0", frozenset({"qa"}), frozenset(), rules)


class TestFormulaBuilders:
    """Successor and shift"""

    def test_successor(self):
        s = Var("s")
        later, earlier = Var("b"), Var("a")
        expected = And((
            Atom("lt", (earlier, later)),
            Forall("s", Iff(Atom("lt", (s, later)), Or((Atom("lt", (s, earlier)), Atom("eq", (s, earlier)))))),
            Forall("s", Iff(Atom("lt", (earlier, s)), Or((Atom("lt", (later, s)), Atom("eq", (later, s)))))),
        ))
        assert successor(later, earlier) == expected

    def test_shift(self):
        """Test moves forward and backward"""
        head = Atom("H", (p, t))
        forward = shift(head, {"t": 1})
        assert forward == Forall("t_next", Implies(successor(Var("t_next"), t), Atom("H", (p, Var("t_next")))))
        both = shift(head, {"p": -1, "t": 1})
        assert both == Forall("p_prev", Forall("t_next", Implies(
            And((successor(p, Var("p_prev")), successor(Var("t_next"), t))),
            Atom("H", (Var("p_prev"), Var("t_next"))),
        )))


class TestEncoding:
    """The q-sentence family of a machine"""

    def test_parts(self, halts_at_two, halts_at_three):
        """Test part counts and groups"""
        for tm in (halts_at_two, halts_at_three):
            encoding = encode_tm(tm)
            assert len(encoding.parts) == part_count(tm), f"Failed for input: {tm.states}"
            groups = [part.group for part in encoding.parts]
            assert groups.count("forcing") == 2
            assert groups.count("T1/2") == 3
            assert set(groups) == {"T0", "forcing", "T1/2"}
        assert len(encode_tm(halts_at_two).parts) == 36

    def test_conjunction(self, halts_at_two):
        encoding = encode_tm(halts_at_two)
        conjunction = encoding.conjunction()
        assert len(conjunction.prefix) == sum(len(sentence.prefix) for sentence in encoding.sentences)
        assert len(set(conjunction.variables)) == len(conjunction.variables)

    def test_witness_masses(self, halts_at_two, halts_at_three):
        """Test the geometric masses along the domain"""
        two = witness_model(halts_at_two, 10)
        assert two.universe == ("1", "2", "3", "4")
        assert set(two.measure.values()) == {Fraction(1, 4)}
        assert two.relation("N") == frozenset({("1",), ("2",)})
        assert two.constants == {"minc": "1", "maxc": "2"}

        three = witness_model(halts_at_three, 10)
        expected = [Fraction(1, 4), Fraction(1, 8), Fraction(1, 8)] * 2
        assert [three.measure[label] for label in three.universe] == expected
        for model in (two, three):
            assert model.mass(row[0] for row in model.relation("N")) == Fraction(1, 2)
            assert model.measure[model.constants["minc"]] == Fraction(1, 4)

    def test_witness_satisfies_every_part(self, halts_at_two, halts_at_three):
        """Test each part on the witness of a halting run"""
        for tm in (halts_at_two, halts_at_three):
            model = witness_model(tm, 10)
            for part in encode_tm(tm).parts:
                assert eval_q(model, part.sentence), f"Failed for input: {part.label}"

    def test_longer_run(self, halts_at_five):
        """Test the non-transition parts on a five-configuration run"""
        model = witness_model(halts_at_five, 10)
        assert model.size == 10
        for part in encode_tm(halts_at_five).parts:
            if part.label.startswith("transition."):
                continue
            assert eval_q(model, part.sentence), f"Failed for input: {part.label}"

    def test_forcing_is_tight(self, halts_at_two):
        """Test that moving mass off or onto minc breaks the forcing parts"""
        model = witness_model(halts_at_two, 10)
        forcing = [part.sentence for part in encode_tm(halts_at_two).parts if part.group == "forcing"]
        assert all(eval_q(model, sentence) for sentence in forcing)
        for source, target in (("1", "2"), ("2", "1")):
            perturbed = moved(model, source, target, Fraction(1, 16))
            assert not all(eval_q(perturbed, sentence) for sentence in forcing), f"Failed for input: {source}"

    def test_no_witness_without_halting(self, self_loop):
        assert witness_model(self_loop, 20) is None


def failing_parts(tm, model):
    return [part.label for part in encode_tm(tm).parts if not eval_q(model, part.sentence)]


def relabelled(model, tm, **relations):
    return FiniteModel(
        encode_tm(tm).signature, model.universe, {**model.relations, **relations}, model.constants, model.measure,
    )


class TestNonHaltingRuns:
    """Models of runs the machine cannot make"""

    def test_left_move_on_minc(self, halts_at_three):
        """Test that a left move on minc must keep the head on minc"""
        left_forever = machine(("q0", "q1", "qa"), [
            ("q0", 0, "q1", 0, "L"), ("q0", 1, "q1", 0, "L"),
            ("q1", 0, "q1", 0, "L"), ("q1", 1, "q1", 0, "L"),
        ])
        assert isinstance(simulate(left_forever, 20), NotHalted)
        # the head vanishes after the first move and qa is reached at time 3
        model = relabelled(
            witness_model(halts_at_three, 10), left_forever,
            H=frozenset({("1", "1")}), T=frozenset(),
            S_q0=frozenset({("1",)}), S_q1=frozenset({("2",)}), S_qa=frozenset({("3",)}),
        )
        assert failing_parts(left_forever, model) == ["transition.q0.0"]

    def test_left_edge_witness(self):
        """Test the witness of a machine that moves left on minc"""
        tm = machine(("q0", "q1", "qa"), [
            ("q0", 0, "q1", 1, "L"), ("q0", 1, "q1", 1, "L"),
            ("q1", 0, "qa", 0, "R"), ("q1", 1, "qa", 0, "R"),
        ])
        model = witness_model(tm, 10)
        assert model.relation("H") == frozenset({("1", "1"), ("1", "2"), ("2", "3")})
        assert failing_parts(tm, model) == []

    def test_cells_away_from_the_head_keep_their_symbol(self, halts_at_three):
        """Test that a cell next to the head cannot change"""
        model = witness_model(halts_at_three, 10)
        flipped = relabelled(model, halts_at_three, T=model.relation("T") | {("3", "3")})
        assert failing_parts(halts_at_three, model) == []
        assert failing_parts(halts_at_three, flipped) == ["transition.q1.0"]

    def test_hand_built_models_fail(self, halts_at_two, self_loop):
        """Test candidate models of a machine that never halts"""
        witness = witness_model(halts_at_two, 10)
        test_cases = [
            ({}, "transition.q0.0"),
            ({"T": frozenset(), "S_q0": frozenset({("1",), ("2",)}), "S_qa": frozenset()}, "halting"),
            ({"T": frozenset(), "S_q0": frozenset({("1",), ("2",)}), "S_qa": frozenset({("2",)})}, "state.unique"),
            ({"T": frozenset(), "S_q0": frozenset({("1",)}), "S_qa": frozenset({("2",)})}, "transition.q0.0"),
            ({"T": frozenset(), "H": frozenset({("1", "1")})}, "transition.q0.0"),
        ]

        for relations, expected in test_cases:
            failing = failing_parts(self_loop, relabelled(witness, self_loop, **relations))
            assert failing, f"Failed for input: {relations}"
            assert expected in failing, f"Failed for input: {relations}"

    def test_bounded_search_finds_nothing(self, self_loop):
        encoding = encode_tm(self_loop)
        assert find_simultaneous_model(encoding.signature, encoding.sentences, max_size=3, max_denominator=4) is None
