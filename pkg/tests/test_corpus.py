from fractions import Fraction

import pytest

from conftest import make_model
from epsilon_logic import config as CFG
from epsilon_logic.corpus import (
    CORPUS_NAMES, GraphKind, PacKind, build, build_ann, build_graph_axioms, build_pac, pac_signature,
)
from epsilon_logic.decide import Verdict, decide_monadic
from epsilon_logic.parser import parse_formula
from epsilon_logic.semantics import Semantics, eval_e, eval_f
from epsilon_logic.syntax import (
    And, Atom, Exists, Forall, Iff, Not, QuantifierType, Var, format_formula, prenex_parts,
)

x, y = Var("x"), Var("y")


class TestPac:
    """Learnability sentences"""

    def test_shapes(self):
        """Test the sentences for one bit"""
        label = Atom("label", (y,))
        p_x, p_y = Atom("P1", (x,)), Atom("P1", (y,))
        test_cases = [
            (PacKind.POINT, Exists("x", Forall("y", Iff(label, Iff(p_x, p_y))))),
            (PacKind.PARITY, Exists("x", Forall("y", Iff(label, And((p_x, p_y)))))),
        ]

        for kind, expected in test_cases:
            result = build_pac(kind, 1).sentences
            assert result == (expected,), f"Failed for input: {kind}"

    def test_decision_list_prefix(self):
        prefix, _ = prenex_parts(build_pac(PacKind.DECISION_LIST, 2).sentences[0])
        assert [quantifier for quantifier, _ in prefix] == [QuantifierType.EXISTS] * 3 + [QuantifierType.FORALL]

    def test_corrected_conjunction(self):
        printed = build_pac(PacKind.CONJUNCTION, 2)
        corrected = build_pac(PacKind.CONJUNCTION, 2, corrected=True)
        assert printed.sentences != corrected.sentences
        assert printed.signature == corrected.signature == pac_signature(2)

    def test_bad_size(self):
        with pytest.raises(ValueError, match=CFG.ERRORS.BAD_PAC_SIZE.format(s=0)):
            build_pac(PacKind.POINT, 0)

    def test_monadic_witnesses(self):
        """Test that every class is learnable with some error on some distribution"""
        epsilon = Fraction(1, 4)
        for kind in PacKind:
            entry = build_pac(kind, 1)
            sentence = entry.sentences[0]
            result = decide_monadic(sentence, entry.signature, Semantics.E, epsilon)
            assert result.verdict is Verdict.SATISFIABLE, f"Failed for input: {kind}"
            assert eval_e(result.witness, sentence, epsilon), f"Failed for input: {kind}"


class TestGraphs:
    """Weighted graph axioms"""

    def test_edge_axioms(self):
        """Test that a directed triangle satisfies the edge axioms"""
        entry = build_graph_axioms(GraphKind.EDGE_WEIGHTED)
        assert len(entry.items) == 12
        assert Forall("x", Atom("C", (x, x))) in entry.sentences
        edges = ["e1", "e2", "e3"]
        triangle = make_model(entry.signature, edges, {
            "I": [("e1", "e2"), ("e2", "e3"), ("e3", "e1")],
            "C": [(edge, edge) for edge in edges],
            "D": [(edge, edge) for edge in edges],
        })
        for item in entry.items:
            assert eval_f(triangle, item.formula, 0), f"Failed for input: {item.label}"

    def test_shared_codomain_breaks_uniqueness(self):
        entry = build_graph_axioms(GraphKind.EDGE_WEIGHTED)
        edges = ["e1", "e2"]
        broken = make_model(entry.signature, edges, {
            "I": [("e1", "e1"), ("e1", "e2")],
            "C": [(edge, edge) for edge in edges],
            "D": [(edge, edge) for edge in edges],
        })
        unique = dict(zip(entry.labels, entry.sentences))["domain.unique"]
        assert not eval_f(broken, unique, 0)

    def test_vertex_sentences(self):
        entry = build_graph_axioms(GraphKind.VERTEX_WEIGHTED)
        assert Forall("x", Not(Atom("E", (x, x)))) in entry.sentences
        assert {item.semantics for item in entry.items} == {Semantics.E, Semantics.F}


class TestNeuralNetworks:
    """Threshold update axioms"""

    def test_items(self):
        entry = build_ann(1)
        assert entry.labels == ("consistent.0", "update.0")
        assert len(build_ann(3).items) == 6
        with pytest.raises(ValueError, match=CFG.ERRORS.BAD_TMAX.format(t_max=0)):
            build_ann(0)

    def test_threshold_update(self):
        """Test firing against the threshold read as epsilon"""
        entry = build_ann(1)
        update = dict(zip(entry.labels, entry.sentences))["update.0"]
        measure = {"a": Fraction(3, 4), "b": Fraction(1, 4)}
        test_cases = [
            (["b"], Fraction(1, 2), True),
            (["b"], Fraction(3, 4), False),
            ([], Fraction(1, 2), False),
            # the negated existential reads as a classical universal, which the edge from a refutes
            ([], Fraction(3, 4), False),
        ]

        for active, epsilon, expected in test_cases:
            model = make_model(entry.signature, ["a", "b"], {
                "I": [("a", "b")], "actv_0": ["a"], "actv_1": active,
            }, measure=measure)
            result = eval_f(model, update, epsilon)
            assert result == expected, f"Failed for input: {active} at {epsilon}"


class TestRegistry:
    """Lookup by name"""

    def test_every_name(self):
        """Test that every entry prints in a form that reads back"""
        for name in CORPUS_NAMES:
            entry = build(name, s=2, t_max=2)
            for formula in entry.sentences:
                assert parse_formula(format_formula(formula), entry.signature) == formula, f"Failed for input: {name}"

    def test_unknown(self):
        for name in ("pac-perceptron", "graph", ""):
            with pytest.raises(ValueError, match="unknown corpus entry"):
                build(name)
