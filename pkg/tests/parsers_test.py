from fractions import Fraction

import pytest

from epsilon_logic import config as CFG
from epsilon_logic.content_loader import format_model, format_tm, parse_model, parse_tm
from epsilon_logic.encode import Move
from epsilon_logic.parser import ParseError, format_signature, parse_formula, parse_formulas, parse_signature
from epsilon_logic.syntax import (
    And, Atom, Const, Equal, Exists, Forall, Not, Or, QSentence, QuantifierKind, Signature, Var,
    format_formula, format_qsentence,
)

SIG = Signature((("P", 1), ("Q", 1), ("R", 2), ("S", 3)), ("c",), True)


class TestFormulaParsing:
    """S-expression formulas and q-sentences"""

    def test_formulas(self):
        """Test the grammar mapping"""
        x, y = Var("x"), Var("y")
        test_cases = [
            ("(forall x (P x))", Forall("x", Atom("P", (x,)))),
            ("(exists x (forall y (S x y y)))", Exists("x", Forall("y", Atom("S", (x, y, y))))),
            ("(not (P c))", Not(Atom("P", (Const("c"),)))),
            ("(= x c)", Equal(x, Const("c"))),
            ("(and)", And(())),
            ("(or (P x) (Q x))", Or((Atom("P", (x,)), Atom("Q", (x,))))),
            ("; comment\n(P x) ; trailing", Atom("P", (x,))),
        ]

        for text, expected in test_cases:
            result = parse_formula(text, SIG)
            assert result == expected, f"Failed for input: {text}"

    def test_q_sentences(self):
        """Test that a q-quantifier in the prefix yields a QSentence"""
        x, y = Var("x"), Var("y")
        test_cases = [
            ("(qgeq 1/2 x (not (P x)))",
             QSentence(((QuantifierKind.WEAK(Fraction(1, 2)), "x"),), Not(Atom("P", (x,))))),
            ("(exists x (qgt 3/4 y (R x y)))",
             QSentence(((QuantifierKind.EXISTS(), "x"), (QuantifierKind.STRONG(Fraction(3, 4)), "y")),
                       Atom("R", (x, y)))),
        ]

        for text, expected in test_cases:
            result = parse_formula(text, SIG)
            assert result == expected, f"Failed for input: {text}"

    def test_printed_form_reads_back(self):
        """Test that printing and reading give back the same tree"""
        test_cases = [
            "(forall x (implies (P x) (exists y (and (R x y) (not (= y c))))))",
            "(iff (P c) (or))",
            "(qgeq 1/3 x (qgt 0 y (or (R x y) (P c))))",
        ]

        for text in test_cases:
            parsed = parse_formula(text, SIG)
            printed = format_qsentence(parsed) if isinstance(parsed, QSentence) else format_formula(parsed)
            assert printed == text, f"Failed for input: {text}"
            assert parse_formula(printed, SIG) == parsed, f"Failed for input: {text}"

    def test_several_formulas(self):
        """Test a file with several top-level formulas"""
        result = parse_formulas("(P c)\n; second\n(forall x (Q x))\n", SIG)
        assert result == [Atom("P", (Const("c"),)), Forall("x", Atom("Q", (Var("x"),)))]


class TestFormulaErrors:
    """Parse errors carry the position of the offending text"""

    def test_positions(self):
        """Test error messages and positions"""
        test_cases = [
            ("(P x", CFG.ERRORS.UNEXPECTED_EOF.format(expected="')'"), 1, 5),
            (")", CFG.ERRORS.UNBALANCED_CLOSE, 1, 1),
            ("", CFG.ERRORS.UNEXPECTED_EOF.format(expected="formula"), 1, 1),
            ("(P x) (P y)", CFG.ERRORS.TRAILING_INPUT.format(found="(...)"), 1, 7),
            ("(and\n  (T x))", CFG.ERRORS.UNDECLARED_PREDICATE.format(name="T"), 2, 3),
            ("(R x)", CFG.ERRORS.ARITY_MISMATCH.format(name="R", expected=2, actual=1), 1, 1),
            ("(and (qgeq 1/2 x (P x)))", CFG.ERRORS.NESTED_Q_QUANTIFIER.format(keyword="qgeq"), 1, 6),
            ("(qgeq 0.5 x (P x))", CFG.ERRORS.BAD_RATIONAL.format(text="0.5"), 1, 7),
            ("(forall and (P x))", CFG.ERRORS.RESERVED_NAME.format(name="and"), 1, 9),
        ]

        for text, message, line, column in test_cases:
            with pytest.raises(ParseError) as error:
                parse_formula(text, SIG)
            assert error.value.message == message, f"Failed for input: {text}"
            assert (error.value.line, error.value.column) == (line, column), f"Failed for input: {text}"

    def test_equality_must_be_declared(self):
        """Test that = needs the equality flag"""
        with pytest.raises(ParseError) as error:
            parse_formula("(= x y)", Signature((("P", 1),)))
        assert error.value.message == CFG.ERRORS.EQUALITY_UNDECLARED


class TestSignatureParsing:
    """Signature files"""

    def test_declarations(self):
        """Test predicates, constants, equality and comments"""
        text = "# header\npred P 1\npred R 2  # binary\nconst c\nequality\n"
        result = parse_signature(text)
        assert result == Signature((("P", 1), ("R", 2)), ("c",), True)
        assert parse_signature(format_signature(result)) == result

    def test_errors(self):
        """Test malformed declarations"""
        test_cases = [
            ("pred P 0", CFG.ERRORS.BAD_ARITY.format(name="P", arity=0), 1),
            ("pred P 1\npred P 2", CFG.ERRORS.DUPLICATE_SYMBOL.format(name="P"), 2),
            ("pred P 1\n\nfunc f 1", CFG.ERRORS.BAD_SIGNATURE_LINE.format(line="func f 1"), 3),
            ("const forall", CFG.ERRORS.UNEXPECTED_TOKEN.format(expected="symbol name", found="forall"), 1),
        ]

        for text, message, line in test_cases:
            with pytest.raises(ParseError) as error:
                parse_signature(text)
            assert error.value.message == message, f"Failed for input: {text}"
            assert error.value.line == line, f"Failed for input: {text}"


MODEL_SIG = Signature((("P", 1), ("R", 2)), ("c",))

MODEL_TEXT = """\
# three elements
universe: a b c
measure: a=1/4 b=1/2 c=1/4
const c=b
rel P: a c
rel R: (a b) (b c)
"""


class TestModelFiles:
    """Model files"""

    def test_read(self):
        """Test every kind of line"""
        model = parse_model(MODEL_TEXT, MODEL_SIG)
        assert model.universe == ("a", "b", "c")
        assert model.measure == {"a": Fraction(1, 4), "b": Fraction(1, 2), "c": Fraction(1, 4)}
        assert model.constants == {"c": "b"}
        assert model.relation("P") == frozenset({("a",), ("c",)})
        assert model.relation("R") == frozenset({("a", "b"), ("b", "c")})

    def test_written_form_reads_back(self):
        """Test that writing and reading give an equal model"""
        model = parse_model(MODEL_TEXT, MODEL_SIG)
        assert parse_model(format_model(model), MODEL_SIG).key == model.key

    def test_errors(self):
        """Test error messages and line numbers"""
        test_cases = [
            ("measure: a=1", CFG.ERRORS.MISSING_UNIVERSE.format(what="'measure:'"), 1),
            ("universe: a\nrel P: d", CFG.ERRORS.UNKNOWN_ELEMENT.format(label="d", where="P"), 2),
            ("universe: a\nmeasure: a=0.5", CFG.ERRORS.BAD_RATIONAL.format(text="0.5"), 2),
            ("universe: a\nmeasure: a", CFG.ERRORS.BAD_MODEL_LINE.format(line="measure: a"), 2),
            ("universe: a\nweights: a=1", CFG.ERRORS.BAD_MODEL_LINE.format(line="weights: a=1"), 2),
            ("# nothing", CFG.ERRORS.MISSING_UNIVERSE.format(what="end of file"), 2),
        ]

        for text, message, line in test_cases:
            with pytest.raises(ParseError) as error:
                parse_model(text, MODEL_SIG)
            assert error.value.message == message, f"Failed for input: {text}"
            assert error.value.line == line, f"Failed for input: {text}"

    def test_reading_does_not_validate(self):
        """Test that a bad measure is left to validate_model"""
        model = parse_model("universe: a b\nmeasure: a=1/2 b=1/3\n", MODEL_SIG)
        assert model.mass(model.universe) == Fraction(5, 6)


TM_TEXT = """\
states: q0 q1 qa
init: q0
accept: qa
reject:
q0 0 -> q1 1 R
q0 1 -> q1 1 R
q1 0 -> qa 0 L   # back to cell 1
q1 1 -> qa 0 L
"""


class TestMachineFiles:
    """Turing machine files"""

    def test_read(self):
        """Test states and transitions"""
        machine = parse_tm(TM_TEXT)
        assert machine.states == ("q0", "q1", "qa")
        assert machine.initial == "q0"
        assert machine.accepting == frozenset({"qa"})
        assert machine.rejecting == frozenset()
        rule = machine.rule("q1", 0)
        assert (rule.target, rule.write, rule.move) == ("qa", 0, Move.LEFT)
        assert parse_tm(format_tm(machine)) == machine

    def test_errors(self):
        """Test malformed lines and invalid machines"""
        header = "states: q0 qa\ninit: q0\naccept: qa\n"
        test_cases = [
            (header + "q0 0 qa 1 R", CFG.ERRORS.BAD_TM_LINE.format(line="q0 0 qa 1 R"), 4),
            (header + "q0 2 -> qa 1 R", CFG.ERRORS.BAD_SYMBOL.format(symbol="2"), 4),
            (header + "q0 0 -> qa 1 X", CFG.ERRORS.BAD_MOVE.format(move="X"), 4),
            (header + "q0 0 -> qa 1 R", CFG.ERRORS.MISSING_TRANSITION.format(state="q0", symbol=1), 4),
            (header + "q0 0 -> qb 1 R\nq0 1 -> qa 1 R", CFG.ERRORS.UNKNOWN_STATE.format(state="qb"), 5),
        ]

        for text, message, line in test_cases:
            with pytest.raises(ParseError) as error:
                parse_tm(text)
            assert error.value.message == message, f"Failed for input: {text}"
            assert error.value.line == line, f"Failed for input: {text}"
