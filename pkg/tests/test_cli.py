import pytest

from epsilon_logic.cli import main
from epsilon_logic.content_loader import parse_tm
from epsilon_logic.encode import encode_tm
from epsilon_logic.parser import parse_formulas, parse_signature

MONADIC_SIG = "pred P 1\n"
SKEWED_MODEL = "universe: a b\nmeasure: a=3/4 b=1/4\nrel P: a\n"


@pytest.fixture
def write(tmp_path):
    def write_file(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write_file


class TestCheck:
    """The check command"""

    def test_verdicts(self, write, capsys):
        """Test exit codes and report lines"""
        sig, model = write("p.sig", MONADIC_SIG), write("m.model", SKEWED_MODEL)
        formula = write("f.sx", "(forall x (P x))")
        test_cases = [
            (["--epsilon", "1/4"], 0, "true\n"),
            (["--epsilon", "1/5"], 1, "false\n"),
            (["--epsilon", "1/4", "--format", "machine"], 0, "VERDICT kind=true witness=-\n"),
            (["--semantics", "F", "--epsilon", "1/2"], 1, "false\n"),
        ]

        for flags, code, output in test_cases:
            result = main(["check", "--sig", sig, "--model", model, "--formula", formula] + flags)
            assert result == code, f"Failed for input: {flags}"
            assert capsys.readouterr().out == output, f"Failed for input: {flags}"

    def test_qtree_witness(self, write, tmp_path, capsys):
        """Test that a true q-sentence writes its tree"""
        sig, model = write("p.sig", MONADIC_SIG), write("m.model", SKEWED_MODEL)
        formula = write("q.sx", "(qgeq 3/4 x (P x))")
        tree = tmp_path / "tree.txt"
        assert main(["check", "--sig", sig, "--model", model, "--formula", formula, "--witness", str(tree)]) == 0
        assert capsys.readouterr().out == f"true (witness: {tree})\n"
        assert tree.read_text(encoding="utf-8") == "level 1 [set: a]\n"


class TestDecisions:
    """decide-zero, decide-monadic and enum-sat"""

    def test_decide_zero(self, write, tmp_path, capsys):
        sig = write("p.sig", MONADIC_SIG)
        formula = write("f.sx", "(exists x (P x))")
        counter = tmp_path / "counter.model"
        code = main(["decide-zero", "--sig", sig, "--formula", formula, "--problem", "0f-valid",
                     "--witness", str(counter)])
        assert code == 1
        assert capsys.readouterr().out.startswith("invalid")
        assert counter.read_text(encoding="utf-8").startswith("universe: y")
        assert main(["decide-zero", "--sig", sig, "--formula", formula, "--problem", "0e-sat"]) == 0

    def test_decide_monadic(self, write, capsys):
        sig = write("p.sig", MONADIC_SIG)
        formula = write("q.sx", "(qgeq 3/4 x (qgeq 3/4 y (and (P x) (not (P y)))))")
        assert main(["decide-monadic", "--sig", sig, "--formula", formula, "--format", "machine"]) == 1
        assert capsys.readouterr().out == "VERDICT kind=unsatisfiable witness=-\n"

    def test_decide_monadic_witness(self, write, tmp_path, capsys):
        """Test that a satisfiable sentence writes the model and its tree"""
        sig = write("p.sig", MONADIC_SIG)
        formula = write("f.sx", "(exists x (forall y (and (P x) (not (P y)))))")
        witness = tmp_path / "w.model"
        code = main(["decide-monadic", "--sig", sig, "--formula", formula, "--epsilon", "1/2",
                     "--witness", str(witness)])
        assert code == 0
        assert capsys.readouterr().out == f"satisfiable (witness: {witness})\n"
        assert witness.read_text(encoding="utf-8").startswith("universe:")
        assert (tmp_path / "w.model.tree").exists()

    def test_enum_sat(self, write, tmp_path, capsys):
        """Test a found witness and an exhausted budget"""
        contradiction_sig = write("c.sig", "pred P 1\nconst c\n")
        contradiction = write("c.sx", "(and (P c) (not (P c)))")
        assert main(["enum-sat", "--sig", contradiction_sig, "--formula", contradiction, "--budget", "2"]) == 2
        assert capsys.readouterr().out == "budget_exhausted\n"

        equality_sig = write("e.sig", "equality\n")
        singleton = write("e.sx", "(exists x (forall y (= x y)))")
        witness = tmp_path / "w.model"
        code = main(["enum-sat", "--sig", equality_sig, "--formula", singleton, "--epsilon", "1/2",
                     "--witness", str(witness)])
        assert code == 0
        assert "universe: e1" in witness.read_text(encoding="utf-8")


TWO_STEP_MACHINE = """\
states: q0 qa
init: q0
accept: qa
q0 0 -> qa 1 R
q0 1 -> qa 1 R
"""

LOOP_MACHINE = """\
states: q0 qa
init: q0
accept: qa
q0 0 -> q0 0 R
q0 1 -> q0 1 R
"""


class TestEncodeTm:
    """The encode-tm command"""

    def test_verify(self, write, capsys):
        """Test that every part holds on the witness of a halting run"""
        tm = write("two.tm", TWO_STEP_MACHINE)
        assert main(["encode-tm", "--tm", tm, "--verify"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "T0 equality.reflexive: true" in lines
        assert lines[-1] == "verified"
        assert not any(line.endswith(": false") for line in lines)

    def test_not_halting(self, write, capsys):
        tm = write("loop.tm", LOOP_MACHINE)
        assert main(["encode-tm", "--tm", tm, "--max-steps", "8"]) == 2
        assert capsys.readouterr().out == "budget_exhausted\n"

    def test_out_files(self, write, tmp_path):
        """Test that the written files read back"""
        tm = write("two.tm", TWO_STEP_MACHINE)
        out = tmp_path / "encoded"
        assert main(["encode-tm", "--tm", tm, "--out", str(out)]) == 0
        signature = parse_signature((out / "two.sig").read_text(encoding="utf-8"))
        sentences = parse_formulas((out / "two.sx").read_text(encoding="utf-8"), signature)
        assert len(sentences) == len(encode_tm(parse_tm(TWO_STEP_MACHINE)).parts)


class TestOtherCommands:
    """quotient and corpus"""

    def test_quotient(self, write, capsys):
        sig = write("b.sig", "pred P1 1\npred P2 1\n")
        model = write("m.model", "universe: a b c\nmeasure: a=1/3 b=1/3 c=1/3\nrel P1: a b\nrel P2: c\n")
        assert main(["quotient", "--sig", sig, "--model", model]) == 0
        assert capsys.readouterr().out == "universe: {1} {2}\nmeasure: {1}=2/3 {2}=1/3\nrel P1: {1}\nrel P2: {2}\n"

    def test_corpus_emit(self, capsys, tmp_path):
        assert main(["corpus", "emit", "pac-point"]) == 0
        output = capsys.readouterr().out
        assert output.startswith("pred label 1\npred P1 1\n")
        assert "; point (E-semantics)" in output

        assert main(["corpus", "emit", "ann", "--tmax", "2", "--out", str(tmp_path)]) == 0
        signature = parse_signature((tmp_path / "ann.sig").read_text(encoding="utf-8"))
        assert len(parse_formulas((tmp_path / "ann.sx").read_text(encoding="utf-8"), signature)) == 4


class TestErrors:
    """Usage and input errors"""

    def test_usage(self, write):
        """Test that argparse errors exit with the usage code"""
        sig, model = write("p.sig", MONADIC_SIG), write("m.model", SKEWED_MODEL)
        formula = write("f.sx", "(forall x (P x))")
        test_cases = [
            ["check", "--sig", sig, "--model", model],
            ["check", "--sig", sig, "--model", model, "--formula", formula, "--epsilon", "0.5"],
            ["check", "--sig", sig, "--model", model, "--formula", formula, "--epsilon", "3/2"],
            ["enum-sat", "--sig", sig, "--formula", formula, "--budget", "0"],
            ["corpus", "emit", "pac-unknown"],
        ]

        for argv in test_cases:
            with pytest.raises(SystemExit) as error:
                main(argv)
            assert error.value.code == 64, f"Failed for input: {argv}"

    def test_missing_file(self, tmp_path, capsys):
        missing = str(tmp_path / "absent.sig")
        assert main(["quotient", "--sig", missing, "--model", missing]) == 64
        assert missing in capsys.readouterr().err

    def test_parse_error_position(self, write, capsys):
        sig, model = write("p.sig", MONADIC_SIG), write("m.model", SKEWED_MODEL)
        formula = write("f.sx", "(forall x (Q x))")
        assert main(["check", "--sig", sig, "--model", model, "--formula", formula]) == 64
        assert f"{formula}:1:11: undeclared predicate 'Q'" in capsys.readouterr().err

    def test_invalid_model(self, write, capsys):
        sig = write("p.sig", MONADIC_SIG)
        model = write("m.model", "universe: a b\nmeasure: a=1/2 b=1/3\n")
        formula = write("f.sx", "(forall x (P x))")
        assert main(["check", "--sig", sig, "--model", model, "--formula", formula]) == 64
        assert "measure sums to 5/6, expected 1" in capsys.readouterr().err
