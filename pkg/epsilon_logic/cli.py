"""
Command-line entry point.

Exit codes: 0 for true, satisfiable or valid; 1 for false, unsatisfiable or
invalid; 2 when a search budget runs out; 64 for usage and input errors.
"""
import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from beartype.typing import Callable, Dict, NoReturn, Optional, Sequence, Union

from . import config as CFG
from .content_loader import format_model, parse_model, parse_tm
from .corpus import CORPUS_NAMES, build
from .decide import DecisionOutcome, Verdict, ZeroProblem, decide_monadic, decide_zero, semi_decide_finite_sat
from .encode import Halted, TMEncoding, TuringMachine, encode_tm, simulate, witness_model
from .models import FiniteModel, ensure_valid, quotient_monadic
from .parser import ParseError, format_signature, parse_formula, parse_signature
from .semantics import QTree, Semantics, evaluate, find_qtree
from .syntax import Formula, QSentence, Signature, format_formula, format_qsentence
from .tools import parse_epsilon

logger = logging.getLogger("epsilon_logic")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(CFG.PARAMETERS.EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _epsilon(text: str) -> Fraction:
    try:
        return parse_epsilon(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error)) from error


def _positive(text: str) -> int:
    if not text.isdigit() or int(text) < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(text)


def _count(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return int(text)


# Input files


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ValueError(CFG.ERRORS.FILE_ERROR.format(path=path, message=error.strerror or error)) from error


def _located(path: str, error: ParseError) -> ValueError:
    return ValueError(CFG.ERRORS.FILE_POSITION.format(
        path=path, line=error.line, column=error.column, message=error.message))


def _load_signature(path: str) -> Signature:
    try:
        return parse_signature(_read(path))
    except ParseError as error:
        raise _located(path, error) from error


def _load_formula(path: str, signature: Signature) -> Union[Formula, QSentence]:
    try:
        return parse_formula(_read(path), signature)
    except ParseError as error:
        raise _located(path, error) from error


def _load_model(path: str, signature: Signature) -> FiniteModel:
    try:
        model = parse_model(_read(path), signature)
    except ParseError as error:
        raise _located(path, error) from error
    try:
        return ensure_valid(model)
    except ValueError as error:
        raise ValueError(CFG.ERRORS.FILE_ERROR.format(path=path, message=error)) from error


def _load_tm(path: str) -> TuringMachine:
    try:
        return parse_tm(_read(path))
    except ParseError as error:
        raise _located(path, error) from error


def _classical(formula: Union[Formula, QSentence]) -> Formula:
    if isinstance(formula, QSentence):
        if not formula.is_classical:
            raise ValueError(CFG.ERRORS.Q_QUANTIFIERS_PRESENT)
        return formula.to_formula()
    return formula


# Output


def _write(path: Union[str, Path], text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
    logger.info(CFG.LOGS.WROTE_FILE.format(path=path))


def _out_dir(path: str) -> Path:
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    if not directory.is_dir():
        raise ValueError(CFG.ERRORS.NOT_A_DIRECTORY.format(path=path))
    return directory


def _report(args: argparse.Namespace, kind: str, witness: Optional[str] = None) -> None:
    if args.format == "machine":
        print(CFG.LOGS.VERDICT.format(kind=kind, witness=witness or CFG.LOGS.NO_WITNESS))
    elif witness:
        print(CFG.LOGS.VERDICT_TEXT_WITNESS.format(kind=kind, witness=witness))
    else:
        print(CFG.LOGS.VERDICT_TEXT.format(kind=kind))


def _save_witness(args: argparse.Namespace, model: Optional[FiniteModel], tree: Optional[QTree] = None) -> Optional[str]:
    """Writes the model to --witness and a non-empty tree next to it; returns the model path."""
    if not args.witness or model is None:
        return None
    _write(args.witness, format_model(model))
    if tree is not None and tree.root is not None:
        _write(f"{args.witness}.tree", tree.render())
    return args.witness


def _exit_code(verdict: Verdict) -> int:
    if verdict is Verdict.BUDGET_EXHAUSTED:
        return CFG.PARAMETERS.EXIT_BUDGET
    if verdict in (Verdict.SATISFIABLE, Verdict.VALID):
        return CFG.PARAMETERS.EXIT_TRUE
    return CFG.PARAMETERS.EXIT_FALSE


def _conclude(args: argparse.Namespace, outcome: DecisionOutcome) -> int:
    model = outcome.witness if outcome.witness is not None else outcome.counter
    tree = outcome.certificate if isinstance(outcome.certificate, QTree) else None
    _report(args, outcome.verdict.value, _save_witness(args, model, tree))
    return _exit_code(outcome.verdict)


# Commands


def _run_check(args: argparse.Namespace) -> int:
    signature = _load_signature(args.sig)
    model = _load_model(args.model, signature)
    formula = _load_formula(args.formula, signature)
    holds = evaluate(model, formula, args.epsilon, Semantics(args.semantics))
    witness = None
    if holds and isinstance(formula, QSentence) and args.witness:
        tree = find_qtree(model, formula)
        if tree is not None and tree.root is not None:
            _write(args.witness, tree.render())
            witness = args.witness
    _report(args, "true" if holds else "false", witness)
    return CFG.PARAMETERS.EXIT_TRUE if holds else CFG.PARAMETERS.EXIT_FALSE


def _run_decide_monadic(args: argparse.Namespace) -> int:
    signature = _load_signature(args.sig)
    formula = _load_formula(args.formula, signature)
    outcome = decide_monadic(formula, signature, Semantics(args.semantics), args.epsilon)
    return _conclude(args, outcome)


def _run_decide_zero(args: argparse.Namespace) -> int:
    signature = _load_signature(args.sig)
    formula = _classical(_load_formula(args.formula, signature))
    outcome = decide_zero(formula, ZeroProblem(args.problem), signature)
    return _conclude(args, outcome)


def _run_enum_sat(args: argparse.Namespace) -> int:
    signature = _load_signature(args.sig)
    formula = _classical(_load_formula(args.formula, signature))
    outcome = semi_decide_finite_sat(
        formula,
        args.epsilon,
        Semantics(args.semantics),
        args.budget,
        signature=signature,
        max_size=args.max_size,
        jobs=args.jobs,
    )
    return _conclude(args, outcome)


def _encoding_text(encoding: TMEncoding) -> str:
    blocks = [f"; {part.group} {part.label}\n{format_qsentence(part.sentence)}" for part in encoding.parts]
    return "\n".join(blocks) + "\n"


def _run_encode_tm(args: argparse.Namespace) -> int:
    machine = _load_tm(args.tm)
    encoding = encode_tm(machine)
    logger.info(CFG.LOGS.ENCODED.format(count=len(encoding.parts), predicates=len(encoding.signature.predicates)))
    if args.out:
        directory = _out_dir(args.out)
        stem = Path(args.tm).stem
        _write(directory / f"{stem}.sig", format_signature(encoding.signature))
        _write(directory / f"{stem}.sx", _encoding_text(encoding))
    run = simulate(machine, args.max_steps)
    if not isinstance(run, Halted):
        logger.warning(CFG.LOGS.TM_NOT_HALTED.format(steps=args.max_steps))
        _report(args, Verdict.BUDGET_EXHAUSTED.value)
        return CFG.PARAMETERS.EXIT_BUDGET
    logger.info(CFG.LOGS.TM_HALTED.format(steps=run.steps, state=run.final.state))
    model = witness_model(machine, args.max_steps)
    if not args.verify:
        _report(args, "halted", _save_witness(args, model))
        return CFG.PARAMETERS.EXIT_TRUE
    failed = 0
    for part in encoding.parts:
        holds = evaluate(model, part.sentence, 0, Semantics.E)
        if not holds:
            failed += 1
            logger.warning(CFG.LOGS.TM_PART_FAILED.format(label=part.label))
        print(CFG.LOGS.PART_RESULT.format(label=f"{part.group} {part.label}", result="true" if holds else "false"))
    _report(args, "verified" if not failed else "failed", _save_witness(args, model))
    return CFG.PARAMETERS.EXIT_FALSE if failed else CFG.PARAMETERS.EXIT_TRUE


def _run_quotient(args: argparse.Namespace) -> int:
    signature = _load_signature(args.sig)
    model = _load_model(args.model, signature)
    quotient = quotient_monadic(model)
    if args.witness:
        _write(args.witness, format_model(quotient))
    else:
        sys.stdout.write(format_model(quotient))
    return CFG.PARAMETERS.EXIT_TRUE


def _run_corpus(args: argparse.Namespace) -> int:
    entry = build(args.name, s=args.s, t_max=args.tmax, corrected=args.corrected)
    blocks = [
        f"; {item.label} ({item.semantics.value}-semantics)\n{format_formula(item.formula)}"
        for item in entry.items
    ]
    formulas = "\n".join(blocks) + "\n"
    if not args.out:
        sys.stdout.write(format_signature(entry.signature))
        sys.stdout.write(formulas)
        return CFG.PARAMETERS.EXIT_TRUE
    directory = _out_dir(args.out)
    _write(directory / f"{entry.name}.sig", format_signature(entry.signature))
    _write(directory / f"{entry.name}.sx", formulas)
    return CFG.PARAMETERS.EXIT_TRUE


# Parser


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    parser.add_argument("--verbose", action="store_true", help="log search progress")


def _semantic_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--semantics", choices=("E", "F"), default="E")
    parser.add_argument("--epsilon", type=_epsilon, default=parse_epsilon("0"), help="rational p/q in [0, 1]")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="epsilon-logic", description="Epsilon-probability logic toolkit.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    check = commands.add_parser("check", help="evaluate a sentence in a model")
    check.add_argument("--sig", required=True)
    check.add_argument("--model", required=True)
    check.add_argument("--formula", required=True)
    check.add_argument("--witness", help="write the q-tree here")
    _semantic_flags(check)
    _common(check)

    monadic = commands.add_parser("decide-monadic", help="decide satisfiability over a monadic signature")
    monadic.add_argument("--sig", required=True)
    monadic.add_argument("--formula", required=True)
    monadic.add_argument("--witness", help="write the witness model here and its q-tree to <path>.tree")
    _semantic_flags(monadic)
    _common(monadic)

    zero = commands.add_parser("decide-zero", help="decide the threshold-zero problems")
    zero.add_argument("--sig", required=True)
    zero.add_argument("--formula", required=True)
    zero.add_argument("--problem", required=True, choices=[problem.value for problem in ZeroProblem])
    zero.add_argument("--witness", help="write the witness or countermodel here")
    _common(zero)

    enum = commands.add_parser("enum-sat", help="search finite models up to a budget")
    enum.add_argument("--sig", required=True)
    enum.add_argument("--formula", required=True)
    enum.add_argument("--budget", type=_positive, default=CFG.PARAMETERS.DEFAULT_BUDGET)
    enum.add_argument("--max-size", type=_positive, default=None)
    enum.add_argument("--jobs", type=_positive, default=1)
    enum.add_argument("--witness", help="write the witness model here")
    _semantic_flags(enum)
    _common(enum)

    encode = commands.add_parser("encode-tm", help="encode a Turing machine and check the halting witness")
    encode.add_argument("--tm", required=True)
    encode.add_argument("--max-steps", type=_count, default=CFG.PARAMETERS.DEFAULT_MAX_STEPS)
    encode.add_argument("--verify", action="store_true", help="evaluate every part on the witness model")
    encode.add_argument("--out", help="directory for the signature and q-sentence files")
    encode.add_argument("--witness", help="write the witness model here")
    _common(encode)

    quotient = commands.add_parser("quotient", help="collapse a monadic model to its simple model")
    quotient.add_argument("--sig", required=True)
    quotient.add_argument("--model", required=True)
    quotient.add_argument("--witness", help="write the quotient here instead of stdout")
    _common(quotient)

    corpus = commands.add_parser("corpus", help="emit example sentence families")
    actions = corpus.add_subparsers(dest="action", required=True, parser_class=_ArgumentParser)
    emit = actions.add_parser("emit")
    emit.add_argument("name", choices=CORPUS_NAMES)
    emit.add_argument("--s", type=_positive, default=1, help="number of bits for the PAC families")
    emit.add_argument("--tmax", type=_positive, default=1, help="last time step for the network family")
    emit.add_argument("--corrected", action="store_true", help="use the corrected conjunction clause")
    emit.add_argument("--out", help="directory for the signature and formula files")
    _common(emit)
    return parser


_COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "check": _run_check,
    "decide-monadic": _run_decide_monadic,
    "decide-zero": _run_decide_zero,
    "enum-sat": _run_enum_sat,
    "encode-tm": _run_encode_tm,
    "quotient": _run_quotient,
    "corpus": _run_corpus,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as error:
        print(f"{parser.prog}: error: {error}", file=sys.stderr)
        return CFG.PARAMETERS.EXIT_USAGE
