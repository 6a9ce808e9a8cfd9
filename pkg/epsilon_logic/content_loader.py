"""
Line-oriented text formats for models and Turing machines.

Both formats ignore blank lines and everything after `#`. Readers raise
ParseError with the line and column of the offending text.
"""
import re
from fractions import Fraction

from beartype import beartype
from beartype.typing import Dict, List, Optional, Set, Tuple

from . import config as CFG
from .encode import Move, Transition, TuringMachine
from .models import FiniteModel
from .parser import ParseError
from .syntax import Signature
from .tools import format_rational, parse_rational

_TUPLE = re.compile(r"\(([^()]*)\)|([^\s()]+)")


def _lines(text: str) -> List[Tuple[int, int, str]]:
    """(line number, column of the first character, content) for every non-blank line."""
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(CFG.GRAMMAR.LINE_COMMENT, 1)[0].rstrip()
        stripped = line.lstrip()
        if stripped:
            result.append((number, len(line) - len(stripped) + 1, stripped))
    return result


# Models


@beartype
def parse_model(text: str, signature: Signature) -> FiniteModel:
    """
    Reads a model file:

        universe: a b c
        measure: a=1/4 b=1/2 c=1/4
        const minc=a
        rel P: a c
        rel R: (a b) (b c)

    The universe line comes first. The result is checked with validate_model
    by the caller, not here.
    """
    universe: Optional[Tuple[str, ...]] = None
    measure: Dict[str, Fraction] = {}
    constants: Dict[str, str] = {}
    relations: Dict[str, frozenset] = {}
    for number, column, line in _lines(text):
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if line.startswith(CFG.GRAMMAR.MODEL_UNIVERSE):
                universe = tuple(line[len(CFG.GRAMMAR.MODEL_UNIVERSE):].split())
                continue
            if universe is None:
                raise ValueError(CFG.ERRORS.MISSING_UNIVERSE.format(what=repr(keyword)))
            known = set(universe)
            if line.startswith(CFG.GRAMMAR.MODEL_MEASURE):
                for item in line[len(CFG.GRAMMAR.MODEL_MEASURE):].split():
                    label, sep, value = item.rpartition("=")
                    if not sep or not label:
                        raise ValueError(CFG.ERRORS.BAD_MODEL_LINE.format(line=line))
                    _require_element(label, known, "measure")
                    measure[label] = parse_rational(value)
            elif keyword == CFG.GRAMMAR.MODEL_CONSTANT:
                name, sep, label = rest.partition("=")
                if not sep:
                    raise ValueError(CFG.ERRORS.BAD_MODEL_LINE.format(line=line))
                _require_element(label.strip(), known, name.strip())
                constants[name.strip()] = label.strip()
            elif keyword == CFG.GRAMMAR.MODEL_RELATION:
                name, sep, body = rest.partition(":")
                if not sep:
                    raise ValueError(CFG.ERRORS.BAD_MODEL_LINE.format(line=line))
                name = name.strip()
                rows = set()
                for match in _TUPLE.finditer(body):
                    row = tuple(match.group(1).split()) if match.group(1) is not None else (match.group(2),)
                    for label in row:
                        _require_element(label, known, name)
                    rows.add(row)
                relations[name] = frozenset(rows)
            else:
                raise ValueError(CFG.ERRORS.BAD_MODEL_LINE.format(line=line))
        except ParseError:
            raise
        except ValueError as error:
            raise ParseError(str(error), number, column) from error
    if universe is None:
        raise ParseError(CFG.ERRORS.MISSING_UNIVERSE.format(what="end of file"), len(text.splitlines()) + 1, 1)
    return FiniteModel(signature, universe, relations, constants, measure)


def _require_element(label: str, known: Set[str], where: str) -> None:
    if label not in known:
        raise ValueError(CFG.ERRORS.UNKNOWN_ELEMENT.format(label=label, where=where))


@beartype
def format_model(model: FiniteModel) -> str:
    lines = [
        f"{CFG.GRAMMAR.MODEL_UNIVERSE} {' '.join(model.universe)}",
        f"{CFG.GRAMMAR.MODEL_MEASURE} "
        + " ".join(f"{label}={format_rational(model.measure[label])}" for label in model.universe),
    ]
    lines += [f"{CFG.GRAMMAR.MODEL_CONSTANT} {name}={model.constants[name]}" for name in sorted(model.constants)]
    for name, arity in model.signature.predicates:
        rows = sorted(model.relation(name))
        if arity == 1:
            body = " ".join(row[0] for row in rows)
        else:
            body = " ".join("(" + " ".join(row) + ")" for row in rows)
        lines.append(f"{CFG.GRAMMAR.MODEL_RELATION} {name}: {body}".rstrip())
    return "\n".join(lines) + "\n"


# Turing machines


def _states(line: str, keyword: str) -> List[str]:
    return line[len(keyword):].split()


@beartype
def parse_tm(text: str) -> TuringMachine:
    """
    Reads a machine file:

        states: q0 q1 qa
        init: q0
        accept: qa
        reject:
        q0 0 -> q1 1 R
    """
    states: List[str] = []
    initial = ""
    accepting: List[str] = []
    rejecting: List[str] = []
    transitions: List[Transition] = []
    last = (1, 1)
    for number, column, line in _lines(text):
        last = (number, column)
        try:
            if line.startswith(CFG.GRAMMAR.TM_STATES):
                states = _states(line, CFG.GRAMMAR.TM_STATES)
            elif line.startswith(CFG.GRAMMAR.TM_INITIAL):
                named = _states(line, CFG.GRAMMAR.TM_INITIAL)
                if len(named) != 1:
                    raise ValueError(CFG.ERRORS.BAD_TM_LINE.format(line=line))
                initial = named[0]
            elif line.startswith(CFG.GRAMMAR.TM_ACCEPT):
                accepting = _states(line, CFG.GRAMMAR.TM_ACCEPT)
            elif line.startswith(CFG.GRAMMAR.TM_REJECT):
                rejecting = _states(line, CFG.GRAMMAR.TM_REJECT)
            else:
                transitions.append(_transition(line))
        except ValueError as error:
            raise ParseError(str(error), number, column) from error
    try:
        return TuringMachine(
            states=tuple(states),
            initial=initial,
            accepting=frozenset(accepting),
            rejecting=frozenset(rejecting),
            transitions=tuple(transitions),
        )
    except ValueError as error:
        raise ParseError(str(error), *last) from error


def _transition(line: str) -> Transition:
    words = line.split()
    if len(words) != 6 or words[2] != CFG.GRAMMAR.TM_ARROW:
        raise ValueError(CFG.ERRORS.BAD_TM_LINE.format(line=line))
    state, read, _, target, write, move = words
    for symbol in (read, write):
        if symbol not in ("0", "1"):
            raise ValueError(CFG.ERRORS.BAD_SYMBOL.format(symbol=symbol))
    if move not in (Move.LEFT.value, Move.RIGHT.value):
        raise ValueError(CFG.ERRORS.BAD_MOVE.format(move=move))
    return Transition(state, int(read), target, int(write), Move(move))


@beartype
def format_tm(machine: TuringMachine) -> str:
    lines = [
        f"{CFG.GRAMMAR.TM_STATES} {' '.join(machine.states)}",
        f"{CFG.GRAMMAR.TM_INITIAL} {machine.initial}",
        f"{CFG.GRAMMAR.TM_ACCEPT} {' '.join(sorted(machine.accepting))}".rstrip(),
        f"{CFG.GRAMMAR.TM_REJECT} {' '.join(sorted(machine.rejecting))}".rstrip(),
    ]
    lines += [
        f"{rule.state} {rule.read} {CFG.GRAMMAR.TM_ARROW} {rule.target} {rule.write} {rule.move.value}"
        for rule in machine.transitions
    ]
    return "\n".join(lines) + "\n"
