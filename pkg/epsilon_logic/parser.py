"""
Readers for formula and signature files.

Formulas are s-expressions: `(P x y)`, `(= x y)`, `(not f)`, `(and f ...)`,
`(or f ...)`, `(implies f g)`, `(iff f g)`, `(forall x f)`, `(exists x f)`,
`(qgeq 1/2 x f)` and `(qgt 1/2 x f)`. Text after `;` up to the end of the
line is a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from beartype import beartype
from beartype.typing import Dict, List, Optional, Tuple, Union

from . import config as CFG
from .syntax import (
    And, Atom, Const, Equal, Exists, Forall, Formula, Iff, Implies, Not, Or,
    QSentence, QuantifierKind, Signature, Term, Var, is_quantifier_free,
)
from .tools import parse_rational

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")
_IDENTIFIER = re.compile(CFG.GRAMMAR.IDENTIFIER)


class ParseError(ValueError):
    """Syntax error with the 1-based position where it was detected."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(CFG.ERRORS.POSITION.format(line=line, column=column, message=message))
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Symbol:
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class _List:
    items: Tuple[Union["_Symbol", "_List"], ...]
    line: int
    column: int


_Node = Union[_Symbol, _List]


class SourceReader:
    """Splits s-expression text into nested lists, tracking line and column."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.index = 0
        self.line = 1
        self.column = 1

    def _advance(self, chunk: str) -> None:
        self.index += len(chunk)
        lines = chunk.count("\n")
        if lines > 0:
            self.line += lines
            self.column = len(chunk) - chunk.rfind("\n")
        else:
            self.column += len(chunk)

    def read_all(self) -> List[_Node]:
        stack: List[Tuple[List[_Node], int, int]] = []
        top: List[_Node] = []
        while self.index < len(self.text):
            chunk = _TOKEN.match(self.text, self.index).group()
            line, column = self.line, self.column
            if chunk == "(":
                stack.append((top, line, column))
                top = []
            elif chunk == ")":
                if not stack:
                    raise ParseError(CFG.ERRORS.UNBALANCED_CLOSE, line, column)
                items = top
                top, open_line, open_column = stack.pop()
                top.append(_List(tuple(items), open_line, open_column))
            elif not chunk[0].isspace() and chunk[0] != CFG.GRAMMAR.COMMENT:
                top.append(_Symbol(chunk, line, column))
            self._advance(chunk)
        if stack:
            raise ParseError(CFG.ERRORS.UNEXPECTED_EOF.format(expected="')'"), self.line, self.column)
        return top


def _describe(node: _Node) -> str:
    return node.text if isinstance(node, _Symbol) else "(...)"


class _Builder:
    def __init__(self, signature: Signature) -> None:
        self.signature = signature

    def fail(self, node: _Node, message: str) -> ParseError:
        return ParseError(message, node.line, node.column)

    def head(self, node: _Node) -> Optional[str]:
        if isinstance(node, _List) and node.items and isinstance(node.items[0], _Symbol):
            return node.items[0].text
        return None

    def sentence(self, node: _Node) -> Union[Formula, QSentence]:
        prefix: List[Tuple[QuantifierKind, str]] = []
        current = node
        while self.head(current) in CFG.GRAMMAR.QUANTIFIERS:
            kind, name, current = self.quantifier(current)
            prefix.append((kind, name))
        if all(kind.is_classical for kind, _ in prefix):
            return self.formula(node)
        matrix = self.formula(current)
        if not is_quantifier_free(matrix):
            raise self.fail(current, CFG.ERRORS.Q_MATRIX_NOT_QUANTIFIER_FREE)
        try:
            return QSentence(tuple(prefix), matrix)
        except ValueError as error:
            raise self.fail(node, str(error)) from error

    def quantifier(self, node: _List) -> Tuple[QuantifierKind, str, _Node]:
        keyword = node.items[0].text
        if keyword in (CFG.GRAMMAR.FORALL, CFG.GRAMMAR.EXISTS):
            self.expect_operands(node, 2)
            kind = QuantifierKind.FORALL() if keyword == CFG.GRAMMAR.FORALL else QuantifierKind.EXISTS()
            variable, body = node.items[1], node.items[2]
        else:
            self.expect_operands(node, 3)
            threshold_node, variable, body = node.items[1:]
            if not isinstance(threshold_node, _Symbol):
                raise self.fail(threshold_node, CFG.ERRORS.UNEXPECTED_TOKEN.format(
                    expected="threshold", found=_describe(threshold_node)))
            try:
                threshold = parse_rational(threshold_node.text)
                kind = QuantifierKind.WEAK(threshold) if keyword == CFG.GRAMMAR.WEAK else QuantifierKind.STRONG(threshold)
            except ValueError as error:
                raise self.fail(threshold_node, str(error)) from error
        return kind, self.variable(variable), body

    def expect_operands(self, node: _List, expected: int) -> None:
        actual = len(node.items) - 1
        if actual != expected:
            raise self.fail(node, CFG.ERRORS.CONNECTIVE_ARITY.format(
                name=node.items[0].text, expected=expected, actual=actual))

    def identifier(self, node: _Node, expected: str) -> str:
        if not isinstance(node, _Symbol) or not _IDENTIFIER.fullmatch(node.text):
            raise self.fail(node, CFG.ERRORS.UNEXPECTED_TOKEN.format(expected=expected, found=_describe(node)))
        if node.text in CFG.GRAMMAR.RESERVED:
            raise self.fail(node, CFG.ERRORS.RESERVED_NAME.format(name=node.text))
        return node.text

    def variable(self, node: _Node) -> str:
        name = self.identifier(node, "variable")
        if name in self.signature.constants:
            raise self.fail(node, CFG.ERRORS.UNEXPECTED_TOKEN.format(expected="variable", found=name))
        return name

    def term(self, node: _Node) -> Term:
        name = self.identifier(node, "term")
        return Const(name) if name in self.signature.constants else Var(name)

    def formula(self, node: _Node) -> Formula:
        keyword = self.head(node)
        if keyword is None:
            raise self.fail(node, CFG.ERRORS.UNEXPECTED_TOKEN.format(expected="formula", found=_describe(node)))
        operands = node.items[1:]
        if keyword == CFG.GRAMMAR.NOT:
            self.expect_operands(node, 1)
            return Not(self.formula(operands[0]))
        if keyword == CFG.GRAMMAR.AND:
            return And(tuple(self.formula(child) for child in operands))
        if keyword == CFG.GRAMMAR.OR:
            return Or(tuple(self.formula(child) for child in operands))
        if keyword == CFG.GRAMMAR.IMPLIES:
            self.expect_operands(node, 2)
            return Implies(self.formula(operands[0]), self.formula(operands[1]))
        if keyword == CFG.GRAMMAR.IFF:
            self.expect_operands(node, 2)
            return Iff(self.formula(operands[0]), self.formula(operands[1]))
        if keyword in (CFG.GRAMMAR.FORALL, CFG.GRAMMAR.EXISTS):
            _, name, body = self.quantifier(node)
            return (Forall if keyword == CFG.GRAMMAR.FORALL else Exists)(name, self.formula(body))
        if keyword in (CFG.GRAMMAR.WEAK, CFG.GRAMMAR.STRONG):
            raise self.fail(node, CFG.ERRORS.NESTED_Q_QUANTIFIER.format(keyword=keyword))
        if keyword == CFG.GRAMMAR.EQUALS:
            if not self.signature.has_equality:
                raise self.fail(node, CFG.ERRORS.EQUALITY_UNDECLARED)
            self.expect_operands(node, 2)
            return Equal(self.term(operands[0]), self.term(operands[1]))
        arity = self.signature.arity(keyword)
        if arity is None:
            raise self.fail(node, CFG.ERRORS.UNDECLARED_PREDICATE.format(name=keyword))
        if arity != len(operands):
            raise self.fail(node, CFG.ERRORS.ARITY_MISMATCH.format(
                name=keyword, expected=arity, actual=len(operands)))
        return Atom(keyword, tuple(self.term(child) for child in operands))


@beartype
def parse_formulas(text: str, signature: Signature) -> List[Union[Formula, QSentence]]:
    """Reads every top-level expression of a formula file."""
    builder = _Builder(signature)
    return [builder.sentence(node) for node in SourceReader(text).read_all()]


@beartype
def parse_formula(text: str, signature: Signature) -> Union[Formula, QSentence]:
    """
    Reads exactly one formula.

    Expressions whose prenex prefix contains a q-quantifier yield a
    QSentence; everything else yields a first-order Formula.
    """
    nodes = SourceReader(text).read_all()
    if not nodes:
        reader = SourceReader(text)
        reader._advance(text)
        raise ParseError(CFG.ERRORS.UNEXPECTED_EOF.format(expected="formula"), reader.line, reader.column)
    if len(nodes) > 1:
        extra = nodes[1]
        raise ParseError(CFG.ERRORS.TRAILING_INPUT.format(found=_describe(extra)), extra.line, extra.column)
    return _Builder(signature).sentence(nodes[0])


@beartype
def parse_signature(text: str) -> Signature:
    """
    Reads a signature file.

    One declaration per line: `pred <name> <arity>`, `const <name>` or
    `equality`. Text after `#` is ignored.
    """
    predicates: List[Tuple[str, int]] = []
    constants: List[str] = []
    seen: Dict[str, int] = {}
    equality = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(CFG.GRAMMAR.LINE_COMMENT, 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == CFG.GRAMMAR.SIG_PREDICATE and len(words) == 3 and words[2].isdigit():
            name, arity = words[1], int(words[2])
            if arity < 1:
                raise ParseError(CFG.ERRORS.BAD_ARITY.format(name=name, arity=arity), number, 1)
            predicates.append((name, arity))
        elif words[0] == CFG.GRAMMAR.SIG_CONSTANT and len(words) == 2:
            name = words[1]
            constants.append(name)
        elif words == [CFG.GRAMMAR.SIG_EQUALITY]:
            equality = True
            continue
        else:
            raise ParseError(CFG.ERRORS.BAD_SIGNATURE_LINE.format(line=line), number, 1)
        if not _IDENTIFIER.fullmatch(name) or name in CFG.GRAMMAR.RESERVED:
            raise ParseError(CFG.ERRORS.UNEXPECTED_TOKEN.format(expected="symbol name", found=name), number, 1)
        if name in seen:
            raise ParseError(CFG.ERRORS.DUPLICATE_SYMBOL.format(name=name), number, 1)
        seen[name] = number
    return Signature(tuple(predicates), tuple(constants), equality)


@beartype
def format_signature(signature: Signature) -> str:
    lines = [f"{CFG.GRAMMAR.SIG_PREDICATE} {name} {arity}" for name, arity in signature.predicates]
    lines += [f"{CFG.GRAMMAR.SIG_CONSTANT} {name}" for name in signature.constants]
    if signature.has_equality:
        lines.append(CFG.GRAMMAR.SIG_EQUALITY)
    return "\n".join(lines) + "\n"
