"""
Ready-made sentences from learning theory, weighted graphs and neural networks.

Every builder expands bounded conjunctions and exclusive-or into the core
connectives, so the entries run through every procedure their signatures
qualify for.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from beartype import beartype
from beartype.typing import Callable, Dict, List, Sequence, Tuple

from . import config as CFG
from .semantics import Semantics
from .syntax import And, Atom, Exists, Forall, Formula, Iff, Implies, Not, Signature, Var

LABEL = "label"


@beartype
@dataclass(frozen=True)
class CorpusSentence:
    label: str
    formula: Formula
    semantics: Semantics


@beartype
@dataclass(frozen=True)
class CorpusEntry:
    """
    A named family of sentences over one signature.

    `note` says how epsilon is meant to be chosen when the sentences are
    evaluated.
    """

    name: str
    signature: Signature
    items: Tuple[CorpusSentence, ...]
    note: str = ""

    def __post_init__(self) -> None:
        for item in self.items:
            self.signature.check(item.formula)

    @property
    def sentences(self) -> Tuple[Formula, ...]:
        return tuple(item.formula for item in self.items)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(item.label for item in self.items)


def _atom(pred: str, *names: str) -> Atom:
    return Atom(pred, tuple(Var(name) for name in names))


def _xor(left: Formula, right: Formula) -> Formula:
    return Not(Iff(left, right))


def _xor_all(parts: Sequence[Formula]) -> Formula:
    result = parts[0]
    for part in parts[1:]:
        result = _xor(result, part)
    return result


def _conjunction(parts: Sequence[Formula]) -> Formula:
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _prefix(quantifiers: Sequence[Tuple[type, str]], body: Formula) -> Formula:
    for quantifier, name in reversed(quantifiers):
        body = quantifier(name, body)
    return body


# Learning theory


class PacKind(Enum):
    POINT = "point"
    PARITY = "parity"
    CONJUNCTION = "conjunction"
    DECISION_LIST = "decision_list"


def _bit(index: int, name: str) -> Atom:
    return _atom(f"P{index}", name)


def _pac_point(s: int, corrected: bool) -> Formula:
    match = _conjunction([Iff(_bit(i, "x"), _bit(i, "y")) for i in range(1, s + 1)])
    return Exists("x", Forall("y", Iff(_atom(LABEL, "y"), match)))


def _pac_parity(s: int, corrected: bool) -> Formula:
    odd = _xor_all([And((_bit(i, "x"), _bit(i, "y"))) for i in range(1, s + 1)])
    return Exists("x", Forall("y", Iff(_atom(LABEL, "y"), odd)))


def _pac_conjunction(s: int, corrected: bool) -> Formula:
    # as printed, the negative clause tests z twice; `corrected` reads y for the second bit
    second = "y" if corrected else "z"
    clauses = []
    for i in range(1, s + 1):
        positive = Implies(And((_bit(i, "x"), _bit(i, "y"))), _bit(i, "z"))
        negative = Implies(And((Not(_bit(i, "x")), Not(_bit(i, second)))), Not(_bit(i, "z")))
        clauses.append(And((positive, negative)))
    body = Iff(_atom(LABEL, "z"), _conjunction(clauses))
    return _prefix(((Exists, "x"), (Exists, "y"), (Forall, "z")), body)


def _differs(i: int) -> Formula:
    return _xor(_bit(i, "x"), _bit(i, "w"))


def _pac_decision_list(s: int, corrected: bool) -> Formula:
    otherwise = Implies(
        _conjunction([_differs(i) for i in range(1, s + 1)]),
        Iff(_atom(LABEL, "w"), _bit(1, "z")),
    )
    branches = []
    for i in range(1, s + 1):
        reached = [_differs(j) for j in range(1, i)] + [Iff(_bit(i, "x"), _bit(i, "w"))]
        branches.append(Implies(_conjunction(reached), Iff(_atom(LABEL, "w"), _bit(i, "y"))))
    body = And((otherwise, *branches))
    return _prefix(((Exists, "x"), (Exists, "y"), (Exists, "z"), (Forall, "w")), body)


_PAC_BUILDERS: Dict[PacKind, Callable[[int, bool], Formula]] = {
    PacKind.POINT: _pac_point,
    PacKind.PARITY: _pac_parity,
    PacKind.CONJUNCTION: _pac_conjunction,
    PacKind.DECISION_LIST: _pac_decision_list,
}


@beartype
def pac_signature(s: int) -> Signature:
    return Signature(((LABEL, 1),) + tuple((f"P{i}", 1) for i in range(1, s + 1)))


@beartype
def build_pac(kind: PacKind, s: int, corrected: bool = False) -> CorpusEntry:
    """
    The sentence saying that some concept of the class labels all but
    epsilon of the mass correctly, over bits P1..Ps and the label predicate.
    """
    if s < 1:
        raise ValueError(CFG.ERRORS.BAD_PAC_SIZE.format(s=s))
    formula = _PAC_BUILDERS[kind](s, corrected)
    return CorpusEntry(
        name=f"pac-{kind.value.replace('_', '-')}",
        signature=pac_signature(s),
        items=(CorpusSentence(kind.value, formula, Semantics.E),),
        note="E-semantics; epsilon is the tolerated labelling error",
    )


# Weighted graphs


class GraphKind(Enum):
    VERTEX_WEIGHTED = "vertex_weighted"
    EDGE_WEIGHTED = "edge_weighted"


def _forall(names: str, body: Formula) -> Formula:
    return _prefix(tuple((Forall, name) for name in names), body)


def _equivalence(pred: str) -> List[Tuple[str, Formula]]:
    key = pred.lower()
    return [
        (f"{key}.reflexive", Forall("x", _atom(pred, "x", "x"))),
        (f"{key}.symmetric", _forall("xy", Iff(_atom(pred, "x", "y"), _atom(pred, "y", "x")))),
        (f"{key}.transitive", _forall("xyz", Implies(
            And((_atom(pred, "x", "y"), _atom(pred, "y", "z"))), _atom(pred, "z", "x")))),
    ]


def _edge_axioms() -> List[Tuple[str, Formula]]:
    axioms = _equivalence("C") + _equivalence("D")
    axioms += [
        ("incidence.codomain", _forall("xy", Implies(
            _atom("C", "x", "y"), Forall("z", Iff(_atom("I", "x", "z"), _atom("I", "y", "z")))))),
        ("incidence.domain", _forall("xy", Implies(
            _atom("D", "x", "y"), Forall("z", Iff(_atom("I", "z", "x"), _atom("I", "z", "y")))))),
        ("codomain.incidence", _forall("xy", Implies(
            _atom("I", "x", "y"), Forall("z", Iff(_atom("C", "z", "x"), _atom("I", "z", "y")))))),
        ("domain.incidence", _forall("xy", Implies(
            _atom("I", "x", "y"), Forall("z", Iff(_atom("D", "z", "y"), _atom("I", "x", "z")))))),
        ("domain.unique", _forall("xyz", Implies(
            And((_atom("I", "x", "y"), _atom("I", "x", "z"))), _atom("D", "y", "z")))),
        ("codomain.unique", _forall("xyz", Implies(
            And((_atom("I", "y", "x"), _atom("I", "z", "x"))), _atom("C", "y", "z")))),
    ]
    return axioms


def _edge(a: str, b: str) -> Atom:
    return _atom("E", a, b)


def _vertex_sentences() -> List[Tuple[str, Formula, Semantics]]:
    clique = [And((_edge(a, b), _edge(b, a))) for a, b in (("x1", "x2"), ("x1", "x3"), ("x2", "x3"))]
    return [
        ("loopless", Forall("x", Not(_edge("x", "x"))), Semantics.F),
        ("undirected", _forall("xy", Iff(_edge("x", "y"), _edge("y", "x"))), Semantics.F),
        ("complete", _forall("xy", And((_edge("x", "y"), _edge("y", "x")))), Semantics.F),
        ("bipartite", _forall("xy", Implies(
            Iff(_atom("A", "x"), _atom("A", "y")), And((Not(_edge("x", "y")), Not(_edge("y", "x")))))), Semantics.F),
        ("initial_vertices", Exists("x", Forall("y", _edge("x", "y"))), Semantics.F),
        ("clique_3", _prefix(((Exists, "x1"), (Exists, "x2"), (Exists, "x3")), And(tuple(clique))), Semantics.E),
        ("hub", Exists("v", Forall("x", _edge("x", "v"))), Semantics.E),
    ]


EDGE_SIGNATURE = Signature((("I", 2), ("C", 2), ("D", 2)))
VERTEX_SIGNATURE = Signature((("E", 2), ("A", 1)))


@beartype
def build_graph_axioms(kind: GraphKind) -> CorpusEntry:
    if kind is GraphKind.EDGE_WEIGHTED:
        return CorpusEntry(
            name="graph-edge-weighted",
            signature=EDGE_SIGNATURE,
            items=tuple(CorpusSentence(label, formula, Semantics.F) for label, formula in _edge_axioms()),
            note="F-semantics at epsilon 0; elements are edges weighted by the measure",
        )
    return CorpusEntry(
        name="graph-vertex-weighted",
        signature=VERTEX_SIGNATURE,
        items=tuple(CorpusSentence(*item) for item in _vertex_sentences()),
        note="elements are vertices weighted by the measure; each sentence names its semantics",
    )


# Neural networks


def _active(t: int) -> str:
    return f"actv_{t}"


@beartype
def ann_signature(t_max: int) -> Signature:
    return Signature(EDGE_SIGNATURE.predicates + tuple((_active(t), 1) for t in range(t_max + 1)))


@beartype
def build_ann(t_max: int) -> CorpusEntry:
    """
    Linear threshold updates over a weighted-edge network.

    actv_t(x) says the presynaptic neuron of edge x fires at time t. Read
    under F-semantics with epsilon set to the firing threshold, the inner
    existential of each update holds when the active incoming edges weigh
    strictly more than the threshold.
    """
    if t_max < 1:
        raise ValueError(CFG.ERRORS.BAD_TMAX.format(t_max=t_max))
    items: List[CorpusSentence] = []
    for t in range(t_max):
        now, later = _active(t), _active(t + 1)
        items.append(CorpusSentence(f"consistent.{t}", _forall("xy", Implies(
            _atom("D", "x", "y"), Iff(_atom(now, "x"), _atom(now, "y")))), Semantics.F))
        items.append(CorpusSentence(f"update.{t}", Forall("x", Iff(
            _atom(later, "x"), Exists("y", And((_atom("I", "y", "x"), _atom(now, "y")))))), Semantics.F))
    return CorpusEntry(
        name="ann",
        signature=ann_signature(t_max),
        items=tuple(items),
        note="F-semantics; epsilon is the firing threshold",
    )


CORPUS_NAMES = (
    "pac-point",
    "pac-parity",
    "pac-conjunction",
    "pac-decision-list",
    "graph-vertex-weighted",
    "graph-edge-weighted",
    "ann",
)


@beartype
def build(name: str, s: int = 1, t_max: int = 1, corrected: bool = False) -> CorpusEntry:
    """Builds a corpus entry by its CORPUS_NAMES name."""
    if name.startswith("pac-") and name in CORPUS_NAMES:
        return build_pac(PacKind(name[len("pac-"):].replace("-", "_")), s, corrected)
    if name == "graph-vertex-weighted":
        return build_graph_axioms(GraphKind.VERTEX_WEIGHTED)
    if name == "graph-edge-weighted":
        return build_graph_axioms(GraphKind.EDGE_WEIGHTED)
    if name == "ann":
        return build_ann(t_max)
    raise ValueError(CFG.ERRORS.UNKNOWN_CORPUS.format(name=name, choices=", ".join(CORPUS_NAMES)))
