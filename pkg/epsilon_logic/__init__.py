"""
Epsilon-probability logics over finite measured models.

Evaluation under E-, F- and q-semantics, q-tree witnesses, decision
procedures for the monadic and threshold-zero fragments, a bounded search
for finite models and the Turing machine encoding, all in exact rationals.
"""

from .syntax import (
    Formula,
    QSentence,
    QuantifierKind,
    Signature,
    e_coerce,
    f_coerce,
    to_prenex,
)
from .parser import ParseError, parse_formula, parse_signature
from .models import FiniteModel, quotient_monadic, validate_model
from .semantics import QTree, Semantics, eval_e, eval_f, eval_q, find_qtree
from .lp import LinSystem, feasible
from .decide import (
    DecisionOutcome,
    Verdict,
    ZeroProblem,
    decide_monadic,
    decide_zero,
    semi_decide_finite_sat,
)
from .encode import TuringMachine, encode_tm, simulate, witness_model

__version__ = "0.1.0"

__all__ = [
    "Formula",
    "QSentence",
    "QuantifierKind",
    "Signature",
    "e_coerce",
    "f_coerce",
    "to_prenex",
    "ParseError",
    "parse_formula",
    "parse_signature",
    "FiniteModel",
    "quotient_monadic",
    "validate_model",
    "QTree",
    "Semantics",
    "eval_e",
    "eval_f",
    "eval_q",
    "find_qtree",
    "LinSystem",
    "feasible",
    "DecisionOutcome",
    "Verdict",
    "ZeroProblem",
    "decide_monadic",
    "decide_zero",
    "semi_decide_finite_sat",
    "TuringMachine",
    "encode_tm",
    "simulate",
    "witness_model",
]
