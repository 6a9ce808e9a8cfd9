# Lexical classes
IDENTIFIER = r"[A-Za-z_][A-Za-z0-9_]*"
RATIONAL = r"-?[0-9]+(?:/[0-9]*[1-9][0-9]*)?"

# Formula keywords
NOT = "not"
AND = "and"
OR = "or"
IMPLIES = "implies"
IFF = "iff"
FORALL = "forall"
EXISTS = "exists"
WEAK = "qgeq"
STRONG = "qgt"
EQUALS = "="
COMMENT = ";"

CONNECTIVES = (NOT, AND, OR, IMPLIES, IFF)
QUANTIFIERS = (FORALL, EXISTS, WEAK, STRONG)
RESERVED = CONNECTIVES + QUANTIFIERS

# Signature files
SIG_PREDICATE = "pred"
SIG_CONSTANT = "const"
SIG_EQUALITY = "equality"

# Model files
MODEL_UNIVERSE = "universe:"
MODEL_MEASURE = "measure:"
MODEL_CONSTANT = "const"
MODEL_RELATION = "rel"

# Turing machine files
TM_STATES = "states:"
TM_INITIAL = "init:"
TM_ACCEPT = "accept:"
TM_REJECT = "reject:"
TM_ARROW = "->"

LINE_COMMENT = "#"
