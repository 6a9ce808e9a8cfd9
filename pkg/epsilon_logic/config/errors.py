# Syntax
UNEXPECTED_TOKEN = "expected {expected}, found {found!r}"
UNEXPECTED_EOF = "unexpected end of input, expected {expected}"
UNBALANCED_CLOSE = "unbalanced ')'"
TRAILING_INPUT = "unexpected trailing input {found!r}"
UNDECLARED_PREDICATE = "undeclared predicate {name!r}"
ARITY_MISMATCH = "{name} expects {expected} argument(s), got {actual}"
EQUALITY_UNDECLARED = "equality is not declared in the signature"
RESERVED_NAME = "{name!r} is a reserved word"
NESTED_Q_QUANTIFIER = "q-quantifier {keyword!r} must appear in the prenex prefix"
Q_MATRIX_NOT_QUANTIFIER_FREE = "matrix of a q-sentence must be quantifier-free"
CONNECTIVE_ARITY = "{name} expects {expected} operand(s), got {actual}"
POSITION = "line {line}, column {column}: {message}"
FILE_POSITION = "{path}:{line}:{column}: {message}"

# Signatures
DUPLICATE_SYMBOL = "symbol {name!r} declared twice"
BAD_ARITY = "predicate {name!r} must have arity >= 1, got {arity}"
BAD_SIGNATURE_LINE = "cannot read signature line {line!r}"
UNDECLARED_CONSTANT = "undeclared constant {name!r}"
NOT_MONADIC = "signature must be monadic relational (unary predicates, no constants, no equality)"

# Terms and formulas
FREE_VARIABLES = "expected a sentence, found free variable(s) {names}"
NOT_PRENEX = "formula is not in prenex normal form"
NOT_UNIVERSAL = "expected a universal prenex sentence"
CONTAINS_EQUALITY = "equality is not supported here"
CONTAINS_QUANTIFIER = "formula must be quantifier-free"
CONTAINS_ELEMENT = "formula contains ground elements"
Q_QUANTIFIERS_PRESENT = "q-sentence contains q-quantifiers; expected classical quantifiers only"
DUPLICATE_PREFIX_VARIABLE = "variable {name!r} is bound twice in the prefix"
UNBOUND_VARIABLE = "variable {name!r} is not bound"

# Quantifier kinds and rationals
THRESHOLD_REQUIRED = "{kind} requires a threshold"
THRESHOLD_FORBIDDEN = "{kind} takes no threshold"
THRESHOLD_RANGE = "threshold {value} outside [0, 1]"
EPSILON_RANGE = "epsilon {value} outside [0, 1]"
BAD_RATIONAL = "malformed rational {text!r}"

# Models
EMPTY_UNIVERSE = "universe is empty"
DUPLICATE_ELEMENT = "element {label!r} listed twice"
UNKNOWN_ELEMENT = "unknown element {label!r} in {where}"
MISSING_MASS = "element {label!r} has no mass"
NEGATIVE_MASS = "element {label!r} has negative mass {mass}"
MEASURE_SUM = "measure sums to {total}, expected 1"
UNDECLARED_RELATION = "relation for undeclared predicate {name!r}"
TUPLE_ARITY = "tuple {row} of {name} has arity {actual}, expected {expected}"
MISSING_CONSTANT = "constant {name!r} is not interpreted"
INVALID_MODEL = "invalid model: {report}"
BAD_MODEL_LINE = "cannot read model line {line!r}"
MISSING_UNIVERSE = "universe must be declared before {what}"

# Linear systems
ROW_LENGTH = "row has {actual} coefficient(s), system has {expected} variable(s)"
UNKNOWN_LP_VARIABLE = "unknown variable {name!r}"
UNKNOWN_RELATION = "unknown relation {relation!r}"
STRICT_ROWS = "feasible_weak accepts only weak and equality rows"
MARGIN_NOT_FOUND = "no margin found for a system reported feasible"

# Decision procedures
TOO_MANY_VARIABLES = "{count} propositional variables exceed the limit of {limit}"
F_EPSILON_ONE = "F-semantics at epsilon = 1 is not supported by the monadic decider"
WITNESS_REJECTED = "synthesized witness failed re-verification"
BAD_BUDGET = "budget must be >= 1, got {budget}"
BAD_JOBS = "jobs must be >= 1, got {jobs}"

# Machines
UNKNOWN_STATE = "unknown state {state!r}"
HALTING_OVERLAP = "states {states} are both accepting and rejecting"
MISSING_TRANSITION = "no transition for state {state!r} reading {symbol}"
DUPLICATE_TRANSITION = "two transitions for state {state!r} reading {symbol}"
HALTING_TRANSITION = "halting state {state!r} has a transition"
BAD_SYMBOL = "tape symbol must be 0 or 1, got {symbol}"
BAD_STATE_NAME = "state name {state!r} is not an identifier"
BAD_TM_LINE = "cannot read machine line {line!r}"
BAD_MOVE = "move must be L or R, got {move!r}"
BAD_STEPS = "max_steps must be >= 0, got {steps}"

# Corpus
UNKNOWN_CORPUS = "unknown corpus entry {name!r}; choose from {choices}"
BAD_PAC_SIZE = "PAC family needs s >= 1, got {s}"
BAD_TMAX = "t_max must be >= 1, got {t_max}"

# Trees
MALFORMED_TREE = "tree shape does not match the prefix at level {level}"
TREE_HEIGHT = "tree of height {height} does not fit a prefix of length {length}"

# Command line
FILE_ERROR = "{path}: {message}"
NOT_A_DIRECTORY = "{path} is not a directory"
