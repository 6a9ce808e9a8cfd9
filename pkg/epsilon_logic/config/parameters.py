from fractions import Fraction

# Propositional reduction
MAX_TAUTOLOGY_VARIABLES = 24
VALIDITY_VARIABLE = "y"
FRESH_VARIABLE = "{base}_{index}"

# Strict-row witnesses: margins 1, 1/2, 1/4, ...
MARGIN_START = Fraction(1)
MARGIN_FACTOR = Fraction(1, 2)
MARGIN_MAX_HALVINGS = 1024

# Bounded model search
DEFAULT_BUDGET = 4
DEFAULT_MAX_STEPS = 64
DEFAULT_SIMULTANEOUS_SIZE = 3
DEFAULT_SIMULTANEOUS_DENOMINATOR = 4
PARALLEL_BATCH = 256

# Monadic cells
CELL_LABEL = "{{{members}}}"
ELEMENT_LABEL = "e{index}"

# Relativization predicate used by the machine encoding
DOMAIN_PREDICATE = "N"

# CLI exit codes
EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64
