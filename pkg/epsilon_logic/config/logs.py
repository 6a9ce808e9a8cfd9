# Evaluation
QTREE_FOUND = "q-tree of height {height} found"
QTREE_MISSING = "sentence is not q-satisfied, no q-tree"

# Zero-case decisions
ZERO_REDUCED = "reduced to a propositional matrix over {count} variable(s)"
ZERO_TAUTOLOGY = "matrix is a tautology"
ZERO_COUNTERMODEL = "countermodel with {size} element(s) from the falsifying assignment"
ZERO_DOWNGRADED = "countermodel failed re-verification, reporting invalid without countermodel"

# Monadic decisions
MONADIC_CELLS = "{cells} cell(s) over {predicates} predicate(s)"
MONADIC_UNIVERSE = "trying universe {universe}"
MONADIC_WITNESS = "witness over {size} cell(s), masses {masses}"
MONADIC_UNSATISFIABLE = "no universe admits a q-tree"

# Enumeration
ENUM_WITNESS = "witness found at enumeration index {index} with {size} element(s)"
ENUM_EXHAUSTED = "budget {budget} exhausted after {checked} model(s)"
SIMULTANEOUS_UNIVERSE = "size {size}, masses {masses}"
SIMULTANEOUS_FOUND = "simultaneous model found with {size} element(s)"

# Machines
TM_HALTED = "machine halted after {steps} configuration(s) in state {state}"
TM_NOT_HALTED = "machine did not halt within {steps} step(s)"
TM_PART_FAILED = "encoding part {label} fails on the witness model"

# Report lines
VERDICT = "VERDICT kind={kind} witness={witness}"
VERDICT_TEXT = "{kind}"
VERDICT_TEXT_WITNESS = "{kind} (witness: {witness})"
NO_WITNESS = "-"
PART_RESULT = "{label}: {result}"
WROTE_FILE = "wrote {path}"

# Infeasibility reasons
REASON_EQUALITIES = "equality rows are inconsistent"
REASON_INEQUALITIES = "inequality rows are inconsistent"
REASON_STRICT = "strict rows admit a transposition certificate"

# Encoding
ENCODED = "encoded {count} part(s) over {predicates} predicate(s)"
