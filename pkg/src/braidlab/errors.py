"""Exception types raised across braidlab.

Every error carries a short machine-readable ``code`` used by the CLI when
reporting failures as JSON.
"""


class BraidlabError(Exception):
    code = "error"


class MalformedTable(BraidlabError, ValueError):
    code = "malformed_table"


class Degenerate(BraidlabError, ValueError):
    code = "degenerate"


class NotBraided(BraidlabError, ValueError):
    code = "not_braided"


class TooLarge(BraidlabError, ValueError):
    code = "too_large"


class BadIndex(BraidlabError, IndexError):
    code = "bad_index"


class CapExceeded(BraidlabError, RuntimeError):
    code = "cap_exceeded"


class MalformedTables(BraidlabError, ValueError):
    code = "malformed_tables"


class InvariantViolation(BraidlabError, ValueError):
    code = "invariant_violation"


class NotAnAutomorphism(BraidlabError, ValueError):
    code = "not_an_automorphism"


class ShapeMismatch(BraidlabError, ValueError):
    code = "shape_mismatch"


class NotASolution(BraidlabError, ValueError):
    code = "not_a_solution"


class BadPerturbation(BraidlabError, ValueError):
    code = "bad_perturbation"


class ConstraintViolation(BraidlabError, ValueError):
    code = "constraint_violation"


class Unsupported(BraidlabError, ValueError):
    code = "unsupported"


class MalformedInput(BraidlabError, ValueError):
    code = "malformed_input"
