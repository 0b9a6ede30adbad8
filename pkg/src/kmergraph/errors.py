"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: format/validation problems exit 1,
resource caps exit 2, internal inconsistencies exit 3.
"""


class KmerGraphError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1
    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class ParseError(KmerGraphError, ValueError):
    kind = "parse"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)

    def to_dict(self):
        d = super().to_dict()
        d["line"] = self.line
        return d


class WheelerViolation(KmerGraphError, ValueError):
    """The asserted vertex numbering is not a Wheeler order, or the graph is
    not a deterministic Wheeler graph.

    ``rule`` is one of ``"W1"``, ``"W2"``, ``"sources-first"``,
    ``"nondeterministic"`` or ``"input-inconsistent"``; ``witness`` holds
    the offending edges as 0-based ``(u, v, label)`` triples.
    """

    kind = "wheeler"
    RULES = ("W1", "W2", "sources-first", "nondeterministic", "input-inconsistent")

    def __init__(self, rule, witness, message=None):
        if rule not in self.RULES:
            raise ValueError(f"unknown rule {rule!r}")
        self.rule = rule
        self.witness = tuple(witness)
        super().__init__(message or f"{rule} violated by {self.witness}")

    def to_dict(self):
        d = super().to_dict()
        d["rule"] = self.rule
        d["witness"] = [list(e) for e in self.witness]
        return d


class ResourceCapExceeded(KmerGraphError, RuntimeError):
    exit_code = 2
    kind = "resource-cap"


class OracleTooLarge(ResourceCapExceeded):
    kind = "oracle-too-large"


class StateCapExceeded(ResourceCapExceeded):
    kind = "state-cap"


class OutOfCap(KmerGraphError, ValueError):
    """A query asked for a level beyond the cap an index was built with."""

    kind = "out-of-cap"


class InternalConsistencyError(KmerGraphError, AssertionError):
    exit_code = 3
    kind = "internal"
