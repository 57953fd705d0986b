"""Exception types shared across the engine."""

from __future__ import annotations


class FiredrillError(Exception):
    """Base class for all errors raised by this package."""


class UnknownCompartment(FiredrillError):
    def __init__(self, compartment_id: str):
        super().__init__(f"unknown compartment: {compartment_id!r}")
        self.compartment_id = compartment_id


class NoEscapeRoute(FiredrillError):
    def __init__(self, compartment_id: str):
        super().__init__(f"no signed escape route from {compartment_id!r} to any muster area")
        self.compartment_id = compartment_id


class FireAlreadyOut(FiredrillError):
    pass


class InvalidEvent(FiredrillError):
    pass


class ParseError(FiredrillError):
    """Scenario file is not syntactically valid."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SchemaError(FiredrillError):
    """Scenario file is well-formed but violates the scenario schema."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class DanglingReference(FiredrillError):
    """Scenario file references an id that is not defined."""

    def __init__(self, field: str, ref_id: str):
        super().__init__(f"{field} references unknown id {ref_id!r}")
        self.field = field
        self.ref_id = ref_id


class ScenarioInvalid(FiredrillError):
    """Scenario failed compliance validation; carries the report."""

    def __init__(self, report):
        findings = getattr(report, "findings", [])
        rules = sorted({f.rule for f in findings if f.severity == "error"})
        super().__init__(f"scenario failed validation: {', '.join(rules) or 'unknown'}")
        self.report = report


class TickMismatch(FiredrillError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"command tick {got} does not match session tick {expected}")
        self.expected = expected
        self.got = got


class ReplayDivergence(FiredrillError):
    def __init__(self, tick: int, detail: str):
        super().__init__(f"replay diverged at tick {tick}: {detail}")
        self.tick = tick
        self.detail = detail


class IncompatibleLog(FiredrillError):
    pass


class SessionStillOpen(FiredrillError):
    pass


class MissingReference(FiredrillError):
    def __init__(self, level: str):
        super().__init__(f"reference tester has no session for level {level!r}")
        self.level = level
