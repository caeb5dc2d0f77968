"""Exception hierarchy and the `Report` value returned by checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class PolybasisError(Exception):
    pass


class EndpointMismatch(PolybasisError, ValueError):
    """Two zig-zags (or a context and a cell) do not meet at a common object."""


class InvalidStep(PolybasisError, ValueError):
    pass


class NoMatch(InvalidStep):
    """A rule's left-hand side does not occur at the requested position."""


class ModeMismatch(PolybasisError, ValueError):
    pass


class CellChainMismatch(PolybasisError, ValueError):
    pass


class NotParallel(PolybasisError, ValueError):
    pass


class MeasureViolation(PolybasisError, RuntimeError):
    """A recursion that must decrease in a Noetherian order did not.

    Also raised when the iteration fuel (``POLYBASIS_MAX_STEPS``) runs out.
    """


class UnresolvedPeak(PolybasisError, LookupError):
    pass


class ParseError(PolybasisError, ValueError):
    pass


@dataclass
class Report:
    ok: bool
    messages: list[str] = field(default_factory=list)
    # optional structured detail: offending cycle, rule name, cell index, node path...
    detail: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        if not self.messages:
            return head
        return head + ": " + "; ".join(self.messages)

    @classmethod
    def passed(cls, *messages: str, **detail: Any) -> Report:
        return cls(True, list(messages), dict(detail))

    @classmethod
    def failed(cls, *messages: str, **detail: Any) -> Report:
        return cls(False, list(messages), dict(detail))
