"""Decision outcomes shared by all decision procedures."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """Result of a decision procedure.

    kind is "yes", "no" or "unknown".  A "yes" may carry a witness: for
    membership problems a tuple of 1-based generator indices whose product
    is the target, for half-space problems a tuple of indices (or exponent
    data) whose product satisfies the inequality.  "unknown" carries the
    search bound that was exhausted; it is only ever produced by the
    quadratic half-space solver, never by membership procedures.
    """

    kind: str
    witness: tuple | None = None
    bound: int | None = None

    def __post_init__(self):
        if self.kind not in ("yes", "no", "unknown"):
            raise ValueError(f"bad verdict kind: {self.kind!r}")

    @staticmethod
    def yes(witness=None) -> "Verdict":
        return Verdict("yes", witness=tuple(witness) if witness is not None else None)

    @staticmethod
    def no() -> "Verdict":
        return Verdict("no")

    @staticmethod
    def unknown(bound: int | None = None) -> "Verdict":
        return Verdict("unknown", bound=bound)

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def is_no(self) -> bool:
        return self.kind == "no"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"
