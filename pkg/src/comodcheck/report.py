"""Structured pass/fail records for law verifications."""

from __future__ import annotations


class CheckReport:
    """Outcome of one law check.

    ``verdict`` is "pass", "fail" or "unsupported".  Boolean-valued
    decisions (cosemisimplicity, injectivity) report verdict "pass" with
    the decided ``value``; only genuine law violations or internal
    inconsistencies yield "fail".  Failing reports carry a ``witness``
    (typically a basis index and the violated equation); passing ones carry
    a dimension table.
    """

    __slots__ = ("check", "refs", "verdict", "value", "dims", "witness",
                 "details", "millis")

    def __init__(self, check: str, refs=(), verdict: str = "pass",
                 value=None, dims=None, witness=None, details=None,
                 millis: float = 0.0):
        if verdict not in ("pass", "fail", "unsupported"):
            raise ValueError(f"bad verdict {verdict!r}")
        if verdict == "fail" and witness is None:
            witness = {"equation": "unspecified"}
        self.check = check
        self.refs = list(refs)
        self.verdict = verdict
        self.value = value
        self.dims = dict(dims) if dims else {}
        self.witness = witness
        self.details = list(details) if details else []
        self.millis = millis

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "refs": self.refs,
            "verdict": self.verdict,
            "value": self.value,
            "dims": self.dims,
            "witness": self.witness,
            "details": self.details,
            "millis": self.millis,
        }

    def __repr__(self):
        return f"CheckReport({self.check}: {self.verdict})"


def failure(check: str, equation: str, refs=(), dims=None,
            witness_index=None) -> CheckReport:
    witness = {"equation": equation}
    if witness_index is not None:
        witness["basis_index"] = witness_index
    return CheckReport(check, refs=refs, verdict="fail", dims=dims,
                       witness=witness)
