from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

__all__ = ["BoundReport", "format_real", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1


def format_real(x, digits: int = 15) -> str:
    """Decimal string with ``digits`` significant digits; exact ints stay exact."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        with mpmath.workprec(max(64, 4 * digits)):
            return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)
    if isinstance(x, float):
        return format(x, f".{digits}g")
    return mpmath.nstr(x, digits)


@dataclass(frozen=True)
class BoundReport:
    """One inequality (or identity) instance.

    ``holds`` is decided as lhs <= rhs + numeric_error, using rigorous
    enclosures for the real-valued side. For identities ``lhs`` and ``rhs``
    are exact and ``holds`` means equality. ``asserted`` marks unconditional
    statements whose failure is a genuine violation; conditional bounds are
    reported with ``asserted=False``.
    """

    name: str
    instance: dict[str, Any]
    lhs: Any
    rhs: Any
    holds: bool
    slack: Any
    numeric_error: Any = 0
    regime: str | None = None
    asserted: bool = True
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.asserted and not self.holds

    def row(self) -> dict[str, Any]:
        inst = self.instance
        row = {
            "bound": self.name,
            "p": inst.get("p"),
            "m": inst.get("m"),
            "k": inst.get("k"),
            "b": inst.get("b"),
            "lhs": format_real(self.lhs),
            "rhs": format_real(self.rhs),
            "holds": self.holds,
            "slack": format_real(self.slack),
            "numeric_error": format_real(self.numeric_error, 6),
            "regime": self.regime,
        }
        for key, value in inst.items():
            if key not in row:
                row[key] = value
        for key, value in self.extra.items():
            row[key] = format_real(value) if not isinstance(value, (str, list, dict, type(None))) else value
        row["asserted"] = self.asserted
        return row
