"""Exact-value reports and JSON encoding of rationals and infinities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return self == other or self < other

    def __ge__(self, other):
        return self == other or self > other


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def encode(value):
    """JSON-ready form: rationals as "p/q" strings, infinities as "inf"/"-inf"."""
    if isinstance(value, _Infinity):
        return str(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, float):  # pragma: no cover - guarded against
        raise TypeError("floating point value in an exact report")
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


def parse_rational(text: str) -> Fraction:
    """Read "p/q" or an integer; rejects floats."""
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


@dataclass
class InvariantReport:
    quantity: str
    value: object
    status: str  # exact | lower_bound | upper_bound | certified
    method: str  # jet-dimension | resolution-formula | closed-form | recursion | stratification
    inputs: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"quantity": self.quantity, "value": encode(self.value), "status": self.status,
               "method": self.method, "inputs": encode(self.inputs)}
        if self.details:
            out["details"] = encode(self.details)
        return out
