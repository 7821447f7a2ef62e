"""Arithmetic in prime fields GF(q).

Elements are immutable values tied to their modulus; mixing elements of
different fields raises. Only prime moduli below 2**31 are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = ["PrimeField", "FieldElement", "is_scalar_multiple"]

_MODULUS_CAP = 1 << 31


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field GF(q) for a prime q."""

    __slots__ = ("q",)

    def __init__(self, q: int) -> None:
        # bool is an int subclass; reject it explicitly
        if not isinstance(q, int) or isinstance(q, bool):
            raise ValueError(f"field modulus must be an integer, got {q!r}")
        if q >= _MODULUS_CAP:
            raise ValueError(f"field modulus {q} is at or above the 2**31 cap")
        if not _is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        self.q = q

    def element(self, value: int) -> "FieldElement":
        """Reduce an integer into GF(q)."""
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"field element value must be an integer, got {value!r}")
        return FieldElement(value % self.q, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(v, self) for v in range(self.q)]

    def nonzero_elements(self) -> list["FieldElement"]:
        return [FieldElement(v, self) for v in range(1, self.q)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A residue in GF(q), always stored reduced to [0, q)."""

    value: int
    field: PrimeField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"value {self.value} out of range for GF({self.field.q})")

    def _coerce(self, other: object, op: str) -> "FieldElement":
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot {op} FieldElement and {type(other).__name__}")
        if other.field.q != self.field.q:
            raise ValueError(
                f"modulus mismatch: GF({self.field.q}) vs GF({other.field.q})"
            )
        return other

    def __add__(self, other: "FieldElement") -> "FieldElement":
        other = self._coerce(other, "add")
        return FieldElement((self.value + other.value) % self.field.q, self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        other = self._coerce(other, "subtract")
        return FieldElement((self.value - other.value) % self.field.q, self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        other = self._coerce(other, "multiply")
        return FieldElement((self.value * other.value) % self.field.q, self.field)

    def __neg__(self) -> "FieldElement":
        return FieldElement((-self.value) % self.field.q, self.field)

    def inv(self) -> "FieldElement":
        """Multiplicative inverse; the zero element has none."""
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.field.q})")
        return FieldElement(pow(self.value, -1, self.field.q), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.q})"


def is_scalar_multiple(
    u: Sequence[FieldElement], v: Sequence[FieldElement]
) -> Optional[FieldElement]:
    """Return the nonzero scalar c with u = c*v, or None if there is none.

    Both columns must be nonzero; a zero column is an error, not a non-match.
    """
    if len(u) != len(v):
        raise ValueError(f"column length mismatch: {len(u)} vs {len(v)}")
    if not any(u):
        raise ValueError("zero input column")
    if not any(v):
        raise ValueError("zero input column")
    pivot = next(i for i, vi in enumerate(v) if vi)
    c = u[pivot] * v[pivot].inv()
    if not c:
        return None
    for ui, vi in zip(u, v):
        if ui != c * vi:
            return None
    return c
