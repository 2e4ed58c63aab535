"""
Exact scalars, signatures, K-dominant weights and the rho vectors of u(p,q).

Coordinates are always stored in the aligned ``(x_1, ..., x_p | y_1, ..., y_q)``
order; any merged or sorted arrangement is derived on demand.
"""

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from exception.exceptions import LengthMismatchError, NonDominantWeightError, ParseError

HalfRational = Fraction
Vector = tuple[Fraction, ...]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """
    Parses ``"a/b"``, ``"a"`` or an integer into a Fraction.

    Raises
    ------
    ParseError
        If the value is not an exact rational (floats are refused).
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or "." in text or "e" in text.lower():
        raise ParseError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(e, sys)


def format_rational(value: Fraction) -> str:
    """Serializes as ``"a/b"``, dropping ``b`` when it is 1."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def norm_sq(v: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(x) * x for x in v), Fraction(0))


def is_weakly_decreasing(values: Sequence) -> bool:
    return all(values[i] >= values[i + 1] for i in range(len(values) - 1))


@dataclass(frozen=True)
class Signature:
    """The real form U(p,q); ``p = 0`` or ``q = 0`` gives a compact unitary group."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise LengthMismatchError(f"invalid signature U({self.p},{self.q})")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def epsilon(self) -> int:
        return (self.p + self.q) % 2

    def __str__(self) -> str:
        return f"U({self.p},{self.q})"


@dataclass(frozen=True)
class KTypeWeight:
    """Highest weight of a K = U(p) x U(q) type."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", tuple(int(x) for x in self.left))
        object.__setattr__(self, "right", tuple(int(y) for y in self.right))
        if not (is_weakly_decreasing(self.left) and is_weakly_decreasing(self.right)):
            raise NonDominantWeightError(f"weight {self} is not K-dominant")

    @classmethod
    def maybe(cls, left: Sequence[int], right: Sequence[int]) -> "KTypeWeight | None":
        """Returns the weight, or None when it is not K-dominant."""
        if is_weakly_decreasing(left) and is_weakly_decreasing(right):
            return cls(tuple(left), tuple(right))
        return None

    @classmethod
    def from_string(cls, text: str) -> "KTypeWeight":
        """Parses ``"a,b,c|d,e"`` (either side may be empty)."""
        if text.count("|") != 1:
            raise ParseError(f"weight must look like 'a,b|c,d': {text!r}")
        sides = []
        for part in text.split("|"):
            part = part.strip()
            try:
                sides.append(tuple(int(x) for x in part.split(",")) if part else ())
            except ValueError as e:
                raise ParseError(e, sys)
        return cls(sides[0], sides[1])

    @property
    def signature(self) -> Signature:
        return Signature(len(self.left), len(self.right))

    @property
    def coords(self) -> tuple[int, ...]:
        return self.left + self.right

    def check_fits(self, sig: Signature) -> None:
        if len(self.left) != sig.p or len(self.right) != sig.q:
            raise LengthMismatchError(f"weight {self} does not match {sig}")

    def shifted(self, plus_left: int | None = None, minus_left: int | None = None,
                plus_right: int | None = None, minus_right: int | None = None) -> "KTypeWeight | None":
        """
        Adds +1/-1 at the given left/right positions; returns None when the
        result is not K-dominant.
        """
        left, right = list(self.left), list(self.right)
        if plus_left is not None:
            left[plus_left] += 1
        if minus_left is not None:
            left[minus_left] -= 1
        if plus_right is not None:
            right[plus_right] += 1
        if minus_right is not None:
            right[minus_right] -= 1
        return KTypeWeight.maybe(left, right)

    def dual(self) -> "KTypeWeight":
        """Highest weight of the contragredient K-type: each side negated and reversed."""
        return KTypeWeight(tuple(-x for x in reversed(self.left)), tuple(-y for y in reversed(self.right)))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.left))}|{','.join(map(str, self.right))})"


def rho(n: int) -> Vector:
    """((n-1)/2, (n-3)/2, ..., -(n-1)/2)."""
    if n < 1:
        raise LengthMismatchError(f"rho needs n >= 1, got {n}")
    return tuple(Fraction(n - 1 - 2 * i, 2) for i in range(n))


def _staggered(m: int) -> Vector:
    return tuple(Fraction(m - 1 - 2 * i) for i in range(m))


def two_rho_k(sig: Signature) -> Vector:
    """2rho(k) aligned (left | right): (p-1, p-3, ..., 1-p | q-1, ..., 1-q)."""
    return _staggered(sig.p) + _staggered(sig.q)


def rho_k(sig: Signature) -> Vector:
    return tuple(x / 2 for x in two_rho_k(sig))


def lkt_norm(mu: KTypeWeight, sig: Signature | None = None) -> Fraction:
    """Squared norm of mu + 2rho(k); orders K-types the way lowest K-types are chosen."""
    sig = sig or mu.signature
    mu.check_fits(sig)
    return norm_sq([m + t for m, t in zip(mu.coords, two_rho_k(sig))])


def majorizes(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """
    True iff ``b`` is majorized by ``a``: equal sums and every prefix sum of
    sorted-descending ``b`` is at most the matching prefix sum of ``a``.
    """
    if len(a) != len(b):
        raise LengthMismatchError(f"majorizes: lengths {len(a)} and {len(b)} differ")
    sa = sorted((Fraction(x) for x in a), reverse=True)
    sb = sorted((Fraction(x) for x in b), reverse=True)
    if sum(sa) != sum(sb):
        return False
    pa = pb = Fraction(0)
    for x, y in zip(sa, sb):
        pa += x
        pb += y
        if pb > pa:
            return False
    return True
