"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

A :class:`FieldScalar` stores the value ``(a + b*sqrt(d)) / c`` with
arbitrary-precision integers ``a``, ``b`` and positive ``c``.  ``d`` is a
squarefree nonnegative integer; ``d == 0`` encodes plain rationals (and
forces ``b == 0``).  All constructors normalize eagerly, so equality of
values is structural equality of the reduced triples.

Scalars from different fields never combine implicitly, with one
exception: a rational scalar (``d == 0``) lifts into any Q(sqrt(d)),
since the rationals embed in every quadratic field.
"""

from __future__ import annotations

import math
import re
from typing import Union

Scalarish = Union["FieldScalar", int]

_SQUAREFREE_CACHE: dict[int, bool] = {}


def _is_squarefree(d: int) -> bool:
    if d in _SQUAREFREE_CACHE:
        return _SQUAREFREE_CACHE[d]
    ok = True
    n, p = d, 2
    while p * p <= n:
        if n % (p * p) == 0:
            ok = False
            break
        if n % p == 0:
            n //= p
        p += 1
    _SQUAREFREE_CACHE[d] = ok
    return ok


class FieldError(ValueError):
    """Invalid field operation (mixed fields, bad generator, division by zero)."""


class FieldScalar:
    """An exact element ``(a + b*sqrt(d)) / c`` of Q(sqrt(d))."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = 0):
        if c == 0:
            raise FieldError("denominator must be nonzero")
        if d < 0 or (d > 0 and not _is_squarefree(d)):
            raise FieldError(f"field generator must be squarefree and >= 0, got {d}")
        if d in (0, 1):
            # sqrt(0) contributes nothing, sqrt(1) folds into the rational part
            a, b, d = a + (b if d == 1 else 0), 0, 0
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        if b == 0 and a == 0:
            c = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d if b != 0 else (d or 0))

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def rational(cls, p: int, q: int = 1, d: int = 0) -> FieldScalar:
        return cls(p, 0, q, d)

    @classmethod
    def sqrt(cls, d: int) -> FieldScalar:
        if d == 0:
            return cls(0)
        return cls(0, 1, 1, d)

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other: Scalarish) -> FieldScalar:
        if isinstance(other, int):
            return FieldScalar(other, 0, 1, self.d)
        if not isinstance(other, FieldScalar):
            raise TypeError(f"cannot combine FieldScalar with {type(other).__name__}")
        return other

    @staticmethod
    def _common_d(x: FieldScalar, y: FieldScalar) -> int:
        if x.d == y.d:
            return x.d
        if x.b == 0 and x.d == 0:
            return y.d
        if y.b == 0 and y.d == 0:
            return x.d
        raise FieldError(f"mixed field generators: sqrt({x.d}) vs sqrt({y.d})")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Scalarish) -> FieldScalar:
        o = self._coerce(other)
        d = self._common_d(self, o)
        return FieldScalar(
            self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, d
        )

    __radd__ = __add__

    def __neg__(self) -> FieldScalar:
        return FieldScalar(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other: Scalarish) -> FieldScalar:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalarish) -> FieldScalar:
        return (-self) + other

    def __mul__(self, other: Scalarish) -> FieldScalar:
        o = self._coerce(other)
        d = self._common_d(self, o)
        return FieldScalar(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalarish) -> FieldScalar:
        o = self._coerce(other)
        d = self._common_d(self, o)
        if o.is_zero():
            raise ZeroDivisionError("division by zero field scalar")
        # 1 / ((a + b r)/c) = c (a - b r) / (a^2 - b^2 d)
        n = o.a * o.a - o.b * o.b * d
        inv = FieldScalar(o.c * o.a, -o.c * o.b, n, d)
        return self * inv

    def __rtruediv__(self, other: Scalarish) -> FieldScalar:
        return self._coerce(other) / self

    def __pow__(self, n: int) -> FieldScalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return FieldScalar(1, 0, 1, self.d) / self ** (-n)
        out = FieldScalar(1, 0, 1, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __abs__(self) -> FieldScalar:
        return -self if self.sign() < 0 else self

    def conjugate(self) -> FieldScalar:
        """The Galois conjugate (a - b*sqrt(d)) / c."""
        return FieldScalar(self.a, -self.b, self.c, self.d)

    # -- predicates and order ------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of the real value, computed without floating point."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against d b^2; sign follows the winner
        lhs, rhs = a * a, self.d * b * b
        if lhs == rhs:
            return 0
        return (1 if a > 0 else -1) if lhs > rhs else (1 if b > 0 else -1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.c == 1 and self.a == other
        if not isinstance(other, FieldScalar):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a and self.c == other.c
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d if self.b else 0))

    def _cmp(self, other: Scalarish) -> int:
        return (self - other).sign()

    def __lt__(self, other: Scalarish) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Scalarish) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Scalarish) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Scalarish) -> bool:
        return self._cmp(other) >= 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    # -- serialization -------------------------------------------------------

    def to_triple(self) -> list[int]:
        return [self.a, self.b, self.c]

    @classmethod
    def from_triple(cls, triple, d: int) -> FieldScalar:
        a, b, c = triple
        return cls(int(a), int(b), int(c), d)

    def __str__(self) -> str:
        a, b, c = self.a, self.b, self.c
        if b == 0:
            return f"{a}" if c == 1 else f"{a}/{c}"
        rpart = "r" if abs(b) == 1 else f"{abs(b)}*r"
        if a == 0:
            core = rpart if b > 0 else f"-{rpart}"
        else:
            core = f"{a}{'+' if b > 0 else '-'}{rpart}"
        if c == 1:
            return core
        return f"({core})/{c}"

    def __repr__(self) -> str:
        return f"FieldScalar({self.a}, {self.b}, {self.c}, d={self.d})"


_TERM_RE = re.compile(r"^\(?\s*(?P<core>[^()/]+?)\s*\)?\s*(?:/\s*(?P<den>\d+))?\s*$")


def parse_scalar(text: str, d: int) -> FieldScalar:
    """Parse the textual form ``(a+b*r)/c`` where ``r`` is sqrt(d).

    Accepts the obvious degenerate spellings: ``"3"``, ``"-1/2"``, ``"r"``,
    ``"1+r"``, ``"(2-3*r)/5"``.
    """
    m = _TERM_RE.match(text.strip())
    if not m:
        raise FieldError(f"cannot parse field scalar: {text!r}")
    core, den = m.group("core"), int(m.group("den") or 1)
    a = b = 0
    for sign_c, term in re.findall(r"([+-]?)\s*([^+-]+)", core):
        sign = -1 if sign_c == "-" else 1
        term = term.strip()
        if term.endswith("r"):
            coeff = term[:-1].rstrip("*").strip()
            b += sign * (int(coeff) if coeff else 1)
        else:
            a += sign * int(term)
    return FieldScalar(a, b, den, d)


ZERO = FieldScalar(0)
ONE = FieldScalar(1)
