"""Exact univariate polynomials over Q in the variable q.

Quantum integers, factorials and binomials, Lagrange interpolation of
counting polynomials, and the mod-q constant-term extraction trick.
All coefficients are `fractions.Fraction`; there is no floating point
anywhere in this module.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class QPolynomial:
    """Polynomial in one variable q with exact rational coefficients.

    Coefficients are stored densely, index = degree, trailing zeros trimmed.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    # -- ring structure -------------------------------------------------

    def __add__(self, other: "QPolynomial | int") -> "QPolynomial":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(
            (self[i] + other[i] for i in range(n)),
        )

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "QPolynomial | int") -> "QPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other: "QPolynomial | int") -> "QPolynomial":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = QPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_exact(self, other: "QPolynomial") -> "QPolynomial":
        """Exact division; raises ValueError if the remainder is nonzero."""
        other = _coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq, dr = len(other.coeffs) - 1, len(rem) - 1
        out = [Fraction(0)] * max(dr - dq + 1, 0)
        lead = other.coeffs[-1]
        while len(rem) - 1 >= dq and any(rem):
            k = len(rem) - 1 - dq
            f = rem[-1] / lead
            out[k] = f
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= f * b
            while rem and rem[-1] == 0:
                rem.pop()
        if any(rem):
            raise ValueError("inexact polynomial division")
        return QPolynomial(out)

    # -- queries ---------------------------------------------------------

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = _coerce(other)
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({to_str(self)!r})"

    def __call__(self, x) -> Fraction:
        return eval_at(self, x)


def _coerce(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    return QPolynomial([Fraction(x)])


Q = QPolynomial([0, 1])
ONE = QPolynomial([1])
ZERO = QPolynomial()


def eval_at(p: QPolynomial, x) -> Fraction:
    """Horner evaluation at an exact rational point."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def constant_term(p: QPolynomial) -> Fraction:
    return p[0]


def qint(n: int) -> QPolynomial:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("quantum integer of a negative number")
    return QPolynomial([1] * n)


@lru_cache(maxsize=None)
def qfact(n: int) -> QPolynomial:
    """[n]_q! = [1]_q [2]_q ... [n]_q."""
    if n < 0:
        raise ValueError("quantum factorial of a negative number")
    if n == 0:
        return ONE
    return qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def qbinom(n: int, r: int) -> QPolynomial:
    """Gaussian binomial [n choose r]_q; exact division of quantum factorials."""
    if r < 0 or r > n:
        raise ValueError(f"qbinom({n},{r}) undefined; need 0 <= r <= n")
    return qfact(n).divide_exact(qfact(r) * qfact(n - r))


def interpolate(points: Sequence[tuple]) -> QPolynomial:
    """Lagrange interpolation through exact rational points.

    Returns the unique polynomial of degree < len(points).
    """
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation")
    result = ZERO
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        num = QPolynomial([yi])
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * QPolynomial([-xj, 1])
            num = num * QPolynomial([Fraction(1, 1) / (xi - xj)])
        result = result + num
    return result


def mod_q_constant(p: QPolynomial, samples: Iterable[int]):
    """Extract the constant term via residues: if p(q0) = c mod q0 for every
    sample q0 and c is the constant term, return c; otherwise None.

    Each sampled value must be an integer (domain error otherwise).  This is
    sound for integer-valued counting polynomials: p(q0) - p(0) is divisible
    by q0 whenever p has integer values on enough integers.
    """
    c = constant_term(p)
    if c.denominator != 1:
        return None
    for q0 in samples:
        v = eval_at(p, q0)
        if v.denominator != 1:
            raise ValueError(f"polynomial is not integer-valued at {q0}")
        if (v - c) % q0 != 0:
            return None
    return c


# -- textual form ---------------------------------------------------------

def to_str(p: QPolynomial) -> str:
    """Render as "c0 + c1*q + c2*q^2" with rationals as "a/b"."""
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*q")
        else:
            parts.append(f"{c}*q^{i}")
    return " + ".join(parts)


_TERM_RE = re.compile(r"^(-?\d+(?:/\d+)?)(?:\*q(?:\^(\d+))?)?$")


def from_str(s: str) -> QPolynomial:
    """Parse the textual form produced by to_str (lossless roundtrip)."""
    s = s.strip()
    if s == "0":
        return ZERO
    coeffs: dict[int, Fraction] = {}
    for term in s.split(" + "):
        m = _TERM_RE.match(term.strip())
        if not m:
            raise ValueError(f"cannot parse polynomial term {term!r}")
        c = Fraction(m.group(1))
        if "*q" not in term:
            deg = 0
        elif m.group(2) is None:
            deg = 1
        else:
            deg = int(m.group(2))
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
    n = max(coeffs) + 1
    return QPolynomial([coeffs.get(i, Fraction(0)) for i in range(n)])
