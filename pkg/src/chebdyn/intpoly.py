"""Dense univariate polynomials with exact arbitrary-precision integer coefficients.

Coefficients are stored constant-term first, so ``IntPolynomial([1, 0, -2])``
is ``-2*z^2 + 1``.  Instances are immutable and hashable; all arithmetic is
exact.  Degrees in this project stay in the low thousands, so the dense
representation is the right trade-off.
"""
from __future__ import annotations

import itertools
from typing import Iterable


class IntPolynomial:
    """A dense polynomial over the integers.

    >>> z = IntPolynomial.variable()
    >>> str(z**2 - 2)
    'z^2 - 2'
    >>> (z**2 - 2).evaluate(3)
    7
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def variable() -> "IntPolynomial":
        return IntPolynomial((0, 1))

    @staticmethod
    def constant(c: int) -> "IntPolynomial":
        return IntPolynomial((c,))

    @staticmethod
    def monomial(c: int, k: int) -> "IntPolynomial":
        return IntPolynomial((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree of the leading term; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial(
            a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial(
            a - b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "IntPolynomial"):
        """Quotient and remainder over the integers.

        Each elimination step requires the divisor's leading coefficient to
        divide exactly; raises ValueError otherwise.  Sufficient here because
        every divisor in this project is monic or a known exact factor.
        """
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dc = other.coeffs
        dn = len(dc)
        lead = dc[-1]
        if len(rem) < dn:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - dn + 1)
        for i in range(len(rem) - dn, -1, -1):
            top = rem[i + dn - 1]
            if top == 0:
                continue
            q, r = divmod(top, lead)
            if r != 0:
                raise ValueError(f"inexact division: {top} not divisible by {lead}")
            quot[i] = q
            for j in range(dn):
                rem[i + j] -= q * dc[j]
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Divide by a known factor; raises ValueError on nonzero remainder."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("exact_div with nonzero remainder")
        return q

    def evaluate(self, x):
        """Horner evaluation; exact for int and Fraction arguments, and also
        accepts float, complex, or another polynomial."""
        result = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        return self.evaluate(inner)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k >= 1)

    def shifted(self, k: int) -> "IntPolynomial":
        """Multiply by z^k."""
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def format(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            elif k == 1:
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            else:
                body = f"{var}^{k}" if abs(c) == 1 else f"{abs(c)}*{var}^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"IntPolynomial('{self.format()}')"


def bareiss_determinant(matrix: list[list[IntPolynomial]]) -> IntPolynomial:
    """Fraction-free determinant of a square matrix with polynomial entries.

    Bareiss elimination: every intermediate entry is an exact minor, and each
    step's division by the previous pivot is exact in the polynomial ring.
    """
    n = len(matrix)
    if n == 0:
        return IntPolynomial((1,))
    m = [row[:] for row in matrix]
    one = IntPolynomial((1,))
    prev = one
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return IntPolynomial()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = IntPolynomial()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
