"""Exact enumeration: closed-form counts, partial Bell polynomials, and
truncated power series over the rationals.

Everything here is exact; there is no floating point and no tolerance.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Sequence

Rational = Fraction | int


def f_closed(n: int) -> int:
    """Number of rooted bicubic planar maps on 2n vertices, in closed form."""
    if n < 1:
        raise ValueError("n must be positive")
    num = 3 * math.factorial(2 * n - 1) * 2 ** n
    den = math.factorial(n - 1) * math.factorial(n + 2)
    q, r = divmod(num, den)
    if r:
        raise AssertionError("closed form is not an integer")
    return q


def partial_bell(n: int, k: int, args: Sequence[Rational]) -> Fraction:
    """Partial Bell polynomial ``B_{n,k}`` at ``args`` (``args[0]`` is the
    first argument), via the standard binomial recurrence."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if len(args) < n - k + 1:
        raise ValueError(f"need arguments up to index {n - k + 1}")
    return BellTable.build(n, args).value(n, k)


@dataclasses.dataclass(frozen=True)
class BellTable:
    """Triangular table of partial Bell polynomial values at fixed arguments."""

    n_max: int
    values: tuple[tuple[Fraction, ...], ...]  # values[n][k], 0 <= k <= n

    @classmethod
    def build(cls, n_max: int, args: Sequence[Rational]) -> "BellTable":
        xs = [Fraction(a) for a in args]
        rows: list[tuple[Fraction, ...]] = [(Fraction(1),)]
        for n in range(1, n_max + 1):
            row = [Fraction(0)] * (n + 1)
            for k in range(1, n + 1):
                acc = Fraction(0)
                for i in range(1, n - k + 2):
                    acc += math.comb(n - 1, i - 1) * xs[i - 1] * rows[n - i][k - 1]
                row[k] = acc
            rows.append(tuple(row))
        return cls(n_max, tuple(rows))

    def value(self, n: int, k: int) -> Fraction:
        return self.values[n][k]


def generalized_binomial(top: int, j: int) -> Fraction:
    """Binomial coefficient with arbitrary integer upper index, as a falling
    factorial over ``j!``; the upper index may be negative."""
    if j < 0:
        raise ValueError("lower index must be nonnegative")
    num = 1
    for i in range(j):
        num *= top - i
    return Fraction(num, math.factorial(j))


def g_bell(n: int) -> int:
    """Number of rooted 3-connected bicubic planar maps on 2n vertices, by
    the Bell transform inversion of the rooted-map counts."""
    if n < 1:
        raise ValueError("n must be positive")
    args = [Fraction(math.factorial(i) * f_closed(i)) for i in range(1, n + 1)]
    table = BellTable.build(n, args)
    total = Fraction(0)
    n_fact = math.factorial(n)
    for k in range(1, n + 1):
        total += (generalized_binomial(-3 * n, k - 1)
                  * math.factorial(k - 1) * table.value(n, k) / n_fact)
    if total.denominator != 1:
        raise AssertionError("Bell transform did not produce an integer")
    return int(total)


def f_sequence(n: int) -> list[int]:
    return [f_closed(i) for i in range(1, n + 1)]


def g_sequence(n: int) -> list[int]:
    return [g_bell(i) for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# Truncated exact power series

@dataclasses.dataclass(frozen=True)
class ExactSeries:
    """Power series truncated at a fixed order, with exact rational
    coefficients indexed 0..order."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_list(cls, coeffs: Sequence[Rational]) -> "ExactSeries":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def constant(cls, value: Rational, order: int) -> "ExactSeries":
        return cls((Fraction(value),) + (Fraction(0),) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def _check(self, other: "ExactSeries") -> None:
        if self.order != other.order:
            raise ValueError("series orders differ")

    def __add__(self, other: "ExactSeries") -> "ExactSeries":
        self._check(other)
        return ExactSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "ExactSeries") -> "ExactSeries":
        self._check(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return ExactSeries(tuple(out))

    def scale(self, c: Rational) -> "ExactSeries":
        return ExactSeries(tuple(Fraction(c) * a for a in self.coeffs))

    def power(self, k: int) -> "ExactSeries":
        result = ExactSeries.constant(1, self.order)
        for _ in range(k):
            result = result * self
        return result

    def compose(self, inner: "ExactSeries") -> "ExactSeries":
        """Horner evaluation of self at ``inner``; needs ``inner[0] == 0``."""
        self._check(inner)
        if inner.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        result = ExactSeries.constant(self.coeffs[-1], self.order)
        for k in range(self.order - 1, -1, -1):
            result = result * inner + ExactSeries.constant(self.coeffs[k], self.order)
        return result


def f_series(order: int) -> ExactSeries:
    """Generating series of rooted bicubic map counts, truncated."""
    return ExactSeries.from_list([0] + [f_closed(i) for i in range(1, order + 1)])


def g_series(order: int) -> ExactSeries:
    """Generating series of rooted primitive counts, truncated."""
    return ExactSeries.from_list([0] + [g_bell(i) for i in range(1, order + 1)])


def verify_functional_equation(order: int) -> bool:
    """Check coefficientwise that the rooted-map series equals the primitive
    series composed with ``x * (1 + F(x))^3`` up to the given order."""
    if order < 1:
        raise ValueError("order must be positive")
    f = f_series(order)
    g = g_series(order)
    x = ExactSeries.from_list([0, 1] + [0] * (order - 1))
    one = ExactSeries.constant(1, order)
    inner = x * (one + f).power(3)
    composed = g.compose(inner)
    return all(composed[i] == f[i] for i in range(1, order + 1))
