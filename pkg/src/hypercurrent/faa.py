"""Partial Bell polynomials and Faa di Bruno composition of Taylor series."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .exact import HalfGridSeries, LaurentPoly, ParamPoly

__all__ = [
    "double_factorial",
    "bell",
    "bell_table",
    "bell_multinomial",
    "faa_series",
    "sqrt_derivative_at_one",
    "neg_three_halves_derivative_at_one",
    "sqrt_series",
    "neg32_series",
    "neg32_coeff",
]


def double_factorial(m: int) -> int:
    """``m!!`` extended by ``(-1)!! = 1`` and ``(-3)!! = -1``."""
    if m == -1 or m == 0:
        return 1
    if m == -3:
        return -1
    if m < -3:
        raise ValueError(f"{m}!! is not defined here")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def bell_table(nmax: int, args: Sequence) -> list[list[ParamPoly]]:
    """All ``B[n][k]`` for ``0 <= k <= n <= nmax``.

    ``args[j - 1]`` is the variable ``z_j``.  Uses
    ``B_{n,k} = sum_j C(n-1, j-1) z_j B_{n-j,k-1}``.
    """
    z = [ParamPoly.coerce(a) for a in args]
    zero = ParamPoly()
    B = [[zero] * (nmax + 1) for _ in range(nmax + 1)]
    B[0][0] = ParamPoly.const(1)
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            acc = zero
            for j in range(1, n - k + 2):
                prev = B[n - j][k - 1]
                if not prev or j > len(z) or not z[j - 1]:
                    continue
                acc = acc + z[j - 1] * prev * comb(n - 1, j - 1)
            B[n][k] = acc
    return B


def bell(n: int, k: int, args: Sequence) -> ParamPoly:
    """Partial Bell polynomial ``B_{n,k}(z_1, ..., z_{n-k+1})``."""
    if n < 0 or k < 0:
        raise ValueError("Bell indices must be nonnegative")
    if k > n:
        return ParamPoly()
    if n > 0 and k > 0 and len(args) < n - k + 1:
        raise ValueError(f"B_{{{n},{k}}} needs {n - k + 1} arguments, got {len(args)}")
    return bell_table(n, args)[n][k]


def _compositions(n: int, k: int, j: int = 1):
    """Multiplicity vectors ``l_j, l_{j+1}, ...`` with ``sum l = k`` and ``sum j l_j = n``."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if j > n:
        return
    for l in range(min(k, n // j), -1, -1):
        for rest in _compositions(n - j * l, k - l, j + 1):
            yield (l,) + rest


def bell_multinomial(n: int, k: int, args: Sequence) -> ParamPoly:
    """``B_{n,k}`` as the explicit sum ``n!/prod(l_j! j!^l_j) prod z_j^l_j``."""
    z = [ParamPoly.coerce(a) for a in args]
    total = ParamPoly()
    for ls in _compositions(n, k):
        denom = 1
        term = ParamPoly.const(1)
        for j, l in enumerate(ls, 1):
            if l:
                denom *= factorial(l) * factorial(j) ** l
                term = term * z[j - 1] ** l
        total = total + term * Fraction(factorial(n), denom)
    return total


def faa_series(outer_derivs: Callable[[int], object], inner, order: int) -> HalfGridSeries:
    """Taylor series of ``f(g(z))`` at ``z = 0`` up to ``z^order`` (exclusive).

    ``outer_derivs(l)`` is ``f^(l)(g(0))``; ``inner`` is a polynomial or series
    ``g`` with integer exponents.
    """
    if isinstance(inner, LaurentPoly):
        inner = HalfGridSeries.from_laurent(inner)
    g = {e: v for e, v in inner.items()}
    if any(not isinstance(e, int) or e < 0 for e in g):
        raise ValueError("inner function must be a power series in z")
    if order <= 0:
        return HalfGridSeries({}, 0)
    # g^(k)(0) = k! g_k
    derivs = [g.get(k, ParamPoly()) * factorial(k) for k in range(1, order)]
    B = bell_table(order - 1, derivs)
    f = [ParamPoly.coerce(outer_derivs(l)) for l in range(order)]
    coeffs = {}
    for m in range(order):
        acc = ParamPoly()
        for l in range(m + 1):
            if f[l] and B[m][l]:
                acc = acc + f[l] * B[m][l]
        coeffs[m] = acc / factorial(m)
    return HalfGridSeries.from_terms(coeffs, order)


def sqrt_derivative_at_one(k: int) -> Fraction:
    """``f^(k)(1)`` for ``f(z) = sqrt(z)``: ``(-1)^(k+1) (2k-3)!! / 2^k``."""
    return Fraction((-1) ** (k + 1) * double_factorial(2 * k - 3), 2**k)


def neg_three_halves_derivative_at_one(k: int) -> Fraction:
    """``f^(k)(1)`` for ``f(x) = x^(-3/2)``: ``(-1)^k (2k+1)!! / 2^k``."""
    return Fraction((-1) ** k * double_factorial(2 * k + 1), 2**k)


def _normalized(poly: LaurentPoly) -> LaurentPoly:
    if poly.coeff(0) != 1:
        raise ValueError(f"inner polynomial must have constant term 1, got {poly.coeff(0)}")
    return poly


def sqrt_series(poly: LaurentPoly, order: int) -> HalfGridSeries:
    """``sqrt(poly(z))`` via Faa di Bruno; ``poly(0)`` must be 1."""
    return faa_series(sqrt_derivative_at_one, _normalized(poly), order)


def neg32_series(poly: LaurentPoly, order: int) -> HalfGridSeries:
    """``poly(z)^(-3/2)`` via Faa di Bruno; ``poly(0)`` must be 1."""
    return faa_series(neg_three_halves_derivative_at_one, _normalized(poly), order)


def neg32_coeff(m: int, p_bar: LaurentPoly) -> ParamPoly:
    """Taylor coefficient of ``z^m`` in ``p_bar(z)^(-3/2)``.

    Direct form of the closed expression: with ``p_bar^(k)(0) = k! a_{n-k}``,
    ``(1/m!) sum_l (-1)^l (2l+1)!!/2^l B_{m,l}(1! c_1, 2! c_2, ...)``.
    """
    args = [p_bar.coeff(k) * factorial(k) for k in range(1, m + 1)]
    B = bell_table(m, args)
    acc = ParamPoly()
    for l in range(m + 1):
        acc = acc + B[m][l] * neg_three_halves_derivative_at_one(l)
    return acc / factorial(m)
