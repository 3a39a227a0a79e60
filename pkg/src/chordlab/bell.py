"""Partial Bell polynomials, series composition through them, the related
identity suite, and Lagrange fixed-point machinery.

B(n, k; x1, x2, ...) sums, over set partitions of {1,...,n} into k blocks,
the product of x_{|block|}.  Everything here is exact rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from . import fps
from .fps import FormalPowerSeries, Rational


def _key(xs: Sequence[Rational]) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in xs)


def bell_partial(n: int, k: int, xs: Sequence[Rational]) -> Fraction:
    """B(n, k) via the block-of-the-first-element recurrence

        k B(n,k) = sum_s C(n,s) x_s B(n-s, k-1).
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if 0 < k <= n and len(xs) < n - k + 1:
        raise ValueError(f"need x_1..x_{n - k + 1}, got {len(xs)} values")
    return _bell_memo(n, k, _key(xs[: max(n - k + 1, 0)]))


@lru_cache(maxsize=None)
def _bell_memo(n: int, k: int, xs: tuple[Fraction, ...]) -> Fraction:
    if n == 0:
        return Fraction(1) if k == 0 else Fraction(0)
    if k == 0 or k > n:
        return Fraction(0)
    total = Fraction(0)
    for s in range(1, n - k + 2):
        x = xs[s - 1]
        if x:
            total += comb(n, s) * x * _bell_memo(n - s, k - 1, xs[: n - s - k + 2])
    return total / k


def bell_partial_by_partitions(n: int, k: int, xs: Sequence[Rational]) -> Fraction:
    """Independent oracle: literally enumerate set partitions of {1,...,n}
    into k blocks (restricted-growth strings) and sum the block products."""
    if n == 0:
        return Fraction(1) if k == 0 else Fraction(0)
    if k == 0 or k > n:
        return Fraction(0)
    values = _key(xs)
    total = Fraction(0)
    rgs = [0] * n

    def rec(i: int, maxused: int, sizes: list[int]) -> None:
        nonlocal total
        if i == n:
            if maxused + 1 == k:
                prod = Fraction(1)
                for size in sizes:
                    prod *= values[size - 1]
                total += prod
            return
        if maxused + 1 + (n - i) < k:
            return
        for b in range(min(maxused + 1, k - 1) + 1):
            rgs[i] = b
            if b == maxused + 1:
                sizes.append(1)
                rec(i + 1, maxused + 1, sizes)
                sizes.pop()
            else:
                sizes[b] += 1
                rec(i + 1, maxused, sizes)
                sizes[b] -= 1

    rec(0, -1, [])
    return total


def faa_di_bruno(
    f_coeffs: Sequence[Rational], g_coeffs: Sequence[Rational], n: int
) -> Fraction:
    """n-th coefficient (in the n!-normalised sense) of f(g(t)) where
    f(t) = sum f_m t^m / m! and g(t) = sum g_m t^m / m!, g_0 = 0:

        h_n = sum_k f_k B(n, k; g_1, g_2, ...).
    """
    if g_coeffs and Fraction(g_coeffs[0]) != 0:
        raise ValueError("the inner series must have zero constant term")
    gs = list(_key(g_coeffs[1:]))
    gs.extend([Fraction(0)] * (n - len(gs)))  # unstated tail coefficients vanish
    if n == 0:
        return Fraction(f_coeffs[0]) if f_coeffs else Fraction(0)
    total = Fraction(0)
    for k in range(1, min(n, len(f_coeffs) - 1) + 1):
        fk = Fraction(f_coeffs[k])
        if fk:
            total += fk * bell_partial(n, k, gs)
    return total


# -- identity suite -------------------------------------------------------------


def _identity_lemma_split(n, k, xs):
    lhs = k * bell_partial(n, k, xs)
    rhs = sum(
        comb(n, s) * Fraction(xs[s - 1]) * bell_partial(n - s, k - 1, xs)
        for s in range(1, n + 1)
        if s - 1 < len(xs)
    )
    return lhs == rhs


def _identity_lemma_rooted(n, k, xs):
    lhs = n * bell_partial(n, k, xs)
    rhs = sum(
        comb(n, s) * s * Fraction(xs[s - 1]) * bell_partial(n - s, k - 1, xs)
        for s in range(1, n + 1)
        if s - 1 < len(xs)
    )
    return lhs == rhs


def _identity_shift(n, k, xs):
    # B(n,k) expressed through B(n-a, k) with the first variable inverted
    if n <= k:
        raise ValueError("this identity needs n > k")
    x1 = Fraction(xs[0])
    if not x1:
        raise ValueError("this identity needs x_1 != 0")
    rhs = sum(
        comb(n, a)
        * (Fraction(k + 1) - Fraction(n + 1, a + 1))
        * Fraction(xs[a])
        * bell_partial(n - a, k, xs)
        for a in range(1, n - k + 1)
    )
    return bell_partial(n, k, xs) == rhs / (x1 * (n - k))


def _identity_convolution(n, k1, k2, xs):
    lhs = bell_partial(n, k1 + k2, xs)
    rhs = sum(
        comb(n, a) * bell_partial(a, k1, xs) * bell_partial(n - a, k2, xs)
        for a in range(n + 1)
    )
    return lhs == Fraction(factorial(k1) * factorial(k2), factorial(k1 + k2)) * rhs


def nested_convolution(n: int, blocks: int, xs: Sequence[Rational]) -> Fraction:
    """The fully nested monomial expansion of B(n, blocks), evaluated by
    peeling one block at a time (repeated two-part convolution) rather than
    by literal nested loops.

    With E(m, 0) = x_m and E(m, j) = sum_{a=j}^{m-1} C(m,a) x_{m-a} E(a, j-1),
    the value is E(n, blocks-1) / blocks!.
    """
    k = blocks - 1
    if k < 0:
        raise ValueError("needs at least one block")
    if n >= blocks and len(xs) < n - blocks + 1:
        raise ValueError(f"need x_1..x_{n - blocks + 1}")
    values = _key(xs)

    def peel(m: int, j: int) -> Fraction:
        if j == 0:
            return values[m - 1]
        total = Fraction(0)
        for a in range(j, m):
            inner = peel(a, j - 1)
            if inner:
                total += comb(m, a) * values[m - a - 1] * inner
        return total

    if n < blocks or n == 0:
        return bell_partial(n, blocks, xs)  # degenerate: 0 (or 1 at n=blocks=0)
    return peel(n, k) / factorial(blocks)


def nested_convolution_literal(n: int, blocks: int, xs: Sequence[Rational]) -> Fraction:
    """Small-case oracle for nested_convolution: the same sum written with
    one explicit loop per block boundary."""
    k = blocks - 1
    values = _key(xs)
    if k == 0:
        return values[n - 1]
    total = Fraction(0)

    def loop(depth: int, prev: int, indices: list[int]) -> None:
        nonlocal total
        for a in range(k - depth, prev):
            indices.append(a)
            if depth == k - 1:
                prod = Fraction(1)
                upper = n
                for cut in indices:
                    prod *= comb(upper, cut) * values[upper - cut - 1]
                    upper = cut
                total += prod * values[upper - 1]
            else:
                loop(depth + 1, a, indices)
            indices.pop()

    loop(0, n, [])
    return total / factorial(blocks)


def _identity_nested(n, blocks, xs):
    return bell_partial(n, blocks, xs) == nested_convolution(n, blocks, xs)


BELL_IDENTITIES = ("lemma1a", "lemma1b", "id1", "id2", "id3")


def verify_bell_identity(which: str, n: int, k: int, xs: Sequence[Rational], k2: int | None = None) -> bool:
    """Exact check of one identity at the given parameters.

    lemma1a / lemma1b: the two block-rooting recurrences.
    id1: the shifted expansion (needs n > k and x_1 != 0).
    id2: the two-part convolution B(n, k + k2) (k2 defaults to k).
    id3: the fully nested expansion of B(n, k+1).
    """
    if which == "lemma1a":
        return _identity_lemma_split(n, k, xs)
    if which == "lemma1b":
        return _identity_lemma_rooted(n, k, xs)
    if which == "id1":
        return _identity_shift(n, k, xs)
    if which == "id2":
        return _identity_convolution(n, k, k if k2 is None else k2, xs)
    if which == "id3":
        return _identity_nested(n, k, xs)
    raise KeyError(f"unknown identity {which!r}; known: {', '.join(BELL_IDENTITIES)}")


# -- Lagrange fixed point ---------------------------------------------------------


def lift_solve(g: FormalPowerSeries, order: int) -> FormalPowerSeries:
    """The unique series R with R = x g(R), for invertible g (g_0 != 0).

    Solved by the fixed-point iteration R <- x g(R), which gains one correct
    order per step; g must be known through order-1.
    """
    if not g.coeffs[0]:
        raise ValueError("the fixed point needs a nonzero constant term in g")
    if order == 0:
        return fps.zero(0)
    if g.order < order - 1:
        raise ValueError(f"g is needed through order {order - 1}")
    gt = g.truncate(order - 1)
    r = fps.zero(order - 1)
    for _ in range(order):
        r = fps.multiply_by_power(gt.compose(r), 1).truncate(order - 1)
    return fps.multiply_by_power(gt.compose(r), 1)


def lift_coefficient(
    f: FormalPowerSeries, g: FormalPowerSeries, n: int
) -> Fraction:
    """[x^n] f(R) = (1/n) [t^(n-1)] f'(t) g(t)^n for the fixed point above."""
    if n < 1:
        raise ValueError("defined for n >= 1")
    prod = f.derivative() * g**n
    return prod[n - 1] / n


def lift_resummation(
    h: FormalPowerSeries, g: FormalPowerSeries, order: int
) -> FormalPowerSeries:
    """sum_n ([x^n] h g^n) x^n = h(R) / (1 - x g'(R)) with R = x g(R)."""
    if h.order < order or g.order < order:
        raise ValueError(f"h and g are needed through order {order}")
    r = lift_solve(g, order)
    numerator = h.truncate(order).compose(r)
    if order == 0:
        return numerator
    gprime = g.derivative().truncate(order - 1).compose(r.truncate(order - 1))
    denom = fps.one(order) - fps.multiply_by_power(gprime, 1)
    return numerator / denom
