"""Tree-level amplitudes of a field substitution applied to a free theory.

A substitution is F(t) = sum_j a_j t^(j+1) with a_0 = 1.  The n-point
subtree amplitude b_n (propagator of the marked edge included) is computed
four independent ways: the Bell-polynomial closed form, the compositional
inverse, the pair of coefficient recurrences, and the literal momentum-level
recursion over set partitions with randomized rational kinematics.  All of
them must agree, and the momentum-level value must not depend on the
kinematics; that cancellation is the point.

Kinematics are formally independent rationals: only the squared mass and
the dot products s_ij enter, and no attempt is made to realize them as
4-vectors (the cancellation is a polynomial identity in these quantities,
so random rational evaluation tests it reliably).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import fps
from .bell import bell_partial
from .fps import FormalPowerSeries, Rational

MAX_AMPLITUDE_POINTS = 7  # set-partition growth guard


@dataclass(frozen=True)
class Diffeomorphism:
    """Coefficient list (a_0, a_1, ..., a_m) with a_0 = 1."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("the substitution must be tangent to the identity (a_0 = 1)")

    @classmethod
    def from_values(cls, values: Sequence[Rational]) -> "Diffeomorphism":
        return cls(tuple(Fraction(v) for v in values))

    def a(self, j: int) -> Fraction:
        if j < 0:
            return Fraction(0)
        cs = self.coefficients
        return cs[j] if j < len(cs) else Fraction(0)

    def series(self, order: int) -> FormalPowerSeries:
        """F(t) = sum a_j t^(j+1), truncated."""
        coeffs = [Fraction(0)] * (order + 1)
        for j, value in enumerate(self.coefficients):
            if j + 1 <= order:
                coeffs[j + 1] = value
        return FormalPowerSeries(coeffs)

    def kinetic_constants(self, nmax: int) -> list[Fraction]:
        """d_r = r! sum_j (j+1)(r-j+1) a_j a_(r-j) for r = 0..nmax."""
        return [
            factorial(r)
            * sum(
                (j + 1) * (r - j + 1) * self.a(j) * self.a(r - j)
                for j in range(r + 1)
            )
            for r in range(nmax + 1)
        ]

    def mass_constants(self, nmax: int) -> list[Fraction]:
        """c_n = (n+2)! sum_j a_j a_(n-j) for n = 0..nmax."""
        return [
            factorial(n + 2) * sum(self.a(j) * self.a(n - j) for j in range(n + 1))
            for n in range(nmax + 1)
        ]


def _as_diffeo(a) -> Diffeomorphism:
    return a if isinstance(a, Diffeomorphism) else Diffeomorphism.from_values(a)


# -- the four routes to b_n ---------------------------------------------------


def b_inverse(a, n: int) -> Fraction:
    """b_n = n! [t^n] reversion(F)."""
    diffeo = _as_diffeo(a)
    if n < 1:
        raise ValueError("defined for n >= 1")
    return factorial(n) * diffeo.series(n).reversion()[n]


def b_inverse_list(a, nmax: int) -> list[Fraction]:
    """(b_1, ..., b_nmax) in one reversion."""
    diffeo = _as_diffeo(a)
    g = diffeo.series(nmax).reversion()
    return [factorial(n) * g[n] for n in range(1, nmax + 1)]


def b_closed_form(a, n: int) -> Fraction:
    """b_(m+1) = sum_k ((m+k)!/m!) B(m, k; -1! a_1, -2! a_2, ...)."""
    diffeo = _as_diffeo(a)
    if n < 1:
        raise ValueError("defined for n >= 1")
    if n == 1:
        return Fraction(1)
    m = n - 1
    xs = [-factorial(j) * diffeo.a(j) for j in range(1, m + 1)]
    return sum(
        (Fraction(factorial(m + k), factorial(m))) * bell_partial(m, k, xs)
        for k in range(1, m + 1)
    )


# -- the two recurrences ---------------------------------------------------------


def mass_recurrence_residual(a, b: Sequence[Rational], n: int) -> Fraction:
    """sum_k B(n,k; b) ((k-1)!/2) sum_j a_j a_(k-1-j) [2n(j+1)(k-j) - k(k+1)];
    zero exactly when the mass-term part of the momentum recursion holds."""
    diffeo = _as_diffeo(a)
    bs = [Fraction(v) for v in b]
    total = Fraction(0)
    for k in range(1, n + 1):
        bell = bell_partial(n, k, bs)
        if not bell:
            continue
        inner = sum(
            diffeo.a(j)
            * diffeo.a(k - 1 - j)
            * (2 * n * (j + 1) * (k - j) - k * (k + 1))
            for j in range(k)
        )
        total += bell * Fraction(factorial(k - 1), 2) * inner
    return total


def dot_recurrence_residual(a, b: Sequence[Rational], n: int) -> Fraction:
    """The dot-product part: a doubly indexed sum that must also vanish."""
    diffeo = _as_diffeo(a)
    bs = [Fraction(v) for v in b]
    total = Fraction(0)
    for k in range(1, n + 1):
        weight = sum(
            diffeo.a(j) * diffeo.a(k - 1 - j) * (j + 1) * (k - j)
            for j in range(k)
        )
        if not weight:
            continue
        inner = Fraction(0)
        for s in range(1, n + 1):
            bell = bell_partial(n - s, k - 1, bs)
            if bell:
                inner += (
                    bs[s - 1]
                    / (factorial(s) * factorial(n - s))
                    * bell
                    * (k * s * (s - 1) + n * (n - 1))
                )
        total += weight * Fraction(factorial(k - 1), 2 * k) * inner
    return total


def verify_recurrences(a, nmax: int, b: Sequence[Rational] | None = None) -> bool:
    """Both recurrences vanish for 1 <= n <= nmax (b defaults to the
    compositional-inverse coefficients)."""
    if b is None:
        b = b_inverse_list(a, nmax)
    return all(
        not mass_recurrence_residual(a, b, n) and not dot_recurrence_residual(a, b, n)
        for n in range(1, nmax + 1)
    )


# -- the differential equations ----------------------------------------------------


def ode_residuals(
    a, order: int, use_inverse: bool = True
) -> tuple[FormalPowerSeries, FormalPowerSeries]:
    """Residual series of t (P o G)' - Q o G and (P o G)'' + G'' (P' o G),
    where P = int (F')^2 dt, Q = (1/2) d/dt F^2, and G is the compositional
    inverse of F (or F itself for the negative control)."""
    diffeo = _as_diffeo(a)
    pad = order + 2
    f = diffeo.series(pad)
    g = f.reversion() if use_inverse else f
    fprime = f.derivative()
    p = (fprime * fprime).integral()  # order pad, constant 0
    q = (f * f).derivative() / 2
    p_of_g = p.compose(g)
    first = fps.multiply_by_power(p_of_g.derivative(), 1) - q.compose(g)
    second = p_of_g.derivative().derivative() + g.derivative().derivative() * (
        p.derivative().compose(g.truncate(pad - 1))
    )
    return first.truncate(order), second.truncate(order)


def verify_ode(a, order: int) -> bool:
    first, second = ode_residuals(a, order)
    return first == fps.zero(order) and second == fps.zero(order)


# -- the momentum-level recursion ----------------------------------------------------


class KinematicSample:
    """Squared mass and the symmetric dot-product table s_ij (i < j), with
    s_ii = mass_squared imposed (the on-shell condition)."""

    __slots__ = ("n", "mass_squared", "dots")

    def __init__(self, n: int, mass_squared: Rational, dots: dict[tuple[int, int], Rational]):
        self.n = n
        self.mass_squared = Fraction(mass_squared)
        self.dots = {
            (min(i, j), max(i, j)): Fraction(v) for (i, j), v in dots.items()
        }
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if (i, j) not in self.dots:
                    raise ValueError(f"missing dot product s_{i}{j}")

    @classmethod
    def random(cls, n: int, rng: random.Random, mass_squared: Rational | None = None):
        msq = (
            Fraction(rng.randint(1, 9), rng.randint(1, 9))
            if mass_squared is None
            else mass_squared
        )
        dots = {
            (i, j): Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        }
        return cls(n, msq, dots)

    @classmethod
    def random_nondegenerate(
        cls, n: int, rng: random.Random, mass_squared: Rational | None = None
    ) -> "KinematicSample":
        """Resample until every sub-propagator denominator is nonzero, so
        the momentum recursion can run on any subset of the momenta."""
        from itertools import combinations

        while True:
            sample = cls.random(n, rng, mass_squared)
            ok = True
            for size in range(2, n + 1):
                for subset in combinations(range(1, n + 1), size):
                    if sample.subset_momentum_squared(subset) == sample.mass_squared:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return sample

    def subset_momentum_squared(self, subset: Sequence[int]) -> Fraction:
        """(sum of the subset's momenta)^2 expanded on-shell:
        |S| m^2 + 2 sum of the pairwise dot products."""
        items = sorted(subset)
        total = len(items) * self.mass_squared
        for idx, i in enumerate(items):
            for j in items[idx + 1 :]:
                total += 2 * self.dots[(i, j)]
        return total


def _set_partitions(items: list[int]):
    """All set partitions with at least two blocks."""
    n = len(items)
    codes = [0] * n

    def rec(i: int, maxused: int):
        if i == n:
            if maxused >= 1:
                blocks: list[list[int]] = [[] for _ in range(maxused + 1)]
                for item, c in zip(items, codes):
                    blocks[c].append(item)
                yield blocks
            return
        for c in range(maxused + 2):
            codes[i] = c
            yield from rec(i + 1, max(maxused, c))

    yield from rec(0, -1)


def amplitude_recursion(a, n: int, kin: KinematicSample) -> Fraction:
    """Literal evaluation of the subtree-sum recursion: over set partitions
    of the n external momenta, each vertex contributes its kinetic and mass
    terms and each internal edge its propagator; the marked edge's
    propagator is included, matching the b_n convention (b_2 = -2a_1)."""
    if n > MAX_AMPLITUDE_POINTS:
        raise ValueError(f"n > {MAX_AMPLITUDE_POINTS} is guarded (set partitions blow up)")
    if kin.n < n:
        raise ValueError("the kinematic sample has too few momenta")
    diffeo = _as_diffeo(a)
    d_const = diffeo.kinetic_constants(n)
    c_const = diffeo.mass_constants(n)
    msq = kin.mass_squared

    memo: dict[tuple[int, ...], Fraction] = {}

    def subtree(momenta: tuple[int, ...]) -> Fraction:
        if len(momenta) == 1:
            return Fraction(1)
        if momenta in memo:
            return memo[momenta]
        total_sq = kin.subset_momentum_squared(momenta)
        denominator = total_sq - msq
        if not denominator:
            raise ZeroDivisionError(
                "vanishing propagator denominator; resample the kinematics"
            )
        acc = Fraction(0)
        for blocks in _set_partitions(list(momenta)):
            k = len(blocks)
            prod = Fraction(1)
            squares = total_sq
            for block in blocks:
                prod *= subtree(tuple(block))
                squares += kin.subset_momentum_squared(block)
            vertex = (d_const[k - 1] * squares - msq * c_const[k - 1]) / 2
            acc += prod * vertex
        value = -acc / denominator
        memo[momenta] = value
        return value

    return subtree(tuple(range(1, n + 1)))
