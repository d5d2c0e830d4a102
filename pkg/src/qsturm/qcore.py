"""Scalar q-arithmetic: q-numbers, q-shifted factorials and basic
hypergeometric series.

All routines work on plain floats by default. A :class:`QContext` built with
``precision > 53`` switches every conversion to an independent mpmath context
of that many bits, so the same code runs in extended precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import mpmath

__all__ = [
    "QContext",
    "Truncated",
    "ConvergenceError",
    "HypergeometricSpec",
    "q_number",
    "q_pochhammer",
    "q_pochhammer_infinite",
    "q_pochhammer_ratio_infinite",
    "basic_hypergeometric",
    "hypergeometric_terms",
]


class ConvergenceError(ArithmeticError):
    """A series or product hit ``max_terms`` before reaching ``tol``."""


class Truncated(NamedTuple):
    """Value of a truncated series or product.

    ``error`` is an estimate (a rigorous bound for infinite products) of the
    discarded tail; it is exactly 0 for finite sums and products.
    """

    value: float
    error: float
    terms: int

    @property
    def exact(self) -> bool:
        return self.error == 0

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class QContext:
    """Base ``q`` together with the truncation policy.

    Parameters
    ----------
    q : float
        Base, ``0 < q < 1``.
    tol : float, optional
        Relative truncation tolerance for series and infinite products.
        Defaults to ``1e-15`` in double precision and ``2**(4 - precision)``
        otherwise.
    max_terms : int
        Hard cap on the number of terms of any series or product.
    precision : int
        Working precision in bits. 53 means IEEE double.
    """

    q: float
    tol: float | None = None
    max_terms: int = 2000
    precision: int = 53
    _mp: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ValueError(f"q must lie in (0, 1), got {self.q!r}")
        if self.tol is None:
            object.__setattr__(
                self, "tol", 1e-15 if self.precision <= 53 else 2.0 ** (4 - self.precision))
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.precision < 53:
            raise ValueError("precision below 53 bits is not supported")
        if self.precision > 53:
            mp = mpmath.MPContext()
            mp.prec = self.precision
            object.__setattr__(self, "_mp", mp)

    def replace(self, **changes) -> "QContext":
        kw = dict(q=self.q, tol=self.tol, max_terms=self.max_terms,
                  precision=self.precision)
        kw.update(changes)
        return QContext(**kw)

    @property
    def extended(self) -> bool:
        return self._mp is not None

    def num(self, x):
        """Convert ``x`` to the working real type."""
        if self._mp is None:
            return float(x)
        return self._mp.mpf(x)

    @property
    def base(self):
        """``q`` in the working real type."""
        return self.num(self.q)

    def exp(self, x):
        return math.exp(x) if self._mp is None else self._mp.exp(x)

    def log(self, x):
        return math.log(x) if self._mp is None else self._mp.log(x)

    def sqrt(self, x):
        return math.sqrt(x) if self._mp is None else self._mp.sqrt(x)

    @property
    def inf(self):
        return math.inf if self._mp is None else self._mp.inf


def q_number(z, ctx: QContext):
    """``[z]_q = (q**z - 1) / (q - 1)``."""
    q = ctx.base
    return (q ** ctx.num(z) - 1) / (q - 1)


def q_pochhammer(a, base, n: int):
    """Finite q-shifted factorial ``(a; base)_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = 1.0 if isinstance(a, float) else a * 0 + 1
    power = 1
    for _ in range(n):
        result *= 1 - power * a
        power *= base
    return result


def q_pochhammer_infinite(a, base, ctx: QContext) -> Truncated:
    """Infinite product ``(a; base)_inf`` for ``|base| < 1``.

    Factors are multiplied in until the tail ``prod_{j>=J} (1 - a base**j)``
    is provably within ``tol`` of 1. With ``u = |a base**J| < 1`` the log of
    the tail is bounded by ``u / ((1 - |base|) (1 - u))``.
    """
    a = ctx.num(a)
    base = ctx.num(base)
    if not abs(base) < 1:
        raise ValueError("infinite product needs |base| < 1")
    if a == 0:
        return Truncated(ctx.num(1), 0.0, 0)
    shrink = 1 - abs(base)
    value = ctx.num(1)
    u = a
    for j in range(ctx.max_terms):
        au = abs(u)
        if au < 1:
            bound = au / (shrink * (1 - au))
            if bound < ctx.tol:
                return Truncated(value, float(abs(value)) * math.expm1(float(bound)), j)
        value *= 1 - u
        if value == 0:
            return Truncated(value, 0.0, j + 1)
        u *= base
    raise ConvergenceError(
        f"(a; base)_inf with a={float(a)!r}, base={float(base)!r} did not "
        f"converge in {ctx.max_terms} factors"
    )


def q_pochhammer_ratio_infinite(a, b, base, ctx: QContext) -> Truncated:
    """``(a; base)_inf / (b; base)_inf`` as one product of factor ratios.

    Near ``base = 1`` both products can underflow while their ratio is of
    moderate size, so they are never formed separately. The tail bound is
    the sum of the two single-product bounds.
    """
    a, b, base = ctx.num(a), ctx.num(b), ctx.num(base)
    if not abs(base) < 1:
        raise ValueError("infinite product needs |base| < 1")
    shrink = 1 - abs(base)
    value = ctx.num(1)
    ua, ub = a, b
    for j in range(ctx.max_terms):
        aa, ab = abs(ua), abs(ub)
        if aa < 1 and ab < 1:
            bound = aa / (shrink * (1 - aa)) + ab / (shrink * (1 - ab))
            if bound < ctx.tol:
                return Truncated(value, float(abs(value)) * math.expm1(float(bound)), j)
        den = 1 - ub
        if den == 0:
            raise ZeroDivisionError(f"(b; base)_inf vanishes at factor {j}")
        value *= (1 - ua) / den
        if value == 0:
            return Truncated(value, 0.0, j + 1)
        ua *= base
        ub *= base
    raise ConvergenceError(
        f"(a; base)_inf / (b; base)_inf did not converge in {ctx.max_terms} factors")


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of an ``r phi s`` series in a given base.

    ``prefactor_exponent`` defaults to ``1 + s - r``.
    """

    num_params: tuple
    den_params: tuple
    base: float
    prefactor_exponent: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "num_params", tuple(self.num_params))
        object.__setattr__(self, "den_params", tuple(self.den_params))
        if self.prefactor_exponent is None:
            object.__setattr__(
                self, "prefactor_exponent",
                1 + len(self.den_params) - len(self.num_params))

    def termination_index(self, ctx: QContext) -> int | None:
        """Smallest ``m`` with a numerator parameter equal to ``base**-m``.

        Matching uses relative tolerance ``ctx.tol`` and ``m <= max_terms``.
        """
        base = ctx.num(self.base)
        best = None
        for a in self.num_params:
            a = ctx.num(a)
            if a == 0:
                continue
            ratio = ctx.log(abs(a)) / ctx.log(base)
            m = int(round(-float(ratio)))
            if m < 0 or m > ctx.max_terms:
                continue
            target = base ** (-m)
            if abs(a - target) <= ctx.tol * target:
                best = m if best is None else min(best, m)
        return best


def _term_ratio(spec: HypergeometricSpec, k: int, z, power, ctx: QContext):
    # t_{k+1} / t_k, with power = base**k
    num = 1
    for a in spec.num_params:
        num *= 1 - ctx.num(a) * power
    den = 1 - power * ctx.num(spec.base)
    for b in spec.den_params:
        f = 1 - ctx.num(b) * power
        if f == 0:
            raise ZeroDivisionError(
                f"denominator parameter {float(b)!r} equals base**-{k}")
        den *= f
    e = spec.prefactor_exponent
    if e:
        num *= (-power) ** e
    return num * z / den


def hypergeometric_terms(spec: HypergeometricSpec, z, ctx: QContext, count: int) -> list:
    """The first ``count`` terms ``t_0, t_1, ...`` of the series."""
    z = ctx.num(z)
    base = ctx.num(spec.base)
    terms = [ctx.num(1)]
    power = ctx.num(1)
    for k in range(count - 1):
        terms.append(terms[-1] * _term_ratio(spec, k, z, power, ctx))
        power *= base
    return terms


def basic_hypergeometric(spec: HypergeometricSpec, z, ctx: QContext) -> Truncated:
    """Evaluate ``r phi s (a; b; base, z)``.

    Terminating series (some ``a_i = base**-m``) are summed over exactly
    ``m + 1`` terms and reported exact. Otherwise terms are accumulated until
    the latest one falls below ``tol`` relative to the running sum, and that
    term is returned as error estimate.
    """
    m = spec.termination_index(ctx)
    if m is not None:
        terms = hypergeometric_terms(spec, z, ctx, m + 1)
        return Truncated(math.fsum(terms) if not ctx.extended else sum(terms),
                         0.0, m + 1)
    z = ctx.num(z)
    base = ctx.num(spec.base)
    term = ctx.num(1)
    total = term
    power = ctx.num(1)
    for k in range(ctx.max_terms):
        term = term * _term_ratio(spec, k, z, power, ctx)
        power *= base
        total += term
        if abs(term) <= ctx.tol * abs(total) or term == 0:
            return Truncated(total, float(abs(term)), k + 2)
    raise ConvergenceError(f"series did not converge in {ctx.max_terms} terms")

