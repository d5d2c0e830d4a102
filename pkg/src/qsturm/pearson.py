"""Orthogonality weights from the Pearson q-difference equation.

A weight ``W`` solves ``D_q(A W) = B W``, i.e.

    W(qx) / W(x) = ((q - 1) x B(x) + A(x)) / A(qx).

The ratio only fixes ``W`` along each geometric orbit ``{x q**n}``, so
synthesized weights are anchored at one point and compared with closed forms
up to a single scalar per orbit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .qcalculus import GeometricLattice, q_derivative
from .qcore import QContext, q_pochhammer_infinite, q_pochhammer_ratio_infinite

__all__ = [
    "WeightError",
    "LatticeWeight",
    "Residual",
    "pearson_ratio",
    "pearson_residual",
    "weight_from_ratio",
    "support_endpoint",
    "closed_form_weight",
    "starred_weight",
]

RealFunction = Callable[[float], float]

# relative slack allowed when checking |x| <= alpha
_SUPPORT_SLACK = 1e-12


class WeightError(ValueError):
    """The weight would be nonpositive, or was requested outside its support."""


class Residual(NamedTuple):
    """A residual together with the magnitude of the terms that produced it."""

    value: float
    scale: float

    @property
    def relative(self) -> float:
        if self.scale == 0:
            return abs(float(self.value))
        return abs(float(self.value)) / float(self.scale)


@dataclass(frozen=True)
class LatticeWeight:
    """Weight values on ``{+-anchor q**n}``, even by construction.

    ``values[n]`` is the weight at ``lattice.point(n)`` and at its mirror.
    """

    lattice: GeometricLattice
    values: tuple
    normalization_anchor: tuple

    def at(self, x):
        n, _ = self.lattice.index(x)
        return self.values[n]

    def __call__(self, x):
        return self.at(x)

    def with_value(self, n: int, value) -> "LatticeWeight":
        vals = list(self.values)
        vals[n] = value
        return LatticeWeight(self.lattice, tuple(vals), self.normalization_anchor)


def pearson_ratio(A: RealFunction, B: RealFunction, x, ctx: QContext):
    """``W(qx)/W(x) = ((q-1) x B(x) + A(x)) / A(qx)``."""
    q = ctx.base
    den = A(q * x)
    if den == 0:
        raise ZeroDivisionError(f"A vanishes at q*x = {float(q * x)!r}")
    return ((q - 1) * x * B(x) + A(x)) / den


def pearson_residual(A: RealFunction, B: RealFunction, W: RealFunction, x, ctx: QContext) -> Residual:
    """``D_q(A W)(x) - B(x) W(x)`` with the size of its two pieces."""
    q = ctx.base
    lhs = q_derivative(lambda t: A(t) * W(t), x, ctx)
    rhs = B(x) * W(x)
    spread = max(abs(A(q * x) * W(q * x)), abs(A(x) * W(x))) / abs((q - 1) * x)
    return Residual(lhs - rhs, max(spread, abs(rhs)))


def weight_from_ratio(A: RealFunction, B: RealFunction, lattice: GeometricLattice,
                      ctx: QContext) -> LatticeWeight:
    """Iterate the Pearson ratio along ``lattice`` with ``W(anchor q) = 1``.

    The endpoint value follows from the ratio at ``anchor`` itself; it stays
    finite even where ``A(anchor) = 0`` because only ``A(q anchor)`` divides.
    """
    if lattice.depth < 2:
        raise ValueError("lattice needs at least two levels")
    one = ctx.num(1)
    vals = [None] * lattice.depth
    vals[1] = one
    r0 = pearson_ratio(A, B, lattice.point(0), ctx)
    if not r0 > 0:
        raise WeightError(f"nonpositive Pearson ratio {float(r0)!r} at x = {float(lattice.point(0))!r}")
    vals[0] = one / r0
    for n in range(1, lattice.depth - 1):
        x = lattice.point(n)
        r = pearson_ratio(A, B, x, ctx)
        if not r > 0:
            raise WeightError(f"nonpositive Pearson ratio {float(r)!r} at x = {float(x)!r}")
        vals[n + 1] = vals[n] * r
    return LatticeWeight(lattice, tuple(vals), (lattice.point(1), one))


def _family_constants(family_id: int, p, ctx: QContext):
    # (t, numerator-product argument factor, denominator-product factor or None)
    q = ctx.base
    if family_id in (1, 2):
        t = q ** 3 - q + 1
        top = q ** 4 - q + 1 if family_id == 1 else q ** 6 - q + 1
        return t, q * q, top / t
    if family_id == 3:
        if p is None:
            raise ValueError("family 3 needs the parameter p")
        p = ctx.num(p)
        return p * (1 - q * q) + 1, q * q * (1 - q * q), None
    raise ValueError(f"unknown family id {family_id!r}")


def support_endpoint(family_id: int, ctx: QContext):
    """``alpha``: 1 for families 1-2, ``1/sqrt(1-q**2)`` for family 3."""
    if family_id in (1, 2):
        return ctx.num(1)
    if family_id == 3:
        q = ctx.base
        return 1 / ctx.sqrt(1 - q * q)
    raise ValueError(f"unknown family id {family_id!r}")


def _check_support(family_id, x, ctx):
    alpha = support_endpoint(family_id, ctx)
    if abs(x) > alpha * (1 + _SUPPORT_SLACK):
        raise WeightError(f"x = {float(x)!r} lies outside [-{float(alpha)!r}, {float(alpha)!r}]")


def starred_weight(family_id: int, x, p=None, ctx: QContext = None):
    """``W*(x) = x**2 W(x)`` evaluated in pole-free form.

    Only ``x**2`` enters, so the result is bit-identical at ``x`` and ``-x``.
    The power ``t**(log(x**2) / (2 log q))`` equals ``|x|**(log t / log q)``;
    at ``x = 0`` it is 0, 1 or infinite according to the sign of that exponent.
    """
    x = ctx.num(x)
    _check_support(family_id, x, ctx)
    t, top, bottom = _family_constants(family_id, p, ctx)
    if not t > 0:
        raise WeightError(f"weight base {float(t)!r} is not positive")
    q = ctx.base
    x2 = x * x
    q2 = q * q
    if bottom is None:
        value = q_pochhammer_infinite(top * x2, q2, ctx).value
    else:
        value = q_pochhammer_ratio_infinite(top * x2, bottom * x2, q2, ctx).value
    if x2 == 0:
        e = ctx.log(t) / ctx.log(q)
        if e > 0:
            return ctx.num(0)
        if e < 0:
            return ctx.inf
        return value
    return value * ctx.exp(ctx.log(t) * ctx.log(x2) / (2 * ctx.log(q)))


def closed_form_weight(family_id: int, x, p=None, ctx: QContext = None):
    """Closed-form Pearson weight ``W(x)`` of family 1, 2 or 3 (``x != 0``)."""
    x = ctx.num(x)
    if x == 0:
        raise ZeroDivisionError("closed-form weight has a 1/x**2 pole at 0")
    return starred_weight(family_id, x, p, ctx) / (x * x)
