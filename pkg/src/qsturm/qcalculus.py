"""q-difference operators and Jackson q-integrals on geometric lattices."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .qcore import ConvergenceError, QContext, Truncated

__all__ = [
    "GeometricLattice",
    "q_derivative",
    "q_derivative_inverse_base",
    "q_second_operator",
    "jackson_integral",
    "jackson_integral_interval",
    "jackson_integral_symmetric",
    "jackson_integral_bilateral",
    "jackson_nodes",
]

RealFunction = Callable[[float], float]

# number of recent integrand values used to bound the Jackson tail
_TAIL_WINDOW = 4


@dataclass(frozen=True)
class GeometricLattice:
    """Points ``anchor * base**n`` for ``n = 0 .. depth - 1``, optionally
    together with their mirror images."""

    anchor: float
    base: float
    depth: int
    signed: bool = True

    def __post_init__(self):
        if not self.anchor > 0:
            raise ValueError("lattice anchor must be positive")
        if not 0 < self.base < 1:
            raise ValueError("lattice base must lie in (0, 1)")
        if self.depth < 1:
            raise ValueError("lattice depth must be >= 1")

    def point(self, n: int, sign: int = 1):
        return sign * self.anchor * self.base ** n

    def points(self, signed: bool | None = None) -> list:
        signed = self.signed if signed is None else signed
        pos = [self.point(n) for n in range(self.depth)]
        if not signed:
            return pos
        return pos + [-x for x in pos]

    def index(self, x, rtol: float = 1e-12) -> tuple[int, int]:
        """``(n, sign)`` with ``x == sign * anchor * base**n`` up to ``rtol``."""
        if x == 0:
            raise ValueError("0 is not a lattice point")
        sign = 1 if x > 0 else -1
        if sign < 0 and not self.signed:
            raise KeyError(f"{float(x)!r} is not on the lattice")
        n = int(round(math.log(abs(float(x)) / float(self.anchor)) / math.log(float(self.base))))
        if not 0 <= n < self.depth or abs(abs(x) - self.point(n)) > rtol * abs(x):
            raise KeyError(f"{float(x)!r} is not on the lattice")
        return n, sign


def _nonzero(x):
    if x == 0:
        raise ZeroDivisionError("q-difference quotient is undefined at x = 0")


def q_derivative(f: RealFunction, x, ctx: QContext):
    """``D_q f(x) = (f(qx) - f(x)) / ((q - 1) x)`` for ``x != 0``."""
    _nonzero(x)
    q = ctx.base
    return (f(q * x) - f(x)) / ((q - 1) * x)


def q_derivative_inverse_base(f: RealFunction, x, ctx: QContext):
    """``D_{1/q} f(x)``, written so that ``D_{1/q} f(qx)`` and ``D_q f(x)``
    evaluate through identical arithmetic."""
    _nonzero(x)
    q = ctx.base
    y = x / q
    return (f(q * y) - f(y)) / ((q - 1) * y)


def q_second_operator(f: RealFunction, x, ctx: QContext):
    """``D_q D_{1/q} f(x)``: a three-point stencil on ``x/q, x, qx``."""
    _nonzero(x)
    return q_derivative(lambda y: q_derivative_inverse_base(f, y, ctx), x, ctx)


def _jackson_sum(g: RealFunction, x, ctx: QContext) -> Truncated:
    # sum_{n>=0} q^n g(q^n x), stopped once a tail bound built from the
    # recent |g| values falls under tol * |sum| (floor tol**2)
    q = ctx.base
    total = ctx.num(0)
    weight = ctx.num(1)
    point = x
    recent = []
    for n in range(ctx.max_terms):
        term = g(point)
        total += weight * term
        recent.append(abs(term))
        if len(recent) > _TAIL_WINDOW:
            recent.pop(0)
        weight *= q
        point = point * q
        tail = weight * max(recent) / (1 - q)
        if len(recent) == _TAIL_WINDOW and (
            tail < ctx.tol * abs(total) or tail < ctx.tol ** 2
        ):
            return Truncated(total, float(tail), n + 1)
    raise ConvergenceError(
        f"Jackson sum did not converge in {ctx.max_terms} terms (is the integrand q-regular at 0?)"
    )


def jackson_integral(f: RealFunction, x, ctx: QContext) -> Truncated:
    """``int_0^x f(t) d_q t = x (1 - q) sum_n q^n f(q^n x)``."""
    x = ctx.num(x)
    if x == 0:
        return Truncated(ctx.num(0), 0.0, 0)
    s = _jackson_sum(f, x, ctx)
    scale = x * (1 - ctx.base)
    return Truncated(scale * s.value, abs(float(scale)) * s.error, s.terms)


def jackson_integral_interval(f: RealFunction, a, b, ctx: QContext) -> Truncated:
    """``int_a^b f d_q t`` as the difference of the two integrals from 0."""
    if a == b:
        return Truncated(ctx.num(0), 0.0, 0)
    upper = jackson_integral(f, b, ctx)
    lower = jackson_integral(f, a, ctx)
    return Truncated(upper.value - lower.value, upper.error + lower.error,
                     upper.terms + lower.terms)


def jackson_integral_symmetric(f: RealFunction, b, ctx: QContext) -> Truncated:
    """``int_{-b}^{b} f d_q t = b (1 - q) sum_n q^n (f(b q^n) + f(-b q^n))``.

    Mirror values are paired before accumulation, so an odd integrand sums
    to zero term by term.
    """
    b = ctx.num(b)
    if not b > 0:
        raise ValueError("symmetric Jackson integral needs b > 0")
    s = _jackson_sum(lambda t: f(t) + f(-t), b, ctx)
    scale = b * (1 - ctx.base)
    return Truncated(scale * s.value, float(scale) * s.error, s.terms)


def jackson_integral_bilateral(f: RealFunction, ctx: QContext, depth: int) -> Truncated:
    """``int_{-inf}^{inf} f d_q t`` truncated to ``|n| <= depth``:
    ``(1 - q) sum_n q^n (f(q^n) + f(-q^n))``."""
    q = ctx.base
    total = ctx.num(0)
    for n in range(-depth, depth + 1):
        t = q ** n
        total += t * (f(t) + f(-t))
    edge = q ** depth * abs(f(q ** depth) + f(-q ** depth)) + \
        q ** -depth * abs(f(q ** -depth) + f(-q ** -depth))
    return Truncated((1 - q) * total, float((1 - q) * edge), 2 * depth + 1)


def jackson_nodes(b, ctx: QContext, floor: float | None = None) -> tuple[list, list]:
    """Positive nodes ``b q^n`` and Jackson weights ``b (1-q) q^n``.

    Nodes run until ``q^n < floor`` (default ``min(1e-16, ctx.tol)``), so
    ``sum_k w_k (f(x_k) + f(-x_k))`` approximates the symmetric integral with
    a tail of relative size about ``floor``.
    """
    if floor is None:
        floor = min(1e-16, ctx.tol)
    q = ctx.base
    b = ctx.num(b)
    depth = int(math.ceil(math.log(floor) / math.log(float(q)))) + 1
    if depth > ctx.max_terms:
        raise ConvergenceError(
            f"{depth} Jackson nodes needed, max_terms is {ctx.max_terms}")
    nodes, weights = [], []
    w = b * (1 - q)
    x = b
    for _ in range(depth):
        nodes.append(x)
        weights.append(w)
        x = x * q
        w = w * q
    return nodes, weights
