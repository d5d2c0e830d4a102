"""The symmetric second-order q-Sturm-Liouville operator

    A(x) D_q D_{1/q} phi + B(x) D_q phi + (lam C(x) + D(x) + sigma_n E(x)) phi = 0

with ``A, C, D, E`` even and ``B`` odd, its self-adjoint form, and the
Jackson-integral orthogonality check for its symmetric eigenfunctions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .pearson import LatticeWeight, Residual
from .polynomial import PolynomialR
from .qcalculus import (
    jackson_integral_symmetric,
    q_derivative,
    q_derivative_inverse_base,
    q_second_operator,
)
from .qcore import ConvergenceError, QContext

__all__ = [
    "SLCoefficients",
    "OrthogonalityReport",
    "sigma",
    "sl_residual",
    "self_adjoint_residual",
    "verify_orthogonality",
    "parity_cross_term",
]

RealFunction = Callable[[float], float]


def sigma(n: int) -> int:
    """Parity indicator ``(1 - (-1)**n) / 2``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n & 1


@dataclass(frozen=True)
class SLCoefficients:
    """Coefficient functions of the operator.

    ``A_vanishes_at_alpha`` records that ``A(+-alpha) = 0`` holds
    algebraically, so boundary terms are reported as exact zeros instead of
    whatever rounding leaves behind.
    """

    A: RealFunction
    B: RealFunction
    C: RealFunction
    D: RealFunction
    E: RealFunction
    A_vanishes_at_alpha: bool = False

    def check(self, samples: Sequence[float], tol: float = 1e-12) -> None:
        """Raise ``ValueError`` unless A, C, D, E are even, B is odd and C > 0
        at every sample point."""
        for x in samples:
            for name in "ACDE":
                f = getattr(self, name)
                a, b = f(x), f(-x)
                if abs(a - b) > tol * max(abs(a), abs(b), 1e-300):
                    raise ValueError(f"{name} is not even at x = {float(x)!r}")
            a, b = self.B(x), self.B(-x)
            if abs(a + b) > tol * max(abs(a), abs(b), 1e-300):
                raise ValueError(f"B is not odd at x = {float(x)!r}")
            if not self.C(x) > 0:
                raise ValueError(f"C is not positive at x = {float(x)!r}")


def _operator_terms(phi, x, ctx: QContext):
    # (D_q D_{1/q} phi(x), D_q phi(x), phi(x)); polynomials go through their
    # exact coefficient derivatives, other callables through the stencil
    if isinstance(phi, PolynomialR):
        q = ctx.base
        d_inv = phi.q_derivative(1 / q)
        return d_inv.q_derivative(q)(x), phi.q_derivative(q)(x), phi(x)
    return q_second_operator(phi, x, ctx), q_derivative(phi, x, ctx), phi(x)


def sl_residual(coeffs: SLCoefficients, lam, n: int, phi, x, ctx: QContext) -> Residual:
    """Residual of the eigen-equation at ``x``.

    The scale is the largest of the three operator terms at ``x``, so the
    ``relative`` value stays meaningful near zeros of ``phi``.
    """
    dd, d, f = _operator_terms(phi, x, ctx)
    t1 = coeffs.A(x) * dd
    t2 = coeffs.B(x) * d
    t3 = (lam * coeffs.C(x) + coeffs.D(x) + sigma(n) * coeffs.E(x)) * f
    return Residual(t1 + t2 + t3, max(abs(t1), abs(t2), abs(t3)))


def self_adjoint_residual(coeffs: SLCoefficients, W: LatticeWeight, lam, n: int, phi,
                          x, ctx: QContext) -> Residual:
    """Residual of ``D_q[A W D_{1/q} phi] + (lam C + D + sigma_n E) W phi`` at
    the lattice point ``x``; needs ``W`` at ``x`` and ``q x``."""
    q = ctx.base
    if isinstance(phi, PolynomialR):
        d_inv = phi.q_derivative(1 / q)
    else:
        d_inv = lambda t: q_derivative_inverse_base(phi, t, ctx)  # noqa: E731
    w0, w1 = W.at(x), W.at(q * x)
    outer = coeffs.A(q * x) * w1 * d_inv(q * x)
    inner = coeffs.A(x) * w0 * d_inv(x)
    h = (q - 1) * x
    t1 = (outer - inner) / h
    t2 = (lam * coeffs.C(x) + coeffs.D(x) + sigma(n) * coeffs.E(x)) * w0 * phi(x)
    return Residual(t1 + t2, max(abs(outer / h), abs(inner / h), abs(t2)))


@dataclass
class OrthogonalityReport:
    """Gram matrix ``G[n, m] = int W* phi_n phi_m d_q x`` over ``[-alpha, alpha]``."""

    gram: np.ndarray
    max_offdiag_rel: float
    boundary_values: tuple
    threshold: float = 1e-8
    nodes: int = field(default=0)

    @property
    def diagonal_positive(self) -> bool:
        return bool(all(self.gram[i, i] > 0 for i in range(self.gram.shape[0])))

    @property
    def passed(self) -> bool:
        return self.diagonal_positive and self.max_offdiag_rel < self.threshold


def _boundary_values(coeffs: SLCoefficients, Wstar, alpha):
    if coeffs.A_vanishes_at_alpha:
        return (0.0, 0.0)
    # A(x) W(x) = A(x) W*(x) / C(x)
    return tuple(coeffs.A(s) * Wstar(s) / coeffs.C(s) for s in (alpha, -alpha))


def verify_orthogonality(coeffs: SLCoefficients, Wstar: RealFunction, phis: Sequence,
                         alpha, ctx: QContext, threshold: float = 1e-8) -> OrthogonalityReport:
    """Assemble the Gram matrix of ``phis`` under ``W*`` on the Jackson lattice
    ``{+-alpha q**k}``.

    Nodes are added until ``q**k < 1e-16`` and, beyond that, until four
    consecutive nodes contribute less than ``ctx.tol`` relative to the
    smallest diagonal entry. Each function and the weight are evaluated once
    per node.
    """
    q = ctx.base
    dtype = object if ctx.extended else float
    N = len(phis)
    gram = np.zeros((N, N), dtype=dtype)
    min_depth = int(math.ceil(math.log(1e-16) / math.log(ctx.q)))
    x = ctx.num(alpha)
    jw = x * (1 - q)
    quiet = 0
    for k in range(ctx.max_terms):
        vp = np.array([phi(x) for phi in phis], dtype=dtype)
        vn = np.array([phi(-x) for phi in phis], dtype=dtype)
        contrib = jw * (Wstar(x) * np.outer(vp, vp) + Wstar(-x) * np.outer(vn, vn))
        gram = gram + contrib
        diag = [abs(gram[i, i]) for i in range(N)]
        small = max(abs(contrib[i, i]) for i in range(N)) <= ctx.tol * min(diag)
        quiet = quiet + 1 if small else 0
        if k + 1 >= min_depth and quiet >= 4:
            break
        x = x * q
        jw = jw * q
    else:
        raise ConvergenceError(f"Gram sums did not settle within {ctx.max_terms} nodes")
    worst = 0.0
    for i in range(N):
        for j in range(N):
            if i != j:
                den = math.sqrt(abs(float(gram[i, i]) * float(gram[j, j])))
                worst = max(worst, abs(float(gram[i, j])) / den if den else math.inf)
    return OrthogonalityReport(gram, worst, _boundary_values(coeffs, Wstar, alpha),
                               threshold, k + 1)


def parity_cross_term(E: RealFunction, W: RealFunction, phi_even, phi_odd, alpha,
                      ctx: QContext) -> float:
    """``int_{-alpha}^{alpha} E W phi_odd phi_even d_q x``; zero for an odd integrand."""
    return jackson_integral_symmetric(
        lambda x: E(x) * W(x) * phi_odd(x) * phi_even(x), alpha, ctx).value
