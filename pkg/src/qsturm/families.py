"""Three explicit families of symmetric q-orthogonal polynomials.

``CHEB5Q`` and ``CHEB6Q`` live on ``[-1, 1]`` and tend to the fifth- and
sixth-kind Chebyshev polynomials as ``q -> 1``; ``QHERMITE`` is a generalized
q-Hermite family with parameter ``p`` on ``[-alpha, alpha]``,
``alpha = 1/sqrt(1 - q**2)``, reducing to discrete q-Hermite I at ``p = 0``.

Every family is available through two independent routes: a terminating
``2phi1`` in base ``q**2`` and the monic three-term recurrence
``phi_{n+1} = x phi_n - gamma_n phi_{n-1}``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from . import pearson
from .pearson import Residual
from .polynomial import PolynomialR
from .qcalculus import GeometricLattice
from .qcore import (
    HypergeometricSpec,
    QContext,
    basic_hypergeometric,
    hypergeometric_terms,
    q_number,
    q_pochhammer,
    q_pochhammer_infinite,
)
from .sl_core import SLCoefficients, sigma

__all__ = [
    "Family",
    "FamilyDescriptor",
    "make_family",
    "gamma",
    "gamma_limit",
    "weight_limit",
    "monic_from_recurrence",
    "monic_values",
    "monic_functions",
    "recommended_precision",
    "hypergeometric_spec",
    "phi_hypergeometric",
    "hypergeometric_polynomial",
    "monic_normalize",
    "norm_square",
    "ReductionReport",
    "q_hermite_reduction_check",
    "discrete_q_hermite",
    "ReducedWeightReport",
    "reduced_weight_comparison",
]


class Family(enum.IntEnum):
    CHEB5Q = 1
    CHEB6Q = 2
    QHERMITE = 3

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            names = {"cheb5q": cls.CHEB5Q, "cheb6q": cls.CHEB6Q, "qhermite": cls.QHERMITE}
            if key in names:
                return names[key]
            if key.isdigit():
                return cls(int(key))
            raise ValueError(f"unknown family {value!r}")
        return cls(int(value))

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class FamilyDescriptor:
    """One family bound to a :class:`QContext` (and ``p`` for ``QHERMITE``)."""

    id: Family
    p: float | None
    ctx: QContext
    coefficients: SLCoefficients

    @property
    def alpha(self):
        return pearson.support_endpoint(int(self.id), self.ctx)

    def lam(self, n: int):
        """Eigenvalue multiplying ``C(x) = x**2``."""
        ctx, q = self.ctx, self.ctx.base
        if self.id == Family.CHEB5Q:
            return q_number(n, ctx) * (q * q_number(3, ctx) - q_number(1 - n, ctx))
        if self.id == Family.CHEB6Q:
            return q_number(n, ctx) * (q * q_number(5, ctx) - q_number(1 - n, ctx))
        return (1 + q) * q * q_number(-n, ctx)

    def weight(self, x):
        return pearson.closed_form_weight(int(self.id), x, self.p, self.ctx)

    def starred_weight(self, x):
        return pearson.starred_weight(int(self.id), x, self.p, self.ctx)

    def lattice(self, depth: int) -> GeometricLattice:
        return GeometricLattice(self.alpha, self.ctx.base, depth, signed=True)

    def residual(self, n: int, phi, x) -> Residual:
        from .sl_core import sl_residual
        return sl_residual(self.coefficients, self.lam(n), n, phi, x, self.ctx)


def _coefficients(fam: Family, p, ctx: QContext) -> SLCoefficients:
    q = ctx.base
    if fam in (Family.CHEB5Q, Family.CHEB6Q):
        k = q_number(3 if fam == Family.CHEB5Q else 5, ctx)
        e = -q * (1 + q)

        def A(x):
            return x * x * (1 - x * x)

        def B(x):
            return q * x * (-k * x * x + q + 1)
    else:
        pp = ctx.num(p)
        e = -(1 + q) * pp
        s = 1 - q * q

        def A(x):
            return x * x * (s * x * x - 1)

        def B(x):
            return (q + 1) * x * (x * x + pp)

    zero = ctx.num(0)
    return SLCoefficients(
        A=A, B=B, C=lambda x: x * x, D=lambda x: zero * x, E=lambda x: e + zero * x,
        A_vanishes_at_alpha=True,
    )


def qhermite_p_range(q: float) -> tuple[float, float]:
    """Open interval of ``p`` keeping every ``gamma_n`` positive:
    ``1 + p (1 - q**2) > 0`` and ``q (1 + p (1 - q**2)) < 1``."""
    return -1 / (1 - q * q), 1 / (q * (1 + q))


def make_family(id, p=None, ctx: QContext = None, n_check: int = 40) -> FamilyDescriptor:
    """Build a family descriptor; ``p`` is required for, and only for,
    ``QHERMITE``, and is rejected unless ``gamma_1 .. gamma_{n_check}`` are
    positive."""
    if ctx is None:
        raise ValueError("a QContext is required")
    fam = Family.parse(id)
    if fam == Family.QHERMITE:
        if p is None:
            raise ValueError("qhermite needs a value for p")
        lo, hi = qhermite_p_range(ctx.q)
        if not lo < p < hi:
            raise ValueError(f"p = {p!r} outside ({lo:.6g}, {hi:.6g}) for q = {ctx.q!r}")
    elif p is not None:
        raise ValueError(f"{fam.label} takes no parameter p")
    desc = FamilyDescriptor(fam, p, ctx, _coefficients(fam, p, ctx))
    for n in range(1, n_check + 1):
        if not gamma(desc, n) > 0:
            raise ValueError(f"gamma_{n} <= 0 for {fam.label} at q = {ctx.q!r}, p = {p!r}")
    return desc


def gamma(fam: FamilyDescriptor, n: int):
    """Recurrence coefficient ``gamma_n`` (``n >= 1``)."""
    if n < 1:
        raise ValueError("gamma_n is defined for n >= 1")
    q = fam.ctx.base
    if fam.id == Family.QHERMITE:
        r = 1 + fam.ctx.num(fam.p) * (1 - q * q)
        if n % 2 == 0:
            m = n // 2
            return r * q ** (2 * m - 1) * (q ** (2 * m) - 1) / (q * q - 1)
        m = (n - 1) // 2
        return (r * q ** (4 * m + 1) - q ** (2 * m)) / (q * q - 1)
    c = q ** 4 - q + 1 if fam.id == Family.CHEB5Q else q ** 6 - q + 1
    t = q ** 3 - q + 1
    if n % 2 == 0:
        m = n // 2
        num = q ** (2 * m + 1) * (q ** (2 * m) - 1) * (c * q ** (2 * m) - t * q * q)
        den = c * c * q ** (8 * m) - (q * q + 1) * c * q ** (4 * m + 1) + q ** 4
        return num / den
    m = (n - 1) // 2
    num = q ** (2 * m) * (t * q ** (2 * m + 1) - 1) * (c * q ** (2 * m) - q)
    den = c * c * q ** (8 * m + 1) - (q * q + 1) * c * q ** (4 * m) + q
    return num / den


def gamma_limit(fam: Family | FamilyDescriptor, n: int, p=None) -> float:
    """``lim_{q -> 1} gamma_n`` for the classical counterpart."""
    if isinstance(fam, FamilyDescriptor):
        fam, p = fam.id, fam.p
    fam = Family.parse(fam)
    s = n & 1
    if fam == Family.CHEB5Q:
        return ((4 * n + 2) * s + (n - 1) * n) / (4 * n * (n + 1))
    if fam == Family.CHEB6Q:
        return ((4 * n + 6) * s + n * (n + 1)) / (4 * (n + 1) * (n + 2))
    return 0.5 * (p * ((-1) ** n - 1) + n)


def weight_limit(fam: Family | FamilyDescriptor, x: float, p=None) -> float:
    """Classical starred weight: ``x**2/sqrt(1-x**2)``, ``x**2 sqrt(1-x**2)``
    or ``|x|**(-2p) exp(-x**2)``."""
    if isinstance(fam, FamilyDescriptor):
        fam, p = fam.id, fam.p
    fam = Family.parse(fam)
    x = float(x)
    if fam == Family.CHEB5Q:
        return x * x / math.sqrt(1 - x * x)
    if fam == Family.CHEB6Q:
        return x * x * math.sqrt(1 - x * x)
    return abs(x) ** (-2 * p) * math.exp(-x * x)


def monic_from_recurrence(fam: FamilyDescriptor, n: int) -> PolynomialR:
    """Coefficients of the monic ``phi_n`` from the three-term recurrence."""
    one = fam.ctx.num(1)
    zero = fam.ctx.num(0)
    prev = PolynomialR((one,))
    if n == 0:
        return prev
    cur = PolynomialR((zero, one))
    for k in range(1, n):
        nxt = cur.shift(1) - prev.scale(gamma(fam, k))
        prev, cur = cur, nxt
    return cur


def monic_values(fam: FamilyDescriptor, n_max: int, x, gammas=None) -> list:
    """``[phi_0(x), ..., phi_{n_max}(x)]`` by running the recurrence at ``x``.

    ``gammas[k]`` may supply precomputed ``gamma_k`` (index 0 unused).
    """
    if gammas is None:
        gammas = [None] + [gamma(fam, k) for k in range(1, max(n_max, 1))]
    x = fam.ctx.num(x)
    vals = [fam.ctx.num(1)]
    if n_max >= 1:
        vals.append(x)
    for k in range(1, n_max):
        vals.append(x * vals[k] - gammas[k] * vals[k - 1])
    return vals


def monic_functions(fam: FamilyDescriptor, n_max: int) -> list:
    """Callables ``phi_0 .. phi_{n_max}`` evaluated by the recurrence.

    They share one cache, so asking all of them at the same ``x`` runs the
    recurrence once.
    """
    gammas = [None] + [gamma(fam, k) for k in range(1, max(n_max, 1))]
    cache = {}

    def make(k):
        def phi(x):
            if x not in cache:
                if len(cache) > 4096:
                    cache.clear()
                cache[x] = monic_values(fam, n_max, x, gammas)
            return cache[x][k]
        return phi

    return [make(k) for k in range(n_max + 1)]


def recommended_precision(id, q: float, p=None, n_max: int = 12) -> int:
    """Bits needed to evaluate ``phi_0 .. phi_{n_max}`` on the lattice.

    On the lattice the monic polynomials are of size ``sqrt(prod gamma)``
    while their coefficients are of size ``alpha**n``; the ratio
    ``kappa = alpha**(2n) / prod gamma`` is lost to cancellation. Double
    precision is kept while ``kappa < 2**40``.
    """
    fam = make_family(id, p, QContext(q), n_check=max(n_max, 1))
    alpha2 = float(fam.alpha) ** 2
    worst, prod = 0.0, 1.0
    for n in range(1, n_max + 1):
        prod *= float(gamma(fam, n))
        worst = max(worst, n * math.log2(alpha2) - math.log2(prod))
    if worst < 40:
        return 53
    return 64 + int(math.ceil(worst))


def hypergeometric_spec(fam: FamilyDescriptor, n: int) -> tuple[HypergeometricSpec, object]:
    """``(spec, zscale)`` with ``phi_n(x) = x**sigma_n * 2phi1(spec; zscale x**2)``."""
    ctx = fam.ctx
    q = ctx.base
    s = sigma(n)
    base = q * q
    m = (n - s) // 2
    top = base ** (-m)  # = q**(s - n), built as an exact power of the base
    if fam.id == Family.QHERMITE:
        r = 1 + ctx.num(fam.p) * (1 - q * q)
        a2, b1, zs = ctx.num(0), q ** (2 * s + 1) * r, q * q * (1 - q * q)
    else:
        c = q ** 4 - q + 1 if fam.id == Family.CHEB5Q else q ** 6 - q + 1
        a2 = q ** (n + s - 1) * c
        b1 = q ** (2 * s + 1) * (q ** 3 - q + 1)
        zs = q * q
    return HypergeometricSpec((top, a2), (b1,), base), zs


def phi_hypergeometric(fam: FamilyDescriptor, n: int, x):
    """Non-monic ``phi_n(x)`` from its terminating ``2phi1`` form."""
    spec, zs = hypergeometric_spec(fam, n)
    x = fam.ctx.num(x)
    val = basic_hypergeometric(spec, zs * x * x, fam.ctx).value
    return x * val if sigma(n) else val


def hypergeometric_polynomial(fam: FamilyDescriptor, n: int) -> PolynomialR:
    """Monomial coefficients of the ``2phi1`` form of ``phi_n``."""
    spec, zs = hypergeometric_spec(fam, n)
    m = spec.termination_index(fam.ctx)
    terms = hypergeometric_terms(spec, zs, fam.ctx, m + 1)
    coeffs = [fam.ctx.num(0)] * (n + 1)
    for k, t in enumerate(terms):
        coeffs[2 * k + sigma(n)] = t
    return PolynomialR(tuple(coeffs))


def monic_normalize(poly: PolynomialR, fam: FamilyDescriptor | None = None, n: int | None = None) -> PolynomialR:
    """Divide by the leading coefficient; ``n``, when given, must be the degree."""
    if n is not None and (len(poly) < n + 1 or poly.coeffs[n] == 0
                          or any(c != 0 for c in poly.coeffs[n + 1:])):
        raise ValueError(f"polynomial is not of exact degree {n}")
    return poly.monic()


def norm_square(fam: FamilyDescriptor, n: int):
    """Published norm-square law ``d_n**2``: the Gram diagonal of the monic
    ``phi_n`` divided by the total mass ``int W* d_q x``."""
    q = fam.ctx.base
    P = q_pochhammer
    s = sigma(n)
    m = (n - s) // 2
    if fam.id == Family.QHERMITE:
        r = 1 + fam.ctx.num(fam.p) * (1 - q * q)
        tail = P(q * r, q * q, m + s)  # (-p q^3 + p q + q; q^2)
        expo = m * (2 * m - 1) if s == 0 else m * (2 * m + 1)
        return (q ** expo * r ** m / (1 - q * q) ** (2 * m + s)
                * P(-1, q, m + 1) * P(q, q, m) * tail / 2)
    t = q ** 3 - q + 1
    if fam.id == Family.CHEB5Q:
        c = q ** 4 - q + 1
        big = q ** 3 - 1 + 1 / q
        lead = ((q - 1) ** 2 * (q * q + q + 1) * (q ** 3 + q * q + q - 1)
                * t ** (m + 1) / (q ** 4 - q * q + 1))
        common = P(q * q, q * q, m) * P(c / (q ** 5 - q ** 3 + q * q), q * q, m + 1) \
            / P(q - 1 / q ** 2 + 1 / q ** 3, q ** 4, m + 1)
        if s == 0:
            return (lead * q ** (m * (2 * m - 1) - 2) * common
                    * P(big, q * q, m) * P(q * t, q * q, m)
                    / (P(q * c, q ** 4, m) * P(big, q ** 4, m) * P(big, q ** 4, m + 1)))
        return (lead * q ** (2 * m * m + m - 2) * common
                * P(big, q * q, m + 1) * P(q * t, q * q, m + 1)
                / (P(q * c, q ** 4, m + 1) * P(big, q ** 4, m + 1) ** 2))
    c = q ** 6 - q + 1
    big = q ** 5 - 1 + 1 / q
    q6 = q_number(6, fam.ctx)
    lead = ((1 - q) * (q ** 5 + q ** 4 + q ** 3 - 1) * (q6 - 2) * t ** (m + 1)
            * P(-1, q, m + 1) * P(q, q, m) * P(c / (q ** 5 - q ** 3 + q * q), q * q, m + 1)
            / (2 * (q ** 5 + q * q - 1) * P(c / q ** 3, q ** 4, m + 1)))
    if s == 0:
        return (lead * q ** (m * (2 * m - 1) - 2)
                * P(q * t, q * q, m) * P(big, q * q, m)
                / (P(q * c, q ** 4, m) * P(big, q ** 4, m) * P(big, q ** 4, m + 1)))
    return (lead * q ** (2 * m * m + m - 2)
            * P(q * t, q * q, m + 1) * P(big, q * q, m + 1)
            / (P(big, q ** 4, m + 1) ** 2 * P(q * c, q ** 4, m + 1)))


def discrete_q_hermite(n_max: int, y, base) -> list:
    """Discrete q-Hermite I values ``h_0(y) .. h_{n_max}(y)`` in base ``base``:
    ``y h_n = h_{n+1} + base**(n-1) (1 - base**n) h_{n-1}``."""
    vals = [1 + 0 * y]
    if n_max >= 1:
        vals.append(y)
    for k in range(1, n_max):
        vals.append(y * vals[k] - base ** (k - 1) * (1 - base ** k) * vals[k - 1])
    return vals


class ReductionReport(NamedTuple):
    n: int
    q: float
    c: float
    deviation: float
    samples: int


def q_hermite_reduction_check(n: int, q: float, ctx: QContext | None = None) -> ReductionReport:
    """Fit ``phi_n(x; 0; q) = c h_n(x sqrt(1 - q**2); q)`` on the points
    ``+-alpha q**k``, ``k < 10``.

    ``deviation`` is the largest misfit relative to ``max |phi_n|``.
    """
    ctx = QContext(q) if ctx is None else ctx.replace(q=q)
    fam = make_family(Family.QHERMITE, 0.0, ctx)
    base = ctx.base
    scale = ctx.sqrt(1 - base * base)
    xs = [s * fam.alpha * base ** k for k in range(10) for s in (1, -1)]
    phi = [phi_hypergeometric(fam, n, x) for x in xs]
    h = [discrete_q_hermite(n, x * scale, base)[n] for x in xs]
    hh = sum(v * v for v in h)
    if hh == 0 or all(v == 0 for v in phi):
        raise ValueError("degenerate fit: all samples vanish")
    c = sum(a * b for a, b in zip(phi, h)) / hh
    top = max(abs(v) for v in phi)
    dev = max(abs(a - c * b) for a, b in zip(phi, h)) / top
    return ReductionReport(n, q, float(c), float(dev), len(xs))


class ReducedWeightReport(NamedTuple):
    """How two candidate ``p = 0`` weights fare against the Pearson ratio.

    ``*_ratio_error`` is the largest relative mismatch between ``w(qx)/w(x)``
    and the Pearson ratio; ``scalar_spread`` is the relative spread of
    ``literal / family`` across the orbit (0 would mean proportional).
    """

    family_ratio_error: float
    literal_ratio_error: float
    scalar_spread: float
    hermite_weight_error: float


def reduced_weight_comparison(ctx: QContext, depth: int = 30) -> ReducedWeightReport:
    """Compare the ``p = 0`` closed-form weight with ``1/((1-q^2) x^2; q^2)_inf``.

    Also measures ``x**2 W(x; 0)`` against the discrete q-Hermite I weight
    ``(q y, -q y; q)_inf`` at ``y = x sqrt(1 - q**2)``. Orbit points start at
    ``alpha q`` because the literal form is singular at ``alpha``.
    """
    fam = make_family(Family.QHERMITE, 0.0, ctx)
    q = ctx.base
    s = 1 - q * q
    co = fam.coefficients

    def literal(x):
        return 1 / q_pochhammer_infinite(s * x * x, q * q, ctx).value

    fam_err = lit_err = herm_err = 0.0
    ratios = []
    for k in range(1, depth + 1):
        x = fam.alpha * q ** k
        target = pearson.pearson_ratio(co.A, co.B, x, ctx)
        fam_err = max(fam_err, float(abs(fam.weight(q * x) / fam.weight(x) / target - 1)))
        lit_err = max(lit_err, float(abs(literal(q * x) / literal(x) / target - 1)))
        ratios.append(literal(x) / fam.weight(x))
        y = x * ctx.sqrt(s)
        herm = (q_pochhammer_infinite(q * y, q, ctx).value
                * q_pochhammer_infinite(-q * y, q, ctx).value)
        herm_err = max(herm_err, float(abs(fam.starred_weight(x) / herm - 1)))
    mean = sum(ratios) / len(ratios)
    spread = math.sqrt(sum(float(r - mean) ** 2 for r in ratios) / len(ratios)) / abs(float(mean))
    return ReducedWeightReport(fam_err, lit_err, spread, herm_err)
