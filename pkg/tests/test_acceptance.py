"""Acceptance suite: one test group per criterion, with a PASS/FAIL summary.

Each parametrized case records its outcome in ``RESULTS``; the summary hook in
``conftest.py`` prints one line per criterion after the run. Running this file
directly (``python tests/test_acceptance.py``) does the same through pytest.

Cases that involve polynomial values on the lattice (criteria 1, 2, 5, 7) run
at the precision returned by :func:`recommended_precision`, which is double
precision for the moderate and large ``q`` and extended precision for
``q = 0.3, 0.5``. Everything else runs in double precision.
"""
from __future__ import annotations

import functools
import math
import sys

import numpy as np
import pytest

from qsturm import (
    QContext,
    jackson_integral,
    jackson_integral_interval,
    jackson_integral_symmetric,
    pearson_ratio,
    q_derivative,
    verify_orthogonality,
    weight_from_ratio,
)
from qsturm.families import (
    Family,
    gamma,
    gamma_limit,
    hypergeometric_polynomial,
    make_family,
    monic_from_recurrence,
    monic_functions,
    monic_normalize,
    norm_square,
    q_hermite_reduction_check,
    recommended_precision,
    weight_limit,
)
from qsturm.polynomial import PolynomialR

Q_GRID = (0.3, 0.5, 0.8, 0.95)
FAMILY_CASES = ((Family.CHEB5Q, None), (Family.CHEB6Q, None),
                (Family.QHERMITE, 0.0), (Family.QHERMITE, 0.25))
GRID = [(fid, p, q) for fid, p in FAMILY_CASES for q in Q_GRID]
N_MAX = 10

TITLES = {
    1: "orthogonality, normalized off-diagonal < 1e-8, diagonal > 0",
    2: "eigen-residual < 1e-9 at 50 lattice points",
    3: "hypergeometric vs recurrence coefficients < 1e-10",
    4: "Pearson ratio < 1e-12, synthesized/closed spread < 1e-9",
    5: "Favard: d^2 ratio and quadrature norm vs prod gamma < 1e-9",
    6: "classical limits at q = 1 - 1e-4",
    7: "q-Hermite reduction deviation < 1e-9",
    8: "q-calculus kernel identities",
}
RESULTS: dict[int, list] = {k: [] for k in TITLES}


def record(criterion: int, label: str, ok: bool, worst: float) -> None:
    RESULTS[criterion].append((label, bool(ok), float(worst)))


def summary_lines() -> list[str]:
    lines = []
    for k, title in TITLES.items():
        rows = RESULTS[k]
        if not rows:
            lines.append(f"criterion {k} [{title}]: NOT RUN")
            continue
        bad = [label for label, ok, _ in rows if not ok]
        worst = max(w for _, _, w in rows)
        status = "PASS" if not bad else "FAIL"
        line = f"criterion {k} [{title}]: {status} ({len(rows) - len(bad)}/{len(rows)} cases, worst {worst:.2e})"
        if bad:
            line += " failing: " + ", ".join(bad)
        lines.append(line)
    return lines


def case_id(case):
    fid, p, q = case
    return f"{fid.label}-q{q}" + ("" if p is None else f"-p{p}")


@functools.lru_cache(maxsize=None)
def setup(fid, p, q, n_max=12):
    ctx = QContext(q, precision=recommended_precision(fid, q, p, n_max))
    return ctx, make_family(fid, p, ctx)


@functools.lru_cache(maxsize=None)
def gram_report(fid, p, q):
    ctx, fam = setup(fid, p, q)
    return verify_orthogonality(fam.coefficients, fam.starred_weight,
                                monic_functions(fam, N_MAX), fam.alpha, ctx)


def rel(a, b) -> float:
    return float(abs(a / b - 1))


# ---------------------------------------------------------------- criterion 1

@pytest.mark.parametrize("case", GRID, ids=case_id)
def test_criterion_1_orthogonality(case):
    rep = gram_report(*case)
    ok = rep.diagonal_positive and rep.max_offdiag_rel < 1e-8
    record(1, case_id(case), ok, rep.max_offdiag_rel)
    assert rep.diagonal_positive
    assert rep.max_offdiag_rel < 1e-8


# ---------------------------------------------------------------- criterion 2

@pytest.mark.parametrize("case", GRID, ids=case_id)
def test_criterion_2_eigen_residual(case):
    ctx, fam = setup(*case)
    lattice = fam.lattice(51)
    worst = 0.0
    for n in range(N_MAX + 1):
        poly = monic_from_recurrence(fam, n)
        for k in range(1, 51):
            worst = max(worst, fam.residual(n, poly, lattice.point(k)).relative)
    record(2, case_id(case), worst < 1e-9, worst)
    assert worst < 1e-9


# ---------------------------------------------------------------- criterion 3

def coefficient_mismatch(a: PolynomialR, b: PolynomialR) -> float:
    assert a.degree == b.degree
    top = max(abs(float(c)) for c in b.coeffs)
    worst = 0.0
    for x, y in zip(a.coeffs, b.coeffs):
        if y == 0:
            worst = max(worst, abs(float(x)) / top)
        else:
            worst = max(worst, rel(x, y))
    return worst


@pytest.mark.parametrize("case", GRID, ids=case_id)
def test_criterion_3_representation_equivalence(case):
    fid, p, q = case
    fam = make_family(fid, p, QContext(q))
    worst = 0.0
    for n in range(13):
        hyper = monic_normalize(hypergeometric_polynomial(fam, n))
        worst = max(worst, coefficient_mismatch(hyper, monic_from_recurrence(fam, n)))
    record(3, case_id(case), worst < 1e-10, worst)
    assert worst < 1e-10


# ---------------------------------------------------------------- criterion 4

@pytest.mark.parametrize("case", GRID, ids=case_id)
def test_criterion_4_pearson(case):
    fid, p, q = case
    ctx = QContext(q)
    fam = make_family(fid, p, ctx)
    co = fam.coefficients
    lattice = fam.lattice(31)
    ratio_err = 0.0
    for sign in (1, -1):
        for k in range(30):
            x = lattice.point(k, sign)
            target = pearson_ratio(co.A, co.B, x, ctx)
            ratio_err = max(ratio_err, rel(fam.weight(q * x) / fam.weight(x), target))
    synth = weight_from_ratio(co.A, co.B, fam.lattice(30), ctx)
    spread = 0.0
    for sign in (1, -1):
        r = np.array([float(fam.weight(synth.lattice.point(k, sign)) / synth.values[k])
                      for k in range(30)])
        spread = max(spread, float(r.std() / abs(r.mean())))
    ok = ratio_err < 1e-12 and spread < 1e-9
    record(4, case_id(case), ok, max(ratio_err, spread))
    assert ratio_err < 1e-12
    assert spread < 1e-9


# ---------------------------------------------------------------- criterion 5

@pytest.mark.parametrize("case", GRID, ids=case_id)
def test_criterion_5_favard(case):
    ctx, fam = setup(*case)
    g = gram_report(*case).gram
    d0 = norm_square(fam, 0)
    prod = ctx.num(1)
    d_err = quad_err = 0.0
    for n in range(1, N_MAX + 1):
        prod *= gamma(fam, n)
        d_err = max(d_err, rel(norm_square(fam, n) / d0, prod))
        quad_err = max(quad_err, rel(g[n, n] / g[0, 0], prod))
    worst = max(d_err, quad_err)
    record(5, case_id(case), worst < 1e-9, worst)
    assert d_err < 1e-9
    assert quad_err < 1e-9


# ---------------------------------------------------------------- criterion 6

LIMIT_Q = 1 - 1e-4
LIMIT_XS = (0.1, 0.3, 0.5, 0.7, 0.9)


def limit_id(case):
    fid, p = case
    return fid.label + ("" if p is None else f"-p{p}")


@pytest.mark.parametrize("case", FAMILY_CASES, ids=limit_id)
def test_criterion_6_gamma_limits(case):
    fid, p = case
    fam = make_family(fid, p, QContext(LIMIT_Q))
    devs = {n: abs(float(gamma(fam, n)) - gamma_limit(fam, n)) for n in range(1, N_MAX + 1)}
    worst = max(devs.values())
    record(6, "gamma-" + limit_id(case), worst < 1e-3, worst)
    bad = {n: f"{d:.2e}" for n, d in devs.items() if not d < 1e-3}
    assert not bad, f"|gamma_n - limit| >= 1e-3 at n = {bad}"


@pytest.mark.parametrize("case", FAMILY_CASES, ids=limit_id)
def test_criterion_6_weight_limits(case):
    fid, p = case
    fam = make_family(fid, p, QContext(LIMIT_Q, max_terms=10 ** 6))
    worst = max(rel(fam.starred_weight(x), weight_limit(fam, x)) for x in LIMIT_XS)
    record(6, "weight-" + limit_id(case), worst < 1e-2, worst)
    assert worst < 1e-2


# ---------------------------------------------------------------- criterion 7

@pytest.mark.parametrize("q", (0.3, 0.7))
def test_criterion_7_q_hermite_reduction(q):
    ctx = QContext(q, precision=recommended_precision(Family.QHERMITE, q, 0.0, 8))
    worst = max(q_hermite_reduction_check(n, q, ctx).deviation for n in range(9))
    record(7, f"q{q}", worst < 1e-9, worst)
    assert worst < 1e-9


# ---------------------------------------------------------------- criterion 8

_rng = np.random.default_rng(20240611)
KERNEL_POLYS = [PolynomialR(tuple(_rng.uniform(-2, 2, size=d + 1))) for d in (0, 1, 2, 3, 4, 4)]


def magnitude(poly: PolynomialR, x) -> float:
    return sum(abs(c) * abs(x) ** k for k, c in enumerate(poly.coeffs))


@pytest.mark.parametrize("q", (0.3, 0.7))
def test_criterion_8_fundamental_theorem(q):
    ctx = QContext(q)
    worst = 0.0
    for f in KERNEL_POLYS:
        F = lambda x, f=f: jackson_integral(f, x, ctx).value  # noqa: E731
        for k in range(20):
            x = q ** k
            worst = max(worst, abs(q_derivative(F, x, ctx) - f(x)) / magnitude(f, x))
        df = lambda t, f=f: q_derivative(f, t, ctx)  # noqa: E731
        for a, b in ((0.5, 1.0), (0.2, 0.9), (1.0, 0.3)):
            got = jackson_integral_interval(df, a, b, ctx).value
            worst = max(worst, abs(got - (f(b) - f(a))) / max(magnitude(f, a), magnitude(f, b)))
    record(8, f"ftc-q{q}", worst < 1e-10, worst)
    assert worst < 1e-10


@pytest.mark.parametrize("q", (0.3, 0.7))
@pytest.mark.parametrize("a", (0.5, 1.0))
def test_criterion_8_integration_by_parts(q, a):
    ctx = QContext(q)
    worst = 0.0
    for f in KERNEL_POLYS:
        for g in KERNEL_POLYS:
            lhs = jackson_integral(lambda x: g(x) * q_derivative(f, x, ctx), a, ctx).value
            other = jackson_integral(lambda x: q_derivative(g, x, ctx) * f(q * x), a, ctx).value
            boundary = f(a) * g(a) - f(0.0) * g(0.0)
            scale = max(abs(lhs), abs(other), abs(f(a) * g(a)), abs(f(0.0) * g(0.0)),
                        magnitude(f, a) * magnitude(g, a))
            worst = max(worst, abs(lhs - (boundary - other)) / scale)
    record(8, f"parts-q{q}-a{a}", worst < 1e-10, worst)
    assert worst < 1e-10


ODD_FIXTURES = [
    lambda t: t ** 3 - 2 * t,
    lambda t: math.sin(3 * t),
    lambda t: t * math.exp(-t * t),
    lambda t: t ** 5 / (1 + t * t),
]


@pytest.mark.parametrize("q", (0.3, 0.7, 0.95))
def test_criterion_8_odd_symmetric(q):
    ctx = QContext(q)
    worst = 0.0
    for f in ODD_FIXTURES:
        for b in (0.5, 1.0, 2.0):
            value = jackson_integral_symmetric(f, b, ctx).value
            scale = jackson_integral_symmetric(lambda t: abs(f(t)), b, ctx).value
            worst = max(worst, abs(value) / scale)
    record(8, f"odd-q{q}", worst < 1e-14, worst)
    assert worst < 1e-14


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
