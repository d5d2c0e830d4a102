import pytest

from qsturm import (
    ConvergenceError,
    PolynomialR,
    QContext,
    SLCoefficients,
    jackson_integral_symmetric,
    make_family,
    monic_from_recurrence,
    monic_functions,
    parity_cross_term,
    recommended_precision,
    self_adjoint_residual,
    sigma,
    sl_residual,
    verify_orthogonality,
    weight_from_ratio,
)

SAMPLES = [0.9 * 0.8 ** k for k in range(20)]


def test_sigma():
    assert [sigma(n) for n in range(5)] == [0, 1, 0, 1, 0]
    assert all(sigma(n) == (1 - (-1) ** n) // 2 for n in range(30))
    with pytest.raises(ValueError):
        sigma(-1)


class TestCoefficients:
    @pytest.mark.parametrize("fid,p", [(1, None), (2, None), (3, 0.25)])
    def test_family_parities(self, fid, p):
        make_family(fid, p, QContext(0.5)).coefficients.check(SAMPLES)

    def test_rejects_wrong_parity(self):
        one = lambda x: 1.0  # noqa: E731
        odd = lambda x: x  # noqa: E731
        with pytest.raises(ValueError, match="A is not even"):
            SLCoefficients(odd, odd, one, one, one).check(SAMPLES)
        with pytest.raises(ValueError, match="B is not odd"):
            SLCoefficients(one, one, one, one, one).check(SAMPLES)
        with pytest.raises(ValueError, match="C is not positive"):
            SLCoefficients(one, odd, lambda x: -1.0, one, one).check(SAMPLES)


class TestResidual:
    ctx = QContext(0.5)

    def test_constant_eigenfunction(self):
        fam = make_family(1, None, self.ctx)
        assert fam.lam(0) == 0
        for x in SAMPLES:
            assert sl_residual(fam.coefficients, 0.0, 0, lambda t: 1.0, x, self.ctx).value == 0

    def test_linear_eigenfunction(self):
        q = 0.5
        fam = make_family(1, None, self.ctx)
        assert fam.lam(1) == pytest.approx(q * (q * q + q + 1), rel=1e-15)
        for x in SAMPLES:
            r = sl_residual(fam.coefficients, fam.lam(1), 1, PolynomialR((0.0, 1.0)), x, self.ctx)
            assert r.relative < 1e-14

    def test_shifted_eigenvalue_detected(self):
        fam = make_family(1, None, self.ctx)
        phi = monic_from_recurrence(fam, 2)
        for x in SAMPLES[:5]:
            assert fam.residual(2, phi, x).relative < 1e-13
            assert sl_residual(fam.coefficients, fam.lam(2) + 1, 2, phi, x, self.ctx).relative > 1e-3

    def test_wrong_parity_term_detected(self):
        # using sigma of the wrong parity leaves the E term uncancelled
        fam = make_family(2, None, self.ctx)
        phi = monic_from_recurrence(fam, 3)
        x = SAMPLES[2]
        assert sl_residual(fam.coefficients, fam.lam(3), 3, phi, x, self.ctx).relative < 1e-13
        assert sl_residual(fam.coefficients, fam.lam(3), 2, phi, x, self.ctx).relative > 1e-3

    @pytest.mark.parametrize("fid,p", [(1, None), (2, None), (3, 0.0), (3, 0.25)])
    def test_stencil_path_agrees(self, fid, p):
        ctx = QContext(0.8)
        fam = make_family(fid, p, ctx)
        for n in range(6):
            poly = monic_from_recurrence(fam, n)
            for k in range(1, 8):
                x = fam.alpha * 0.8 ** k
                exact = fam.residual(n, poly, x)
                stencil = fam.residual(n, lambda t: poly(t), x)
                assert exact.relative < 1e-12
                assert stencil.relative < 1e-8

    def test_zero_rejected_by_stencil(self):
        fam = make_family(1, None, self.ctx)
        with pytest.raises(ZeroDivisionError):
            fam.residual(1, lambda t: t, 0.0)


class TestSelfAdjoint:
    def setup_weight(self, fid, q=0.5, depth=25):
        ctx = QContext(q)
        fam = make_family(fid, None, ctx)
        co = fam.coefficients
        return ctx, fam, weight_from_ratio(co.A, co.B, fam.lattice(depth), ctx)

    def test_constant(self):
        ctx, fam, W = self.setup_weight(1)
        for k in range(1, 20):
            x = W.lattice.point(k)
            r = self_adjoint_residual(fam.coefficients, W, 0.0, 0, PolynomialR((1.0,)), x, ctx)
            assert r.value == 0

    def test_family_2_low_degrees(self):
        ctx, fam, W = self.setup_weight(2)
        for n in range(5):
            poly = monic_from_recurrence(fam, n)
            for k in range(20):
                for sign in (1, -1):
                    x = W.lattice.point(k, sign)
                    r = self_adjoint_residual(fam.coefficients, W, fam.lam(n), n, poly, x, ctx)
                    assert r.relative < 1e-12

    def test_callable_path(self):
        ctx, fam, W = self.setup_weight(1, q=0.8)
        poly = monic_from_recurrence(fam, 3)
        for k in range(1, 10):
            x = W.lattice.point(k)
            r = self_adjoint_residual(fam.coefficients, W, fam.lam(3), 3, lambda t: poly(t), x, ctx)
            assert r.relative < 1e-9

    def test_corrupted_weight(self):
        ctx, fam, W = self.setup_weight(2)
        bad = W.with_value(6, W.values[6] * 1.01)
        poly = monic_from_recurrence(fam, 2)
        for k in (5, 6):
            x = W.lattice.point(k)
            assert self_adjoint_residual(fam.coefficients, bad, fam.lam(2), 2, poly, x, ctx).relative > 1e-4


class TestOrthogonality:
    def test_family_1(self):
        q, N = 0.5, 8
        ctx = QContext(q, precision=recommended_precision(1, q, None, N))
        fam = make_family(1, None, ctx)
        rep = verify_orthogonality(fam.coefficients, fam.starred_weight,
                                   monic_functions(fam, N), fam.alpha, ctx)
        assert rep.passed and rep.max_offdiag_rel < 1e-8
        assert rep.boundary_values == (0.0, 0.0)
        g = rep.gram
        for i in range(N + 1):
            for j in range(N + 1):
                assert abs(g[i, j] - g[j, i]) <= 1e-30 * abs(g[i, i])

    def test_odd_pair_exact(self):
        ctx = QContext(0.7)
        fam = make_family(2, None, ctx)
        rep = verify_orthogonality(fam.coefficients, fam.starred_weight,
                                   [lambda x: 1.0, lambda x: x], fam.alpha, ctx)
        assert rep.gram[0, 1] == 0 and rep.gram[1, 0] == 0
        assert rep.diagonal_positive

    def test_mismatched_weight_fails(self):
        ctx = QContext(0.8)
        one, two = make_family(1, None, ctx), make_family(2, None, ctx)
        rep = verify_orthogonality(two.coefficients, one.starred_weight,
                                   monic_functions(two, 6), 1.0, ctx)
        assert rep.max_offdiag_rel > 1e-3
        assert not rep.passed

    def test_double_precision_loses_small_q(self):
        # at q = 0.3 the lattice values are differences of much larger terms;
        # double precision cannot resolve the Gram matrix at n = 10
        ctx = QContext(0.3)
        fam = make_family(1, None, ctx)
        rep = verify_orthogonality(fam.coefficients, fam.starred_weight,
                                   monic_functions(fam, 10), fam.alpha, ctx)
        assert rep.max_offdiag_rel > 1e-8

    def test_boundary_values_computed(self):
        ctx = QContext(0.5)
        fam = make_family(1, None, ctx)
        generic = SLCoefficients(fam.coefficients.A, fam.coefficients.B, fam.coefficients.C,
                                 fam.coefficients.D, fam.coefficients.E)
        rep = verify_orthogonality(generic, fam.starred_weight, [lambda x: 1.0], 1.0, ctx)
        assert rep.boundary_values == (0.0, 0.0)

    def test_node_cap(self):
        ctx = QContext(0.9, max_terms=50)
        fam = make_family(1, None, ctx)
        with pytest.raises(ConvergenceError):
            verify_orthogonality(fam.coefficients, fam.starred_weight, [lambda x: 1.0], 1.0, ctx)


class TestParityCrossTerm:
    def test_vanishes_family_1(self):
        ctx = QContext(0.6)
        fam = make_family(1, None, ctx)
        even, odd = monic_from_recurrence(fam, 2), monic_from_recurrence(fam, 1)
        E = fam.coefficients.E
        value = parity_cross_term(E, fam.weight, even, odd, fam.alpha, ctx)
        scale = jackson_integral_symmetric(
            lambda x: abs(E(x) * fam.weight(x) * even(x) * odd(x)), fam.alpha, ctx).value
        assert scale > 0
        assert abs(value) <= 1e-12 * scale

    def test_vanishes_family_3(self):
        # the raw weight behaves like |x|**(-2 - 2p), so only the mirror-paired
        # sum converges; it cancels term by term
        ctx = QContext(0.6)
        fam = make_family(3, 0.25, ctx)
        even, odd = monic_from_recurrence(fam, 0), monic_from_recurrence(fam, 3)
        assert parity_cross_term(fam.coefficients.E, fam.weight, even, odd, fam.alpha, ctx) == 0

    def test_even_even_prefactor(self):
        # F(2i, 2j) enters with ((-1)^m - (-1)^n)/2 = 0
        for m, n in [(0, 2), (2, 4), (1, 3)]:
            assert ((-1) ** m - (-1) ** n) / 2 == 0
