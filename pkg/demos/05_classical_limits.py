"""
Classical limits
================

As q -> 1 the recurrence coefficients and starred weights approach their
classical counterparts. The approach is linear in ``1 - q`` with a constant
that grows with n, so the q-Hermite coefficients at degree 10 are still about
6e-3 away at ``q = 1 - 1e-4``.
"""

from qsturm import QContext, gamma, gamma_limit, make_family, weight_limit

for fid, p in [("cheb5q", None), ("cheb6q", None), ("qhermite", 0.0)]:
    print(fid)
    for eps in (1e-2, 1e-3, 1e-4):
        fam = make_family(fid, p, QContext(1 - eps, max_terms=10 ** 7))
        dg = max(abs(float(gamma(fam, n)) - gamma_limit(fam, n)) for n in range(1, 11))
        dw = abs(float(fam.starred_weight(0.5)) / weight_limit(fam, 0.5) - 1)
        print(f"  1-q={eps:.0e}: max |gamma_n - limit| (n<=10) {dg:.2e}, "
              f"W*(0.5) relative deviation {dw:.2e}")
