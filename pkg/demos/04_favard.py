"""
Recurrence coefficients and norms
=================================

For monic orthogonal polynomials ``phi_{n+1} = x phi_n - gamma_n phi_{n-1}``
the squared norms satisfy ``d_n^2 / d_0^2 = gamma_1 ... gamma_n``. Both the
closed-form norms and the lattice quadrature are compared with the product.
"""

from qsturm import (
    QContext,
    gamma,
    make_family,
    monic_functions,
    norm_square,
    recommended_precision,
    verify_orthogonality,
)

q, n_max = 0.5, 8
fam_id = "cheb6q"
ctx = QContext(q, precision=recommended_precision(fam_id, q, None, n_max))
fam = make_family(fam_id, None, ctx)
gram = verify_orthogonality(fam.coefficients, fam.starred_weight,
                            monic_functions(fam, n_max), fam.alpha, ctx).gram

prod = ctx.num(1)
print(" n   gamma_n          prod gamma   d_n^2 error  quadrature error")
for n in range(n_max + 1):
    g = gamma(fam, n) if n else None
    if n:
        prod *= g
    closed = norm_square(fam, n) / norm_square(fam, 0)
    quad = gram[n, n] / gram[0, 0]
    print(f"{n:2d}  {float(g) if g else 0:14.8e}  {float(prod):12.6e}  "
          f"{float(abs(closed / prod - 1)):9.1e}  {float(abs(quad / prod - 1)):9.1e}")
