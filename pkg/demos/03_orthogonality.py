"""
Orthogonality on the q-lattice
==============================

The monic eigenpolynomials are built from the three-term recurrence, checked
against the difference equation, and integrated against the starred weight on
``+-alpha q**k``. A mismatched weight serves as a negative control.
"""

from qsturm import (
    QContext,
    make_family,
    monic_from_recurrence,
    monic_functions,
    recommended_precision,
    verify_orthogonality,
)

q, n_max = 0.8, 8
for fid, p in [("cheb5q", None), ("cheb6q", None), ("qhermite", 0.25)]:
    ctx = QContext(q, precision=recommended_precision(fid, q, p, n_max))
    fam = make_family(fid, p, ctx)
    worst = max(fam.residual(n, monic_from_recurrence(fam, n), fam.alpha * q ** k).relative
                for n in range(n_max + 1) for k in range(1, 21))
    rep = verify_orthogonality(fam.coefficients, fam.starred_weight,
                               monic_functions(fam, n_max), fam.alpha, ctx)
    print(f"{fid:9s} residual {worst:.1e}  off-diagonal {rep.max_offdiag_rel:.1e}  "
          f"{'PASS' if rep.passed else 'FAIL'}")

# negative control: family 2 polynomials against the family 1 weight
ctx = QContext(q)
one, two = make_family("cheb5q", None, ctx), make_family("cheb6q", None, ctx)
rep = verify_orthogonality(two.coefficients, one.starred_weight,
                           monic_functions(two, 6), 1.0, ctx)
print(f"mismatched weight off-diagonal {rep.max_offdiag_rel:.2f}  "
      f"{'PASS' if rep.passed else 'FAIL'}")

# at small q double precision is not enough; the recommended precision is
for q in (0.3, 0.5, 0.8):
    print(f"q={q}: recommended bits", recommended_precision("cheb5q", q, None, 10))
