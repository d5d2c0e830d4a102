"""
Reduction to discrete q-Hermite I
=================================

At ``p = 0`` the third family is a rescaled discrete q-Hermite I family in
base q: ``phi_n(x) = c_n h_n(x sqrt(1 - q**2); q)``. Its starred weight is the
q-Hermite weight ``(qy, -qy; q)_inf``.
"""

from qsturm import QContext, q_hermite_reduction_check, recommended_precision, \
    reduced_weight_comparison

for q in (0.3, 0.7):
    ctx = QContext(q, precision=recommended_precision("qhermite", q, 0.0, 10))
    worst = max(q_hermite_reduction_check(n, q, ctx).deviation for n in range(11))
    print(f"q={q}: largest polynomial misfit over n <= 10: {worst:.1e}")

rep = reduced_weight_comparison(QContext(0.6))
print(f"family weight ratio error       {rep.family_ratio_error:.1e}")
print(f"against (qy,-qy;q)_inf          {rep.hermite_weight_error:.1e}")
# the simpler form 1/((1-q^2) x^2; q^2)_inf is not a solution of the ratio
# equation, nor a constant multiple of the family weight
print(f"1/((1-q^2)x^2;q^2)_inf ratio error {rep.literal_ratio_error:.1e}, "
      f"spread {rep.scalar_spread:.1e}")
