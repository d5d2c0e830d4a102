"""
Weights from the q-Pearson ratio
================================

Each family's weight is fixed, up to a constant on every q-orbit, by the
ratio ``W(qx)/W(x)`` built from the coefficients ``A`` and ``B``. Here the
weight is synthesized from the ratio along ``alpha q**k`` and compared with
the closed form.
"""

from qsturm import QContext, make_family, pearson_residual, weight_from_ratio

for fid, p, q in [("cheb5q", None, 0.5), ("cheb6q", None, 0.8), ("qhermite", 0.25, 0.6)]:
    ctx = QContext(q)
    fam = make_family(fid, p, ctx)
    co = fam.coefficients
    synth = weight_from_ratio(co.A, co.B, fam.lattice(30), ctx)
    ratios = [fam.weight(synth.lattice.point(k)) / synth.values[k] for k in range(30)]
    spread = max(abs(r / ratios[0] - 1) for r in ratios)
    worst = max(pearson_residual(co.A, co.B, fam.weight, fam.alpha * q ** k, ctx).relative
                for k in range(1, 31))
    print(f"{fid:9s} q={q}: closed/synthesized spread {spread:.1e}, "
          f"ratio residual {worst:.1e}")

# the starred weight x^2 W is what enters the inner product; it is finite
# at the origin and even
fam = make_family("cheb5q", None, QContext(0.5))
print("W* at 0, 0.5, -0.5:", fam.starred_weight(0.0), fam.starred_weight(0.5),
      fam.starred_weight(-0.5))
