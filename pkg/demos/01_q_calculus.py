"""
q-calculus basics
=================

q-numbers, q-Pochhammer products, difference operators and Jackson
integrals, checked against values that are known in closed form.
"""

from qsturm import (
    QContext,
    jackson_integral,
    jackson_integral_symmetric,
    q_derivative,
    q_number,
    q_pochhammer_infinite,
    q_second_operator,
)

ctx = QContext(0.5)

# [n]_q tends to n as q -> 1; at q = 1/2 it is a partial geometric sum
print("[1..5]_q:", [q_number(n, ctx) for n in range(1, 6)])

# (q; q)_inf comes back with the number of factors used and a tail bound
prod = q_pochhammer_infinite(0.5, 0.5, ctx)
print(f"(q;q)_inf = {prod.value:.15f}  ({prod.terms} factors, tail <= {prod.error:.1e})")

# D_q x^3 = [3] x^2 and D_q D_{1/q} x^2 = q^{-1} [2] [1] = 3 at q = 1/2
print("D_q x^3 at x = 2:", q_derivative(lambda x: x ** 3, 2.0, ctx))
print("D_q D_1/q x^2   :", q_second_operator(lambda x: x * x, 0.8, ctx))

# Jackson integrals of monomials: int_0^1 t d_q t = 1/[2]
print("int_0^1 t d_q t :", jackson_integral(lambda t: t, 1.0, ctx).value, "vs", 1 / 1.5)
print("int_-1^1 t^2    :", jackson_integral_symmetric(lambda t: t * t, 1.0, ctx).value,
      "vs", 8 / 7)

# the same integral in 150-bit arithmetic
wide = QContext(0.5, precision=150)
print("extended        :", jackson_integral(lambda t: t * t, 1, wide).value)
