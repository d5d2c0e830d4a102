"""Dense real polynomials in the monomial basis, with exact q-derivatives."""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["PolynomialR"]


@dataclass(frozen=True)
class PolynomialR:
    """Coefficients ``coeffs[k]`` of ``x**k``.

    Instances are callable. ``q_derivative`` acts on coefficients with
    ``D_b x**k = [k]_b x**(k-1)``, which avoids the cancellation a difference
    stencil suffers near ``x = 0``.
    """

    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        if not c:
            c = (0.0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return 0

    @property
    def leading(self):
        return self.coeffs[self.degree]

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __len__(self):
        return len(self.coeffs)

    def parity_ok(self, n: int) -> bool:
        """True when every coefficient of parity opposite to ``n`` is exactly 0."""
        return all(c == 0 for k, c in enumerate(self.coeffs) if (k - n) % 2)

    def monic(self) -> "PolynomialR":
        lead = self.leading
        if lead == 0:
            raise ZeroDivisionError("zero polynomial has no monic form")
        d = self.degree
        out = [c / lead for c in self.coeffs[:d]]
        out.append(lead / lead)
        return PolynomialR(tuple(out))

    def q_derivative(self, base) -> "PolynomialR":
        """``D_base`` applied coefficientwise (valid for any base != 1)."""
        if len(self.coeffs) == 1:
            return PolynomialR((0 * self.coeffs[0],))
        out = []
        power = base
        for k in range(1, len(self.coeffs)):
            qk = (power - 1) / (base - 1)
            out.append(qk * self.coeffs[k])
            power *= base
        return PolynomialR(tuple(out))

    def shift(self, k: int = 1) -> "PolynomialR":
        """Multiply by ``x**k``."""
        zero = 0 * self.coeffs[0]
        return PolynomialR((zero,) * k + self.coeffs)

    def __sub__(self, other: "PolynomialR") -> "PolynomialR":
        n = max(len(self), len(other))
        a = self.coeffs + (0 * self.coeffs[0],) * (n - len(self))
        b = other.coeffs + (0 * other.coeffs[0],) * (n - len(other))
        return PolynomialR(tuple(x - y for x, y in zip(a, b)))

    def scale(self, c) -> "PolynomialR":
        return PolynomialR(tuple(c * x for x in self.coeffs))
