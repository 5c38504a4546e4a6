"""Dense exact polynomials and the Hahn operator calculus on them.

Coefficients are stored lowest degree first, trailing zeros stripped; the
zero polynomial stores nothing and reports ``degree() is None``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .qnum import HahnFrame, Scalar, ScalarLike, as_scalar, hahn_number, q_binomial, q_bracket


class Poly:
    """Immutable univariate polynomial over exact rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def constant(c: ScalarLike) -> "Poly":
        return Poly([c])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @staticmethod
    def monomial(n: int, c: ScalarLike = 1) -> "Poly":
        return Poly([0] * n + [c])

    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x: ScalarLike) -> Fraction:
        x = as_scalar(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        return self.scale(other)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def scale(self, c: ScalarLike) -> "Poly":
        c = as_scalar(c)
        return Poly([c * a for a in self.coeffs])

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Exact-field polynomial division; returns (quotient, remainder)."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree()
        lead = divisor.leading()
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - dd - 1, -1, -1):
            q = rem[i + dd] / lead
            quot[i] = q
            if q:
                for j, c in enumerate(divisor.coeffs):
                    rem[i + j] -= q * c
        return Poly(quot), Poly(rem[:dd] if dd else [])

    def compose_affine(self, alpha: ScalarLike, beta: ScalarLike) -> "Poly":
        """Substitute x -> alpha*x + beta (Horner over the linear image)."""
        sub = Poly([beta, alpha])
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * sub + Poly.constant(c)
        return out

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return "Poly(" + " + ".join(terms) + ")"


def op_L(f: Poly, frame: HahnFrame) -> Poly:
    """L f(x) = f(q x + omega)."""
    return f.compose_affine(frame.q, frame.omega)


def op_L_star(f: Poly, frame: HahnFrame) -> Poly:
    """L* f(x) = f((x - omega)/q); the inverse of op_L."""
    return f.compose_affine(1 / frame.q, -frame.omega / frame.q)


def op_D(f: Poly, frame: HahnFrame) -> Poly:
    """The divided difference (f(qx + omega) - f(x)) / ((q-1)x + omega).

    Computed by exact division; the remainder is asserted to vanish.
    """
    num = op_L(f, frame) - f
    quot, rem = num.divmod(Poly([frame.omega, frame.q - 1]))
    assert rem.is_zero(), "divided difference left a nonzero remainder"
    return quot


def op_D_monomial(f: Poly, frame: HahnFrame) -> Poly:
    """Same operator as op_D, via the expansion of its action on monomials.

    Kept as an independent route for cross-checking op_D.
    """
    out = Poly()
    for n, c in enumerate(f.coeffs):
        for k in range(n):
            out = out + Poly.monomial(n - 1 - k, c * hahn_number(n, k, frame.q, frame.omega))
    return out


def op_D_star(f: Poly, frame: HahnFrame) -> Poly:
    """The divided difference in the reciprocal frame (1/q, -omega/q)."""
    return op_D(f, frame.reciprocal())


def op_iter(op, f: Poly, frame: HahnFrame, n: int) -> Poly:
    for _ in range(n):
        f = op(f, frame)
    return f


@lru_cache(maxsize=None)
def y_basis(n: int, frame: HahnFrame) -> Poly:
    """The monic Newton-type basis Y_n = prod_{j=0}^{n-1} (x - omega [j]_q).

    The divided difference acts diagonally on it: D Y_n = [n]_q Y_{n-1}.
    """
    if n < 0:
        raise ValueError("y_basis needs n >= 0")
    if n == 0:
        return Poly([1])
    return y_basis(n - 1, frame) * Poly([-frame.omega * q_bracket(n - 1, frame.q), 1])


def to_y_basis(f: Poly, frame: HahnFrame) -> list[Fraction]:
    """Coefficients c with f = sum_k c_k Y_k, by monic back-substitution."""
    if f.is_zero():
        return []
    out = [Fraction(0)] * (f.degree() + 1)
    rem = f
    while not rem.is_zero():
        k = rem.degree()
        c = rem.leading()
        out[k] = c
        rem = rem - c * y_basis(k, frame)
        assert rem.is_zero() or rem.degree() < k
    return out


def from_y_basis(coeffs: Sequence[ScalarLike], frame: HahnFrame) -> Poly:
    out = Poly()
    for k, c in enumerate(coeffs):
        out = out + as_scalar(c) * y_basis(k, frame)
    return out


def leibniz_expand(f: Poly, g: Poly, frame: HahnFrame, n: int) -> Poly:
    """D^n(fg) written as sum_k qbinom(n,k) L^k(D^{n-k} f) * D^k g."""
    if n < 0:
        raise ValueError("leibniz_expand needs n >= 0")
    out = Poly()
    for k in range(n + 1):
        term = op_iter(op_L, op_iter(op_D, f, frame, n - k), frame, k) * op_iter(op_D, g, frame, k)
        out = out + q_binomial(n, k, frame.q) * term
    return out
