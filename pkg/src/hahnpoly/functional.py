"""Moment functionals as finite tables of Y-basis moments.

A functional u is represented by y[n] = <u, Y_n> for 0 <= n <= max_degree.
Every distributional operation computes the exact validity window of its
result; pairing beyond the window raises, it never silently returns zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .qnum import AdmissibilityError, HahnFrame, PearsonPair, ScalarLike, as_scalar, d_n, e_n, q_bracket
from .poly import Poly, op_D, op_D_star, op_L, op_L_star, to_y_basis, y_basis

DEFAULT_DEPTH = 24


class InsufficientMomentsError(ValueError):
    """Asked to pair against a degree beyond the valid moment table."""


@dataclass(frozen=True)
class MomentFunctional:
    frame: HahnFrame
    moments: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "moments", tuple(as_scalar(m) for m in self.moments))
        if not self.moments:
            raise ValueError("a moment table needs at least y_0")

    @property
    def max_degree(self) -> int:
        return len(self.moments) - 1

    def is_zero(self) -> bool:
        return not any(self.moments)

    def moment(self, n: int) -> Fraction:
        if n > self.max_degree:
            raise InsufficientMomentsError(
                f"moment y_{n} requested but table is valid only up to degree {self.max_degree}"
            )
        return self.moments[n]

    def truncate(self, max_degree: int) -> "MomentFunctional":
        if max_degree > self.max_degree:
            raise InsufficientMomentsError(
                f"cannot extend table of degree {self.max_degree} to {max_degree}"
            )
        return MomentFunctional(self.frame, self.moments[: max_degree + 1])

    def scale(self, c: ScalarLike) -> "MomentFunctional":
        c = as_scalar(c)
        return MomentFunctional(self.frame, tuple(c * m for m in self.moments))

    def __add__(self, other: "MomentFunctional") -> "MomentFunctional":
        if self.frame != other.frame:
            raise ValueError("cannot add functionals over different frames")
        n = min(self.max_degree, other.max_degree)
        return MomentFunctional(
            self.frame, tuple(self.moments[k] + other.moments[k] for k in range(n + 1))
        )

    def power_moments(self) -> list[Fraction]:
        """Derived view u_n = <u, x^n>, for n up to max_degree."""
        return [pair(self, Poly.monomial(n)) for n in range(self.max_degree + 1)]

    def agrees_with(self, other: "MomentFunctional") -> bool:
        """Entrywise equality on the shared valid range."""
        n = min(self.max_degree, other.max_degree)
        return self.moments[: n + 1] == other.moments[: n + 1]

    def to_json_dict(self) -> dict:
        return {
            "frame": {"q": str(self.frame.q), "omega": str(self.frame.omega)},
            "basis": "Y",
            "moments": [str(m) for m in self.moments],
            "maxDegree": self.max_degree,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(data: dict) -> "MomentFunctional":
        frame = HahnFrame(Fraction(data["frame"]["q"]), Fraction(data["frame"]["omega"]))
        return MomentFunctional(frame, tuple(Fraction(m) for m in data["moments"]))


def pair(u: MomentFunctional, f: Poly) -> Fraction:
    """<u, f> via the Y-basis expansion of f."""
    if f.is_zero():
        return Fraction(0)
    if f.degree() > u.max_degree:
        raise InsufficientMomentsError(
            f"pairing needs moments up to degree {f.degree()}, table stops at {u.max_degree}"
        )
    coeffs = to_y_basis(f, u.frame)
    return sum((c * u.moments[k] for k, c in enumerate(coeffs)), Fraction(0))


def solve_moments(
    pear: PearsonPair, frame: HahnFrame, y0: ScalarLike = 1, depth: int = DEFAULT_DEPTH
) -> MomentFunctional:
    """Moment table of the functional solving D(phi u) = psi u, <u, 1> = y0.

    Uses the equivalent three-term recurrence in the Y-basis moments,
    d_n y_{n+1} + (e_n + omega [n]_q d_{n-1}) y_n + [n]_q (c + omega e_{n-1}) y_{n-1} = 0,
    which is first order in y_{n+1} whenever all d_n are nonzero.
    """
    q, omega = frame.q, frame.omega
    y = [as_scalar(y0)]
    for n in range(depth):
        dn = d_n(pear, frame, n)
        if dn == 0:
            raise AdmissibilityError(n)
        acc = (e_n(pear, frame, n) + omega * q_bracket(n, q) * d_n(pear, frame, n - 1)) * y[n]
        if n >= 1:
            acc += q_bracket(n, q) * (pear.c + omega * e_n(pear, frame, n - 1)) * y[n - 1]
        y.append(-acc / dn)
    return MomentFunctional(frame, tuple(y))


def left_multiply(f: Poly, u: MomentFunctional) -> MomentFunctional:
    """The functional f*u, with <f u, g> = <u, f g>."""
    if f.is_zero():
        return MomentFunctional(u.frame, (Fraction(0),) * (u.max_degree + 1))
    top = u.max_degree - f.degree()
    if top < 0:
        raise InsufficientMomentsError(
            f"left_multiply by degree {f.degree()} exhausts a table of degree {u.max_degree}"
        )
    moments = tuple(pair(u, f * y_basis(n, u.frame)) for n in range(top + 1))
    return MomentFunctional(u.frame, moments)


@lru_cache(maxsize=None)
def _y_image_coeffs(op_name: str, frame: HahnFrame, n: int) -> tuple[Fraction, ...]:
    """Y-basis coefficients of op(Y_n); cached since dist_* reuse them heavily."""
    op = {"D": op_D, "D*": op_D_star, "L": op_L, "L*": op_L_star}[op_name]
    return tuple(to_y_basis(op(y_basis(n, frame), frame), frame))


def _dual_apply(u: MomentFunctional, op_name: str, factor: Fraction, extend: int) -> MomentFunctional:
    moments = []
    for n in range(u.max_degree + 1 + extend):
        coeffs = _y_image_coeffs(op_name, u.frame, n)
        moments.append(factor * sum((c * u.moments[k] for k, c in enumerate(coeffs)), Fraction(0)))
    return MomentFunctional(u.frame, tuple(moments))


def dist_D(u: MomentFunctional) -> MomentFunctional:
    """Distributional Hahn derivative: <D u, f> = -q^{-1} <u, D* f>.

    D* lowers degree by one, so the result is valid one index further.
    """
    return _dual_apply(u, "D*", -1 / u.frame.q, extend=1)


def dist_D_star(u: MomentFunctional) -> MomentFunctional:
    """The starred derivative, i.e. dist_D in the reciprocal frame.

    Unfolding the definition at (1/q, -omega/q) gives
    <D* u, f> = -q <u, D f>.
    """
    return _dual_apply(u, "D", -u.frame.q, extend=1)


def dist_L(u: MomentFunctional) -> MomentFunctional:
    """<L u, f> = q^{-1} <u, L* f>; degree-preserving."""
    return _dual_apply(u, "L*", 1 / u.frame.q, extend=0)


def dist_L_star(u: MomentFunctional) -> MomentFunctional:
    """Inverse of dist_L; unfolds to <L* u, f> = q <u, L f>."""
    return _dual_apply(u, "L", u.frame.q, extend=0)


def dist_iter(op, u: MomentFunctional, n: int) -> MomentFunctional:
    for _ in range(n):
        u = op(u)
    return u


def pearson_residual(pear: PearsonPair, u: MomentFunctional, depth: int) -> list[Fraction]:
    """Entry n is <D(phi u) - psi u, Y_n>, for 0 <= n <= depth."""
    phi = Poly([pear.c, pear.b, pear.a])
    psi = Poly([pear.e, pear.d])
    lhs = dist_D(left_multiply(phi, u))
    rhs = left_multiply(psi, u)
    if depth > min(lhs.max_degree, rhs.max_degree):
        raise InsufficientMomentsError(
            f"residual to depth {depth} needs a moment table of degree >= {depth + 2}"
        )
    return [lhs.moments[n] - rhs.moments[n] for n in range(depth + 1)]


def derived_functional(
    pear: PearsonPair, frame: HahnFrame, u: MomentFunctional, k: int
) -> MomentFunctional:
    """The k-th derived functional u^[k] = L(phi u^[k-1]), u^[0] = u."""
    if k < 0:
        raise ValueError("derived_functional needs k >= 0")
    phi = Poly([pear.c, pear.b, pear.a])
    out = u
    for _ in range(k):
        out = dist_L(left_multiply(phi, out))
    return out
