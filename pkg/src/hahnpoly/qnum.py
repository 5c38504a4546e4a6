"""Exact q-combinatorics over the rationals.

Everything here is computed with :class:`fractions.Fraction`, so all
identities downstream can be asserted with ``==`` instead of tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


class AdmissibilityError(ValueError):
    """A required d_n factor vanished; carries the offending index."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"admissibility failure: d_{index} = 0")


def as_scalar(x: ScalarLike) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed; pass Fraction, int, or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class HahnFrame:
    """The parameter pair (q, omega) of the divided-difference operator.

    Rejected frames: q = 0, q = -1 (the rational roots of unity other
    than 1), and the degenerate point q = 1, omega = 0 where the
    operator is undefined.
    """

    q: Fraction
    omega: Fraction

    def __post_init__(self):
        q = as_scalar(self.q)
        omega = as_scalar(self.omega)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "omega", omega)
        if q == 0:
            raise ValueError("q must be nonzero")
        if q == -1:
            raise ValueError("q = -1 is excluded (root of unity)")
        if q == 1 and omega == 0:
            raise ValueError("(q, omega) = (1, 0) is excluded: the operator is undefined")

    @property
    def omega0(self) -> Fraction:
        """omega / (1 - q); only defined away from q = 1."""
        if self.q == 1:
            raise ValueError("omega0 is undefined at q = 1")
        return self.omega / (1 - self.q)

    def reciprocal(self) -> "HahnFrame":
        """The frame (1/q, -omega/q) of the starred operators."""
        return HahnFrame(1 / self.q, -self.omega / self.q)


@dataclass(frozen=True)
class PearsonPair:
    """Coefficients of phi(x) = a x^2 + b x + c and psi(x) = d x + e."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not any((self.a, self.b, self.c, self.d, self.e)):
            raise ValueError("phi and psi cannot both be the zero polynomial")


def q_bracket(n: int, q: ScalarLike) -> Fraction:
    """[n]_q = (q^n - 1)/(q - 1), or n itself at q = 1.

    Negative n is allowed through the same rational formula (requires
    q != 0 there).
    """
    q = as_scalar(q)
    if q == 1:
        return Fraction(n)
    if n < 0 and q == 0:
        raise ValueError("q_bracket with n < 0 needs q != 0")
    return (q**n - 1) / (q - 1)


def q_factorial(n: int, q: ScalarLike) -> Fraction:
    """[n]_q! = [1]_q [2]_q ... [n]_q, with the empty product equal to 1."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    q = as_scalar(q)
    out = ONE
    for j in range(1, n + 1):
        out *= q_bracket(j, q)
    return out


def q_binomial(n: int, k: int, q: ScalarLike) -> Fraction:
    """The q-binomial [n]_q! / ([k]_q! [n-k]_q!), 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    q = as_scalar(q)
    return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))


def hahn_number(n: int, k: int, q: ScalarLike, omega: ScalarLike) -> Fraction:
    """The coefficient [n,k]_{q,omega} = omega^k * sum_{j=0}^{n-1-k} C(k+j,j) q^j.

    Zero whenever n <= k (empty sum); [n,0] reduces to [n]_q.
    """
    if n < 0 or k < 0:
        raise ValueError("hahn_number needs n, k >= 0")
    q = as_scalar(q)
    omega = as_scalar(omega)
    total = ZERO
    for j in range(n - k):
        total += math.comb(k + j, j) * q**j
    return omega**k * total


def d_n(pair: PearsonPair, frame: HahnFrame, n: int) -> Fraction:
    """d_n = d q^n + a [n]_q."""
    return pair.d * frame.q**n + pair.a * q_bracket(n, frame.q)


def e_n(pair: PearsonPair, frame: HahnFrame, n: int) -> Fraction:
    """e_n = e q^n + (omega d_n + b) [n]_q."""
    return pair.e * frame.q**n + (frame.omega * d_n(pair, frame, n) + pair.b) * q_bracket(n, frame.q)


def rodrigues_constant(pair: PearsonPair, frame: HahnFrame, n: int) -> Fraction:
    """k_n = q^{n(n-3)/2} * prod_{j=0}^{n-1} 1/d_{n+j-1}.

    Raises AdmissibilityError if any factor in the product vanishes.
    """
    if n < 0:
        raise ValueError("rodrigues_constant needs n >= 0")
    out = frame.q ** (n * (n - 3) // 2)
    for j in range(n):
        dj = d_n(pair, frame, n + j - 1)
        if dj == 0:
            raise AdmissibilityError(n + j - 1)
        out /= dj
    return out
