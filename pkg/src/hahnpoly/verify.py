"""Exact verification suites: operator identities, Gram orthogonality,
Rodrigues, and the derivative-sequence norm laws.

Every check is an exact equality over the rationals; a suite returns a
list of Check records, one per identity, with the failure detail when an
equality breaks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .qnum import HahnFrame, PearsonPair, d_n, e_n, q_binomial, q_bracket
from .poly import (
    Poly,
    leibniz_expand,
    op_D,
    op_D_monomial,
    op_D_star,
    op_iter,
    op_L,
    op_L_star,
    to_y_basis,
    y_basis,
)
from .functional import (
    MomentFunctional,
    derived_functional,
    dist_D,
    dist_D_star,
    dist_iter,
    dist_L,
    dist_L_star,
    left_multiply,
    pair,
    pearson_residual,
    solve_moments,
)
from . import classical
from .classical import (
    Preset,
    RecurrenceTable,
    check_regular,
    derivative_sequence,
    gram_matrix,
    phi_poly,
    psi_poly,
    psi_k,
    psi_k_recursive,
    r_polynomial,
    recurrence,
    theta2,
    theta2_definitional,
)
from .rodrigues import moment_depth_for, rodrigues_rhs, verify_rodrigues

# frames used by the randomized identity suite; excluded points are
# filtered at construction time
FRAME_Q_VALUES = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 5), Fraction(-2)]
FRAME_OMEGA_VALUES = [Fraction(0), Fraction(1), Fraction(-1, 3)]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def default_frames() -> list[HahnFrame]:
    frames = []
    for q in FRAME_Q_VALUES:
        for omega in FRAME_OMEGA_VALUES:
            if q == 1 and omega == 0:
                continue
            frames.append(HahnFrame(q, omega))
    return frames


def random_poly(rng: random.Random, max_degree: int) -> Poly:
    deg = rng.randint(0, max_degree)
    coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(deg)]
    coeffs.append(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
    return Poly(coeffs)


def random_functional(rng: random.Random, frame: HahnFrame, depth: int) -> MomentFunctional:
    return MomentFunctional(
        frame,
        tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(depth + 1)),
    )


def _all(checks: Iterable[Check]) -> bool:
    return all(c.passed for c in checks)


def identities_suite(
    frames: Optional[list[HahnFrame]] = None,
    cases: int = 200,
    seed: int = 20240817,
) -> list[Check]:
    """Randomized exact checks of the operator calculus.

    Covers the inverse pair L/L*, iterated-L substitution, the three
    commutation laws, the product rules, both Leibniz formulas, the
    monomial expansion of the divided difference, and the functional
    identities L*L = I, D*L = qD on random moment tables.
    """
    rng = random.Random(seed)
    frames = frames or default_frames()
    fails: dict[str, str] = {}
    counts: dict[str, int] = {}

    def record(name: str, ok: bool, detail: str):
        counts[name] = counts.get(name, 0) + 1
        if not ok and name not in fails:
            fails[name] = detail

    for case in range(cases):
        fr = frames[case % len(frames)]
        q = fr.q
        f = random_poly(rng, 10)
        g = random_poly(rng, 6)
        detail = f"case {case}: frame q={fr.q}, omega={fr.omega}"

        record("P2_L_star_L_identity", op_L_star(op_L(f, fr), fr) == f
               and op_L(op_L_star(f, fr), fr) == f, detail)
        n = rng.randint(0, 8)
        record("P1_iterated_L_substitution",
               op_iter(op_L, f, fr, n)
               == f.compose_affine(q**n, fr.omega * q_bracket(n, q)), detail)
        m = rng.randint(1, 4)
        inv = fr.reciprocal()
        record("P1_negative_powers",
               op_iter(op_L_star, f, fr, m)
               == f.compose_affine(q**-m, fr.omega * q_bracket(-m, q)), detail)
        record("P3_D_star_D_commutation",
               op_D_star(op_D(f, fr), fr) == op_D(op_D_star(f, fr), fr).scale(q), detail)
        record("P3_D_L_star_commutation",
               op_D(op_L_star(f, fr), fr) == op_L_star(op_D(f, fr), fr).scale(1 / q), detail)
        record("P3_D_L_commutation",
               op_D(op_L(f, fr), fr) == op_L(op_D(f, fr), fr).scale(q), detail)
        record("P4_D_star_L", op_D_star(op_L(f, fr), fr) == op_D(f, fr).scale(q), detail)
        record("P4a_L_multiplicative",
               op_L(f * g, fr) == op_L(f, fr) * op_L(g, fr), detail)
        record("P5_product_rule",
               op_D(f * g, fr) == op_D(f, fr) * op_L(g, fr) + f * op_D(g, fr), detail)
        k = rng.randint(0, 4)
        record("leibniz_polynomial",
               leibniz_expand(f, g, fr, k) == op_iter(op_D, f * g, fr, k), detail)
        record("D_division_vs_monomial", op_D(f, fr) == op_D_monomial(f, fr), detail)
        nb = rng.randint(0, 12)
        record("D_y_basis_diagonal",
               op_D(y_basis(nb, fr), fr)
               == (Poly() if nb == 0 else y_basis(nb - 1, fr).scale(q_bracket(nb, q))), detail)

        u = random_functional(rng, fr, 10)
        h = random_poly(rng, 3)
        record("P2_functional_L_star_L",
               dist_L_star(dist_L(u)).agrees_with(u) and dist_L(dist_L_star(u)).agrees_with(u),
               detail)
        record("P4_functional_D_star_L",
               dist_D_star(dist_L(u)).agrees_with(dist_D(u).scale(q)), detail)
        record("P4a_functional_L_of_fu",
               dist_L(left_multiply(h, u)).agrees_with(
                   left_multiply(op_L(h, fr), dist_L(u))), detail)
        du = dist_D(u)
        dfu = dist_D(left_multiply(h, u))
        record("P6_functional_product_rule",
               dfu.agrees_with(left_multiply(op_D(h, fr), dist_L(u)) + left_multiply(h, du))
               and dfu.agrees_with(left_multiply(op_D(h, fr), u) + left_multiply(op_L(h, fr), du)),
               detail)
        nl = rng.randint(0, 3)
        lhs = dist_iter(dist_D, left_multiply(h, u), nl)
        rhs = None
        for j in range(nl + 1):
            term = left_multiply(
                op_iter(op_L, op_iter(op_D, h, fr, nl - j), fr, j),
                dist_iter(dist_D, u, j),
            ).scale(q_binomial(nl, j, q))
            rhs = term if rhs is None else rhs + term
        record("leibniz_functional",
               all(lhs.moments[mm] == rhs.moments[mm]
                   for mm in range(min(7, lhs.max_degree, rhs.max_degree) + 1)), detail)

    return [Check(name, name not in fails, fails.get(name, "")) for name in counts]


def gram_suite(
    pear: PearsonPair,
    frame: HahnFrame,
    depth: int = 10,
    y0: Fraction = Fraction(1),
    fuzz_moment: Optional[int] = None,
    residual_depth: int = 20,
) -> list[Check]:
    """Moment/Pearson equivalence plus the Favard-direction Gram oracle."""
    checks = []
    table_depth = max(2 * depth, residual_depth + 2, 22)
    u = solve_moments(pear, frame, y0, table_depth)
    if fuzz_moment is not None:
        moments = list(u.moments)
        moments[fuzz_moment] += 1
        u = MomentFunctional(frame, tuple(moments))
    residual = pearson_residual(pear, u, residual_depth)
    bad = [i for i, r in enumerate(residual) if r != 0]
    checks.append(Check(
        "pearson_residual_zero",
        not bad,
        "" if not bad else f"nonzero residual at Y-degrees {bad[:4]} (cell {bad[0]})",
    ))
    table = recurrence(pear, frame, depth, y0)
    gram = gram_matrix(u, table.polys, depth)
    off = [(m, n) for m in range(depth + 1) for n in range(depth + 1)
           if m != n and gram[m][n] != 0]
    checks.append(Check(
        "gram_off_diagonal_zero",
        not off,
        "" if not off else f"nonzero off-diagonal cells {off[:4]}",
    ))
    diag_ok = True
    detail = ""
    expected = y0
    for nn in range(depth + 1):
        if nn:
            expected *= table.gamma[nn]
        if gram[nn][nn] != expected or (nn and table.gamma[nn] == 0):
            diag_ok = False
            detail = f"diagonal mismatch at n={nn}"
            break
    checks.append(Check("gram_diagonal_product_of_gammas", diag_ok, detail))
    return checks


def rodrigues_suite(
    pear: PearsonPair,
    frame: HahnFrame,
    n_max: int = 5,
    test_degree: int = 8,
    require_regular: bool = True,
) -> list[Check]:
    """The Rodrigues identity for n <= n_max, both right-hand-side routes."""
    depth = max(moment_depth_for(pear, n, test_degree) for n in range(n_max + 1))
    u = solve_moments(pear, frame, 1, depth + 2 * n_max + 2)
    table = recurrence(pear, frame, n_max, require_regular=require_regular)
    checks = []
    for n in range(n_max + 1):
        witness = verify_rodrigues(pear, frame, u, table, n, test_degree)
        checks.append(Check(
            f"rodrigues_n{n}",
            witness.match,
            "" if witness.match else f"first mismatch at Y-degree {witness.first_mismatch}",
        ))
    return checks


def norms_suite(pear: PearsonPair, frame: HahnFrame) -> list[Check]:
    """Derivative-sequence laws, psi^[k]/theta2 dual routes, gamma_1^[n]."""
    checks = []
    q = frame.q
    depth = 30
    u = solve_moments(pear, frame, 1, depth)
    table = recurrence(pear, frame, 12)

    ok, detail = True, ""
    u1 = derived_functional(pear, frame, u, 1)
    seq1 = derivative_sequence(table, frame, 1)
    for n in range(7):
        for m in range(7):
            expected = (
                -(q**-n) * d_n(pear, frame, n) / q_bracket(n + 1, q)
                * pair(u, table.polys[n + 1] * table.polys[n + 1])
                if m == n
                else Fraction(0)
            )
            if pair(u1, seq1[n] * seq1[m]) != expected:
                ok, detail = False, f"first-derivative orthogonality broke at (n,m)=({n},{m})"
    checks.append(Check("derivative_orthogonality_k1", ok, detail))

    ok, detail = True, ""
    for k in range(4):
        uk = derived_functional(pear, frame, u, k)
        seqk = derivative_sequence(table, frame, k)
        for n in range(6):
            for m in range(6):
                if m == n:
                    prod = Fraction(1)
                    for j in range(1, k + 1):
                        prod *= d_n(pear, frame, n + k + j - 2) / q_bracket(n + j, q)
                    expected = (
                        Fraction(-1) ** k * q ** Fraction(-k * (2 * n + k - 1), 2)
                        * prod * pair(u, table.polys[n + k] * table.polys[n + k])
                    )
                else:
                    expected = Fraction(0)
                if pair(uk, seqk[n] * seqk[m]) != expected:
                    ok, detail = False, f"norm relation broke at (k,n,m)=({k},{n},{m})"
    checks.append(Check("norm_relation_k_le_3", ok, detail))

    bad = [k for k in range(11) if psi_k(pear, frame, k) != psi_k_recursive(pear, frame, k)]
    checks.append(Check("psi_k_closed_form_vs_recursion", not bad,
                        "" if not bad else f"mismatch at k={bad[0]}"))

    bad = [n for n in range(1, 9) if theta2(pear, frame, n) != theta2_definitional(pear, frame, n)]
    checks.append(Check("theta2_dual_computation", not bad,
                        "" if not bad else f"mismatch at n={bad[0]}"))

    ok, detail = True, ""
    for n in range(7):
        derived_pair = PearsonPair(pear.a, pear.b, pear.c,
                                   d_n(pear, frame, 2 * n), e_n(pear, frame, n))
        got = classical.gamma_coefficient(derived_pair, frame, 0)
        expected = -phi_poly(pear)(-e_n(pear, frame, n) / d_n(pear, frame, 2 * n)) \
            / d_n(pear, frame, 2 * n + 1)
        if got != expected:
            ok, detail = False, f"gamma_1^[n] mismatch at n={n}"
    checks.append(Check("gamma1_of_derived_functional", ok, detail))

    ok, detail = True, ""
    rng = random.Random(7)
    for n in range(7):
        q_n = Poly.monomial(n) + (random_poly(rng, n - 1) if n >= 1 else Poly())
        r = r_polynomial(pear, frame, q_n)
        want = q ** (1 - n) * d_n(pear, frame, n)
        if r.degree() != n + 1 or r.leading() != want:
            ok, detail = False, f"R_{{n+1}} leading coefficient wrong at n={n}"
    checks.append(Check("r_polynomial_leading_coefficient", ok, detail))

    return checks


def run_suites(
    pear: Optional[PearsonPair],
    frame: Optional[HahnFrame],
    suites: list[str],
    depth: int = 10,
    test_degree: int = 8,
    y0: Fraction = Fraction(1),
    fuzz_moment: Optional[int] = None,
    label: str = "pair",
) -> list[Check]:
    checks = []
    if "identities" in suites:
        frames = [frame] if frame is not None else None
        checks += identities_suite(frames=frames)
    needs_pair = [s for s in ("gram", "rodrigues", "norms") if s in suites]
    if needs_pair:
        if pear is None:
            targets = [(p.pear, p.frame, p.name) for p in classical.PRESETS.values()]
        else:
            targets = [(pear, frame, label)]
        for pp, fr, name in targets:
            if "gram" in suites:
                for c in gram_suite(pp, fr, depth, y0, fuzz_moment):
                    checks.append(Check(f"{name}:{c.name}", c.passed, c.detail))
            if "rodrigues" in suites:
                for c in rodrigues_suite(pp, fr, min(5, depth), test_degree):
                    checks.append(Check(f"{name}:{c.name}", c.passed, c.detail))
            if "norms" in suites:
                for c in norms_suite(pp, fr):
                    checks.append(Check(f"{name}:{c.name}", c.passed, c.detail))
    return checks
