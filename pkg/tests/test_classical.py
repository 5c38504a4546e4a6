import random
from fractions import Fraction as F

import pytest

from hahnpoly.classical import (
    PRESETS,
    RegularityError,
    beta_coefficient,
    check_admissible,
    check_regular,
    derivative_sequence,
    gamma_coefficient,
    get_preset,
    gram_matrix,
    hankel_determinant,
    phi_poly,
    psi_k,
    psi_k_recursive,
    r_polynomial,
    recurrence,
    theta2,
    theta2_definitional,
)
from hahnpoly.functional import pair, solve_moments
from hahnpoly.poly import Poly, op_D, op_iter
from hahnpoly.qnum import HahnFrame, PearsonPair, d_n, e_n, q_bracket

CHARLIER = PearsonPair(F(0), F(1), F(0), F(-1), F(1, 2))
Q1W1 = HahnFrame(F(1), F(1))


def random_admissible_pair(rng):
    """Random rational pair with d != 0 and d_1 != 0 on a random frame."""
    frames = [Q1W1, HahnFrame(F(2), F(1)), HahnFrame(F(1, 2), F(0)), HahnFrame(F(3, 5), F(-1, 3))]
    while True:
        frame = rng.choice(frames)
        coeffs = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(5)]
        a, b, c, d, e = coeffs
        if d == 0 or d * frame.q + a == 0:
            continue
        return PearsonPair(a, b, c, d, e), frame


class TestAdmissibility:
    def test_charlier_always_admissible(self):
        report = check_admissible(CHARLIER, Q1W1, 40)
        assert report.admissible and report.first_admissibility_failure is None

    def test_constructed_failure_at_two(self):
        # d_n = -3/4*2^n + [n]_2 = 0 at n = 2
        pear = PearsonPair(F(1), F(0), F(1), F(-3, 4), F(1))
        report = check_admissible(pear, HahnFrame(F(2), F(0)), 10)
        assert not report.admissible
        assert report.first_admissibility_failure == 2

    def test_zero_pair_rejected(self):
        with pytest.raises(ValueError):
            PearsonPair(F(0), F(0), F(0), F(0), F(0))

    def test_degenerate_psi_fails_at_zero(self):
        pear = PearsonPair(F(1), F(0), F(1), F(0), F(1))
        report = check_admissible(pear, HahnFrame(F(2), F(0)), 5)
        assert report.first_admissibility_failure == 0
        assert not report.psi_degree_one


class TestRegularity:
    def test_charlier_regular(self):
        report = check_regular(CHARLIER, Q1W1, 20)
        assert report.regular
        assert report.checked_d_through == 41

    def test_phi_root_at_zero_when_mu_zero(self):
        pear = PearsonPair(F(0), F(1), F(0), F(-1), F(0))
        report = check_regular(pear, Q1W1, 10)
        assert report.first_regularity_failure == (0, "phi_root_condition")

    def test_d_failure_reported_as_admissibility(self):
        # d_1 = d*q + a = 0 with d = 1, a = -2, q = 2
        pear = PearsonPair(F(-2), F(0), F(1), F(1), F(1))
        report = check_regular(pear, HahnFrame(F(2), F(0)), 5)
        assert report.first_regularity_failure == (1, "admissibility")
        assert report.first_admissibility_failure == 1

    def test_regular_implies_admissible(self):
        for preset in PRESETS.values():
            report = check_regular(preset.pear, preset.frame, 12)
            assert report.regular and report.admissible


class TestPsiK:
    def test_k0(self):
        assert psi_k(CHARLIER, Q1W1, 0) == Poly([CHARLIER.e, CHARLIER.d])

    def test_k1_coefficients(self):
        pear, frame = get_preset("al-salam-carlitz").pear, get_preset("al-salam-carlitz").frame
        assert psi_k(pear, frame, 1) == Poly([e_n(pear, frame, 1), d_n(pear, frame, 2)])

    def test_closed_form_matches_recursion(self):
        rng = random.Random(3)
        for _ in range(10):
            pear, frame = random_admissible_pair(rng)
            for k in range(11):
                assert psi_k(pear, frame, k) == psi_k_recursive(pear, frame, k)


class TestTheta2:
    def test_dual_computation(self):
        rng = random.Random(5)
        for _ in range(10):
            pear, frame = random_admissible_pair(rng)
            for n in range(1, 9):
                assert theta2(pear, frame, n) == theta2_definitional(pear, frame, n)

    def test_leading_coefficient(self):
        pear, frame = CHARLIER, Q1W1
        for n in range(1, 6):
            assert theta2(pear, frame, n).coeff(2) == d_n(pear, frame, 2 * n) * d_n(pear, frame, 2 * n - 1)

    def test_degree_two_when_admissible(self):
        pear = PearsonPair(F(1), F(1), F(0), F(1), F(0))
        frame = HahnFrame(F(2), F(0))
        for n in range(1, 6):
            assert theta2(pear, frame, n).degree() == 2


class TestRecurrence:
    def test_beta0(self):
        rng = random.Random(11)
        for _ in range(50):
            pear, frame = random_admissible_pair(rng)
            assert beta_coefficient(pear, frame, 0) == -pear.e / pear.d

    def test_gamma1_closed_form(self):
        rng = random.Random(13)
        for _ in range(50):
            pear, frame = random_admissible_pair(rng)
            expected = -phi_poly(pear)(-pear.e / pear.d) / (pear.d * frame.q + pear.a)
            assert gamma_coefficient(pear, frame, 0) == expected

    def test_charlier_values(self):
        table = recurrence(CHARLIER, Q1W1, 8)
        for n in range(9):
            assert table.beta[n] == n + F(1, 2)
        for n in range(1, 9):
            assert table.gamma[n] == F(n, 2)

    def test_polys_monic_and_recursive(self):
        preset = get_preset("little-q-laguerre")
        table = recurrence(preset.pear, preset.frame, 8)
        x = Poly.x()
        for n, p in enumerate(table.polys):
            assert p.degree() == n and p.leading() == 1
        for n in range(1, 9):
            assert table.polys[n + 1] == (
                (x - Poly.constant(table.beta[n])) * table.polys[n]
                - table.gamma[n] * table.polys[n - 1]
            )

    def test_regularity_failure_carries_report(self):
        pear = PearsonPair(F(0), F(1), F(0), F(-1), F(0))
        with pytest.raises(RegularityError) as err:
            recurrence(pear, Q1W1, 5)
        assert err.value.report.first_regularity_failure == (0, "phi_root_condition")

    def test_irregular_generation_when_not_required(self):
        pear = PearsonPair(F(0), F(1), F(0), F(-1), F(0))
        table = recurrence(pear, Q1W1, 5, require_regular=False)
        assert table.gamma[1] == 0
        assert all(p.leading() == 1 for p in table.polys)


class TestDerivativeSequence:
    def test_k0_unchanged(self):
        table = recurrence(CHARLIER, Q1W1, 6)
        assert derivative_sequence(table, Q1W1, 0) == list(table.polys)

    def test_monic_of_right_degree(self):
        for name in ("charlier", "al-salam-carlitz"):
            preset = get_preset(name)
            table = recurrence(preset.pear, preset.frame, 11)
            for k in range(4):
                seq = derivative_sequence(table, preset.frame, k)
                for n, p in enumerate(seq[:9]):
                    assert p.degree() == n and p.leading() == 1

    def test_matches_normalized_hahn_derivative(self):
        preset = get_preset("al-salam-carlitz")
        table = recurrence(preset.pear, preset.frame, 7)
        seq = derivative_sequence(table, preset.frame, 2)
        q = preset.frame.q
        norm = q_bracket(3, q) * q_bracket(4, q)
        assert seq[2] == op_iter(op_D, table.polys[4], preset.frame, 2).scale(1 / norm)


class TestRPolynomial:
    def test_q0_constant(self):
        pear, frame = CHARLIER, Q1W1
        assert r_polynomial(pear, frame, Poly([1])) == frame.q * Poly([pear.e, pear.d])

    def test_leading_coefficient(self):
        rng = random.Random(17)
        for _ in range(10):
            pear, frame = random_admissible_pair(rng)
            for n in range(7):
                q_n = Poly.monomial(n) + Poly([F(rng.randint(-3, 3)) for _ in range(n)])
                r = r_polynomial(pear, frame, q_n)
                assert r.degree() == n + 1
                assert r.leading() == frame.q ** (1 - n) * d_n(pear, frame, n)

    def test_functional_identity(self):
        # <D*(Q_n u^[1]), Y_m> = <R_{n+1} u, Y_m>
        from hahnpoly.functional import derived_functional, dist_D_star, left_multiply

        preset = get_preset("charlier")
        u = solve_moments(preset.pear, preset.frame, 1, 24)
        u1 = derived_functional(preset.pear, preset.frame, u, 1)
        for n in range(4):
            q_n = Poly.monomial(n) + (Poly([2, -1]) if n >= 2 else Poly())
            lhs = dist_D_star(left_multiply(q_n, u1))
            rhs = left_multiply(r_polynomial(preset.pear, preset.frame, q_n), u)
            for m in range(7):
                assert lhs.moments[m] == rhs.moments[m]


class TestGramAndHankel:
    def test_diagonal_structure(self):
        for preset in PRESETS.values():
            u = solve_moments(preset.pear, preset.frame, 1, 22)
            table = recurrence(preset.pear, preset.frame, 10)
            gram = gram_matrix(u, table.polys, 10)
            expected = F(1)
            for n in range(11):
                if n:
                    expected *= table.gamma[n]
                assert gram[n][n] == expected and expected != 0
                for m in range(11):
                    if m != n:
                        assert gram[m][n] == 0

    def test_g00_is_y0(self):
        u = solve_moments(CHARLIER, Q1W1, F(5, 7), 6)
        table = recurrence(CHARLIER, Q1W1, 2, F(5, 7))
        assert gram_matrix(u, table.polys, 0)[0][0] == F(5, 7)

    def test_hankel_vanishes_exactly_at_gamma_zero(self):
        frame = Q1W1
        for n0 in (0, 1, 2):
            pear = PearsonPair(F(0), F(1), F(-(1 - n0), 2), F(-2), F(1))
            assert gamma_coefficient(pear, frame, n0) == 0
            u = solve_moments(pear, frame, 1, 20)
            assert hankel_determinant(u, n0 + 2) == 0
            # earlier Hankel determinants stay nonzero
            for order in range(1, n0 + 2):
                assert hankel_determinant(u, order) != 0

    def test_hankel_nonzero_for_regular_preset(self):
        u = solve_moments(CHARLIER, Q1W1, 1, 20)
        for order in range(1, 8):
            assert hankel_determinant(u, order) != 0


class TestPresets:
    def test_catalog_contents(self):
        assert set(PRESETS) == {"charlier", "meixner", "al-salam-carlitz", "little-q-laguerre"}

    def test_unknown_preset(self):
        with pytest.raises(KeyError):
            get_preset("hermite")

    def test_all_presets_regular_to_15(self):
        for preset in PRESETS.values():
            assert check_regular(preset.pear, preset.frame, 15).regular
