"""Classify a Pearson pair and generate its monic orthogonal sequence.

Walks the forward direction: pick phi and psi, check admissibility and
regularity, then read off beta_n / gamma_n and the polynomials.
"""

from fractions import Fraction as F

from hahnpoly import HahnFrame, PearsonPair, check_regular, recurrence

# phi = x, psi = 1/2 - x on the forward-difference frame (q = 1, w = 1)
frame = HahnFrame(F(1), F(1))
pear = PearsonPair(F(0), F(1), F(0), F(-1), F(1, 2))

report = check_regular(pear, frame, 10)
print("regular up to N=10:", report.regular)

table = recurrence(pear, frame, 8)
print("\n n  beta_n   gamma_n")
for n in range(9):
    gamma = table.gamma[n] if n else "-"
    print(f"{n:2}  {str(table.beta[n]):6}   {gamma}")

print("\nfirst polynomials:")
for n in range(5):
    print(f"P_{n} =", table.polys[n])

# an irregular pair: phi = x, psi = -x (constant term of psi is zero),
# so phi vanishes at -e/d = 0 and gamma_1 = 0.
bad = PearsonPair(F(0), F(1), F(0), F(-1), F(0))
bad_report = check_regular(bad, frame, 10)
print("\nirregular example fails at:", bad_report.first_regularity_failure)
