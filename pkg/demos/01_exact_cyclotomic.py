"""Exact cyclotomic arithmetic: every scalar in the engine is an element
of Q(zeta_d), stored as rational coordinates mod the d-th cyclotomic
polynomial.  No floats enter any identity."""

from fractions import Fraction

from affa.cyclotomic import Cyclo, cyclotomic_poly, root_power

i = root_power(4, 1)
print("zeta_4 =", i, " zeta_4^2 =", i ** 2, " (exactly -1)")

zeta = root_power(12, 1)
print("Phi_12 =", cyclotomic_poly(12))
print("zeta_12^6 =", zeta ** 6, " zeta_12 * conj =", zeta * zeta.conj())

x = (Cyclo.one() + i) / Cyclo.from_fraction(Fraction(2))
print("(1+i)/2 squared =", x * x, " norm:", x * x.conj())

# mixed orders embed into the lcm field automatically
print("zeta_3 + zeta_4 lives in Q(zeta_12):", root_power(3, 1) + i)
