"""Exterior algebra of a torus, signs and top-degree integration."""
from fractions import Fraction

from wallcross import exterior_algebra, pfaffian

T = exterior_algebra(["x1", "x2", "x3", "x4"])
x1, x2, x3, x4 = T.gens()

print("x2*x1 =", x2 * x1)          # odd generators anticommute
print("x1*x1 =", x1 * x1)          # and square to zero

# a 2-form and its top power; the integral of omega^2/2 is the pfaffian
A = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]
omega = T.zero()
for i in range(4):
    for j in range(i + 1, 4):
        omega = omega + A[i][j] * T.gens()[i] * T.gens()[j]

top = omega ** 2 / 2
print("omega^2/2 =", top)
print("integral  =", T.integrate_top(top))
print("Pf(A)     =", pfaffian(A))

# coefficients stay exact
print("scaled    =", T.integrate_top(Fraction(1, 3) * top))
