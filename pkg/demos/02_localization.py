"""Fixed-point sums: euler classes, their inverses, and the two localization formulas."""
from wallcross import (FixedComponent, LaurentElement, LineSummand, euler_class,
                       exterior_algebra, invert_euler, localize_star,
                       localize_star_star, point)

T = exterior_algebra(["x1", "x2"])
x1, x2 = T.gens()

eps = euler_class([LineSummand(1, 3 * x1 * x2), LineSummand(1, T.zero())], T)
print("euler        =", eps)
inv = invert_euler(eps)
print("inverse      =", inv)
print("eps * inv    =", eps * inv)

# an isolated fixed point with normal bundle of rank n + 1
PT = point()
for n in range(4):
    P = FixedComponent(PT, tuple(LineSummand(1, PT.zero()) for _ in range(n + 1)))
    print(f"point, n={n}:", localize_star([P], n))

# a torus component: the answer is the degree of the normal line bundle
P = FixedComponent(T, (LineSummand(1, 5 * x1 * x2),))
print("torus, n=1  :", localize_star([P], 1))

# inserting odd classes picks out the volume form with its sign
Q = FixedComponent(T, (LineSummand(1, T.zero()),))
print("betas x1,x2 :", localize_star_star([Q], [x1, x2], 0))
print("betas x2,x1 :", localize_star_star([Q], [x2, x1], 0))
print("u^2 + 1 inverse is rejected:", end=" ")
try:
    invert_euler(LaurentElement.u(PT, 2) + 1)
except ValueError as exc:
    print(exc)
