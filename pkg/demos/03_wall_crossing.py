"""Wall crossing of Seiberg-Witten invariants through both routes."""
from wallcross import (ManifoldData, c1_ind, expected_dimension, index_rank,
                       wall_crossing_general, wall_crossing_simple,
                       wall_crossing_via_localization)

# b1 = 0: the crossing is a sign
cp2 = ManifoldData(b1=0, b2_plus=1, chi=3, tau=1, c1L_squared=9, triple_products=())
print("CP2:", wall_crossing_simple(cp2).value)

# b1 = 4 with two nonzero triple products
m = ManifoldData.from_upper(4, b2_plus=1, chi=0, tau=0, c1L_squared=24,
                            entries={(1, 2): 2, (3, 4): 1})
print("d =", expected_dimension(m), " r =", index_rank(m))
print("c1(ind) =", c1_ind(m))

closed = wall_crossing_simple(m)
loc = wall_crossing_via_localization(m)
print("closed form  :", closed.value, closed.sign_convention)
print("localization :", loc.value)

# inserting curve classes lowers the exponent of c1(ind)
curves = [[1, 0, 0, 0], [0, 1, 0, 0]]
print("two curves   :", wall_crossing_general(m, curves).value)
gated = wall_crossing_general(m, curves[:1])
print("one curve    :", gated.value, gated.reasons)
