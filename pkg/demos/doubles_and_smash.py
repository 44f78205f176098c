"""Two ways of getting a bigger algebra with the same exponent.

The Drinfeld double keeps both exponents.  Smashing with the cyclic group
generated by S^2 yields a pivotal algebra whose exponent is the lcm of
exp_0 and exp.
"""

from hopfexp import drinfeld_double, exponent_2i, find_pivotal, make_field, smash_s2, taft

H = taft(2, make_field("prime", 3))
D = drinfeld_double(H)
print(f"H4/F3 has dim {H.dim}; its double has dim {D.algebra.dim}")
print("  R-matrix checks:", "ok" if D.quasitriangularity().ok else "FAILED")
for i, label in ((0, "exp_0"), (-1, "exp")):
    print(f"  {label}: H = {exponent_2i(H, i).value}, D(H) = {exponent_2i(D.algebra, i).value}")

T = taft(3, make_field("prime", 7))
sm = smash_s2(T)
K = sm.result
g = find_pivotal(K)
print(f"\nT3/F7 smashed with <S^2>: dim {K.dim}, pivotal element of order {g.order}")
e0, e = exponent_2i(T, 0).value, exponent_2i(T, -1).value
print(f"  exp_0(T3) = {e0}, exp(T3) = {e}, exp of the smash product = {exponent_2i(K, -1).value}")
