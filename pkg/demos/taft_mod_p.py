"""Finite exponents of the Taft algebra T3 in characteristic 7.

The coradical is k[Z3], the Loewy length is 3, so the exponent divides
3 * 7^M with 7^M >= 3.  The literal iteration agrees with the decision.
"""

import math

from hopfexp import brute_force_exponent, exponent_2i, make_field, taft
from hopfexp import coradical as cr

F7 = make_field("prime", 7)
H = taft(3, F7)
L = cr.loewy_length(H)
H0 = cr.coradical_hopf_algebra(H)
N = math.lcm(exponent_2i(H0, 0).value, exponent_2i(H0, -1).value)
M = 1
while 7**M < L:
    M += 1
print(f"T3/F7: Lw = {L}, H0 of dim {H0.dim}, N = {N}, bound N*7^M = {N * 7**M}")

for i in range(H.s2_order):
    res = exponent_2i(H, i)
    brute = brute_force_exponent(H, i, 200)
    print(f"  exp_{2 * i}: decided {res.value}, iterated {brute}")
