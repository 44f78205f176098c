"""Sweedler's four-dimensional algebra over three fields.

Over the rationals both exponents are infinite, and the decision procedure
says why.  Reducing mod 3 or mod 5 makes them finite.
"""

from hopfexp import coradical as cr
from hopfexp import exponent_2i, make_field, taft

for field in (make_field("rational"), make_field("prime", 3), make_field("prime", 5)):
    H = taft(2, field)
    print(f"H4 over {field.spec_string()}: dim {H.dim}, ord(S^2) = {H.s2_order}, Lw = {cr.loewy_length(H)}")
    for i, label in ((0, "exp_0"), (-1, "exp  ")):
        res = exponent_2i(H, i)
        why = type(res.order.evidence).__name__
        print(f"  {label} = {res.value}   ({why})")
    print()

# character zero: a non-trivial primitive X = x with S^2(x) = -x blocks finiteness
H = taft(2, make_field("rational"))
g = cr.MultiplicativeMatrix.grouplike(H, H.basis_vector(2))
(eig,) = cr.s2_primitive_eigens(H, g)
print("S^2 eigenvalue on the skew-primitive:", eig.q.payload)
rep = cr.xpower_identity_report(H, g, eig.X, eig.q, 8)
for c in rep.checks:
    print(f"  {'ok ' if c.passed else 'BAD'} {c.name}")
