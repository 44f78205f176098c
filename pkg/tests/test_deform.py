import random
from fractions import Fraction

import numpy as np
import pytest

from hopfexp import constructions as C
from hopfexp.deform import (
    InvalidTwist,
    bicharacter_twist,
    drinfeld_double,
    smash_s2,
    twist,
    twist_inverse_element,
    twisted_sweedler_power,
    validate_twist,
)
from hopfexp.exponent import brute_force_exponent, exponent, exponent0, find_pivotal
from hopfexp.hopf import same_structure, sweedler_power, verify_axioms

from conftest import F3, Q, algebra
from oracles import Oracle


def beta(a, b):
    # (a1, a2) at index 2 a1 + a2, beta((a1, a2), (b1, b2)) = (-1)^(a1 b2)
    return (-1) ** ((a >> 1) * (b & 1))


def beta_twist():
    H = algebra("dQK4")
    return H, bicharacter_twist(H, beta)


def test_trivial_twist_is_valid_and_changes_nothing():
    for name in ("QS3", "H4Q", "T3F7"):
        H = algebra(name)
        one = H.one2()
        assert validate_twist(H, one).ok
        assert same_structure(twist(H, one), H)


def test_beta_twist_is_a_valid_cocycle():
    H, J = beta_twist()
    rep = validate_twist(H, J)
    assert rep.ok
    assert Q.array_equal(H.product2(J, J), H.one2())  # beta takes values +-1


def test_bad_twist_is_reported():
    H = algebra("H4Q")
    x = H.basis_vector(1)
    J = H.one2() + np.multiply.outer(x, x)
    rep = validate_twist(H, Q.reduce(J))
    assert not rep.ok
    bad = [c for c in rep.checks if not c.passed]
    assert all(c.witness is not None for c in bad)
    with pytest.raises(InvalidTwist):
        twist(H, Q.reduce(J))


def test_beta_twist_keeps_exponents_and_untwists():
    H, J = beta_twist()
    HJ = twist(H, J, J)
    assert verify_axioms(HJ).ok
    # k^G is commutative, so conjugating the coproduct by J changes nothing
    assert same_structure(HJ, H)
    assert exponent0(HJ).value == exponent0(H).value == 2
    assert exponent(HJ).value == exponent(H).value == 2
    back = twist(HJ, J, J)  # J^-1 = J here
    assert np.array_equal(back.comult, H.comult) and np.array_equal(back.antipode, H.antipode)
    assert same_structure(back, H)


def test_twisted_sweedler_power_base_cases():
    H = algebra("H4Q")
    one = H.one2()
    rng = random.Random(1)
    h = Q.asarray([rng.randint(-3, 3) for _ in range(H.dim)])
    for n in (1, 2, 3):
        assert Q.array_equal(twisted_sweedler_power(H, one, h, n), H.apply(sweedler_power(H, n + 1), h))
    assert Q.array_equal(twisted_sweedler_power(H, one, h, 0), h)


def test_twisted_sweedler_power_two_paths():
    H, J = beta_twist()
    HJ = twist(H, J, J)
    rng = random.Random(7)
    for _ in range(3):
        h = Q.asarray([rng.randint(-5, 5) for _ in range(H.dim)])
        for n in range(0, 7):
            lhs = twisted_sweedler_power(H, J, h, n, J, HJ=HJ)
            # h^[n+1] in H^J computed inside H^J itself
            assert Q.array_equal(lhs, HJ.apply(sweedler_power(HJ, n + 1), h))


def test_double_of_group_algebra_z2():
    D = drinfeld_double(algebra("QZ2"))
    A = D.algebra
    assert A.dim == 4 and A.is_commutative()
    assert verify_axioms(A).ok
    assert D.quasitriangularity().ok
    assert D.embedding_report().ok


def test_double_of_h4_mod_three():
    H = algebra("H4F3")
    D = drinfeld_double(H)
    assert D.algebra.dim == 16 and D.quasitriangularity().ok
    common = Oracle(H).exponent(0, 50)
    assert common == 6
    assert exponent0(D.algebra).value == exponent0(H).value == common
    assert brute_force_exponent(D.algebra, 0, 50) == common


def test_double_of_s3_has_exponent_six():
    D = drinfeld_double(algebra("QS3"))
    assert D.algebra.dim == 36
    assert exponent(D.algebra).value == 6
    assert brute_force_exponent(D.algebra, -1, 20) == 6


def test_smash_of_involutory_algebra_is_itself():
    H = algebra("QS3")
    sm = smash_s2(H)
    assert sm.d == 1 and same_structure(sm.result, H)


def test_smash_of_h4():
    H = algebra("H4Q")
    sm = smash_s2(H)
    assert sm.d == 2 and sm.result.dim == 8
    assert verify_axioms(sm.result).ok
    piv = find_pivotal(sm.result)
    assert piv is not None and Q.array_equal(piv.coordinates, sm.pivot)
    K = smash_s2(algebra("H4F3")).result
    e0, e = exponent0(K), exponent(K)
    assert e0.value == e.value == brute_force_exponent(K, 0, 50)


def test_smash_of_taft_three_mod_seven():
    H = algebra("T3F7")
    sm = smash_s2(H)
    K = sm.result
    assert sm.d == 3 and K.dim == 27 and verify_axioms(K).ok
    o = Oracle(H)
    e0, e = o.exponent(0, 60), o.exponent(-1, 60)
    want = np.lcm(e0, e)
    assert exponent(K).value == want
    assert brute_force_exponent(K, -1, 60) == want


def test_twist_rejects_non_twists_on_groups():
    H = C.group_algebra(C.cyclic_group(2), F3)
    g = H.basis_vector(1)
    J = F3.reduce(np.multiply.outer(g, g) * 2)
    assert not validate_twist(H, J).ok


def test_twist_by_klein_subgroup_of_noncommutative_group():
    # Q[S3 x Z2] contains K4 = <s, z>; twisting by a bicharacter on its idempotents deforms the coproduct
    G = C.named_group("s3xz2")
    H = C.group_algebra(G, Q)
    t, e = G.table, G.identity_index
    n = len(t)
    central = [a for a in range(n) if a != e and all(t[a][b] == t[b][a] for b in range(n))]
    z = next(a for a in central if t[a][a] == e)
    s = next(a for a in range(n) if a not in central and a != e and t[a][a] == e)
    K = [e, s, z, t[s][z]]  # index 2 a1 + a2 for s^a1 z^a2
    chars = [[(-1) ** ((c >> 1) * (k >> 1) + (c & 1) * (k & 1)) for k in range(4)] for c in range(4)]
    idem = [Q.reduce(sum(Fraction(chars[c][k], 4) * H.basis_vector(K[k]) for k in range(4))) for c in range(4)]
    J = Q.reduce(sum(beta(a, b) * np.multiply.outer(idem[a], idem[b]) for a in range(4) for b in range(4)))
    assert validate_twist(H, J).ok
    HJ = twist(H, J)
    assert verify_axioms(HJ).ok
    assert not same_structure(HJ, H) and not HJ.is_cocommutative()
    assert exponent(HJ).value == exponent(H).value == 6
    assert exponent0(HJ).value == exponent0(H).value == 6
    assert same_structure(twist(HJ, twist_inverse_element(H, J)), H)
