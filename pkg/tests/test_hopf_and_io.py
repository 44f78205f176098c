import copy
import json

import numpy as np
import pytest

from hopfexp import constructions as C
from hopfexp import io
from hopfexp.exponent import exponent0
from hopfexp.hopf import (
    AxiomViolation,
    HopfAlgebra,
    coopposite,
    derive_antipode,
    direct_power_map,
    dual,
    opposite,
    same_structure,
    tensor,
    twisted_power_map,
    verify_axioms,
)
from hopfexp.linalg import inverse

from conftest import F3, F5, F7, Q, algebra

CORPUS = ["QZ2", "QZ3", "QS3", "F7S3", "F5Z4", "dQZ2", "dQS3", "dF7S3", "dQK4", "H4Q", "H4F3", "T3C3", "T3F7"]


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_passes_axioms(name):
    H = algebra(name)
    rep = verify_axioms(H)
    assert rep.ok, rep.as_dict()
    F = H.field
    assert F.array_equal(F.dot(H.antipode, H.antipode_inverse), H.identity)


def test_corrupted_multiplication_is_caught():
    H = algebra("QZ2")
    mult = np.array(H.mult, copy=True)
    mult[1, 1] = Q.asarray([0, 1])  # g * g = g instead of 1
    bad = HopfAlgebra(Q, mult, H.unit, H.comult, H.counit, H.antipode, H.antipode_inverse)
    rep = verify_axioms(bad)
    assert not rep["associativity"].passed or not rep["unitality"].passed or not rep["antipode"].passed
    failed = [c for c in rep.checks if not c.passed]
    assert failed and all(c.witness is not None for c in failed)


def test_group_antipodes():
    H = algebra("QZ3")
    g, g2 = H.basis_vector(1), H.basis_vector(2)
    assert Q.array_equal(H.apply(H.antipode, g), g2)
    G = C.symmetric_group(3)
    H = algebra("F7S3")
    for s in range(6):
        assert F7.array_equal(H.apply(H.antipode, H.basis_vector(s)), H.basis_vector(G.inverse(s)))


def test_sweedler_antipode_is_solved_and_not_involutory():
    H = algebra("H4Q")
    S = derive_antipode(Q, H.mult, H.unit, H.comult, H.counit)
    assert Q.array_equal(S, H.antipode)
    x = H.basis_vector(1)
    # S(x) = -g x, S^2(x) = -x
    assert Q.array_equal(H.apply(S, x), Q.reduce(-H.basis_vector(3)))
    assert Q.array_equal(H.apply(H.s2, x), Q.reduce(-x))
    assert not H.is_involutory()


def test_twisted_power_maps():
    for name in ("QZ2", "H4Q", "T3C3"):
        H = algebra(name)
        assert H.field.array_equal(twisted_power_map(H, 3, 1), H.identity)
    H = algebra("QZ2")
    assert Q.array_equal(twisted_power_map(H, 0, 2), H.unit_counit)
    H = algebra("H4Q")
    for i in (-1, 0, 1):
        for n in (2, 3, 4):
            assert Q.array_equal(twisted_power_map(H, i, n), direct_power_map(H, n=n, i=i))
    H = algebra("T3F7")
    assert F7.array_equal(twisted_power_map(H, -1, 3), direct_power_map(H, n=3, i=-1))


def test_closure_operations():
    H = algebra("QZ2")
    D = dual(H)
    assert verify_axioms(D).ok
    assert exponent0(D).value == exponent0(H).value == 2
    H4 = algebra("H4Q")
    Op = opposite(H4)
    assert verify_axioms(Op).ok
    assert Q.array_equal(Op.antipode, inverse(Q, H4.antipode))
    assert verify_axioms(coopposite(H4)).ok
    T = tensor(algebra("QZ2"), algebra("QZ3"))
    assert T.dim == 6 and verify_axioms(T).ok
    assert exponent0(T).value == 6


# -- constructions ----------------------------------------------------------------


def test_group_algebras():
    H = algebra("QZ2")
    assert H.dim == 2 and Q.array_equal(H.antipode, H.identity)
    H = algebra("QS3")
    assert H.dim == 6 and not H.is_commutative() and H.is_involutory()
    assert C.group_algebra(C.cyclic_group(4), F3).dim == 4


def test_dual_group_algebras():
    H = algebra("dQZ2")
    total = H.basis_vector(0) + H.basis_vector(1)
    assert Q.array_equal(H.unit, total)
    for a in range(2):
        e = H.basis_vector(a)
        assert Q.array_equal(H.product(e, e), e)
    H = algebra("dQS3")
    assert H.is_commutative() and H.dim == 6 and not H.is_cocommutative()
    D = C.dual_group_algebra(C.cyclic_group(4), F5)
    assert D.dim == 4 and verify_axioms(D).ok


def _q_of_taft(H, n):
    # x g = q g x; x at index 1, g at index n, gx at index n + 1
    return H.mult[1, n, n + 1]


def test_taft_algebras():
    H = algebra("H4Q")
    assert H.dim == 4 and H.s2_order == 2
    H = algebra("T3C3")
    assert H.dim == 9 and H.s2_order == 3
    H = algebra("T3F7")
    assert H.dim == 9 and int(_q_of_taft(H, 3)) in (2, 4)
    assert int(_q_of_taft(C.taft(3, F7, q=4), 3)) == 4
    with pytest.raises(C.NoPrimitiveRoot):
        C.taft(3, Q)
    with pytest.raises(C.NoPrimitiveRoot):
        C.taft(3, F7, q=1)


def test_group_table_validation():
    with pytest.raises(C.InvalidGroupTable):
        C.FiniteGroupTable([[0, 1], [1, 1]])
    with pytest.raises(C.InvalidGroupTable):
        C.FiniteGroupTable([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(C.InvalidGroupTable):
        C.named_group("q8")
    assert C.named_group("z2xz3").order == 6
    assert C.named_group("k4").exponent() == 2


# -- documents ----------------------------------------------------------------


@pytest.mark.parametrize("name", ["QZ2", "QS3", "dQS3", "H4F3", "T3C3", "T3F7"])
def test_round_trip(name):
    H = algebra(name)
    doc = io.serialize(H)
    K = io.parse_document(json.loads(io.canonical_json(doc)))
    assert same_structure(H, K)
    assert io.canonical_json(io.serialize(K)) == io.canonical_json(doc)
    assert io.digest(io.serialize(K)) == io.digest(doc)


def test_missing_antipode_is_derived():
    H = algebra("H4Q")
    doc = io.serialize(H)
    del doc["antipode"]
    K = C.from_description(doc)
    assert Q.array_equal(K.antipode, H.antipode)


def test_broken_coassociativity_is_rejected():
    doc = io.serialize(algebra("H4Q"))
    doc["comult"] = [t for t in doc["comult"] if not (t[0] == 1 and t[1] == 2)]
    with pytest.raises(AxiomViolation) as exc:
        C.from_description(doc)
    assert not exc.value.report.ok


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(format_version=99),
    lambda d: d.update(dim="four"),
    lambda d: d["mult"].append([0, 0, 9, "1"]),
    lambda d: d["mult"].append([0, 0, 0, "x"]),
    lambda d: d.update(field={"kind": "prime", "p": 4}),
    lambda d: d.pop("comult"),
])
def test_malformed_documents(mutate):
    doc = copy.deepcopy(io.serialize(algebra("QZ2")))
    mutate(doc)
    with pytest.raises((io.ParseError, ValueError)):
        C.from_description(doc)


def test_atomic_write(tmp_path):
    doc = io.serialize(algebra("QZ3"))
    path = tmp_path / "a.json"
    io.write_json(path, doc)
    assert io.load_json(path) == json.loads(io.canonical_json(doc))
    assert [p.name for p in tmp_path.iterdir()] == ["a.json"]


def test_cyclotomic_scalars_serialize_as_lists():
    doc = io.serialize(algebra("T3C3"))
    assert doc["field"] == {"kind": "cyclotomic", "n": 3}
    assert all(isinstance(t[3], list) for t in doc["mult"])
    assert isinstance(io.serialize(algebra("T3F7"))["mult"][0][3], str)
