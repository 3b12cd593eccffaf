import random

import pytest

from quivermult.cartan import (MomentLevel, cartan_matrix,
                               imaginary_null_vector, level_set_forced_empty,
                               reflect_level, residue_pairing)
from quivermult.dynkin import path_quiver, star_quiver
from quivermult.errors import SizeMismatch
from quivermult.quiver import Quiver

from conftest import gr


def two_vertex(d0, d1):
    return Quiver(["0", "1"], [("e", "0", "1")], {"0": d0, "1": d1})


def test_cartan_matrix_examples():
    assert cartan_matrix(two_vertex(1, 3)).c == [[2, -3], [-1, 2]]
    assert cartan_matrix(two_vertex(1, 1)).c == [[2, -1], [-1, 2]]
    assert cartan_matrix(two_vertex(1, 4)).c == [[2, -4], [-1, 2]]


def test_symmetrized_form():
    cd = cartan_matrix(two_vertex(1, 3))
    assert cd.b == [[t * r for r in row] for t, row in zip([1, 3], cd.c)]
    assert cd.b[0][1] == cd.b[1][0]
    # (alpha_i, alpha_i) = 2 d_i
    for q in [two_vertex(1, 3), star_quiver((2, 2))]:
        cd = cartan_matrix(q)
        for v in q.vertices:
            e = {v: 1}
            assert cd.pairing(e, e) == 2 * q.d(v)


def test_pairing_g2_and_affine_null():
    cd = cartan_matrix(two_vertex(1, 3))
    assert cd.pairing({"0": 1}, {"1": 1}) == -3
    star = star_quiver((1, 1, 1, 1))
    cds = cartan_matrix(star)
    delta = {"0": 2, "1": 1, "2": 1, "3": 1, "4": 1}
    assert cds.pairing(delta, delta) == 0
    assert imaginary_null_vector(cds) == delta


def test_reflect_dims():
    cd = cartan_matrix(two_vertex(1, 3))
    assert cd.reflect_dims("1", {"0": 1, "1": 1}) == {"0": 1, "1": 0}
    # s_i(alpha_i) = -alpha_i
    assert cd.reflect_dims("0", {"0": 1, "1": 0}) == {"0": -1, "1": 0}
    # fixed vectors stay fixed
    v = {"0": 3, "1": 2}
    if cd.coroot_pairing(v, "0") == 0:
        assert cd.reflect_dims("0", v) == v


def test_reflect_level_rules():
    q = two_vertex(1, 3)
    cd = cartan_matrix(q)
    zero = MomentLevel(q, {})
    assert reflect_level(cd, "0", zero) == zero
    lam = MomentLevel(q, {"1": [1, 0, 0], "0": [2]})
    out = reflect_level(cd, "1", lam)
    assert list(out["1"]) == [gr(-1), gr(0), gr(0)]
    assert list(out["0"]) == [gr(3)]  # c_{1,0} = -1 shifts by +res
    # residue-free entries only flip sign at the chosen vertex
    lam2 = MomentLevel(q, {"1": [0, 5, 7]})
    out2 = reflect_level(cd, "1", lam2)
    assert list(out2["1"]) == [gr(0), gr(-5), gr(-7)]
    assert list(out2["0"]) == [gr(0)]


def test_reflect_level_involution(rng):
    q = star_quiver((2, 2))
    cd = cartan_matrix(q)
    for _ in range(50):
        lam = MomentLevel(q, {v: [rng.randint(-3, 3) for _ in range(q.d(v))]
                              for v in q.vertices})
        for v in q.vertices:
            assert reflect_level(cd, v, reflect_level(cd, v, lam)) == lam


def test_coxeter_orders():
    assert cartan_matrix(star_quiver((1, 1))).coxeter_order("1", "2") == 2
    assert cartan_matrix(two_vertex(1, 1)).coxeter_order("0", "1") == 3
    assert cartan_matrix(two_vertex(1, 2)).coxeter_order("0", "1") == 4
    assert cartan_matrix(two_vertex(1, 3)).coxeter_order("0", "1") == 6
    assert cartan_matrix(two_vertex(1, 4)).coxeter_order("0", "1") is None


def test_root_classification():
    star = star_quiver((1, 1, 1, 1))
    cd = cartan_matrix(star)
    assert cd.root_type({"0": 1}) == "real"
    assert cd.root_type({"0": 2, "1": 1, "2": 1, "3": 1, "4": 1}) == "imaginary"
    assert cd.root_type({"0": 3}) == "not_root"
    assert cd.root_type({"1": 1, "2": 1}) == "not_root"  # disconnected support
    assert cd.root_type({"0": 1, "1": 1}) == "real"
    with pytest.raises(SizeMismatch):
        cd.root_type({})


def test_root_classification_with_multiplicities():
    cd = cartan_matrix(two_vertex(1, 3))  # G_2
    # the highest root of G_2 in this basis
    assert cd.root_type({"0": 3, "1": 2}) in ("real",)
    assert cd.root_type({"0": 1, "1": 1}) == "real"
    assert cd.root_type({"0": 5, "1": 1}) == "not_root"


def test_variety_dimension():
    q = star_quiver((2, 2))
    cd = cartan_matrix(q)
    assert cd.variety_dimension({"0": 2, "1": 1, "2": 1}) == 2
    for v in q.vertices:
        assert cd.variety_dimension({v: 1}) == 2 - 2 * q.d(v)


def test_residue_pairing_guard():
    q = star_quiver((2,))
    lam = MomentLevel(q, {"1": [1, 1], "0": [0]})
    dims = {"0": 2, "1": 1}
    assert residue_pairing(dims, lam) == gr(1)
    assert level_set_forced_empty(dims, lam)
    lam2 = MomentLevel(q, {"1": [2, 1], "0": [-1]})
    assert residue_pairing(dims, lam2) == gr(0)
    assert not level_set_forced_empty(dims, lam2)


def test_form_is_weyl_invariant(rng):
    q = path_quiver([2, 1, 2])
    cd = cartan_matrix(q)
    for _ in range(60):
        v = {u: rng.randint(-3, 3) for u in q.vertices}
        w = {u: rng.randint(-3, 3) for u in q.vertices}
        assert cd.pairing(v, w) == cd.pairing(w, v)
        for u in q.vertices:
            assert cd.pairing(cd.reflect_dims(u, v), cd.reflect_dims(u, w)) \
                == cd.pairing(v, w)
