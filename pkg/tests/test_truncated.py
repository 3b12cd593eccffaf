import random
from fractions import Fraction

import pytest

from quivermult.errors import NonInvertibleConstantTerm, NotSemisimpleLeading
from quivermult.checks import rand_principal, rand_unit_poly
from quivermult.linalg import Matrix
from quivermult.scalars import Jet, val_of
from quivermult.truncated import (MatPoly, PrincipalPart, coadjoint,
                                  jordan_shift, nilpotent_on,
                                  principal_projection, spectral_split,
                                  trunc_inv, trunc_mul)

from conftest import gr, mat


def scalar_poly(d, coeffs):
    return MatPoly([Matrix.scalar(1, gr(c)) for c in coeffs] +
                   [Matrix.zeros(1, 1)] * (d - len(coeffs)))


def test_trunc_mul_inverse_pair():
    a = gr(5)
    one_plus = MatPoly([Matrix.scalar(1, gr(1)), Matrix.scalar(1, a)])
    one_minus = MatPoly([Matrix.scalar(1, gr(1)), Matrix.scalar(1, -a)])
    assert trunc_mul(one_plus, one_minus) == MatPoly.identity(2, 1)


def test_trunc_mul_polynomials():
    p = scalar_poly(3, [1, 1])
    assert trunc_mul(p, p) == scalar_poly(3, [1, 2, 1])
    # pure z times pure z truncates away at order two
    az = MatPoly([Matrix.zeros(1, 1), Matrix.scalar(1, gr(3))])
    bz = MatPoly([Matrix.zeros(1, 1), Matrix.scalar(1, gr(4))])
    assert trunc_mul(az, bz) == MatPoly([Matrix.zeros(1, 1)] * 2)


def test_trunc_inv_examples():
    assert trunc_inv(scalar_poly(2, [1, 5])) == scalar_poly(2, [1, -5])
    c = gr(Fraction(3, 7))
    assert trunc_inv(scalar_poly(3, [c])) == scalar_poly(3, [1 / c])
    assert trunc_inv(scalar_poly(3, [1, 1, 1])) == scalar_poly(3, [1, -1, 0])
    with pytest.raises(NonInvertibleConstantTerm):
        trunc_inv(MatPoly([Matrix.zeros(2, 2), Matrix.identity(2)]))


def test_inverse_round_trip_random(rng):
    for _ in range(200):
        d, n = rng.randint(1, 4), rng.randint(1, 3)
        g = rand_unit_poly(rng, d, n)
        assert trunc_mul(g, trunc_inv(g)) == MatPoly.identity(d, n)
        assert trunc_inv(trunc_inv(g)) == g


def test_realize_is_multiplicative(rng):
    for _ in range(50):
        d, n = rng.randint(1, 3), rng.randint(1, 2)
        g, h = rand_unit_poly(rng, d, n), rand_unit_poly(rng, d, n)
        assert (g * h).realize() == g.realize() @ h.realize()


def test_jordan_shift_convention():
    j = jordan_shift(3)
    assert j == mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    n = nilpotent_on(2, 2)
    assert n.sub(0, 2, 2, 4) == Matrix.identity(2)


def test_coadjoint_identity_and_scalars(rng):
    eta = rand_principal(rng, 3, 2)
    assert coadjoint(MatPoly.identity(3, 2), eta) == eta
    const = MatPoly.constant(3, Matrix.scalar(2, gr(7, 2)))
    assert coadjoint(const, eta) == eta


def test_coadjoint_order_two_example():
    # g = 1 + S z conjugating diag(mu,0) z^-2 + eta_1 z^-1 adds [S, diag]
    mu = gr(3)
    s = mat([[0, 1], [0, 0]])
    eta1 = mat([[1, 2], [3, 4]])
    eta = PrincipalPart([eta1, mat([[3, 0], [0, 0]])], 2)
    g = MatPoly([Matrix.identity(2), s])
    got = coadjoint(g, eta)
    lead = mat([[3, 0], [0, 0]])
    assert got.coeffs[1] == lead
    assert got.coeffs[0] == eta1 + (s @ lead - lead @ s)


def test_principal_projection_examples():
    # identity projects to d * 1 z^-1
    for d, v in [(1, 1), (2, 2), (3, 1)]:
        got = principal_projection(Matrix.identity(v * d), v, d)
        assert got == PrincipalPart.scalar(d, v, [d])
    # nilpotent shift has vanishing partial traces
    assert principal_projection(nilpotent_on(2, 3), 2, 3).is_zero()
    # lower-left block unit at order two picks out the top pole
    e21 = mat([[0, 0], [1, 0]])
    assert principal_projection(e21, 1, 2) == PrincipalPart(
        [Matrix.zeros(1, 1), Matrix.identity(1)], 1)


def test_spectral_split_hand_example():
    mu = gr(5)
    a, b, c, e = gr(1), gr(2), gr(3), gr(4)
    eta = PrincipalPart([mat([[a, b], [c, e]]), mat([[mu, 0], [0, 0]])], 2)
    g, p = spectral_split(eta, mu)
    assert p == 1
    assert g.coeffs[0] == Matrix.identity(2)
    assert g.coeffs[1] == mat([[0, b / mu], [-(c / mu), 0]])
    split = coadjoint(g, eta)
    assert split == PrincipalPart([mat([[a, 0], [0, e]]),
                                   mat([[mu, 0], [0, 0]])], 2)


def test_spectral_split_block_diagonal_fixed():
    mu = gr(2)
    eta = PrincipalPart([mat([[7, 0], [0, 9]]), mat([[mu, 0], [0, 0]])], 2)
    g, p = spectral_split(eta, mu)
    assert p == 1 and g == MatPoly.identity(2, 2)


def test_spectral_split_full_block():
    mu = gr(4)
    eta = PrincipalPart([mat([[1, 2], [3, 4]]),
                         Matrix.scalar(2, mu)], 2)
    g, p = spectral_split(eta, mu)
    assert p == 2
    assert g.coeffs[0] == Matrix.identity(2)


def test_spectral_split_rejects_nonsplit():
    bad = PrincipalPart([Matrix.zeros(2, 2), mat([[1, 1], [0, 1]])], 2)
    with pytest.raises(NotSemisimpleLeading):
        spectral_split(bad, gr(1))


def test_operations_commute_with_jet_projection(rng):
    for _ in range(40):
        d, n = rng.randint(1, 3), rng.randint(1, 2)
        gv = rand_unit_poly(rng, d, n)
        g = MatPoly([m.map(lambda x: Jet(x, gr(rng.randint(-2, 2))))
                     for m in gv.coeffs])
        assert [m.val_part() for m in g.inverse().coeffs] == \
            gv.inverse().coeffs
        eta = rand_principal(rng, d, n)
        acted = coadjoint(g, eta)
        assert [m.val_part() for m in acted.coeffs] == coadjoint(gv, eta).coeffs
