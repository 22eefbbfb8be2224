import cmath

import numpy as np
import pytest

from affine_inductive.field import build_field, prime_power_decomposition
from affine_inductive.group import GroupElement, compose, dilation, identity, translation
from affine_inductive.pi_rep import PiRepresentation

import oracles

GRID_PN = [prime_power_decomposition(q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)]


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)])
@pytest.mark.parametrize("chi", ["1", "g"])
def test_matrix_matches_definition(p, n, chi):
    F = build_field(p, n)
    c = F.parse(chi)
    rep = PiRepresentation(F, c)
    units = [u.coeffs for u in F.units]
    for g in rep.group.enumerate():
        M = oracles.pi_matrix_by_definition(units, g.a.coeffs, g.b.coeffs, c.coeffs, F.modulus, p)
        assert np.allclose(rep.matrix(g), M, atol=1e-12)


def test_examples():
    F3 = build_field(3, 1)
    rep = PiRepresentation(F3)
    assert np.array_equal(rep.matrix(identity(F3)), np.eye(2))
    w = cmath.exp(2j * cmath.pi / 3)
    assert np.allclose(rep.matrix(translation(F3.one)), np.diag([w, w * w]))
    F8 = build_field(2, 3)
    P = PiRepresentation(F8).matrix(dilation(F8.generator))
    assert set(np.unique(P)) <= {0, 1}
    assert np.array_equal(P.sum(axis=0), np.ones(7)) and np.array_equal(P.sum(axis=1), np.ones(7))


def test_zero_character_rejected():
    F = build_field(3, 1)
    with pytest.raises(ValueError):
        PiRepresentation(F, F.zero)


@pytest.mark.parametrize("p,n", GRID_PN)
def test_homomorphism_and_unitarity(p, n):
    rep = PiRepresentation(build_field(p, n))
    G = rep.group
    rng = np.random.default_rng(1)
    for i, j in rng.integers(G.order, size=(100, 2)):
        g, h = G.element(i), G.element(j)
        assert np.allclose(rep.matrix(compose(g, h)), rep.matrix(g) @ rep.matrix(h), atol=1e-12)
    mats = rep.all_matrices
    assert np.allclose(mats @ np.conj(np.swapaxes(mats, 1, 2)), np.eye(rep.dim), atol=1e-12)


@pytest.mark.parametrize("p,n", GRID_PN)
def test_character_closed_form(p, n):
    F = build_field(p, n)
    rep = PiRepresentation(F)
    q = F.q
    for g in rep.group.enumerate():
        if g.a == F.one:
            expected = q - 1 if g.b.is_zero() else -1
        else:
            expected = 0
        assert abs(rep.character(g) - expected) < 1e-9
        assert abs(rep.induced_character_value(g) - expected) < 1e-9


@pytest.mark.parametrize("p,n", GRID_PN)
def test_irreducible(p, n):
    assert PiRepresentation(build_field(p, n)).irreducibility_residual() < 1e-9


@pytest.mark.parametrize("p,n", [(3, 1), (2, 2), (7, 1), (3, 2)])
def test_other_characters_give_the_same_image(p, n):
    # pi_c(a, b) = pi_1(a, c b), so the image of the group is the same set
    F = build_field(p, n)
    base = PiRepresentation(F)
    for c in F.units:
        rep = PiRepresentation(F, c)
        for g in rep.group.enumerate():
            assert np.allclose(rep.matrix(g), base.matrix(GroupElement(g.a, c * g.b)))
