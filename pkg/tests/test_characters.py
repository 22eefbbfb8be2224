import cmath

import numpy as np
import pytest

from affine_inductive.characters import (
    additive_character,
    additive_character_table,
    character_table,
    format_complex_cell,
    multiplicative_character,
    one_dim_rep_value,
    root_of_unity,
)
from affine_inductive.field import build_field, prime_power_decomposition
from affine_inductive.group import GroupElement, dilation, translation

import oracles

GRID_PN = [prime_power_decomposition(q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)]
W3 = cmath.exp(2j * cmath.pi / 3)


def test_root_of_unity_exact_quarters():
    assert root_of_unity(0, 7) == 1
    assert root_of_unity(1, 4) == 1j
    assert root_of_unity(3, 2) == -1
    assert abs(root_of_unity(1, 3) - W3) < 1e-15


def test_additive_character_examples():
    F3 = build_field(3, 1)
    for x in F3.elements:
        assert additive_character(F3.zero, x) == 1
    assert abs(additive_character(F3.one, F3.one) - W3) < 1e-15
    F4 = build_field(2, 2)
    assert additive_character(F4.one, F4.parse("x")) == -1


@pytest.mark.parametrize("p,n", GRID_PN)
def test_additive_table_matches_oracle(p, n):
    F = build_field(p, n)
    T = additive_character_table(F)
    for i, c in enumerate(F.elements):
        for j, x in enumerate(F.elements):
            assert abs(T[i, j] - oracles.additive_char(c.coeffs, x.coeffs, F.modulus, p)) < 1e-12
    # characters of (k,+) are orthogonal
    assert np.allclose(T @ T.conj().T, F.q * np.eye(F.q), atol=1e-10)


def test_one_dim_examples():
    F5 = build_field(5, 1)
    assert F5.generator == F5.from_int(2)
    assert one_dim_rep_value(1, dilation(F5.from_int(2))) == 1j
    for b in F5.elements:
        for j in range(4):
            assert one_dim_rep_value(j, translation(b)) == 1
    for a in F5.units:
        assert one_dim_rep_value(0, GroupElement(a, F5.one)) == 1
        assert multiplicative_character(2, a) in (1, -1)


def test_q3_table():
    t = character_table(build_field(3, 1))
    assert t.values.shape == (3, 3)
    assert np.allclose(t.values[-1], [2, -1, 0])
    assert np.allclose(t.values[0], 1)
    assert t.class_sizes == [1, 2, 3]


def test_q2_table_is_signs():
    t = character_table(build_field(2, 1))
    assert np.allclose(t.values, [[1, 1], [1, -1]])


@pytest.mark.parametrize("p,n", GRID_PN)
def test_orthogonality_and_inventory(p, n):
    F = build_field(p, n)
    t = character_table(F)
    q = F.q
    assert sum(d * d for d in t.degrees) == q * (q - 1) == t.group_order
    assert t.row_orthogonality_residual() < 1e-9
    assert t.column_orthogonality_residual() < 1e-9
    assert np.allclose(t.values[0], 1)
    assert np.allclose(t.values[:, 0], t.degrees)


@pytest.mark.parametrize("chi", ["1", "g", "g^2"])
def test_pi_row_independent_of_chi(chi):
    F = build_field(2, 3)
    base = character_table(F).values
    assert np.allclose(character_table(F, F.parse(chi)).values, base, atol=1e-12)


def test_csv_layout():
    t = character_table(build_field(3, 1))
    lines = t.to_csv().splitlines()
    assert lines[0].split(",")[0] == "irreducible"
    assert len(lines) == 4
    assert lines[1].startswith("sigma_0,1.0+0.0i")
    assert format_complex_cell(-0.5 - 0.8660254037844386j) == "-0.5-0.866025403784i"
