import math
import os

import numpy as np
import pytest

import cubeforms as cf

DATA = os.environ.get("CUBEFORMS_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def test_dimension_table():
    assert cf.dimension_table(3, 2) == [(0, 27, 27), (1, 54, 54), (2, 36, 36), (3, 8, 8)]
    assert cf.small_cube_count(2, 1, 3) == 24
    assert len(cf.enumerate_small_cubes(1, 0, 2)) == 3


def test_dof_matrix_is_block_diagonal():
    a = cf.dof_matrix(2, 1, 3)
    assert a.shape == (24, 24)
    assert np.all(a[:12, 12:] == 0.0)
    assert np.all(a[12:, :12] == 0.0)
    assert np.linalg.matrix_rank(a) == 24


def test_unisolvence_report():
    report = cf.check_unisolvence(3, 2, 2)
    assert report.invertible
    assert len(report.block_conditions) == 3


def test_basis_form_value():
    cube = next(c for c in cf.enumerate_small_cubes(2, 1, 2) if c.directions == [0] and c.anchor_numerators == [1, 0])
    assert cf.evaluate_basis_form(cube, [0.5, 0.5]) == pytest.approx([0.125, 0.0])


def test_polynomial_reproduction_on_sheared_mesh():
    mesh = cf.structured_mesh(2, 2, shear=0.3, k=2)
    values = cf.de_rham(mesh, "poly", 1)
    assert len(values) == mesh.count(1)
    (v,) = cf.evaluate_interpolant(mesh, 1, values, [[0.3, 0.4]])
    expected = 1.0 + (0.3 + 2 * 0.4) / 3.0
    assert v == pytest.approx([expected, expected + 0.1], abs=1e-12)


def test_coboundary_squares_to_zero():
    mesh = cf.structured_mesh(3, 1, k=2)
    x = np.random.default_rng(0).standard_normal(mesh.count(0))
    ddx = cf.coboundary(mesh, 1, cf.coboundary(mesh, 0, list(x)))
    assert max(abs(v) for v in ddx) < 1e-13


def test_convergence_rate():
    rows = cf.run_convergence(2, 1, 2)
    assert math.isnan(rows[0].eoc)
    assert 1.7 <= rows[-1].eoc <= 2.5


def test_identities_and_mesh_errors():
    passed, summary = cf.verify_identities(cf.load_mesh(os.path.join(DATA, "two_squares_reflected.json"), 2))
    assert passed, summary
    with pytest.raises(cf.MeshError):
        cf.load_mesh(os.path.join(DATA, "trapezoid.json"))
