"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import rotavg


def test_axis_angle_round_trip():
    axis = np.array([0.0, 0.0, 1.0])
    r = rotavg.axis_angle_to_rotation(axis, math.pi / 2)
    expected = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.allclose(r, expected)
    assert rotavg.is_rotation(r)


def test_chordal_sq_identity():
    a = rotavg.random_rotation_uniform(seed=1)
    b = rotavg.random_rotation_uniform(seed=2)
    direct = rotavg.chordal_sq(a, b)
    via_trace = 6.0 - 2.0 * np.trace(a.T @ b)
    assert direct == pytest.approx(via_trace, abs=1e-12)


def test_solve_losso_beats_random_rotations():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(3, 3))
    x, value = rotavg.solve_losso(a)
    assert rotavg.is_rotation(x)
    assert value == pytest.approx(np.trace(a @ x), abs=1e-12)
    for seed in range(200):
        y = rotavg.random_rotation_uniform(seed=seed)
        assert value <= np.trace(a @ y) + 1e-12
    _, grid_value = rotavg.losso_oracle(a, resolution=32)
    assert value <= grid_value + 1e-12


def test_nearest_valid_projection():
    r = rotavg.random_rotation_uniform(seed=7)
    noisy = r + 1e-7 * np.random.default_rng(8).normal(size=(3, 3))
    projected = rotavg.rotation_to_nearest_valid(noisy)
    assert rotavg.is_rotation(projected)
    assert np.linalg.norm(projected - r) < 1e-6


def test_generate_solve_certify_pipeline():
    graph, truth = rotavg.generate(n=15, phi=0.3, p=0.2, seed=11)
    assert graph.n == 15
    assert graph.num_edges >= 14

    init = rotavg.spanning_tree_init(graph)
    start = rotavg.objective(graph, init)

    bcd_rotations, bcd_trace = rotavg.solve_bcd(graph, eps=1e-8)
    assert bcd_trace["converged"]
    bcd_obj = rotavg.objective(graph, bcd_rotations)
    assert bcd_obj <= start + 1e-12
    assert all(
        later <= earlier + 1e-10
        for earlier, later in zip(bcd_trace["objective"], bcd_trace["objective"][1:])
    )

    sum_rotations, sum_trace, mu = rotavg.solve_sum(graph, eps=1e-8)
    assert sum_trace["converged"]
    assert mu > 0
    sum_obj = rotavg.objective(graph, sum_rotations)
    assert sum_obj == pytest.approx(bcd_obj, rel=1e-6)

    cert = rotavg.certify(graph, bcd_rotations)
    assert cert.optimal
    assert cert.min_eig >= -1e-8


def test_noiseless_instance_solved_by_init():
    graph, truth = rotavg.generate(n=8, phi=0.0, p=0.0, seed=5)
    init = rotavg.spanning_tree_init(graph)
    assert rotavg.objective(graph, init) <= 1e-15
    cert = rotavg.certify(graph, init)
    assert cert.optimal


def test_graph_file_round_trip(tmp_path):
    graph, _ = rotavg.generate(n=6, phi=0.2, p=0.0, seed=9)
    path = tmp_path / "g.rag"
    rotavg.write_graph(str(path), graph)
    back = rotavg.read_graph(str(path))
    assert back.n == graph.n
    assert back.num_edges == graph.num_edges
    for (i, j, rel), (bi, bj, brel) in zip(graph.edges(), back.edges()):
        assert (i, j) == (bi, bj)
        assert np.array_equal(rel, brel)


def test_parse_error_is_raised(tmp_path):
    path = tmp_path / "bad.rag"
    path.write_text("RAG 1 2 1\n0 0 1 0 0 0 1 0 0 0 1\n")
    with pytest.raises(ValueError):
        rotavg.read_graph(str(path))


def test_invalid_arguments():
    with pytest.raises(ValueError):
        rotavg.generate(n=1, phi=0.0, p=0.0, seed=0)
    with pytest.raises(ValueError):
        rotavg.axis_angle_to_rotation(np.array([1.0, 1.0, 0.0]), 0.5)
