import numpy as np
import pytest

import platescat as ps


@pytest.fixture(scope="session")
def circle():
    return ps.make_shape("circle", radius=1.0)


@pytest.fixture(scope="session")
def kite():
    return ps.make_shape("kite", scale=1.0)


@pytest.fixture(scope="session")
def peanut():
    return ps.make_shape("peanut", scale=1.0)


@pytest.fixture(scope="session")
def circle_plane_128(circle):
    """Solved scene: unit circle, kappa=1, plane wave theta=0, n=128."""
    bd = ps.discretize(circle, 128)
    ops = ps.assemble_operators(bd, 1.0)
    ts = ps.solve_traces(ops, ps.boundary_data(ps.PlaneWave(0.0), bd, 1.0))
    return bd, ops, ts


@pytest.fixture(scope="session")
def kite_plane_128(kite):
    """Solved scene: kite, kappa=1, plane wave theta=0, n=128."""
    bd = ps.discretize(kite, 128)
    ops = ps.assemble_operators(bd, 1.0)
    ts = ps.solve_traces(ops, ps.boundary_data(ps.PlaneWave(0.0), bd, 1.0))
    return bd, ops, ts


@pytest.fixture(scope="session")
def uniform_angles():
    return np.arange(360) * (2.0 * np.pi / 360.0)
