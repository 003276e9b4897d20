"""Standalone boundary functionals behind the Green representations.

Two integrals over the boundary reconstruct a plate-wave field from its
Cauchy data.  The displacement layer weights the field's value and normal
derivative against the Laplacian data of the plate kernel; the moment layer
weights the field's Laplacian data against the kernel itself:

    W[v](x) = int { (Delta_y g_B) d_n v + (-d_n Delta_y g_B) v } ds(y)
    U[v](x) = int { g_B (-d_n Delta v) + (d_n g_B) (Delta v) } ds(y)

For an interior solution, W - U recovers v(x) inside; for a radiating
exterior solution, U - W recovers v(x) outside and vanishes inside.  The
evaluation point never touches the boundary here, so plain trapezoid
quadrature is spectrally accurate.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import DiscreteBoundary
from .solver import TraceSolution, eval_scattered

__all__ = [
    "CauchyData4",
    "displacement_layer",
    "moment_layer",
    "asymptotic_extract",
]


@dataclass(frozen=True)
class CauchyData4:
    """Four boundary traces of a plate-wave field: v, d_n v, Delta v, -d_n Delta v."""

    v: np.ndarray
    dn_v: np.ndarray
    lap_v: np.ndarray
    shear_v: np.ndarray

    def __post_init__(self):
        shapes = {self.v.shape, self.dn_v.shape, self.lap_v.shape, self.shear_v.shape}
        if len(shapes) != 1:
            raise ValueError("Cauchy data arrays must share one shape")

    @classmethod
    def from_traces(cls, ts: TraceSolution) -> "CauchyData4":
        return cls(v=ts.f1, dn_v=ts.f2, lap_v=ts.lap, shear_v=ts.shear)

    @classmethod
    def from_test_field(cls, tf, bd: DiscreteBoundary, kappa: float) -> "CauchyData4":
        from .incident import interior_test_traces
        v, dn_v, lap_v, shear_v = interior_test_traces(tf, bd, kappa)
        return cls(v=v, dn_v=dn_v, lap_v=lap_v, shear_v=shear_v)

    @classmethod
    def from_interior_source(cls, kappa: float, z, bd: DiscreteBoundary) -> "CauchyData4":
        """Exact Cauchy data of the radiating manufactured field g_B(., z)."""
        z = np.asarray(z, dtype=float)
        v = kernels.biharmonic_green(kappa, z, bd.points)
        dn_v = kernels.green_dn("biharmonic", kappa, z, bd.points, bd.normals)
        lap_v, shear_v = kernels.biharmonic_lap_pair(kappa, z, bd.points, bd.normals)
        return cls(v=v, dn_v=dn_v, lap_v=lap_v, shear_v=shear_v)


def _off_boundary_guard(bd: DiscreteBoundary, points: np.ndarray) -> None:
    for p in points:
        if np.min(np.hypot(*(bd.points - p).T)) <= 1e-9 * bd.scale:
            raise ValueError(f"evaluation point {tuple(p)} lies on the boundary")


def displacement_layer(data: CauchyData4, bd: DiscreteBoundary, kappa: float,
                       points: np.ndarray) -> np.ndarray:
    """Trapezoid evaluation of W at points off the boundary."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    _off_boundary_guard(bd, points)
    lap_g, shear_g = kernels.biharmonic_lap_pair(
        kappa, points[:, None, :], bd.points[None, :, :], bd.normals[None, :, :])
    w = bd.weights
    return lap_g @ (w * data.dn_v) + shear_g @ (w * data.v)


def moment_layer(data: CauchyData4, bd: DiscreteBoundary, kappa: float,
                 points: np.ndarray) -> np.ndarray:
    """Trapezoid evaluation of U at points off the boundary."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    _off_boundary_guard(bd, points)
    g = kernels.biharmonic_green(kappa, points[:, None, :], bd.points[None, :, :])
    dn_g = kernels.green_dn("biharmonic", kappa, points[:, None, :],
                            bd.points[None, :, :], bd.normals[None, :, :])
    w = bd.weights
    return g @ (w * data.shear_v) + dn_g @ (w * data.lap_v)


def asymptotic_extract(ts: TraceSolution, bd: DiscreteBoundary, kappa: float,
                       angle: float, radii) -> np.ndarray:
    """Scaled far samples r^(1/2) e^(-i kappa r) u_s(r xhat) along one ray.

    These converge to the far-field pattern at xhat with an O(1/r) remainder.
    Radii below 10x the shape scale are rejected.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if np.any(radii < 10.0 * bd.scale * (1.0 - 1e-9)):
        raise ValueError(
            f"asymptotic radii must be >= 10x the shape scale {bd.scale:.3g}")
    xhat = np.array([np.cos(angle), np.sin(angle)])
    points = radii[:, None] * xhat[None, :]
    u = eval_scattered(ts, bd, kappa, points).u
    return np.sqrt(radii) * np.exp(-1j * kappa * radii) * u
