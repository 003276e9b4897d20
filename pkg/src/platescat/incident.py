"""Incident fields, their boundary data, and entire test fields.

The solver consumes Dirichlet/Neumann boundary data (f1, f2).  For a
scattering problem with incident field u_inc the clamped condition gives
f1 = -u_inc and f2 = -d_n u_inc on the boundary.  Point-source locations
must lie strictly outside the closed cavity; "outside" is decided by the
winding number of the discretized boundary plus a minimum clearance of
1e-6 times the shape scale.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import DiscreteBoundary, contains_point

__all__ = [
    "PlaneWave",
    "PointSourceHelmholtz",
    "PointSourceModified",
    "PointSourceBiharmonic",
    "SuperpositionBiharmonic",
    "BoundaryData",
    "EntirePlaneField",
    "EntireModifiedField",
    "boundary_data",
    "eval_incident",
    "interior_test_traces",
    "require_exterior",
]

CLEARANCE_FACTOR = 1e-6


@dataclass(frozen=True)
class PlaneWave:
    """u(x) = exp(i kappa d.x) with d = (cos theta, sin theta)."""
    theta: float

    @property
    def direction(self) -> np.ndarray:
        return np.array([np.cos(self.theta), np.sin(self.theta)])


@dataclass(frozen=True)
class PointSourceHelmholtz:
    """Helmholtz point source g_H(., z)."""
    z: tuple


@dataclass(frozen=True)
class PointSourceModified:
    """Modified Helmholtz point source g_M(., z)."""
    z: tuple


@dataclass(frozen=True)
class PointSourceBiharmonic:
    """Plate point source g_B(., z)."""
    z: tuple


@dataclass(frozen=True)
class SuperpositionBiharmonic:
    """Two plate point sources, g_B(., z0) + g_B(., z)."""
    z0: tuple
    z: tuple


_POINT_KINDS = {
    PointSourceHelmholtz: "helmholtz",
    PointSourceModified: "modified",
    PointSourceBiharmonic: "biharmonic",
}


@dataclass(frozen=True)
class BoundaryData:
    """Dirichlet datum f1 and Neumann datum f2 at the boundary nodes."""
    f1: np.ndarray
    f2: np.ndarray

    def __post_init__(self):
        if self.f1.shape != self.f2.shape:
            raise ValueError("f1 and f2 must have matching shapes")


def _source_locations(inc):
    if isinstance(inc, tuple(_POINT_KINDS)):
        return [np.asarray(inc.z, dtype=float)]
    if isinstance(inc, SuperpositionBiharmonic):
        return [np.asarray(inc.z0, dtype=float), np.asarray(inc.z, dtype=float)]
    return []


def require_exterior(bd: DiscreteBoundary, p, what: str = "point") -> None:
    """Raise unless p is outside the cavity with clearance from the boundary."""
    p = np.asarray(p, dtype=float)
    if contains_point(bd, p):
        raise ValueError(f"{what} at {tuple(p)} lies inside the cavity")
    dist = np.min(np.hypot(*(bd.points - p).T))
    if dist <= CLEARANCE_FACTOR * bd.scale:
        raise ValueError(f"{what} at {tuple(p)} lies on or too close to the boundary")


def eval_incident(inc, kappa: float, points: np.ndarray) -> np.ndarray:
    """Incident field values at arbitrary points (away from source locations)."""
    points = np.asarray(points, dtype=float)
    if isinstance(inc, PlaneWave):
        phase = points[..., 0] * inc.direction[0] + points[..., 1] * inc.direction[1]
        return np.exp(1j * kappa * phase)
    if isinstance(inc, tuple(_POINT_KINDS)):
        kind = _POINT_KINDS[type(inc)]
        z = np.asarray(inc.z, dtype=float)
        green = {"helmholtz": kernels.helmholtz_green,
                 "modified": kernels.modified_green,
                 "biharmonic": kernels.biharmonic_green}[kind]
        return green(kappa, points, z)
    if isinstance(inc, SuperpositionBiharmonic):
        z0 = np.asarray(inc.z0, dtype=float)
        z = np.asarray(inc.z, dtype=float)
        return (kernels.biharmonic_green(kappa, points, z0)
                + kernels.biharmonic_green(kappa, points, z))
    raise TypeError(f"unknown incident field {inc!r}")


def _normal_derivative_at_nodes(inc, kappa: float, bd: DiscreteBoundary) -> np.ndarray:
    if isinstance(inc, PlaneWave):
        u = eval_incident(inc, kappa, bd.points)
        dn = bd.normals @ inc.direction
        return 1j * kappa * dn * u
    if isinstance(inc, tuple(_POINT_KINDS)):
        kind = _POINT_KINDS[type(inc)]
        z = np.asarray(inc.z, dtype=float)
        # derivative is taken at the boundary point, so the node plays the
        # source role of the radial kernel
        return kernels.green_dn(kind, kappa, z, bd.points, bd.normals)
    if isinstance(inc, SuperpositionBiharmonic):
        z0 = np.asarray(inc.z0, dtype=float)
        z = np.asarray(inc.z, dtype=float)
        return (kernels.green_dn("biharmonic", kappa, z0, bd.points, bd.normals)
                + kernels.green_dn("biharmonic", kappa, z, bd.points, bd.normals))
    raise TypeError(f"unknown incident field {inc!r}")


def boundary_data(inc, bd: DiscreteBoundary, kappa: float) -> BoundaryData:
    """Clamped-cavity data f1 = -u_inc, f2 = -d_n u_inc at the nodes."""
    for z in _source_locations(inc):
        require_exterior(bd, z, "point source")
    f1 = -eval_incident(inc, kappa, bd.points)
    f2 = -_normal_derivative_at_nodes(inc, kappa, bd)
    return BoundaryData(f1=f1, f2=f2)


@dataclass(frozen=True)
class EntirePlaneField:
    """Entire Helmholtz-branch test field u = exp(i kappa d.x), Delta u = -kappa^2 u."""
    theta: float

    @property
    def direction(self) -> np.ndarray:
        return np.array([np.cos(self.theta), np.sin(self.theta)])

    def values(self, kappa: float, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        phase = points[..., 0] * self.direction[0] + points[..., 1] * self.direction[1]
        return np.exp(1j * kappa * phase)


@dataclass(frozen=True)
class EntireModifiedField:
    """Entire modified-branch test field u = exp(kappa d.x), Delta u = +kappa^2 u."""
    theta: float

    @property
    def direction(self) -> np.ndarray:
        return np.array([np.cos(self.theta), np.sin(self.theta)])

    def values(self, kappa: float, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        phase = points[..., 0] * self.direction[0] + points[..., 1] * self.direction[1]
        return np.exp(kappa * phase).astype(complex)


def interior_test_traces(field, bd: DiscreteBoundary, kappa: float):
    """Node traces (u, d_n u, Delta u, -d_n Delta u) of an entire test field.

    Both branches satisfy the fourth-order plate equation exactly, with
    Delta u = -kappa^2 u (plane branch) or +kappa^2 u (modified branch).
    """
    u = field.values(kappa, bd.points)
    dn = bd.normals @ field.direction
    if isinstance(field, EntirePlaneField):
        du = 1j * kappa * dn * u
        lap = -kappa**2 * u
        dlap = -kappa**2 * du
    elif isinstance(field, EntireModifiedField):
        du = kappa * dn * u
        lap = kappa**2 * u
        dlap = kappa**2 * du
    else:
        raise TypeError(f"unknown test field {field!r}")
    return u, du, lap, -dlap
