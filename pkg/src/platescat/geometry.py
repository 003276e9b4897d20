"""Analytic closed boundary curves and their Nystrom discretization.

Shapes are parametrized counterclockwise over [0, 2pi) with analytic first
and second derivatives, so trapezoidal quadrature of smooth integrands is
spectrally accurate.  A boundary is sampled at 2n equispaced parameters
t_j = j pi / n, the node convention required by the logarithmic quadrature
weights in the solver.
"""

from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "Curve",
    "DiscreteBoundary",
    "make_shape",
    "discretize",
    "translate",
    "contains_point",
]

_SHAPE_KINDS = ("circle", "ellipse", "kite", "peanut")


@dataclass(frozen=True)
class Curve:
    """Closed analytic curve: a shape tag, a center, and size parameters.

    circle : params = (radius,)
    ellipse: params = (a, b) semi-axes
    kite   : params = (scale,);  x(t) = c + s*(cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
    peanut : params = (scale,);  x(t) = c + s*sqrt(cos^2 t + 0.25 sin^2 t)*(cos t, sin t)
    """

    kind: str
    center: tuple
    params: tuple

    def point(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = np.empty(t.shape + (2,))
        c, s = np.cos(t), np.sin(t)
        if self.kind == "circle":
            (r,) = self.params
            x[..., 0] = r * c
            x[..., 1] = r * s
        elif self.kind == "ellipse":
            a, b = self.params
            x[..., 0] = a * c
            x[..., 1] = b * s
        elif self.kind == "kite":
            (sc,) = self.params
            x[..., 0] = sc * (c + 0.65 * np.cos(2 * t) - 0.65)
            x[..., 1] = sc * 1.5 * s
        elif self.kind == "peanut":
            (sc,) = self.params
            rho = np.sqrt(0.25 + 0.75 * c**2)
            x[..., 0] = sc * rho * c
            x[..., 1] = sc * rho * s
        else:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        x[..., 0] += self.center[0]
        x[..., 1] += self.center[1]
        return x

    def velocity(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        v = np.empty(t.shape + (2,))
        c, s = np.cos(t), np.sin(t)
        if self.kind == "circle":
            (r,) = self.params
            v[..., 0] = -r * s
            v[..., 1] = r * c
        elif self.kind == "ellipse":
            a, b = self.params
            v[..., 0] = -a * s
            v[..., 1] = b * c
        elif self.kind == "kite":
            (sc,) = self.params
            v[..., 0] = sc * (-s - 1.3 * np.sin(2 * t))
            v[..., 1] = sc * 1.5 * c
        elif self.kind == "peanut":
            (sc,) = self.params
            rho = np.sqrt(0.25 + 0.75 * c**2)
            drho = -0.375 * np.sin(2 * t) / rho
            v[..., 0] = sc * (drho * c - rho * s)
            v[..., 1] = sc * (drho * s + rho * c)
        else:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        return v

    def acceleration(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        a2 = np.empty(t.shape + (2,))
        c, s = np.cos(t), np.sin(t)
        if self.kind == "circle":
            (r,) = self.params
            a2[..., 0] = -r * c
            a2[..., 1] = -r * s
        elif self.kind == "ellipse":
            a, b = self.params
            a2[..., 0] = -a * c
            a2[..., 1] = -b * s
        elif self.kind == "kite":
            (sc,) = self.params
            a2[..., 0] = sc * (-c - 2.6 * np.cos(2 * t))
            a2[..., 1] = -sc * 1.5 * s
        elif self.kind == "peanut":
            (sc,) = self.params
            rho = np.sqrt(0.25 + 0.75 * c**2)
            drho = -0.375 * np.sin(2 * t) / rho
            ddrho = -0.75 * np.cos(2 * t) / rho - drho**2 / rho
            a2[..., 0] = sc * ((ddrho - rho) * c - 2.0 * drho * s)
            a2[..., 1] = sc * ((ddrho - rho) * s + 2.0 * drho * c)
        else:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        return a2


@dataclass(frozen=True)
class DiscreteBoundary:
    """Quadrature nodes on a curve with per-node geometric data.

    2n nodes at t_j = j pi / n.  Normals are the outward unit normals
    (x2', -x1')/|x'| of the counterclockwise parametrization; curvature is
    the signed curvature (positive for convex counterclockwise curves).
    """

    curve: Curve
    n: int
    t: np.ndarray          # (2n,)
    points: np.ndarray     # (2n, 2)
    speed: np.ndarray      # (2n,)
    normals: np.ndarray    # (2n, 2)
    curvature: np.ndarray  # (2n,)

    @property
    def node_count(self) -> int:
        return 2 * self.n

    @property
    def dt(self) -> float:
        return np.pi / self.n

    @property
    def weights(self) -> np.ndarray:
        """Trapezoid arclength weights |x'(t_j)| pi/n."""
        return self.speed * self.dt

    @property
    def centroid(self) -> np.ndarray:
        return self.points.mean(axis=0)

    @property
    def scale(self) -> float:
        """Largest node distance from the centroid; the shape's size yardstick."""
        return float(np.max(np.hypot(*(self.points - self.centroid).T)))


def make_shape(kind: str, center=(0.0, 0.0), **params) -> Curve:
    """Build a shape from its tag and parameters.

    make_shape("circle", radius=1.0), make_shape("ellipse", a=2.0, b=1.0),
    make_shape("kite", scale=1.0), make_shape("peanut", scale=1.0).
    """
    if kind not in _SHAPE_KINDS:
        raise ValueError(f"unknown shape kind {kind!r}; expected one of {_SHAPE_KINDS}")
    center = (float(center[0]), float(center[1]))
    if kind == "circle":
        wanted = ("radius",)
    elif kind == "ellipse":
        wanted = ("a", "b")
    else:
        wanted = ("scale",)
    if set(params) != set(wanted):
        raise ValueError(f"shape {kind!r} takes parameters {wanted}, got {tuple(params)}")
    values = tuple(float(params[name]) for name in wanted)
    for name, value in zip(wanted, values):
        if not value > 0.0:
            raise ValueError(f"shape parameter {name!r} must be positive, got {value}")
    return Curve(kind=kind, center=center, params=values)


def discretize(curve: Curve, n: int) -> DiscreteBoundary:
    """Sample 2n equispaced parameter nodes with speeds, normals, curvature."""
    n = int(n)
    if n < 8:
        raise ValueError(f"need n >= 8 quadrature half-count, got {n}")
    t = np.arange(2 * n) * (np.pi / n)
    points = curve.point(t)
    vel = curve.velocity(t)
    acc = curve.acceleration(t)
    speed = np.hypot(vel[..., 0], vel[..., 1])
    normals = np.stack([vel[..., 1], -vel[..., 0]], axis=-1) / speed[..., None]
    curvature = (vel[..., 0] * acc[..., 1] - vel[..., 1] * acc[..., 0]) / speed**3
    return DiscreteBoundary(curve=curve, n=n, t=t, points=points, speed=speed,
                            normals=normals, curvature=curvature)


def translate(curve: Curve, h) -> Curve:
    """Rigidly shift a curve; nodes move by exactly h, geometry is unchanged."""
    h = np.asarray(h, dtype=float)
    return replace(curve, center=(curve.center[0] + h[0], curve.center[1] + h[1]))


def contains_point(bd: DiscreteBoundary, p) -> bool:
    """Winding-number test of p against the discretized boundary polygon."""
    p = np.asarray(p, dtype=float)
    d = bd.points - p
    ang = np.arctan2(d[:, 1], d[:, 0])
    dang = np.diff(ang, append=ang[:1])
    dang = (dang + np.pi) % (2.0 * np.pi) - np.pi
    return abs(dang.sum()) > np.pi
