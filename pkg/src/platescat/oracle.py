"""Analytic series solution for a plane wave hitting a clamped circular cavity.

Expanding the incident plane wave in Bessel modes and the scattered field in
outgoing Hankel modes plus decaying Macdonald modes,

    u_s = sum_m [ a_m H_m^(1)(kappa r) + b_m K_m(kappa r) ] e^(i m theta),

the clamped conditions u_s = -u_inc and d_r u_s = -d_r u_inc at r = R decouple
into a 2x2 system per mode.  This is the solver's ground truth on circles.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import h1vp, hankel1, jv, jvp, kv, kvp

__all__ = ["MieSolution", "mie_solve", "mie_farfield", "mie_field"]


@dataclass(frozen=True)
class MieSolution:
    """Per-mode coefficients of the circle solution, orders -truncation..truncation."""

    radius: float
    kappa: float
    theta_d: float
    truncation: int
    a: np.ndarray  # Hankel-channel coefficients, shape (2*truncation + 1,)
    b: np.ndarray  # Macdonald-channel coefficients, same shape

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.truncation, self.truncation + 1)


def mie_solve(radius: float, kappa: float, theta_d: float, truncation: int) -> MieSolution:
    """Solve the per-mode clamped conditions on a centered circle.

    Requires truncation >= kappa*radius + 20 so the retained coefficient tail
    is already below 1e-14 (checked).
    """
    radius = float(radius)
    kappa = float(kappa)
    if radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius}")
    if kappa <= 0.0:
        raise ValueError(f"wavenumber must be positive, got {kappa}")
    truncation = int(truncation)
    if truncation < kappa * radius + 20:
        raise ValueError(
            f"truncation {truncation} too small for kappa*R = {kappa * radius:g};"
            " need at least kappa*R + 20")

    m = np.arange(-truncation, truncation + 1)
    z = kappa * radius
    hm = hankel1(m, z)
    dhm = kappa * h1vp(m, z)
    km = kv(m, z).astype(complex)
    dkm = kappa * kvp(m, z).astype(complex)
    rhs_scale = -(1j**m) * np.exp(-1j * m * theta_d)
    p = rhs_scale * jv(m, z)
    q = rhs_scale * kappa * jvp(m, z)

    det = hm * dkm - km * dhm
    if np.any(np.abs(det) <= 1e-14 * (np.abs(hm * dkm) + np.abs(km * dhm))):
        bad = m[np.abs(det) <= 1e-14 * (np.abs(hm * dkm) + np.abs(km * dhm))]
        raise ValueError(f"singular mode system (resonance) at orders {bad.tolist()}")
    a = (p * dkm - km * q) / det
    b = (hm * q - p * dhm) / det

    tail = max(np.max(np.abs(a[:2])), np.max(np.abs(a[-2:])),
               np.max(np.abs(b[:2])), np.max(np.abs(b[-2:])))
    if tail >= 1e-14:
        raise ValueError(
            f"coefficient tail {tail:.2e} has not decayed below 1e-14; "
            "increase the truncation order")
    return MieSolution(radius=radius, kappa=kappa, theta_d=float(theta_d),
                       truncation=truncation, a=a, b=b)


def mie_farfield(sol: MieSolution, angles: np.ndarray) -> np.ndarray:
    """Far-field pattern sqrt(2/(pi kappa)) e^(-i pi/4) sum_m a_m (-i)^m e^(i m theta).

    The Macdonald channel decays exponentially and contributes nothing.
    """
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    m = sol.orders
    phases = np.exp(1j * np.outer(angles, m))
    coeff = sol.a * (-1j)**m
    scale = np.sqrt(2.0 / (np.pi * sol.kappa)) * np.exp(-0.25j * np.pi)
    return scale * phases @ coeff


def mie_field(sol: MieSolution, points: np.ndarray):
    """Scattered-field components (u_h, u_m, u) at exterior points.

    Points with r < R are rejected; the boundary itself is allowed so the
    clamped condition can be checked directly.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.hypot(points[:, 0], points[:, 1])
    if np.any(r < sol.radius * (1.0 - 1e-12)):
        raise ValueError("field evaluation points must lie outside the circle")
    theta = np.arctan2(points[:, 1], points[:, 0])
    m = sol.orders
    z = sol.kappa * r
    phases = np.exp(1j * np.outer(theta, m))                       # (P, 2M+1)
    radial_h = sol.a[:, None] * hankel1(m[:, None], z[None, :])    # (2M+1, P)
    radial_m = sol.b[:, None] * kv(m[:, None], z[None, :])
    u_h = np.einsum("pm,mp->p", phases, radial_h)
    u_m = np.einsum("pm,mp->p", phases, radial_m)
    return u_h, u_m, u_h + u_m
