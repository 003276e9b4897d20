"""Fundamental solutions for 2D flexural (thin-plate) wave scattering.

The fourth-order plate operator factors into a Helmholtz and a modified
Helmholtz part, so three radial kernels cover everything:

    g_H(x, y) = (i/4) H_0^(1)(k r)            Helmholtz
    g_M(x, y) = (1/2pi) K_0(k r)              modified Helmholtz
    g_B(x, y) = (g_M - g_H) / (2 k^2)         plate (biharmonic) kernel

with r = |x - y|.  g_M equals (i/4) H_0^(1)(i k r) written in terms of the
real-valued Macdonald function.  The log singularities of g_H and g_M cancel
in g_B, which is bounded with diagonal limit -i/(8 k^2).

All functions broadcast over trailing point axes: points are arrays of shape
(..., 2), results have shape (...).  Everything here is pure and stateless.
"""

import numpy as np
from scipy.special import hankel1, k0, k1

EULER_GAMMA = 0.5772156649015328606

__all__ = [
    "helmholtz_green",
    "modified_green",
    "biharmonic_green",
    "green_dn",
    "biharmonic_lap_pair",
    "plane_farfield_kernel",
    "point_source_farfield",
    "farfield_prefactor",
    "EULER_GAMMA",
]


def _separation(x: np.ndarray, y: np.ndarray):
    """Difference vector y - x and its length, raising on coincident points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = y - x
    r = np.hypot(d[..., 0], d[..., 1])
    if np.any(r == 0.0):
        raise ValueError("coincident evaluation and source points")
    return d, r


def _check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not kappa > 0.0:
        raise ValueError(f"wavenumber must be positive, got {kappa}")
    return kappa


def helmholtz_green(kappa: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Helmholtz kernel (i/4) H_0^(1)(kappa |x-y|)."""
    kappa = _check_kappa(kappa)
    _, r = _separation(x, y)
    return 0.25j * hankel1(0, kappa * r)


def modified_green(kappa: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Modified Helmholtz kernel (1/2pi) K_0(kappa |x-y|), real valued."""
    kappa = _check_kappa(kappa)
    _, r = _separation(x, y)
    return k0(kappa * r).astype(complex) / (2.0 * np.pi)


def biharmonic_green(kappa: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Plate kernel (g_M - g_H)/(2 kappa^2); bounded, -> -i/(8 kappa^2) on the diagonal."""
    kappa = _check_kappa(kappa)
    _, r = _separation(x, y)
    z = kappa * r
    gh = 0.25j * hankel1(0, z)
    gm = k0(z) / (2.0 * np.pi)
    return (gm - gh) / (2.0 * kappa**2)


def green_dn(kind: str, kappa: float, x: np.ndarray, y: np.ndarray,
             normal_y: np.ndarray) -> np.ndarray:
    """Normal derivative at the source point, d g_kind / d n(y).

    For a radial kernel g(r) this is g'(r) * (n(y).(y-x))/r, giving

        helmholtz : -(i kappa/4) H_1^(1)(kappa r) (n.(y-x))/r
        modified  : -(kappa/2pi) K_1(kappa r) (n.(y-x))/r
        biharmonic: (modified - helmholtz)/(2 kappa^2)

    Parameters
    ----------
    kind : {"helmholtz", "modified", "biharmonic"}
    x, y : np.ndarray, shape (..., 2)
        Evaluation and source points (x != y).
    normal_y : np.ndarray, shape (..., 2)
        Unit normal at y; broadcasts against y.
    """
    kappa = _check_kappa(kappa)
    d, r = _separation(x, y)
    normal_y = np.asarray(normal_y, dtype=float)
    proj = (normal_y[..., 0] * d[..., 0] + normal_y[..., 1] * d[..., 1]) / r
    z = kappa * r
    if kind == "helmholtz":
        return -0.25j * kappa * hankel1(1, z) * proj
    if kind == "modified":
        return (-(kappa / (2.0 * np.pi)) * k1(z) * proj).astype(complex)
    if kind == "biharmonic":
        dh = -0.25j * kappa * hankel1(1, z) * proj
        dm = -(kappa / (2.0 * np.pi)) * k1(z) * proj
        return (dm - dh) / (2.0 * kappa**2)
    raise ValueError(f"unknown kernel kind {kind!r}")


def biharmonic_lap_pair(kappa: float, x: np.ndarray, y: np.ndarray,
                        normal_y: np.ndarray):
    """Laplacian data of the plate kernel at the source point.

    Away from the diagonal Delta_y g_H = -kappa^2 g_H and
    Delta_y g_M = +kappa^2 g_M, so

        lap      = Delta_y g_B          = (g_M + g_H)/2
        neg_flux = -d(Delta_y g_B)/dn(y) = -(d_n g_M + d_n g_H)/2

    Returns (lap, neg_flux), each of shape (...).
    """
    kappa = _check_kappa(kappa)
    d, r = _separation(x, y)
    normal_y = np.asarray(normal_y, dtype=float)
    proj = (normal_y[..., 0] * d[..., 0] + normal_y[..., 1] * d[..., 1]) / r
    z = kappa * r
    gh = 0.25j * hankel1(0, z)
    gm = k0(z) / (2.0 * np.pi)
    dnh = -0.25j * kappa * hankel1(1, z) * proj
    dnm = -(kappa / (2.0 * np.pi)) * k1(z) * proj
    lap = 0.5 * (gm + gh)
    neg_flux = -0.5 * (dnm + dnh)
    return lap, neg_flux


def plane_farfield_kernel(kappa: float, xhat: np.ndarray, y: np.ndarray,
                          normal_y: np.ndarray):
    """Far-field test function e^(-i kappa xhat.y) and its source-normal derivative.

    Returns (e, dn_e) with dn_e = -i kappa (xhat . n(y)) e.  xhat is a unit
    direction of shape (..., 2); broadcasting against y follows numpy rules.
    """
    kappa = _check_kappa(kappa)
    xhat = np.asarray(xhat, dtype=float)
    y = np.asarray(y, dtype=float)
    normal_y = np.asarray(normal_y, dtype=float)
    phase = xhat[..., 0] * y[..., 0] + xhat[..., 1] * y[..., 1]
    e = np.exp(-1j * kappa * phase)
    xn = xhat[..., 0] * normal_y[..., 0] + xhat[..., 1] * normal_y[..., 1]
    return e, -1j * kappa * xn * e


def farfield_prefactor(kappa: float) -> complex:
    """Constant e^(i pi/4)/sqrt(8 kappa pi) scaling boundary far-field integrals."""
    kappa = _check_kappa(kappa)
    return np.exp(0.25j * np.pi) / np.sqrt(8.0 * kappa * np.pi)


def point_source_farfield(kappa: float, xhat: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Far-field pattern of the plate point source g_B(., z).

    Only the Helmholtz part radiates, giving
    -(1/(2 kappa^2)) e^(i pi/4)/sqrt(8 kappa pi) e^(-i kappa xhat.z).
    """
    kappa = _check_kappa(kappa)
    xhat = np.asarray(xhat, dtype=float)
    z = np.asarray(z, dtype=float)
    phase = xhat[..., 0] * z[..., 0] + xhat[..., 1] * z[..., 1]
    return -farfield_prefactor(kappa) / (2.0 * kappa**2) * np.exp(-1j * kappa * phase)
