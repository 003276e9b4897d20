"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every criterion pins its tolerance here.
"""

import numpy as np
import pytest
from threadpoolctl import threadpool_limits

import platescat as ps
from platescat import kernels, verify

KITE = ps.make_shape("kite", scale=1.0)
CIRCLE = ps.make_shape("circle", radius=1.0)


def _line(number: int, label: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number:2d} {label}: {'PASS' if ok else 'FAIL'} ({detail})")


def test_criterion_01_circle_oracle_equivalence():
    with threadpool_limits(limits=1):
        rep = verify.check_circle_oracle(1.0, 1.0, 0.0, 128, truncation=40,
                                         directions=360)
    ok = rep.residual <= 1e-6 and rep.wall_time_s <= 10.0
    _line(1, "circle oracle equivalence", ok,
          f"residual={rep.residual:.3e} tol=1e-6, wall={rep.wall_time_s:.2f}s<=10s")
    assert rep.residual <= 1e-6
    assert rep.wall_time_s <= 10.0


def test_criterion_02_manufactured_exterior_solution():
    kappa = 2.0
    bd = ps.discretize(KITE, 128)
    z_int = bd.centroid
    data = ps.BoundaryData(
        f1=kernels.biharmonic_green(kappa, z_int, bd.points),
        f2=kernels.green_dn("biharmonic", kappa, z_int, bd.points, bd.normals))
    ts = ps.solve_traces(ps.assemble_operators(bd, kappa), data)
    rng = np.random.default_rng(42)
    phi = rng.uniform(0, 2 * np.pi, 20)
    rad = rng.uniform(2.0, 4.0, 20)
    pts = bd.centroid + rad[:, None] * np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    exact = kernels.biharmonic_green(kappa, z_int, pts)
    field_err = np.max(np.abs(ps.eval_scattered(ts, bd, kappa, pts).u - exact)
                       / np.abs(exact))

    rep = verify.check_exterior_representation(KITE, kappa, 128)
    ext = rep.details["exterior_residual"]
    null = rep.details["null_field_residual"]
    ok = field_err <= 1e-6 and ext <= 1e-8 and null <= 1e-8
    _line(2, "manufactured exterior solution", ok,
          f"field={field_err:.3e} tol=1e-6, repr={ext:.3e} tol=1e-8, "
          f"null={null:.3e} tol=1e-8")
    assert field_err <= 1e-6
    assert ext <= 1e-8
    assert null <= 1e-8


def test_criterion_03_interior_representation():
    worst = 0.0
    for curve in (CIRCLE, KITE):
        for tf in (ps.EntirePlaneField(0.3), ps.EntireModifiedField(1.1)):
            rep = verify.check_interior_representation(curve, 1.0, 64, tf,
                                                       tolerance=1e-10)
            worst = max(worst, rep.residual)
            assert rep.passed, rep
    _line(3, "interior representation", worst <= 1e-10,
          f"worst residual={worst:.3e} tol=1e-10")


SCENES = [
    (CIRCLE, 1.0, 128, ps.PlaneWave(0.0)),
    (KITE, 1.0, 128, ps.PlaneWave(0.0)),
    (KITE, 1.0, 96, ps.PointSourceHelmholtz((2.5, 1.5))),
    (ps.make_shape("peanut", scale=1.0), 2.0, 96, ps.PointSourceBiharmonic((2.0, -1.0))),
    (ps.make_shape("ellipse", a=1.4, b=0.9), 1.0, 96,
     ps.SuperpositionBiharmonic((2.5, 0.5), (-2.0, 1.5))),
]


def test_criterion_04_farfield_equivalence_every_scene():
    worst = 0.0
    for curve, kappa, n, inc in SCENES:
        rep = verify.check_farfield_equivalence(curve, kappa, n, inc, tolerance=1e-12)
        worst = max(worst, rep.residual)
        assert rep.passed, rep
    _line(4, "far-field equivalence", worst <= 1e-12,
          f"worst residual={worst:.3e} tol=1e-12 over {len(SCENES)} scenes")


def test_criterion_05_mixed_reciprocity():
    thetas = np.arange(8) * (np.pi / 4)
    rep = verify.check_mixed_reciprocity(KITE, 1.0, 256, (2.35, 0.0), thetas,
                                         tolerance=1e-6)
    ok = rep.passed and rep.wall_time_s <= 60.0
    _line(5, "mixed reciprocity", ok,
          f"residual={rep.residual:.3e} tol=1e-6, wall={rep.wall_time_s:.1f}s<=60s")
    assert rep.passed, rep
    assert rep.wall_time_s <= 60.0


def test_criterion_06_point_source_symmetry():
    x = 2.5 * np.array([np.cos(0.4), np.sin(0.4)])
    z = 3.0 * np.array([np.cos(0.4 + np.pi / 2), np.sin(0.4 + np.pi / 2)])
    worst = 0.0
    for comp in ("helmholtz", "modified", "biharmonic"):
        rep = verify.check_point_source_symmetry(KITE, 1.0, 256, x, z, comp,
                                                 tolerance=1e-6)
        worst = max(worst, rep.residual)
        assert rep.passed, rep
    _line(6, "point-source symmetry", worst <= 1e-6,
          f"worst residual={worst:.3e} tol=1e-6 over components H/M/plate")


def test_criterion_07_translation_invariance():
    rep = verify.check_translation_invariance(KITE, 1.0, 128, (0.7, -0.3), 0.0,
                                              tolerance=1e-6)
    phaseless = rep.details["phaseless_residual"]
    ok = rep.passed and phaseless <= 1e-6
    _line(7, "translation invariance", ok,
          f"phase-aware={rep.residual:.3e}, phaseless={phaseless:.3e}, tol=1e-6")
    assert rep.passed, rep
    assert phaseless <= 1e-6


def test_criterion_08_decay_and_remainder():
    decay = verify.check_modified_decay(CIRCLE, 1.0, 128, ps.PlaneWave(0.0),
                                        [3.0, 4.0, 5.0], angle=0.0, tolerance=0.5)
    asym = verify.check_asymptotic_expansion(CIRCLE, 1.0, 128, ps.PlaneWave(0.0),
                                             angle=0.7, radius=50.0, tolerance=0.4)
    ratio = asym.details["ratio"]
    ok = decay.passed and 1.6 <= ratio <= 2.4
    _line(8, "modified decay and far remainder", ok,
          f"envelope spread={decay.residual:.3f}<=0.5, e(50)/e(100)={ratio:.3f} "
          f"in [1.6, 2.4]")
    assert decay.passed, decay
    assert 1.6 <= ratio <= 2.4


def test_criterion_09_self_convergence():
    angles = np.arange(360) * (2 * np.pi / 360)
    ff = {}
    for n in (32, 64, 128):
        bd = ps.discretize(KITE, n)
        ts = ps.solve_traces(ps.assemble_operators(bd, 1.0),
                             ps.boundary_data(ps.PlaneWave(0.0), bd, 1.0))
        ff[n] = ps.farfield_helmholtz(ts, bd, 1.0, angles).values
    coarse = np.max(np.abs(ff[32] - ff[64]))
    fine = np.max(np.abs(ff[64] - ff[128]))
    ok = coarse >= 1e2 * fine
    _line(9, "spectral self-convergence", ok,
          f"|ff32-ff64|={coarse:.3e} >= 100 x |ff64-ff128|={fine:.3e}")
    assert coarse >= 1e2 * fine


def test_criterion_10_phaseless_distinguishability():
    z0 = (0.0, -3.0)
    phi_xi = np.linspace(0, np.pi, 6)
    xi = 3.0 * np.stack([np.cos(phi_xi), np.sin(phi_xi)], axis=-1)
    phi_lam = np.linspace(np.pi * 1.2, np.pi * 1.8, 4)
    lam = 4.0 * np.stack([np.cos(phi_lam), np.sin(phi_lam)], axis=-1)

    same = verify.check_phaseless_discrepancy(KITE, KITE, 1.0, 64, z0, xi, lam,
                                              tolerance=1e-6)
    matched = ps.make_shape("circle", radius=float(np.sqrt(1.5)))
    diff = verify.check_phaseless_discrepancy(KITE, matched, 1.0, 64, z0, xi, lam,
                                              tolerance=1e-3)
    signal = diff.details["signal"]
    floor = max(same.residual, diff.details["noise_floor"])
    ok = same.passed and diff.passed and signal >= 1e3 * floor
    _line(10, "phaseless distinguishability", ok,
          f"identical={same.residual:.3e}<=1e-6, signal={signal:.3e} >= "
          f"1e3 x floor={floor:.3e}")
    assert same.passed, same
    assert diff.passed, diff
    assert signal >= 1e3 * floor
