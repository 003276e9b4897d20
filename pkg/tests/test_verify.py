import numpy as np
import pytest

import platescat as ps
from platescat import verify


def test_report_invariant_and_determinism(circle):
    rep1 = verify.check_farfield_equivalence(circle, 1.0, 32, ps.PlaneWave(0.0))
    rep2 = verify.check_farfield_equivalence(circle, 1.0, 32, ps.PlaneWave(0.0))
    for rep in (rep1, rep2):
        assert rep.passed == (rep.residual <= rep.tolerance)
        assert rep.residual >= 0.0
        assert rep.wall_time_s >= 0.0
    assert rep1.residual == rep2.residual  # bitwise deterministic
    assert rep1.scene == rep2.scene


def test_interior_representation_scenes(circle, kite):
    for curve in (circle, kite):
        for tf in (ps.EntirePlaneField(0.3), ps.EntireModifiedField(1.1)):
            rep = verify.check_interior_representation(curve, 1.0, 64, tf)
            assert rep.passed, rep
            assert rep.residual <= 1e-10


def test_interior_representation_coarse_grid_degrades(kite):
    fine = verify.check_interior_representation(kite, 1.0, 64, ps.EntirePlaneField(0.3))
    coarse = verify.check_interior_representation(kite, 1.0, 8, ps.EntirePlaneField(0.3))
    assert coarse.residual >= 1e3 * fine.residual
    assert not coarse.passed


def test_exterior_representation_scene(kite):
    rep = verify.check_exterior_representation(kite, 2.0, 128)
    assert rep.passed
    assert rep.details["exterior_residual"] <= 1e-8
    assert rep.details["null_field_residual"] <= 1e-8


def test_exterior_representation_converges(kite):
    coarse = verify.check_exterior_representation(kite, 2.0, 16)
    fine = verify.check_exterior_representation(kite, 2.0, 32)
    assert fine.residual <= coarse.residual / 100.0


def test_exterior_representation_rejects_outside_source(kite):
    with pytest.raises(ValueError):
        verify.check_exterior_representation(kite, 2.0, 64, z_int=(5.0, 0.0))


def test_farfield_equivalence_independent_of_n(kite):
    # the integrand identity holds per quadrature point, so the residual sits
    # at rounding level for any n
    for n in (16, 64):
        rep = verify.check_farfield_equivalence(kite, 1.0, n, ps.PlaneWave(0.0))
        assert rep.residual <= 1e-12


def test_mixed_reciprocity_small_scene(kite):
    rep = verify.check_mixed_reciprocity(kite, 1.0, 96, (2.35, 0.0),
                                         np.arange(4) * (np.pi / 2))
    assert rep.passed
    assert rep.details["helmholtz_relation"] <= 1e-6
    assert rep.details["biharmonic_relation"] <= 1e-6


def test_mixed_reciprocity_far_source_relative(kite):
    # weaker absolute signal at distance 10, but the relative residual stays tiny
    rep = verify.check_mixed_reciprocity(kite, 1.0, 96, (10.0, 0.0),
                                         np.arange(4) * (np.pi / 2))
    assert rep.details["relative_residual"] <= 1e-4


def test_mixed_reciprocity_validation(kite):
    with pytest.raises(ValueError):
        verify.check_mixed_reciprocity(kite, 1.0, 32, (0.0, 0.0), [0.0])
    with pytest.raises(ValueError):
        verify.check_mixed_reciprocity(kite, 1.0, 32, (3.0, 0.0), [])


def test_symmetry_components_and_mirror(kite):
    x = 2.5 * np.array([np.cos(0.4), np.sin(0.4)])
    z = 3.0 * np.array([np.cos(0.4 + np.pi / 2), np.sin(0.4 + np.pi / 2)])
    for comp in ("helmholtz", "modified", "biharmonic"):
        rep = verify.check_point_source_symmetry(kite, 1.0, 96, x, z, comp)
        assert rep.passed, rep

    # mirror pair across the kite's symmetry axis (the x-axis): both orderings
    # agree and equal their mirrored counterparts
    p = np.array([2.6, 1.1])
    q = np.array([-1.5, 2.2])
    pm = p * [1, -1]
    qm = q * [1, -1]
    bd = ps.discretize(kite, 96)
    ops = ps.assemble_operators(bd, 1.0)

    def w_h(at, frm):
        ts = ps.solve_traces(ops, ps.boundary_data(ps.PointSourceHelmholtz(tuple(frm)), bd, 1.0))
        return ps.eval_scattered(ts, bd, 1.0, at).u_h[0]

    assert abs(w_h(p, q) - w_h(pm, qm)) <= 1e-10


def test_symmetry_validation(kite):
    with pytest.raises(ValueError):
        verify.check_point_source_symmetry(kite, 1.0, 32, (2.0, 0.0), (2.0, 0.0),
                                           "helmholtz")
    with pytest.raises(ValueError):
        verify.check_point_source_symmetry(kite, 1.0, 32, (2.0, 0.0), (3.0, 0.0),
                                           "total")


def test_incident_kernels_swap_trivially():
    # swapping arguments of the radial incident kernels alone is exact,
    # isolating the solver's contribution in the symmetry check
    from platescat import kernels
    x = np.array([2.0, 1.0])
    z = np.array([-1.0, 2.5])
    for fn in (kernels.helmholtz_green, kernels.modified_green, kernels.biharmonic_green):
        assert fn(1.0, x, z) == fn(1.0, z, x)


def test_translation_invariance_zero_offset(kite):
    rep = verify.check_translation_invariance(kite, 1.0, 64, (0.0, 0.0), 0.0)
    assert rep.residual <= 1e-12
    assert rep.details["phaseless_residual"] <= 1e-12


def test_translation_invariance_offset(kite):
    rep = verify.check_translation_invariance(kite, 1.0, 128, (0.7, -0.3), 0.0)
    assert rep.passed
    assert rep.details["phaseless_residual"] <= rep.residual + 1e-15


def test_modified_decay_scene(circle):
    rep = verify.check_modified_decay(circle, 1.0, 64, ps.PlaneWave(0.0), [3, 4, 5])
    assert rep.passed
    assert rep.residual <= 0.5

    # kappa = 2 decays faster at matched radii
    rep2 = verify.check_modified_decay(circle, 2.0, 64, ps.PlaneWave(0.0), [3, 4, 5])
    assert rep2.passed


def test_modified_decay_faster_at_higher_wavenumber(circle):
    bd = ps.discretize(circle, 64)
    ratios = {}
    for kappa in (1.0, 2.0):
        ts = ps.solve_traces(ps.assemble_operators(bd, kappa),
                             ps.boundary_data(ps.PlaneWave(0.0), bd, kappa))
        um = ps.eval_scattered(ts, bd, kappa, np.array([[3.0, 0.0], [5.0, 0.0]])).u_m
        ratios[kappa] = abs(um[1]) / abs(um[0])
    assert ratios[2.0] < ratios[1.0]


def test_modified_decay_zero_signal_flag(circle, monkeypatch):
    # zero boundary data produce an identically zero modified component,
    # which must report a trivial pass with the zero-signal flag
    zero = np.zeros(32, dtype=complex)
    monkeypatch.setattr(verify, "boundary_data",
                        lambda inc, bd, kappa: ps.BoundaryData(f1=zero, f2=zero))
    rep = verify.check_modified_decay(circle, 1.0, 16, ps.PlaneWave(0.0), [3, 4, 5])
    assert rep.passed
    assert rep.details.get("zero_signal") is True
    assert rep.residual == 0.0


def test_asymptotic_expansion_scene(circle):
    rep = verify.check_asymptotic_expansion(circle, 1.0, 64, ps.PlaneWave(0.0),
                                            angle=0.7, radius=50.0)
    assert rep.passed
    assert 1.6 <= rep.details["ratio"] <= 2.4


def test_asymptotic_expansion_radius_validation(circle):
    with pytest.raises(ValueError):
        verify.check_asymptotic_expansion(circle, 1.0, 32, ps.PlaneWave(0.0),
                                          angle=0.0, radius=10.0)


def test_asymptotic_expansion_zero_traces_trivial_pass(circle, monkeypatch):
    zero = np.zeros(32, dtype=complex)
    monkeypatch.setattr(verify, "boundary_data",
                        lambda inc, bd, kappa: ps.BoundaryData(f1=zero, f2=zero))
    rep = verify.check_asymptotic_expansion(circle, 1.0, 16, ps.PlaneWave(0.0),
                                            angle=0.0, radius=50.0)
    assert rep.passed
    assert rep.residual == 0.0
    assert rep.details.get("below_floor") is True


def _phaseless_grids():
    z0 = (0.0, -3.0)
    phi_xi = np.linspace(0, np.pi, 6)
    xi = 3.0 * np.stack([np.cos(phi_xi), np.sin(phi_xi)], axis=-1)
    phi_lam = np.linspace(np.pi * 1.2, np.pi * 1.8, 4)
    lam = 4.0 * np.stack([np.cos(phi_lam), np.sin(phi_lam)], axis=-1)
    return z0, xi, lam


def test_phaseless_identical_cavities(kite):
    z0, xi, lam = _phaseless_grids()
    rep = verify.check_phaseless_discrepancy(kite, kite, 1.0, 48, z0, xi, lam)
    assert rep.details["mode"] == "identical"
    assert rep.residual <= 1e-6
    assert rep.passed


def test_phaseless_distinct_cavities(kite):
    z0, xi, lam = _phaseless_grids()
    matched = ps.make_shape("circle", radius=float(np.sqrt(1.5)))
    rep = verify.check_phaseless_discrepancy(kite, matched, 1.0, 48, z0, xi, lam)
    assert rep.details["mode"] == "distinct"
    assert rep.passed
    assert rep.details["signal"] >= 1e3 * rep.details["noise_floor"]


def test_phaseless_translated_cavity_distinguishable(kite):
    # unlike the plane-wave phaseless far field, point-source near-field data
    # see a rigid translation, already in the single-source dataset
    z0, xi, lam = _phaseless_grids()
    shifted = ps.translate(kite, (0.5, 0.0))
    rep = verify.check_phaseless_discrepancy(kite, shifted, 1.0, 48, z0, xi, lam)
    assert rep.passed
    assert rep.details["signal"] >= 1e3 * rep.details["noise_floor"]
    assert rep.details["per_dataset_signal"][0] >= 1e3 * rep.details["noise_floor"]


def test_phaseless_geometry_validation(kite):
    z0, xi, lam = _phaseless_grids()
    with pytest.raises(ValueError):
        verify.check_phaseless_discrepancy(kite, kite, 1.0, 32, (0.0, 0.0), xi, lam)
    with pytest.raises(ValueError):
        verify.check_phaseless_discrepancy(kite, kite, 1.0, 32, z0, xi, xi)


def test_circle_oracle_check():
    rep = verify.check_circle_oracle(1.0, 1.0, 0.0, 64)
    assert rep.passed
    assert rep.residual <= 1e-6


def test_reciprocity_tracks_oracle_error():
    # where the circle-oracle far-field error is eps, the reciprocity
    # residual stays within 100 eps (both are floor-limited here)
    circ = ps.make_shape("circle", radius=1.0)
    for n in (16, 32):
        eps = verify.check_circle_oracle(1.0, 1.0, 0.0, n).residual
        rep = verify.check_mixed_reciprocity(circ, 1.0, n, (3.0, 0.0),
                                             np.arange(4) * (np.pi / 2))
        assert rep.residual <= 100.0 * max(eps, 1e-15)


def test_to_dict_roundtrip(circle):
    rep = verify.check_circle_oracle(1.0, 1.0, 0.0, 16)
    d = rep.to_dict()
    assert set(d) == {"name", "scene", "residual", "tolerance", "passed",
                      "wall_time_s", "details"}
    assert d["passed"] == (d["residual"] <= d["tolerance"])
