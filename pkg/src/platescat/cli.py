"""Scenario-driven command line front end.

A scenario is a single JSON file (conventionally *.cfg) holding a key/value
tree: wavenumber, shape(s), incident field, node count, evaluation grids,
and a list of checks with optional tolerance overrides.  All quantities are
nondimensional, angles are radians, complex outputs are written as (re, im)
pairs.

Subcommands: solve, verify, oracle, phaseless.  Exit code 0 when every
requested check passes, 2 when any check fails, 1 on validation or runtime
errors.  PLATESCAT_THREADS limits the linear-algebra thread pool.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import verify
from .geometry import Curve, discretize, make_shape
from .incident import (
    PlaneWave,
    PointSourceBiharmonic,
    PointSourceHelmholtz,
    PointSourceModified,
    SuperpositionBiharmonic,
    boundary_data,
    require_exterior,
)
from .solver import (
    FarField,
    ScatteredField,
    assemble_operators,
    eval_scattered,
    farfield_helmholtz,
    solve_traces,
)

__all__ = [
    "ScenarioError",
    "load_scenario",
    "validate_scenario",
    "dump_scenario",
    "run",
    "main",
]


class ScenarioError(ValueError):
    """Configuration problem, labelled with the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"scenario field '{field}': {message}")


def _positive_number(raw, field) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ScenarioError(field, f"expected a number, got {raw!r}") from None
    if not value > 0.0 or not np.isfinite(value):
        raise ScenarioError(field, f"must be positive and finite, got {value}")
    return value


def _point(raw, field):
    try:
        x, y = float(raw[0]), float(raw[1])
    except (TypeError, ValueError, IndexError, KeyError):
        raise ScenarioError(field, f"expected a coordinate pair, got {raw!r}") from None
    return [x, y]


def _point_list(raw, field):
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(field, "expected a nonempty list of coordinate pairs")
    return [_point(p, field) for p in raw]


_SHAPE_PARAM_KEYS = {"circle": ("radius",), "ellipse": ("a", "b"),
                     "kite": ("scale",), "peanut": ("scale",)}


def _normalize_shape(raw, field):
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ScenarioError(field, "expected an object with a 'kind' entry")
    kind = raw["kind"]
    if kind not in _SHAPE_PARAM_KEYS:
        raise ScenarioError(field, f"unknown shape kind {kind!r}")
    out = {"kind": kind, "center": _point(raw.get("center", [0.0, 0.0]), f"{field}.center")}
    for key in _SHAPE_PARAM_KEYS[kind]:
        if key not in raw:
            raise ScenarioError(field, f"shape kind {kind!r} needs parameter {key!r}")
        out[key] = _positive_number(raw[key], f"{field}.{key}")
    return out


def build_shape(spec: dict) -> Curve:
    params = {k: v for k, v in spec.items() if k not in ("kind", "center")}
    return make_shape(spec["kind"], center=spec["center"], **params)


_INCIDENT_KINDS = ("plane", "point_helmholtz", "point_modified",
                   "point_biharmonic", "superposition_biharmonic")


def _normalize_incident(raw, field):
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ScenarioError(field, "expected an object with a 'kind' entry")
    kind = raw["kind"]
    if kind not in _INCIDENT_KINDS:
        raise ScenarioError(field, f"unknown incident kind {kind!r}")
    if kind == "plane":
        try:
            angle = float(raw.get("angle", 0.0))
        except (TypeError, ValueError):
            raise ScenarioError(f"{field}.angle", "expected a number") from None
        return {"kind": "plane", "angle": angle}
    if kind == "superposition_biharmonic":
        locs = raw.get("locations")
        if not isinstance(locs, list) or len(locs) != 2:
            raise ScenarioError(f"{field}.locations", "expected exactly two points")
        return {"kind": kind, "locations": [_point(p, f"{field}.locations") for p in locs]}
    return {"kind": kind, "location": _point(raw.get("location"), f"{field}.location")}


def build_incident(spec: dict):
    kind = spec["kind"]
    if kind == "plane":
        return PlaneWave(spec["angle"])
    if kind == "point_helmholtz":
        return PointSourceHelmholtz(tuple(spec["location"]))
    if kind == "point_modified":
        return PointSourceModified(tuple(spec["location"]))
    if kind == "point_biharmonic":
        return PointSourceBiharmonic(tuple(spec["location"]))
    return SuperpositionBiharmonic(tuple(spec["locations"][0]), tuple(spec["locations"][1]))


_CHECK_NAMES = ("interior_representation", "exterior_representation",
                "farfield_equivalence", "mixed_reciprocity",
                "point_source_symmetry", "translation_invariance",
                "modified_decay", "asymptotic_expansion",
                "phaseless_discrepancy", "circle_oracle")


def _normalize_check(raw, field):
    if not isinstance(raw, dict) or "name" not in raw:
        raise ScenarioError(field, "expected an object with a 'name' entry")
    name = raw["name"]
    if name not in _CHECK_NAMES:
        raise ScenarioError(f"{field}.name", f"unknown check {name!r}")
    out = {"name": name}
    if "tolerance" in raw:
        out["tolerance"] = _positive_number(raw["tolerance"], f"{field}.tolerance")
    if name == "interior_representation":
        branch = raw.get("test_field", "plane")
        if branch not in ("plane", "modified"):
            raise ScenarioError(f"{field}.test_field", "expected 'plane' or 'modified'")
        out["test_field"] = branch
        out["angle"] = float(raw.get("angle", 0.3))
    elif name == "exterior_representation":
        if "source" in raw:
            out["source"] = _point(raw["source"], f"{field}.source")
    elif name == "mixed_reciprocity":
        out["source"] = _point(raw.get("source"), f"{field}.source")
        count = raw.get("direction_count", 8)
        if not isinstance(count, int) or count < 1:
            raise ScenarioError(f"{field}.direction_count", "expected a positive integer")
        out["direction_count"] = count
    elif name == "point_source_symmetry":
        comp = raw.get("component", "helmholtz")
        if comp not in ("helmholtz", "modified", "biharmonic"):
            raise ScenarioError(f"{field}.component",
                                "expected helmholtz, modified, or biharmonic")
        out["component"] = comp
        out["x"] = _point(raw.get("x"), f"{field}.x")
        out["z"] = _point(raw.get("z"), f"{field}.z")
    elif name == "translation_invariance":
        out["offset"] = _point(raw.get("offset", [0.0, 0.0]), f"{field}.offset")
    elif name == "modified_decay":
        radii = raw.get("radii")
        if not isinstance(radii, list) or len(radii) < 2:
            raise ScenarioError(f"{field}.radii", "expected a list of at least two radii")
        out["radii"] = [_positive_number(r, f"{field}.radii") for r in radii]
        out["angle"] = float(raw.get("angle", 0.0))
    elif name == "asymptotic_expansion":
        out["radius"] = _positive_number(raw.get("radius"), f"{field}.radius")
        out["angle"] = float(raw.get("angle", 0.7))
    return out


def validate_scenario(raw: dict) -> dict:
    """Validate a raw configuration tree and return its normalized form."""
    if not isinstance(raw, dict):
        raise ScenarioError("<root>", "scenario must be a JSON object")
    known = {"wavenumber", "n", "shape", "shape2", "incident", "directions",
             "eval_points", "output_dir", "oracle_truncation", "checks", "phaseless"}
    for key in raw:
        if key not in known:
            raise ScenarioError(key, "unknown scenario field")

    scn = {}
    if "wavenumber" not in raw:
        raise ScenarioError("wavenumber", "required")
    scn["wavenumber"] = _positive_number(raw["wavenumber"], "wavenumber")

    n = raw.get("n", 64)
    if not isinstance(n, int) or n < 8:
        raise ScenarioError("n", f"expected an integer >= 8, got {n!r}")
    scn["n"] = n

    if "shape" not in raw:
        raise ScenarioError("shape", "required")
    scn["shape"] = _normalize_shape(raw["shape"], "shape")
    if "shape2" in raw:
        scn["shape2"] = _normalize_shape(raw["shape2"], "shape2")

    scn["incident"] = _normalize_incident(raw.get("incident", {"kind": "plane"}),
                                          "incident")

    directions = raw.get("directions", 360)
    if not isinstance(directions, int) or directions < 1:
        raise ScenarioError("directions", f"expected a positive integer, got {directions!r}")
    scn["directions"] = directions

    truncation = raw.get("oracle_truncation", 40)
    if not isinstance(truncation, int) or truncation < 1:
        raise ScenarioError("oracle_truncation",
                            f"expected a positive integer, got {truncation!r}")
    scn["oracle_truncation"] = truncation

    if "eval_points" in raw:
        scn["eval_points"] = _point_list(raw["eval_points"], "eval_points")

    scn["output_dir"] = str(raw.get("output_dir", "out"))

    checks = raw.get("checks", [])
    if not isinstance(checks, list):
        raise ScenarioError("checks", "expected a list of check objects")
    scn["checks"] = [_normalize_check(c, f"checks[{i}]") for i, c in enumerate(checks)]

    if "phaseless" in raw:
        block = raw["phaseless"]
        if not isinstance(block, dict):
            raise ScenarioError("phaseless", "expected an object")
        scn["phaseless"] = {
            "z0": _point(block.get("z0"), "phaseless.z0"),
            "xi": _point_list(block.get("xi"), "phaseless.xi"),
            "lambda": _point_list(block.get("lambda"), "phaseless.lambda"),
        }

    _cross_validate(scn)
    return scn


def _cross_validate(scn: dict) -> None:
    """Apply the module-level geometric constraints before any solve."""
    bd = discretize(build_shape(scn["shape"]), scn["n"])
    inc = scn["incident"]
    try:
        if inc["kind"].startswith("point_"):
            require_exterior(bd, inc["location"], "incident source")
        elif inc["kind"] == "superposition_biharmonic":
            for loc in inc["locations"]:
                require_exterior(bd, loc, "incident source")
        for p in scn.get("eval_points", []):
            require_exterior(bd, p, "evaluation point")
    except ValueError as exc:
        raise ScenarioError("incident" if "source" in str(exc) else "eval_points",
                            str(exc)) from None
    needs_second = [c["name"] for c in scn["checks"] if c["name"] == "phaseless_discrepancy"]
    if needs_second:
        if "shape2" not in scn:
            raise ScenarioError("shape2", "required by phaseless_discrepancy")
        if "phaseless" not in scn:
            raise ScenarioError("phaseless", "required by phaseless_discrepancy")
    for check in scn["checks"]:
        if check["name"] == "circle_oracle":
            shape = scn["shape"]
            if shape["kind"] != "circle" or shape["center"] != [0.0, 0.0]:
                raise ScenarioError("shape", "circle_oracle needs a circle centered "
                                             "at the origin")
        if check["name"] == "translation_invariance" and scn["incident"]["kind"] != "plane":
            raise ScenarioError("incident", "translation_invariance needs a plane wave")


def load_scenario(path) -> dict:
    """Read and validate a scenario file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("<file>", f"not valid JSON: {exc}") from None
    return validate_scenario(raw)


def dump_scenario(scn: dict) -> str:
    """Canonical serialization; validate-then-dump is idempotent."""
    return json.dumps(scn, indent=2, sort_keys=True) + "\n"


def _fmt(value: float) -> str:
    return repr(float(value))


def write_farfield_csv(path: Path, ff: FarField) -> None:
    lines = ["angle_radians,re,im,abs"]
    for ang, val in zip(ff.angles, ff.values):
        re, im = float(val.real), float(val.imag)
        lines.append(f"{_fmt(ang)},{_fmt(re)},{_fmt(im)},{_fmt(np.hypot(re, im))}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_field_csv(path: Path, points: np.ndarray, sf: ScatteredField) -> None:
    lines = ["x1,x2,re_u,im_u,re_uH,im_uH,re_uM,im_uM"]
    for p, u, uh, um in zip(points, sf.u, sf.u_h, sf.u_m):
        lines.append(",".join(_fmt(v) for v in
                              (p[0], p[1], u.real, u.imag, uh.real, uh.imag,
                               um.real, um.imag)))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_report(path: Path, scn: dict, reports) -> bool:
    all_passed = all(r.passed for r in reports)
    doc = {
        "scenario": scn,
        "checks": [r.to_dict() for r in reports],
        "all_passed": all_passed,
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return all_passed


def _run_check(scn: dict, check: dict) -> verify.CheckReport:
    kappa = scn["wavenumber"]
    n = scn["n"]
    curve = build_shape(scn["shape"])
    incident = build_incident(scn["incident"])
    tol = check.get("tolerance")
    name = check["name"]

    if name == "interior_representation":
        from .incident import EntireModifiedField, EntirePlaneField
        cls = EntirePlaneField if check["test_field"] == "plane" else EntireModifiedField
        return verify.check_interior_representation(curve, kappa, n, cls(check["angle"]),
                                                    tolerance=tol)
    if name == "exterior_representation":
        return verify.check_exterior_representation(curve, kappa, n,
                                                    z_int=check.get("source"),
                                                    tolerance=tol)
    if name == "farfield_equivalence":
        return verify.check_farfield_equivalence(curve, kappa, n, incident,
                                                 directions=scn["directions"],
                                                 tolerance=tol)
    if name == "mixed_reciprocity":
        count = check["direction_count"]
        thetas = np.arange(count) * (2.0 * np.pi / count)
        return verify.check_mixed_reciprocity(curve, kappa, n, check["source"], thetas,
                                              tolerance=tol)
    if name == "point_source_symmetry":
        return verify.check_point_source_symmetry(curve, kappa, n, check["x"],
                                                  check["z"], check["component"],
                                                  tolerance=tol)
    if name == "translation_invariance":
        return verify.check_translation_invariance(curve, kappa, n, check["offset"],
                                                   scn["incident"]["angle"],
                                                   directions=scn["directions"],
                                                   tolerance=tol)
    if name == "modified_decay":
        return verify.check_modified_decay(curve, kappa, n, incident, check["radii"],
                                           angle=check["angle"], tolerance=tol)
    if name == "asymptotic_expansion":
        return verify.check_asymptotic_expansion(curve, kappa, n, incident,
                                                 angle=check["angle"],
                                                 radius=check["radius"], tolerance=tol)
    if name == "phaseless_discrepancy":
        block = scn["phaseless"]
        return verify.check_phaseless_discrepancy(curve, build_shape(scn["shape2"]),
                                                  kappa, n, block["z0"], block["xi"],
                                                  block["lambda"], tolerance=tol)
    if name == "circle_oracle":
        return verify.check_circle_oracle(scn["shape"]["radius"], kappa,
                                          scn["incident"]["angle"], n,
                                          truncation=scn["oracle_truncation"],
                                          directions=scn["directions"], tolerance=tol)
    raise ScenarioError("checks", f"unhandled check {name!r}")


def _prepare_outdir(scn: dict) -> Path:
    out = Path(scn["output_dir"])
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-probe"
        probe.write_text("", encoding="utf-8")
        probe.unlink()
    except OSError as exc:
        raise RuntimeError(f"output directory {out} is not writable: {exc}") from None
    return out


def _cmd_solve(scn: dict) -> int:
    out = _prepare_outdir(scn)
    kappa, n = scn["wavenumber"], scn["n"]
    bd = discretize(build_shape(scn["shape"]), n)
    ops = assemble_operators(bd, kappa)
    ts = solve_traces(ops, boundary_data(build_incident(scn["incident"]), bd, kappa))
    angles = np.arange(scn["directions"]) * (2.0 * np.pi / scn["directions"])
    write_farfield_csv(out / "farfield.csv", farfield_helmholtz(ts, bd, kappa, angles))
    if "eval_points" in scn:
        pts = np.asarray(scn["eval_points"], dtype=float)
        write_field_csv(out / "field.csv", pts, eval_scattered(ts, bd, kappa, pts))
    write_report(out / "report.json", scn, [])
    return 0


def _cmd_verify(scn: dict) -> int:
    out = _prepare_outdir(scn)
    reports = [_run_check(scn, check) for check in scn["checks"]]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        print(f"{status:4s}  {r.name}: residual {r.residual:.3e} vs tol {r.tolerance:.1e}")
    all_passed = write_report(out / "report.json", scn, reports)
    return 0 if all_passed else 2


def _cmd_oracle(scn: dict) -> int:
    from .oracle import mie_farfield, mie_solve

    for check in scn["checks"]:
        if check["name"] == "circle_oracle":
            tol = check.get("tolerance")
            break
    else:
        tol = None
    shape = scn["shape"]
    if shape["kind"] != "circle" or shape["center"] != [0.0, 0.0]:
        raise ScenarioError("shape", "oracle runs need a circle centered at the origin")
    out = _prepare_outdir(scn)
    kappa, n = scn["wavenumber"], scn["n"]
    if scn["incident"]["kind"] != "plane":
        raise ScenarioError("incident", "oracle runs need a plane wave")
    theta_d = scn["incident"]["angle"]

    report = verify.check_circle_oracle(shape["radius"], kappa, theta_d, n,
                                        truncation=scn["oracle_truncation"],
                                        directions=scn["directions"], tolerance=tol)
    angles = np.arange(scn["directions"]) * (2.0 * np.pi / scn["directions"])
    bd = discretize(build_shape(shape), n)
    ts = solve_traces(assemble_operators(bd, kappa),
                      boundary_data(PlaneWave(theta_d), bd, kappa))
    write_farfield_csv(out / "farfield_solver.csv",
                       farfield_helmholtz(ts, bd, kappa, angles))
    sol = mie_solve(shape["radius"], kappa, theta_d, scn["oracle_truncation"])
    write_farfield_csv(out / "farfield_oracle.csv",
                       FarField(angles=angles, values=mie_farfield(sol, angles)))
    all_passed = write_report(out / "report.json", scn, [report])
    print(f"{'pass' if report.passed else 'FAIL'}  circle_oracle: residual "
          f"{report.residual:.3e} vs tol {report.tolerance:.1e}")
    return 0 if all_passed else 2


def _cmd_phaseless(scn: dict) -> int:
    if "shape2" not in scn:
        raise ScenarioError("shape2", "required for the phaseless experiment")
    if "phaseless" not in scn:
        raise ScenarioError("phaseless", "required for the phaseless experiment")
    out = _prepare_outdir(scn)
    block = scn["phaseless"]
    tol = None
    for check in scn["checks"]:
        if check["name"] == "phaseless_discrepancy":
            tol = check.get("tolerance")
    report = verify.check_phaseless_discrepancy(
        build_shape(scn["shape"]), build_shape(scn["shape2"]), scn["wavenumber"],
        scn["n"], block["z0"], block["xi"], block["lambda"], tolerance=tol)
    all_passed = write_report(out / "report.json", scn, [report])
    print(f"{'pass' if report.passed else 'FAIL'}  phaseless_discrepancy: residual "
          f"{report.residual:.3e} vs tol {report.tolerance:.1e}")
    return 0 if all_passed else 2


_COMMANDS = {"solve": _cmd_solve, "verify": _cmd_verify,
             "oracle": _cmd_oracle, "phaseless": _cmd_phaseless}


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="platescat",
        description="Clamped-cavity flexural wave scattering scenarios")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("config", help="scenario configuration file (JSON)")
    parser.add_argument("--n", type=int, default=None,
                        help="override the node half-count n")
    parser.add_argument("--out", type=str, default=None,
                        help="override the output directory")
    args = parser.parse_args(argv)

    try:
        scn = load_scenario(args.config)
        if args.n is not None:
            if args.n < 8:
                raise ScenarioError("n", f"expected an integer >= 8, got {args.n}")
            scn["n"] = args.n
        if args.out is not None:
            scn["output_dir"] = args.out

        limit = os.environ.get("PLATESCAT_THREADS")
        if limit:
            try:
                limit = int(limit)
            except ValueError:
                raise ScenarioError("PLATESCAT_THREADS",
                                    f"expected an integer, got {limit!r}") from None
            from threadpoolctl import threadpool_limits
            with threadpool_limits(limits=limit):
                return _COMMANDS[args.command](scn)
        return _COMMANDS[args.command](scn)
    except (ScenarioError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
