"""Command-line front end and JSON reports.

Exit codes:
    0  success
    1  regression mismatch
    2  parse or usage error
    3  NonIsolated
    4  NotSingular (including listed points that are not singular)
    5  IncompleteSingularList
    6  PrecondH0
    7  NotQuasiHomogeneous (spectrum requested for a germ without weights)
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from importlib import resources

from . import __version__, default_seed
from .criteria import (
    ClassVerdict,
    SurfaceResolutionData,
    buchweitz_greuel_check,
    class_test,
    load_catalog,
    s_from_resolution,
    surface_classification,
    suspension_bound_check,
    wahl_check,
    zariski_family_check,
)
from .jacglobal import (
    HypersurfaceRecord,
    IncompleteSingularList,
    NotASingularPoint,
    PrecondH0,
    c_d,
    completeness_check,
    euler_characteristic_report,
    h0_log,
    sequence_dims,
)
from .localinv import (
    LocalGerm,
    NonIsolated,
    NotSingular,
    local_membership,
    milnor_number,
    tau_min_search,
    tjurina_number,
)
from .polycore import (
    PolynomialSyntaxError,
    Q,
    format_polynomial,
    parse_polynomial,
    rational_str,
)
from .spectrum import (
    NotQuasiHomogeneous,
    find_weights,
    germ_spectrum,
    hodge_numbers,
    induced_filtration,
    nemethi_check,
    spectrum_qh,
    v_degree,
)

log = logging.getLogger("hodgering")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_NONISOLATED = 3
EXIT_NOTSINGULAR = 4
EXIT_INCOMPLETE = 5
EXIT_PRECOND_H0 = 6
EXIT_NOT_QH = 7


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input


def read_polynomial_text(source: str) -> str:
    """``source`` is a file path, ``-`` for stdin, or the polynomial itself."""
    if source == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source) as fh:
            lines = [ln.split("#", 1)[0] for ln in fh]
        return " ".join(lines)
    return source


def parse_vars(text: str | None) -> list[str]:
    if not text:
        raise InputError("--vars is required (comma separated variable names)")
    names = [v.strip() for v in text.split(",") if v.strip()]
    if len(set(names)) != len(names):
        raise InputError("duplicate variable names in --vars")
    return names


def parse_point(text: str | None, nvars: int) -> tuple:
    if not text:
        return tuple(Q(0) for _ in range(nvars))
    try:
        pt = tuple(Q(v.strip()) for v in text.split(","))
    except (ValueError, TypeError):
        raise InputError(f"point {text!r} is not a list of rationals") from None
    if len(pt) != nvars:
        raise InputError(f"point has {len(pt)} coordinates, expected {nvars}")
    return pt


_SING_LINE = re.compile(r"^chart\s*=\s*(\d+)\s*;\s*coords\s*=\s*(.*)$")


def parse_singular_points(text: str, ncoords: int) -> list[tuple[int, tuple]]:
    """Lines ``chart=<i>; coords=<q1,...,q_{n+1}>``; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SING_LINE.match(line)
        if not m:
            raise InputError(f"singular-points file line {lineno}: cannot parse {raw.strip()!r}")
        chart = int(m.group(1))
        if chart > ncoords:
            raise InputError(f"line {lineno}: chart {chart} out of range")
        try:
            coords = tuple(Q(v.strip()) for v in m.group(2).split(","))
        except (ValueError, TypeError):
            raise InputError(f"line {lineno}: coordinates must be rationals") from None
        if len(coords) != ncoords:
            raise InputError(f"line {lineno}: expected {ncoords} coordinates, got {len(coords)}")
        out.append((chart, coords))
    return out


# ---------------------------------------------------------------------------
# report blocks


def _rat(v) -> str:
    return rational_str(v)


def _rats(vs) -> list[str]:
    return [rational_str(v) for v in vs]


def verdict_block(v: ClassVerdict | None):
    if v is None:
        return None
    return {"tau": v.tau, "s_n_minus_1": v.s_n_minus_1, "defect": v.defect, "in_class": v.in_class}


def spectral_block(g: LocalGerm) -> dict:
    """Weights, spectrum, s_k and p_g when g is quasi-homogeneous; nulls otherwise."""
    w = find_weights(g)
    try:
        sp = germ_spectrum(g)
    except NotQuasiHomogeneous:
        return {"quasi_homogeneous": False, "weights": None, "spectrum": None,
                "hodge_numbers": None, "p_g": None}
    s = hodge_numbers(sp)
    return {
        "quasi_homogeneous": w is not None,
        "weights": _rats(w) if w is not None else None,
        "spectrum": sp.as_strings(),
        "hodge_numbers": s,
        "p_g": s[2] if g.dim == 2 else None,
    }


def local_block(g: LocalGerm, tau_min_samples: int = 0, seed: int = 0) -> dict:
    mu = milnor_number(g)
    tau = tjurina_number(g)
    block = {"mu": mu, "tau": tau}
    block.update(spectral_block(g))
    verdict = None
    if block["spectrum"] is not None and g.dim >= 1:
        verdict = class_test(g, tau=tau)
    block["class"] = verdict_block(verdict)
    if tau_min_samples:
        res = tau_min_search(g, samples=tau_min_samples, seed=seed)
        generic = class_test(g, tau=res.tau_min) if g.dim >= 1 else None
        block["tau_min"] = {"value": res.tau_min, "samples": res.samples, "seed": seed,
                            "class": verdict_block(generic)}
    return block


def render(doc: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            if isinstance(obj, list):
                obj = "[" + ", ".join(str(x) for x in obj) + "]"
            elif obj is None:
                obj = "-"
            lines.append(f"{prefix:<32} {obj}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def _header(command: str) -> dict:
    return {"tool": "hodgering", "version": __version__, "command": command}


# ---------------------------------------------------------------------------
# commands


def cmd_local(args) -> dict:
    names = parse_vars(args.vars)
    f = parse_polynomial(read_polynomial_text(args.poly), names)
    pt = parse_point(args.point, len(names))
    g = LocalGerm.at(f, pt)
    doc = _header("local")
    doc["input"] = {"polynomial": format_polynomial(f, names), "variables": names, "point": _rats(pt)}
    doc["local"] = local_block(g, args.tau_min_samples, args.seed)
    return doc


def cmd_spectrum(args) -> dict:
    names = parse_vars(args.vars)
    f = parse_polynomial(read_polynomial_text(args.poly), names)
    pt = parse_point(args.point, len(names))
    g = LocalGerm.at(f, pt)
    if find_weights(g) is None:
        raise NotQuasiHomogeneous("germ is not quasi-homogeneous with weights in (0, 1/2]")
    doc = _header("spectrum")
    doc["input"] = {"polynomial": format_polynomial(f, names), "variables": names, "point": _rats(pt)}
    block = spectral_block(g)
    sp = spectrum_qh(g)
    block["mu"] = len(sp)
    block["symmetric"] = sp.is_symmetric()
    filt = induced_filtration(g)
    block["f_degree"] = _rat(filt.f_degree)
    block["generator"] = _rat(filt.generator) if filt.generator is not None else None
    block["gaps"] = _rats(filt.gaps())
    doc["spectrum"] = block
    return doc


def cmd_hypersurface(args) -> dict:
    names = parse_vars(args.vars)
    F = parse_polynomial(read_polynomial_text(args.poly), names)
    if F.is_zero() or not F.is_homogeneous():
        raise InputError("the hypersurface equation must be a nonzero homogeneous polynomial")
    if args.degree is not None and F.degree != args.degree:
        raise InputError(f"--degree {args.degree} does not match the degree {F.degree} of F")
    points = []
    if args.sing_file:
        with open(args.sing_file) as fh:
            points = parse_singular_points(fh.read(), len(names) - 1)
    H = HypersurfaceRecord.build(F, points)
    h0 = h0_log(F)
    if h0:
        raise PrecondH0(f"h0 of the log n-forms is {h0}, not 0")
    if not completeness_check(H):
        raise IncompleteSingularList(
            f"the listed points (total tau {H.tau_total}) do not account for the stabilized Hilbert function")
    dims = sequence_dims(H, check=False)

    pts = []
    s_list = []
    for p in H.points:
        block = {"chart": p.chart, "coords": _rats(p.coords), "homogeneous": _rats(p.homogeneous),
                 "mu": p.mu, "tau": p.tau}
        block.update(spectral_block(p.germ))
        verdict = class_test(p.germ, tau=p.tau) if block["spectrum"] is not None else None
        block["class"] = verdict_block(verdict)
        s_list.append(verdict.s_n_minus_1 if verdict else None)
        pts.append(block)
    chi_b = H.tau_total + dims.c_d
    chi_db = None
    if all(s is not None for s in s_list):
        chi_b, chi_db = euler_characteristic_report(H, s_list)
    all_in_class = all(b["class"] is not None and b["class"]["in_class"] for b in pts)

    doc = _header("hypersurface")
    doc["input"] = {"polynomial": format_polynomial(F, names), "variables": names, "d": H.d, "n": H.n}
    doc["points"] = pts
    doc["global"] = {
        "dimR": dims.dimR,
        "c_d": c_d(H.d, H.n),
        "h0_log": h0,
        "complete": True,
        "tau_total": dims.tau_total,
        "h1": dims.h1,
        "h2": dims.h2,
        "exact": dims.exact(),
        "chi_barlet": chi_b,
        "chi_dubois": chi_db,
        "hodge_graded": all_in_class,
    }
    return doc


def cmd_criteria(args) -> dict:
    entries = load_catalog(args.catalog)
    if args.names:
        wanted = set(args.names)
        unknown = wanted - {e.name for e in entries}
        if unknown:
            raise InputError(f"unknown catalog entries: {', '.join(sorted(unknown))}")
        entries = [e for e in entries if e.name in wanted]
    rows = []
    for e in entries:
        g = e.germ()
        mu, tau = milnor_number(g), tjurina_number(g)
        row = {"name": e.name, "kind": e.kind, "equation": e.equation, "mu": mu, "tau": tau,
               "matches_catalog": mu == e.mu and tau == e.tau}
        if g.dim == 1:
            delta, holds, eq = buchweitz_greuel_check(tau, mu, e.r, g.f.min_degree)
            row.update({"r": e.r, "m": g.f.min_degree, "delta": delta,
                        "buchweitz_greuel": holds, "curve_class_equality": eq})
        else:
            data = e.resolution_data()
            if find_weights(g) is not None:
                verdict = class_test(g, tau=tau)
            elif data is not None:
                verdict = class_test(g, s_n_minus_1=s_from_resolution(mu, data)[1], tau=tau)
            else:
                verdict = None
            row["class"] = verdict_block(verdict)
            if data is not None:
                bound, holds = wahl_check(mu, tau, data)
                row.update({"p_g": data.p_g, "g": data.g, "b": data.b, "wahl_bound": bound,
                            "wahl_holds": holds, "classified": surface_classification(mu, tau, data)})
        rows.append(row)
    doc = _header("criteria")
    doc["entries"] = rows
    if args.zariski:
        z = []
        for a in args.zariski:
            r = zariski_family_check(a, samples=args.tau_min_samples, seed=args.seed)
            z.append({"a": a, "mu": r.mu, "p_g": r.p_g, "tau_expected": r.tau_expected,
                      "tau_min": r.tau_min, "consistent": r.consistent})
        doc["zariski"] = z
    return doc


# ---------------------------------------------------------------------------
# regression corpus


def regression_values(seed: int = 0, samples: int = 32) -> dict:
    """Every numeric claim of the example corpus, as JSON-comparable values."""
    V3 = ["x", "y", "z"]

    def germ(s, names=V3):
        return LocalGerm(parse_polynomial(s, names))

    out = {}
    g27 = germ("x^7+x^4*y^2+x^2*y^4+y^7+z^2")
    out["ex27.parse.terms"] = len(g27.f.terms)
    out["ex27.parse.degree"] = g27.f.degree
    mu27, tau27 = milnor_number(g27), tjurina_number(g27)
    out["ex27.mu"] = mu27
    out["ex27.tau"] = tau27
    bound, holds = wahl_check(mu27, tau27, SurfaceResolutionData(3, 0, 2))
    out["ex27.wahl_bound"] = bound
    out["ex27.wahl_equality"] = holds and bound == tau27

    g324 = germ("x^3+y^10+z^19")
    out["ex324.mu"] = milnor_number(g324)
    out["ex324.p_g"] = hodge_numbers(spectrum_qh(g324))[2]
    tm = tau_min_search(g324, samples=samples, seed=seed).tau_min
    out["ex324.tau_min"] = tm
    out["ex324.generic_class_defect"] = class_test(g324, tau=tm).defect

    g40 = germ("x^5+y^11+z^2")
    w = find_weights(g40)
    out["ex40.weights"] = _rats(w)
    sp40 = spectrum_qh(g40)
    out["ex40.mu"] = milnor_number(g40)
    out["ex40.p_g"] = hodge_numbers(sp40)[2]
    tm = tau_min_search(g40, samples=samples, seed=seed).tau_min
    out["ex40.tau_min"] = tm
    out["ex40.generic_in_class"] = class_test(g40, tau=tm).in_class
    bound, holds = wahl_check(40, tm, SurfaceResolutionData(4, 0, 0))
    out["ex40.wahl_bound"] = bound
    out["ex40.wahl_strict"] = holds and tm > bound
    out["ex40.nemethi_holds"] = nemethi_check(g40)[2]
    out["ex40.f_degree"] = _rat(v_degree((0, 0, 0), w, 1))
    filt = induced_filtration(g40)
    out["ex40.generator"] = _rat(filt.generator)
    out["ex40.induced.x"] = _rat(filt.induced_degree((1, 0, 0)))
    out["ex40.induced.y"] = _rat(filt.induced_degree((0, 1, 0)))
    out["ex40.induced.y2"] = _rat(filt.induced_degree((0, 2, 0)))
    out["ex40.gaps"] = _rats(filt.gaps())

    # the Euler relation puts a quasi-homogeneous f in its weighted Jacobian combination
    curve = germ("x^5+y^11", ["x", "y"])
    wx, wy = find_weights(curve)
    fx, fy = curve.f.diff(0), curve.f.diff(1)
    x = parse_polynomial("x", ["x", "y"])
    y = parse_polynomial("y", ["x", "y"])
    comb = x * fx * wx + y * fy * wy
    out["euler.membership"] = local_membership(curve.f, [comb])

    for e in load_catalog():
        if e.name in ("A1", "T237", "E12-nqh"):
            g = e.germ()
            mu, tau = milnor_number(g), tjurina_number(g)
            out[f"classification.{e.name}"] = surface_classification(mu, tau, e.resolution_data())

    try:
        suspension_bound_check(germ("x^2+y^2", ["x", "y"]), 2)
        out["suspension.m2"] = "included"
    except (ValueError, NotQuasiHomogeneous):
        out["suspension.m2"] = "excluded"
    return out


def load_expectations(path=None) -> dict:
    if path is None:
        text = resources.files("hodgering").joinpath("data/expectations.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)["values"]


def regress(expect: dict, actual: dict) -> list[str]:
    diff = []
    for key in sorted(set(expect) | set(actual)):
        if key not in actual:
            diff.append(f"- {key}: expected {json.dumps(expect[key])}, not computed")
        elif key not in expect:
            diff.append(f"+ {key}: computed {json.dumps(actual[key])}, no expectation")
        elif expect[key] != actual[key]:
            diff.append(f"! {key}: expected {json.dumps(expect[key])}, got {json.dumps(actual[key])}")
    return diff


def cmd_regress(args) -> tuple[dict, int]:
    expect = load_expectations(args.expect)
    log.info("first gap asserted as 91/110; a printed value of 91/111 is treated as a typo, all other rungs have denominator 110")
    actual = regression_values(seed=args.seed, samples=args.tau_min_samples or 32)
    diff = regress(expect, actual)
    doc = _header("regress")
    doc["checked"] = len(expect)
    doc["passed"] = not diff
    doc["diff"] = diff
    return doc, (EXIT_MISMATCH if diff else EXIT_OK)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized searches (default: $HODGERING_SEED or 0)")
    common.add_argument("--tau-min-samples", type=int, default=0, metavar="N",
                        help="run the randomized tau_min search with N samples")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hodgering", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hodgering {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("local", parents=[common], help="mu, tau, spectrum and class test of a germ")
    s.add_argument("poly", help="polynomial file, '-' for stdin, or the polynomial text")
    s.add_argument("--vars", required=True)
    s.add_argument("--point", help="comma separated rational base point (default origin)")

    s = sub.add_parser("spectrum", parents=[common], help="spectrum and induced-filtration gaps")
    s.add_argument("poly")
    s.add_argument("--vars", required=True)
    s.add_argument("--point")

    s = sub.add_parser("hypersurface", parents=[common], help="Jacobian ring bookkeeping of V(F)")
    s.add_argument("poly")
    s.add_argument("--vars", required=True)
    s.add_argument("--degree", type=int)
    s.add_argument("--sing-file", help="singular points, one 'chart=<i>; coords=<...>' per line")

    s = sub.add_parser("criteria", parents=[common], help="class test and inequality checks on the catalog")
    s.add_argument("names", nargs="*", help="catalog entries (default: all)")
    s.add_argument("--catalog", help="alternative catalog JSON file")
    s.add_argument("--zariski", type=int, nargs="*", metavar="A")

    s = sub.add_parser("regress", parents=[common], help="run the example regression corpus")
    s.add_argument("--expect", help="alternative expectation JSON file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.seed is None:
            args.seed = default_seed()
        code = EXIT_OK
        if args.command == "local":
            doc = cmd_local(args)
        elif args.command == "spectrum":
            doc = cmd_spectrum(args)
        elif args.command == "hypersurface":
            doc = cmd_hypersurface(args)
        elif args.command == "criteria":
            doc = cmd_criteria(args)
        else:
            doc, code = cmd_regress(args)
    except (PolynomialSyntaxError, InputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonIsolated as exc:
        print(f"error: non-isolated singularity: {exc}", file=sys.stderr)
        return EXIT_NONISOLATED
    except (NotSingular, NotASingularPoint) as exc:
        print(f"error: not singular: {exc}", file=sys.stderr)
        return EXIT_NOTSINGULAR
    except IncompleteSingularList as exc:
        print(f"error: incomplete singular list: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except PrecondH0 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECOND_H0
    except NotQuasiHomogeneous as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_QH
    except ValueError as exc:  # e.g. a malformed HODGERING_SEED
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(render(doc, args.json))
    if code == EXIT_MISMATCH:
        for line in doc["diff"]:
            print(line, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
