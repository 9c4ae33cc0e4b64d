"""Command-line front end.

Exit codes: 0 success, 1 a check or verdict failed, 2 bad input, 3 a
resource guard tripped.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time

from . import growth, tc
from .files import (
    InputError,
    endo_to_dict,
    format_element,
    group_to_dict,
    load_endo,
    load_gens,
    load_group,
    parse_element,
)
from .group import GroupDataError, validate_endo, validate_group

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(obj, out) -> None:
    json.dump(obj, out, indent=2, sort_keys=True)
    out.write("\n")


def _load(args, need_endo=True, need_gens=False):
    G = load_group(args.group)
    rep = validate_group(G)
    if not rep.ok:
        raise GroupDataError(rep)
    phi = None
    if need_endo or getattr(args, "endo", None):
        if not args.endo:
            raise InputError("-e", "an endomorphism file is required")
        phi = load_endo(G, args.endo)
        rep = validate_endo(G, phi)
        if not rep.ok:
            raise GroupDataError(rep)
    S = None
    if need_gens:
        S = growth.GeneratingSet.from_elements(G, load_gens(G, args.gens))
    return G, phi, S


def _warn_generation(G, S) -> str:
    gen = growth.check_generates(G, S)
    if gen is growth.Generation.UNKNOWN:
        print("warning: could not verify that the generating set generates the group; "
              "counts describe the subgroup it generates", file=sys.stderr)
    return gen.value


def _ranks(G, phi) -> dict:
    return {G.cosets[a]: r for a, r in enumerate(tc.predicted_degrees(G, phi).ranks)}


def _slope_dict(rep: growth.SlopeReport) -> dict:
    return {
        "fitted_slope": round(rep.fitted_slope, 6) + 0.0,
        "predicted_degree": rep.predicted_degree,
        "window": list(rep.window),
        "residual": round(rep.residual, 6) + 0.0,
        "tolerance": rep.tolerance,
        "verdict": rep.verdict,
    }


def _series_csv(series: growth.GrowthSeries, arg="r", extra=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = [arg, "count"] + ([extra[0]] if extra else [])
    w.writerow(header)
    for i, (x, c) in enumerate(series.points):
        w.writerow([x, c] + ([extra[1][i]] if extra else []))
    return buf.getvalue()


def cmd_validate(args, out) -> int:
    G = load_group(args.group)
    report = {"group": {"ok": True, "failures": []}}
    rep = validate_group(G)
    report["group"] = {"ok": rep.ok, "failures": rep.failures}
    ok = rep.ok
    if args.endo and rep.ok:
        phi = load_endo(G, args.endo)
        erep = validate_endo(G, phi)
        report["endomorphism"] = {"ok": erep.ok, "failures": erep.failures}
        ok = ok and erep.ok
    _emit(report, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_predict(args, out) -> int:
    G, phi, _ = _load(args)
    p = tc.predicted_degrees(G, phi)
    _emit({"ranks": _ranks(G, phi), "fR_degree": p.fR_degree, "fQ_degree": p.fQ_degree,
           "ball_degree": p.ball_degree}, out)
    return EXIT_OK


def cmd_canon(args, out) -> int:
    G, phi, _ = _load(args)
    g = parse_element(G, args.element)
    if args.k:
        form = tc.quotient_canonical_form(G, phi, args.k, g)
    else:
        form = tc.canonical_form(G, phi, g)
    support, degree = tc.class_support_and_degree(G, phi, g)
    _emit({"element": format_element(G, g), "coset": G.cosets[form.coset],
           "residue": list(form.residue), "k": args.k,
           "support": sorted(G.cosets[a] for a in support), "class_degree": degree}, out)
    return EXIT_OK


def cmd_conjtest(args, out) -> int:
    G, phi, _ = _load(args)
    g, h = parse_element(G, args.g), parse_element(G, args.h)
    z = tc.find_conjugator(G, phi, g, h)
    _emit({"conjugate": z is not None,
           "conjugator": None if z is None else format_element(G, z)}, out)
    return EXIT_OK


def _growth_series(args, G, phi, S, ball):
    if args.series == "beta":
        return growth.beta_series(G, S, args.rmax, ball=ball), G.n
    if args.series == "fr":
        return (growth.f_R_series(G, S, phi, args.rmax, ball=ball),
                tc.predicted_degrees(G, phi).fR_degree)
    if not args.g0:
        raise InputError("--g0", "required for the class series")
    g0 = parse_element(G, args.g0)
    return (growth.class_series(G, S, phi, g0, args.rmax, ball=ball),
            tc.class_support_and_degree(G, phi, g0)[1])


def cmd_growth(args, out) -> int:
    G, phi, S = _load(args, need_endo=args.series != "beta", need_gens=True)
    _warn_generation(G, S)
    ball = growth.bfs_ball(G, S, args.rmax)
    series, predicted = _growth_series(args, G, phi, S, ball)
    window = tuple(args.window) if args.window else None
    try:
        slope = growth.slope_fit(series, window, predicted, args.tolerance)
    except ValueError as exc:
        slope = None
        print(f"warning: no slope fit ({exc})", file=sys.stderr)
    if args.format == "csv":
        out.write(_series_csv(series))
        if slope:
            print(f"slope {slope.fitted_slope:.4f} vs degree {predicted}: {slope.verdict}",
                  file=sys.stderr)
    else:
        _emit({"series": series.kind.value, "points": series.points,
               "slope": _slope_dict(slope) if slope else None}, out)
    return EXIT_OK


def cmd_quotient(args, out) -> int:
    G, phi, _ = _load(args)
    series = growth.quotient_series(G, phi, args.kmax)
    brute = growth.quotient_series(G, phi, args.kmax, brute=True) if args.brute else None
    agree = brute is None or brute.points == series.points
    if args.format == "csv":
        extra = ("brute", brute.counts()) if brute else None
        out.write(_series_csv(series, "k", extra))
    else:
        doc = {"series": "quotient", "points": series.points,
               "predicted_degree": tc.predicted_degrees(G, phi).fQ_degree}
        if brute:
            doc["brute_points"] = brute.points
            doc["agree"] = agree
        _emit(doc, out)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_reidemeister(args, out) -> int:
    G, phi, _ = _load(args)
    out.write(f"{tc.reidemeister_number(G, phi)}\n")
    return EXIT_OK


def build_report(G, phi, S, rmax: int, kmax: int, tolerance: float,
                 qtolerance: float) -> dict:
    """Predictions against measured slopes; deterministic apart from ``timing``."""
    t0 = time.perf_counter()
    inputs = {"group": group_to_dict(G), "endomorphism": endo_to_dict(phi),
              "generators": [format_element(G, s) for s in S.elements],
              "rmax": rmax, "kmax": kmax, "tolerance": tolerance,
              "quotient_tolerance": qtolerance}
    digest = hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest()
    pred = tc.predicted_degrees(G, phi)
    ball = growth.bfs_ball(G, S, rmax)
    checks = []

    def check(name, series, degree, window, tol):
        try:
            rep = growth.slope_fit(series, window, degree, tol)
            checks.append({"name": name, **_slope_dict(rep)})
        except ValueError as exc:
            checks.append({"name": name, "predicted_degree": degree, "verdict": "fail",
                           "error": str(exc)})

    rwin = (max(1, math.ceil(rmax / 3)), rmax)
    beta = growth.beta_series(G, S, rmax, ball=ball)
    fr = growth.f_R_series(G, S, phi, rmax, ball=ball)
    check("beta", beta, pred.ball_degree, rwin, tolerance)
    check("f_R", fr, pred.fR_degree, rwin, tolerance)
    class_points = {}
    for a in range(G.m):
        g0 = G.coset_element(a)
        cs = growth.class_series(G, S, phi, g0, rmax, ball=ball)
        _, deg = tc.class_support_and_degree(G, phi, g0)
        label = format_element(G, g0)
        class_points[label] = cs.points
        check(f"class[{label}]", cs, deg, rwin, tolerance)
    fq = growth.quotient_series(G, phi, kmax)
    R = tc.reidemeister_number(G, phi)
    if pred.fQ_degree == 0:
        # f_Q can be periodic in k here; it is bounded by R instead
        bounded = max(fq.counts()) <= R.value
        checks.append({"name": "f_Q", "predicted_degree": 0, "bound": R.value,
                       "verdict": "pass" if bounded else "fail"})
    else:
        check("f_Q", fq, pred.fQ_degree, (max(1, math.ceil(kmax / 3)), kmax), qtolerance)
    return {
        "inputs_digest": digest,
        "generation": growth.check_generates(G, S).value,
        "predicted": {"ranks": _ranks(G, phi), "fR_degree": pred.fR_degree,
                      "fQ_degree": pred.fQ_degree, "ball_degree": pred.ball_degree},
        "reidemeister": str(R),
        "series": {"beta": beta.points, "f_R": fr.points, "class": class_points,
                   "f_Q": fq.points},
        "checks": checks,
        "ok": all(c["verdict"] == "pass" for c in checks),
        "timing": {"seconds": round(time.perf_counter() - t0, 3)},
    }


def cmd_verify(args, out) -> int:
    G, phi, S = _load(args, need_gens=True)
    _warn_generation(G, S)
    report = build_report(G, phi, S, args.rmax, args.kmax, args.tolerance,
                          args.quotient_tolerance)
    if args.output:
        with open(args.output, "w") as f:
            _emit(report, f)
    else:
        _emit(report, out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistgrowth",
                                description="Twisted conjugacy growth of virtually abelian groups")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, endo=True, gens=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("group", help="group JSON file")
        sp.add_argument("-e", "--endo", required=endo, help="endomorphism JSON file")
        if gens:
            sp.add_argument("-S", "--gens", required=True, help="generating set JSON file")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check group (and endomorphism) data", endo=False)
    add("predict", cmd_predict, "per-coset ranks and predicted degrees")
    sp = add("canon", cmd_canon, "canonical form of an element's twisted class")
    sp.add_argument("--element", required=True, help='element literal "x1,x2;label"')
    sp.add_argument("-k", type=int, default=None, help="canonical form in G/(kZ)^n")
    sp = add("conjtest", cmd_conjtest, "decide twisted conjugacy of two elements")
    sp.add_argument("--g", required=True)
    sp.add_argument("--h", required=True)
    sp = add("growth", cmd_growth, "a growth series with its slope fit", endo=False, gens=True)
    sp.add_argument("--series", choices=["beta", "fr", "class"], required=True)
    sp.add_argument("--g0", help="class representative for --series class")
    sp.add_argument("--rmax", type=int, required=True)
    sp.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
    sp.add_argument("--tolerance", type=float, default=growth.DEFAULT_TOLERANCE)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp = add("quotient", cmd_quotient, "quotient Reidemeister numbers f_Q(1..K)")
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--brute", action="store_true", help="compare with brute-force orbit counts")
    sp.add_argument("--format", choices=["csv", "json"], default="json")
    add("reidemeister", cmd_reidemeister, "Reidemeister number (or 'infinite')")
    sp = add("verify", cmd_verify, "predictions vs measured growth", gens=True)
    sp.add_argument("--rmax", type=int, default=30)
    sp.add_argument("--kmax", type=int, default=24)
    sp.add_argument("--tolerance", type=float, default=growth.DEFAULT_TOLERANCE)
    sp.add_argument("--quotient-tolerance", type=float, default=0.25)
    sp.add_argument("-o", "--output", help="write the JSON report here")
    return p


def execute(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, GroupDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (tc.ResourceLimitError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
