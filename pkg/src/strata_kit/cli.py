"""``strata-kit`` command line front end."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from . import filtration as flt
from .errors import ParseError, StrataKitError
from .katz import companion_data
from .serialization import (JobSpec, dumps, matrix_terms, parse_input, parse_point, parse_rational, point_json,
                            render_rational, spec_json, terms_json)
from .slope import (depth_map, frenkel_gross_check, is_regular_singular, katz_boundedness_trace,
                    oracle_slope, pullback_connection, slope, stratum_search)
from .strata import GaugeElement, Stratum, associates_at, contains, is_fundamental

COMMANDS = ("slope", "stratum", "depth-map", "katz", "pullback", "check-fundamental",
            "regular-singular", "associates")
MAX_GRID_DENOM = 24


def stratum_json(s: Stratum | None) -> dict | None:
    if s is None:
        return None
    return {"point": point_json(s.point), "depth": render_rational(s.depth),
            "rep": terms_json(matrix_terms(s.rep)), "fundamental": is_fundamental(s)}


def certificate_json(cert) -> dict | None:
    if cert is None:
        return None
    return {"stratum": stratum_json(cert.stratum), "phase": cert.phase, "reductions": cert.reductions,
            "gauge": terms_json(matrix_terms(cert.gauge.matrix)),
            "gauged_connection": terms_json(matrix_terms(cert.connection.matrix))}


def _methods(methods: dict) -> dict:
    return {k: render_rational(v) for k, v in methods.items()}


def _slope_payload(A, seed) -> dict:
    rep = slope(A, seed=seed)
    return {"slope": render_rational(rep.slope), "regular_singular": rep.regular_singular,
            "methods": _methods(rep.methods), "agreement": rep.agreement,
            "stratum": stratum_json(rep.stratum), "certificate": certificate_json(rep.certificate),
            "diagnostics": rep.diagnostics}


def _points(args, G) -> list:
    return [parse_point(p, G.rank) for p in (args.point or [])]


def _depth(args) -> Fraction | None:
    return None if args.depth is None else parse_rational(args.depth, "--depth")


def _stratum_at(A, x, depth) -> Stratum:
    if depth is None:
        return flt.leading_representative(A, x)
    rep = flt.homogeneous_part(flt.shifted_matrix(A, x), x, A.group, -depth)
    return Stratum(A.group, x, depth, rep)


def run(command: str, spec: JobSpec, args) -> dict:
    """Execute ``command`` and return the payload part of the report."""
    A = spec.connection()
    G = A.group
    seed = args.seed
    if command == "slope":
        return _slope_payload(A, seed)
    if command == "stratum":
        target = oracle_slope(A, seed)
        out = stratum_search(A, target)
        return {"target": render_rational(target), "certificate": certificate_json(out.certificate),
                "depth_trace": [render_rational(d) for d in out.depth_trace],
                "diagnostics": out.diagnostics}
    if command == "depth-map":
        N = args.grid_denom
        if not 1 <= N <= MAX_GRID_DENOM:
            raise ParseError(f"--grid-denom must lie in [1, {MAX_GRID_DENOM}], got {N}")
        entries = depth_map(A, N)
        best = min(e.depth for e in entries)
        minimizers = sorted({tuple(e.point.coords) for e in entries if e.depth == best})
        return {"grid_denominator": N,
                "entries": [{"point": point_json(e.point), "depth": render_rational(e.depth),
                             "label": e.label} for e in entries],
                "minimum": render_rational(best),
                "minimizers": [[render_rational(c) for c in p] for p in minimizers]}
    if command == "katz":
        cd = companion_data(A.matrix, seed)
        rate = _depth(args)
        if rate is None:
            rate = cd.slope
        trace = katz_boundedness_trace(A, rate, args.horizon)
        return {"katz_slope": render_rational(cd.slope),
                "cyclic_vector": [str(c) for c in cd.cyclic_vector],
                "coefficient_valuations": [None if v == float("inf") else v for v in cd.valuations],
                "trace": {"rate": render_rational(trace.rate), "horizon": trace.horizon,
                          "iterate_valuations": trace.iterate_valuations, "bounded": trace.bounded}}
    if command == "pullback":
        e = args.e
        if e is None or e < 1:
            raise ParseError("pullback needs --e N with N >= 1")
        B = pullback_connection(A, e)
        payload = _slope_payload(B, seed)
        payload["e"] = e
        payload["pulled_back"] = terms_json(matrix_terms(B.matrix))
        fg = frenkel_gross_check(B, e)
        payload["frenkel_gross"] = None if fg is None else render_rational(fg)
        return payload
    if command == "check-fundamental":
        pts = _points(args, G)
        if len(pts) != 1:
            raise ParseError("check-fundamental needs exactly one --point")
        s = _stratum_at(A, pts[0], _depth(args))
        return {"stratum": stratum_json(s), "contained": contains(A, s), "fundamental": is_fundamental(s),
                "depth_at_point": render_rational(flt.depth_at(A, pts[0]))}
    if command == "regular-singular":
        r = oracle_slope(A, seed)
        return {"regular_singular": is_regular_singular(A), "slope": render_rational(r)}
    if command == "associates":
        pts = _points(args, G)
        if len(pts) != 2:
            raise ParseError("associates needs exactly two --point options")
        depth = _depth(args)
        if depth is None:
            depth = flt.depth_at(A, pts[0])
        s1, s2 = (_stratum_at(A, x, depth) for x in pts)
        return {"strata": [stratum_json(s1), stratum_json(s2)],
                "contained": [contains(A, s1), contains(A, s2)],
                "associates": associates_at(GaugeElement.identity(G), s1, s2)}
    raise ParseError(f"unknown command {command!r}")  # pragma: no cover - argparse guards this


def summary(command: str, payload: dict) -> str:
    """Short human-readable rendering of a payload."""
    lines = []
    if "slope" in payload:
        lines.append(f"slope: {payload['slope']}")
    if "regular_singular" in payload:
        lines.append(f"regular singular: {payload['regular_singular']}")
    if "methods" in payload:
        lines.append("methods: " + ", ".join(f"{k}={v}" for k, v in payload["methods"].items()))
    cert = payload.get("certificate")
    st = payload.get("stratum") or (cert or {}).get("stratum")
    if st:
        pt = "(" + ", ".join(st["point"]) + ")"
        lines.append(f"stratum: point {pt}, depth {st['depth']}, fundamental {st['fundamental']}")
    if cert:
        lines.append(f"certificate: phase {cert['phase']}, reductions {cert['reductions']}")
    if command == "depth-map":
        for e in payload["entries"]:
            lines.append(f"  ({', '.join(e['point'])})  depth {e['depth']}  {e['label']}")
        mins = ["(" + ", ".join(p) + ")" for p in payload["minimizers"]]
        lines.append(f"minimum {payload['minimum']} at " + " ".join(mins))
    if command == "katz":
        t = payload["trace"]
        lines.append(f"katz slope: {payload['katz_slope']}")
        lines.append(f"trace (rate {t['rate']}, horizon {t['horizon']}): bounded {t['bounded']}")
        lines.append("s_i: " + " ".join(str(v) for v in t["iterate_valuations"]))
    if command == "stratum":
        lines.append(f"target: {payload['target']}")
        lines.append("depth trace: " + " ".join(payload["depth_trace"]))
    if command == "check-fundamental":
        lines.append(f"contained: {payload['contained']}")
    if command == "associates":
        lines.append(f"associates: {payload['associates']}")
    if payload.get("frenkel_gross") is not None or command == "pullback":
        lines.append(f"frenkel-gross reading: {payload.get('frenkel_gross')}")
    for d in payload.get("diagnostics", []):
        lines.append(f"note: {d}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strata-kit", description="Exact slopes and fundamental strata "
                                "of formal flat G-bundles (G = GL_n, SL_n, Sp_2n).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="job file (JSON), or - for stdin")
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    p.add_argument("--e", type=int, default=None, help="cover degree for pullback")
    p.add_argument("--point", action="append", help="apartment point a1,a2,... (repeat for associates)")
    p.add_argument("--depth", default=None, help="depth p/q (check-fundamental, associates, katz rate)")
    p.add_argument("--horizon", type=int, default=None, help="iterations for the boundedness trace")
    p.add_argument("--grid-denom", type=int, default=8, help="depth-map grid denominator (max 24)")
    p.add_argument("--seed", type=int, default=0, help="seed for random cyclic-vector candidates")
    return p


def _merge_params(args, spec: JobSpec) -> None:
    """Command-line flags win; missing ones fall back to the job's params."""
    prm = spec.params
    if args.e is None and "e" in prm:
        args.e = int(prm["e"])
    if args.point is None and "point" in prm:
        pts = prm["point"]
        args.point = [pts] if isinstance(pts, str) else list(pts)
    if args.depth is None and "depth" in prm:
        args.depth = str(prm["depth"])
    if args.horizon is None and "horizon" in prm:
        args.horizon = int(prm["horizon"])


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as exc:
        print(f"error [parse]: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return ParseError.exit_code
    try:
        spec = parse_input(text)
        _merge_params(args, spec)
        payload = run(args.command, spec, args)
    except StrataKitError as exc:
        if args.json:
            print(json.dumps({"error": {"code": exc.code, "message": str(exc),
                                        "evidence": {k: str(v) for k, v in getattr(exc, "evidence", {}).items()}}},
                             indent=2))
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code
    report = {"version": __version__, "command": args.command, "job": spec_json(spec), "result": payload,
              "timing_ms": round(1000 * (time.perf_counter() - started), 3)}
    if args.json:
        print(dumps(report))
    else:
        print(summary(args.command, payload))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
