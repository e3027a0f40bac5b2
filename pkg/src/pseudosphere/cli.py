"""Command-line front end: verification manifests, spectrum tables,
and algebra/PDE cross-check reports.

Exit codes: 0 all jobs passed, 1 at least one failed, 2 usage error.
Rationals are serialized exactly as "num/den" strings.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .weylops import Metric
from .model import (
    ModelParams,
    RELATION_FAMILIES,
    default_indices,
    verify_relation,
    discover_linear_relation,
)
from .phase import verify_classical_relation, correspondence_check


def _rat(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _parse_rats(text):
    try:
        return tuple(Fraction(tok) for tok in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational list {text!r}: {exc}")


def _parse_signature(text):
    mapping = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}
    try:
        return tuple(mapping[tok] for tok in text.split(","))
    except KeyError:
        raise argparse.ArgumentTypeError(f"bad signature {text!r}")


DEFAULT_MANIFEST = {
    "dim": 3,
    "signatures": "all",
    "params": [
        {"a": ["1/4", "1/4", "1/4"]},
        {"l": ["1/2", "1/2", "13/2"]},
    ],
    "relations": list(RELATION_FAMILIES),
    "options": {"reduce_mod_constraint": True, "hbar": "formal"},
}


def _manifest_metrics(manifest):
    dim = manifest.get("dim", 3)
    sigs = manifest.get("signatures", "all")
    if sigs == "all":
        return [Metric(d) for d in itertools.product((1, -1), repeat=dim)]
    return [Metric(tuple(s)) for s in sigs]


def _manifest_params(manifest):
    out = []
    for entry in manifest.get("params", []):
        if "l" in entry:
            out.append(ModelParams.from_l(tuple(Fraction(x) for x in entry["l"])))
        else:
            out.append(ModelParams.from_a(tuple(Fraction(x) for x in entry["a"])))
    return out


def _load_manifest(path):
    if path is None:
        return DEFAULT_MANIFEST
    with open(path) as fh:
        return json.load(fh)


def _write_report(path, report):
    text = json.dumps(report, indent=2, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _summarize(records):
    failed = sum(1 for r in records if not r["passed"])
    return {"jobs": len(records), "passed": len(records) - failed,
            "failed": failed}


def _quantum_job(args):
    family, idx, diag, a = args
    rep = verify_relation(family, idx, Metric(diag), ModelParams.from_a(a))
    return {"kind": "quantum", "family": family, "indices": list(idx),
            "signature": list(diag), "a": [_rat(x) for x in a],
            "passed": rep.passed, "reduced": rep.reduced,
            "elapsed_ms": rep.elapsed_ms}


def cmd_verify_algebra(args):
    manifest = _load_manifest(args.manifest)
    metrics = _manifest_metrics(manifest)
    params = _manifest_params(manifest)
    dim = manifest.get("dim", 3)
    families = [f for f in manifest.get("relations", RELATION_FAMILIES)]
    jobs = []
    for fam in families:
        try:
            idx = default_indices(fam, dim)
        except ValueError:
            continue  # family needs a higher dimension than the manifest's
        for metric in metrics:
            for p in params:
                jobs.append((fam, idx, metric.diag, p.a))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_quantum_job, jobs))
    else:
        records = [_quantum_job(j) for j in jobs]
    # the discovered linear relation, per signature, on the first params
    rels = []
    if params:
        for metric in metrics:
            rel = discover_linear_relation(metric, params[0])
            rels.append({"signature": list(metric.diag),
                         "alpha": {f"{i}{j}": _rat(c)
                                   for (i, j), c in sorted(rel.alpha.items())},
                         "alpha_0": _rat(rel.alpha_0),
                         "alpha_00": _rat(rel.alpha_00)})
        consistent = len({json.dumps({k: v for k, v in r.items()
                                      if k != "signature"}) for r in rels}) == 1
        records.append({"kind": "linear_relation_metric_independence",
                        "passed": consistent, "relations": rels})
    report = {"tool": "pseudosphere", "version": __version__,
              "command": "verify-algebra", "records": records,
              "summary": _summarize(records)}
    _write_report(args.out, report)
    return 0 if report["summary"]["failed"] == 0 else 1


def cmd_classical_check(args):
    manifest = _load_manifest(args.manifest)
    metrics = _manifest_metrics(manifest)
    params = _manifest_params(manifest)
    dim = manifest.get("dim", 3)
    records = []
    for fam in manifest.get("relations", RELATION_FAMILIES):
        try:
            idx = default_indices(fam, dim)
        except ValueError:
            continue
        for metric in metrics:
            for p in params:
                r = verify_classical_relation(fam, idx, metric, p)
                r.update({"kind": "classical", "signature": list(metric.diag),
                          "a": [_rat(x) for x in p.a],
                          "indices": list(r["indices"])})
                records.append(r)
    for metric in metrics:
        for p in params:
            cc = correspondence_check(metric, p)
            records.append({"kind": "correspondence",
                            "signature": list(metric.diag),
                            "a": [_rat(x) for x in p.a],
                            "passed": cc["passed"],
                            "global_sign": cc["global_sign"]})
    report = {"tool": "pseudosphere", "version": __version__,
              "command": "classical-check", "records": records,
              "summary": _summarize(records)}
    _write_report(args.out, report)
    return 0 if report["summary"]["failed"] == 0 else 1


def _spectrum_rows(sols, flip):
    rows = []
    for s in sols:
        E_phys = flip * s.E
        rows.append({"epsilon1": s.signs[0], "epsilon2": s.signs[1],
                     "epsilon3": s.signs[2], "p": s.p,
                     "E": _rat(E_phys), "degeneracy": s.degeneracy,
                     "certified": s.certified})
    return rows


def cmd_racah_spectrum(args):
    from .racah3 import find_spectrum
    params = ModelParams.from_l(args.l)
    mode = args.signs
    flip = -1 if mode == "s2" else 1
    sols = find_spectrum(params, args.max_p, sign_mode=mode)
    rows = _spectrum_rows(sols, flip)
    if args.out and args.out.endswith(".json"):
        _write_report(args.out, {"tool": "pseudosphere", "version": __version__,
                                 "command": "racah-spectrum", "rows": rows})
    else:
        fh = open(args.out, "w", newline="") if args.out else sys.stdout
        try:
            w = csv.DictWriter(fh, fieldnames=["epsilon1", "epsilon2",
                                               "epsilon3", "p", "E",
                                               "degeneracy", "certified"])
            w.writeheader()
            w.writerows(rows)
        finally:
            if args.out:
                fh.close()
    return 0


def cmd_pde_check(args):
    from .specsolver import (GridSpec, pde_spectrum, group_numeric,
                             analytic_spectrum_h2, analytic_spectrum_s2,
                             ConvergenceError)
    grid = GridSpec(nodes=args.grid, levels=args.levels)
    counts = (args.counts, args.counts)
    try:
        numeric = pde_spectrum(args.surface, args.l, counts=counts, grid=grid)
    except ConvergenceError as exc:
        print(f"pde-check: {exc}", file=sys.stderr)
        return 1
    if args.surface == "h2":
        analytic = analytic_spectrum_h2(args.l)
    else:
        analytic = analytic_spectrum_s2(args.l, max_levels=args.counts)
    groups = group_numeric(numeric)
    records = []
    ok_all = True
    for lv in analytic:
        target = float(lv.E)
        hit = next((g for g in groups
                    if abs(g[0] - target) <= 1e-3 * max(1.0, abs(target))), None)
        ok = hit is not None and (args.surface == "s2" or hit[1] == lv.degeneracy)
        ok_all &= ok
        records.append({"P": lv.P, "E_analytic": _rat(lv.E),
                        "E_numeric": None if hit is None else hit[0],
                        "multiplicity": None if hit is None else hit[1],
                        "degeneracy": lv.degeneracy, "passed": ok})
    report = {"tool": "pseudosphere", "version": __version__,
              "command": "pde-check", "surface": args.surface,
              "l": [_rat(x) for x in args.l], "records": records,
              "numeric_levels": [{"E": float(lv.E), "n": lv.n, "m": lv.m}
                                 for lv in numeric],
              "summary": _summarize(records) if records else
              {"jobs": 0, "passed": 0, "failed": 0}}
    _write_report(args.out, report)
    return 0 if ok_all else 1


def cmd_cross_check(args):
    from .racah3 import match_spectrum_to_signature
    metric = Metric(args.signature)
    params = ModelParams.from_l(args.l)
    rep = match_spectrum_to_signature(metric, params, max_p=args.max_p)
    report = {"tool": "pseudosphere", "version": __version__,
              "command": "cross-check", "l": [_rat(x) for x in args.l],
              "signature": list(args.signature),
              "surface": rep["surface"],
              "analytic_levels": [[_rat(E), d] for E, d in rep["analytic_levels"]],
              "matches": rep["matches"], "vacuous": rep["vacuous"],
              "passed": rep["passed"]}
    _write_report(args.out, report)
    return 0 if rep["passed"] else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="pseudosphere",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-algebra", help="verify the quantum relations")
    p.add_argument("--manifest")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_algebra)

    p = sub.add_parser("classical-check", help="verify the classical algebra")
    p.add_argument("--manifest")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_classical_check)

    p = sub.add_parser("racah-spectrum", help="algebraic spectrum table")
    p.add_argument("--l", type=_parse_rats, required=True)
    p.add_argument("--signs", default="all",
                   choices=["all", "h2", "s2"])
    p.add_argument("--max-p", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_racah_spectrum)

    p = sub.add_parser("pde-check", help="numeric vs analytic PDE spectrum")
    p.add_argument("--surface", required=True, choices=["h2", "s2"])
    p.add_argument("--l", type=_parse_rats, required=True)
    p.add_argument("--grid", type=int, default=2048)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--counts", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pde_check)

    p = sub.add_parser("cross-check", help="match algebra to signature")
    p.add_argument("--l", type=_parse_rats, required=True)
    p.add_argument("--signature", type=_parse_signature, required=True)
    p.add_argument("--max-p", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cross_check)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help/--version
        return int(exc.code or 0)
    try:
        if args.command in ("racah-spectrum", "pde-check", "cross-check"):
            if len(args.l) != 3:
                print("expected exactly three l values", file=sys.stderr)
                return 2
        if args.command == "cross-check" and len(args.signature) != 3:
            print("expected a three-entry signature", file=sys.stderr)
            return 2
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"pseudosphere: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
