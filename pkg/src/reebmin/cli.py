"""Command-line interface: parse singularity specs, dispatch, report.

Specs are JSON documents (schema "reebmin/1") with exact rationals written
as "p/q" strings and reals as decimal strings.  Results go to stdout as a
small table and, with --out, to a JSON report whose numbers are formatted
deterministically (rationals exact, floats at 12 significant digits).
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import _exact as ex
from .approx import Enclosure, cone_rational_approx, dirichlet_signed, verify_cone, verify_signed
from .cxonevol import PolyhedralDivisor, minimize_c1, nvol_c1, vol_xi_c1
from .downgrade import (
    BinomialHypersurface,
    DowngradeData,
    WeightMatrix,
    binomial_to_toric,
    complete_sequence,
    downgrade_coefficient,
    downgrade_sigma,
)
from .errors import ReebminError
from .futaki import semistable_scan
from .oracle import CountSeries, count_cxone, count_toric, vol_estimate
from .toricvol import (
    ReebVector,
    ToricData,
    certify_barycenter,
    grad_vol,
    log_discrepancy,
    minimize,
    nvol,
    vol_xi,
)

SCHEMA = "reebmin/1"
COMMANDS = ("minimize", "eval", "futaki", "downgrade", "binom2toric", "oracle", "approx")


class SpecError(Exception):
    """Malformed problem specification (exit code 2)."""


def fmt(x):
    """Deterministic rendering: exact rationals verbatim, floats 12 digits."""
    if isinstance(x, (Fraction, int)):
        return str(x)
    return format(float(x), ".12g")


def fmt_vec(v):
    return [fmt(x) for x in v]


def _rat(x):
    try:
        return ex.frac(x) if not isinstance(x, float) else Fraction(x)
    except (ValueError, TypeError) as e:
        raise SpecError(f"bad rational {x!r}: {e}") from None


def _real(x):
    if isinstance(x, str):
        return float(Fraction(x)) if "/" in x else float(x)
    return float(x)


def _load_spec(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON in {path}: {e}") from None
    if doc.get("schema") != SCHEMA:
        raise SpecError(f'spec must declare "schema": "{SCHEMA}"')
    if "kind" not in doc:
        raise SpecError('spec needs a "kind"')
    return doc


def _toric_from_spec(doc):
    u0 = [_rat(x) for x in doc["u0"]]
    if "sigma_dual_rays" in doc:
        return ToricData.from_dual_cone([[_rat(x) for x in r] for r in doc["sigma_dual_rays"]], u0)
    if "sigma_rays" in doc:
        return ToricData.from_cone([[_rat(x) for x in r] for r in doc["sigma_rays"]], u0)
    raise SpecError("toric spec needs sigma_dual_rays or sigma_rays")


def _divisor_from_spec(doc):
    tail = [[_rat(x) for x in r] for r in doc["tail_rays"]]
    pts = []
    for entry in doc["points"]:
        pts.append((entry.get("label", str(len(pts))), [[_rat(x) for x in v] for v in entry["vertices"]]))
    return PolyhedralDivisor.from_vertex_lists(tail, pts)


def _data_from_spec(doc):
    """Returns (kind, data, u0) for volume-bearing spec kinds."""
    kind = doc["kind"]
    if kind == "toric":
        t = _toric_from_spec(doc)
        return "toric", t, t.u0
    if kind == "binomial":
        t = binomial_to_toric(BinomialHypersurface(doc["a"], doc["b"]))
        return "toric", t, t.u0
    if kind == "complexity_one":
        d = _divisor_from_spec(doc)
        return "complexity_one", d, tuple(_rat(x) for x in doc["u0"])
    raise SpecError(f"command does not accept kind {kind!r}")


def _xi_from(doc, name="xi"):
    if name not in doc:
        raise SpecError(f'spec needs "{name}"')
    vals = doc[name]
    if all(isinstance(x, (int, str)) and ("/" in x if isinstance(x, str) else True) for x in vals):
        try:
            return ReebVector.rational([_rat(x) for x in vals])
        except SpecError:
            pass
    return ReebVector.real([_real(x) for x in vals])


def _poly_json(poly):
    return {
        "vertices": [fmt_vec(v) for v in poly.compact_vertices],
        "tail_rays": [list(r) for r in poly.tail.rays],
    }


def run(command, doc, options):
    """Dispatch one command on a parsed spec; returns the report dict."""
    if command == "minimize":
        kind, data, u0 = _data_from_spec(doc)
        if kind == "toric":
            res = minimize(data, tolerance=options.tol, max_iter=options.max_iter,
                           precision=options.precision)
        else:
            res = minimize_c1(data, u0, tolerance=options.tol, max_iter=options.max_iter,
                              precision=options.precision)
        results = {
            "xi_star": fmt_vec(res.xi_star.xi),
            "nvol_star": fmt(res.nvol_star),
            "grad_norm": fmt(res.grad_norm),
            "barycenter_residual": fmt(res.barycenter_residual),
            "iterations": res.iterations,
            "converged": res.converged,
            "provenance": "closed_form_newton" if kind == "toric" else "finite_difference_newton",
        }
        if kind == "complexity_one" and "F" in doc:
            F = WeightMatrix(doc["F"])
            results["ambient_weights"] = fmt_vec(
                [sum(a * b for a, b in zip(row, res.xi_star.xi)) for row in F.rows]
            )
        return results
    if command == "eval":
        kind, data, u0 = _data_from_spec(doc)
        xi = _xi_from(doc)
        if kind == "toric":
            return {
                "log_discrepancy": fmt(log_discrepancy(data, xi)),
                "vol": fmt(vol_xi(data, xi)),
                "nvol": fmt(nvol(data, xi)),
                "grad_vol": fmt_vec(grad_vol(data, xi)),
                "barycenter_residual": fmt(certify_barycenter(data, xi)),
                "provenance": "closed_form",
            }
        a = sum(x * y for x, y in zip(u0, xi.xi))
        return {
            "log_discrepancy": fmt(a),
            "vol": fmt(vol_xi_c1(data, xi)),
            "nvol": fmt(nvol_c1(data, u0, xi)),
            "provenance": "closed_form",
        }
    if command == "futaki":
        kind, data, u0 = _data_from_spec(doc)
        xi0 = _xi_from(doc, "xi0")
        etas = [[_real(x) for x in e] for e in doc.get("etas", [])]
        if kind == "toric":
            report = semistable_scan(data, xi0, etas, tolerance=options.tol)
        else:
            report = semistable_scan(data, xi0, etas, tolerance=options.tol, u0=u0)
        return {
            "entries": [
                {"eta": fmt_vec(eta), "fut": fmt(f), "normalized_eta": fmt_vec(nd)}
                for eta, f, nd in report.entries
            ],
            "min_fut": fmt(report.min_fut),
            "all_nonnegative": report.all_nonnegative,
            "tolerance": fmt(report.tolerance),
            "note": report.note,
            "provenance": "closed_form" if kind == "toric" else "finite_difference",
        }
    if command == "downgrade":
        if doc["kind"] != "downgrade":
            raise SpecError("downgrade command needs a downgrade spec")
        F = WeightMatrix([[int(x) for x in row] for row in doc["F"]])
        if "P" in doc and "s" in doc:
            data = DowngradeData(F, doc["P"], doc["s"])
        else:
            data = complete_sequence(F)
        sigma, sigma_dual = downgrade_sigma(data)
        fibers = doc.get("fiber_points", [])
        labels = doc.get("labels", [str(p) for p in fibers])
        coeffs = {}
        for label, p in zip(labels, fibers):
            coeffs[label] = _poly_json(downgrade_coefficient(data, [int(x) for x in p]))
        return {
            "P": [list(r) for r in data.P],
            "s": [list(r) for r in data.s],
            "sigma_rays": [list(r) for r in sigma.rays],
            "sigma_dual_rays": [list(r) for r in sigma_dual.rays],
            "coefficients": coeffs,
            "provenance": "exact",
        }
    if command == "binom2toric":
        if doc["kind"] != "binomial":
            raise SpecError("binom2toric needs a binomial spec")
        t = binomial_to_toric(BinomialHypersurface(doc["a"], doc["b"]))
        return {
            "n": t.n,
            "sigma_rays": [list(r) for r in t.sigma.rays],
            "sigma_dual_rays": [list(r) for r in t.sigma_dual.rays],
            "u0": fmt_vec(t.u0),
            "provenance": "exact",
        }
    if command == "oracle":
        kind, data, u0 = _data_from_spec(doc)
        xi = _xi_from(doc)
        ms = doc.get("m_list", options.m_list)
        if not ms:
            raise SpecError('oracle needs "m_list"')
        budget = int(doc.get("budget", 10**8))
        counter = count_toric if kind == "toric" else count_cxone
        if options.threads > 1:
            with ThreadPoolExecutor(max_workers=options.threads) as pool:
                counts = list(pool.map(lambda m: counter(data, xi, m, budget), ms))
        else:
            counts = [counter(data, xi, m, budget) for m in ms]
        series = CountSeries.from_counts(data.n, list(zip(ms, counts)))
        out = {
            "m_list": [fmt(m) for m in ms],
            "counts": counts,
            "estimates": fmt_vec(series.estimates),
            "provenance": "lattice_count",
        }
        if len(ms) >= 3:
            est, diag = vol_estimate(series)
            out["extrapolated"] = fmt(est)
            out["monotone_counts"] = diag["monotone_counts"]
        return out
    if command == "approx":
        if doc["kind"] != "approx":
            raise SpecError("approx command needs an approx spec")
        targets = []
        for entry in doc["target"]:
            if isinstance(entry, dict):
                targets.append(Enclosure.from_decimal(entry["value"], entry.get("radius")))
            else:
                targets.append(entry)
        epsilon = _rat(doc.get("epsilon", "1/2"))
        q_max = int(doc.get("q_max", 10**6))
        if doc.get("mode", "signed") == "signed":
            signs = [int(s) for s in doc["signs"]]
            sa = dirichlet_signed(targets, signs, epsilon, q_max)
            return {
                "p": list(sa.p),
                "q": sa.q,
                "signs": list(sa.signs),
                "epsilon": fmt(sa.epsilon),
                "verified": verify_signed(sa),
                "provenance": "denominator_scan",
            }
        ca = cone_rational_approx(targets, epsilon, q_max)
        return {
            "vectors": [{"v": fmt_vec(v), "q": q} for v, q in ca.vectors],
            "hull_coefficients": fmt_vec(ca.hull_coefficients),
            "epsilon": fmt(ca.epsilon),
            "verified": verify_cone(ca),
            "provenance": "denominator_scan",
        }
    raise SpecError(f"unknown command {command!r}")


def _table(results, indent=""):
    lines = []
    for key, value in results.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_table(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.extend(_table(item, indent + "  "))
                lines.append(f"{indent}  -")
        else:
            lines.append(f"{indent}{key:24s} {value}")
    return lines


def main(argv=None):
    parser = argparse.ArgumentParser(prog="reebmin", description=__doc__)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("spec", help="path to a reebmin/1 JSON spec")
    parser.add_argument("--out", help="write the JSON report here")
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--max-iter", type=int, default=200, dest="max_iter")
    parser.add_argument("--precision", type=int, default=53, help="working precision bits")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--json-only", action="store_true", dest="json_only")
    args = parser.parse_args(argv)
    args.m_list = None
    if args.tol is None:
        args.tol = 1e-9

    try:
        doc = _load_spec(args.spec)
    except SpecError as e:
        print(json.dumps({"error": {"type": "SpecError", "message": str(e)}}), file=sys.stderr)
        return 2

    try:
        results = run(args.command, doc, args)
    except SpecError as e:
        print(json.dumps({"error": {"type": "SpecError", "message": str(e)}}), file=sys.stderr)
        return 2
    except (ReebminError, ValueError) as e:
        payload = {"error": {"type": type(e).__name__, "message": str(e)}}
        print(json.dumps(payload), file=sys.stderr)
        return 1

    report = {
        "schema": SCHEMA,
        "command": args.command,
        "spec": doc,
        "results": results,
    }
    if not args.json_only:
        print(f"reebmin {args.command} on {doc.get('name', args.spec)}")
        print("\n".join(_table(results)))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    if args.json_only:
        print(json.dumps(report, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
