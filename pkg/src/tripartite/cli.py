"""Command-line front end.

Usage:
    tripartite eval --state ghz --plane xy --angles 0,0,30 --prime-offset 90
    tripartite reproduce [--tolerance 1e-9]
    tripartite optimize --state w --objective sv --param xz-symmetric
    tripartite sample --state ghz --plane xy --angles 0,0,135 --prime-offset 90 --shots 1000000
    tripartite membership 1,-1,1,-1,1,-1,-1,1
    tripartite vertices --bipartitions 12|3

Every subcommand takes ``--format table|csv|json``; the default comes from
the TRIPARTITE_FORMAT environment variable, falling back to ``table``.

Exit codes: 0 success, 1 reproduction failure, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

import numpy as np

from .errors import NumericalFailure, TripartiteError
from .hybrid import (ALL_BIPARTITIONS, Verdict, enumerate_vertices, membership,
                     verify_certificate)
from .inequalities import (LABELS, SHORT_LABELS, SVETLICHNY, MERMIN_M, MERMIN_M_PRIME,
                           CorrelationOctet, classify, octet_from_settings)
from .optimizer import DEFAULT_RESTARTS, DEFAULT_SEED, Objective, Parameterization, optimize
from .quantum import TripartiteState, ghz, make_state, w
from .sampler import sample_octet
from .scenarios import reproduce

FORMATS = ("table", "csv", "json")
FORMAT_ENV = "TRIPARTITE_FORMAT"

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt_num(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # Avoid printing "-0".
        return format(value + 0.0, ".9g")
    return str(value)


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt_num(obj))
    return obj


def render(fmt: str, rows: list[dict], document: dict, header: list[str] | None = None) -> str:
    """Render ``rows`` as a table or CSV, or ``document`` as JSON."""
    if fmt == "json":
        return json.dumps(_json_ready(document), indent=2) + "\n"
    columns = list(rows[0]) if rows else []
    cells = [[fmt_num(r[c]) for c in columns] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = list(header or [])
    lines.append("  ".join(c.ljust(wd) for c, wd in zip(columns, widths)).rstrip())
    lines.append("  ".join("-" * wd for wd in widths))
    lines += ["  ".join(v.ljust(wd) for v, wd in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


# --- argument parsing ----------------------------------------------------

_PI_LITERAL = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$")


def parse_angle(text: str, radians: bool) -> float:
    """Parse one angle.  ``pi`` literals (``pi/6``, ``-3pi/4``) are always radians."""
    match = _PI_LITERAL.match(text.lower())
    if match:
        coeff, denom = match.groups()
        if coeff in ("", "+"):
            factor = 1.0
        elif coeff == "-":
            factor = -1.0
        else:
            factor = float(coeff)
        return factor * np.pi / (float(denom) if denom else 1.0)
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None
    return value if radians else np.deg2rad(value)


def parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}: expected comma-separated numbers") from None


def parse_state(text: str) -> TripartiteState:
    """``ghz``, ``w`` or 16 comma-separated reals (re0,im0,re1,im1,...)."""
    name = text.strip().lower()
    if name == "ghz":
        return ghz()
    if name == "w":
        return w()
    values = parse_floats(text, "state")
    if len(values) != 16:
        raise UsageError(f"a state is 'ghz', 'w' or 16 reals (8 complex amplitudes); got {len(values)} numbers")
    pairs = np.asarray(values).reshape(8, 2)
    return make_state(pairs[:, 0] + 1j * pairs[:, 1])


def settings_from_args(args):
    param = Parameterization(args.plane)
    angles = [parse_angle(a, args.radians) for a in args.angles.split(",") if a.strip()]
    if args.prime_offset is not None:
        if param is Parameterization.FULL:
            raise UsageError("--prime-offset applies to the xy and xz planes only")
        if len(angles) != 3:
            raise UsageError(f"with --prime-offset give 3 unprimed angles, got {len(angles)}")
        offset = parse_angle(args.prime_offset, args.radians)
        angles = [v for a in angles for v in (a, a + offset)]
    if len(angles) != param.dimension:
        raise UsageError(f"plane {param.value} takes {param.dimension} angles "
                         f"(A, A', B, B', C, C'), got {len(angles)}")
    return param.settings(np.array(angles))


def parse_octet(text: str) -> CorrelationOctet:
    values = parse_floats(text, "octet")
    if len(values) != 8:
        raise UsageError(f"an octet has 8 entries, got {len(values)}")
    try:
        return CorrelationOctet(values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_bipartitions(text: str | None) -> tuple[str, ...]:
    if text is None:
        return ALL_BIPARTITIONS
    chosen = tuple(p.strip() for p in text.split(",") if p.strip())
    bad = [p for p in chosen if p not in ALL_BIPARTITIONS]
    if bad or not chosen:
        raise UsageError(f"bipartitions must be drawn from {','.join(ALL_BIPARTITIONS)}")
    return chosen


# --- commands --------------------------------------------------------------

def _certificate_document(octet, cert, vertices) -> dict:
    doc = {"verdict": cert.verdict.value, "bipartitions": list(cert.bipartitions),
           "verified": verify_certificate(octet, cert, vertices)}
    if cert.verdict is Verdict.INSIDE:
        doc["weights"] = [
            {"weight": float(q), "bipartition": v.bipartition, "pair_sign": list(v.pair_sign),
             "single_sign": list(v.single_sign), "octet": v.octet.as_list()}
            for q, v in zip(cert.weights, vertices) if q > 1e-12
        ]
    else:
        sep = cert.separator
        doc["separator"] = {"h": [float(v) for v in sep.h], "offset": sep.offset,
                            "margin": float(sep.h @ octet.e - sep.offset)}
    return doc


def cmd_eval(args) -> tuple[str, int]:
    state = parse_state(args.state)
    settings = settings_from_args(args)
    octet = octet_from_settings(state, settings)
    report = classify(octet)
    bipartitions = parse_bipartitions(args.bipartitions)
    vertices = enumerate_vertices(bipartitions)
    cert = membership(octet, bipartitions)

    rows = [{"quantity": label, "value": float(v)} for label, v in zip(LABELS, octet.e)]
    rows += [{"quantity": "M", "value": report.m},
             {"quantity": "M_PRIME", "value": report.m_prime},
             {"quantity": "S_V", "value": report.s_v},
             {"quantity": "violates_lhv", "value": report.violates_lhv},
             {"quantity": "proves_tripartite_entanglement",
              "value": report.proves_tripartite_entanglement},
             {"quantity": "proves_tripartite_nonlocality",
              "value": report.proves_tripartite_nonlocality},
             {"quantity": "membership", "value": cert.verdict.value}]
    document = {
        "octet": dict(zip(LABELS, octet.as_list())),
        "m": report.m, "m_prime": report.m_prime, "s_v": report.s_v,
        "flags": {"violates_lhv": report.violates_lhv,
                  "proves_tripartite_entanglement": report.proves_tripartite_entanglement,
                  "proves_tripartite_nonlocality": report.proves_tripartite_nonlocality},
        "membership": _certificate_document(octet, cert, vertices),
    }
    return render(args.format, rows, document), EXIT_OK


def cmd_reproduce(args) -> tuple[str, int]:
    results = reproduce(tolerance=args.tolerance, restarts=args.restarts, seed=args.seed)
    rows = [{"id": r.id, "quantity": r.quantity, "computed": r.computed,
             "expected": r.expected, "pass": r.passed} for r in results]
    failing = [f"{r.id}:{r.quantity}" for r in results if not r.passed]
    document = {"rows": rows, "all_pass": not failing, "failing": failing}
    header = [f"reproduction: {len(results) - len(failing)}/{len(results)} cells pass"]
    if failing:
        header.append("failing: " + ", ".join(failing))
    out = render(args.format, rows, document, header)
    if failing:
        print("failing cells: " + ", ".join(failing), file=sys.stderr)
    return out, EXIT_FAILED if failing else EXIT_OK


def cmd_optimize(args) -> tuple[str, int]:
    state = parse_state(args.state)
    if args.restarts < 1:
        raise UsageError("--restarts must be at least 1")
    result = optimize(state, Objective(args.objective), Parameterization(args.param),
                      args.restarts, args.seed)
    degrees = np.rad2deg(result.best_angles)
    rows = [{"quantity": "best_value", "value": result.best_value}]
    rows += [{"quantity": f"angle_{i}_deg", "value": float(a)} for i, a in enumerate(degrees)]
    rows += [{"quantity": "M", "value": result.report.m},
             {"quantity": "M_PRIME", "value": result.report.m_prime},
             {"quantity": "S_V", "value": result.report.s_v},
             {"quantity": "restarts_used", "value": result.restarts_used},
             {"quantity": "converged", "value": result.converged}]
    document = {"objective": args.objective, "param": args.param, "best_value": result.best_value,
                "best_angles_deg": [float(a) for a in degrees],
                "m": result.report.m, "m_prime": result.report.m_prime, "s_v": result.report.s_v,
                "restarts_used": result.restarts_used, "seed": args.seed,
                "converged": result.converged}
    return render(args.format, rows, document), EXIT_OK


def cmd_sample(args) -> tuple[str, int]:
    state = parse_state(args.state)
    if args.shots < 1:
        raise UsageError("--shots must be at least 1")
    settings = settings_from_args(args)
    estimates = sample_octet(state, settings, args.shots, args.seed)
    means = np.array([e.mean for e in estimates])
    errors = np.array([e.std_error for e in estimates])
    rows = [{"quantity": label, "mean": e.mean, "std_error": e.std_error}
            for label, e in zip(LABELS, estimates)]
    for name, coeffs in (("M", MERMIN_M), ("M_PRIME", MERMIN_M_PRIME), ("S_V", SVETLICHNY)):
        rows.append({"quantity": name, "mean": float(coeffs @ means),
                     "std_error": float(np.sqrt((coeffs ** 2) @ (errors ** 2)))})
    document = {"shots_per_setting": args.shots, "seed": args.seed, "generator": "PCG64",
                "estimates": rows}
    return render(args.format, rows, document), EXIT_OK


def cmd_membership(args) -> tuple[str, int]:
    octet = parse_octet(args.octet)
    bipartitions = parse_bipartitions(args.bipartitions)
    vertices = enumerate_vertices(bipartitions)
    cert = membership(octet, bipartitions, args.tolerance)
    doc = _certificate_document(octet, cert, vertices)
    doc["octet"] = octet.as_list()
    if cert.verdict is Verdict.INSIDE:
        rows = [{"weight": item["weight"], "bipartition": item["bipartition"],
                 **dict(zip(SHORT_LABELS, item["octet"]))} for item in doc["weights"]]
    else:
        rows = [{"term": label, "h": float(h)} for label, h in zip(LABELS, cert.separator.h)]
        rows.append({"term": "offset", "h": cert.separator.offset})
    header = [f"verdict: {cert.verdict.value}", f"certificate verified: {fmt_num(doc['verified'])}"]
    return render(args.format, rows, doc, header), EXIT_OK


def cmd_vertices(args) -> tuple[str, int]:
    bipartitions = parse_bipartitions(args.bipartitions)
    rows = []
    for v in enumerate_vertices(bipartitions):
        report = classify(v.octet)
        row = {"bipartition": v.bipartition}
        row.update(zip(SHORT_LABELS, (int(x) for x in v.octet.e)))
        row.update({"M": report.m, "M_PRIME": report.m_prime, "S_V": report.s_v})
        rows.append(row)
    document = {"bipartitions": list(bipartitions), "count": len(rows), "vertices": rows}
    return render(args.format, rows, document, [f"{len(rows)} vertices"]), EXIT_OK


# --- entry point ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Let "-0.5,1,..." through as a value rather than an unknown option.
        self._negative_number_matcher = re.compile(r"^-\.?\d[\d.,eE+-]*$")

    def error(self, message):
        raise UsageError(message)


def _add_settings_args(p):
    p.add_argument("--state", default="ghz", help="ghz, w, or 16 reals re0,im0,...,re7,im7")
    p.add_argument("--plane", choices=[m.value for m in Parameterization if m.value != "xz-symmetric"],
                   default="xy")
    p.add_argument("--angles", required=True,
                   help="comma-separated angles A,A',B,B',C,C' (or A,B,C with --prime-offset); "
                        "'full' takes polar,azimuth per direction")
    p.add_argument("--prime-offset", default=None, help="primed angle = unprimed + offset")
    p.add_argument("--radians", action="store_true", help="plain numbers are radians, not degrees")


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(FORMAT_ENV, "table")
    if default_format not in FORMATS:
        default_format = "table"
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_format)

    parser = _Parser(prog="tripartite", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="octet, M, M', S_V and hybrid membership")
    _add_settings_args(p)
    p.add_argument("--bipartitions", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reproduce", parents=[common], help="recompute the S1-S8 scenario table")
    p.add_argument("--tolerance", type=float, default=None, help="override every cell tolerance")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("optimize", parents=[common], help="maximize |M|, |M'| or |S_V| over angles")
    p.add_argument("--state", default="ghz")
    p.add_argument("--objective", choices=[o.value for o in Objective], default="sv")
    p.add_argument("--param", choices=[m.value for m in Parameterization], default="xy")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sample", parents=[common], help="finite-shot estimate of the octet")
    _add_settings_args(p)
    p.add_argument("--shots", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("membership", parents=[common], help="hybrid-model membership certificate")
    p.add_argument("octet", help="8 comma-separated correlators in canonical order")
    p.add_argument("--bipartitions", default=None, help="subset of 12|3,13|2,23|1")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("vertices", parents=[common], help="dump the hybrid vertex octets")
    p.add_argument("--bipartitions", default=None)
    p.set_defaults(func=cmd_vertices)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out, code = args.func(args)
    except UsageError as exc:
        print(f"tripartite: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"tripartite: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (TripartiteError, ValueError) as exc:
        print(f"tripartite: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
