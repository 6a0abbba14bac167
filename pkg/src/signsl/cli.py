"""Command-line front-end.

Every subcommand emits a single structured result document (JSON) with the
command, an echo of the inputs including tolerances, and the outputs.
Complex numbers are encoded as {"re": ..., "im": ...}.  Output is
deterministic: same inputs, byte-identical document.

Exit codes: 0 success, 2 parse or configuration error, 3 numerical failure,
4 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import (SignSLError, ParseError, PotentialClassError,
                     IntegrationError, ToleranceError, BoundaryError,
                     EvennessError)
from .potential import Potential, TailClass
from .weyl import big_M, m_coefficient
from .spectrum import Rect, axis_scan, dispersion, locate_nonreal
from .classify import classify
from .construction import build_measure, find_zero_sequence, certify_theorem


def parse_complex(text: str) -> complex:
    """Parse '1+2i', '-0.5i', '3', '0+1i' (i or j accepted)."""
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ParseError(f"not a complex number: {text!r}", 0)


def _c(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def parse_potential(text: str, class_left: str | None = None,
                    class_right: str | None = None) -> Potential:
    if not text:
        raise ParseError("empty potential expression", 0)
    p = Potential(text,
                  TailClass.parse(class_left) if class_left else None,
                  TailClass.parse(class_right) if class_right else None)
    p.q(0.0)
    p.validate()
    return p


def _json_default(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _doc(command: str, inputs: dict, outputs: dict) -> dict:
    return {"command": command, "version": __version__,
            "inputs": inputs, "outputs": outputs}


def _emit(doc: dict, args) -> None:
    if getattr(args, "format", "doc") == "csv":
        text = _to_csv(doc)
    else:
        text = json.dumps(doc, sort_keys=True, indent=2,
                          default=_json_default) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(doc: dict) -> str:
    rows = doc["outputs"].get("grid")
    if rows is None:
        raise SignSLError("csv format is only available for scan grids")
    header = doc["outputs"]["columns"]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def _cmd_mfunc(args) -> dict:
    p = parse_potential(args.q, args.class_left, args.class_right)
    values = []
    for text in args.lam:
        lam = parse_complex(text)
        little = m_coefficient(p, args.side, lam, args.tol, args.ode_tol)
        big = big_M(p, args.side, lam, args.tol, args.ode_tol)
        values.append({"lambda": _c(lam), "m": _c(little.value),
                       "M": _c(big.value), "error_bound": little.error_bound})
    inputs = {"q": args.q, "side": args.side, "lambda": args.lam,
              "tol": args.tol, "ode_tol": args.ode_tol}
    return _doc("mfunc", inputs, {"values": values})


def _cmd_eigs(args) -> dict:
    p = parse_potential(args.q, args.class_left, args.class_right)
    inputs = {"q": args.q, "tol": args.tol, "ode_tol": args.ode_tol}
    if args.rect is not None:
        rect = Rect(*args.rect)
        found = locate_nonreal(p, rect, args.tol, args.ode_tol)
        inputs["rect"] = list(args.rect)
        outputs = {"method": found.method,
                   "eigenvalues": [{"value": _c(e.value), "residual": e.residual,
                                    "multiplicity": e.multiplicity}
                                   for e in found.points],
                   "conjugation_closed": found.conjugation_closed()}
    else:
        lo, hi = args.axis
        roots = axis_scan(p, (lo, hi), tol=args.tol, ode_tol=args.ode_tol)
        inputs["axis"] = [lo, hi]
        outputs = {"method": "axis_scan",
                   "roots": roots,
                   "eigenvalues": [_c(complex(0.0, r)) for r in roots]
                   + [_c(complex(0.0, -r)) for r in roots]}
    return _doc("eigs", inputs, outputs)


def _num(v):
    """Non-finite floats as strings, so the document is strict JSON."""
    if v is None or np.isfinite(v):
        return v
    return "inf" if v > 0 else "-inf"


def _model_dict(m) -> dict:
    return {
        "essential": [{"lo": _num(iv.a), "hi": _num(iv.b)} for iv in m.essential],
        "essential_rule": m.essential_rule,
        "discrete": list(m.discrete),
        "accumulations": [{"point": p, "side": s} for p, s in m.accumulations],
        "n_negative_type": m.n_neg_type,
        "semibounded": {"kind": m.semibounded[0], "bound": _num(m.semibounded[1])},
    }


def _cmd_classify(args) -> dict:
    p = parse_potential(args.q, args.class_left, args.class_right)
    r = classify(p)
    outputs = {
        "verdict": r.verdict,
        "obstruction_set": r.S.describe(),
        "omega": r.omega_description,
        "critical_point_candidates": [str(c) for c in r.critical_point_candidates],
        "decomposition_available": r.decomposition_available,
        "separation": {"separable": r.separation.separable,
                       "points": r.separation.points,
                       "witness": None if r.separation.witness is None
                       else str(r.separation.witness)},
        "half_line_plus": _model_dict(r.model_plus),
        "half_line_minus": _model_dict(r.model_minus),
        "notes": r.notes,
    }
    inputs = {"q": args.q, "class_left": args.class_left,
              "class_right": args.class_right}
    return _doc("classify", inputs, outputs)


def _cmd_construct(args) -> dict:
    m = build_measure(args.atoms)
    zeros = find_zero_sequence(m)
    cert = certify_theorem(m, zeros)
    outputs = {
        "measure": {"atoms": [{"s": s, "h": h} for s, h in m.atoms],
                    "sup_records": m.sup_records,
                    "b_records": m.b_records,
                    "tail_mass": m.tail_mass,
                    "support": m.support_description()},
        "zeros": {"eps": zeros.eps, "residuals": zeros.residuals,
                  "brackets": [{"lo": a, "hi": b} for a, b in zeros.brackets]},
        "certificate": {"valid": cert.valid, "summary": cert.summary,
                        "clauses": [{"name": n, "ok": ok, "detail": d}
                                    for n, ok, d in cert.clauses]},
    }
    return _doc("construct", {"atoms": args.atoms}, outputs)


def _cmd_scan(args) -> dict:
    p = parse_potential(args.q, args.class_left, args.class_right)
    inputs = {"q": args.q, "n": args.n, "tol": args.tol, "ode_tol": args.ode_tol}
    if args.axis is not None:
        lo, hi = args.axis
        grid = np.linspace(lo, hi, args.n)
        rows = []
        for eps in grid:
            v = big_M(p, "plus", 1j * float(eps), args.tol, args.ode_tol).value
            rows.append([float(eps), v.real, v.imag])
        inputs["axis"] = [lo, hi]
        outputs = {"columns": ["eps", "re_M_plus", "im_M_plus"], "grid": rows}
    else:
        re_lo, re_hi, im_lo, im_hi = args.rect
        n_side = max(2, int(np.sqrt(args.n)))
        rows = []
        for im in np.linspace(im_lo, im_hi, n_side):
            for re in np.linspace(re_lo, re_hi, n_side):
                lam = complex(float(re), float(im))
                d = dispersion(p, lam, args.tol, args.ode_tol)
                rows.append([lam.real, lam.imag, abs(d)])
        inputs["rect"] = list(args.rect)
        outputs = {"columns": ["re_lambda", "im_lambda", "abs_D"], "grid": rows}
    return _doc("scan", inputs, outputs)


# ------------------------------------------------------------------ driver

def _add_common(sp, potential=True):
    if potential:
        sp.add_argument("--q", required=True, help="potential expression in x")
        sp.add_argument("--class-left", default=None,
                        help="tail class at -inf, e.g. constant_limit:1")
        sp.add_argument("--class-right", default=None,
                        help="tail class at +inf")
    sp.add_argument("--tol", type=float, default=1e-8,
                    help="target tolerance of the computed quantity")
    sp.add_argument("--ode-tol", type=float, default=1e-10,
                    help="per-unit-length ODE tolerance")
    sp.add_argument("--out", default=None, help="write the document here")
    sp.add_argument("--format", choices=["doc", "csv"], default="doc")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="signsl",
        description="Sturm-Liouville operators with indefinite weight sgn x")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("mfunc", help="Titchmarsh-Weyl coefficients")
    _add_common(sp)
    sp.add_argument("--side", choices=["plus", "minus"], default="plus")
    sp.add_argument("--lambda", dest="lam", action="append", required=True,
                    help="spectral parameter, e.g. 1+2i (repeatable)")
    sp.set_defaults(func=_cmd_mfunc)

    sp = sub.add_parser("eigs", help="non-real eigenvalues")
    _add_common(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--rect", type=float, nargs=4,
                   metavar=("RE_LO", "RE_HI", "IM_LO", "IM_HI"),
                   help="search rectangle in the upper half-plane")
    g.add_argument("--axis", type=float, nargs=2, metavar=("EPS_LO", "EPS_HI"),
                   help="imaginary-axis scan range (even potentials)")
    sp.set_defaults(func=_cmd_eigs)

    sp = sub.add_parser("classify", help="definitizability report")
    _add_common(sp)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("construct",
                        help="measure with eigenvalues accumulating at 0")
    _add_common(sp, potential=False)
    sp.add_argument("--atoms", type=int, default=8, help="number of atoms K")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("scan", help="grids for plotting")
    _add_common(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--axis", type=float, nargs=2, metavar=("EPS_LO", "EPS_HI"),
                   help="M_+(i eps) along the imaginary axis")
    g.add_argument("--rect", type=float, nargs=4,
                   metavar=("RE_LO", "RE_HI", "IM_LO", "IM_HI"),
                   help="|D(lambda)| over a rectangle")
    sp.add_argument("--n", type=int, default=101, help="number of grid points")
    sp.set_defaults(func=_cmd_scan)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
        _emit(doc, args)
        return 0
    except (ParseError, PotentialClassError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (IntegrationError, ToleranceError, BoundaryError, EvennessError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 3
    except SignSLError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
