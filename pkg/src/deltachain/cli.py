"""``deltachain`` command line.

Every command prints one JSON document on stdout.  Floats carry 17
significant digits; exact numbers are lists of ``{"num", "den", "pi_power"}``
terms whose sum is the value.  Exit status: 0 success, 1 domain error,
2 usage error or malformed JSON input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import jsonschema
import numpy as np

from . import __version__
from .acceptance import run_all
from .classify import hardness_probe
from .distributions import QuadratureConfig, TestFunction, act, default_tolerance
from .errors import DomainError
from .exact import PiNumber, exact_angle
from .kernels import DeltaKernelSpec, delta_derivative_kernel_eval, delta_kernel_eval, log_primitive_eval
from .piecewise import (DistributionalObject, ExactAtom, PiecewisePolyCircle, delta_primitive,
                        distributional_derivative, primitive_chain)
from .series import (FourierSpectrum, PolarPoint, angular_primitive_series,
                     delta_taylor_coefficients, taylor_to_fourier)

_TERM = {
    "type": "object",
    "properties": {
        "num": {"type": "integer"},
        "den": {"type": "integer", "minimum": 1},
        "pi_power": {"type": "integer"},
    },
    "required": ["num", "den", "pi_power"],
    "additionalProperties": False,
}
_EXACT = {"oneOf": [{"type": "number"}, _TERM, {"type": "array", "items": _TERM}]}
_NUMBERS = {"type": "array", "items": {"type": "number"}}

FOURIER_SCHEMA = {
    "type": "object",
    "properties": {"alpha0": {"type": "number"}, "alphas": _NUMBERS, "betas": _NUMBERS},
    "required": ["alpha0"],
    "additionalProperties": False,
}

DISTRIBUTION_SCHEMA = {
    "type": "object",
    "properties": {
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "theta": _EXACT,
                    "order": {"type": "integer", "minimum": 0},
                    "coeff": _EXACT,
                },
                "required": ["theta"],
                "additionalProperties": False,
            },
        },
        "smooth": {
            "type": "object",
            "properties": {
                "points": {"type": "array", "items": _EXACT},
                "sections": {"type": "array", "items": {"type": "array", "items": _EXACT}},
            },
            "required": ["sections"],
            "additionalProperties": False,
        },
        "fourier": FOURIER_SCHEMA,
    },
    "additionalProperties": False,
}


class UsageError(Exception):
    pass


# --- output ---------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def _scalar(v) -> bool:
    return v is None or isinstance(v, (bool, int, float, str))


def _flat(obj) -> bool:
    if _scalar(obj):
        return True
    if isinstance(obj, dict):
        return all(_scalar(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return all(_scalar(v) for v in obj)
    return False


def _inline(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(encode(v) for v in obj) + "]"
    return encode(obj)


def encode(obj, indent: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, np.generic):
        obj = obj.item()
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if _flat(obj):
        return _inline(obj)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(str(k))}: {encode(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        text = "[" + ", ".join(encode(v) for v in obj) + "]"
        if all(_flat(v) for v in obj) and len(text) <= 100:
            return text
        return "[\n" + ",\n".join(pad + encode(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _complex(w: complex) -> dict:
    return {"re": float(w.real), "im": float(w.imag)}


# --- input ---------------------------------------------------------------

def _load(text: str, schema: dict, what: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}") from None
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "top level"
        raise UsageError(f"invalid {what} at {where}: {exc.message}") from None
    return data


def _exact(value) -> PiNumber:
    if isinstance(value, (dict, list)):
        return PiNumber.from_json(value)
    if isinstance(value, int):
        return PiNumber.coerce(value)
    return PiNumber.coerce(Fraction(value))


def _angle(value) -> PiNumber:
    return exact_angle(value if isinstance(value, float) else _exact(value))


def _spectrum(data: dict) -> FourierSpectrum:
    return FourierSpectrum(data["alpha0"], tuple(data.get("alphas", ())), tuple(data.get("betas", ())))


def _distribution(data: dict) -> DistributionalObject:
    if "fourier" in data:
        raise DomainError("a Fourier part has no exact piecewise primitive; use the act command for it")
    atoms = [
        ExactAtom(_angle(a["theta"]), a.get("order", 0), _exact(a.get("coeff", 1)))
        for a in data.get("atoms", [])
    ]
    smooth = None
    if "smooth" in data:
        s = data["smooth"]
        smooth = PiecewisePolyCircle(
            [_angle(t) for t in s.get("points", [])],
            [[_exact(c) for c in sec] for sec in s["sections"]],
        )
    return DistributionalObject(atoms, smooth)


# --- commands --------------------------------------------------------------

def _kernel_evaluator(n: int, theta1: float):
    if n == -1:
        return lambda p: log_primitive_eval(p, theta1)
    if n == 0:
        return lambda p: delta_kernel_eval(p, theta1)
    if n > 0:
        spec = DeltaKernelSpec(theta1, n)
        return lambda p: delta_derivative_kernel_eval(spec, p)
    raise DomainError("--kernel must be >= -1 (-1 is the logarithmic primitive)")


def cmd_eval(args) -> dict:
    p = PolarPoint(args.rho, args.theta)
    w = _kernel_evaluator(args.kernel, args.theta1)(p)
    return {"kernel": args.kernel, "theta1": args.theta1, "rho": p.rho, "theta": p.theta,
            "w": _complex(w), "u": float(w.real), "v": float(w.imag)}


def cmd_coeffs(args) -> dict:
    if args.K < 1:
        raise DomainError("-K must be >= 1")
    if args.kernel >= 0:
        s = delta_taylor_coefficients(args.theta1, args.kernel, args.K)
    else:
        s = delta_taylor_coefficients(args.theta1, 0, args.K)
        for _ in range(-args.kernel):
            s = angular_primitive_series(s)
    f = taylor_to_fourier(s)
    return {
        "kernel": args.kernel, "theta1": args.theta1, "K": args.K,
        "taylor": {"re": [float(c.real) for c in s.coefficients],
                   "im": [float(c.imag) for c in s.coefficients]},
        "fourier": {"alpha0": f.alpha0, "alphas": list(f.alphas), "betas": list(f.betas)},
    }


def cmd_act(args) -> dict:
    if args.kernel < 0:
        raise DomainError("act needs --kernel >= 0")
    g = TestFunction(_spectrum(_load(args.g, FOURIER_SCHEMA, "--g")))
    tol = args.tol if args.tol is not None else default_tolerance()
    result = act(DeltaKernelSpec(args.theta1, args.kernel), g, QuadratureConfig(tolerance=tol), args.coeff)
    out = {"kernel": args.kernel, "theta1": args.theta1, "tolerance": tol}
    out.update(result.to_dict())
    return out


def cmd_chain(args) -> dict:
    d = _distribution(_load(args.dist, DISTRIBUTION_SCHEMA, "--dist")) if args.dist else DistributionalObject.delta(0)
    out = primitive_chain(d, args.steps)
    return {"steps": args.steps, "result": _annotate(out)}


def cmd_derive(args) -> dict:
    if args.dist:
        d = _distribution(_load(args.dist, DISTRIBUTION_SCHEMA, "--dist"))
    else:
        if args.times < 1:
            raise DomainError("times must be >= 1")
        d = DistributionalObject((), delta_primitive(args.times))
    out = distributional_derivative(d, args.times)
    return {"times": args.times, "result": _annotate(out)}


def _annotate(d: DistributionalObject) -> dict:
    doc = d.to_json()
    for atom, a in zip(doc["atoms"], d.atoms):
        atom["theta_float"] = float(a.point)
        atom["coeff_float"] = float(a.coeff)
    for sec, (_, _, p) in zip(doc["smooth"]["sections"], d.smooth.sections()):
        sec["coefficients_float"] = [float(c) for c in p.coeffs]
    return doc


def cmd_classify(args) -> dict:
    report = hardness_probe(_kernel_evaluator(args.kernel, args.theta1), args.theta1)
    out = {"kernel": args.kernel}
    out.update(report.to_dict())
    return out


def cmd_verify(args) -> dict:
    results = run_all()
    doc = {"passed": all(r.passed for r in results), "criteria": []}
    for r in results:
        entry = {"criterion": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
        if args.timings:
            entry["elapsed"] = r.elapsed
        doc["criteria"].append(entry)
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltachain", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def kernel_args(p):
        p.add_argument("--kernel", type=int, required=True, metavar="N",
                       help="derivative order (0 = delta kernel, -1 = logarithmic primitive)")
        p.add_argument("--theta1", type=float, default=0.0,
                       help="position of the singular point (radians)")

    p = sub.add_parser("eval", help="evaluate a kernel at one point of the disk")
    kernel_args(p)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", help="Taylor and Fourier coefficients of a kernel")
    kernel_args(p)
    p.add_argument("-K", type=int, required=True, help="truncation order")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("act", help="apply a delta derivative to a trigonometric polynomial")
    kernel_args(p)
    p.add_argument("--g", required=True, help='Fourier JSON {"alpha0": .., "alphas": [..], "betas": [..]}')
    p.add_argument("--coeff", type=float, default=1.0, help="atom coefficient")
    p.add_argument("--tol", type=float, default=None,
                   help="target tolerance (default $DELTACHAIN_TOL or 1e-6)")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("chain", help="exact zero-average primitives of a distribution")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--dist", help="distribution JSON (default: unit delta at 0)")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("derive", help="distributional derivatives of a piecewise polynomial")
    p.add_argument("--times", type=int, required=True)
    p.add_argument("--dist", help="distribution JSON (default: the matching primitive of a unit delta at 0)")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("classify", help="soft/hard classification of a kernel's singular point")
    kernel_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--timings", action="store_true", help="include elapsed seconds")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.func(args)
    except UsageError as exc:
        print(f"deltachain: error: {exc}".replace("\n", " "), file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"deltachain: {type(exc).__name__}: {exc}".replace("\n", " "), file=sys.stderr)
        return 1
    sys.stdout.write(encode(doc) + "\n")
    if args.command == "verify" and not doc["passed"]:
        return 1
    return 0
