"""Command-line interface.

Complex vectors on the command line are written ``"re,im re,im ..."``;
JSON arguments are either inline (starting with ``{``) or a path to a file.
Exit codes: 0 success or pass, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import automorph as am
from . import serialize as ser
from .domains import EllipsoidParams, classify, minkowski_sym, sample_interior
from .errors import SymellError
from .propermaps import (
    DEDUPE_TOL,
    build_special,
    build_standard,
    count_preimages,
    eval_proper,
    exists_proper,
    verify_boundary,
)
from .symmetric import fiber, power_map, symmetrize
from .unimodular import as_fraction

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InputError(ValueError):
    pass


def parse_cvec(text: str) -> np.ndarray:
    tokens = text.split()
    if not tokens:
        raise InputError("empty complex vector")
    out = []
    for tok in tokens:
        parts = tok.split(",")
        if len(parts) > 2:
            raise InputError(f"bad complex entry {tok!r}; expected re,im")
        try:
            out.append(complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0))
        except ValueError as exc:
            raise InputError(f"bad complex entry {tok!r}") from exc
    v = np.array(out)
    if not np.all(np.isfinite(v)):
        raise InputError("entries must be finite")
    return v


def _clean(x: float, digits: int) -> float:
    return round(x, digits) + 0.0


def format_cvec(v, digits: int = 12) -> str:
    return " ".join(
        f"{_clean(x.real, digits):.{digits + 3}g},{_clean(x.imag, digits):.{digits + 3}g}"
        for x in np.asarray(v, dtype=complex)
    )


def _vector(args, name: str) -> np.ndarray:
    inline = getattr(args, name)
    path = getattr(args, f"{name}_file")
    if inline is not None and path is not None:
        raise InputError(f"give --{name} or --{name}-file, not both")
    if path is not None:
        return parse_cvec(Path(path).read_text())
    if inline is None:
        raise InputError(f"--{name} is required")
    return parse_cvec(inline)


def _json(text: str):
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    return json.loads(Path(text).read_text())


def _params(args, n: int) -> EllipsoidParams:
    if args.n is not None and args.n != n:
        raise InputError(f"--n {args.n} does not match the point dimension {n}")
    return EllipsoidParams(as_fraction(args.p), n)


def _emit(obj, out: str | None = None):
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_sym(args):
    z = _vector(args, "z")
    if z.size < 2:
        raise InputError("need at least two coordinates")
    print(format_cvec(symmetrize(z)))


def cmd_fiber(args):
    print(format_cvec(fiber(_vector(args, "s"))))


def cmd_mu(args):
    s = _vector(args, "s")
    print(f"{minkowski_sym(s, _params(args, s.size)):.12f}")


def cmd_classify(args):
    s = _vector(args, "s")
    c = classify(s, _params(args, s.size), args.band)
    print(f"{c.region.value} {c.mu:.12f}")


def cmd_powermap(args):
    if args.l < 1:
        raise InputError("--l must be a positive integer")
    print(format_cvec(power_map(_vector(args, "s"), args.l)))


def cmd_aut(args):
    obj = ser.dec_aut(_json(args.aut))
    if args.action == "make":
        _emit(ser.enc_aut(ser.as_ball(obj)))
        return EXIT_OK
    if args.action == "eval":
        if isinstance(obj, (am.PhiI, am.PhiII, am.PhiIII)):
            print(format_cvec(am.ell_aut_eval(obj, _vector(args, "s"))))
        else:
            print(format_cvec(ser.as_ball(obj)(_vector(args, "z"))))
        return EXIT_OK
    ball = ser.as_ball(obj)
    res = am.stein_residuals(ball)
    worst = max(res.values())
    _emit({"residuals": res, "max_residual": worst, "tolerance": args.tol, "passed": worst <= args.tol})
    return EXIT_OK if worst <= args.tol else EXIT_FAIL


def _spec(args):
    return ser.dec_spec(_json(args.spec))


def cmd_proper(args):
    action = args.action
    if action == "exists":
        print("true" if exists_proper(as_fraction(args.p), as_fraction(args.q)) else "false")
        return EXIT_OK
    if action == "build":
        if args.special:
            phi2 = ser.dec_aut(_json(args.phi2)) if args.phi2 else am.PhiII(EllipsoidParams(1, 2), 0, "1/2")
            f = build_special(args.m, ser.dec_turn(args.zeta3), phi2)
        else:
            if args.p is None or args.q is None or args.n is None:
                raise InputError("build needs --p, --q and --n (or --special)")
            psi = (ser.dec_aut(_json(args.aut)) if args.aut
                   else am.PhiI(EllipsoidParams(as_fraction(args.p), args.n)))
            f = build_standard(as_fraction(args.p), as_fraction(args.q), args.n, psi)
        _emit(ser.enc_spec(f), args.out)
        return EXIT_OK
    f = _spec(args)
    if action == "eval":
        s = _vector(args, "s")
        mu = minkowski_sym(s, f.src)
        if mu > 1 + 1e-9:
            raise InputError(f"point lies outside the closed source domain (gauge {mu:.6g})")
        print(format_cvec(eval_proper(f, s)))
        return EXIT_OK
    if action == "verify":
        report = verify_boundary(f, args.samples, args.seed, args.tol)
        _emit(ser.enc_report(report), args.out)
        return EXIT_OK if report.passed else EXIT_FAIL
    if action == "multiplicity":
        if args.s is not None or args.s_file is not None:
            t = _vector(args, "s")
        else:
            t = sample_interior(f.dst, args.seed, 1)[0]
        print(count_preimages(f, t, args.dedupe_tol))
        return EXIT_OK
    raise InputError(f"unknown action {action}")


def cmd_slice(args):
    base, u, v = parse_cvec(args.base), parse_cvec(args.u), parse_cvec(args.v)
    if not (base.size == u.size == v.size):
        raise InputError("--base, --u and --v must have the same dimension")
    if args.grid < 2:
        raise InputError("--grid must be >= 2")
    params = _params(args, base.size)
    xs = np.linspace(-args.extent, args.extent, args.grid)
    stream = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["x", "y", "mu"])
        for y in xs:
            for x in xs:
                w.writerow([f"{x:.12g}", f"{y:.12g}", f"{minkowski_sym(base + x * u + y * v, params):.12g}"])
    finally:
        if args.out:
            stream.close()


# ---------------------------------------------------------------------------
# parser


def _add_vector(p, name: str, what: str):
    p.add_argument(f"--{name}", help=f"{what} as 're,im re,im ...'")
    p.add_argument(f"--{name}-file", dest=f"{name}_file", help=f"file holding {what}")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    ap = argparse.ArgumentParser(prog="symell", description=__doc__.splitlines()[0], formatter_class=fmt)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sym", help="symmetrize a point of C^n", formatter_class=fmt)
    _add_vector(p, "z", "the point z")
    p.set_defaults(func=cmd_sym)

    p = sub.add_parser("fiber", help="root multiset of a symmetrized point", formatter_class=fmt)
    _add_vector(p, "s", "the point s")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("mu", help="gauge of E_{p,n} at s", formatter_class=fmt)
    p.add_argument("--p", required=True, help="exponent p, e.g. 1/2")
    p.add_argument("--n", type=int, help="dimension (defaults to the length of s)")
    _add_vector(p, "s", "the point s")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("classify", help="Interior / Boundary / Exterior", formatter_class=fmt)
    p.add_argument("--p", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--band", type=float, default=1e-9, help="boundary band, in (0, 0.1)")
    _add_vector(p, "s", "the point s")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("powermap", help="P_l(s)", formatter_class=fmt)
    p.add_argument("--l", type=int, required=True)
    _add_vector(p, "s", "the point s")
    p.set_defaults(func=cmd_powermap)

    p = sub.add_parser("aut", help="ball and ellipsoid automorphisms", formatter_class=fmt)
    p.add_argument("action", choices=["make", "eval", "verify"])
    p.add_argument("--aut", required=True, help="automorphism JSON (inline or file)")
    _add_vector(p, "z", "a point of the ball (ball-type automorphisms)")
    _add_vector(p, "s", "a symmetrized point (PhiI/PhiII/PhiIII)")
    p.add_argument("--tol", type=float, default=am.TOL_STEIN, help="Stein residual tolerance")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("proper", help="proper holomorphic maps", formatter_class=fmt)
    p.add_argument("action", choices=["exists", "build", "eval", "verify", "multiplicity"])
    p.add_argument("--p", help="source exponent")
    p.add_argument("--q", help="target exponent")
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--aut", help="source automorphism JSON for build (default PhiI(1))")
    p.add_argument("--special", action="store_true", help="build the exceptional n=2 chain")
    p.add_argument("--m", type=int, default=1, help="power m of the exceptional chain")
    p.add_argument("--zeta3", default="0", help="PhiIII angle in turns")
    p.add_argument("--phi2", help="PhiII JSON for the exceptional chain (default identity)")
    p.add_argument("--spec", help="proper map spec JSON (inline or file)")
    _add_vector(p, "s", "a source point (eval) or target point (multiplicity)")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6, help="boundary tolerance for verify")
    p.add_argument("--dedupe-tol", type=float, default=DEDUPE_TOL)
    p.add_argument("--out", help="also write the JSON result here")
    p.set_defaults(func=cmd_proper)

    p = sub.add_parser("slice", help="CSV grid of gauge values on an affine plane", formatter_class=fmt)
    p.add_argument("--p", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--base", required=True, help="base point s0")
    p.add_argument("--u", required=True, help="first direction")
    p.add_argument("--v", required=True, help="second direction")
    p.add_argument("--grid", type=int, default=41)
    p.add_argument("--extent", type=float, default=1.0, help="x, y range [-extent, extent]")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_slice)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "proper" and args.action in ("eval", "verify", "multiplicity") \
            and not args.spec:
        parser.error(f"proper {args.action} requires --spec")
    if getattr(args, "command", None) == "proper" and args.action == "exists" and (args.p is None or args.q is None):
        parser.error("proper exists requires --p and --q")
    try:
        code = args.func(args)
    except (ValueError, TypeError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SymellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
