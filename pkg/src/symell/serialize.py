"""JSON encodings for automorphisms, map specs and reports.

Complex numbers are ``[re, im]`` pairs, rationals are ``"num/den"`` strings and
unimodular parameters are ``{"angle": "k/d"}`` in full turns, so every spec
survives a round trip through a file unchanged.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import automorph as am
from .domains import EllipsoidParams
from .propermaps import (
    AutStep,
    Chain,
    PowerStep,
    ScaleStep,
    Special,
    Standard,
    VerificationReport,
)
from .unimodular import Turn, as_fraction


def enc_complex(x) -> list[float]:
    x = complex(x)
    return [x.real, x.imag]


def dec_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    re, im = v
    return complex(float(re), float(im))


def enc_cvec(v) -> list[list[float]]:
    return [enc_complex(x) for x in np.asarray(v).reshape(-1)]


def dec_cvec(v) -> np.ndarray:
    return np.array([dec_complex(x) for x in v], dtype=complex)


def enc_frac(x) -> str:
    return str(as_fraction(x))


def dec_frac(v) -> Fraction:
    if isinstance(v, float):
        raise ValueError(f"rationals must be strings or integers, got {v!r}")
    return as_fraction(v)


def enc_turn(t: Turn) -> dict:
    return {"angle": str(t.turns)}


def dec_turn(v) -> Turn:
    if isinstance(v, dict):
        return Turn(dec_frac(v["angle"]))
    return Turn(dec_frac(v))


def enc_params(p: EllipsoidParams) -> dict:
    return {"p": enc_frac(p.p), "n": p.n}


def dec_params(v) -> EllipsoidParams:
    return EllipsoidParams(dec_frac(v["p"]), int(v["n"]))


def _enc_matrix(M) -> list:
    return [enc_cvec(row) for row in np.asarray(M)]


def _dec_matrix(v) -> np.ndarray:
    return np.array([dec_cvec(row) for row in v], dtype=complex)


# ---------------------------------------------------------------------------
# automorphisms


def enc_aut(obj) -> dict:
    if isinstance(obj, am.BallAutomorphism):
        return {"type": "ball", "a": enc_cvec(obj.a), "Q": _enc_matrix(obj.Q), "R": enc_complex(obj.R)}
    if isinstance(obj, am.LI):
        return {"type": "LI", "zeta": enc_turn(obj.zeta), "eta": [enc_turn(e) for e in obj.eta],
                "m": obj.m, "l": obj.l}
    if isinstance(obj, am.LII):
        return {"type": "LII", "a0": enc_frac(obj.a0), "zeta1": enc_turn(obj.zeta1),
                "zeta2": enc_turn(obj.zeta2), "eta": [enc_turn(e) for e in obj.eta],
                "m": obj.m, "l": obj.l}
    if isinstance(obj, am.LIII):
        return {"type": "LIII", "a0": enc_frac(obj.a0), "zeta1": enc_turn(obj.zeta1),
                "zeta2": enc_turn(obj.zeta2), "m": obj.m, "l": obj.l}
    if isinstance(obj, am.LIV):
        return {"type": "LIV", "zeta": enc_turn(obj.zeta), "eta": enc_turn(obj.eta),
                "m": obj.m, "l": obj.l}
    if isinstance(obj, am.PhiI):
        return {"type": "PhiI", "params": enc_params(obj.params), "zeta": enc_turn(obj.zeta)}
    if isinstance(obj, am.PhiII):
        return {"type": "PhiII", "params": enc_params(obj.params), "zeta1": enc_turn(obj.zeta1),
                "zeta2": enc_turn(obj.zeta2), "a0": enc_frac(obj.a0), "omega": enc_turn(obj.omega)}
    if isinstance(obj, am.PhiIII):
        return {"type": "PhiIII", "params": enc_params(obj.params), "zeta": enc_turn(obj.zeta)}
    raise TypeError(f"cannot encode {obj!r}")


def dec_aut(v: dict):
    """Decode any automorphism-like object.

    Besides the encodings produced by :func:`enc_aut`, accepts the construction
    requests ``{"type": "unitary", "U": ...}`` and
    ``{"type": "moebius", "a": ..., "U": ...}`` (``U`` optional).
    """
    kind = v.get("type")
    if kind == "ball":
        return am.BallAutomorphism(dec_cvec(v["a"]), _dec_matrix(v["Q"]), dec_complex(v["R"]))
    if kind == "unitary":
        return am.make_unitary_aut(_dec_matrix(v["U"]))
    if kind == "moebius":
        U = _dec_matrix(v["U"]) if "U" in v else None
        return am.make_moebius_aut(dec_cvec(v["a"]), U)
    if kind == "LI":
        return am.LI(dec_turn(v["zeta"]), [dec_turn(e) for e in v["eta"]], v.get("m", 1), v.get("l", 1))
    if kind == "LII":
        return am.LII(dec_frac(v["a0"]), dec_turn(v["zeta1"]), dec_turn(v["zeta2"]),
                      [dec_turn(e) for e in v["eta"]], v.get("m", 1), v.get("l", 1))
    if kind == "LIII":
        return am.LIII(dec_frac(v["a0"]), dec_turn(v["zeta1"]), dec_turn(v["zeta2"]),
                       v.get("m", 2), v.get("l", 1))
    if kind == "LIV":
        return am.LIV(dec_turn(v["zeta"]), dec_turn(v["eta"]), v.get("m", 2), v.get("l", 2))
    if kind == "PhiI":
        return am.PhiI(dec_params(v["params"]), dec_turn(v.get("zeta", "0")))
    if kind == "PhiII":
        return am.PhiII(dec_params(v["params"]), dec_turn(v["zeta1"]), dec_turn(v["zeta2"]),
                        dec_frac(v.get("a0", "0")), dec_turn(v.get("omega", "0")))
    if kind == "PhiIII":
        params = dec_params(v["params"]) if "params" in v else EllipsoidParams(Fraction(1, 2), 2)
        return am.PhiIII(dec_turn(v.get("zeta", "0")), params)
    raise ValueError(f"unknown automorphism type {kind!r}")


def as_ball(obj) -> am.BallAutomorphism:
    """Ball automorphism underlying a ball-level object (or a PhiII lift)."""
    if isinstance(obj, am.BallAutomorphism):
        return obj
    if isinstance(obj, (am.LI, am.LII, am.LIII, am.LIV)):
        return am.from_lemma_template(obj)
    if isinstance(obj, am.PhiII):
        return obj.ball_lift
    raise TypeError(f"{type(obj).__name__} has no ball automorphism representation")


# ---------------------------------------------------------------------------
# proper map specs and reports


def enc_step(step) -> dict:
    if isinstance(step, AutStep):
        return {"step": "aut", "aut": enc_aut(step.aut)}
    if isinstance(step, PowerStep):
        return {"step": "power", "l": step.l}
    if isinstance(step, ScaleStep):
        return {"step": "scale", "factor": enc_complex(step.factor)}
    raise TypeError(f"cannot encode step {step!r}")


def dec_step(v: dict):
    kind = v.get("step")
    if kind == "aut":
        return AutStep(dec_aut(v["aut"]))
    if kind == "power":
        return PowerStep(int(v["l"]))
    if kind == "scale":
        return ScaleStep(dec_complex(v["factor"]))
    raise ValueError(f"unknown step {kind!r}")


def enc_spec(f) -> dict:
    if isinstance(f, Standard):
        return {"type": "Standard", "k": f.k, "psi": enc_aut(f.psi),
                "src": enc_params(f.src), "dst": enc_params(f.dst)}
    if isinstance(f, Special):
        return {"type": "Special", "m": f.m, "zeta3": enc_turn(f.zeta3), "phi2": enc_aut(f.phi2)}
    if isinstance(f, Chain):
        return {"type": "Chain", "steps": [enc_step(s) for s in f.steps],
                "src": enc_params(f.src), "dst": enc_params(f.dst)}
    raise TypeError(f"cannot encode spec {f!r}")


def dec_spec(v: dict):
    kind = v.get("type")
    if kind == "Standard":
        return Standard(int(v["k"]), dec_aut(v["psi"]), dec_params(v["src"]), dec_params(v["dst"]))
    if kind == "Special":
        return Special(int(v["m"]), dec_turn(v["zeta3"]), dec_aut(v["phi2"]))
    if kind == "Chain":
        return Chain(tuple(dec_step(s) for s in v["steps"]), dec_params(v["src"]), dec_params(v["dst"]))
    raise ValueError(f"unknown spec type {kind!r}")


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def enc_report(r: VerificationReport) -> dict:
    return {
        "passed": r.passed,
        "seed": r.seed,
        "checks": [
            {
                "name": c.name,
                "samples": c.samples,
                "max_residual": _num(c.max_residual),
                "tolerance": _num(c.tolerance),
                "passed": bool(c.passed),
                "details": c.details,
            }
            for c in r.checks
        ],
    }
