"""Explicit affine models and the always-available degree-n quotient curve.

The full model lives in affine 4-space and needs 2f >= e; it consists of

    (1)  y**n = beta**u (1 - beta)**v
    (2)  x**m = 1 - beta                      with m = p**(e-f)
    (3)  z**(p**f) = x**(-r) * prod over the m-th roots of unity

where r = (q**m - 1) / p**e is an exact integer coprime to p and the
factor (x - eta**mi) carries the literal exponent a * mi with
a = p**(2f - e); the exponent is read as the product of the constant a
with the summation index.  Equation (1) alone is a quotient of every
curve in the family and is emitted by ``weil_quotient`` without any
hypothesis.  The root of unity eta is kept symbolic; nothing here ever
evaluates it numerically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .arith import p_adic_valuation
from .classify import CurveClass, representative_lift
from .errors import HypothesisFailed, OracleFailure
from .group import GroupParams


@dataclass(frozen=True)
class CurveModel:
    """Data of equations (1) to (3) for one class."""

    n: int
    u: int
    v: int
    m: int
    pf: int
    r: int
    a: int
    factor_exponents: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class WeilRecord:
    """Equation (1) on its own: y**n = beta**u (1 - beta)**v."""

    n: int
    u: int
    v: int
    lift: tuple[int, int, int]
    note: str


_LIFT_NOTE = (
    "exponents follow the chosen rotation of the class triple; "
    "other rotations give isomorphic quotients"
)


def compute_r(gp: GroupParams) -> int:
    """The exact integer (q**m - 1) / p**e, verified coprime to p.

    The numerator grows far beyond machine words, so this single path
    runs on arbitrary precision integers.  The p-adic valuation of the
    numerator must be exactly e; anything else is an arithmetic bug.
    """
    p, e = gp.pp.p, gp.pp.e
    numerator = gp.q**gp.m - 1
    if p_adic_valuation(numerator, p) != e:
        raise OracleFailure(
            f"valuation of q**m - 1 at p is not e for (p,e,f)=({p},{e},{gp.f})"
        )
    r = numerator // p**e
    if math.gcd(r, p) != 1:
        raise OracleFailure(f"r = {r} shares a factor with p = {p}")
    return r


def weil_quotient(gp: GroupParams, c: CurveClass) -> WeilRecord:
    """Quotient equation record for any class; no hypothesis required."""
    u, v, w = representative_lift(gp, c)
    return WeilRecord(gp.pp.n, u, v, (u, v, w), _LIFT_NOTE)


def full_model(gp: GroupParams, c: CurveClass) -> CurveModel:
    """Complete model; raises HypothesisFailed unless 2f >= e."""
    p, e, f = gp.pp.p, gp.pp.e, gp.f
    if 2 * f < e:
        raise HypothesisFailed(
            f"full model needs 2f >= e, got 2*{f} < {e}; "
            "weil_quotient still provides the degree-n quotient"
        )
    u, v, _ = representative_lift(gp, c)
    r = compute_r(gp)
    a = p ** (2 * f - e)
    factors = tuple((mi, a * mi) for mi in range(gp.m))
    return CurveModel(gp.pp.n, u, v, gp.m, p**f, r, a, factors)


def model_to_dict(model: CurveModel) -> dict:
    return {
        "n": model.n,
        "u": model.u,
        "v": model.v,
        "m": model.m,
        "pf": model.pf,
        "r": model.r,
        "a": model.a,
        "eta": f"zeta_{model.m}",
        "factorExponents": [list(pair) for pair in model.factor_exponents],
    }


def model_from_dict(data: dict) -> CurveModel:
    return CurveModel(
        n=data["n"],
        u=data["u"],
        v=data["v"],
        m=data["m"],
        pf=data["pf"],
        r=data["r"],
        a=data["a"],
        factor_exponents=tuple((mi, ex) for mi, ex in data["factorExponents"]),
    )


def _sup(exp: int) -> str:
    """LaTeX exponent: omitted when 1, braced when longer than one character."""
    if exp == 1:
        return ""
    text = str(exp)
    return f"^{text}" if len(text) == 1 else f"^{{{text}}}"


def _eta_factor_latex(mi: int, exp: int) -> str:
    if exp == 0:
        return ""
    if mi == 0:
        return f"(x-1){_sup(exp)}"
    eta = "\\eta" if mi == 1 else f"\\eta{_sup(mi)}"
    return f"(x-{eta}){_sup(exp)}"


def render(model: CurveModel, fmt: str) -> str:
    """Deterministic serialization: latex, json or plain."""
    if fmt == "json":
        return json.dumps(model_to_dict(model), sort_keys=True)
    if fmt == "latex":
        neg_r = str(-model.r)
        lines = [
            f"y{_sup(model.n)} = \\beta{_sup(model.u)}(1-\\beta){_sup(model.v)}",
            f"x{_sup(model.m)} = 1-\\beta",
            f"z{_sup(model.pf)} = x^{{{neg_r}}}"
            + "".join(_eta_factor_latex(mi, ex) for mi, ex in model.factor_exponents),
        ]
        return "\n".join(lines) + "\n"
    if fmt == "plain":
        factors = " ".join(
            f"(x - eta^{mi})^{ex}" for mi, ex in model.factor_exponents
        )
        lines = [
            f"y^{model.n} = beta^{model.u} (1 - beta)^{model.v}",
            f"x^{model.m} = 1 - beta",
            f"z^{model.pf} = x^-{model.r} {factors}".rstrip(),
            f"r = {model.r}",
            f"a = {model.a}",
            f"eta = zeta_{model.m} (a primitive root of unity of order {model.m})",
        ]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_weil(record: WeilRecord, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {
                "n": record.n,
                "u": record.u,
                "v": record.v,
                "lift": list(record.lift),
                "note": record.note,
            },
            sort_keys=True,
        )
    if fmt == "latex":
        return (
            f"y{_sup(record.n)} = \\beta{_sup(record.u)}(1-\\beta){_sup(record.v)}\n"
        )
    if fmt == "plain":
        return (
            f"y^{record.n} = beta^{record.u} (1 - beta)^{record.v}\n"
            f"note: {record.note}\n"
        )
    raise ValueError(f"unknown format {fmt!r}")
