"""Text, LaTeX and JSON renderings of polynomials, operators and recurrences.

Ordering is fixed so output is byte-for-byte reproducible: polynomial terms
by descending degree, operator terms by descending order or shift offset.
Coefficients in n are shown factored into Pochhammer symbols when their
integer roots can be found; the JSON form always carries the raw reduced
numerator and denominator.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, RatFun, integer_roots

_SUPPORTED = ("text", "latex")


# -- scalars and polynomials ---------------------------------------------


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _monomial(var: str, k: int, style: str) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{{{k}}}" if style == "latex" else f"{var}^{k}"


def _poly_terms(p: Poly, style: str) -> list[tuple[bool, str]]:
    out = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        a = abs(c)
        mono = _monomial(p.var, k, style)
        if mono and a == 1:
            body = mono
        else:
            if style == "latex":
                num = _frac_latex(a)
            else:
                num = _frac_text(a)
                if a.denominator != 1 and mono:
                    num = f"({num})"
            body = num + mono
        out.append((c < 0, body))
    return out


def _join_terms(terms: list[tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    neg, body = terms[0]
    s = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        s += (" - " if neg else " + ") + body
    return s


def poly_text(p: Poly) -> str:
    return _join_terms(_poly_terms(p, "text"))


def poly_latex(p: Poly) -> str:
    return _join_terms(_poly_terms(p, "latex"))


# -- factored coefficients in n -------------------------------------------


@dataclass(frozen=True)
class Factored:
    """``const * prod num_factors * num_rest / (prod den_factors * den_rest)``.

    Each factor is ``(shift, count)`` meaning ``(var + shift)_count``; a rest
    polynomial is primitive with integer coefficients and positive leading
    coefficient (or the constant 1).
    """

    const: Fraction
    num_factors: tuple[tuple[int, int], ...]
    num_rest: Poly
    den_factors: tuple[tuple[int, int], ...]
    den_rest: Poly


def _runs(roots: list[int], pochhammer: bool) -> list[tuple[int, int]]:
    left = Counter(roots)
    runs = []
    while left:
        r = min(left)
        m = 1
        if pochhammer:
            while left[r + m] > 0:
                m += 1
        for i in range(m):
            left[r + i] -= 1
            if not left[r + i]:
                del left[r + i]
        # roots r .. r+m-1 are the zeros of (var - r - m + 1)_m
        runs.append((-(r + m - 1), m))
    return sorted(runs)


def _split(p: Poly, pochhammer: bool):
    roots = integer_roots(p)
    rest = p
    for r in roots:
        rest = rest // Poly((-r, 1), p.var)
    c = rest.content() * (1 if rest.lc > 0 else -1)
    return c, tuple(_runs(roots, pochhammer)), rest / c


def factor(r: RatFun | Poly, pochhammer: bool = True) -> Factored:
    if isinstance(r, Poly):
        r = RatFun(r)
    if not r:
        return Factored(Fraction(0), (), Poly((1,), r.var), (), Poly((1,), r.var))
    cn, fn, rn = _split(r.num, pochhammer)
    cd, fd, rd = _split(r.den, pochhammer)
    return Factored(cn / cd, fn, rn, fd, rd)


def _linear(var: str, shift: int, style: str) -> str:
    if not shift:
        return var
    sign = "+" if shift > 0 else "-"
    return f"{var}{sign}{abs(shift)}"


def _factor_strings(factors, rest: Poly, var: str, style: str) -> list[str]:
    out = []
    counts = Counter(factors)
    for (shift, m), e in sorted(counts.items()):
        base = _linear(var, shift, style)
        if m > 1:
            s = f"({base})_{{{m}}}" if style == "latex" else f"({base})_{m}"
            out.extend([s] * e)
            continue
        s = base if shift == 0 else f"({base})"
        if e > 1:
            s = f"{s}^{{{e}}}" if style == "latex" else f"{s}^{e}"
        out.append(s)
    if rest.degree > 0:
        body = poly_latex(rest) if style == "latex" else poly_text(rest)
        out.append(f"({body})")
    return out


def ratfun_render(r: RatFun | Poly, style: str = "text", pochhammer: bool = True) -> str:
    if style not in _SUPPORTED:
        raise ValueError(f"unknown style {style!r}")
    fac = factor(r, pochhammer)
    if not fac.const:
        return "0"
    var = fac.num_rest.var
    neg = fac.const < 0
    c = abs(fac.const)
    nums = _factor_strings(fac.num_factors, fac.num_rest, var, style)
    dens = _factor_strings(fac.den_factors, fac.den_rest, var, style)
    sign = "-" if neg else ""
    if style == "latex":
        top = ("" if c.numerator == 1 and nums else str(c.numerator)) + "".join(nums)
        bottom = ("" if c.denominator == 1 else str(c.denominator)) + "".join(dens)
        if not bottom:
            return sign + top
        return f"{sign}\\frac{{{top}}}{{{bottom}}}"
    cs = "" if c == 1 and nums else _frac_text(c)
    top = "*".join(([cs] if cs else []) + nums)
    if not dens:
        return sign + top
    bottom = dens[0] if len(dens) == 1 else "(" + "*".join(dens) + ")"
    return f"{sign}{top}/{bottom}"


def ratfun_text(r: RatFun) -> str:
    if r.is_poly():
        return poly_text(r.num)
    num = poly_text(r.num)
    return f"({num})/({poly_text(r.den)})"


def ratfun_latex(r: RatFun) -> str:
    if r.is_poly():
        return poly_latex(r.num)
    return f"\\frac{{{poly_latex(r.num)}}}{{{poly_latex(r.den)}}}"


# -- operators --------------------------------------------------------------


def _wrap(s: str) -> str:
    return f"({s})" if (" " in s or s.startswith("-")) else s


def diffop_text(q) -> str:
    parts = []
    for j in range(q.order, -1, -1):
        c = q.coeff(j)
        if not c:
            continue
        cs = ratfun_text(c)
        mono = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
        if not mono:
            parts.append(_wrap(cs))
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"{_wrap(cs)}*{mono}")
    return " + ".join(parts) if parts else "0"


def diffop_latex(q) -> str:
    parts = []
    for j in range(q.order, -1, -1):
        c = q.coeff(j)
        if not c:
            continue
        cs = ratfun_latex(c)
        mono = "" if j == 0 else ("\\partial" if j == 1 else f"\\partial^{{{j}}}")
        if " " in cs or cs.startswith("-"):
            cs = f"\\left({cs}\\right)"
        parts.append(cs + mono if cs != "1" or not mono else mono)
    return " + ".join(parts) if parts else "0"


def _shift_symbol(k: int, style: str) -> str:
    if k == 0:
        return ""
    if style == "latex":
        return "\\Theta" if k == 1 else f"\\Theta^{{{k}}}"
    if k == 1:
        return "Theta"
    return f"Theta^{k}" if k > 0 else f"Theta^({k})"


def shiftop_text(q, style: str = "text") -> str:
    parts = []
    for k in q.offsets():
        cs = ratfun_render(q.coeff(k), style)
        sym = _shift_symbol(k, style)
        if not sym:
            parts.append(cs)
        elif cs == "1":
            parts.append(sym)
        elif style == "latex":
            parts.append(f"{cs}\\,{sym}")
        else:
            parts.append(f"{_wrap(cs)}*{sym}")
    return " + ".join(parts) if parts else "0"


def _hhat(k: int, style: str) -> str:
    idx = _linear("n", k, style)
    return f"\\hat{{h}}({idx},x)" if style == "latex" else f"hhat({idx},x)"


def recurrence_terms(rec, style: str = "text") -> list[tuple[int, str]]:
    """``(offset, rendered coefficient)`` pairs in descending offset order."""
    return [(k, ratfun_render(rec.coeff(k), style)) for k in rec.offsets]


def recurrence_text(rec) -> str:
    lines = [
        f"partition: {rec.partition}",
        f"f(x) = {poly_text(rec.f)}",
        f"terms: {len(rec)}  offsets: {', '.join(f'{k:+d}' for k in rec.offsets)}",
        "f(x)*hhat(n,x) =",
    ]
    for k, cs in recurrence_terms(rec, "text"):
        lines.append(f"    + {cs} * {_hhat(k, 'text')}")
    return "\n".join(lines)


def recurrence_latex(rec) -> str:
    rhs = []
    for k, cs in recurrence_terms(rec, "latex"):
        if cs.startswith("-"):
            rhs.append(f"- {cs[1:]}\\,{_hhat(k, 'latex')}")
        else:
            rhs.append(f"+ {cs}\\,{_hhat(k, 'latex')}")
    body = " ".join(rhs)
    if body.startswith("+ "):
        body = body[2:]
    return f"\\left({poly_latex(rec.f)}\\right)\\hat{{h}}(n,x) = {body}"


# -- JSON ---------------------------------------------------------------------


def _rat_json(c: Fraction) -> list[str]:
    return [str(c.numerator), str(c.denominator)]


def _rat_parse(pair) -> Fraction:
    num, den = pair
    return Fraction(int(num), int(den))


def poly_to_json(p: Poly) -> list[list[str]]:
    return [_rat_json(c) for c in p.coeffs]


def poly_from_json(data, var: str) -> Poly:
    return Poly([_rat_parse(c) for c in data], var)


def ratfun_to_json(r: RatFun) -> dict:
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfun_from_json(data, var: str) -> RatFun:
    return RatFun(poly_from_json(data["num"], var), poly_from_json(data["den"], var))


def recurrence_to_json(rec) -> dict:
    return {
        "partition": list(rec.partition.parts),
        "f": {"coeffs": poly_to_json(rec.f)},
        "terms": [
            {"offset": k, **ratfun_to_json(rec.coeff(k))} for k in rec.offsets
        ],
    }


def recurrence_from_json(data: dict):
    from .bispectral import Recurrence
    from .hermite import Partition
    from .operators import ShiftOp

    terms = {}
    for t in data["terms"]:
        k = int(t["offset"])
        if k in terms:
            raise ValueError(f"duplicate offset {k}")
        terms[k] = ratfun_from_json(t, "n")
    return Recurrence(
        Partition(tuple(data["partition"])),
        poly_from_json(data["f"]["coeffs"], "x"),
        ShiftOp(terms),
    )


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
