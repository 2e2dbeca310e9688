"""Exceptional and subexceptional series: dimension formulas, the magic-triangle
involution, superdimension bookkeeping and formal sl2 characters."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exactla import as_fraction
from .polynomial import Poly

__all__ = [
    "SeriesPoint",
    "SuperRow",
    "VirtualCharacter",
    "series_dims",
    "triangle_involution",
    "superdim",
    "check_super_series",
    "series_identity_holds",
    "vc_expand",
    "irrep",
    "symbol",
    "check_dus",
    "dus_specialization",
    "SERIES_LABELS",
    "EXCEPTIONAL_SPECIALIZATIONS",
]

SERIES_LABELS = {
    Fraction(1): ("C_3", "F_4"),
    Fraction(2): ("A_5", "E_6"),
    Fraction(4): ("D_6", "E_7"),
    Fraction(6): ("D_6.H_{32}", "E_7.H_{56}"),
    Fraction(8): ("E_7", "E_8"),
    Fraction(-3): ("so(10)", "osp(10|2)"),
    Fraction(-8, 3): ("so(7)", "F(4)"),
    Fraction(-5, 2): ("G_2", "G(3)"),
    Fraction(-7, 3): ("gl(3)", "sl(3|2)"),
    Fraction(-2): ("sl(2)", "sl(2|2)"),
    Fraction(-3, 2): ("0", "osp(1|2)"),
}

# (gbar dim, V dim) for the exceptional table: G2, F4, E6, E7, E8
EXCEPTIONAL_SPECIALIZATIONS = ((3, 4), (21, 14), (35, 20), (66, 32), (133, 56))


@dataclass(frozen=True)
class SeriesPoint:
    m: Fraction
    dim_sub: Fraction
    dim_exc: Fraction
    rep_dim: Fraction
    labels: tuple[str, str] | None = None

    @property
    def integral(self) -> bool:
        return self.dim_sub.denominator == 1 and self.dim_exc.denominator == 1

    def to_json(self) -> dict:
        return {"m": str(self.m), "dim_sub": str(self.dim_sub), "dim_exc": str(self.dim_exc),
                "rep_dim": str(self.rep_dim), "labels": list(self.labels) if self.labels else None}


def series_dims(m) -> SeriesPoint:
    """dim g(H) = 3(2m+3)(3m+4)/(m+4), dim g(O) = 2(3m+7)(5m+8)/(m+4), V = 6m+8."""
    m = as_fraction(m)
    if m == -4:
        raise ZeroDivisionError("the series formulas have a pole at m = -4")
    sub = 3 * (2 * m + 3) * (3 * m + 4) / (m + 4)
    exc = 2 * (3 * m + 7) * (5 * m + 8) / (m + 4)
    return SeriesPoint(m, sub, exc, 6 * m + 8, SERIES_LABELS.get(m))


def series_identity_holds() -> bool:
    """2(3m+7)(5m+8) - 3(2m+3)(3m+4) - (12m+19)(m+4) == 0 as a polynomial in m,
    i.e. dim_exc - dim_sub - 3 - 2(6m+8) vanishes identically."""
    m = Poly.var(0)

    def lin(a, b):
        return m.scale(a) + Poly.const(b)

    lhs = (lin(3, 7) * lin(5, 8)).scale(2) - (lin(2, 3) * lin(3, 4)).scale(3) - lin(12, 19) * lin(1, 4)
    return lhs.is_zero()


def triangle_involution(m) -> Fraction:
    """m -> -2m / (m + 2)."""
    m = as_fraction(m)
    if m == -2:
        raise ZeroDivisionError("the involution has a pole at m = -2")
    return -2 * m / (m + 2)


# ---------------------------------------------------------------------------
# superdimensions

_EXTRA = {"F(4)": 8, "G(3)": 3}  # (24|16) and (17|14)
_FAMILY = re.compile(r"(p?sl|gl|osp|so|sp)\((\-?\d+)(?:\|(\-?\d+))?\)")


def superdim(family: str, *params: int) -> int:
    """Even minus odd dimension.

    ``superdim("osp", 10, 2)`` or ``superdim("osp(10|2)")``; so(n) and sp(2n)
    are the purely even cases; F(4) and G(3) are tabulated.
    """
    if not params:
        if family in _EXTRA:
            return _EXTRA[family]
        m = _FAMILY.fullmatch(family.replace(" ", ""))
        if not m:
            raise ValueError(f"cannot parse {family!r}")
        family = m.group(1)
        params = tuple(int(g) for g in m.groups()[1:] if g is not None)
    if any(p < 0 for p in params):
        raise ValueError("parameters must be non-negative")
    if family in ("sl", "gl", "psl"):
        p, q = (params + (0,))[:2]
        if p + q == 0:
            if family == "gl":
                return 0  # the zero algebra
            raise ValueError(f"{family}(0|0) is not defined")
        d = (p - q) ** 2
        if family == "gl":
            return d
        if family == "sl":
            return d - 1
        if p != q:
            raise ValueError("psl(p|q) needs p = q")
        return d - 2
    if family == "osp":
        big_m, two_n = (params + (0,))[:2]
        if two_n % 2:
            raise ValueError("osp(M|2n) needs an even second parameter")
        d = big_m - two_n
        return d * (d - 1) // 2
    if family == "so":
        (n,) = params
        return n * (n - 1) // 2
    if family == "sp":
        (n,) = params
        if n % 2:
            raise ValueError("sp(n) needs n even")
        return n * (n + 1) // 2
    raise ValueError(f"unknown family {family!r}")


@dataclass
class SuperRow:
    m: Fraction
    side: str  # "H" (subexceptional) or "O" (exceptional)
    literal: str
    evaluated: str
    n: int | None
    superdim: int
    expected: Fraction
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"m": str(self.m), "side": self.side, "literal": self.literal, "evaluated": self.evaluated,
                "n": self.n, "superdim": self.superdim, "expected": str(self.expected),
                "passed": self.passed, "note": self.note}


@dataclass
class SuperReport:
    rows: list[SuperRow] = field(default_factory=list)
    rep_rows: list[tuple[Fraction, int, int, bool]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows) and all(r[3] for r in self.rep_rows)


# Fixed rows: (m, g(H) family, g(O) family, stated 6m+8, |V| as tabulated)
_FIXED = (
    (Fraction(-3), "so(10)", "osp(10|2)", -10, 10),
    (Fraction(-8, 3), "so(7)", "F(4)", -8, 8),
    (Fraction(-5, 2), "G_2", "G(3)", -7, 7),
    (Fraction(-7, 3), "gl(3)", "sl(3|2)", -6, 6),
    (Fraction(-2), "sl(2)", "sl(2|2)", -4, 4),
    (Fraction(-3, 2), "0", "osp(1|2)", -1, 1),
)

# Rows with a free n: (m, stated 6m+8, H literal, O literal); families are callables of n
_GENERIC = (
    (Fraction(-3), -10, ("osp(2n+10|2n)", lambda n: f"osp({2 * n + 10}|{2 * n})"),
     ("osp(2n+10|2n+2)", lambda n: f"osp({2 * n + 10}|{2 * n + 2})")),
    (Fraction(-7, 3), -6, ("gl(n+3|n)", lambda n: f"gl({n + 3}|{n})"),
     ("sl(n+3|n+2)", lambda n: f"sl({n + 3}|{n + 2})")),
    (Fraction(-2), -4, ("sl(n+2|n)", lambda n: f"sl({n + 2}|{n})"),
     ("sl(n+2|n+2)", lambda n: f"sl({n + 2}|{n + 2})")),
    (Fraction(-3, 2), -1, ("osp(2n+1|2n)", lambda n: f"osp({2 * n + 1}|{2 * n})"),
     ("osp(2n+1|2n+2)", lambda n: f"osp({2 * n + 1}|{2 * n + 2})")),
    (Fraction(-4, 3), 0, ("gl(n|n)", lambda n: f"gl({n}|{n})"),
     ("sl(n+2|n)", lambda n: f"sl({n + 2}|{n})")),
    (Fraction(-1), 2, ("gl(n+1|1)", lambda n: f"gl({n + 1}|1)"),
     ("sl(n+3|n)", lambda n: f"sl({n + 3}|{n})")),
)

# Interpretive replacements when the literal family misses the formula value
_INTERPRET = {
    "sl(2|2)": ("psl(2|2)", "A(1,1) read as the simple quotient psl(2|2)"),
    "sl(n+2|n+2)": (lambda n: f"psl({n + 2}|{n + 2})", "A(n+1,n+1) read as psl(n+2|n+2)"),
    "gl(n+1|1)": (lambda n: f"gl({n + 1}|{n})",
                  "gl(n+1|1) has superdim n^2; gl(n+1|n) (equal at n=1) matches for all n"),
}

_EVEN = {"so(10)": 45, "so(7)": 21, "G_2": 14, "gl(3)": 9, "sl(2)": 3, "0": 0}


def _sdim(name: str) -> int:
    if name in _EVEN:
        return _EVEN[name]
    return superdim(name)


def check_super_series(ns: Iterable[int] = (0, 1, 2, 3)) -> SuperReport:
    """Superdimension of every entry of the three super tables against the series formulas."""
    rep = SuperReport()
    rep.notes.append("S^2(V) = 1 + V^2 and Lambda^2(V) = g + V_2 are recorded only; "
                     "they are not reducible to a dimension check from the stated data")
    ns = tuple(ns)

    def add(m, side, literal, evaluate, n):
        pt = series_dims(m)
        expected = pt.dim_sub if side == "H" else pt.dim_exc
        lit_name = evaluate(n) if callable(evaluate) else evaluate
        try:
            value = _sdim(lit_name)
        except ValueError:
            value = None
        if value == expected:
            rep.rows.append(SuperRow(m, side, literal, lit_name, n, value, expected, True))
            return
        if literal in _INTERPRET:
            alt, why = _INTERPRET[literal]
            alt_name = alt(n) if callable(alt) else alt
            alt_val = _sdim(alt_name)
            rep.rows.append(SuperRow(m, side, literal, alt_name, n, alt_val, expected, alt_val == expected,
                                     f"interpretive: {why}; literal {lit_name} gives {value}"))
            return
        rep.rows.append(SuperRow(m, side, literal, lit_name, n, value if value is not None else 0,
                                 expected, False, "mismatch"))

    for m, h, o, stated, vdim in _FIXED:
        add(m, "H", h, h, None)
        add(m, "O", o, o, None)
        rv = series_dims(m).rep_dim
        rep.rep_rows.append((m, stated, vdim, rv == stated and abs(rv) == vdim))
    for m, stated, (hlit, hfun), (olit, ofun) in _GENERIC:
        for n in ns:
            add(m, "H", hlit, hfun, n)
            add(m, "O", olit, ofun, n)
        rv = series_dims(m).rep_dim
        rep.rep_rows.append((m, stated, abs(stated), rv == stated))
    return rep


# ---------------------------------------------------------------------------
# virtual characters


Key = tuple  # (symbol monomial: sorted tuple of names, sl2 factors: sorted tuple of highest weights)


@dataclass(frozen=True)
class VirtualCharacter:
    """Integer combination of (symbol monomial) x [n1] x [n2] x ...

    Symbols (e.g. ``gbar``, ``V``) are opaque and commute; the empty
    monomial is the trivial symbol 1.  A tuple of several highest weights
    is an unexpanded tensor product; ``vc_expand`` applies Clebsch-Gordan.
    """

    terms: Mapping[Key, int]

    @classmethod
    def of(cls, terms: Mapping[Key, int]) -> "VirtualCharacter":
        out: dict[Key, int] = {}
        for (mono, ws), c in terms.items():
            key = (tuple(sorted(mono)), tuple(sorted(w for w in ws if w)) or (0,))
            out[key] = out.get(key, 0) + int(c)
        return cls({k: v for k, v in out.items() if v})

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return VirtualCharacter.of(t)

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return self + (-other)

    def __mul__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        """Tensor product (kept unexpanded in the sl2 factors)."""
        t: dict[Key, int] = {}
        for (m1, w1), c1 in self.terms.items():
            for (m2, w2), c2 in other.terms.items():
                ws = tuple(w for w in w1 + w2 if w) or (0,)
                key = (tuple(sorted(m1 + m2)), tuple(sorted(ws)))
                t[key] = t.get(key, 0) + c1 * c2
        return VirtualCharacter.of(t)

    def __eq__(self, other):
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Total dimension with each symbol replaced by a number and [n] by n+1."""
        total = 0
        for (mono, ws), c in self.terms.items():
            d = c
            for s in mono:
                d *= values[s]
            for w in ws:
                d *= w + 1
            total += d
        return total

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (mono, ws), c in sorted(self.terms.items()):
            sym = "*".join(mono) or "1"
            rep = "x".join(f"[{w}]" for w in ws)
            parts.append(f"{c:+d} {sym}(x){rep}")
        return " ".join(parts)

    def __repr__(self):
        return f"VirtualCharacter({self.format()})"


def irrep(n: int, coeff: int = 1) -> VirtualCharacter:
    return VirtualCharacter.of({((), (n,)): coeff})


def symbol(name: str, coeff: int = 1) -> VirtualCharacter:
    """Opaque symbol tensored with the trivial representation; ``"1"`` is the unit."""
    mono = () if name == "1" else (name,)
    return VirtualCharacter.of({(mono, (0,)): coeff})


def _clebsch_gordan(ws: tuple[int, ...]) -> dict[int, int]:
    cur = {0: 1}
    for w in ws:
        nxt: dict[int, int] = {}
        for a, c in cur.items():
            for k in range(abs(a - w), a + w + 1, 2):
                nxt[k] = nxt.get(k, 0) + c
        cur = nxt
    return cur


def vc_expand(x: VirtualCharacter) -> VirtualCharacter:
    """Collect every tensor product of irreducibles into a sum of irreducibles."""
    out: dict[Key, int] = {}
    for (mono, ws), c in x.terms.items():
        for k, mult in _clebsch_gordan(ws).items():
            key = (mono, (k,))
            out[key] = out.get(key, 0) + c * mult
    return VirtualCharacter.of(out)


def _dus_sides() -> tuple[VirtualCharacter, VirtualCharacter]:
    g, V, one = symbol("gbar"), symbol("V"), symbol("1")
    lhs = (g + V + one) * irrep(0) + one * (irrep(2) - irrep(1)) + (V + one) * (irrep(1) - irrep(0))
    rhs = g * irrep(0) + one * irrep(2) + V * irrep(1)
    return vc_expand(lhs), vc_expand(rhs)


def check_dus() -> bool:
    """(gbar+V+1)[0] + 1([2]-[1]) + (V+1)([1]-[0]) == gbar[0] + 1[2] + V[1] after expansion."""
    lhs, rhs = _dus_sides()
    return lhs == rhs


def dus_specialization(gbar: int, v: int) -> tuple[int, int]:
    """Both sides of the character identity evaluated at dim gbar, dim V."""
    lhs, rhs = _dus_sides()
    vals = {"gbar": gbar, "V": v}
    return lhs.evaluate(vals), rhs.evaluate(vals)
