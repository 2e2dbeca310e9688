"""Sparse multivariate polynomials with rational coefficients.

A monomial is a sorted tuple of variable indices (repetition encodes powers),
so ``x0**2 * x3`` is ``(0, 0, 3)``.  Only what the identity checks need is
implemented.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[tuple(sorted(m))] = Fraction(c)

    @classmethod
    def var(cls, i: int) -> "Poly":
        return cls({(i,): Fraction(1)})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Fraction(c)}) if c else cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        out = Poly()
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        out.terms = t
        return out

    def __neg__(self) -> "Poly":
        out = Poly()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        out = Poly()
        if c:
            out.terms = {m: c * v for m, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        t: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        out = Poly()
        out.terms = t
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        return NotImplemented

    def evaluate(self, values: Mapping[int, Fraction] | list) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            p = c
            for i in m:
                p *= values[i]
            total += p
        return total

    def coefficients(self, var: int = 0) -> list[Fraction]:
        """Dense coefficient list of a univariate polynomial in ``var``."""
        deg = max((len(m) for m in self.terms), default=0)
        out = [Fraction(0)] * (deg + 1)
        for m, c in self.terms.items():
            if any(i != var for i in m):
                raise ValueError("not univariate")
            out[len(m)] += c
        return out

    def format(self, names: Iterable[str] | None = None) -> str:
        names = list(names) if names is not None else None
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join((names[i] if names else f"t{i}") for i in m)
            parts.append(f"{c}" if not m else f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.format()})"


def poly_sum(polys: Iterable[Poly]) -> Poly:
    out = Poly()
    for p in polys:
        out = out + p
    return out
