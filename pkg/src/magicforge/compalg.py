"""Composition algebras, the sextonions, and Hermitian Jordan algebras as exact tables.

Basis conventions
-----------------
* split quaternions: the matrix units ``E11, E12, E21, E22`` of M_2(Q);
  conjugation is the adjugate and the norm is the determinant.
* split octonions: ``(u1, u2, E11, E12, E21, E22, v1, v2)`` with degrees
  ``(-1, -1, 0, 0, 0, 0, 1, 1)``; an element is a triple ``(u, A, v)`` of a
  column vector, a 2x2 matrix and a column vector.
* sextonions: the first six split-octonion coordinates ``(u, A)``.

Norms are stored through their polarization ``<x, y> = N(x+y) - N(x) - N(y)``,
so ``<1, 1> = 2`` and ``N(x) = <x, x> / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Mapping, Sequence

from .exactla import MatrixQ, SubspaceBasis, as_fraction, eigenspace, nullspace
from .polynomial import Poly

__all__ = [
    "AlgebraTable",
    "CayleyModuleSpec",
    "IdentityReport",
    "GradingReport",
    "UnknownAlgebra",
    "MissingStructure",
    "BASE_ALGEBRAS",
    "base_algebra",
    "cayley_dickson",
    "split_null_extension",
    "multiply",
    "conj_norm_trace",
    "radical_of_form",
    "check_identities",
    "check_graded",
    "jordan_hermitian",
    "sl2_actions",
    "is_homomorphism",
    "to_json",
    "from_json",
    "to_markdown",
    "resolve_algebra",
]

Coords = list  # list[Fraction]

BASE_ALGEBRAS = ("reals", "complex", "split_complex", "quaternion", "split_quaternion",
                 "octonion", "split_octonion", "sextonion")


class UnknownAlgebra(KeyError):
    pass


class MissingStructure(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    """A finite-dimensional algebra given by rational structure constants.

    ``mul[(i, j)]`` maps ``k`` to the coefficient of ``e_k`` in ``e_i e_j``;
    absent keys are zero.  ``conj`` acts on column vectors.
    """

    name: str
    dim: int
    mul: Mapping[tuple[int, int], Mapping[int, Fraction]]
    basis: tuple[str, ...]
    unit: tuple[Fraction, ...] | None = None
    conj: MatrixQ | None = None
    form: MatrixQ | None = None
    degrees: tuple[int, ...] | None = None
    kind: str = "composition"

    @cached_property
    def key(self) -> tuple:
        mul = tuple(sorted((ij, tuple(sorted(v.items()))) for ij, v in self.mul.items()))
        return (self.name, self.dim, mul, self.unit, self.conj, self.form, self.degrees, self.kind)

    def __eq__(self, other):
        if not isinstance(other, AlgebraTable):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def same_structure(self, other: "AlgebraTable") -> bool:
        """Equal multiplication, unit, conjugation and form, ignoring names."""
        return self.key[1:7] == other.key[1:7]

    def product(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self.mul.get((i, j), {})

    def e(self, i: int) -> Coords:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def one(self) -> Coords:
        if self.unit is None:
            raise MissingStructure(f"{self.name} has no unit")
        return list(self.unit)

    def multiply(self, x: Sequence, y: Sequence) -> Coords:
        return multiply(self, x, y)

    def left_matrix(self, x: Sequence) -> MatrixQ:
        cols = [self.multiply(x, self.e(j)) for j in range(self.dim)]
        return MatrixQ.from_rows([[c[i] for c in cols] for i in range(self.dim)])

    def right_matrix(self, x: Sequence) -> MatrixQ:
        cols = [self.multiply(self.e(j), x) for j in range(self.dim)]
        return MatrixQ.from_rows([[c[i] for c in cols] for i in range(self.dim)])

    def conjugate(self, x: Sequence) -> Coords:
        if self.conj is None:
            raise MissingStructure(f"{self.name} has no conjugation")
        return self.conj @ x

    def pairing(self, x: Sequence, y: Sequence) -> Fraction:
        if self.form is None:
            raise MissingStructure(f"{self.name} has no bilinear form")
        gy = self.form @ y
        return sum((as_fraction(a) * b for a, b in zip(x, gy)), Fraction(0))

    def norm(self, x: Sequence) -> Fraction:
        return self.pairing(x, x) / 2

    def real_part(self, x: Sequence) -> Fraction:
        """Coefficient of the unit in (x + conj x)/2."""
        s = [(as_fraction(a) + b) / 2 for a, b in zip(x, self.conjugate(x))]
        u = self.one()
        p = next(i for i, v in enumerate(u) if v)
        return s[p] / u[p]

    @cached_property
    def imaginary(self) -> SubspaceBasis:
        """Im of the algebra.

        Composition-type tables use the (-1)-eigenspace of conjugation; Jordan
        tables use the trace-form orthogonal complement of the unit.
        """
        if self.kind == "jordan":
            if self.form is None or self.unit is None:
                raise MissingStructure(f"{self.name} needs a unit and trace form")
            row = self.form @ self.unit
            return nullspace(MatrixQ.from_rows([row]))
        if self.conj is None:
            raise MissingStructure(f"{self.name} has no conjugation")
        return eigenspace(self.conj, -1)

    def structure_tensor(self) -> list[list[list[Fraction]]]:
        z = Fraction(0)
        out = [[[z] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), v in self.mul.items():
            for k, c in v.items():
                out[i][j][k] = c
        return out

    def __repr__(self):
        return f"AlgebraTable({self.name!r}, dim={self.dim})"


@dataclass(frozen=True)
class CayleyModuleSpec:
    base: AlgebraTable
    module_dim: int = 2
    right_action: str = "conjugate"


@dataclass
class IdentityReport:
    algebra: str
    identity: str
    passed: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed


@dataclass
class GradingReport:
    algebra: str
    passed: bool
    offending: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self):
        return self.passed


# ---------------------------------------------------------------------------
# construction helpers


def _clean(v) -> dict[int, Fraction]:
    return {k: Fraction(c) for k, c in enumerate(v) if c}


def _table(name: str, basis: Sequence[str], product: Callable[[int, int], Sequence], **kw) -> AlgebraTable:
    n = len(basis)
    mul = {}
    for i in range(n):
        for j in range(n):
            v = _clean(product(i, j))
            if v:
                mul[(i, j)] = v
    return AlgebraTable(name=name, dim=n, mul=mul, basis=tuple(basis), **kw)


def _polarize(n: int, norm: Callable[[list], Fraction]) -> MatrixQ:
    def e(i):
        return [Fraction(int(k == i)) for k in range(n)]

    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(2 * norm(e(i)))
            else:
                s = [a + b for a, b in zip(e(i), e(j))]
                row.append(norm(s) - norm(e(i)) - norm(e(j)))
        rows.append(row)
    return MatrixQ.from_rows(rows)


def _unit(n: int, i: int = 0) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == i)) for k in range(n))


# 2x2 matrices as tuples (a, b, c, d) = [[a, b], [c, d]]

def _mm(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _adj(x):
    a, b, c, d = x
    return (d, -b, -c, a)


def _madd(x, y):
    return tuple(p + q for p, q in zip(x, y))


def _mv(x, u):
    a, b, c, d = x
    return (a * u[0] + b * u[1], c * u[0] + d * u[1])


def _cols(u, v):
    return (u[0], v[0], u[1], v[1])


def _det(x):
    return x[0] * x[3] - x[1] * x[2]


def _split_octonion_product(x, y):
    """(u1,A1,v1)(u2,A2,v2) = (A1bar u2 + A2 u1, A1 A2 + (u2,v2) conj(u1,v1), A1bar v2 + A2 v1)."""
    u1, A1, v1 = tuple(x[0:2]), tuple(x[2:6]), tuple(x[6:8])
    u2, A2, v2 = tuple(y[0:2]), tuple(y[2:6]), tuple(y[6:8])
    A1b = _adj(A1)
    u = _madd(_mv(A1b, u2), _mv(A2, u1))
    v = _madd(_mv(A1b, v2), _mv(A2, v1))
    A = _madd(_mm(A1, A2), _mm(_cols(u2, v2), _adj(_cols(u1, v1))))
    return list(u) + list(A) + list(v)


def _split_octonion_norm(x):
    return _det(tuple(x[2:6])) - _det(_cols(x[0:2], x[6:8]))


@lru_cache(maxsize=None)
def _reals() -> AlgebraTable:
    return _table("reals", ["1"], lambda i, j: [1], unit=_unit(1),
                  conj=MatrixQ.identity(1), form=MatrixQ.from_rows([[2]]))


@lru_cache(maxsize=None)
def _complex() -> AlgebraTable:
    t = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1], (1, 1): [-1, 0]}
    return _table("complex", ["1", "i"], lambda i, j: t[(i, j)], unit=_unit(2),
                  conj=MatrixQ.diag([1, -1]), form=MatrixQ.diag([2, 2]))


@lru_cache(maxsize=None)
def _split_complex() -> AlgebraTable:
    t = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1], (1, 1): [1, 0]}
    return _table("split_complex", ["1", "j"], lambda i, j: t[(i, j)], unit=_unit(2),
                  conj=MatrixQ.diag([1, -1]), form=MatrixQ.diag([2, -2]))


@lru_cache(maxsize=None)
def _quaternion() -> AlgebraTable:
    # Hamilton: i^2 = j^2 = k^2 = ijk = -1
    sign = {(1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
            (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)}

    def prod(i, j):
        out = [0] * 4
        if i == 0:
            out[j] = 1
        elif j == 0:
            out[i] = 1
        elif i == j:
            out[0] = -1
        else:
            s, k = sign[(i, j)]
            out[k] = s
        return out

    return _table("quaternion", ["1", "i", "j", "k"], prod, unit=_unit(4),
                  conj=MatrixQ.diag([1, -1, -1, -1]), form=MatrixQ.diag([2, 2, 2, 2]))


@lru_cache(maxsize=None)
def _split_quaternion() -> AlgebraTable:
    def prod(i, j):
        x = [0] * 4
        y = [0] * 4
        x[i] = 1
        y[j] = 1
        return list(_mm(tuple(x), tuple(y)))

    conj = MatrixQ.from_rows([[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])
    return _table("split_quaternion", ["E11", "E12", "E21", "E22"], prod,
                  unit=(Fraction(1), Fraction(0), Fraction(0), Fraction(1)), conj=conj,
                  form=_polarize(4, lambda x: _det(tuple(x))))


OCTONION_BASIS = ("u1", "u2", "E11", "E12", "E21", "E22", "v1", "v2")
OCTONION_DEGREES = (-1, -1, 0, 0, 0, 0, 1, 1)


@lru_cache(maxsize=None)
def _split_octonion() -> AlgebraTable:
    def prod(i, j):
        x = [Fraction(int(k == i)) for k in range(8)]
        y = [Fraction(int(k == j)) for k in range(8)]
        return _split_octonion_product(x, y)

    conj = MatrixQ.diag([-1, -1, 1, 1, 1, 1, -1, -1])
    conj = MatrixQ.from_rows([
        [-1, 0, 0, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, -1],
    ])
    return _table("split_octonion", OCTONION_BASIS, prod,
                  unit=tuple(Fraction(v) for v in (0, 0, 1, 0, 0, 1, 0, 0)), conj=conj,
                  form=_polarize(8, _split_octonion_norm), degrees=OCTONION_DEGREES)


def _restrict(a: AlgebraTable, keep: Sequence[int], name: str) -> AlgebraTable:
    """Sub-table on the coordinate subspace ``keep``; raises if it is not closed."""
    pos = {k: n for n, k in enumerate(keep)}
    mul = {}
    for i in keep:
        for j in keep:
            v = a.product(i, j)
            if any(k not in pos for k in v):
                raise ValueError(f"coordinate subspace of {a.name} is not a subalgebra")
            if v:
                mul[(pos[i], pos[j])] = {pos[k]: c for k, c in v.items()}

    def sub(m: MatrixQ | None):
        if m is None:
            return None
        for i in keep:
            for j in range(a.dim):
                if j not in pos and m[j, i]:
                    if m is a.conj:
                        raise ValueError("conjugation does not preserve the subspace")
        return MatrixQ.from_rows([[m[i, j] for j in keep] for i in keep])

    unit = None
    if a.unit is not None:
        if any(a.unit[k] for k in range(a.dim) if k not in pos):
            raise ValueError("unit outside the subspace")
        unit = tuple(a.unit[k] for k in keep)
    degrees = tuple(a.degrees[k] for k in keep) if a.degrees else None
    return AlgebraTable(name=name, dim=len(keep), mul=mul, basis=tuple(a.basis[k] for k in keep),
                        unit=unit, conj=sub(a.conj), form=sub(a.form), degrees=degrees, kind=a.kind)


@lru_cache(maxsize=None)
def _sextonion() -> AlgebraTable:
    return _restrict(_split_octonion(), range(6), "sextonion")


@lru_cache(maxsize=None)
def _octonion() -> AlgebraTable:
    t = cayley_dickson(_quaternion(), 1)
    basis = ("1", "i", "j", "k", "l", "il", "jl", "kl")
    return AlgebraTable(name="octonion", dim=8, mul=t.mul, basis=basis, unit=t.unit,
                        conj=t.conj, form=t.form)


_BUILDERS = {
    "reals": _reals,
    "complex": _complex,
    "split_complex": _split_complex,
    "quaternion": _quaternion,
    "split_quaternion": _split_quaternion,
    "octonion": _octonion,
    "split_octonion": _split_octonion,
    "sextonion": _sextonion,
}


def base_algebra(name: str) -> AlgebraTable:
    """One of the named composition-type algebras (see ``BASE_ALGEBRAS``)."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownAlgebra(f"unknown algebra {name!r}; expected one of {', '.join(BASE_ALGEBRAS)}") from None


def cayley_dickson(a: AlgebraTable, epsilon) -> AlgebraTable:
    """Double ``a``: pairs (A, B) with

    (A1, B1)(A2, B2) = (A1 A2 - eps B2 conj(B1), conj(A1) B2 + A2 B1),
    conj(A, B) = (conj A, -B),  N(A, B) = N(A) + eps N(B).
    """
    if a.conj is None or a.form is None or a.unit is None:
        raise MissingStructure(f"{a.name} needs unit, conjugation and form for doubling")
    eps = as_fraction(epsilon)
    if eps == 0:
        raise ValueError("epsilon must be non-zero")
    n = a.dim

    def prod(i, j):
        x = [Fraction(int(k == i)) for k in range(2 * n)]
        y = [Fraction(int(k == j)) for k in range(2 * n)]
        A1, B1 = x[:n], x[n:]
        A2, B2 = y[:n], y[n:]
        first = [p - eps * q for p, q in zip(a.multiply(A1, A2), a.multiply(B2, a.conjugate(B1)))]
        second = [p + q for p, q in zip(a.multiply(a.conjugate(A1), B2), a.multiply(A2, B1))]
        return first + second

    conj = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    form = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            conj[i][j] = a.conj[i, j]
            form[i][j] = a.form[i, j]
            form[n + i][n + j] = eps * a.form[i, j]
        conj[n + i][n + i] = Fraction(-1)
    basis = list(a.basis) + [f"({b})'" for b in a.basis]
    return _table(f"CD({a.name},{eps})", basis, prod, unit=tuple(a.unit) + (Fraction(0),) * n,
                  conj=MatrixQ.from_rows(conj), form=MatrixQ.from_rows(form))


def split_null_extension(module: CayleyModuleSpec) -> AlgebraTable:
    """Split null extension H~ + M of the split quaternions by the Cayley module.

    M is Q^2 (column vectors) with left action q.m = conj(q) m and right action
    m.q = q m, and (q1, m1)(q2, m2) = (q1 q2, q1.m2 + m1.q2).  Coordinates are
    ordered (m1, m2, E11, E12, E21, E22), matching the split-octonion embedding.
    """
    base = module.base
    if module.module_dim != 2:
        raise ValueError("the Cayley module is two dimensional")
    if not base.same_structure(_split_quaternion()):
        raise ValueError(f"split null extension needs the split quaternions, got {base.name}")

    def as_pair(x):
        return tuple(x[0:2]), tuple(x[2:6])

    def prod(i, j):
        x = [Fraction(int(k == i)) for k in range(6)]
        y = [Fraction(int(k == j)) for k in range(6)]
        m1, q1 = as_pair(x)
        m2, q2 = as_pair(y)
        q = base.multiply(q1, q2)
        m = _madd(_mv(_adj(q1), m2), _mv(q2, m1))
        return list(m) + list(q)

    conj = MatrixQ.from_rows([
        [-1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 1, 0, 0, 0],
    ])
    return _table("sextonion", OCTONION_BASIS[:6], prod,
                  unit=tuple(Fraction(v) for v in (0, 0, 1, 0, 0, 1)), conj=conj,
                  form=_polarize(6, lambda x: _det(tuple(x[2:6]))), degrees=OCTONION_DEGREES[:6])


def multiply(a: AlgebraTable, x: Sequence, y: Sequence) -> Coords:
    if len(x) != a.dim or len(y) != a.dim:
        raise ValueError(f"{a.name} has dimension {a.dim}; got lengths {len(x)} and {len(y)}")
    out = [Fraction(0)] * a.dim
    xs = [(i, as_fraction(v)) for i, v in enumerate(x) if v]
    ys = [(j, as_fraction(v)) for j, v in enumerate(y) if v]
    for i, xi in xs:
        for j, yj in ys:
            p = a.mul.get((i, j))
            if p:
                c = xi * yj
                for k, v in p.items():
                    out[k] += c * v
    return out


def conj_norm_trace(a: AlgebraTable, x: Sequence) -> tuple[Coords, Fraction, Fraction]:
    """(conjugate, norm, real part) of ``x``; norm is normalised so N(1) = 1."""
    if a.conj is None or a.form is None:
        raise MissingStructure(f"{a.name} needs conjugation and form")
    return a.conjugate(x), a.norm(x), a.real_part(x)


def radical_of_form(a: AlgebraTable) -> SubspaceBasis:
    if a.form is None:
        raise MissingStructure(f"{a.name} has no form")
    return nullspace(a.form)


# ---------------------------------------------------------------------------
# symbolic identities


def _symbolic(a: AlgebraTable, offset: int) -> list[Poly]:
    return [Poly.var(offset + i) for i in range(a.dim)]


def _pmul(a: AlgebraTable, x: list[Poly], y: list[Poly]) -> list[Poly]:
    out = [Poly() for _ in range(a.dim)]
    for (i, j), v in a.mul.items():
        if x[i].is_zero() or y[j].is_zero():
            continue
        p = x[i] * y[j]
        for k, c in v.items():
            out[k] = out[k] + p.scale(c)
    return out


def _plin(m: MatrixQ, x: list[Poly]) -> list[Poly]:
    out = []
    for i in range(m.rows):
        acc = Poly()
        for j in range(m.cols):
            if m[i, j] and not x[j].is_zero():
                acc = acc + x[j].scale(m[i, j])
        out.append(acc)
    return out


def _pnorm(a: AlgebraTable, x: list[Poly]) -> Poly:
    acc = Poly()
    gx = _plin(a.form, x)
    for xi, gi in zip(x, gx):
        acc = acc + xi * gi
    return acc.scale(Fraction(1, 2))


def _failures(a: AlgebraTable, label: str, polys: list[Poly], names: list[str]) -> list[str]:
    out = []
    for k, p in enumerate(polys):
        for mono, c in sorted(p.terms.items()):
            term = "*".join(names[i] for i in mono) or "1"
            out.append(f"{label}[{a.basis[k] if k < a.dim else k}]: {c}*{term}")
    return out


def check_identities(a: AlgebraTable, which: str) -> IdentityReport:
    """Verify a polynomial identity in indeterminate coordinates.

    ``which`` is ``alternative`` ((x,x,y) = (y,x,x) = 0), ``composition``
    (N(xy) = N(x)N(y)), ``conj_antiautomorphism`` (conj(xy) = conj(y)conj(x),
    conj an involution fixing 1) or ``norm_conjugate`` (x conj(x) =
    conj(x) x = N(x) 1).  Failing monomials are listed in the report.
    """
    n = a.dim
    names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    x = _symbolic(a, 0)
    y = _symbolic(a, n)
    failures: list[str] = []
    if which == "alternative":
        xx = _pmul(a, x, x)
        left = [p - q for p, q in zip(_pmul(a, xx, y), _pmul(a, x, _pmul(a, x, y)))]
        right = [p - q for p, q in zip(_pmul(a, y, xx), _pmul(a, _pmul(a, y, x), x))]
        failures += _failures(a, "(x,x,y)", left, names)
        failures += _failures(a, "(y,x,x)", right, names)
    elif which == "composition":
        if a.form is None:
            raise MissingStructure(f"{a.name} has no form")
        lhs = _pnorm(a, _pmul(a, x, y))
        rhs = _pnorm(a, x) * _pnorm(a, y)
        diff = lhs - rhs
        failures += [f"N(xy)-N(x)N(y): {c}*{'*'.join(names[i] for i in m)}"
                     for m, c in sorted(diff.terms.items())]
    elif which == "conj_antiautomorphism":
        if a.conj is None:
            raise MissingStructure(f"{a.name} has no conjugation")
        lhs = _plin(a.conj, _pmul(a, x, y))
        rhs = _pmul(a, _plin(a.conj, y), _plin(a.conj, x))
        failures += _failures(a, "conj(xy)-conj(y)conj(x)", [p - q for p, q in zip(lhs, rhs)], names)
        twice = _plin(a.conj, _plin(a.conj, x))
        failures += _failures(a, "conj(conj(x))-x", [p - q for p, q in zip(twice, x)], names)
        if a.unit is not None and a.conj @ a.unit != list(a.unit):
            failures.append("conj(1) != 1")
    elif which == "norm_conjugate":
        if a.conj is None or a.form is None or a.unit is None:
            raise MissingStructure(f"{a.name} needs unit, conjugation and form")
        nx = _pnorm(a, x)
        target = [nx.scale(u) for u in a.unit]
        xc = _plin(a.conj, x)
        failures += _failures(a, "x*conj(x)-N(x)1", [p - q for p, q in zip(_pmul(a, x, xc), target)], names)
        failures += _failures(a, "conj(x)*x-N(x)1", [p - q for p, q in zip(_pmul(a, xc, x), target)], names)
    else:
        raise ValueError(f"unknown identity {which!r}")
    return IdentityReport(a.name, which, not failures, failures)


def check_graded(a: AlgebraTable) -> GradingReport:
    """Check that e_i e_j lies in degree deg(i) + deg(j)."""
    if a.degrees is None:
        raise MissingStructure(f"{a.name} has no grading tags")
    bad = []
    for (i, j), v in sorted(a.mul.items()):
        target = a.degrees[i] + a.degrees[j]
        if any(a.degrees[k] != target for k in v):
            bad.append((i, j))
    return GradingReport(a.name, not bad, bad)


# ---------------------------------------------------------------------------
# Jordan algebras of Hermitian 3x3 matrices

_OFF = ((0, 1), (0, 2), (1, 2))


def jordan_hermitian(b: AlgebraTable, n: int = 3) -> AlgebraTable:
    """H_3(b) with the product x o y = (xy + yx)/2 and the trace form tr(x o y).

    Basis: ``E11, E22, E33`` followed by ``b_k[ij]`` (b_k in slot (i,j), its
    conjugate in slot (j,i)) for (i,j) = (1,2), (1,3), (2,3).
    """
    if n != 3:
        raise ValueError("only 3x3 Hermitian matrices are supported")
    if b.conj is None or b.unit is None:
        raise MissingStructure(f"{b.name} needs a unit and conjugation")
    m = b.dim
    dim = 3 + 3 * m
    one = list(b.unit)
    zero = [Fraction(0)] * m
    upos = next(i for i, v in enumerate(one) if v)
    names = ["E11", "E22", "E33"] + [f"{bk}[{i + 1}{j + 1}]" for (i, j) in _OFF for bk in b.basis]

    def as_matrix(k):
        mat = [[zero] * 3 for _ in range(3)]
        if k < 3:
            mat[k][k] = one
        else:
            slot, idx = divmod(k - 3, m)
            i, j = _OFF[slot]
            e = b.e(idx)
            mat[i][j] = e
            mat[j][i] = b.conjugate(e)
        return mat

    def matmul(x, y):
        out = [[list(zero) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(3):
                acc = out[i][j]
                for l in range(3):
                    if any(x[i][l]) and any(y[l][j]):
                        for t, v in enumerate(b.multiply(x[i][l], y[l][j])):
                            acc[t] += v
        return out

    mats = [as_matrix(k) for k in range(dim)]

    def coords(mat):
        out = [Fraction(0)] * dim
        for i in range(3):
            d = mat[i][i]
            s = d[upos] / one[upos]
            if [s * u for u in one] != d:
                raise ValueError("diagonal entry is not real")
            out[i] = s
        for slot, (i, j) in enumerate(_OFF):
            out[3 + slot * m:3 + (slot + 1) * m] = mat[i][j]
            if b.conjugate(mat[i][j]) != mat[j][i]:
                raise ValueError("result is not Hermitian")
        return out

    def prod(i, j):
        xy = matmul(mats[i], mats[j])
        yx = matmul(mats[j], mats[i])
        return coords([[[(p + q) / 2 for p, q in zip(xy[r][c], yx[r][c])] for c in range(3)]
                       for r in range(3)])

    table = _table(f"H3({b.name})", names, prod, unit=tuple(Fraction(int(k < 3)) for k in range(dim)),
                   kind="jordan")
    trace = [Fraction(int(k < 3)) for k in range(dim)]
    form = [[sum((c * trace[k] for k, c in table.product(i, j).items()), Fraction(0))
             for j in range(dim)] for i in range(dim)]
    return AlgebraTable(name=table.name, dim=dim, mul=table.mul, basis=table.basis, unit=table.unit,
                        form=MatrixQ.from_rows(form), kind="jordan")


# ---------------------------------------------------------------------------
# the two commuting sl2 actions on the split octonions

SL2_BASIS = ((0, 1, 0, 0), (1, 0, 0, -1), (0, 0, 1, 0))  # e, h, f as 2x2 matrices


def sl2_actions() -> tuple[list[MatrixQ], list[MatrixQ]]:
    """Infinitesimal forms of (A,B) -> (XAX^-1, XB) and (A,B) -> (A, B conj X).

    Returned as 8x8 operators on split-octonion coordinates for the sl2 basis
    (e, h, f); ``B`` is the matrix (u, v) with columns u and v.
    """
    def operator(fn):
        cols = []
        for j in range(8):
            x = [Fraction(int(k == j)) for k in range(8)]
            cols.append(fn(tuple(x[0:2]), tuple(x[2:6]), tuple(x[6:8])))
        return MatrixQ.from_rows([[c[i] for c in cols] for i in range(8)])

    def first(X):
        def act(u, A, v):
            A2 = _madd(_mm(X, A), tuple(-t for t in _mm(A, X)))
            return list(_mv(X, u)) + list(A2) + list(_mv(X, v))
        return operator(act)

    def second(X):
        Xb = _adj(X)

        def act(u, A, v):
            B = _mm(_cols(u, v), Xb)
            return [B[0], B[2]] + [0, 0, 0, 0] + [B[1], B[3]]
        return operator(act)

    xs = [tuple(Fraction(t) for t in X) for X in SL2_BASIS]
    return [first(X) for X in xs], [second(X) for X in xs]


def is_homomorphism(a: AlgebraTable, b: AlgebraTable, m: MatrixQ) -> bool:
    """True iff the linear map with matrix ``m`` (a -> b) preserves products."""
    images = [m @ a.e(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = m @ a.multiply(a.e(i), a.e(j))
            if lhs != b.multiply(images[i], images[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# serialization


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def to_json(a: AlgebraTable) -> dict:
    """Schema: name, dim, unit, basis, mul [[i, j, [[k, "p/q"], ...]], ...], conj, form, degrees."""
    out: dict = {"name": a.name, "dim": a.dim}
    if a.unit is not None:
        out["unit"] = [_q(x) for x in a.unit]
    out["basis"] = list(a.basis)
    out["mul"] = [[i, j, [[k, _q(c)] for k, c in sorted(v.items())]] for (i, j), v in sorted(a.mul.items())]
    if a.conj is not None:
        out["conj"] = [[_q(x) for x in row] for row in a.conj.tolist()]
    if a.form is not None:
        out["form"] = [[_q(x) for x in row] for row in a.form.tolist()]
    if a.degrees is not None:
        out["degrees"] = list(a.degrees)
    if a.kind != "composition":
        out["kind"] = a.kind
    return out


def from_json(data: Mapping) -> AlgebraTable:
    dim = int(data["dim"])
    mul = {}
    for i, j, terms in data["mul"]:
        v = {int(k): Fraction(c) for k, c in terms if Fraction(c)}
        if v:
            mul[(int(i), int(j))] = v

    def mat(key):
        if key not in data:
            return None
        return MatrixQ.from_rows([[Fraction(x) for x in row] for row in data[key]], dim)

    unit = tuple(Fraction(x) for x in data["unit"]) if "unit" in data else None
    basis = tuple(data.get("basis") or (f"e{i}" for i in range(dim)))
    if len(basis) != dim:
        raise ValueError("basis length does not match dim")
    degrees = tuple(int(d) for d in data["degrees"]) if data.get("degrees") is not None else None
    return AlgebraTable(name=data["name"], dim=dim, mul=mul, basis=basis, unit=unit, conj=mat("conj"),
                        form=mat("form"), degrees=degrees, kind=data.get("kind", "composition"))


def _combo(v: Mapping[int, Fraction], names: Sequence[str]) -> str:
    if not v:
        return "0"
    parts = []
    for k, c in sorted(v.items()):
        if c == 1:
            parts.append(f"+{names[k]}")
        elif c == -1:
            parts.append(f"-{names[k]}")
        else:
            parts.append(f"{'+' if c > 0 else '-'}{abs(c)}{names[k]}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def to_markdown(a: AlgebraTable) -> str:
    """Multiplication table: the entry in row e_i, column e_j is e_i e_j."""
    head = "| · | " + " | ".join(a.basis) + " |"
    sep = "|---|" + "---|" * a.dim
    lines = [f"**{a.name}** (dim {a.dim})", "", head, sep]
    for i in range(a.dim):
        cells = [_combo(a.product(i, j), a.basis) for j in range(a.dim)]
        lines.append(f"| {a.basis[i]} | " + " | ".join(cells) + " |")
    return "\n".join(lines)


def resolve_algebra(name: str) -> AlgebraTable:
    """A base algebra name or ``H3(<base name>)``."""
    if name.startswith("H3(") and name.endswith(")"):
        return jordan_hermitian(base_algebra(name[3:-1]))
    return base_algebra(name)
