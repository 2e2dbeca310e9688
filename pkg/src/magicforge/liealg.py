"""Lie algebras as exact structure constants.

Elements are coordinate vectors.  Internally vectors are sparse ``{index:
Fraction}`` dicts; public methods accept dense sequences as well.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse as sp

from .compalg import AlgebraTable, base_algebra
from .exactla import (
    MatrixQ,
    SubspaceBasis,
    as_fraction,
    intersect,
    nullspace_sparse,
    row_space_sparse,
    span,
)

__all__ = [
    "LieAlgebra",
    "Realization",
    "Triple",
    "Grading",
    "Fingerprint",
    "JacobiReport",
    "IntermediateResult",
    "ParabolicResult",
    "JacobiError",
    "GradingError",
    "NotExtremal",
    "NotInvariant",
    "from_algebra_derivations",
    "so_of_form",
    "triality_algebra",
    "intermediate_triality",
    "check_triple",
    "check_extremal",
    "grading_by_ad",
    "intermediate_subalgebra",
    "parabolic_and_derived",
    "centralizer",
    "heisenberg_extension",
    "classical_algebra",
    "classical_principal_triple",
    "octonion_triple",
    "fingerprint",
    "sextonion_degree_one",
    "intermediate_intersections",
    "diagonal_derivations",
    "triality_diagonal_triple",
    "octonion_derivation_triple",
    "killing_form",
    "lie_from_realization",
    "sl2",
    "JACOBI_EXHAUSTIVE_MAX",
    "JACOBI_SAMPLE_TRIPLES",
]

SparseVec = dict  # dict[int, Fraction]

JACOBI_EXHAUSTIVE_MAX = 60
JACOBI_SAMPLE_TRIPLES = 100_000


class JacobiError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GradingError(ValueError):
    pass


class NotExtremal(ValueError):
    pass


class NotInvariant(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# sparse helpers


def _sparse(v) -> SparseVec:
    if isinstance(v, dict):
        return {k: as_fraction(c) for k, c in v.items() if c}
    return {k: as_fraction(c) for k, c in enumerate(v) if c}


def _axpy(acc: SparseVec, c, v: Mapping[int, Fraction]) -> None:
    """acc += c * v in place."""
    if not c:
        return
    for k, x in v.items():
        nv = acc.get(k, 0) + c * x
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


def _dense(v: SparseVec, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for k, c in v.items():
        out[k] = c
    return out


_ZERO = Fraction(0)


def _reduce(v: SparseVec, basis: Sequence[SparseVec], pivots) -> tuple[list[Fraction], SparseVec]:
    """Coordinates of ``v`` against a canonical basis, and the residual.

    ``pivots`` is the list of pivot columns or a prebuilt {pivot: position} map.
    """
    pos = pivots if isinstance(pivots, dict) else {p: k for k, p in enumerate(pivots)}
    coords = [_ZERO] * len(basis)
    res = dict(v)
    for p, c in v.items():
        k = pos.get(p)
        if k is not None:
            coords[k] = c
            _axpy(res, -c, basis[k])
    return coords, res


# ---------------------------------------------------------------------------
# Lie algebras


@dataclass
class JacobiReport:
    name: str
    mode: str
    triples: int
    passed: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.passed


class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c_ij^k e_k``, stored for i < j only."""

    def __init__(self, name: str, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, Fraction]],
                 labels: Sequence[str] | None = None, degrees: Sequence[int] | None = None,
                 realization: "Realization | None" = None, check: bool = True, seed: int = 0):
        self.name = name
        self.dim = dim
        self._br: dict[tuple[int, int], SparseVec] = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i},{j}) outside 0..{dim - 1}")
            v = _sparse(v)
            if i == j:
                if v:
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            if i > j:
                i, j = j, i
                v = {k: -c for k, c in v.items()}
            if (i, j) in self._br and self._br[(i, j)] != v:
                raise ValueError(f"inconsistent brackets for ({i},{j})")
            if v:
                self._br[(i, j)] = v
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
        self.degrees = tuple(degrees) if degrees is not None else None
        self.realization = realization
        self._adcols: list[list[SparseVec]] | None = None
        if check:
            rep = self.jacobi(seed)
            if not rep.passed:
                raise JacobiError(f"Jacobi identity fails in {name} at {rep.witness}", rep.witness)

    # basic structure

    def basis_bracket(self, i: int, j: int) -> SparseVec:
        if i < j:
            return self._br.get((i, j), {})
        if i > j:
            v = self._br.get((j, i))
            return {k: -c for k, c in v.items()} if v else {}
        return {}

    @property
    def structure_constants(self) -> dict[tuple[int, int], SparseVec]:
        return dict(self._br)

    def _columns(self) -> list[list[SparseVec]]:
        if self._adcols is None:
            self._adcols = [[self.basis_bracket(i, j) for j in range(self.dim)] for i in range(self.dim)]
        return self._adcols

    def bracket_sparse(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseVec:
        cols = self._columns()
        out: SparseVec = {}
        for i, a in x.items():
            row = cols[i]
            for j, b in y.items():
                v = row[j]
                if v:
                    _axpy(out, a * b, v)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        return _dense(self.bracket_sparse(_sparse(x), _sparse(y)), self.dim)

    def ad(self, x: Sequence | Mapping) -> MatrixQ:
        """Matrix of ad(x); column j holds [x, e_j]."""
        xs = _sparse(x)
        rows = [dict() for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_sparse(xs, {j: Fraction(1)}).items():
                rows[k][j] = c
        return MatrixQ.from_sparse_rows(rows, self.dim)

    def e(self, i: int) -> list[Fraction]:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    # subalgebras

    def subalgebra(self, basis: Sequence[Mapping[int, Fraction]], name: str,
                   degrees: Sequence[int] | None = None, check: bool = False) -> "LieAlgebra":
        """Subalgebra spanned by a canonical (reduced echelon) sparse basis.

        Raises ``ValueError`` if the span is not closed under the bracket.
        """
        basis = [_sparse(b) for b in basis]
        pivots = {min(b): k for k, b in enumerate(basis)}
        br = {}
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                w = self.bracket_sparse(basis[a], basis[b])
                coords, res = _reduce(w, basis, pivots)
                if res:
                    raise ValueError(f"{name}: span is not closed under the bracket")
                v = {k: c for k, c in enumerate(coords) if c}
                if v:
                    br[(a, b)] = v
        sub = LieAlgebra(name, len(basis), br, degrees=degrees, check=check)
        sub.embedding = tuple(basis)
        return sub

    def quotient(self, ideal: Sequence[Mapping[int, Fraction]], name: str) -> "LieAlgebra":
        """Quotient by an ideal given as a canonical sparse basis.

        The complement is spanned by the non-pivot coordinate vectors.
        """
        ideal = [_sparse(b) for b in ideal]
        pivots = [min(b) for b in ideal]
        for b in ideal:
            for j in range(self.dim):
                w = self.bracket_sparse(b, {j: Fraction(1)})
                if _reduce(w, ideal, pivots)[1]:
                    raise ValueError(f"{name}: not an ideal")
        keep = [j for j in range(self.dim) if j not in set(pivots)]
        pos = {j: n for n, j in enumerate(keep)}
        br = {}
        for a in range(len(keep)):
            for b in range(a + 1, len(keep)):
                _, res = _reduce(self.basis_bracket(keep[a], keep[b]), ideal, pivots)
                if res:
                    br[(a, b)] = {pos[k]: c for k, c in res.items()}
        deg = tuple(self.degrees[j] for j in keep) if self.degrees else None
        return LieAlgebra(name, len(keep), br, degrees=deg, check=False)

    # Jacobi

    def jacobi(self, seed: int = 0, exhaustive: bool | None = None) -> JacobiReport:
        """Check the Jacobi identity.

        Exhaustive over all basis triples when dim <= 60 (or when forced);
        otherwise over ceil(1e5 / dim) pseudorandom pairs (j, k), each pair
        covering every i, seeded by ``name:seed``.
        """
        n = self.dim
        pairs_all = n * (n - 1) // 2
        if exhaustive is None:
            exhaustive = n <= JACOBI_EXHAUSTIVE_MAX
        if exhaustive or pairs_all * n <= JACOBI_SAMPLE_TRIPLES:
            pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
            mode = "exhaustive"
        else:
            count = math.ceil(JACOBI_SAMPLE_TRIPLES / n)
            rng = random.Random(f"{self.name}:{seed}")
            chosen = rng.sample(range(pairs_all), count)
            pairs = [_unrank_pair(r, n) for r in sorted(chosen)]
            mode = "sampled"
        witness = _jacobi_scan(self, pairs)
        return JacobiReport(self.name, mode, len(pairs) * n, witness is None, witness)

    # serialization

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.labels),
            "bracket": [[i, j, [[k, str(c)] for k, c in sorted(v.items())]]
                        for (i, j), v in sorted(self._br.items())],
        }
        if self.degrees is not None:
            out["degrees"] = list(self.degrees)
        return out

    @classmethod
    def from_json(cls, data: Mapping, check: bool = True) -> "LieAlgebra":
        br = {(int(i), int(j)): {int(k): Fraction(c) for k, c in terms} for i, j, terms in data["bracket"]}
        return cls(data["name"], int(data["dim"]), br, labels=data.get("basis"),
                   degrees=data.get("degrees"), check=check)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


LieAlgebra.embedding = None


def _unrank_pair(r: int, n: int) -> tuple[int, int]:
    j = 0
    while r >= n - 1 - j:
        r -= n - 1 - j
        j += 1
    return j, j + 1 + r


def _jacobi_scan(l: LieAlgebra, pairs: list[tuple[int, int]]) -> tuple[int, int, int] | None:
    """First failing (i, j, k) or None.

    With R_x the right-bracket matrix (row a = [e_a, e_x]), the Jacobi
    identity for all i at once reads R_j R_k - R_k R_j - R_[j,k] = 0.
    """
    n = l.dim
    if n == 0 or not pairs:
        return None
    den = 1
    big = 0
    for v in l._br.values():
        for c in v.values():
            den = math.lcm(den, c.denominator)
    ints: dict[tuple[int, int], dict[int, int]] = {}
    for key, v in l._br.items():
        iv = {k: int(c * den) for k, c in v.items()}
        big = max(big, max(abs(x) for x in iv.values()))
        ints[key] = iv
    if 3 * n * big * big >= 2**62:
        return _jacobi_python(l, pairs)
    rows: list[list[int]] = [[] for _ in range(n)]
    cols: list[list[int]] = [[] for _ in range(n)]
    vals: list[list[int]] = [[] for _ in range(n)]
    for (i, j), v in ints.items():
        for k, c in v.items():
            # row i of R_j gets [e_i, e_j]; row j of R_i gets [e_j, e_i]
            rows[j].append(i), cols[j].append(k), vals[j].append(c)
            rows[i].append(j), cols[i].append(k), vals[i].append(-c)
    R = [sp.csr_matrix((np.array(vals[x], dtype=np.int64), (rows[x], cols[x])), shape=(n, n))
         for x in range(n)]
    for j, k in pairs:
        M = R[j] @ R[k] - R[k] @ R[j]
        for b, c in ints.get((j, k), {}).items():
            M = M - c * R[b]
        M.eliminate_zeros()
        if M.nnz:
            i = int(M.nonzero()[0][0])
            return (i, j, k)
    return None


def _jacobi_python(l: LieAlgebra, pairs):
    for j, k in pairs:
        ej, ek = {j: Fraction(1)}, {k: Fraction(1)}
        jk = l.basis_bracket(j, k)
        for i in range(l.dim):
            ei = {i: Fraction(1)}
            t = l.bracket_sparse(l.bracket_sparse(ei, ej), ek)
            _axpy(t, 1, l.bracket_sparse(jk, ei))
            _axpy(t, 1, l.bracket_sparse(l.bracket_sparse(ek, ei), ej))
            if t:
                return (i, j, k)
    return None


# ---------------------------------------------------------------------------
# linear realizations: elements as block-diagonal matrices, flattened row-major


@dataclass(frozen=True)
class Realization:
    """A faithful matrix realization: basis elements are block-diagonal
    matrices with diagonal blocks of the given sizes, flattened row-major
    block after block."""

    blocks: tuple[int, ...]
    basis: tuple[SparseVec, ...]

    @property
    def ambient(self) -> int:
        return sum(b * b for b in self.blocks)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, s = [], 0
        for b in self.blocks:
            out.append(s)
            s += b * b
        return tuple(out)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(min(b) for b in self.basis)

    def element(self, coords: Sequence | Mapping) -> SparseVec:
        out: SparseVec = {}
        for k, c in _sparse(coords).items():
            _axpy(out, c, self.basis[k])
        return out

    def coordinates(self, flat: Mapping[int, Fraction]) -> list[Fraction] | None:
        coords, res = _reduce(_sparse(flat), self.basis, self.pivots)
        return None if res else coords

    def block_matrices(self, flat: Mapping[int, Fraction]) -> list[MatrixQ]:
        out = []
        for off, b in zip(self.offsets, self.blocks):
            rows = [[flat.get(off + r * b + c, Fraction(0)) for c in range(b)] for r in range(b)]
            out.append(MatrixQ.from_rows(rows, b) if b else MatrixQ.zeros(0, 0))
        return out

    def flatten(self, mats: Sequence) -> SparseVec:
        out: SparseVec = {}
        for off, b, m in zip(self.offsets, self.blocks, mats):
            for r in range(b):
                for c in range(b):
                    v = as_fraction(m[r][c] if not isinstance(m, MatrixQ) else m[r, c])
                    if v:
                        out[off + r * b + c] = v
        return out


def _to_block_rows(x: SparseVec, blocks, offsets) -> list[dict[int, dict[int, Fraction]]]:
    out = [dict() for _ in blocks]
    for idx, v in x.items():
        bi = _block_of(idx, offsets)
        b = blocks[bi]
        r, c = divmod(idx - offsets[bi], b)
        out[bi].setdefault(r, {})[c] = v
    return out


def _block_of(idx, offsets):
    lo, hi = 0, len(offsets) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if offsets[mid] <= idx:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _matmul_rows(a: dict, b: dict) -> dict:
    out: dict[int, dict[int, Fraction]] = {}
    for r, row in a.items():
        acc: dict[int, Fraction] = {}
        for k, x in row.items():
            brow = b.get(k)
            if brow:
                for c, y in brow.items():
                    nv = acc.get(c, 0) + x * y
                    if nv:
                        acc[c] = nv
                    else:
                        acc.pop(c, None)
        if acc:
            out[r] = acc
    return out


def _commutator(x: SparseVec, y: SparseVec, blocks, offsets) -> SparseVec:
    xb = _to_block_rows(x, blocks, offsets)
    yb = _to_block_rows(y, blocks, offsets)
    out: SparseVec = {}
    for bi, (xa, ya) in enumerate(zip(xb, yb)):
        if not xa or not ya:
            continue
        b, off = blocks[bi], offsets[bi]
        for sign, m in ((1, _matmul_rows(xa, ya)), (-1, _matmul_rows(ya, xa))):
            for r, row in m.items():
                for c, v in row.items():
                    k = off + r * b + c
                    nv = out.get(k, 0) + sign * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
    return out


def lie_from_realization(name: str, real: Realization, labels=None, check: bool = True,
                         seed: int = 0) -> LieAlgebra:
    """Matrix Lie algebra with commutator bracket; raises if not closed."""
    offsets = real.offsets
    basis = real.basis
    pivots = {p: k for k, p in enumerate(real.pivots)}
    br = {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            w = _commutator(basis[a], basis[b], real.blocks, offsets)
            if not w:
                continue
            coords, res = _reduce(w, basis, pivots)
            if res:
                raise ValueError(f"{name}: matrix span is not closed under commutators")
            v = {k: c for k, c in enumerate(coords) if c}
            if v:
                br[(a, b)] = v
    return LieAlgebra(name, len(basis), br, labels=labels, realization=real, check=check, seed=seed)


# ---------------------------------------------------------------------------
# constraint systems over matrix unknowns; unknown D[r][c] has index off + r*n + c


def _table_index(a: AlgebraTable):
    """left[(j, k)] = [(r, c_rj^k)], right[(i, k)] = [(r, c_ir^k)]."""
    left: dict[tuple[int, int], list] = {}
    right: dict[tuple[int, int], list] = {}
    for (r, j), v in a.mul.items():
        for k, c in v.items():
            left.setdefault((j, k), []).append((r, c))
            right.setdefault((r, k), []).append((j, c))
    return left, right


def _leibniz_rows(a: AlgebraTable, o1: int, o2: int, o3: int) -> list[SparseVec]:
    """Rows of t1(e_i) e_j + e_i t2(e_j) - t3(e_i e_j) = 0 (coefficient of e_k)."""
    n = a.dim
    left, right = _table_index(a)
    rows = []
    for i in range(n):
        for j in range(n):
            prod = a.product(i, j)
            for k in range(n):
                row: SparseVec = {}
                for r, c in left.get((j, k), ()):  # t1(e_i) = sum_r T1[r][i] e_r
                    _axpy(row, c, {o1 + r * n + i: Fraction(1)})
                for r, c in right.get((i, k), ()):  # e_i e_r coefficient on e_k
                    _axpy(row, c, {o2 + r * n + j: Fraction(1)})
                for r, c in prod.items():
                    _axpy(row, -c, {o3 + k * n + r: Fraction(1)})
                if row:
                    rows.append(row)
    return rows


def _skew_rows(g: MatrixQ, off: int) -> list[SparseVec]:
    """Rows of X^T g + g X = 0."""
    n = g.rows
    rows = []
    for a in range(n):
        for b in range(a, n):
            row: SparseVec = {}
            for r in range(n):
                if g[r, b]:
                    _axpy(row, g[r, b], {off + r * n + a: Fraction(1)})
                if g[a, r]:
                    _axpy(row, g[a, r], {off + r * n + b: Fraction(1)})
            if row:
                rows.append(row)
    return rows


def _fixes_rows(vec: Sequence[Fraction], n: int, off: int) -> list[SparseVec]:
    """Rows of X v = 0."""
    rows = []
    for r in range(n):
        row = {off + r * n + c: as_fraction(x) for c, x in enumerate(vec) if x}
        if row:
            rows.append(row)
    return rows


def _matrix_labels(prefix: str, basis, blocks) -> list[str]:
    return [f"{prefix}{k}" for k in range(len(basis))]


@lru_cache(maxsize=None)
def _derivations_cached(a: AlgebraTable) -> LieAlgebra:
    n = a.dim
    rows = _leibniz_rows(a, 0, 0, 0)
    basis = nullspace_sparse(rows, n * n)
    real = Realization((n,), tuple(basis))
    return lie_from_realization(f"der({a.name})", real)


def from_algebra_derivations(a: AlgebraTable) -> LieAlgebra:
    """der(a): solutions of d(xy) = d(x)y + x d(y), bracket = commutator."""
    return _derivations_cached(a)


def so_of_form(g: MatrixQ | Sequence, name: str | None = None) -> LieAlgebra:
    """{X : X^T g + g X = 0}; g may be degenerate."""
    g = g if isinstance(g, MatrixQ) else MatrixQ.from_rows(g)
    if not g.is_square() or not g.is_symmetric():
        raise ValueError("so_of_form needs a symmetric matrix")
    n = g.rows
    basis = nullspace_sparse(_skew_rows(g, 0), n * n)
    return lie_from_realization(name or f"so({n})", Realization((n,), tuple(basis)))


def _need_form_unit(a: AlgebraTable):
    if a.form is None or a.unit is None:
        from .compalg import MissingStructure

        raise MissingStructure(f"{a.name} needs a unit and a form")


@lru_cache(maxsize=None)
def _triality_cached(a: AlgebraTable, fixed: int | None) -> LieAlgebra:
    _need_form_unit(a)
    n = a.dim
    offs = (0, n * n, 2 * n * n)
    rows = _leibniz_rows(a, *offs)
    for o in offs:
        rows += _skew_rows(a.form, o)
    name = f"tri({a.name})"
    if fixed is not None:
        rows += _fixes_rows(a.unit, n, offs[fixed - 1])
        name = f"int{fixed}({a.name})"
    basis = nullspace_sparse(rows, 3 * n * n)
    return lie_from_realization(name, Realization((n, n, n), tuple(basis)))


def triality_algebra(a: AlgebraTable) -> LieAlgebra:
    """Triples (t1, t2, t3) in so(a)^3 with t1(x) y + x t2(y) = t3(xy)."""
    return _triality_cached(a, None)


def intermediate_triality(a: AlgebraTable, i: int) -> LieAlgebra:
    """The subalgebra of tri(a) with t_i(1) = 0."""
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    return _triality_cached(a, i)


def diagonal_derivations(a: AlgebraTable) -> SubspaceBasis:
    """der(a) embedded in the triality ambient as (d, d, d)."""
    d = from_algebra_derivations(a)
    nn = a.dim * a.dim
    vecs = []
    for b in d.realization.basis:
        v = [Fraction(0)] * (3 * nn)
        for k, c in b.items():
            v[k] = v[nn + k] = v[2 * nn + k] = c
        vecs.append(v)
    return span(vecs, 3 * nn)


def realized_subspace(l: LieAlgebra) -> SubspaceBasis:
    real = l.realization
    return SubspaceBasis(real.ambient, tuple(tuple(_dense(b, real.ambient)) for b in real.basis))


def intermediate_intersections(a: AlgebraTable) -> dict[tuple[int, int], bool]:
    """For each pair i < j: is int_i(a) and int_j(a) intersected equal to der(a) = (d, d, d)?"""
    subs = {i: realized_subspace(intermediate_triality(a, i)) for i in (1, 2, 3)}
    target = diagonal_derivations(a)
    return {(i, j): intersect(subs[i], subs[j]) == target for i, j in ((1, 2), (1, 3), (2, 3))}


# ---------------------------------------------------------------------------
# triples, extremal elements, gradings


@dataclass(frozen=True)
class Triple:
    E: tuple[Fraction, ...]
    H: tuple[Fraction, ...]
    F: tuple[Fraction, ...]

    @classmethod
    def of(cls, e, h, f) -> "Triple":
        return cls(tuple(map(as_fraction, e)), tuple(map(as_fraction, h)), tuple(map(as_fraction, f)))


def check_triple(l: LieAlgebra, e, h, f) -> bool:
    e, h, f = _sparse(e), _sparse(h), _sparse(f)
    if l.bracket_sparse(e, f) != h:
        return False
    if l.bracket_sparse(h, e) != {k: 2 * c for k, c in e.items()}:
        return False
    return l.bracket_sparse(h, f) == {k: -2 * c for k, c in f.items()}


def check_extremal(l: LieAlgebra, e) -> bool:
    """[e, [e, y]] is a multiple of e for every basis y."""
    e = _sparse(e)
    if not e:
        raise ValueError("extremal check needs a non-zero element")
    p = min(e)
    for j in range(l.dim):
        w = l.bracket_sparse(e, l.bracket_sparse(e, {j: Fraction(1)}))
        if not w:
            continue
        s = w.get(p, Fraction(0)) / e[p]
        if w != ({k: s * c for k, c in e.items()} if s else {}):
            return False
    return True


@dataclass
class Grading:
    parts: list[tuple[int, SubspaceBasis]]

    def dims(self) -> list[int]:
        return [s.dim for _, s in self.parts]

    def degrees(self) -> list[int]:
        return [d for d, _ in self.parts]

    def part(self, deg: int) -> SubspaceBasis:
        for d, s in self.parts:
            if d == deg:
                return s
        n = self.parts[0][1].ambient_dim if self.parts else 0
        return SubspaceBasis.zero(n)

    def signature(self) -> list[tuple[int, int]]:
        return [(d, s.dim) for d, s in self.parts]


def _eigen_sparse(l: LieAlgebra, hs: SparseVec, lam: Fraction) -> list[SparseVec]:
    rows = [dict() for _ in range(l.dim)]
    for j in range(l.dim):
        for k, c in l.bracket_sparse(hs, {j: Fraction(1)}).items():
            rows[k][j] = c
    for i, r in enumerate(rows):
        v = r.get(i, 0) - lam
        if v:
            r[i] = v
        else:
            r.pop(i, None)
    return nullspace_sparse(rows, l.dim)


def grading_by_ad(l: LieAlgebra, h, window: tuple[int, int] = (-4, 4), verify: bool = True) -> Grading:
    """Eigenspace decomposition of ad(h) over the integer window."""
    hs = _sparse(h)
    parts = []
    sparse_parts = []
    total = 0
    for lam in range(window[0], window[1] + 1):
        vecs = _eigen_sparse(l, hs, Fraction(lam))
        if vecs:
            total += len(vecs)
            sparse_parts.append((lam, vecs))
            parts.append((lam, SubspaceBasis(l.dim, tuple(tuple(_dense(v, l.dim)) for v in vecs))))
    if total != l.dim:
        raise GradingError(f"ad(h) eigenspaces in {window} span {total} of {l.dim} dimensions")
    if verify:
        _check_grading_compatible(l, sparse_parts)
    return Grading(parts)


def _check_grading_compatible(l: LieAlgebra, parts: list[tuple[int, list[SparseVec]]]) -> None:
    index = {d: (vecs, {min(v): k for k, v in enumerate(vecs)}) for d, vecs in parts}
    for a, va in parts:
        for b, vb in parts:
            if b < a:
                continue
            target = index.get(a + b)
            for x in va:
                for y in vb:
                    w = l.bracket_sparse(x, y)
                    if not w:
                        continue
                    if target is None or _reduce(w, *target)[1]:
                        raise GradingError(f"bracket of degrees {a} and {b} leaves degree {a + b}")


# ---------------------------------------------------------------------------
# centralizers, intermediate subalgebras


def _centralizer_vectors(l: LieAlgebra, elems: Iterable) -> list[SparseVec]:
    rows = []
    for x in elems:
        xs = _sparse(x)
        eqs: dict[int, SparseVec] = {}
        for j in range(l.dim):
            for k, c in l.bracket_sparse(xs, {j: Fraction(1)}).items():
                eqs.setdefault(k, {})[j] = c
        rows.extend(eqs.values())
    return nullspace_sparse(rows, l.dim)


def centralizer(l: LieAlgebra, elems: Sequence) -> LieAlgebra:
    """Joint kernel of ad(x) for x in ``elems``, as a subalgebra."""
    vecs = _centralizer_vectors(l, elems)
    return l.subalgebra(vecs, f"c({l.name})")


@dataclass
class IntermediateResult:
    gtilde: LieAlgebra
    gbar: LieAlgebra
    v_dim: int
    omega: MatrixQ
    grading: Grading
    action: list[MatrixQ]  # ad of each gbar basis element on V, in V coordinates
    gbar_basis: list[SparseVec]
    v_basis: list[SparseVec]

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.gbar.dim, self.v_dim, self.gtilde.dim)


def _triple_sparse(t: Triple):
    return _sparse(t.E), _sparse(t.H), _sparse(t.F)


def intermediate_subalgebra(l: LieAlgebra, t: Triple) -> IntermediateResult:
    """gtilde = gbar + V + QE from a principal triple (E, H, F)."""
    E, H, F = _triple_sparse(t)
    if not check_triple(l, t.E, t.H, t.F):
        raise ValueError("not an sl2 triple")
    if not check_extremal(l, t.E):
        raise NotExtremal("E is not extremal; the triple is not principal")
    grading = grading_by_ad(l, t.H)
    if any(abs(d) > 2 for d in grading.degrees()):
        raise GradingError(f"grading has degrees {grading.degrees()} outside -2..2")
    top = grading.part(2)
    if top.dim != 1 or not top.contains_vector(_dense(E, l.dim)):
        raise GradingError("degree-2 part is not spanned by E")
    gbar_vecs = _centralizer_vectors(l, [E, H, F])
    v_vecs = [_sparse(b) for b in grading.part(1).basis]
    gbar = l.subalgebra(gbar_vecs, f"gbar({l.name})")
    if l.dim != gbar.dim + 3 + 2 * len(v_vecs):
        raise GradingError(f"dim {l.dim} != {gbar.dim} + 3 + 2*{len(v_vecs)}")
    # omega: [v_a, v_b] = omega_ab E
    p = min(E)
    k = len(v_vecs)
    om = [[Fraction(0)] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            w = l.bracket_sparse(v_vecs[a], v_vecs[b])
            s = w.get(p, Fraction(0)) / E[p]
            if w != ({i: s * c for i, c in E.items()} if s else {}):
                raise GradingError("[V, V] is not contained in QE")
            om[a][b], om[b][a] = s, -s
    omega = MatrixQ.from_rows(om, k) if k else MatrixQ.zeros(0, 0)
    vpiv = [min(v) for v in v_vecs]
    action = []
    for g in gbar_vecs:
        cols = []
        for v in v_vecs:
            coords, res = _reduce(l.bracket_sparse(g, v), v_vecs, vpiv)
            if res:
                raise GradingError("gbar does not preserve V")
            cols.append(coords)
        action.append(MatrixQ.from_rows([[cols[c][r] for c in range(k)] for r in range(k)], k)
                      if k else MatrixQ.zeros(0, 0))
    if k:
        from .exactla import rank

        if rank(omega) != k:
            raise GradingError("omega is degenerate on V")
        for a, rho in enumerate(action):
            if _invariance_defect(rho, omega):
                raise NotInvariant("omega is not gbar-invariant", (a,) + _invariance_defect(rho, omega))
    # gtilde basis: canonical span of gbar, V and E
    tilde_vecs = row_space_sparse(gbar_vecs + v_vecs + [E], l.dim)
    degs = []
    h_act = {}
    for v in tilde_vecs:
        w = l.bracket_sparse(H, v)
        q = min(v)
        s = w.get(q, Fraction(0)) / v[q]
        degs.append(int(s))
        h_act[q] = s
    gtilde = l.subalgebra(tilde_vecs, f"gtilde({l.name})", degrees=[d // 1 for d in degs])
    return IntermediateResult(gtilde, gbar, k, omega, grading, action, gbar_vecs, v_vecs)


@dataclass
class ParabolicResult:
    g_p: LieAlgebra
    g_p_prime: LieAlgebra  # g_P / QE
    gtilde: LieAlgebra
    gtilde_prime: LieAlgebra  # gtilde / QE
    derived_g_p_dim: int
    derived_gtilde_dim: int
    codim_top: int
    codim_bottom: int
    e_central_in_gtilde: bool
    e_central_in_g_p: bool
    complement_subalgebra: bool  # QH complements gtilde' in g_P'
    central_complement: bool  # ... and could it be chosen central


def parabolic_and_derived(l: LieAlgebra, t: Triple) -> ParabolicResult:
    """g_P (degrees 0, 1, 2), gtilde, their quotients by QE and bracket-span derived algebras."""
    E, H, F = _triple_sparse(t)
    grading = grading_by_ad(l, t.H)
    p_vecs = row_space_sparse([_sparse(b) for d in (0, 1, 2) for b in grading.part(d).basis], l.dim)
    g_p = l.subalgebra(p_vecs, f"gP({l.name})")
    gbar_vecs = _centralizer_vectors(l, [E, H, F])
    t_vecs = row_space_sparse(gbar_vecs + [_sparse(b) for b in grading.part(1).basis] + [E], l.dim)
    gtilde = l.subalgebra(t_vecs, f"gtilde({l.name})")

    def local(sub: LieAlgebra, x: SparseVec) -> SparseVec:
        coords, res = _reduce(x, list(sub.embedding), [min(b) for b in sub.embedding])
        assert not res
        return {k: c for k, c in enumerate(coords) if c}

    def is_central(sub, x):
        return all(not sub.bracket_sparse(x, {j: Fraction(1)}) for j in range(sub.dim))

    e_p, e_t = local(g_p, E), local(gtilde, E)
    g_p_prime = g_p.quotient(row_space_sparse([e_p], g_p.dim), f"gP'({l.name})")
    gtilde_prime = gtilde.quotient(row_space_sparse([e_t], gtilde.dim), f"gtilde'({l.name})")
    # complement: gtilde' is an ideal of codim 1 in g_P'; does a central line complement it?
    center_p = _center_vectors(g_p_prime)
    # image of gtilde in g_P': reduce gtilde basis (in l) into g_P coords then drop E
    img = []
    pivE = min(row_space_sparse([e_p], g_p.dim)[0])
    keep = [j for j in range(g_p.dim) if j != pivE]
    pos = {j: n for n, j in enumerate(keep)}
    eb = row_space_sparse([e_p], g_p.dim)
    for v in t_vecs:
        w = local(g_p, v)
        _, res = _reduce(w, eb, [pivE])
        img.append({pos[k]: c for k, c in res.items()})
    img = row_space_sparse(img, g_p_prime.dim)
    central_complement = any(_reduce(c, img, [min(b) for b in img])[1] for c in center_p)
    h_img = {}
    _, res = _reduce(local(g_p, H), eb, [pivE])
    h_img = {pos[k]: c for k, c in res.items()}
    complement = bool(_reduce(h_img, img, [min(b) for b in img])[1])
    return ParabolicResult(
        g_p=g_p,
        g_p_prime=g_p_prime,
        gtilde=gtilde,
        gtilde_prime=gtilde_prime,
        derived_g_p_dim=_derived_dim(g_p),
        derived_gtilde_dim=_derived_dim(gtilde),
        codim_top=g_p.dim - gtilde.dim,
        codim_bottom=g_p_prime.dim - gtilde_prime.dim,
        e_central_in_gtilde=is_central(gtilde, e_t),
        e_central_in_g_p=is_central(g_p, e_p),
        complement_subalgebra=complement,
        central_complement=central_complement,
    )


def heisenberg_extension(g: LieAlgebra, action: Sequence[MatrixQ], omega: MatrixQ,
                         name: str | None = None) -> LieAlgebra:
    """g + V + Qz with [g, v] = action, [v, w] = omega(v, w) z, z central.

    Basis order: g, then V, then z.  Raises ``NotInvariant`` with a witness
    (g index, v index, w index) when omega is not invariant, and
    ``JacobiError`` (via the construction check) when the action is not a representation.
    """
    n = omega.rows
    if n % 2:
        raise ValueError("symplectic space must have even dimension")
    if omega.T != -omega:
        raise ValueError("omega must be antisymmetric")
    from .exactla import rank

    if n and rank(omega) != n:
        raise ValueError("omega must be nondegenerate")
    if len(action) != g.dim:
        raise ValueError("need one action matrix per basis element of g")
    for a in range(g.dim):
        bad = _invariance_defect(action[a], omega)
        if bad:
            raise NotInvariant(f"omega is not invariant under g basis element {a}",
                               (a, g.dim + bad[0], g.dim + bad[1]))
    d = g.dim
    br = {}
    for (a, b), v in g.structure_constants.items():
        br[(a, b)] = v
    for a in range(d):
        for i in range(n):
            col = {d + r: action[a][r, i] for r in range(n) if action[a][r, i]}
            if col:
                br[(a, d + i)] = col
    for i in range(n):
        for j in range(i + 1, n):
            if omega[i, j]:
                br[(d + i, d + j)] = {d + n: omega[i, j]}
    degrees = [0] * d + [1] * n + [2]
    # Jacobi on (g, g, V) triples is exactly the representation property
    return LieAlgebra(name or f"{g.name}.H{n}", d + n + 1, br, degrees=degrees)


def _rows_of(m: MatrixQ) -> dict:
    return {r: row for r, row in enumerate(m.sparse_rows()) if row}


def _invariance_defect(rho: MatrixQ, omega: MatrixQ) -> tuple[int, int] | None:
    """First (v, w) with omega(rho v, w) + omega(v, rho w) != 0, or None."""
    R, W = _rows_of(rho), _rows_of(omega)
    RT: dict = {}
    for r, row in R.items():
        for c, v in row.items():
            RT.setdefault(c, {})[r] = v
    total: dict = {}
    for m in (_matmul_rows(RT, W), _matmul_rows(W, R)):
        for r, row in m.items():
            acc = total.setdefault(r, {})
            for c, v in row.items():
                nv = acc.get(c, 0) + v
                if nv:
                    acc[c] = nv
                else:
                    acc.pop(c)
    for r in sorted(total):
        if total[r]:
            return (r, min(total[r]))
    return None


# ---------------------------------------------------------------------------
# classical algebras


def _matrix_unit(n, i, j) -> SparseVec:
    return {i * n + j: Fraction(1)}


def _antidiagonal(n) -> MatrixQ:
    return MatrixQ.from_rows([[int(i + j == n - 1) for j in range(n)] for i in range(n)])


def _symplectic(n2) -> MatrixQ:
    n = n2 // 2
    rows = [[0] * n2 for _ in range(n2)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    return MatrixQ.from_rows(rows)


@lru_cache(maxsize=None)
def classical_algebra(kind: str, n: int) -> LieAlgebra:
    """gl(n), sl(n), so(n) (antidiagonal split form) or sp(n) (n even, form [[0, I], [-I, 0]])."""
    if kind == "gl":
        basis = [_matrix_unit(n, i, j) for i in range(n) for j in range(n)]
    elif kind == "sl":
        basis = [_matrix_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
        basis += [{i * n + i: Fraction(1), (i + 1) * n + i + 1: Fraction(-1)} for i in range(n - 1)]
    elif kind == "so":
        basis = nullspace_sparse(_skew_rows(_antidiagonal(n), 0), n * n)
    elif kind == "sp":
        if n % 2:
            raise ValueError("sp(n) needs n even")
        basis = nullspace_sparse(_skew_rows_alt(_symplectic(n)), n * n)
    else:
        raise ValueError(f"unsupported classical kind {kind!r}")
    basis = row_space_sparse(basis, n * n)
    return lie_from_realization(f"{kind}({n})", Realization((n,), tuple(basis)))


def _skew_rows_alt(g: MatrixQ) -> list[SparseVec]:
    """Rows of X^T g + g X = 0 for antisymmetric g."""
    n = g.rows
    rows = []
    for a in range(n):
        for b in range(n):
            row: SparseVec = {}
            for r in range(n):
                if g[r, b]:
                    _axpy(row, g[r, b], {r * n + a: Fraction(1)})
                if g[a, r]:
                    _axpy(row, g[a, r], {r * n + b: Fraction(1)})
            if row:
                rows.append(row)
    return rows


def _realized_triple(l: LieAlgebra, mats: Sequence[SparseVec]) -> Triple:
    coords = []
    for m in mats:
        c = l.realization.coordinates(m)
        if c is None:
            raise ValueError(f"matrix is not in {l.name}")
        coords.append(c)
    return Triple.of(*coords)


def classical_principal_triple(kind: str, n: int) -> Triple:
    """Highest-root triple from explicit root vectors (1-indexed descriptions below)."""
    l = classical_algebra(kind, n)

    def u(i, j):
        return _matrix_unit(n, i - 1, j - 1)

    def comb(*terms):
        out: SparseVec = {}
        for c, m in terms:
            _axpy(out, c, m)
        return out

    if kind in ("sl", "gl"):
        e, f = u(1, n), u(n, 1)
        h = comb((1, u(1, 1)), (-1, u(n, n)))
    elif kind == "sp":
        k = n // 2
        e, f = u(1, k + 1), u(k + 1, 1)
        h = comb((1, u(1, 1)), (-1, u(k + 1, k + 1)))
    elif kind == "so":
        if n < 5:
            raise ValueError("so(n) principal triple needs n >= 5")
        e = comb((1, u(1, n - 1)), (-1, u(2, n)))
        f = comb((1, u(n - 1, 1)), (-1, u(n, 2)))
        h = comb((1, u(1, 1)), (1, u(2, 2)), (-1, u(n - 1, n - 1)), (-1, u(n, n)))
    else:
        raise ValueError(f"unsupported classical kind {kind!r}")
    return _realized_triple(l, [e, h, f])


def octonion_derivation_triple() -> tuple[SparseVec, SparseVec, SparseVec]:
    """E: (u, A, v) -> (0, 0, u), F: (u, A, v) -> (v, 0, 0), H = [E, F], as flattened 8x8 matrices."""
    n = 8
    E = {(6 + i) * n + i: Fraction(1) for i in range(2)}
    F = {i * n + 6 + i: Fraction(1) for i in range(2)}
    H = _commutator(E, F, (8,), (0,))
    return E, H, F


def octonion_triple(l: LieAlgebra | None = None) -> Triple:
    """The principal triple of der(split octonions) in its computed basis."""
    l = l or from_algebra_derivations(base_algebra("split_octonion"))
    E, H, F = octonion_derivation_triple()
    return _realized_triple(l, [E, H, F])


def triality_diagonal_triple(a: AlgebraTable | None = None) -> Triple:
    """(d, d, d) embedding of the der(split octonions) triple into tri."""
    a = a or base_algebra("split_octonion")
    l = triality_algebra(a)
    nn = a.dim * a.dim
    out = []
    for m in octonion_derivation_triple():
        out.append({k + s * nn: c for s in range(3) for k, c in m.items()})
    return _realized_triple(l, out)


def sl2() -> LieAlgebra:
    """Basis (e, h, f) with [e, f] = h, [h, e] = 2e, [h, f] = -2f."""
    return LieAlgebra("sl2", 3, {(0, 2): {1: 1}, (1, 0): {0: 2}, (1, 2): {2: -2}}, labels=("e", "h", "f"))


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    dim_center: int
    dim_derived: int
    killing_rank: int
    radical_dim_lower_bound: int
    grading_signature: tuple | None = None

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "dim_center": self.dim_center,
            "dim_derived": self.dim_derived,
            "killing_rank": self.killing_rank,
            "radical_dim_lower_bound": self.radical_dim_lower_bound,
            "grading_signature": [list(p) for p in self.grading_signature] if self.grading_signature else None,
        }


def _center_vectors(l: LieAlgebra) -> list[SparseVec]:
    return _centralizer_vectors(l, [{j: Fraction(1)} for j in range(l.dim)])


def _derived_dim(l: LieAlgebra) -> int:
    return len(row_space_sparse(l.structure_constants.values(), l.dim))


def killing_form(l: LieAlgebra) -> MatrixQ:
    """K(a, b) = tr(ad a ad b), computed on integers scaled by the common denominator."""
    n = l.dim
    if n == 0:
        return MatrixQ.zeros(0, 0)
    den = 1
    for v in l.structure_constants.values():
        for c in v.values():
            den = math.lcm(den, c.denominator)
    # ad_a[d, c] = c_ac^d ; K_ab = sum_{c,d} ad_a[d,c] ad_b[c,d]
    entries: list[tuple[int, int, int]] = []  # (a, d*n + c, value)
    big = 0
    for (i, j), v in l.structure_constants.items():
        for k, c in v.items():
            x = int(c * den)
            big = max(big, abs(x))
            entries.append((i, k * n + j, x))
            entries.append((j, k * n + i, -x))
    if n * n * big * big < 2**62:
        a_idx, flat, vals = zip(*entries) if entries else ((), (), ())
        P = sp.csr_matrix((np.array(vals, dtype=np.int64), (a_idx, flat)), shape=(n, n * n))
        # transpose flattening: (d, c) -> (c, d)
        tflat = [(f % n) * n + f // n for f in flat]
        Q = sp.csr_matrix((np.array(vals, dtype=np.int64), (a_idx, tflat)), shape=(n, n * n))
        K = (P @ Q.T).toarray()
        rows = [[Fraction(int(K[a, b]), den * den) for b in range(n)] for a in range(n)]
        return MatrixQ.from_rows(rows, n)
    ad = [l.ad(l.e(a)) for a in range(n)]
    rows = [[sum(((ad[a] @ ad[b])[i, i] for i in range(n)), Fraction(0)) for b in range(n)] for a in range(n)]
    return MatrixQ.from_rows(rows, n)


def fingerprint(l: LieAlgebra) -> Fingerprint:
    K = killing_form(l)
    kr = len(row_space_sparse(K.sparse_rows(), l.dim)) if l.dim else 0
    sig = None
    if l.degrees is not None:
        counts: dict[int, int] = {}
        for d in l.degrees:
            counts[d] = counts.get(d, 0) + 1
        sig = tuple(sorted(counts.items()))
    return Fingerprint(
        dim=l.dim,
        dim_center=len(_center_vectors(l)),
        dim_derived=_derived_dim(l),
        killing_rank=kr,
        radical_dim_lower_bound=l.dim - kr,
        grading_signature=sig,
    )


# ---------------------------------------------------------------------------
# degree-one derivations of the sextonions


@dataclass
class DegreeOneReport:
    dim: int
    psi_one_zero: bool
    e_f_free: bool
    basis: list[SparseVec] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.dim == 4 and self.psi_one_zero and self.e_f_free


def sextonion_degree_one(a: AlgebraTable | None = None) -> DegreeOneReport:
    """Derivations (q, m) -> (0, psi(q)) of the sextonions.

    Solves the Leibniz system restricted to maps sending the quaternion block
    into the module and killing the module.  Checks psi(1) = 0 and that
    (psi(E12), psi(E21)) may be chosen freely and determine psi.
    """
    a = a or base_algebra("sextonion")
    n = a.dim
    mod = [k for k in range(n) if a.degrees and a.degrees[k] != 0]
    quat = [k for k in range(n) if k not in mod]
    rows = _leibniz_rows(a, 0, 0, 0)
    allowed = {r * n + c for r in mod for c in quat}
    for idx in range(n * n):
        if idx not in allowed:
            rows.append({idx: Fraction(1)})
    basis = nullspace_sparse(rows, n * n)
    unit = a.unit
    psi_one_zero = all(
        not any(sum((b.get(r * n + c, 0) * unit[c] for c in range(n)), Fraction(0)) for r in range(n))
        for b in basis)
    e_idx, f_idx = a.basis.index("E12"), a.basis.index("E21")
    evals = [{(s, r): b.get(r * n + c, Fraction(0)) for s, c in enumerate((e_idx, f_idx)) for r in mod}
             for b in basis]
    keys = sorted({k for ev in evals for k in ev} | {(s, r) for s in range(2) for r in mod})
    kpos = {k: i for i, k in enumerate(keys)}
    rows_ef = [{kpos[k]: v for k, v in ev.items() if v} for ev in evals]
    free = len(row_space_sparse(rows_ef, len(keys))) == len(basis) == 2 * len(mod)
    return DegreeOneReport(len(basis), psi_one_zero, free, basis)
