"""Exact linear algebra over the rationals.

Dense operations (``rref``, ``rank``, ``det``) use fraction-free Bareiss
elimination on integer rows.  Nullspaces of large sparse constraint systems
go through :func:`nullspace_sparse`, which splits the system into connected
components and runs incremental Gauss-Jordan on each one.

Every subspace is returned in canonical form: reduced row echelon with pivot
entries equal to one, so equal subspaces compare equal.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Scalar",
    "MatrixQ",
    "SubspaceBasis",
    "DimensionMismatch",
    "as_fraction",
    "rref",
    "rank",
    "det",
    "nullspace",
    "nullspace_sparse",
    "eigenspace",
    "span",
    "subspace_ops",
    "subspace_sum",
    "intersect",
    "contains",
]

Scalar = Fraction
SparseVec = dict  # column -> Fraction, zero entries never stored


class DimensionMismatch(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


class MatrixQ:
    """Immutable dense rational matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_fraction(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixQ is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "MatrixQ":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> "MatrixQ":
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> "MatrixQ":
        out = [0] * (len(rows) * cols)
        for i, r in enumerate(rows):
            for j, v in r.items():
                out[i * cols + j] = v
        return cls(len(rows), cols, out)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self) -> list[SparseVec]:
        return [{j: v for j, v in enumerate(self.row(i)) if v} for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "MatrixQ":
        return MatrixQ(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def __matmul__(self, other):
        if isinstance(other, MatrixQ):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            return MatrixQ(self.rows, other.cols, (
                sum((a * b for a, b in zip(self.row(i), c) if a and b), Fraction(0))
                for i in range(self.rows) for c in ocols))
        vec = [as_fraction(v) for v in other]
        if len(vec) != self.cols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(vec)}")
        return [sum((a * b for a, b in zip(self.row(i), vec) if a and b), Fraction(0))
                for i in range(self.rows)]

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return MatrixQ(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return MatrixQ(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "MatrixQ":
        return MatrixQ(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c) -> "MatrixQ":
        c = as_fraction(c)
        return MatrixQ(self.rows, self.cols, (c * a for a in self.entries))

    def __eq__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.entries)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"MatrixQ({self.rows}x{self.cols}: {body})"


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^n in canonical reduced echelon form."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(b) if v) for b in self.basis)

    def sparse_basis(self) -> list[SparseVec]:
        return [{j: v for j, v in enumerate(b) if v} for b in self.basis]

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Coordinates of ``v`` in this basis, or ``None`` if ``v`` is outside."""
        v = [as_fraction(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        coords = [v[p] for p in self.pivots]
        for j in range(self.ambient_dim):
            if sum((c * b[j] for c, b in zip(coords, self.basis) if c), Fraction(0)) != v[j]:
                return None
        return coords

    def contains_vector(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    @classmethod
    def zero(cls, n: int) -> "SubspaceBasis":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


# ---------------------------------------------------------------------------
# dense fraction-free elimination


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [as_fraction(x) for x in r]
        d = 1
        for x in r:
            d = lcm(d, x.denominator)
        out.append([int(x * d) for x in r])
    return out


def _bareiss_echelon(a: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination in place; returns (rows, pivot columns)."""
    m = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        k = next((i for i in range(r, m) if a[i][c]), None)
        if k is None:
            continue
        if k != r:
            a[r], a[k] = a[k], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            ai = a[i]
            ar = a[r]
            for j in range(c, ncols):
                # Sylvester identity: the division is exact
                ai[j] = (p * ai[j] - f * ar[j]) // prev
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(m: MatrixQ) -> tuple[MatrixQ, int, list[int]]:
    """Reduced row echelon form, rank, and pivot columns of ``m``."""
    if m.rows == 0 or m.cols == 0:
        return m, 0, []
    a = _integer_rows(m.tolist())
    echelon, pivots = _bareiss_echelon(a, m.cols)
    rows = [[Fraction(x, r[p]) for x in r] for r, p in zip(echelon, pivots)]
    for i in range(len(rows) - 1, -1, -1):
        p = pivots[i]
        for k in range(i):
            f = rows[k][p]
            if f:
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
    rows += [[Fraction(0)] * m.cols for _ in range(m.rows - len(rows))]
    return MatrixQ.from_rows(rows, m.cols), len(pivots), pivots


def rank(m: MatrixQ) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_bareiss_echelon(_integer_rows(m.tolist()), m.cols)[1])


def det(m: MatrixQ) -> Fraction:
    if not m.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    rows = [[as_fraction(x) for x in m.row(i)] for i in range(n)]
    scale = Fraction(1)
    a = []
    for r in rows:
        d = 1
        for x in r:
            d = lcm(d, x.denominator)
        scale /= d
        a.append([int(x * d) for x in r])
    sign = 1
    prev = 1
    for c in range(n - 1):
        k = next((i for i in range(c, n) if a[i][c]), None)
        if k is None:
            return Fraction(0)
        if k != c:
            a[c], a[k] = a[k], a[c]
            sign = -sign
        p = a[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (p * a[i][j] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = p
    return sign * a[n - 1][n - 1] * scale


# ---------------------------------------------------------------------------
# sparse nullspaces


def _components(rows: list[SparseVec], ncols: int) -> dict[int, list[int]]:
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in rows:
        it = iter(r)
        first = next(it, None)
        if first is None:
            continue
        a = find(first)
        for c in it:
            b = find(c)
            if a != b:
                parent[b] = a
    groups: dict[int, list[int]] = defaultdict(list)
    for i, r in enumerate(rows):
        if r:
            groups[find(next(iter(r)))].append(i)
    return groups


def _gauss_jordan(rows: Iterable[SparseVec]) -> tuple[dict[int, SparseVec], dict[int, set]]:
    """Incremental Gauss-Jordan.

    Returns ``(piv, occ)`` where ``piv[p]`` is the row with pivot column ``p``
    (entry 1, no other pivot columns) and ``occ[c]`` lists the pivots whose row
    has a non-zero entry in the free column ``c``.
    """
    piv: dict[int, SparseVec] = {}
    occ: dict[int, set] = defaultdict(set)
    for src in rows:
        r = {c: v for c, v in src.items() if v}
        for c in [c for c in r if c in piv]:
            a = r.pop(c)
            for k, v in piv[c].items():
                if k == c:
                    continue
                nv = r.get(k, 0) - a * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        p = min(r, key=lambda c: (len(occ.get(c, ())), c))
        inv = 1 / Fraction(r[p])
        r = {k: v * inv for k, v in r.items()}
        for pc in occ.pop(p, ()):
            row = piv[pc]
            a = row.pop(p)
            for k, v in r.items():
                if k == p:
                    continue
                old = row.get(k)
                nv = (old or 0) - a * v
                if nv:
                    if old is None:
                        occ[k].add(pc)
                    row[k] = nv
                elif old is not None:
                    del row[k]
                    occ[k].discard(pc)
        piv[p] = r
        for k in r:
            if k != p:
                occ[k].add(p)
    return piv, occ


def _canonical(vectors: list[SparseVec]) -> list[SparseVec]:
    """Reduced echelon form (leading pivots equal to 1) of independent sparse vectors."""
    rows = [dict(v) for v in vectors if v]
    out: list[SparseVec] = []
    while rows:
        lead = min(min(r) for r in rows)
        k = next(i for i, r in enumerate(rows) if lead in r)
        pr = rows.pop(k)
        inv = 1 / Fraction(pr[lead])
        pr = {c: v * inv for c, v in pr.items()}
        for r in rows + out:
            a = r.get(lead)
            if a:
                for c, v in pr.items():
                    nv = r.get(c, 0) - a * v
                    if nv:
                        r[c] = nv
                    else:
                        del r[c]
        rows = [r for r in rows if r]
        out.append(pr)
    out.sort(key=min)
    return out


def nullspace_sparse(rows: Iterable[Mapping[int, object]], ncols: int) -> list[SparseVec]:
    """Canonical basis of ``{v : r . v = 0 for every row r}`` as sparse vectors.

    The system is split into connected components of its column-incidence
    graph; each block is eliminated on its own, which keeps the working set
    small for the large, very sparse Leibniz systems.
    """
    rows = [{c: as_fraction(v) for c, v in r.items() if v} for r in rows]
    for r in rows:
        if r and (min(r) < 0 or max(r) >= ncols):
            raise DimensionMismatch(f"column index outside 0..{ncols - 1}")
    groups = _components(rows, ncols)
    touched: set[int] = set()
    basis: list[SparseVec] = []
    for idx in groups.values():
        piv, occ = _gauss_jordan(rows[i] for i in idx)
        cols = set()
        for i in idx:
            cols.update(rows[i])
        touched |= cols
        free = sorted(cols - set(piv))
        block = []
        for f in free:
            v = {f: Fraction(1)}
            for p in occ.get(f, ()):
                v[p] = -piv[p][f]
            block.append(v)
        basis.extend(_canonical(block))
    basis.extend({c: Fraction(1)} for c in range(ncols) if c not in touched)
    basis.sort(key=min)
    return basis


def row_space_sparse(rows: Iterable[Mapping[int, object]], ncols: int) -> list[SparseVec]:
    """Canonical reduced echelon basis of the span of sparse rows."""
    piv, _ = _gauss_jordan({c: as_fraction(v) for c, v in r.items() if v} for r in rows)
    return _canonical(list(piv.values()))


def _to_subspace(vectors: list[SparseVec], n: int) -> SubspaceBasis:
    zero = Fraction(0)
    return SubspaceBasis(n, tuple(tuple(v.get(j, zero) for j in range(n)) for v in vectors))


def nullspace(m: MatrixQ) -> SubspaceBasis:
    """Canonical basis of the kernel of ``m``."""
    return _to_subspace(nullspace_sparse(m.sparse_rows(), m.cols), m.cols)


def eigenspace(m: MatrixQ, lam) -> SubspaceBasis:
    if not m.is_square():
        raise DimensionMismatch("eigenspace of a non-square matrix")
    lam = as_fraction(lam)
    rows = m.sparse_rows()
    for i, r in enumerate(rows):
        v = r.get(i, 0) - lam
        if v:
            r[i] = v
        else:
            r.pop(i, None)
    return _to_subspace(nullspace_sparse(rows, m.cols), m.cols)


def span(vectors: Iterable[Sequence], n: int) -> SubspaceBasis:
    sparse = []
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{n}")
        sparse.append({j: as_fraction(x) for j, x in enumerate(v) if x})
    return _to_subspace(row_space_sparse(sparse, n), n)


def _check_same_ambient(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"subspaces of Q^{a.ambient_dim} and Q^{b.ambient_dim}")


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _check_same_ambient(a, b)
    return span(a.basis + b.basis, a.ambient_dim)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Intersection via the kernel of [A^T | -B^T]."""
    _check_same_ambient(a, b)
    n = a.ambient_dim
    ka = a.dim
    if ka == 0 or b.dim == 0:
        return SubspaceBasis.zero(n)
    rows = []
    for j in range(n):
        r = {i: v[j] for i, v in enumerate(a.basis) if v[j]}
        r.update({ka + i: -v[j] for i, v in enumerate(b.basis) if v[j]})
        rows.append(r)
    kernel = nullspace_sparse(rows, ka + b.dim)
    vecs = []
    for k in kernel:
        vec = [Fraction(0)] * n
        for i, c in k.items():
            if i < ka:
                for j, x in enumerate(a.basis[i]):
                    if x:
                        vec[j] += c * x
        vecs.append(vec)
    return span(vecs, n)


def contains(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    """True iff ``b`` is a subspace of ``a``."""
    _check_same_ambient(a, b)
    return all(a.contains_vector(v) for v in b.basis)


def subspace_ops(a: SubspaceBasis, b: SubspaceBasis, op: str):
    if op == "sum":
        return subspace_sum(a, b)
    if op == "intersect":
        return intersect(a, b)
    if op == "contains":
        return contains(a, b)
    raise ValueError(f"unknown subspace operation {op!r}")


def primitive(v: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a sparse rational vector to coprime integers with a positive leading entry."""
    if not v:
        return {}
    d = 1
    for x in v.values():
        d = lcm(d, Fraction(x).denominator)
    ints = {k: int(Fraction(x) * d) for k, x in v.items()}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    if ints[min(ints)] < 0:
        g = -g
    return {k: x // g for k, x in ints.items()}
