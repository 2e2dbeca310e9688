"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest (lines are repeated in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""

import json
import os
import subprocess
import sys
import tempfile
import time
from fractions import Fraction

import pytest

from magicforge.compalg import (
    base_algebra,
    check_graded,
    check_identities,
    from_json,
    jordan_hermitian,
    radical_of_form,
    sl2_actions,
    to_json,
)
from magicforge.exactla import MatrixQ
from magicforge.liealg import (
    LieAlgebra,
    classical_algebra,
    classical_principal_triple,
    fingerprint,
    from_algebra_derivations,
    grading_by_ad,
    heisenberg_extension,
    intermediate_intersections,
    intermediate_subalgebra,
    intermediate_triality,
    octonion_triple,
    sextonion_degree_one,
    so_of_form,
    triality_algebra,
    triality_diagonal_triple,
)
from magicforge.magicsq import (
    SQUARE_ALGEBRAS,
    adams_dims,
    bigrading,
    equal_rank_dims,
    intermediate_row,
    magic_square_table,
    tits_algebra,
    triality_construction_dims,
    vinberg_dims,
)
from magicforge.series import (
    EXCEPTIONAL_SPECIALIZATIONS,
    check_dus,
    check_super_series,
    dus_specialization,
    series_dims,
    series_identity_holds,
    superdim,
    triangle_involution,
)

MAGIC = [[3, 8, 21, 36, 52], [8, 16, 35, 56, 78], [21, 35, 66, 99, 133],
         [36, 56, 99, 144, 190], [52, 78, 133, 190, 248]]
A = {n: base_algebra(n) for n in SQUARE_ALGEBRAS}


class Criterion:
    """Collects (label, actual, expected) comparisons and a time budget."""

    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.items: list[tuple[str, object, object]] = []
        self.start = time.perf_counter()

    def eq(self, label, actual, expected):
        self.items.append((label, actual, expected))

    def finish(self) -> tuple[bool, str]:
        elapsed = time.perf_counter() - self.start
        bad = [f"{l}: got {a!r}, expected {e!r}" for l, a, e in self.items if a != e]
        if elapsed > self.budget:
            bad.append(f"took {elapsed:.1f}s, budget {self.budget:.0f}s")
        ok = not bad
        head = f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'} {self.title}"
        tail = f"({len(self.items)} checks, {elapsed:.1f}s)" if ok else "; ".join(bad)
        return ok, f"{head} {tail}"


def criterion_1():
    c = Criterion(1, "derivation dims", 5)
    for name, d in [("split_complex", 0), ("split_quaternion", 3), ("sextonion", 8), ("split_octonion", 14)]:
        c.eq(f"der({name})", from_algebra_derivations(A[name]).dim, d)
    return c.finish()


def criterion_2():
    c = Criterion(2, "triality and intermediate dims, pairwise intersections", 30)
    for name, t, i in zip(SQUARE_ALGEBRAS, (0, 2, 9, 18, 28), (0, 1, 6, 13, 21)):
        c.eq(f"tri({name})", triality_algebra(A[name]).dim, t)
        c.eq(f"int({name})", [intermediate_triality(A[name], k).dim for k in (1, 2, 3)], [i] * 3)
        c.eq(f"int_i^int_j({name}) = der", intermediate_intersections(A[name]),
             {(1, 2): True, (1, 3): True, (2, 3): True})
    return c.finish()


def criterion_3():
    # the degree-0 part is der(split quaternions) + one line: 3 + 1 = 4, total 14
    c = Criterion(3, "gradings of der(Os), tri(Os) and Os", 10)
    d = from_algebra_derivations(A["split_octonion"])
    c.eq("der(Os)", grading_by_ad(d, octonion_triple(d).H).dims(), [1, 4, 4, 4, 1])
    c.eq("der(Os) degree 0 = der(Hs)+1", grading_by_ad(d, octonion_triple(d).H).part(0).dim,
         from_algebra_derivations(A["split_quaternion"]).dim + 1)
    t = triality_algebra(A["split_octonion"])
    c.eq("tri(Os)", grading_by_ad(t, triality_diagonal_triple().H).dims(), [1, 8, 10, 8, 1])
    o = A["split_octonion"]
    c.eq("Os graded", check_graded(o).passed, True)
    c.eq("Os parts", [o.degrees.count(k) for k in (-1, 0, 1)], [2, 4, 2])
    return c.finish()


def criterion_4():
    c = Criterion(4, "sextonion identities, radical, degree-one derivations, commuting sl2 actions", 5)
    s = A["sextonion"]
    for which in ("alternative", "composition", "conj_antiautomorphism"):
        c.eq(which, check_identities(s, which).passed, True)
    c.eq("radical dim", radical_of_form(s).dim, 2)
    r = sextonion_degree_one()
    c.eq("degree-one dim", r.dim, 4)
    c.eq("psi(1) = 0", r.psi_one_zero, True)
    first, second = sl2_actions()
    c.eq("actions commute", all(x @ y - y @ x == MatrixQ.zeros(8, 8) for x in first for y in second), True)
    return c.finish()


def criterion_5():
    c = Criterion(5, "extended magic square via Tits, Vinberg and triality", 300)
    tits = [[cell.dim for cell in row] for row in magic_square_table("tits")]
    c.eq("tits", tits, MAGIC)
    c.eq("symmetric", all(tits[i][j] == tits[j][i] for i in range(5) for j in range(5)), True)
    vin = [[vinberg_dims(A[a], A[b]).total for b in SQUARE_ALGEBRAS] for a in SQUARE_ALGEBRAS]
    tri = [[triality_construction_dims(A[a], A[b]).total for b in SQUARE_ALGEBRAS] for a in SQUARE_ALGEBRAS]
    c.eq("vinberg", vin, tits)
    c.eq("triality", tri, tits)
    c.eq("der(H3(Os))", from_algebra_derivations(jordan_hermitian(A["split_octonion"])).dim, 52)
    return c.finish()


def constructed_algebras():
    """Every Lie algebra the other criteria build."""
    out = []
    for name in SQUARE_ALGEBRAS:
        a = A[name]
        out += [from_algebra_derivations(a), triality_algebra(a), so_of_form(a.form)]
        out += [intermediate_triality(a, k) for k in (1, 2, 3)]
        out.append(from_algebra_derivations(jordan_hermitian(a)))
    d = from_algebra_derivations(A["split_octonion"])
    r = intermediate_subalgebra(d, octonion_triple(d))
    out += [r.gbar, r.gtilde, heisenberg_extension(r.gbar, r.action, r.omega)]
    for kind, n in (("sl", 4), ("sp", 4), ("so", 7)):
        l = classical_algebra(kind, n)
        r = intermediate_subalgebra(l, classical_principal_triple(kind, n))
        out += [l, r.gbar, r.gtilde, heisenberg_extension(r.gbar, r.action, r.omega)]
    for a in SQUARE_ALGEBRAS:
        for b in SQUARE_ALGEBRAS:
            out.append(tits_algebra(a, b))
    for b in ("reals", "split_complex", "split_quaternion", "split_octonion"):
        r = intermediate_row(b)
        out += [r.gbar, r.gtilde, heisenberg_extension(r.gbar, r.action, r.omega)]
    return out


def criterion_6():
    c = Criterion(6, "Jacobi: exhaustive to dim 60, seeded 1e5-triple sample above", 300)
    algebras = constructed_algebras()
    for l in algebras:
        rep = l.jacobi(seed=0)
        c.eq(f"{l.name} passes", rep.passed, True)
        if l.dim <= 60:
            c.eq(f"{l.name} mode", rep.mode, "exhaustive")
        else:
            c.eq(f"{l.name} mode", (rep.mode, rep.triples >= 100000), ("sampled", True))
            c.eq(f"{l.name} reproducible", l.jacobi(seed=0), rep)
    c.eq("largest", max(l.dim for l in algebras), 248)
    return c.finish()


def criterion_7():
    c = Criterion(7, "intermediate row of T(Os, H3(B)) and Heisenberg reconstruction", 120)
    want = {"reals": (21, 14, 36), "split_complex": (35, 20, 56), "split_quaternion": (66, 32, 99),
            "split_octonion": (133, 56, 190)}
    for b, dims in want.items():
        r = intermediate_row(b)
        c.eq(f"dims {b}", r.dims, dims)
        c.eq(f"S-row cell {b}", r.dims[2], MAGIC[3][SQUARE_ALGEBRAS.index(b)])
        h = heisenberg_extension(r.gbar, r.action, r.omega)
        f1, f2 = fingerprint(r.gtilde), fingerprint(h)
        c.eq(f"fingerprint {b}", f2, f1)
        c.eq(f"gbar is the H-row {b}", r.gbar.dim, MAGIC[2][SQUARE_ALGEBRAS.index(b)])
    return c.finish()


def criterion_8():
    c = Criterion(8, "classical intermediate examples", 10)
    for kind, n, dims in (("sl", 4, (4, 4)), ("sp", 4, (3, 2)), ("so", 7, (3 + 3, 2 * 3))):
        r = intermediate_subalgebra(classical_algebra(kind, n), classical_principal_triple(kind, n))
        c.eq(f"{kind}({n})", r.dims[:2], dims)
    return c.finish()


def criterion_9():
    c = Criterion(9, "bigradings and a(A, W8) = t(A, Os)", 1)
    g = bigrading(8)
    c.eq("m=8 total", g.total, 248)
    c.eq("m=8 center", g.cells[2][2], 66 + 2)
    c.eq("m=8 edges", (g.cells[1][1], g.cells[1][2]), (12, 32))
    c.eq("totals", [bigrading(m).total for m in (1, 2, 4, 6)], [52, 78, 133, 190])
    o = A["split_octonion"]
    for name in SQUARE_ALGEBRAS:
        c.eq(f"a({name},W8)", adams_dims(A[name], 8), equal_rank_dims(A[name], o).total)
    return c.finish()


def criterion_10():
    c = Criterion(10, "series formulas, involution, superdimensions, character identity", 1)
    for m, row in zip((1, 2, 4, 6, 8), MAGIC):
        p = series_dims(m)
        c.eq(f"m={m}", (p.dim_sub, p.dim_exc), (row[2], row[4]))
    c.eq("identity", series_identity_holds(), True)
    c.eq("involution", triangle_involution(6), Fraction(-3, 2))
    c.eq("osp(10|2)", superdim("osp(10|2)"), 28)
    c.eq("sl(3|2)", superdim("sl(3|2)"), 0)
    c.eq("psl(2|2)", superdim("psl(2|2)"), -2)
    c.eq("osp(2n+10|2n)", [superdim("osp", 2 * n + 10, 2 * n) for n in range(4)], [45] * 4)
    rep = check_super_series()
    c.eq("super tables", [r.literal for r in rep.rows if not r.passed], [])
    c.eq("dus", check_dus(), True)
    c.eq("dus specializations", [dus_specialization(g, v) for g, v in EXCEPTIONAL_SPECIALIZATIONS],
         [(14, 14), (52, 52), (78, 78), (133, 133), (248, 248)])
    return c.finish()


def _cli(*args, **kw):
    env = dict(os.environ, PYTHONHASHSEED="0")
    return subprocess.run([sys.executable, "-m", "magicforge", *args], capture_output=True, text=True, env=env, **kw)


def criterion_11():
    c = Criterion(11, "CLI determinism and byte-identical JSON round-trips", 600)
    cmd = [sys.executable, "-m", "magicforge", "check", "--suite", "all", "--seed", "7"]
    runs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True) for _ in range(2)]
    outs = [p.communicate() for p in runs]
    c.eq("exit codes", [p.returncode for p in runs], [0, 0])
    c.eq("identical reports", outs[0][0] == outs[1][0], True)
    c.eq("report mentions T(S,H3(R))", "T(S,H3(R)) dim=36" in outs[0][0], True)
    with tempfile.TemporaryDirectory() as tmp:
        for name in ("sextonion", "split_octonion", "H3(split_quaternion)"):
            first = _cli("algebra", name, "--json").stdout
            path = os.path.join(tmp, "a.json")
            with open(path, "w") as fh:
                fh.write(first)
            c.eq(f"algebra {name}", _cli("algebra", "--file", path, "--json").stdout, first)
        lie = _cli("lie", "derive", "split_octonion").stdout
        c.eq("lie json", json.dumps(LieAlgebra.from_json(json.loads(lie)).to_json(), indent=2) + "\n", lie)
        mg = _cli("magic", "--construction", "dims", "--format", "json").stdout
        c.eq("magic json", json.dumps(json.loads(mg), indent=2) + "\n", mg)
    a = base_algebra("sextonion")
    c.eq("in-process algebra", to_json(from_json(to_json(a))), to_json(a))
    return c.finish()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(number, acceptance_line):
    ok, line = CRITERIA[number - 1]()
    acceptance_line(number, line)
    assert ok, line


if __name__ == "__main__":
    results = [fn() for fn in CRITERIA]
    for _, line in results:
        print(line, flush=True)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
