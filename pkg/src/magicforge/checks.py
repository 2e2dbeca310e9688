"""Verification suites behind ``magicforge check``.

Each check returns ``(status, detail)``; a suite is an ordered list of named
checks.  Checks may run on a thread pool (``MAGICFORGE_THREADS``) but the
report is always assembled in registration order.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .compalg import (
    base_algebra,
    check_graded,
    check_identities,
    jordan_hermitian,
    radical_of_form,
    sl2_actions,
)
from .liealg import (
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
    triality_algebra,
    triality_diagonal_triple,
)
from .magicsq import (
    CARTAN_LABELS,
    SHORT,
    SQUARE_ALGEBRAS,
    adams_dims,
    bigrading,
    calibrate_tits,
    equal_rank_dims,
    frozen_coefficients,
    intermediate_row,
    label_dim,
    tits_construction,
    triality_construction_dims,
    vinberg_dims,
)
from .series import (
    EXCEPTIONAL_SPECIALIZATIONS,
    check_dus,
    check_super_series,
    dus_specialization,
    series_dims,
    series_identity_holds,
    superdim,
    triangle_involution,
)

SUITES = ("core", "square", "series")
DEFAULT_SEED = 0

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status.upper():4} {self.name}" + (f" {self.detail}" if self.detail else "")


@dataclass
class RunReport:
    suite: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if any(c.status == FAIL for c in self.checks) else 0

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}", f"seed: {self.seed}"]
        lines += [c.line() for c in self.checks]
        n = self.counts()
        lines.append(f"summary: {n[PASS]} pass, {n[FAIL]} fail, {n[SKIP]} skip")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "exit_code": self.exit_code,
                "checks": [[c.name, c.status, c.detail] for c in self.checks]}

    def dumps(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        return self.to_text()


def expect(actual, expected, label: str = "") -> tuple[str, str]:
    head = f"{label}=" if label else ""
    if actual == expected:
        return PASS, f"{head}{_fmt(actual)}"
    return FAIL, f"{head}{_fmt(actual)} expected={_fmt(expected)}"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return "(" + ",".join(_fmt(v) for v in x) + ")"
    return str(x)


def _jacobi_line(l, seed: int) -> tuple[str, str]:
    rep = l.jacobi(seed)
    detail = f"dim={l.dim} mode={rep.mode} triples={rep.triples}"
    if rep.passed:
        return PASS, detail
    return FAIL, detail + f" witness={rep.witness}"


def _sh(name: str) -> str:
    return SHORT[name]


Check = tuple[str, Callable[[], tuple[str, str]]]


# ---------------------------------------------------------------------------
# core: derivations, triality, gradings, sextonions, classical examples


def core_checks(seed: int) -> list[Check]:
    out: list[Check] = []
    der_expected = {"split_complex": 0, "split_quaternion": 3, "sextonion": 8, "split_octonion": 14}
    for a, d in der_expected.items():
        out.append((f"[1] der({_sh(a)})", lambda a=a, d=d: expect(from_algebra_derivations(base_algebra(a)).dim, d, "dim")))

    tri_expected = dict(zip(SQUARE_ALGEBRAS, (0, 2, 9, 18, 28)))
    int_expected = dict(zip(SQUARE_ALGEBRAS, (0, 1, 6, 13, 21)))
    for a in SQUARE_ALGEBRAS:
        out.append((f"[2] tri({_sh(a)})", lambda a=a: expect(triality_algebra(base_algebra(a)).dim, tri_expected[a], "dim")))
        out.append((f"[2] int_i({_sh(a)})", lambda a=a: expect(
            tuple(intermediate_triality(base_algebra(a), i).dim for i in (1, 2, 3)), (int_expected[a],) * 3, "dims")))
        out.append((f"[2] int_i∩int_j({_sh(a)})=der", lambda a=a: expect(
            all(intermediate_intersections(base_algebra(a)).values()), True, "all")))

    def derg():
        l = from_algebra_derivations(base_algebra("split_octonion"))
        return expect(tuple(grading_by_ad(l, octonion_triple(l).H).dims()), (1, 4, 4, 4, 1), "parts")

    def trig():
        l = triality_algebra(base_algebra("split_octonion"))
        return expect(tuple(grading_by_ad(l, triality_diagonal_triple().H).dims()), (1, 8, 10, 8, 1), "parts")

    def octg():
        a = base_algebra("split_octonion")
        ok = check_graded(a).passed
        counts = tuple(a.degrees.count(d) for d in (-1, 0, 1))
        return expect((ok, counts), (True, (2, 4, 2)), "graded,dims")

    out += [("[3] grading der(Os)", derg), ("[3] grading tri(Os)", trig), ("[3] grading Os", octg)]

    for which in ("alternative", "composition", "conj_antiautomorphism"):
        out.append((f"[4] S {which}", lambda w=which: expect(check_identities(base_algebra("sextonion"), w).passed, True, "passed")))
    out.append(("[4] S radical", lambda: expect(radical_of_form(base_algebra("sextonion")).dim, 2, "dim")))

    def degree_one():
        r = sextonion_degree_one()
        return expect((r.dim, r.psi_one_zero), (4, True), "dim,psi(1)=0")

    def commute():
        first, second = sl2_actions()
        ok = all((x @ y - y @ x) == type(x).zeros(8, 8) for x in first for y in second)
        return expect(ok, True, "commute")

    out += [("[4] S degree-one derivations", degree_one), ("[4] sl2 actions on Os", commute)]

    classical = (("sl", 4, (4, 4)), ("sp", 4, (3, 2)), ("so", 7, (6, 6)))
    for kind, n, want in classical:
        def run(kind=kind, n=n, want=want):
            r = intermediate_subalgebra(classical_algebra(kind, n), classical_principal_triple(kind, n))
            return expect((r.dims[0], r.dims[1]), want, "gbar,V")
        out.append((f"[8] intermediate {kind}({n})", run))

    small = [("der", a) for a in SQUARE_ALGEBRAS] + [("tri", a) for a in SQUARE_ALGEBRAS]
    for kind, a in small:
        def jac(kind=kind, a=a):
            A = base_algebra(a)
            l = from_algebra_derivations(A) if kind == "der" else triality_algebra(A)
            return _jacobi_line(l, seed)
        out.append((f"[6] jacobi {kind}({_sh(a)})", jac))
    for b in SQUARE_ALGEBRAS:
        out.append((f"[6] jacobi der(H3({_sh(b)}))", lambda b=b: _jacobi_line(
            from_algebra_derivations(jordan_hermitian(base_algebra(b))), seed)))
    return out


# ---------------------------------------------------------------------------
# square: Tits construction, decompositions, intermediate row, bigradings

MAGIC_DIMS = ((3, 8, 21, 36, 52), (8, 16, 35, 56, 78), (21, 35, 66, 99, 133),
              (36, 56, 99, 144, 190), (52, 78, 133, 190, 248))
INTERMEDIATE_ROW = {"reals": (21, 14, 36), "split_complex": (35, 20, 56),
                    "split_quaternion": (66, 32, 99), "split_octonion": (133, 56, 190)}


def square_checks(seed: int) -> list[Check]:
    out: list[Check] = []

    def calibration():
        cal = calibrate_tits(base_algebra("split_quaternion"), jordan_hermitian(base_algebra("reals")))
        c = frozen_coefficients()
        return expect((len(cal.passing), c.lam_d, c.lam_star, c.lam_l),
                      (1, Fraction(1, 12), Fraction(1), Fraction(-1, 2)), "solutions,lam_d,lam_star,lam_l")

    out.append(("[5] tits calibration", calibration))

    for r, a in enumerate(SQUARE_ALGEBRAS):
        for c, b in enumerate(SQUARE_ALGEBRAS):
            def cell(a=a, b=b, r=r, c=c):
                l = tits_construction(base_algebra(a), jordan_hermitian(base_algebra(b)), check=False)
                status, detail = expect(l.dim, MAGIC_DIMS[r][c], "dim")
                jstatus, jdetail = _jacobi_line(l, seed)
                status = FAIL if FAIL in (status, jstatus) else PASS
                return status, f"{detail} jacobi[{jstatus} {jdetail.split(' ', 1)[1]}]"
            out.append((f"[5,6] T({_sh(a)},H3({_sh(b)}))", cell))

    def others(kind):
        def run():
            got = []
            for a in SQUARE_ALGEBRAS:
                row = []
                for b in SQUARE_ALGEBRAS:
                    A, B = base_algebra(a), base_algebra(b)
                    row.append((vinberg_dims if kind == "vinberg" else triality_construction_dims)(A, B).total)
                got.append(tuple(row))
            return expect(tuple(got), MAGIC_DIMS, "matrix")
        return run

    out.append(("[5] vinberg dims", others("vinberg")))
    out.append(("[5] triality dims", others("triality")))
    out.append(("[5] label dims", lambda: expect(
        tuple(tuple(label_dim(x) for x in row) for row in CARTAN_LABELS), MAGIC_DIMS, "matrix")))
    out.append(("[5] symmetric", lambda: expect(
        all(MAGIC_DIMS[i][j] == MAGIC_DIMS[j][i] for i in range(5) for j in range(5)), True, "symmetric")))

    for b, want in INTERMEDIATE_ROW.items():
        def inter(b=b, want=want):
            r = intermediate_row(b)
            h = heisenberg_extension(r.gbar, r.action, r.omega)
            f1, f2 = fingerprint(r.gtilde), fingerprint(h)
            status, detail = expect(r.dims, want, "gbar,V,gtilde")
            if f1 != f2:
                return FAIL, f"{detail} fingerprint mismatch {f1} vs {f2}"
            jac = [_jacobi_line(x, seed) for x in (r.gtilde, h)]
            if any(j[0] == FAIL for j in jac):
                return FAIL, f"{detail} jacobi " + "; ".join(j[1] for j in jac)
            modes = ",".join(j[1].split()[1].split("=")[1] for j in jac)
            return status, f"{detail} heisenberg=match jacobi={modes}"
        out.append((f"[7] intermediate T(Os,H3({_sh(b)}))", inter))

    def bigrad8():
        g = bigrading(8)
        return expect((g.total, g.cells[2][2], g.cells[1][1], g.cells[1][2], g.cells[0][2]),
                      (248, 68, 12, 32, 1), "total,center,edge,edge,corner")

    out.append(("[9] bigrading m=8", bigrad8))
    out.append(("[9] bigrading m=1,2,4,6", lambda: expect(
        tuple(bigrading(m).total for m in (1, 2, 4, 6)), (52, 78, 133, 190), "totals")))
    octo = base_algebra("split_octonion")
    for a in SQUARE_ALGEBRAS:
        def adams(a=a):
            A = base_algebra(a)
            return expect(adams_dims(A, 8), equal_rank_dims(A, octo).total, "a(A,W8)")
        out.append((f"[9] a({_sh(a)},W8)=t({_sh(a)},Os)", adams))
    return out


# ---------------------------------------------------------------------------
# series


def series_checks(seed: int) -> list[Check]:
    out: list[Check] = []
    for m, row in zip((1, 2, 4, 6, 8), MAGIC_DIMS):
        out.append((f"[10] series m={m}", lambda m=m, row=row: expect(
            (series_dims(m).dim_sub, series_dims(m).dim_exc), (row[2], row[4]), "sub,exc")))
    out.append(("[10] series identity", lambda: expect(series_identity_holds(), True, "zero")))
    out.append(("[10] involution 6", lambda: expect(triangle_involution(6), Fraction(-3, 2), "image")))
    out.append(("[10] superdims", lambda: expect(
        (superdim("osp(10|2)"), superdim("sl(3|2)"), superdim("psl(2|2)")), (28, 0, -2), "osp(10|2),sl(3|2),psl(2|2)")))

    def super_table():
        rep = check_super_series()
        bad = [f"{r.evaluated}:{r.superdim}!={r.expected}" for r in rep.rows if not r.passed]
        interp = sum(1 for r in rep.rows if r.note.startswith("interpretive"))
        if rep.passed:
            return PASS, f"rows={len(rep.rows)} interpretive={interp}"
        return FAIL, f"rows={len(rep.rows)} failures={';'.join(bad)}"

    out.append(("[10] super tables", super_table))
    out.append(("[10] dus symbolic", lambda: expect(check_dus(), True, "identity")))

    def dus_special():
        vals = [dus_specialization(g, v) for g, v in EXCEPTIONAL_SPECIALIZATIONS]
        return expect(tuple(l for l, _ in vals), tuple(r for _, r in vals), "lhs")
    out.append(("[10] dus specializations", dus_special))
    return out


_BUILDERS = {"core": core_checks, "square": square_checks, "series": series_checks}


def threads() -> int:
    raw = os.environ.get("MAGICFORGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_one(check: Check) -> CheckResult:
    name, fn = check
    try:
        status, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        status, detail = FAIL, f"error {type(exc).__name__}: {exc}"
    return CheckResult(name, status, detail)


def run_suite(suite: str = "all", seed: int = DEFAULT_SEED, workers: int | None = None) -> RunReport:
    if suite != "all" and suite not in _BUILDERS:
        raise ValueError(f"unknown suite {suite!r}")
    names = SUITES if suite == "all" else (suite,)
    checks: list[Check] = []
    for s in names:
        checks += _BUILDERS[s](seed)
    workers = workers or threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, checks))
    else:
        results = [_run_one(c) for c in checks]
    return RunReport(suite, seed, results)
