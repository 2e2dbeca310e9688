import json
from fractions import Fraction

import pytest

from magicforge.compalg import base_algebra, jordan_hermitian
from magicforge.exactla import MatrixQ
from magicforge.liealg import (
    GradingError,
    JacobiError,
    LieAlgebra,
    NotExtremal,
    NotInvariant,
    Triple,
    check_extremal,
    check_triple,
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
    parabolic_and_derived,
    sextonion_degree_one,
    sl2,
    so_of_form,
    triality_algebra,
    triality_diagonal_triple,
)

SQUARE = ("reals", "split_complex", "split_quaternion", "sextonion", "split_octonion")


def der_os():
    return from_algebra_derivations(base_algebra("split_octonion"))


@pytest.mark.parametrize("name,dim", list(zip(SQUARE, (0, 0, 3, 8, 14))))
def test_derivation_dims(name, dim):
    assert from_algebra_derivations(base_algebra(name)).dim == dim


@pytest.mark.parametrize("name,dim", [("complex", 0), ("quaternion", 3), ("octonion", 14)])
def test_compact_derivation_dims(name, dim):
    assert from_algebra_derivations(base_algebra(name)).dim == dim


def test_derivations_are_derivations():
    a = base_algebra("sextonion")
    l = from_algebra_derivations(a)
    for d in l.realization.basis:
        m = l.realization.block_matrices(d)[0]
        for i in range(a.dim):
            for j in range(a.dim):
                ei, ej = a.e(i), a.e(j)
                lhs = m @ a.multiply(ei, ej)
                rhs = [p + q for p, q in zip(a.multiply(m @ ei, ej), a.multiply(ei, m @ ej))]
                assert lhs == rhs


@pytest.mark.parametrize("name,tri,inter", list(zip(SQUARE, (0, 2, 9, 18, 28), (0, 1, 6, 13, 21))))
def test_triality_and_intermediate_dims(name, tri, inter):
    a = base_algebra(name)
    assert triality_algebra(a).dim == tri
    assert [intermediate_triality(a, i).dim for i in (1, 2, 3)] == [inter] * 3
    assert all(intermediate_intersections(a).values())


@pytest.mark.parametrize("name,so", list(zip(SQUARE, (0, 1, 6, 18, 28))))
def test_vector_space_ledger(name, so):
    a = base_algebra(name)
    der = from_algebra_derivations(a).dim
    inter = intermediate_triality(a, 1).dim
    im = a.imaginary.dim
    assert inter == der + im
    assert so_of_form(a.form).dim == so
    # so = int + Im holds only from the quaternions' double onwards
    holds = so == inter + im
    assert holds == (name in ("reals", "sextonion", "split_octonion"))


def test_jordan_derivation_dims():
    dims = [from_algebra_derivations(jordan_hermitian(base_algebra(n))).dim for n in SQUARE]
    assert dims == [3, 8, 21, 36, 52]


def test_jacobi_failure_is_detected():
    with pytest.raises(JacobiError):
        # [e0,e1]=e1, [e0,e2]=e2, [e1,e2]=e0 is not a Lie algebra
        LieAlgebra("bad", 3, {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {0: 1}})
    l = LieAlgebra("bad", 3, {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {0: 1}}, check=False)
    rep = l.jacobi()
    assert not rep.passed and rep.mode == "exhaustive" and rep.witness is not None


def test_sampled_jacobi_is_seeded():
    l = classical_algebra("sl", 9)  # dim 80 -> sampled
    a, b = l.jacobi(seed=3), l.jacobi(seed=3)
    assert a.mode == "sampled" and a.passed
    assert a == b
    assert a.triples >= 100000


def test_lie_json_roundtrip():
    l = der_os()
    first = json.dumps(l.to_json(), indent=2)
    back = LieAlgebra.from_json(json.loads(first))
    assert json.dumps(back.to_json(), indent=2) == first


def test_sl2_and_triples():
    l = sl2()
    assert check_triple(l, l.e(0), l.e(1), l.e(2))
    assert not check_triple(l, l.e(0), l.e(1), l.e(0))
    assert check_extremal(l, l.e(0))


def test_octonion_triple_and_extremality():
    l = der_os()
    t = octonion_triple(l)
    assert check_triple(l, t.E, t.H, t.F)
    assert check_extremal(l, t.E)
    assert not check_extremal(l, t.H)


def test_derivation_grading_of_split_octonions():
    l = der_os()
    g = grading_by_ad(l, octonion_triple(l).H)
    assert g.signature() == [(-2, 1), (-1, 4), (0, 4), (1, 4), (2, 1)]
    assert sum(g.dims()) == 14


def test_triality_grading_of_split_octonions():
    l = triality_algebra(base_algebra("split_octonion"))
    g = grading_by_ad(l, triality_diagonal_triple().H)
    assert g.dims() == [1, 8, 10, 8, 1]


def test_nilpotent_h_has_no_grading():
    l = der_os()
    with pytest.raises(GradingError):
        grading_by_ad(l, octonion_triple(l).E)


def test_intermediate_of_der_os():
    l = der_os()
    r = intermediate_subalgebra(l, octonion_triple(l))
    assert r.dims == (3, 4, 8)
    f = fingerprint(r.gtilde)
    assert (f.dim, f.dim_center, f.dim_derived, f.killing_rank, f.radical_dim_lower_bound) == (8, 1, 8, 3, 5)
    h = heisenberg_extension(r.gbar, r.action, r.omega)
    assert fingerprint(h) == f


def test_der_sextonions_is_not_the_intermediate_algebra():
    # der(S) has trivial center and 7-dim derived algebra; gtilde has a center
    f = fingerprint(from_algebra_derivations(base_algebra("sextonion")))
    assert (f.dim, f.dim_center, f.dim_derived, f.killing_rank) == (8, 0, 7, 4)


def test_parabolic_and_derived():
    l = der_os()
    p = parabolic_and_derived(l, octonion_triple(l))
    assert (p.g_p.dim, p.g_p_prime.dim, p.gtilde.dim, p.gtilde_prime.dim) == (9, 8, 8, 7)
    assert (p.derived_g_p_dim, p.derived_gtilde_dim) == (8, 8)
    assert (p.codim_top, p.codim_bottom) == (1, 1)
    assert p.e_central_in_gtilde and not p.e_central_in_g_p
    assert p.complement_subalgebra and not p.central_complement


def test_non_extremal_is_rejected():
    # short-root triple of sp(4): e = E12 - E43 grades in degrees -2..2 but is not extremal
    l = classical_algebra("sp", 4)
    e = {1: Fraction(1), 14: Fraction(-1)}
    h = {0: Fraction(1), 5: Fraction(-1), 10: Fraction(-1), 15: Fraction(1)}
    f = {4: Fraction(1), 11: Fraction(-1)}
    t = Triple.of(*(l.realization.coordinates(m) for m in (e, h, f)))
    assert check_triple(l, t.E, t.H, t.F)
    assert not check_extremal(l, t.E)
    with pytest.raises(NotExtremal):
        intermediate_subalgebra(l, t)


def test_principal_sl3_is_not_extremal():
    l = classical_algebra("sl", 3)
    e = {1: Fraction(1), 5: Fraction(1)}
    h = {0: Fraction(2), 8: Fraction(-2)}
    f = {3: Fraction(2), 7: Fraction(2)}
    t = Triple.of(*(l.realization.coordinates(m) for m in (e, h, f)))
    assert grading_by_ad(l, t.H).degrees() == [-4, -2, 0, 2, 4]
    with pytest.raises(NotExtremal):
        intermediate_subalgebra(l, t)


@pytest.mark.parametrize("kind,n,dims", [("sl", 4, (4, 4, 9)), ("sp", 4, (3, 2, 6)), ("so", 7, (6, 6, 13)),
                                         ("sp", 6, (10, 4, 15))])
def test_classical_intermediate(kind, n, dims):
    l = classical_algebra(kind, n)
    t = classical_principal_triple(kind, n)
    assert check_triple(l, t.E, t.H, t.F) and check_extremal(l, t.E)
    r = intermediate_subalgebra(l, t)
    assert r.dims == dims
    assert fingerprint(heisenberg_extension(r.gbar, r.action, r.omega)) == fingerprint(r.gtilde)


@pytest.mark.parametrize("kind,n,dim", [("gl", 3, 9), ("sl", 4, 15), ("so", 7, 21), ("sp", 6, 21)])
def test_classical_dims(kind, n, dim):
    assert classical_algebra(kind, n).dim == dim


def test_heisenberg_rejects_a_non_invariant_form():
    l = der_os()
    r = intermediate_subalgebra(l, octonion_triple(l))
    n = r.omega.rows
    # a different nondegenerate antisymmetric form: pair coordinates (0,1), (2,3)
    rows = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        rows[i][i + 1], rows[i + 1][i] = 1, -1
    other = MatrixQ.from_rows(rows)
    if other == r.omega:
        pytest.skip("form happens to coincide")
    with pytest.raises(NotInvariant):
        heisenberg_extension(r.gbar, r.action, other)


def test_sextonion_degree_one_derivations():
    rep = sextonion_degree_one()
    assert rep.dim == 4 and rep.psi_one_zero and rep.e_f_free
    assert rep.passed
