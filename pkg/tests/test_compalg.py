import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicforge.compalg import (
    BASE_ALGEBRAS,
    MissingStructure,
    UnknownAlgebra,
    base_algebra,
    cayley_dickson,
    check_graded,
    check_identities,
    from_json,
    is_homomorphism,
    jordan_hermitian,
    radical_of_form,
    resolve_algebra,
    sl2_actions,
    to_json,
    to_markdown,
)
from magicforge.exactla import MatrixQ

# --- an independent model of the split octonions: triples (u, A, v) -------------


def mm(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def bar(x):
    return [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]


def mv(x, u):
    return [x[0][0] * u[0] + x[0][1] * u[1], x[1][0] * u[0] + x[1][1] * u[1]]


def side_by_side(u, v):
    return [[u[0], v[0]], [u[1], v[1]]]


def triple_product(x, y):
    """(u1,A1,v1)(u2,A2,v2) = (A1bar u2 + A2 u1, A1A2 + (u2,v2) bar(u1,v1), A1bar v2 + A2 v1)."""
    (u1, a1, v1), (u2, a2, v2) = x, y
    u = [p + q for p, q in zip(mv(bar(a1), u2), mv(a2, u1))]
    v = [p + q for p, q in zip(mv(bar(a1), v2), mv(a2, v1))]
    s = mm(side_by_side(u2, v2), bar(side_by_side(u1, v1)))
    a = [[mm(a1, a2)[i][j] + s[i][j] for j in range(2)] for i in range(2)]
    return u, a, v


def to_triple(c):
    return [c[0], c[1]], [[c[2], c[3]], [c[4], c[5]]], [c[6], c[7]]


def from_triple(t):
    u, a, v = t
    return [u[0], u[1], a[0][0], a[0][1], a[1][0], a[1][1], v[0], v[1]]


coords = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=8, max_size=8)


@settings(max_examples=50, deadline=None)
@given(coords, coords)
def test_split_octonion_table_matches_triple_formula(x, y):
    o = base_algebra("split_octonion")
    assert o.multiply(x, y) == from_triple(triple_product(to_triple(x), to_triple(y)))


@settings(max_examples=50, deadline=None)
@given(coords, coords)
def test_split_octonion_norm_is_multiplicative(x, y):
    o = base_algebra("split_octonion")
    assert o.norm(o.multiply(x, y)) == o.norm(x) * o.norm(y)


@settings(max_examples=50, deadline=None)
@given(coords, coords)
def test_split_octonion_alternative_on_samples(x, y):
    o = base_algebra("split_octonion")
    assert o.multiply(o.multiply(x, x), y) == o.multiply(x, o.multiply(x, y))
    assert o.multiply(o.multiply(y, x), x) == o.multiply(y, o.multiply(x, x))


def test_printed_triple_formula_breaks_grading_and_alternativity():
    # A1 u2 + A2bar u1 and bar(u2, v2)(u1, v1): U_- U_- is no longer zero
    def printed(x, y):
        (u1, a1, v1), (u2, a2, v2) = x, y
        u = [p + q for p, q in zip(mv(a1, u2), mv(bar(a2), u1))]
        v = [p + q for p, q in zip(mv(a1, v2), mv(bar(a2), v1))]
        s = mm(bar(side_by_side(u2, v2)), side_by_side(u1, v1))
        a = [[mm(a1, a2)[i][j] + s[i][j] for j in range(2)] for i in range(2)]
        return u, a, v

    def p(x, y):
        return from_triple(printed(to_triple(x), to_triple(y)))

    e = [[int(i == k) for k in range(8)] for i in range(8)]
    assert p(e[0], e[1]) == [0, 0, 0, 0, -1, 0, 0, 0]
    assert p(p(e[0], e[0]), e[1]) != p(e[0], p(e[0], e[1]))
    o = base_algebra("split_octonion")
    assert o.multiply(e[0], e[1]) == [0] * 8


@pytest.mark.parametrize("name", BASE_ALGEBRAS)
@pytest.mark.parametrize("which", ["alternative", "composition", "conj_antiautomorphism", "norm_conjugate"])
def test_identities_hold_symbolically(name, which):
    rep = check_identities(base_algebra(name), which)
    assert rep.passed, rep.failures[:3]


def test_identity_checker_catches_a_bad_table():
    o = base_algebra("split_octonion")
    mul = dict(o.mul)
    mul[(0, 7)] = {2: Fraction(2)}  # corrupt one product
    bad = type(o)(name="bad", dim=8, mul=mul, basis=o.basis, unit=o.unit, conj=o.conj, form=o.form)
    assert not check_identities(bad, "alternative").passed


@pytest.mark.parametrize("name,dim", [("reals", 0), ("complex", 1), ("split_complex", 1), ("quaternion", 3),
                                      ("split_quaternion", 3), ("octonion", 7), ("split_octonion", 7),
                                      ("sextonion", 5)])
def test_imaginary_dims(name, dim):
    assert base_algebra(name).imaginary.dim == dim


def test_cayley_dickson_reproduces_the_small_algebras():
    r = base_algebra("reals")
    assert cayley_dickson(r, 1).same_structure(base_algebra("complex"))
    assert cayley_dickson(r, -1).same_structure(base_algebra("split_complex"))
    q = cayley_dickson(cayley_dickson(r, 1), 1)
    # basis (1, i, j, ij) with ij = -k
    assert is_homomorphism(q, base_algebra("quaternion"), MatrixQ.diag([1, 1, 1, -1]))


def test_double_of_split_quaternions_is_the_triple_model():
    cd = cayley_dickson(base_algebra("split_quaternion"), -1)
    # (A, B) with B = (u, v): B's matrix units E11, E12, E21, E22 go to u1, v1, u2, v2
    image = [2, 3, 4, 5, 0, 6, 1, 7]
    m = MatrixQ.from_rows([[int(image[j] == i) for j in range(8)] for i in range(8)])
    assert is_homomorphism(cd, base_algebra("split_octonion"), m)


def test_sextonion_is_a_subalgebra_with_two_dim_radical():
    s, o = base_algebra("sextonion"), base_algebra("split_octonion")
    incl = MatrixQ.from_rows([[int(i == j) for j in range(6)] for i in range(8)], 6)
    assert is_homomorphism(s, o, incl)
    rad = radical_of_form(s)
    assert rad.dim == 2
    assert set(rad.pivots) == {0, 1}  # spanned by u1, u2


def test_split_octonion_three_step_grading():
    o = base_algebra("split_octonion")
    assert check_graded(o).passed
    assert o.degrees == (-1, -1, 0, 0, 0, 0, 1, 1)
    # U_- U_- = 0 and U_+ U_+ = 0
    for i in (0, 1):
        for j in (0, 1):
            assert not o.product(i, j) and not o.product(6 + i, 6 + j)


def test_sl2_actions_commute_and_act_by_derivations():
    first, second = sl2_actions()
    zero = MatrixQ.zeros(8, 8)
    for x in first:
        for y in second:
            assert x @ y - y @ x == zero
    o = base_algebra("split_octonion")
    for d in first + second:
        for i in range(8):
            for j in range(8):
                ei, ej = o.e(i), o.e(j)
                lhs = d @ o.multiply(ei, ej)
                rhs = [p + q for p, q in zip(o.multiply(d @ ei, ej), o.multiply(ei, d @ ej))]
                assert lhs == rhs


def test_sl2_actions_are_representations():
    # [e, f] = h, [h, e] = 2e, [h, f] = -2f for both actions
    for e, h, f in sl2_actions():
        assert e @ f - f @ e == h
        assert h @ e - e @ h == e.scale(2)
        assert h @ f - f @ h == f.scale(-2)


@pytest.mark.parametrize("name,dim", [("reals", 6), ("split_complex", 9), ("split_quaternion", 15),
                                      ("sextonion", 21), ("split_octonion", 27)])
def test_jordan_dims(name, dim):
    j = jordan_hermitian(base_algebra(name))
    assert j.dim == dim
    assert j.imaginary.dim == dim - 1


def test_jordan_product_is_commutative_and_unital():
    j = jordan_hermitian(base_algebra("split_quaternion"))
    one = j.one()
    for i in range(j.dim):
        assert j.multiply(one, j.e(i)) == j.e(i)
        for k in range(j.dim):
            assert j.product(i, k) == j.product(k, i)


@pytest.mark.parametrize("name", list(BASE_ALGEBRAS) + ["H3(split_complex)"])
def test_json_roundtrip_is_byte_identical(name):
    a = resolve_algebra(name)
    first = json.dumps(to_json(a), indent=2)
    back = from_json(json.loads(first))
    assert back == a
    assert json.dumps(to_json(back), indent=2) == first


def test_json_uses_rational_strings():
    data = to_json(jordan_hermitian(base_algebra("reals")))
    values = [c for _, _, terms in data["mul"] for _, c in terms]
    assert all(isinstance(c, str) for c in values)
    assert "1/2" in values


def test_markdown_has_labels():
    md = to_markdown(base_algebra("split_octonion"))
    lines = md.splitlines()
    assert "| · | u1 | u2 | E11 | E12 | E21 | E22 | v1 | v2 |" in lines
    row_u1 = next(l for l in lines if l.startswith("| u1 |"))
    assert row_u1.split(" | ")[-1] == "E22 |"  # u1 v2 = (u2, v2) bar(u1, 0) -> E22


def test_unknown_and_missing():
    with pytest.raises(UnknownAlgebra):
        base_algebra("bogus")
    s = base_algebra("sextonion")
    bare = type(s)(name="bare", dim=1, mul={(0, 0): {0: Fraction(1)}}, basis=("e",))
    with pytest.raises(MissingStructure):
        bare.one()
    with pytest.raises(MissingStructure):
        cayley_dickson(bare, 1)
