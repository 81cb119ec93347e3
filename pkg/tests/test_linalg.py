from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liedef.errors import InputError
from liedef.linalg import (Mat, block_diag, char_poly, clear_denominators,
                           coords_in_basis, det, integer_left_kernel,
                           intersect_spans, inverse, is_nilpotent_mat,
                           jordan_chevalley, kernel, kron, mat_pow,
                           minimal_poly, poly_at, rank, restrict_to_span,
                           simultaneous_eigenspace, solve, span_basis,
                           span_contains)

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def mats(n, m=None):
    m = n if m is None else m
    return st.lists(st.lists(small, min_size=m, max_size=m),
                    min_size=n, max_size=n).map(Mat)


def test_mat_equality_and_hash():
    a = Mat([[1, 2], [3, 4]])
    b = Mat([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]])
    assert a == b and hash(a) == hash(b)
    assert a != Mat([[1, 2], [3, 5]])
    with pytest.raises(ValueError):
        Mat([[1, 2], [3]])


def test_upper_triangular_flags():
    u = Mat([[1, 2], [0, 3]])
    s = Mat([[0, 2], [0, 0]])
    assert u.is_upper_triangular()
    assert not u.is_upper_triangular(strict=True)
    assert s.is_upper_triangular(strict=True)
    assert not Mat([[0, 0], [1, 0]]).is_upper_triangular()


@settings(max_examples=50)
@given(mats(3))
def test_rank_nullity(a):
    assert rank(a) + len(kernel(a)) == 3


@settings(max_examples=50)
@given(mats(3, 4))
def test_kernel_annihilates(a):
    for v in kernel(a):
        assert all(c == 0 for c in (a @ v))


@settings(max_examples=40)
@given(mats(3))
def test_cayley_hamilton(a):
    assert poly_at(char_poly(a), a).is_zero()


@settings(max_examples=40)
@given(mats(3))
def test_minimal_poly_divides_char(a):
    mp = minimal_poly(a)
    assert poly_at(mp, a).is_zero()
    assert char_poly(a).divmod(mp)[1].is_zero()


@settings(max_examples=40)
@given(mats(3))
def test_det_vs_char_poly(a):
    # char_poly is monic with constant term (-1)^n det
    assert char_poly(a).coeffs[0] == det(a) * (-1) ** 3


@settings(max_examples=30)
@given(mats(3))
def test_jordan_chevalley_properties(a):
    s, n = jordan_chevalley(a)
    assert s + n == a
    assert s @ n == n @ s
    assert is_nilpotent_mat(n)
    # semisimple part has squarefree minimal polynomial
    mp = minimal_poly(s)
    from liedef.poly import squarefree_part
    assert squarefree_part(mp).degree == mp.degree


def test_solve_and_inverse():
    a = Mat([[2, 1], [1, 1]])
    b = (Fraction(3), Fraction(2))
    xvec = solve(a, b)
    assert xvec is not None
    assert tuple(a @ xvec) == b
    assert inverse(a) @ a == Mat.identity(2)
    assert solve(Mat([[1, 1], [1, 1]]), (0, 1)) is None
    with pytest.raises(ValueError):
        inverse(Mat([[1, 1], [1, 1]]))


@settings(max_examples=40)
@given(st.lists(st.lists(small, min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_span_basis_canonical(rows):
    basis = span_basis(rows)
    assert span_basis(basis) == basis
    for v in rows:
        assert span_contains(basis, v)
    for v in basis:
        c = coords_in_basis(basis, v)
        assert c is not None


def test_coords_in_basis_outside():
    assert coords_in_basis([(1, 0, 0)], (0, 1, 0)) is None
    assert coords_in_basis([(1, 0, 0), (0, 1, 0)], (2, 3, 0)) == \
        (Fraction(2), Fraction(3))


def test_intersect_spans():
    a = [(1, 0, 0), (0, 1, 0)]
    b = [(0, 1, 0), (0, 0, 1)]
    got = intersect_spans(a, b, 3)
    assert got == [(Fraction(0), Fraction(1), Fraction(0))]
    assert intersect_spans([(1, 0, 0)], [(0, 0, 1)], 3) == []


def test_restrict_to_span():
    a = Mat([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    r = restrict_to_span(a, [(0, 1, 0), (0, 0, 1)])
    assert r == Mat([[2, 0], [0, 3]])
    with pytest.raises(InputError):
        restrict_to_span(Mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]]),
                         [(1, 0, 0)])


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2),
                min_size=1, max_size=4))
def test_integer_left_kernel(rows):
    rels = integer_left_kernel(rows)
    for m in rels:
        assert all(isinstance(c, int) for c in m)
        for col in range(2):
            assert sum(mj * rows[j][col] for j, mj in enumerate(m)) == 0
    # completeness: count matches the rank defect
    assert len(rels) == len(rows) - rank(Mat(rows))


def test_smith_relations_known():
    rels = integer_left_kernel([[1], [2]])
    assert len(rels) == 1
    m = rels[0]
    assert m[0] * 1 + m[1] * 2 == 0 and m != [0, 0]


def test_clear_denominators():
    v = (Fraction(1, 2), Fraction(2, 3))
    w = clear_denominators(v)
    assert all(x.denominator == 1 for x in w)
    assert w[0] * v[1] == w[1] * v[0]  # same direction


def test_kron_block_diag_shapes():
    a = Mat([[1, 2], [3, 4]])
    b = Mat([[0, 1], [1, 0]])
    k = kron(a, b)
    assert k.shape == (4, 4)
    assert k[(0, 1)] == 1 and k[(0, 0)] == 0
    d = block_diag([a, b])
    assert d.shape == (4, 4)
    assert d[(2, 3)] == 1 and d[(0, 2)] == 0


def test_mat_pow():
    a = Mat([[1, 1], [0, 1]])
    assert mat_pow(a, 5) == Mat([[1, 5], [0, 1]])
    assert mat_pow(a, 0) == Mat.identity(2)


def test_simultaneous_eigenspace():
    a = Mat([[1, 0], [0, 2]])
    b = Mat([[3, 0], [0, 3]])
    spaces = simultaneous_eigenspace([a, b])
    assert len(spaces) == 2
    vals = sorted(tuple((c.re, c.im) for c in chars) for chars, _ in spaces)
    assert vals == [((1, 0), (3, 0)), ((2, 0), (3, 0))]
