"""Exact linear algebra over prime fields and the rationals.

The rank/kernel/sum-intersection identities are checked against brute-force
span enumeration over F_2, where subspaces are small enough to list element
by element.  That gives an oracle for the echelon machinery that everything
else in the package leans on.
"""

import random
from fractions import Fraction

import pytest

from persloc.fields import DEFAULT_FIELD, Field, Matrix, Subspace, sum_and_intersection


F2 = Field(2)
F5 = Field(5)
Q = Field(0)


def rand_matrix(rng, fld, nrows, ncols):
    if fld.char:
        rows = [[rng.randrange(fld.char) for _ in range(ncols)] for _ in range(nrows)]
    else:
        rows = [[rng.randint(-4, 4) for _ in range(ncols)] for _ in range(nrows)]
    if nrows == 0:
        return Matrix(fld, 0, ncols, ())
    return Matrix.from_rows(fld, rows)


def all_vectors(fld, dim):
    """Every vector of F_p^dim; only sane for tiny p and dim."""
    assert fld.char
    vecs = [()]
    for _ in range(dim):
        vecs = [v + (c,) for v in vecs for c in range(fld.char)]
    return [tuple(fld.coerce(c) for c in v) for v in vecs]


def span_size(fld, vectors, dim):
    """Brute-force size of the span inside F_p^dim."""
    seen = {tuple(fld.zero for _ in range(dim))}
    frontier = list(seen)
    while frontier:
        base = frontier.pop()
        for v in vectors:
            for c in range(fld.char):
                cand = tuple(
                    fld.normalize(b + fld.coerce(c) * x) for b, x in zip(base, v)
                )
                if cand not in seen:
                    seen.add(cand)
                    frontier.append(cand)
    return len(seen)


def test_field_basics():
    assert F5.coerce(-1) == 4
    assert F5.inv(F5.coerce(2)) == 3
    assert Q.coerce("2/3") == Fraction(2, 3)
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert str(F5) == "F_5"
    assert str(Q) == "Q"
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


def test_identity_and_zero():
    ident = Matrix.identity(F5, 3)
    z = Matrix.zeros(F5, 3, 3)
    assert ident.rank() == 3
    assert z.rank() == 0
    assert ident.mul(ident) == ident
    assert ident.kernel().dim == 0
    assert z.kernel().dim == 3


def test_kernel_known_example():
    # [[1,2],[2,4]] over F_5: second row is twice the first, kernel is the
    # line spanned by (3, 1) since 1*3 + 2*1 = 5 = 0.
    mat = Matrix.from_rows(F5, [[1, 2], [2, 4]])
    assert mat.rank() == 1
    ker = mat.kernel()
    assert ker.dim == 1
    assert ker.contains_vector((3, 1))
    assert not ker.contains_vector((1, 0))


def test_rank_equals_transpose_rank():
    rng = random.Random("rank-transpose")
    for _ in range(60):
        fld = rng.choice([F2, F5, Q])
        mat = rand_matrix(rng, fld, rng.randint(0, 5), rng.randint(1, 5))
        assert mat.rank() == mat.transpose().rank()


def test_rank_nullity():
    rng = random.Random("rank-nullity")
    for _ in range(60):
        fld = rng.choice([F2, F5, Q])
        ncols = rng.randint(1, 6)
        mat = rand_matrix(rng, fld, rng.randint(0, 6), ncols)
        assert mat.rank() + mat.kernel().dim == ncols


def test_kernel_vectors_annihilate():
    rng = random.Random("kernel-check")
    for _ in range(40):
        fld = rng.choice([F5, Q])
        mat = rand_matrix(rng, fld, rng.randint(1, 5), rng.randint(1, 5))
        ker = mat.kernel()
        for j in range(ker.dim):
            v = ker.basis.col(j)
            assert all(x == fld.zero for x in mat.apply(v))


def test_subspace_dims_against_enumeration():
    # dim(U), dim(U+W), dim(U cap W) versus literal element counts in F_2^d
    rng = random.Random("enumerate-f2")
    for _ in range(30):
        dim = rng.randint(1, 5)
        u_vecs = [tuple(rng.randrange(2) for _ in range(dim)) for _ in range(rng.randint(0, 3))]
        w_vecs = [tuple(rng.randrange(2) for _ in range(dim)) for _ in range(rng.randint(0, 3))]
        u = Subspace.span(F2, dim, u_vecs)
        w = Subspace.span(F2, dim, w_vecs)
        assert 2 ** u.dim == span_size(F2, u_vecs, dim)
        plus = u.plus(w)
        meet = u.intersect(w)
        assert 2 ** plus.dim == span_size(F2, u_vecs + w_vecs, dim)
        assert plus.dim + meet.dim == u.dim + w.dim
        both = [v for v in all_vectors(F2, dim) if u.contains_vector(v) and w.contains_vector(v)]
        assert 2 ** meet.dim == len(both)
        s, i = sum_and_intersection(u, w)
        assert s == plus and i == meet


def test_subspace_membership_brute_force():
    rng = random.Random("membership")
    for _ in range(20):
        dim = rng.randint(1, 4)
        vecs = [tuple(rng.randrange(2) for _ in range(dim)) for _ in range(rng.randint(1, 3))]
        u = Subspace.span(F2, dim, vecs)
        elements = {v for v in all_vectors(F2, dim) if u.contains_vector(v)}
        assert len(elements) == 2 ** u.dim
        for v in vecs:
            assert tuple(F2.coerce(x) for x in v) in elements


def test_echelon_basis_is_canonical():
    # the same subspace given by different spanning sets gets one basis matrix
    u1 = Subspace.span(F5, 3, [(1, 2, 3), (0, 1, 1)])
    u2 = Subspace.span(F5, 3, [(1, 3, 4), (0, 2, 2), (1, 2, 3)])
    assert u1 == u2
    assert u1.basis == u2.basis


def test_image_under_and_reduce():
    mat = Matrix.from_rows(F5, [[1, 0], [0, 0]])
    u = Subspace.full(F5, 2)
    img = u.image_under(mat)
    assert img.dim == 1
    assert img.contains_vector((2, 0))
    assert img.reduce((2, 3)) == (0, 3)


def test_rational_exactness():
    # Hilbert-style matrix needs exact arithmetic; floating point would drift
    rows = [[Fraction(1, i + j + 1) for j in range(4)] for i in range(4)]
    mat = Matrix.from_rows(Q, rows)
    assert mat.rank() == 4
    assert mat.kernel().dim == 0
