import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cupforge.f2linalg import (
    BitMatrix,
    BitVector,
    Echelon,
    image_basis,
    in_span,
    kernel_basis,
    quotient_basis,
    rank,
    rref,
)


def dense_rank(rows):
    """Textbook elimination on lists of 0/1 lists (independent of the bitset code)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [a ^ b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def span(vectors, n):
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return out


matrices = st.integers(1, 7).flatmap(
    lambda nr: st.integers(1, 8).flatmap(
        lambda nc: st.lists(st.lists(st.integers(0, 1), min_size=nc, max_size=nc), min_size=nr, max_size=nr)
    )
)


@given(matrices)
def test_rank_matches_dense_elimination(entries):
    M = BitMatrix.from_dense(entries)
    assert rank(M) == dense_rank(entries)
    assert rank(M.T) == rank(M)


@given(matrices)
def test_kernel_is_exact(entries):
    M = BitMatrix.from_dense(entries)
    ker = kernel_basis(M)
    assert len(ker) == M.ncols - rank(M)
    for v in ker:
        assert not M.matvec(v)
    if ker:
        assert dense_rank([v.to_list() for v in ker]) == len(ker)
    # every vector in the kernel is in the span (brute force for small widths)
    if M.ncols <= 8:
        sp = span([v.bits for v in ker], M.ncols)
        for x in range(1 << M.ncols):
            assert (M.matvec(BitVector(M.ncols, x)).bits == 0) == (x in sp)


@given(matrices)
def test_image_basis_spans_columns(entries):
    M = BitMatrix.from_dense(entries)
    im = image_basis(M)
    assert len(im) == rank(M)
    sp = span([v.bits for v in im], M.nrows)
    for j in range(M.ncols):
        assert M.column(j) in sp


@given(matrices)
def test_rref_is_canonical(entries):
    M = BitMatrix.from_dense(entries)
    shuffled = list(reversed(M.rows)) + [M.rows[0] ^ M.rows[-1]]
    assert rref(M.rows) == rref(shuffled)


@given(st.lists(st.integers(0, 255), max_size=6), st.lists(st.integers(0, 255), max_size=6))
def test_quotient_basis_complements_boundaries(zs, extra):
    # Z = span(zs + extra), B = span(zs)
    Z = [BitVector(8, v) for v in zs + extra]
    B = [BitVector(8, v) for v in zs]
    Q = quotient_basis(Z, B)
    rZ = dense_rank([v.to_list() for v in Z]) if Z else 0
    rB = dense_rank([v.to_list() for v in B]) if B else 0
    assert len(Q) == rZ - rB
    if B + Q:
        assert dense_rank([v.to_list() for v in B + Q]) == rZ
    for v in Q:
        assert in_span(v, Z)


def test_quotient_basis_rejects_non_subspace():
    with pytest.raises(ValueError):
        quotient_basis([BitVector(3, 0b001)], [BitVector(3, 0b010)])


@settings(max_examples=50)
@given(matrices, st.data())
def test_matmul_matches_dense(entries, data):
    A = BitMatrix.from_dense(entries)
    other = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3),
                               min_size=A.ncols, max_size=A.ncols))
    B = BitMatrix.from_dense(other)
    want = [[sum(entries[i][k] * other[k][j] for k in range(A.ncols)) % 2 for j in range(3)] for i in range(A.nrows)]
    assert (A @ B).to_dense() == want


def test_bitvector_basics():
    v = BitVector.from_support(5, [0, 3])
    w = BitVector.from_list([1, 1, 0, 0, 0])
    assert (v + w).support == (1, 3)
    assert v.dot(w) == 1
    assert v.weight == 2
    assert v.to_list() == [1, 0, 0, 1, 0]
    with pytest.raises(ValueError):
        BitVector(2, 0b100)


def test_echelon_membership():
    E = Echelon([0b011, 0b110])
    assert 0b101 in E
    assert 0b001 not in E
    assert E.add(0b001)
    assert not E.add(0b111)
    assert len(E) == 3
    assert all(v in E for v in range(8))
