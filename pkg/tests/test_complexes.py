import pytest
from hypothesis import given
from hypothesis import strategies as st

from cupforge.complexes import (
    BasedComplex,
    Orbit,
    betti,
    cohomology_basis,
    homology_basis,
    label_key,
    render_label,
    validate,
)
from cupforge.constructions import plaquette_ising, repetition_circle, torus_code
from cupforge.errors import ComplexError
from cupforge.f2linalg import BitMatrix, Echelon


def triangle_boundary():
    # hollow triangle: H^0 = H^1 = F2
    return BasedComplex.from_maps(
        {0: ["a", "b", "c"], 1: ["ab", "bc", "ca"]},
        {0: {"a": ["ab", "ca"], "b": ["ab", "bc"], "c": ["bc", "ca"]}},
    )


def test_from_maps_sorts_labels_and_cancels():
    C = BasedComplex.from_maps({0: ["y", "x"], 1: ["e"]}, {0: {"x": ["e", "e"], "y": ["e"]}})
    assert C.labels[0] == ("x", "y")
    assert C.coboundary_bits(0, 0) == 0
    assert C.coboundary_bits(0, 1) == 1


def test_triangle_cohomology():
    C = triangle_boundary()
    assert validate(C).ok
    assert [betti(C, p) for p in (0, 1)] == [1, 1]
    assert len(cohomology_basis(C, 0)) == 1
    assert cohomology_basis(C, 0)[0].weight == 3
    assert len(homology_basis(C, 1)) == 1


def test_validate_reports_nilpotency_failure():
    C = BasedComplex({0: ["v"], 1: ["e"], 2: ["f"]},
                     {0: BitMatrix.from_dense([[1]]), 1: BitMatrix.from_dense([[1]])})
    rep = validate(C)
    assert not rep.ok and rep.reason == "nilpotency"
    assert rep.witness["degree"] == 0 and rep.witness["basis_element"] == "v"


def test_validate_reports_shape():
    C = BasedComplex({0: ["v", "w"], 1: ["e"]}, {0: BitMatrix.from_dense([[1]])})
    rep = validate(C)
    assert not rep.ok and rep.reason == "shape"


def test_duplicate_labels_rejected():
    with pytest.raises(ComplexError):
        BasedComplex({0: ["a", "a"]})


def test_degree_out_of_range():
    with pytest.raises(ComplexError):
        cohomology_basis(triangle_boundary(), 5)


def test_label_order_and_rendering():
    labs = [("a", 1), 3, "z", Orbit((1, 2)), 1]
    assert sorted(labs, key=label_key) == [1, 3, "z", ("a", 1), Orbit((1, 2))]
    assert render_label((1, (0, "e"))) == "(1,(0,e))"


@pytest.mark.parametrize("make", [lambda: torus_code(2, 3).complex, lambda: torus_code(3, 2).complex,
                                  lambda: plaquette_ising(3).complex, lambda: repetition_circle(4).complex])
def test_cohomology_matches_betti(make):
    C = make()
    assert validate(C).ok
    for p in C.degrees:
        H = cohomology_basis(C, p)
        assert len(H) == betti(C, p) == len(homology_basis(C, p))
        # representatives are cocycles independent modulo coboundaries
        if p < C.max_degree:
            for v in H:
                assert not C.delta(p).matvec(v)
        E = Echelon(C.delta(p - 1).T.rows if p > C.min_degree else [])
        base = len(E)
        for v in H:
            E.add(v.bits)
        assert len(E) == base + len(H)


@given(st.lists(st.integers(0, 63), min_size=1, max_size=5))
def test_cohomology_dimension_formula(cols):
    C = BasedComplex({0: list(range(len(cols))), 1: list(range(6))}, {0: BitMatrix.from_columns(6, cols)})
    assert len(cohomology_basis(C, 0)) + len(cohomology_basis(C, 1)) == len(cols) + 6 - 2 * C.rank_delta(0)
