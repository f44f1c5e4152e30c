import itertools

import pytest

from cupforge.complexes import Cochain, betti, validate
from cupforge.constructions import (
    Splitting,
    group_algebra_balanced,
    group_algebra_code,
    multiplication_action,
    plaquette_ising,
    repetition_circle,
)
from cupforge.errors import ActionError, SpecError
from cupforge.f2linalg import BitVector
from cupforge.orientation import check_integrated_leibniz, cup
from cupforge.products import (
    AbelianGroup,
    BalancedComplex,
    GroupAction,
    TensorComplex,
    check_action_compatibility,
    tensor,
)


def test_group_parsing_and_formatting():
    G = AbelianGroup([6, 12])
    assert G.parse_monomial("x^3y^2") == (3, 2)
    assert G.parse_monomial("x^-1") == (5, 0)
    assert G.parse_element("x + x + y") == frozenset({(0, 1)})
    assert G.format_element(G.parse_element("1 + xy^11")) == "1 + xy^11"
    with pytest.raises(SpecError):
        G.parse_monomial("z")
    assert G.mul((5, 11), (1, 1)) == G.identity
    assert G.inv((2, 3)) == (4, 9)


def test_tensor_is_valid_and_kunneth():
    A, B = repetition_circle(3), plaquette_ising(2)
    T = tensor([A, B])
    C = T.complex
    assert validate(C).ok
    bA = [betti(A.complex, p) for p in (0, 1)]
    bB = [betti(B.complex, p) for p in (0, 1)]
    for p in (0, 1, 2):
        want = sum(bA[i] * bB[p - i] for i in (0, 1) if 0 <= p - i <= 1)
        assert betti(C, p) == want
    assert len(T.cohomology_reps()) == betti(C, 1)
    for v in T.cohomology_reps():
        assert not C.delta(1).matvec(v)


def test_tensor_cup_is_componentwise():
    A = repetition_circle(3)
    T = tensor([A, A])
    # (v0 ⊗ e0) ∪ (e0 ⊗ v1): factor cups v0 ∪ e0 = e0 and e0 ∪ v1 = e0
    u = ((0, 0), (1, 0))
    w = ((1, 0), (0, 1))
    assert T.cup_elem(u, w) == ((1, 0), (1, 0))
    assert T.cup_elem(w, u) is None


def pullback(B: BalancedComplex, c: Cochain) -> Cochain:
    T = B.tensor
    bits = 0
    for e in T.elements(c.degree):
        if (c.vector.bits >> B.orbit_index(c.degree, e)) & 1:
            bits |= 1 << T.elem_index(c.degree, e)
    return Cochain(c.degree, BitVector(len(T.elements(c.degree)), bits))


def balanced_examples():
    G = AbelianGroup([5])
    c = G.parse_element("x + x^-1 + x^2 + x^-2")
    s = Splitting(frozenset({(1,)}), frozenset({(4,)}), frozenset({(2,), (3,)}))
    yield group_algebra_balanced(G, [c, c], [s, s])
    G = AbelianGroup([3])
    c = G.parse_element("x + x^-1")
    s = Splitting(frozenset({(1,)}), frozenset({(2,)}), frozenset())
    yield group_algebra_balanced(G, [c, c, c], [s, s, s])


@pytest.mark.parametrize("B", list(balanced_examples()))
def test_balanced_cup_matches_pullback_route(B):
    C = B.complex
    T = B.tensor
    assert validate(C).ok
    for p, q in itertools.product(range(B.top_degree + 1), repeat=2):
        if p + q > B.top_degree:
            continue
        for i, j in itertools.product(range(C.dim(p)), range(C.dim(q))):
            f = Cochain(p, BitVector(C.dim(p), 1 << i))
            g = Cochain(q, BitVector(C.dim(q), 1 << j))
            lhs = pullback(B, cup(B, f, g))
            rhs = cup(T, pullback(B, f), pullback(B, g))
            assert lhs == rhs, (p, i, q, j)


def test_orbit_counts():
    B = next(balanced_examples())
    T = B.tensor
    for p in range(3):
        assert len(B.reps(p)) * 5 == len(T.elements(p))


def test_non_free_action_rejected():
    A = repetition_circle(4)
    G = AbelianGroup([2])
    # the non-identity element fixes every basis element of both factors
    ident0 = [tuple(range(4))] * 2
    table = {0: ident0, 1: ident0}
    with pytest.raises(ActionError) as exc:
        BalancedComplex(TensorComplex([A, A]), GroupAction(G, [table, table]))
    assert exc.value.code == "non_free"


def test_action_must_preserve_orientation():
    A = repetition_circle(3)
    G = AbelianGroup([2])
    # swapping vertices 1 and 2 with edges fixed is not a chain map
    bad = {0: [(0, 1, 2), (0, 2, 1)], 1: [(0, 1, 2), (0, 1, 2)]}
    rep = check_action_compatibility(A, bad, G)
    assert not rep.ok and rep.reason == "not_a_chain_map"
    # reflection v -> -v, edge i -> -i-1 is a chain map but swaps in and out
    refl = {0: [(0, 1, 2), (0, 2, 1)], 1: [(0, 1, 2), (2, 1, 0)]}
    rep = check_action_compatibility(A, refl, G, require_free=False)
    assert not rep.ok and rep.reason == "orientation_not_preserved"


def test_bad_tables_rejected():
    G = AbelianGroup([2])
    with pytest.raises(ActionError):
        GroupAction(G, [{0: [(0, 1)]}])
    with pytest.raises(ActionError):
        GroupAction(G, [{0: [(0, 1), (0, 0)]}])
    with pytest.raises(ActionError):
        GroupAction(G, [{0: [(1, 0), (1, 0)]}])


def test_multiplication_action_round_trip():
    G = AbelianGroup([4])
    act = multiplication_action(G, 3)
    again = GroupAction.from_json(act.to_json())
    assert again.tables == act.tables
    F = group_algebra_code(G, G.parse_element("x + x^-1"))
    for table in act.tables:
        assert check_action_compatibility(F, table, act.group, require_free=False).ok


def test_balanced_factors_satisfy_leibniz():
    for B in balanced_examples():
        for F in B.tensor.factors:
            assert check_integrated_leibniz(F, B.top_degree).ok
