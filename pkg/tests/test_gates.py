import json
import random

import pytest

from cupforge import gates
from cupforge.complexes import cohomology_basis
from cupforge.constructions import (
    anisotropic_lineon,
    cayley_graph,
    cayley_local_system,
    group_algebra_balanced,
    search_splittings,
    ss_preorientation_lambda3,
    torus_code,
)
from cupforge.f2linalg import BitVector, Echelon
from cupforge.orientation import CupStructure
from cupforge.products import AbelianGroup, tensor


def ga_balanced():
    G = AbelianGroup([5])
    c = G.parse_element("x + x^-1 + x^2 + x^-2")
    s = search_splittings(G, c)[0]
    return group_algebra_balanced(G, [c, c], [s, s])


def ss_tensor():
    G = AbelianGroup([5])
    T = [(1,), (2,)]
    X = cayley_graph(G, T)
    L = cayley_local_system(G, T, {"chat": [(1,), (4,), (2,), (3,)]})
    F = ss_preorientation_lambda3(X, L, "chat", (1,), (4,))
    return tensor([F, F, F])


CODES = {
    "torus2": lambda: torus_code(2, 3),
    "torus3": lambda: torus_code(3, 2),
    "lineon": lambda: anisotropic_lineon(2),
    "group_algebra": ga_balanced,
    "sipser_spielman": ss_tensor,
}


@pytest.mark.parametrize("name", sorted(CODES))
def test_polynomial_matches_direct_evaluation(name):
    S = CODES[name]()
    P = gates.psi_polynomial(S)
    n = S.complex.dim(1)
    rng = random.Random(name)
    for _ in range(500):
        args = [BitVector(n, rng.getrandbits(n)) for _ in range(P.lam)]
        assert P.evaluate(args) == gates.psi_eval(S, args)


def test_circuit_phase_exhaustive_on_16_qubits():
    S = torus_code(2, 2)
    P = gates.psi_polynomial(S)
    circ = gates.synth_circuit(P)
    assert circ.n * circ.lam == 16
    for x in range(1 << 16):
        args = [BitVector(8, x & 0xFF), BitVector(8, x >> 8)]
        assert circ.phase(args) == gates.psi_eval(S, args)


def test_schedule_is_a_valid_layering():
    for S in (torus_code(2, 4), torus_code(3, 2), anisotropic_lineon(3)):
        circ = gates.synth_circuit(gates.psi_polynomial(S))
        layers = gates.schedule(circ)
        assert sorted(g for layer in layers for g in layer) == list(range(len(circ.gates)))
        for layer in layers:
            touched = [q for g in layer for q in circ.gates[g]]
            assert len(touched) == len(set(touched))
        cert = gates.circuit_depth_certificate(circ)
        assert cert["depth"] == len(layers) <= cert["bound"]


def test_address_gate_is_multilinear_difference():
    S = torus_code(2, 3)
    P = gates.psi_polynomial(S)
    n = S.complex.dim(1)
    rng = random.Random(7)
    for gamma in gates.cohomology_reps(S):
        for slot in (0, 1):
            A = gates.address_gate(P, slot, gamma)
            assert A.lam == 1
            for _ in range(50):
                c = [BitVector(n, rng.getrandbits(n)) for _ in range(2)]
                shifted = list(c)
                shifted[slot] = c[slot] + gamma
                other = [c[1 - slot]]
                assert P.evaluate(shifted) ^ P.evaluate(c) == A.evaluate(other)


def test_address_gate_on_torus_is_logical_z():
    # Ψ(γ_0, ·) on the 2D torus is a string crossing γ_0 once: a logical Z on one qubit
    S = torus_code(2, 3)
    P = gates.psi_polynomial(S)
    reps = gates.cohomology_reps(S)
    A = gates.address_gate(P, 0, reps[0])
    z = BitVector.from_support(P.n, [m[0] for m in A.monomials])
    values = [z.dot(r) for r in reps]
    assert values == [0, 1]


def test_invariance_detects_broken_orientation():
    # a circle where one vertex has its in-edge marked free
    checks = {v: {"in": [(v - 1) % 3], "out": [v]} for v in range(3)}
    checks[0] = {"free": [2], "out": [0]}
    F = CupStructure.from_checks(range(3), checks)
    S = tensor([F, F])
    rep = gates.verify_invariance(S)
    assert not rep.ok and set(rep.witness) >= {"slot", "generator"}
    assert gates.verify_invariance(torus_code(2, 3)).ok


def test_logical_action_and_level():
    S = torus_code(2, 2)
    act = gates.logical_action(S)
    assert act.terms == frozenset({(0, 1), (1, 0)})
    assert gates.hierarchy_level(S) == 2
    assert gates.form_matrix(S) == [0b10, 0b01]


def test_adapted_bases_diagonalize():
    S = anisotropic_lineon(2)
    P = gates.psi_polynomial(S)
    U, V, r = gates.adapted_bases(S, P)
    act = gates.logical_action(S, P, [U, V])
    assert act.terms == frozenset((i, i) for i in range(r))
    # adapted bases are still bases of cohomology
    C = S.complex
    for basis in (U, V):
        E = Echelon(C.delta(0).T.rows)
        start = len(E)
        for v in basis:
            E.add(v.bits)
        assert len(E) - start == len(cohomology_basis(C, 1))


def test_circuit_serialization():
    S = torus_code(2, 2)
    circ = gates.synth_circuit(gates.psi_polynomial(S))
    labels = S.complex.labels[1]
    text = gates.circuit_to_text(circ, labels)
    lines = text.strip().splitlines()
    assert len(lines) == len(circ.gates) and all(line.startswith("CZ 0:") for line in lines)
    data = json.loads(gates.circuit_to_json(circ, labels))
    assert data["depth"] <= data["depth_bound"]
    assert len(data["gates"]) == len(circ.gates)
