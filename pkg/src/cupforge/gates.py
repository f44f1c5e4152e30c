"""Multi-controlled-Z circuits from the integrated cup product.

For a cup structure ``S`` of top degree ``lam`` (a tensor or balanced
product of ``lam`` classical codes), ``Ψ(c_1, …, c_lam) = ∫ c_1 ∪ … ∪ c_lam``
is a multilinear form on degree-1 cochains, one argument per code copy.
Its monomials, one qubit from each copy, become ``C^{lam-1}Z`` gates.
When the cup structure satisfies the integrated Leibniz rule the circuit is
a logical gate, and its action on logical qubits is ``Ψ`` evaluated on
cohomology representatives.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Sequence

from .complexes import Cochain, Report, cohomology_basis, render_label
from .f2linalg import BitVector, Echelon, bits_of, kernel_basis, popcount
from .orientation import integral, lambda_cup

__all__ = [
    "PhasePolynomial",
    "Circuit",
    "LogicalAction",
    "psi_polynomial",
    "psi_eval",
    "synth_circuit",
    "schedule",
    "circuit_depth_certificate",
    "cohomology_reps",
    "verify_invariance",
    "logical_action",
    "form_matrix",
    "adapted_bases",
    "hierarchy_level",
    "address_gate",
    "circuit_to_text",
    "circuit_to_json",
]


@dataclass(frozen=True)
class PhasePolynomial:
    """``Σ_monomials Π_i c_i[q_i]`` with ``q_i`` a qubit of copy ``copies[i]``."""

    copies: tuple[int, ...]
    n: int
    monomials: frozenset

    @property
    def lam(self) -> int:
        return len(self.copies)

    def evaluate(self, cochains: Sequence[BitVector]) -> int:
        if len(cochains) != self.lam:
            raise ValueError(f"expected {self.lam} cochains")
        bits = [c.bits for c in cochains]
        acc = 0
        for mono in self.monomials:
            if all((b >> q) & 1 for b, q in zip(bits, mono)):
                acc ^= 1
        return acc

    def sorted_monomials(self) -> list[tuple[int, ...]]:
        return sorted(self.monomials)


@dataclass(frozen=True)
class Circuit:
    """Diagonal circuit; each gate is a tuple of ``(copy, qubit)`` it acts on."""

    n: int
    copies: tuple[int, ...]
    gates: tuple

    @property
    def lam(self) -> int:
        return len(self.copies)

    def phase(self, states: Sequence[BitVector]) -> int:
        """Exponent ``e`` of the phase ``(-1)^e`` on a basis state, one bit string per copy."""
        by_copy = {c: s.bits for c, s in zip(self.copies, states)}
        acc = 0
        for g in self.gates:
            if all((by_copy[c] >> q) & 1 for c, q in g):
                acc ^= 1
        return acc


@dataclass(frozen=True)
class LogicalAction:
    """Tuples of per-copy cohomology-basis indices whose multi-controlled Z is applied."""

    copies: tuple[int, ...]
    k: tuple[int, ...]
    terms: frozenset

    def to_json(self) -> dict:
        return {"copies": list(self.copies), "k": list(self.k), "terms": [list(t) for t in sorted(self.terms)]}


def psi_polynomial(S) -> PhasePolynomial:
    """Monomials of ``Ψ`` on degree-1 basis tuples, by depth-first search.

    A tuple is extended only by basis elements that can multiply a
    nonzero partial product; the integral of the final top-degree
    product is its weight mod 2.
    """
    lam = S.top_degree
    n = S.complex.dim(1)
    monos = set()

    def extend(prefix: tuple, deg: int, state: frozenset) -> None:
        if len(prefix) == lam:
            if len(state) & 1:
                monos.add(prefix)
            return
        cands = set()
        for u in state:
            cands.update(S.right_partners(deg, u, 1))
        for v in sorted(cands):
            new: set = set()
            for u in state:
                for t in S.cup_basis(deg, u, 1, v):
                    new ^= {t}
            if new:
                extend(prefix + (v,), deg + 1, frozenset(new))

    for q in range(n):
        extend((q,), 1, frozenset([q]))
    return PhasePolynomial(tuple(range(lam)), n, frozenset(monos))


def psi_eval(S, args: Sequence[BitVector]) -> int:
    """``∫ c_1 ∪ … ∪ c_lam`` computed with cochain cup products."""
    if len(args) != S.top_degree:
        raise ValueError(f"need {S.top_degree} arguments")
    chains = [Cochain(1, a) for a in args]
    return integral(S, lambda_cup(S, chains), strict=False)


def _gate_name(size: int) -> str:
    return {1: "Z", 2: "CZ", 3: "CCZ"}.get(size, f"C{size - 1}Z")


def synth_circuit(P: PhasePolynomial) -> Circuit:
    """One multi-controlled Z per monomial, in lexicographic order."""
    gates = tuple(tuple(zip(P.copies, mono)) for mono in P.sorted_monomials())
    return Circuit(P.n, P.copies, gates)


def schedule(C: Circuit) -> list[list[int]]:
    """First-fit layering: each gate goes to the first layer not touching its qubits."""
    layers: list[list[int]] = []
    busy: list[set] = []
    for gi, g in enumerate(C.gates):
        for layer, used in zip(layers, busy):
            if used.isdisjoint(g):
                layer.append(gi)
                used.update(g)
                break
        else:
            layers.append([gi])
            busy.append(set(g))
    return layers


def circuit_depth_certificate(C: Circuit) -> dict:
    """Depth of the first-fit schedule and the degree bound it cannot exceed.

    A gate shares a qubit with at most ``lam·(Δ-1)`` others, where ``Δ`` is
    the largest number of gates on one qubit, so first-fit uses at most
    ``lam·(Δ-1) + 1`` layers.
    """
    counts: dict = {}
    for g in C.gates:
        for q in g:
            counts[q] = counts.get(q, 0) + 1
    delta = max(counts.values(), default=0)
    bound = C.lam * (delta - 1) + 1 if delta else 0
    depth = len(schedule(C))
    return {"depth": depth, "bound": bound, "max_gates_per_qubit": delta, "gates": len(C.gates)}


def cohomology_reps(S) -> list[BitVector]:
    if hasattr(S, "cohomology_reps"):
        return S.cohomology_reps()
    return cohomology_basis(S.complex, 1)


def _index_sets(reps: Sequence[BitVector], n: int) -> list[list[int]]:
    """For each qubit, the basis indices whose representative contains it."""
    out: list[list[int]] = [[] for _ in range(n)]
    for i, r in enumerate(reps):
        for q in bits_of(r.bits):
            out[q].append(i)
    return out


def _contract(P: PhasePolynomial, slot: int, sets: Sequence[list[list[int]]]) -> dict:
    """Map each tuple of basis indices (all slots but ``slot``) to the linear form left on ``slot``."""
    W: dict = {}
    for mono in P.monomials:
        choices = [sets[i][q] for i, q in enumerate(mono) if i != slot]
        bit = 1 << mono[slot]
        for combo in itertools.product(*choices):
            W[combo] = W.get(combo, 0) ^ bit
    return W


def verify_invariance(S, P: PhasePolynomial | None = None, samples: int = 20, seed: int = 0) -> Report:
    """Is ``Ψ`` unchanged when one argument moves by a coboundary?

    Every slot is tested against every tuple of cohomology
    representatives in the other slots and every degree-0 generator,
    then against ``samples`` random tuples of general cocycles.
    """
    if P is None:
        P = psi_polynomial(S)
    C = S.complex
    n = C.dim(1)
    gens = [C.coboundary_bits(0, a) for a in range(C.dim(0))]
    reps = cohomology_reps(S)
    sets = [_index_sets(reps, n)] * P.lam

    def first_bad(w: int):
        for a, g in enumerate(gens):
            if popcount(g & w) & 1:
                return a
        return None

    for slot in range(P.lam):
        W = _contract(P, slot, sets)
        for combo in sorted(W):
            a = first_bad(W[combo])
            if a is not None:
                return Report(False, "not invariant under coboundaries",
                              {"slot": slot, "representatives": list(combo), "generator": C.labels[0][a]})
    if samples and P.lam > 1 and C.max_degree >= 1:
        rng = random.Random(seed)
        Z = [v.bits for v in kernel_basis(C.delta(1))] if C.max_degree >= 2 else [1 << q for q in range(n)]
        for _ in range(samples):
            zs = []
            for _ in range(P.lam):
                z = 0
                for b in Z:
                    if rng.getrandbits(1):
                        z ^= b
                zs.append(z)
            for slot in range(P.lam):
                w = 0
                for mono in P.monomials:
                    if all((zs[i] >> q) & 1 for i, q in enumerate(mono) if i != slot):
                        w ^= 1 << mono[slot]
                a = first_bad(w)
                if a is not None:
                    return Report(False, "not invariant under coboundaries",
                                  {"slot": slot, "sampled_cocycles": True, "generator": C.labels[0][a]})
    return Report(True)


def logical_action(S, P: PhasePolynomial | None = None, bases: Sequence[Sequence[BitVector]] | None = None) -> LogicalAction:
    """Index tuples ``(i_1, …, i_lam)`` with ``Ψ(γ_{i_1}, …, γ_{i_lam}) = 1``.

    ``bases`` gives representatives per variable; by default every copy
    uses :func:`cohomology_reps`.
    """
    if P is None:
        P = psi_polynomial(S)
    n = S.complex.dim(1)
    if bases is None:
        reps = cohomology_reps(S)
        bases = [reps] * P.lam
    sets = [_index_sets(b, n) for b in bases]
    T: dict = {}
    for mono in P.monomials:
        for combo in itertools.product(*(sets[i][q] for i, q in enumerate(mono))):
            T[combo] = T.get(combo, 0) ^ 1
    terms = frozenset(t for t, v in T.items() if v)
    return LogicalAction(P.copies, tuple(len(b) for b in bases), terms)


def form_matrix(S, P: PhasePolynomial | None = None, bases=None) -> list[int]:
    """Two-copy form as rows (bit ``j`` of row ``i`` is ``Ψ(γ_i, γ_j)``)."""
    act = logical_action(S, P, bases)
    if len(act.copies) != 2:
        raise ValueError("form_matrix needs a two-copy polynomial")
    rows = [0] * act.k[0]
    for i, j in act.terms:
        rows[i] |= 1 << j
    return rows


def adapted_bases(S, P: PhasePolynomial | None = None) -> tuple[list[BitVector], list[BitVector], int]:
    """Bases of the two copies in which the two-copy form is ``diag(1,…,1,0,…,0)``.

    Returns the two bases and the rank of the form, which is the least
    number of logical CZ gates needed to express the action.
    """
    reps = cohomology_reps(S)
    k = len(reps)
    B = form_matrix(S, P, [reps, reps])
    # track row operations in P_rows and column operations in Q_cols
    P_rows = [1 << i for i in range(k)]
    Q_cols = [1 << j for j in range(k)]
    M = [[(B[i] >> j) & 1 for j in range(k)] for i in range(k)]
    r = 0
    while True:
        piv = next(((i, j) for i in range(r, k) for j in range(r, k) if M[i][j]), None)
        if piv is None:
            break
        i, j = piv
        M[r], M[i] = M[i], M[r]
        P_rows[r], P_rows[i] = P_rows[i], P_rows[r]
        for row in M:
            row[r], row[j] = row[j], row[r]
        Q_cols[r], Q_cols[j] = Q_cols[j], Q_cols[r]
        for i in range(k):
            if i != r and M[i][r]:
                M[i] = [a ^ b for a, b in zip(M[i], M[r])]
                P_rows[i] ^= P_rows[r]
        for j in range(k):
            if j != r and M[r][j]:
                for row in M:
                    row[j] ^= row[r]
                Q_cols[j] ^= Q_cols[r]
        r += 1

    def combine(mask: int) -> BitVector:
        acc = BitVector(reps[0].length, 0) if reps else BitVector(0, 0)
        for i in bits_of(mask):
            acc = acc + reps[i]
        return acc

    return [combine(m) for m in P_rows], [combine(m) for m in Q_cols], r


def hierarchy_level(S, P: PhasePolynomial | None = None) -> int:
    """``lam`` when the logical action is nontrivial, else 0."""
    act = logical_action(S, P)
    return len(act.copies) if act.terms else 0


def address_gate(P: PhasePolynomial, slot: int, gamma: BitVector) -> PhasePolynomial:
    """``Ψ(…, c + γ, …) + Ψ(…, c, …)`` with ``γ`` fixed in ``slot``.

    By multilinearity this is ``Ψ(…, γ, …)``: a polynomial in the
    remaining copies.
    """
    if not 0 <= slot < P.lam:
        raise ValueError("slot out of range")
    counts: dict = {}
    for mono in P.monomials:
        if (gamma.bits >> mono[slot]) & 1:
            rest = mono[:slot] + mono[slot + 1:]
            counts[rest] = counts.get(rest, 0) ^ 1
    copies = P.copies[:slot] + P.copies[slot + 1:]
    return PhasePolynomial(copies, P.n, frozenset(m for m, v in counts.items() if v))


def circuit_to_text(C: Circuit, labels: Sequence) -> str:
    """One gate per line: ``CZ <copy>:<qubit> <copy>:<qubit>``."""
    lines = []
    for g in C.gates:
        lines.append(" ".join([_gate_name(len(g))] + [f"{c}:{render_label(labels[q])}" for c, q in g]))
    return "\n".join(lines) + ("\n" if lines else "")


def circuit_to_json(C: Circuit, labels: Sequence) -> str:
    cert = circuit_depth_certificate(C)
    data = {
        "copies": list(C.copies),
        "qubits_per_copy": C.n,
        "qubit_labels": [render_label(x) for x in labels],
        "gates": [{"type": _gate_name(len(g)), "targets": [[c, q] for c, q in g]} for g in C.gates],
        "depth": cert["depth"],
        "depth_bound": cert["bound"],
    }
    return json.dumps(data, indent=1)
