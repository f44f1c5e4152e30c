"""Expander-style codes from a regular graph and a local code.

Each vertex ``v`` carries a copy of a local code ``L`` whose bits are
identified with the edges at ``v`` by a bijection ``φ_v``.  Checks are pairs
``(v, c)``, bits are edges, and ``δ(v, c) = φ_v(δ_L(c))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from ..complexes import BasedComplex, Cochain, Report
from ..errors import HypothesisError
from ..f2linalg import BitVector, Echelon
from ..orientation import (
    CupStructure,
    PreOrientation,
    check_integrated_leibniz,
    integral,
    lambda_cup,
)
from ..products import AbelianGroup

__all__ = [
    "Graph",
    "LocalSystem",
    "cayley_graph",
    "cayley_local_system",
    "sipser_spielman_complex",
    "ss_preorientation_lambda2",
    "ss_preorientation_lambda3",
    "ss_nontriviality",
]


@dataclass(frozen=True)
class Graph:
    """Directed multigraph; ``edges`` maps an edge label to ``(tail, head)``."""

    vertices: tuple
    edges: Mapping[Hashable, tuple]

    def incident(self, v) -> set:
        return {e for e, (t, h) in self.edges.items() if v in (t, h)}

    def incoming(self, v) -> set:
        return {e for e, (t, h) in self.edges.items() if h == v}

    def outgoing(self, v) -> set:
        return {e for e, (t, h) in self.edges.items() if t == v}


@dataclass(frozen=True)
class LocalSystem:
    """Local code (check -> local bits) plus per-vertex bijections local bit -> edge."""

    local_bits: tuple
    local_checks: Mapping[Hashable, frozenset]
    phi: Mapping[Hashable, Mapping[Hashable, Hashable]]


def cayley_graph(G: AbelianGroup, T: Iterable) -> Graph:
    """Edges ``(g, t)`` from ``g`` to ``g·t`` for ``t ∈ T``; needs ``T ∩ T⁻¹ = ∅``."""
    T = [G.reduce(t) for t in T]
    ident = G.identity
    for t in T:
        if t == ident or G.inv(t) in T:
            raise HypothesisError("T must avoid the identity and its own inverses", items=["T ∩ T^-1 = ∅"])
    edges = {(g, t): (g, G.mul(g, t)) for g in G.elements for t in T}
    return Graph(tuple(G.elements), edges)


def cayley_local_system(G: AbelianGroup, T: Iterable, local_checks: Mapping[Hashable, Iterable]) -> LocalSystem:
    """Local bits are the generators ``S = T ∪ T⁻¹``.

    At vertex ``v``, ``t ∈ T`` names the outgoing edge ``(v, t)`` and
    ``t⁻¹`` names the incoming edge ``(v·t⁻¹, t)``.
    """
    T = [G.reduce(t) for t in T]
    S = sorted(T + [G.inv(t) for t in T])
    phi = {}
    for v in G.elements:
        m = {}
        for t in T:
            m[t] = (v, t)
            m[G.inv(t)] = (G.mul(v, G.inv(t)), t)
        phi[v] = m
    checks = {c: frozenset(G.reduce(s) for s in bits) for c, bits in local_checks.items()}
    for c, bits in checks.items():
        if not bits <= set(S):
            raise HypothesisError(f"local check {c!r} uses a non-generator", items=["local bits ⊆ S"])
    return LocalSystem(tuple(S), checks, phi)


def _check_phi(X: Graph, L: LocalSystem) -> None:
    for v in X.vertices:
        m = L.phi.get(v)
        if m is None or set(m) != set(L.local_bits):
            raise HypothesisError(f"φ at vertex {v!r} is not defined on all local bits", items=["φ bijective"])
        if len(set(m.values())) != len(m) or set(m.values()) != X.incident(v):
            raise HypothesisError(f"φ at vertex {v!r} is not a bijection onto the incident edges",
                                  items=["φ bijective"])


def sipser_spielman_complex(X: Graph, L: LocalSystem) -> BasedComplex:
    _check_phi(X, L)
    delta = {}
    for v in X.vertices:
        for c, bits in L.local_checks.items():
            delta[(v, c)] = [L.phi[v][b] for b in bits]
    return BasedComplex.from_maps({0: list(delta), 1: list(X.edges)}, {0: delta})


def _local_structure(L: LocalSystem, in_bits: set, out_bits: set) -> CupStructure:
    checks = {}
    for c, bits in L.local_checks.items():
        checks[c] = {"in": bits & in_bits, "out": bits & out_bits, "free": bits - in_bits - out_bits}
    return CupStructure.from_checks(L.local_bits, checks)


def ss_preorientation_lambda2(X: Graph, L: LocalSystem, L1_in: Iterable, L1_out: Iterable) -> CupStructure:
    """Orientation inherited from the graph.

    Hypotheses: ``L1_in``, ``L1_out`` partition the local bits; every
    ``φ_v`` sends ``L1_in`` to edges entering ``v`` and ``L1_out`` to edges
    leaving ``v``; the local code with that split satisfies the two-factor
    integrated Leibniz rule.
    """
    L1_in, L1_out = set(L1_in), set(L1_out)
    items = []
    if L1_in & L1_out or (L1_in | L1_out) != set(L.local_bits):
        items.append("L1_in and L1_out partition the local bits")
    _check_phi(X, L)
    for v in X.vertices:
        if any(L.phi[v][b] not in X.incoming(v) for b in L1_in & set(L.local_bits)):
            items.append(f"φ_{v!r}(L1_in) are incoming edges")
            break
    for v in X.vertices:
        if any(L.phi[v][b] not in X.outgoing(v) for b in L1_out & set(L.local_bits)):
            items.append(f"φ_{v!r}(L1_out) are outgoing edges")
            break
    if not items:
        local = _local_structure(L, L1_in, L1_out)
        rep = check_integrated_leibniz(local, 2)
        if not rep.ok:
            items.append(f"local code fails the two-factor rule at {rep.witness['tuple']}")
    if items:
        raise HypothesisError("hypotheses fail: " + "; ".join(items), items=items)
    C = sipser_spielman_complex(X, L)
    parts = {}
    for v in X.vertices:
        for c, bits in L.local_checks.items():
            phi = L.phi[v]
            parts[(v, c)] = (frozenset(phi[b] for b in bits & L1_in), frozenset(phi[b] for b in bits & L1_out),
                             frozenset())
    return CupStructure(C, PreOrientation(parts))


def ss_preorientation_lambda3(X: Graph, L: LocalSystem, c_hat, in_bit, out_bit) -> CupStructure:
    """Orientation carried by one local check ``ĉ`` and two of its bits.

    ``in(v, ĉ) = φ_v(in_bit)``, ``out(v, ĉ) = φ_v(out_bit)``, all other bits
    of every check are free.  Hypotheses: both bits lie in ``δ_L(ĉ)``,
    other local checks avoid them, each edge is the image of ``in_bit`` at
    exactly one vertex and of ``out_bit`` at exactly one vertex.
    """
    items = []
    if c_hat not in L.local_checks:
        raise HypothesisError(f"unknown local check {c_hat!r}", items=["ĉ is a local check"])
    hat = L.local_checks[c_hat]
    if in_bit == out_bit or not {in_bit, out_bit} <= hat:
        items.append("in/out bits are two distinct bits of ĉ")
    for c, bits in L.local_checks.items():
        if c != c_hat and bits & {in_bit, out_bit}:
            items.append(f"local check {c!r} avoids the in/out bits")
    _check_phi(X, L)
    ins = [L.phi[v][in_bit] for v in X.vertices]
    outs = [L.phi[v][out_bit] for v in X.vertices]
    if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
        items.append("in-edges and out-edges are each used once")
    if items:
        raise HypothesisError("hypotheses fail: " + "; ".join(items), items=items)
    C = sipser_spielman_complex(X, L)
    parts = {}
    for v in X.vertices:
        phi = L.phi[v]
        for c, bits in L.local_checks.items():
            edges = frozenset(phi[b] for b in bits)
            if c == c_hat:
                i, o = frozenset([phi[in_bit]]), frozenset([phi[out_bit]])
                parts[(v, c)] = (i, o, edges - i - o)
            else:
                parts[(v, c)] = (frozenset(), frozenset(), edges)
    return CupStructure(C, PreOrientation(parts))


def ss_nontriviality(S: CupStructure, X: Graph, L: LocalSystem, c_hat, in_bit, out_bit,
                     lams: Sequence[int] = (2, 3)) -> dict[str, Report]:
    """Check the witness for a nonvanishing multi-fold integrated cup.

    With ``ĉ_sum = Σ_v (v, ĉ)``, ``e_v = φ_v(in_bit)``, ``e'_v = φ_v(out_bit)``:

    * ``cup_rules``: ``e_v ∪ ĉ_sum = e_v``, ``ĉ_sum ∪ e'_v = e'_v``,
      ``ĉ_sum ∪ ĉ_sum = ĉ_sum``, and every other nonzero product of basis
      elements is a check times itself;
    * ``closed``: ``δ(ĉ_sum) = 0``;
    * ``nontrivial``: no ``e_v`` or ``e'_v`` is a coboundary;
    * ``integral``: for each ``lam``, ``∫ ĉ_sum ∪ … ∪ e_v ∪ … ∪ ĉ_sum = 1``
      with ``e_v`` in any position.
    """
    C = S.complex
    hat_checks = [(v, c_hat) for v in X.vertices]
    csum = C.cochain(0, hat_checks)
    e = {v: C.cochain(1, [L.phi[v][in_bit]]) for v in X.vertices}
    ep = {v: C.cochain(1, [L.phi[v][out_bit]]) for v in X.vertices}
    out: dict[str, Report] = {}

    bad = None
    if lambda_cup(S, [csum, csum]) != csum:
        bad = "ĉ_sum ∪ ĉ_sum"
    for v in X.vertices:
        if bad:
            break
        if lambda_cup(S, [e[v], csum]) != e[v]:
            bad = f"e_{v!r} ∪ ĉ_sum"
        elif lambda_cup(S, [csum, ep[v]]) != ep[v]:
            bad = f"ĉ_sum ∪ e'_{v!r}"
    if not bad:
        hat_idx = {C.index(0, a) for a in hat_checks}
        special = {C.index(1, L.phi[v][b]) for v in X.vertices for b in (in_bit, out_bit)}
        for a in range(C.dim(0)):
            for x in S.right_partners(0, a, 1):
                if not (a in hat_idx and x in special):
                    bad = f"extra product {C.labels[0][a]!r} ∪ {C.labels[1][x]!r}"
            for x in range(C.dim(1)):
                if (S.in_bits[a] >> x) & 1 and not (a in hat_idx and x in special):
                    bad = f"extra product {C.labels[1][x]!r} ∪ {C.labels[0][a]!r}"
    out["cup_rules"] = Report(bad is None, bad or "")

    out["closed"] = Report(not C.apply_delta(csum).vector, "" if not C.apply_delta(csum).vector else "δ(ĉ_sum) ≠ 0")

    cobound = Echelon(C.delta(0).T.rows)
    trivial = [v for v in X.vertices if cobound.reduce(e[v].vector.bits) == 0 or cobound.reduce(ep[v].vector.bits) == 0]
    out["nontrivial"] = Report(not trivial, "" if not trivial else f"e_{trivial[0]!r} is a coboundary")

    failures = []
    for lam in lams:
        for pos in range(lam):
            for v in X.vertices:
                args = [csum] * lam
                args[pos] = e[v]
                if integral(S, lambda_cup(S, args), strict=False) != 1:
                    failures.append({"lam": lam, "position": pos, "vertex": v})
    out["integral"] = Report(not failures, "" if not failures else "integral vanishes",
                             {"failures": failures[:5]} if failures else {})
    return out
