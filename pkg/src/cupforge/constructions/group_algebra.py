"""Group-algebra codes and their balanced products.

For an Abelian group ``G`` and ``c`` in the group algebra ``F2[G]``, the
classical code has one check and one bit per group element, with
``δ(g) = c·g``.  A splitting ``c = c_in + c_out + c_free`` gives the
pre-orientation ``in(g) = c_in·g`` and so on.  It satisfies the integrated
Leibniz rule for two factors when ``c_in`` is a single element,
``c_out = c_in⁻¹`` and ``c_free`` is closed under inversion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import HypothesisError
from ..orientation import CupStructure
from ..products import AbelianGroup, BalancedComplex, GroupAction, TensorComplex

__all__ = [
    "Splitting",
    "group_algebra_code",
    "validate_splitting",
    "search_splittings",
    "multiplication_action",
    "group_algebra_balanced",
    "bivariate_bicycle",
    "ga_cup_lambda2",
    "ga_cup_lambda3",
    "bb_example",
]


@dataclass(frozen=True)
class Splitting:
    in_part: frozenset
    out_part: frozenset
    free_part: frozenset

    @classmethod
    def parse(cls, G: AbelianGroup, data: dict) -> "Splitting":
        return cls(G.parse_element(data.get("in", "")), G.parse_element(data.get("out", "")),
                   G.parse_element(data.get("free", "")))

    def format(self, G: AbelianGroup) -> dict:
        return {"in": G.format_element(self.in_part), "out": G.format_element(self.out_part),
                "free": G.format_element(self.free_part)}

    @property
    def support(self) -> frozenset:
        return self.in_part | self.out_part | self.free_part


def _inverse_set(G: AbelianGroup, s: Iterable) -> frozenset:
    return frozenset(G.inv(g) for g in s)


def _translate(G: AbelianGroup, s: Iterable, g) -> list:
    return [G.mul(h, g) for h in s]


def splitting_failures(G: AbelianGroup, c: frozenset, s: Splitting) -> list[str]:
    """Names of the hypotheses that fail (empty list: all hold)."""
    items = []
    parts = (s.in_part, s.out_part, s.free_part)
    if any(a & b for a, b in itertools.combinations(parts, 2)) or s.support != c:
        items.append("partition: in, out, free must split the support of c")
    if len(s.in_part) != 1:
        items.append("single in-element: |c_in| = 1")
    if s.out_part != _inverse_set(G, s.in_part):
        items.append("inverse pair: c_out = c_in^-1")
    if s.free_part != _inverse_set(G, s.free_part):
        items.append("symmetric free part: c_free = c_free^-1")
    # right multiplication by g != e moves every element
    ident = G.identity
    if any(G.mul(h, g) == h for g in G.elements if g != ident for h in G.elements[:1]):
        items.append("free action on the basis")
    return items


def group_algebra_code(G: AbelianGroup, c: Iterable, s: Splitting | None = None) -> CupStructure:
    """Code with checks and bits indexed by ``G``; ``δ(g) = c·g``.

    Without a splitting every bit of every check is free.
    """
    c = frozenset(c)
    if s is None:
        s = Splitting(frozenset(), frozenset(), c)
    elif s.support != c or len(s.in_part) + len(s.out_part) + len(s.free_part) != len(c):
        raise HypothesisError("splitting does not partition c", items=["partition"])
    checks = {}
    for g in G.elements:
        checks[g] = {
            "in": _translate(G, s.in_part, g),
            "out": _translate(G, s.out_part, g),
            "free": _translate(G, s.free_part, g),
        }
    return CupStructure.from_checks(G.elements, checks)


def validate_splitting(G: AbelianGroup, c: Iterable, s: Splitting) -> CupStructure:
    """Cup structure for a splitting meeting all hypotheses; raise otherwise."""
    c = frozenset(c)
    items = splitting_failures(G, c, s)
    if items:
        raise HypothesisError("splitting hypotheses fail: " + "; ".join(items), items=items)
    return group_algebra_code(G, c, s)


def search_splittings(G: AbelianGroup, c: Iterable) -> list[Splitting]:
    """All splittings of ``c`` meeting the hypotheses, ordered by in-element."""
    c = frozenset(c)
    out = []
    for t in sorted(c):
        ti = G.inv(t)
        if ti == t or ti not in c:
            continue
        s = Splitting(frozenset([t]), frozenset([ti]), c - {t, ti})
        if not splitting_failures(G, c, s):
            out.append(s)
    return out


def multiplication_action(G: AbelianGroup, lam: int) -> GroupAction:
    """Action of ``G^(lam-1)`` on ``lam`` group-algebra factors.

    ``(g_1, …, g_{lam-1})`` multiplies factor ``m`` by ``g_m`` (if there is
    a left neighbour) and by ``g_{m+1}⁻¹`` (if there is a right
    neighbour).  For two factors this is ``(x, y) ↦ (x·g⁻¹, g·y)``.
    """
    if lam < 2:
        raise ValueError("a balanced product needs at least two factors")
    r = len(G.orders)
    A = AbelianGroup(G.orders * (lam - 1), _names(G, lam - 1))
    tables = []
    for m in range(lam):
        perms = []
        for a in A.elements:
            shift = G.identity
            if m >= 1:
                shift = G.mul(shift, a[(m - 1) * r: m * r])
            if m <= lam - 2:
                shift = G.mul(shift, G.inv(a[m * r: (m + 1) * r]))
            perms.append(tuple(G.index(G.mul(h, shift)) for h in G.elements))
        tables.append({0: perms, 1: perms})
    return GroupAction(A, tables)


def _names(G: AbelianGroup, copies: int):
    if copies == 1:
        return G.names
    return None


def group_algebra_balanced(G: AbelianGroup, cs: Sequence[Iterable], splittings: Sequence[Splitting]) -> BalancedComplex:
    """Balanced product of ``len(cs)`` group-algebra codes over ``G``."""
    if len(cs) != len(splittings):
        raise ValueError("one splitting per factor")
    factors = [validate_splitting(G, c, s) for c, s in zip(cs, splittings)]
    return BalancedComplex(TensorComplex(factors), multiplication_action(G, len(factors)))


def bivariate_bicycle(G: AbelianGroup, c1: Iterable, c2: Iterable, s1: Splitting, s2: Splitting) -> BalancedComplex:
    """Two-factor balanced product of group-algebra codes (a two-block code)."""
    return group_algebra_balanced(G, [c1, c2], [s1, s2])


def ga_cup_lambda2(G: AbelianGroup, s1: Splitting, s2: Splitting, q, p) -> frozenset:
    """Closed form of ``q_v ∪ p_h`` in ``F2[G]``.

    ``q_v`` is the class with a check in the first factor and bit ``q`` in
    the second; ``p_h`` has bit ``p`` in the first factor.  Degree-2
    classes are identified with ``G`` by multiplying the components.
    The result is ``Σ p·h·q`` over ``h ∈ p⁻¹·c1_out ∩ q⁻¹·c2_in``.
    """
    hs = set(_translate(G, s1.out_part, G.inv(p))) & set(_translate(G, s2.in_part, G.inv(q)))
    out: set = set()
    for h in hs:
        out ^= {G.mul(G.mul(p, h), q)}
    return frozenset(out)


def ga_cup_lambda3(G: AbelianGroup, sv: Splitting, sh: Splitting, sd: Splitting, p, q, r) -> frozenset:
    """Closed form of ``p_v ∪ q_h ∪ r_d`` for three group-algebra factors.

    Sum of ``p·g·q·h·r`` over ``g ∈ p⁻¹·cv_in ∩ q⁻¹·ch_out`` and
    ``h ∈ q⁻¹·ch_in ∩ r⁻¹·cd_out``.
    """
    gs = set(_translate(G, sv.in_part, G.inv(p))) & set(_translate(G, sh.out_part, G.inv(q)))
    hs = set(_translate(G, sh.in_part, G.inv(q))) & set(_translate(G, sd.out_part, G.inv(r)))
    out: set = set()
    for g in gs:
        for h in hs:
            out ^= {G.mul(G.mul(G.mul(p, g), G.mul(q, h)), r)}
    return frozenset(out)


def bb_example() -> tuple[AbelianGroup, frozenset, frozenset, Splitting, Splitting]:
    """The 144-qubit two-block example over ``Z6 × Z12``.

    ``c1 = x³y² + x⁻³y⁻² + x²y + x⁻²y⁻¹`` split as in ``x³y²``, out
    ``x⁻³y⁻²``; ``c2 = x + x⁻¹ + xy + x⁻¹y⁻¹`` split as in ``x``, out ``x⁻¹``.
    """
    G = AbelianGroup((6, 12))
    c1 = G.parse_element("x^3y^2 + x^-3y^-2 + x^2y + x^-2y^-1")
    c2 = G.parse_element("x + x^-1 + xy + x^-1y^-1")
    s1 = Splitting.parse(G, {"in": "x^3y^2", "out": "x^-3y^-2", "free": "x^2y + x^-2y^-1"})
    s2 = Splitting.parse(G, {"in": "x", "out": "x^-1", "free": "xy + x^-1y^-1"})
    return G, c1, c2, s1, s2
