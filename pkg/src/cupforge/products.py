"""Tensor products of classical cup structures and their balanced quotients.

A basis element of the tensor product of factors ``F_1 … F_L`` is a tuple
with one component per factor; each component is ``(degree, index)`` in
that factor.  Its label is the tuple of ``(degree, factor_label)`` pairs.
The coboundary acts on one component at a time (signs vanish mod 2) and
the cup product is taken factor by factor.

A balanced product divides the tensor product by a free action of a finite
Abelian group acting diagonally.  Orbits are named by their least member,
and ``[m] ∪ [n] = Σ_g [m ∪ g·n]``.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from typing import Iterable, Sequence

from .complexes import BasedComplex, Orbit, Report, cohomology_basis, label_key
from .errors import ActionError, SpecError
from .f2linalg import BitMatrix, BitVector, bits_of
from .orientation import CupStructure

__all__ = [
    "AbelianGroup",
    "GroupAction",
    "TensorComplex",
    "BalancedComplex",
    "tensor",
    "balanced_product",
    "check_action_compatibility",
]

GENERATOR_NAMES = "xyzwuvst"


class AbelianGroup:
    """Product of cyclic groups ``Z_{n_1} × … × Z_{n_r}``; elements are exponent tuples."""

    def __init__(self, orders: Sequence[int], names: str | Sequence[str] | None = None):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise ValueError("cyclic orders must be positive")
        self.orders = orders
        if names is None:
            if len(orders) > len(GENERATOR_NAMES):
                raise ValueError("too many generators for default names")
            names = GENERATOR_NAMES[: len(orders)]
        self.names = tuple(names)
        self.elements: tuple[tuple[int, ...], ...] = tuple(itertools.product(*(range(n) for n in orders)))
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup) and self.orders == other.orders

    def __hash__(self) -> int:
        return hash(self.orders)

    def __repr__(self) -> str:
        return "AbelianGroup(" + " x ".join(f"Z{n}" for n in self.orders) + ")"

    def index(self, g) -> int:
        return self._index[tuple(g)]

    def reduce(self, g) -> tuple[int, ...]:
        return tuple(a % n for a, n in zip(g, self.orders))

    def mul(self, g, h) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def inv(self, g) -> tuple[int, ...]:
        return tuple((-a) % n for a, n in zip(g, self.orders))

    def power(self, g, k: int) -> tuple[int, ...]:
        return tuple((a * k) % n for a, n in zip(g, self.orders))

    def generators(self) -> list[tuple[int, ...]]:
        r = len(self.orders)
        return [self.reduce(tuple(1 if i == k else 0 for i in range(r))) for k in range(r)]

    # -- text form: monomials like x^3y^-2, sums joined by '+' -----------

    def format(self, g) -> str:
        parts = []
        for name, a in zip(self.names, self.reduce(g)):
            if a == 0:
                continue
            parts.append(name if a == 1 else f"{name}^{a}")
        return "".join(parts) or "1"

    def parse_monomial(self, text: str) -> tuple[int, ...]:
        text = text.replace(" ", "").replace("*", "")
        if text in ("1", "e", ""):
            return self.identity
        exps = [0] * len(self.orders)
        pos = 0
        pat = re.compile(r"([A-Za-z])(?:\^\(?(-?\d+)\)?)?")
        while pos < len(text):
            m = pat.match(text, pos)
            if not m or m.group(1) not in self.names:
                raise SpecError(f"cannot parse group monomial {text!r}")
            k = self.names.index(m.group(1))
            exps[k] += int(m.group(2)) if m.group(2) is not None else 1
            pos = m.end()
        return self.reduce(exps)

    def parse_element(self, text: str) -> frozenset:
        """Group-algebra element: set of monomials, repeated terms cancel."""
        out: set = set()
        text = text.strip()
        if text in ("", "0"):
            return frozenset()
        for term in text.split("+"):
            out ^= {self.parse_monomial(term)}
        return frozenset(out)

    def format_element(self, elem: Iterable) -> str:
        terms = sorted(elem)
        return " + ".join(self.format(g) for g in terms) if terms else "0"


class GroupAction:
    """Action of an Abelian group on each tensor factor's basis, degree by degree.

    ``tables[m][d][g]`` is a tuple ``perm`` with ``g`` sending index ``i``
    of factor ``m``, degree ``d`` to ``perm[i]``; ``g`` is the element's
    position in ``group.elements``.
    """

    def __init__(self, group: AbelianGroup, tables: Sequence[dict[int, Sequence[Sequence[int]]]]):
        self.group = group
        self.tables = [{d: [tuple(p) for p in perms] for d, perms in t.items()} for t in tables]
        for t in self.tables:
            for d, perms in t.items():
                if len(perms) != len(group):
                    raise ActionError("one permutation per group element required", code="bad_table")
                for p in perms:
                    if sorted(p) != list(range(len(p))):
                        raise ActionError("action table entry is not a permutation", code="bad_table")
        self._check_homomorphism()

    @classmethod
    def from_generators(cls, group: AbelianGroup, gens: Sequence[dict[int, Sequence[Sequence[int]]]]) -> "GroupAction":
        """Extend generator permutations (one per cyclic factor) to all elements."""
        tables = []
        for per_factor in gens:
            t = {}
            for d, perms in per_factor.items():
                if len(perms) != len(group.orders):
                    raise ActionError("one permutation per generator required", code="bad_table")
                size = len(perms[0]) if perms else 0
                table = []
                for g in group.elements:
                    cur = list(range(size))
                    for k, e in enumerate(g):
                        for _ in range(e):
                            cur = [perms[k][c] for c in cur]
                    table.append(tuple(cur))
                t[d] = table
            tables.append(t)
        return cls(group, tables)

    def _check_homomorphism(self) -> None:
        G = self.group
        gens = G.generators()
        for m, t in enumerate(self.tables):
            for d, perms in t.items():
                ident = perms[G.index(G.identity)]
                if ident != tuple(range(len(ident))):
                    raise ActionError(f"identity acts nontrivially on factor {m}", code="not_action")
                for g in G.elements:
                    for s in gens:
                        gs = perms[G.index(G.mul(g, s))]
                        pg, ps = perms[G.index(g)], perms[G.index(s)]
                        if any(gs[i] != ps[pg[i]] for i in range(len(pg))):
                            raise ActionError(f"tables on factor {m} do not define an action", code="not_action")

    def act(self, g_index: int, elem: tuple) -> tuple:
        return tuple((d, self.tables[m][d][g_index][i]) for m, (d, i) in enumerate(elem))

    def to_json(self) -> dict:
        G = self.group
        gens = [G.index(s) for s in G.generators()]
        return {
            "orders": list(G.orders),
            "names": "".join(G.names),
            "factors": [{str(d): [list(perms[k]) for k in gens] for d, perms in t.items()} for t in self.tables],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GroupAction":
        G = AbelianGroup(data["orders"], data.get("names"))
        gens = [{int(d): perms for d, perms in t.items()} for t in data["factors"]]
        return cls.from_generators(G, gens)


def check_action_compatibility(factor: CupStructure, table: dict[int, Sequence[Sequence[int]]],
                               group: AbelianGroup | None = None, require_free: bool = True) -> Report:
    """Does the action commute with the coboundary and keep each in/out/free split?

    Permutations of bits always preserve the integral (weight mod 2).
    ``free`` in the witness records whether no non-identity element fixes a
    basis element of this factor; it is required only with ``require_free``.
    """
    nchecks, nbits = factor.num_checks, factor.num_bits
    p0 = table.get(0, [tuple(range(nchecks))])
    p1 = table.get(1, [tuple(range(nbits))] * len(p0))
    if len(p0) != len(p1):
        raise ActionError("tables for the two degrees differ in size", code="bad_table")

    def image(perm, bits):
        out = 0
        for x in bits_of(bits):
            out |= 1 << perm[x]
        return out

    labels0 = factor.complex.labels[0]
    for g, (q0, q1) in enumerate(zip(p0, p1)):
        for a in range(nchecks):
            b = q0[a]
            if image(q1, factor.support[a]) != factor.support[b]:
                return Report(False, "not_a_chain_map", {"element": g, "check": labels0[a]})
            for name, part in (("in", factor.in_bits), ("out", factor.out_bits), ("free", factor.free_bits)):
                if image(q1, part[a]) != part[b]:
                    return Report(False, "orientation_not_preserved",
                                  {"element": g, "check": labels0[a], "part": name})
    ident = None if group is None else group.index(group.identity)
    free = True
    for g, (q0, q1) in enumerate(zip(p0, p1)):
        if g == ident or (ident is None and q0 == tuple(range(nchecks)) and q1 == tuple(range(nbits))):
            continue
        if any(q0[i] == i for i in range(nchecks)) or any(q1[i] == i for i in range(nbits)):
            free = False
            break
    if require_free and not free:
        return Report(False, "non_free", {"free": False})
    return Report(True, witness={"free": free})


class TensorComplex:
    """Tensor product of two-term cup structures; top degree = number of factors."""

    def __init__(self, factors: Sequence[CupStructure]):
        if not factors:
            raise ValueError("need at least one factor")
        self.factors = list(factors)
        self.top_degree = len(self.factors)
        self._elems: dict[int, list[tuple]] = {}
        self._eindex: dict[int, dict[tuple, int]] = {}
        self._complex: BasedComplex | None = None

    @property
    def lam(self) -> int:
        return self.top_degree

    def elements(self, p: int) -> list[tuple]:
        """Degree-``p`` basis as component tuples, in canonical order."""
        if p not in self._elems:
            comps = []
            for F in self.factors:
                comps.append([(0, i) for i in range(F.num_checks)] + [(1, x) for x in range(F.num_bits)])
            out = [e for e in itertools.product(*comps) if sum(d for d, _ in e) == p]
            out.sort()
            self._elems[p] = out
            self._eindex[p] = {e: i for i, e in enumerate(out)}
        return self._elems[p]

    def elem_index(self, p: int, e: tuple) -> int:
        self.elements(p)
        return self._eindex[p][e]

    def label_of(self, e: tuple) -> tuple:
        return tuple((d, F.complex.labels[d][i]) for F, (d, i) in zip(self.factors, e))

    def coboundary_elems(self, e: tuple) -> list[tuple]:
        out = []
        for m, (d, i) in enumerate(e):
            if d == 0:
                for x in bits_of(self.factors[m].support[i]):
                    out.append(e[:m] + ((1, x),) + e[m + 1:])
        return out

    @property
    def complex(self) -> BasedComplex:
        if self._complex is None:
            labels = {p: [self.label_of(e) for e in self.elements(p)] for p in range(self.top_degree + 1)}
            mats = {}
            for p in range(self.top_degree):
                self.elements(p + 1)
                idx = self._eindex[p + 1]
                cols = []
                for e in self.elements(p):
                    c = 0
                    for f in self.coboundary_elems(e):
                        c ^= 1 << idx[f]
                    cols.append(c)
                mats[p] = BitMatrix.from_columns(len(idx), cols)
            self._complex = BasedComplex(labels, mats)
        return self._complex

    # -- shared cup interface ---------------------------------------------

    def cup_elem(self, u: tuple, v: tuple) -> tuple | None:
        out = []
        for F, (du, iu), (dv, iv) in zip(self.factors, u, v):
            r = F.cup_basis(du, iu, dv, iv)
            if not r:
                return None
            out.append((du + dv, r[0]))
        return tuple(out)

    def partner_elems(self, u: tuple, q: int) -> list[tuple]:
        """Tensor basis elements ``v`` of degree ``q`` with ``u ∪ v`` possibly nonzero."""
        options = []
        for F, (d, i) in zip(self.factors, u):
            opts = [(0, j) for j in F.right_partners(d, i, 0)]
            opts += [(1, j) for j in F.right_partners(d, i, 1)]
            options.append(opts)
        return [v for v in itertools.product(*options) if sum(d for d, _ in v) == q]

    def cup_basis(self, p: int, i: int, q: int, j: int) -> list[int]:
        u, v = self.elements(p)[i], self.elements(q)[j]
        w = self.cup_elem(u, v)
        return [] if w is None else [self.elem_index(p + q, w)]

    def right_partners(self, p: int, i: int, q: int) -> list[int]:
        u = self.elements(p)[i]
        return [self.elem_index(q, v) for v in self.partner_elems(u, q)]

    def cohomology_reps(self) -> list[BitVector]:
        """Degree-1 cohomology basis built from factor classes.

        Slot ``m`` (factor ``m`` carrying the degree-1 class) comes first,
        then factor representative indices in factor order.
        """
        H0 = [cohomology_basis(F.complex, 0) for F in self.factors]
        H1 = [cohomology_basis(F.complex, 1) for F in self.factors]
        n = len(self.elements(1))
        reps = []
        for m in range(len(self.factors)):
            lists = [H1[k] if k == m else H0[k] for k in range(len(self.factors))]
            for combo in itertools.product(*lists):
                supports = [[(1 if k == m else 0, i) for i in v.support] for k, v in enumerate(combo)]
                bits = 0
                for e in itertools.product(*supports):
                    bits |= 1 << self._eindex[1][e]
                reps.append(BitVector(n, bits))
        return reps


def tensor(factors: Sequence[CupStructure]) -> TensorComplex:
    return TensorComplex(factors)


class BalancedComplex:
    """Quotient of a tensor complex by a free diagonal group action."""

    def __init__(self, T: TensorComplex, action: GroupAction):
        if len(action.tables) != len(T.factors):
            raise ActionError("action must give one table per factor", code="bad_table")
        self.tensor = T
        self.action = action
        self.top_degree = T.top_degree
        for m, (F, table) in enumerate(zip(T.factors, action.tables)):
            rep = check_action_compatibility(F, table, action.group, require_free=False)
            if not rep.ok:
                raise ActionError(f"factor {m}: {rep.reason}", code=rep.reason, factor=m)
        self._check_free()
        self._reps: dict[int, list[tuple]] = {}
        self._orbit_of: dict[int, dict[tuple, int]] = {}
        self._complex: BasedComplex | None = None

    def _check_free(self) -> None:
        G = self.action.group
        ident = G.index(G.identity)
        stabs = []
        for F, table in zip(self.tensor.factors, self.action.tables):
            per_degree = {}
            for d, size in ((0, F.num_checks), (1, F.num_bits)):
                perms = table.get(d)
                found = set()
                for i in range(size):
                    if perms is None:
                        found.add(frozenset(range(len(G))))
                    else:
                        found.add(frozenset(g for g in range(len(G)) if perms[g][i] == i))
                per_degree[d] = found
            stabs.append(per_degree)
        for degs in itertools.product((0, 1), repeat=len(stabs)):
            for combo in itertools.product(*(stabs[m][d] for m, d in enumerate(degs))):
                common = frozenset.intersection(*combo)
                if common - {ident}:
                    raise ActionError("group action is not free on the product basis", code="non_free",
                                      degrees=list(degs))

    def _orbits(self, p: int):
        if p not in self._reps:
            act = self.action.act
            nG = len(self.action.group)
            reps, orbit_of = [], {}
            for e in self.tensor.elements(p):
                if e in orbit_of:
                    continue
                k = len(reps)
                reps.append(e)
                for g in range(nG):
                    orbit_of[act(g, e)] = k
            self._reps[p] = reps
            self._orbit_of[p] = orbit_of
        return self._reps[p], self._orbit_of[p]

    def reps(self, p: int) -> list[tuple]:
        return self._orbits(p)[0]

    def orbit_index(self, p: int, e: tuple) -> int:
        return self._orbits(p)[1][e]

    @property
    def complex(self) -> BasedComplex:
        if self._complex is None:
            T = self.tensor
            labels = {p: [Orbit(T.label_of(e)) for e in self.reps(p)] for p in range(self.top_degree + 1)}
            mats = {}
            for p in range(self.top_degree):
                _, orb = self._orbits(p + 1)
                cols = []
                for e in self.reps(p):
                    c = 0
                    for f in T.coboundary_elems(e):
                        c ^= 1 << orb[f]
                    cols.append(c)
                mats[p] = BitMatrix.from_columns(len(self.reps(p + 1)), cols)
            self._complex = BasedComplex(labels, mats)
        return self._complex

    # -- shared cup interface ---------------------------------------------

    def cup_basis(self, p: int, i: int, q: int, j: int) -> list[int]:
        T = self.tensor
        u = self.reps(p)[i]
        _, orb_q = self._orbits(q)
        _, orb_r = self._orbits(p + q)
        counts: Counter = Counter()
        for w in T.partner_elems(u, q):
            if orb_q[w] != j:
                continue
            r = T.cup_elem(u, w)
            if r is not None:
                counts[orb_r[r]] ^= 1
        return sorted(k for k, c in counts.items() if c)

    def right_partners(self, p: int, i: int, q: int) -> list[int]:
        _, orb_q = self._orbits(q)
        return sorted({orb_q[w] for w in self.tensor.partner_elems(self.reps(p)[i], q)})

    def cohomology_reps(self) -> list[BitVector]:
        return cohomology_basis(self.complex, 1)


def balanced_product(T: TensorComplex, action: GroupAction) -> BalancedComplex:
    return BalancedComplex(T, action)
