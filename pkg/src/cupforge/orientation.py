"""Pre-orientations of classical codes, the cup product they induce, and
the conditions that make the resulting multi-controlled-Z circuit a logical
gate.

A classical code is a two-term complex: checks in degree 0, bits in degree
1.  A pre-orientation splits the support of every check into ``in``,
``out`` and ``free`` bits.  The cup product on basis elements is

* ``a ∪ a = a`` for a check ``a`` (distinct checks multiply to zero),
* ``a ∪ x = x`` iff ``x`` is an out-bit of ``a``,
* ``x ∪ a = x`` iff ``x`` is an in-bit of ``a``,
* anything landing in degree 2 vanishes.

Λ-fold products are always evaluated left-nested, ``((a1 ∪ a2) ∪ a3) ...``.

Cup structures (this class and the product structures in
:mod:`cupforge.products`) share a small interface on ``(degree, index)``
pairs: ``cup_basis``, ``right_partners``, ``top_degree`` and ``complex``.
The generic routines :func:`cup`, :func:`lambda_cup` and :func:`integral`
work on any of them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .complexes import BasedComplex, Cochain, Report, label_key
from .errors import OrientationError
from .f2linalg import BitVector, bits_of, popcount

__all__ = [
    "PreOrientation",
    "CupStructure",
    "cup",
    "lambda_cup",
    "integral",
    "check_nonoverlap",
    "check_associativity",
    "check_integrated_leibniz",
    "leibniz_conditions_lambda2",
    "leibniz_conditions_lambda3",
    "nonoverlap_leibniz_conditions",
    "brute_leibniz_oracle",
]

IN, OUT, FREE = "in", "out", "free"


@dataclass(frozen=True)
class PreOrientation:
    """For each check label, the (in, out, free) split of its bits (by label)."""

    parts: Mapping[Hashable, tuple[frozenset, frozenset, frozenset]]

    @classmethod
    def from_dict(cls, parts: Mapping[Hashable, Mapping[str, Iterable]]) -> "PreOrientation":
        return cls({a: (frozenset(d.get(IN, ())), frozenset(d.get(OUT, ())), frozenset(d.get(FREE, ())))
                    for a, d in parts.items()})

    def to_dict(self) -> dict:
        return {a: {IN: sorted(i, key=label_key), OUT: sorted(o, key=label_key), FREE: sorted(f, key=label_key)}
                for a, (i, o, f) in self.parts.items()}


class CupStructure:
    """A two-term complex together with a pre-orientation."""

    top_degree = 1

    def __init__(self, complex: BasedComplex, orientation: PreOrientation):
        if not complex.is_two_term():
            raise OrientationError("a pre-orientation needs a two-term complex", code="degree")
        self.complex = complex
        self.orientation = orientation
        checks = complex.labels[0]
        nbits = complex.dim(1)
        missing = [a for a in checks if a not in orientation.parts]
        if missing:
            raise OrientationError(f"no split given for check {missing[0]!r}", code="missing_check", check=missing[0])
        extra = [a for a in orientation.parts if not complex.has_label(0, a)]
        if extra:
            raise OrientationError(f"split given for unknown check {extra[0]!r}", code="unknown_check", check=extra[0])
        self.in_bits: list[int] = []
        self.out_bits: list[int] = []
        self.free_bits: list[int] = []
        for i, a in enumerate(checks):
            parts = []
            for part in orientation.parts[a]:
                b = 0
                for x in part:
                    if not complex.has_label(1, x):
                        raise OrientationError(f"check {a!r} names unknown bit {x!r}", code="unknown_bit", check=a)
                    b |= 1 << complex.index(1, x)
                parts.append(b)
            bi, bo, bf = parts
            if bi & bo or bi & bf or bo & bf or (bi | bo | bf) != complex.coboundary_bits(0, i):
                raise OrientationError(
                    f"in/out/free of check {a!r} is not a partition of its support",
                    code="not_partition",
                    check=a,
                )
            self.in_bits.append(bi)
            self.out_bits.append(bo)
            self.free_bits.append(bf)
        self.support = [complex.coboundary_bits(0, i) for i in range(len(checks))]
        self.in_checks: list[list[int]] = [[] for _ in range(nbits)]
        self.out_checks: list[list[int]] = [[] for _ in range(nbits)]
        self.checks_of: list[list[int]] = [[] for _ in range(nbits)]
        for i in range(len(checks)):
            for x in bits_of(self.in_bits[i]):
                self.in_checks[x].append(i)
            for x in bits_of(self.out_bits[i]):
                self.out_checks[x].append(i)
            for x in bits_of(self.support[i]):
                self.checks_of[x].append(i)

    @classmethod
    def from_checks(cls, bits: Iterable, checks: Mapping[Hashable, Mapping[str, Iterable]]) -> "CupStructure":
        """Build the complex from the splits: the support of a check is in ∪ out ∪ free."""
        orient = PreOrientation.from_dict(checks)
        delta = {a: list(i) + list(o) + list(f) for a, (i, o, f) in orient.parts.items()}
        C = BasedComplex.from_maps({0: list(orient.parts), 1: list(bits)}, {0: delta})
        return cls(C, orient)

    @property
    def num_checks(self) -> int:
        return self.complex.dim(0)

    @property
    def num_bits(self) -> int:
        return self.complex.dim(1)

    @property
    def integral_defined(self) -> bool:
        return all(popcount(s) % 2 == 0 for s in self.support)

    def role(self, check: int, bit: int) -> str | None:
        m = 1 << bit
        if self.in_bits[check] & m:
            return IN
        if self.out_bits[check] & m:
            return OUT
        if self.free_bits[check] & m:
            return FREE
        return None

    # -- shared cup interface ---------------------------------------------

    def cup_basis(self, p: int, i: int, q: int, j: int) -> list[int]:
        if p == 0 and q == 0:
            return [i] if i == j else []
        if p == 0 and q == 1:
            return [j] if (self.out_bits[i] >> j) & 1 else []
        if p == 1 and q == 0:
            return [i] if (self.in_bits[j] >> i) & 1 else []
        return []

    def right_partners(self, p: int, i: int, q: int) -> Iterable[int]:
        if p == 0 and q == 0:
            return (i,)
        if p == 0 and q == 1:
            return bits_of(self.out_bits[i])
        if p == 1 and q == 0:
            return self.in_checks[i]
        return ()

    def integral_check(self) -> None:
        if not self.integral_defined:
            bad = next(i for i, s in enumerate(self.support) if popcount(s) % 2)
            raise OrientationError(
                f"integral undefined: check {self.complex.labels[0][bad]!r} has odd support",
                code="integral_undefined",
            )


# -- generic cochain operations -------------------------------------------


def _zero(S, p: int) -> Cochain:
    return Cochain(p, BitVector(S.complex.dim(p), 0))


def cup(S, f: Cochain, g: Cochain) -> Cochain:
    """Cup product of cochains, extended bilinearly from basis elements."""
    p, q = f.degree, g.degree
    r = p + q
    if r > S.top_degree:
        return _zero(S, r)
    gb = g.vector.bits
    acc = 0
    for i in bits_of(f.vector.bits):
        for j in S.right_partners(p, i, q):
            if (gb >> j) & 1:
                for t in S.cup_basis(p, i, q, j):
                    acc ^= 1 << t
    return Cochain(r, BitVector(S.complex.dim(r), acc))


def lambda_cup(S, args: Sequence[Cochain]) -> Cochain:
    """Left-nested product ``((c1 ∪ c2) ∪ c3) ∪ ...``."""
    if not args:
        raise ValueError("need at least one argument")
    out = args[0]
    for c in args[1:]:
        out = cup(S, out, c)
    return out


def integral(S, c: Cochain, strict: bool = True) -> int:
    """Weight mod 2 of a top-degree cochain; zero above the top degree.

    With ``strict`` the classical integral is refused when some check has
    odd support.
    """
    if c.degree > S.top_degree:
        return 0
    if c.degree != S.top_degree:
        raise ValueError(f"integral needs degree {S.top_degree}, got {c.degree}")
    if strict and hasattr(S, "integral_check"):
        S.integral_check()
    return c.vector.weight & 1


# -- checks -----------------------------------------------------------------


def _check_label(S: CupStructure, i: int):
    return S.complex.labels[0][i]


def _bit_label(S: CupStructure, x: int):
    return S.complex.labels[1][x]


def check_nonoverlap(S: CupStructure) -> Report:
    """In-sets pairwise disjoint and out-sets pairwise disjoint."""
    for kind, table in ((IN, S.in_checks), (OUT, S.out_checks)):
        for x, owners in enumerate(table):
            if len(owners) > 1:
                a, b = owners[0], owners[1]
                return Report(False, f"shared {kind}-bit", {
                    "kind": kind, "checks": [_check_label(S, a), _check_label(S, b)], "bit": _bit_label(S, x)})
    return Report(True)


def _cup_sum(S, items: set[tuple[int, int]], q: int, j: int) -> set[tuple[int, int]]:
    out: set[tuple[int, int]] = set()
    for p, i in items:
        for t in S.cup_basis(p, i, q, j):
            out ^= {(p + q, t)}
    return out


def check_associativity(S: CupStructure) -> Report:
    """Exhaustive comparison of ``(u∪v)∪w`` and ``u∪(v∪w)`` on basis triples."""
    basis = [(0, i) for i in range(S.num_checks)] + [(1, x) for x in range(S.num_bits)]
    triples = set()
    for (p, i) in basis:
        for q in (0, 1):
            for j in S.right_partners(p, i, q):
                for w in basis:
                    triples.add(((p, i), (q, j), w))
                for u in basis:
                    triples.add((u, (p, i), (q, j)))
    for u, v, w in sorted(triples):
        left = _cup_sum(S, {(u[0] + v[0], t) for t in S.cup_basis(u[0], u[1], v[0], v[1])}, w[0], w[1])
        vw = {(v[0] + w[0], t) for t in S.cup_basis(v[0], v[1], w[0], w[1])}
        right: set = set()
        for (r, t) in vw:
            for s in S.cup_basis(u[0], u[1], r, t):
                right ^= {(u[0] + r, s)}
        if left != right:
            names = [S.complex.labels[d][k] for d, k in (u, v, w)]
            return Report(False, "cup not associative", {"triple": names})
    return Report(True)


def _leibniz_counts(S: CupStructure, lam: int) -> dict[tuple[int, ...], int]:
    """Parity of ``∫ Σ_j a_1 ∪ … ∪ δ(a_j) ∪ … ∪ a_lam`` for every check tuple with a nonzero term.

    Term ``j`` of a left-nested product is nonzero only when the checks
    before position ``j`` are all equal (to ``a``); it then counts the bits
    in ``out(a) ∩ δ(a_j) ∩ in(a_{j+1}) ∩ … ∩ in(a_lam)`` (no out-factor
    when ``j = 1``).  Counting bit by bit gives every tuple's parity.
    """
    counts: dict[tuple[int, ...], int] = {}
    for x in range(S.num_bits):
        ins, outs, hits = S.in_checks[x], S.out_checks[x], S.checks_of[x]
        if not hits:
            continue
        for j in range(1, lam + 1):
            prefixes = [()] if j == 1 else [(a,) * (j - 1) for a in outs]
            if not prefixes:
                continue
            suffixes = list(itertools.product(ins, repeat=lam - j))
            if not suffixes:
                continue
            for pre in prefixes:
                for b in hits:
                    for suf in suffixes:
                        t = pre + (b,) + suf
                        counts[t] = counts.get(t, 0) ^ 1
    return counts


def _first_violation(S: CupStructure, tuples: Iterable[tuple[int, ...]]) -> tuple | None:
    labs = S.complex.labels[0]
    best = None
    for t in tuples:
        key = tuple(label_key(labs[i]) for i in t)
        if best is None or key < best[0]:
            best = (key, t)
    return None if best is None else tuple(labs[i] for i in best[1])


def check_integrated_leibniz(S: CupStructure, lam: int) -> Report:
    """Does ``∫ Σ_j a_1 ∪ … ∪ δ(a_j) ∪ … ∪ a_lam`` vanish for all check tuples?

    Exact for every ``lam >= 1``; the counterexample is the least violating
    tuple in label order.  The integral is taken as weight mod 2 whether or
    not every check has even support.
    """
    if lam < 1:
        raise ValueError("lam must be positive")
    counts = _leibniz_counts(S, lam)
    bad = [t for t, c in counts.items() if c]
    if not bad:
        return Report(True)
    return Report(False, "integrated Leibniz rule fails", {"lam": lam, "tuple": list(_first_violation(S, bad))})


def _neighbors(S: CupStructure, a: int) -> list[int]:
    out = set()
    for x in bits_of(S.support[a]):
        out.update(S.checks_of[x])
    out.discard(a)
    return sorted(out)


def leibniz_conditions_lambda2(S: CupStructure) -> Report:
    """Closed form for two factors.

    ``|in(a)| + |out(a)|`` even for every check, and for distinct checks
    ``|in_a∩in_b| + |out_a∩out_b| + |out_a∩free_b| + |free_a∩in_b|`` even.
    """
    bad = []
    for a in range(S.num_checks):
        if (popcount(S.in_bits[a]) + popcount(S.out_bits[a])) & 1:
            bad.append((a, a))
        for b in _neighbors(S, a):
            s = (popcount(S.in_bits[a] & S.in_bits[b]) + popcount(S.out_bits[a] & S.out_bits[b])
                 + popcount(S.out_bits[a] & S.free_bits[b]) + popcount(S.free_bits[a] & S.in_bits[b]))
            if s & 1:
                bad.append((a, b))
    if not bad:
        return Report(True)
    return Report(False, "two-factor condition fails", {"lam": 2, "tuple": list(_first_violation(S, bad))})


def leibniz_conditions_lambda3(S: CupStructure) -> Report:
    """Closed form for three factors, tuple type by tuple type.

    ``(a,a,a)``: ``|in_a| + |out_a|`` even.  For ``a ≠ b``:
    ``(a,b,a)``: ``|in_a∩in_b|``; ``(a,b,b)``: ``|in_a∩in_b| + |free_a∩in_b|``;
    ``(a,a,b)``: ``|in_a∩in_b| + |out_a∩out_b| + |out_a∩free_b|``.
    Distinct ``(a,b,c)``: ``|δa∩in_b∩in_c| + |out_a∩δb∩in_c|``.  All even.
    """
    I, O, F, D = S.in_bits, S.out_bits, S.free_bits, S.support
    bad = []
    for a in range(S.num_checks):
        if (popcount(I[a]) + popcount(O[a])) & 1:
            bad.append((a, a, a))
        nb = _neighbors(S, a)
        for b in nb:
            ii = popcount(I[a] & I[b])
            if ii & 1:
                bad.append((a, b, a))
            if (ii + popcount(F[a] & I[b])) & 1:
                bad.append((a, b, b))
            if (ii + popcount(O[a] & O[b]) + popcount(O[a] & F[b])) & 1:
                bad.append((a, a, b))
        for b in nb:
            for c in nb:
                if c == b:
                    continue
                if (popcount(D[a] & I[b] & I[c]) + popcount(O[a] & D[b] & I[c])) & 1:
                    bad.append((a, b, c))
    if not bad:
        return Report(True)
    return Report(False, "three-factor condition fails", {"lam": 3, "tuple": list(_first_violation(S, bad))})


def nonoverlap_leibniz_conditions(S: CupStructure, lam: int) -> Report:
    """Simplified conditions valid when in-sets and out-sets do not overlap.

    ``lam = 1``: every check has even support.  ``lam = 2``:
    ``|in_a| + |out_a|`` even and ``|out_a∩free_b| + |free_a∩in_b|`` even for
    ``a ≠ b``.  ``lam >= 3``: ``|in_a| + |out_a|``, ``|free_a∩in_b|``,
    ``|out_a∩free_b|`` and, for distinct ``a, b, c``,
    ``|out_a∩free_b∩in_c|`` all even.
    """
    if not check_nonoverlap(S):
        raise OrientationError("pre-orientation overlaps", code="overlap")
    I, O, F, D = S.in_bits, S.out_bits, S.free_bits, S.support
    bad = []
    for a in range(S.num_checks):
        if lam == 1:
            if popcount(D[a]) & 1:
                bad.append((a,))
            continue
        if (popcount(I[a]) + popcount(O[a])) & 1:
            bad.append((a,) * lam)
        nb = _neighbors(S, a)
        for b in nb:
            if lam == 2:
                if (popcount(O[a] & F[b]) + popcount(F[a] & I[b])) & 1:
                    bad.append((a, b))
                continue
            if popcount(F[a] & I[b]) & 1:
                bad.append((a,) + (b,) * (lam - 1))
            if popcount(O[a] & F[b]) & 1:
                bad.append((a,) * (lam - 1) + (b,))
        if lam >= 3:
            for b in nb:
                for c in nb:
                    if c != b and popcount(O[a] & F[b] & I[c]) & 1:
                        bad.append((a, b) + (c,) * (lam - 2))
    if not bad:
        return Report(True)
    return Report(False, "non-overlapping condition fails", {"lam": lam, "tuple": list(_first_violation(S, bad))})


def brute_leibniz_oracle(S: CupStructure, lam: int, samples: int | None = None, seed: int = 0) -> Report:
    """Evaluate the defining sum directly with cochain cup products.

    Tuples range over all basis elements (checks and bits).  With
    ``samples=None`` every tuple is tried; otherwise every all-check tuple
    is tried when there are at most ``samples`` of them, plus ``samples``
    random mixed tuples.
    """
    C = S.complex
    basis = [(0, i) for i in range(C.dim(0))] + [(1, x) for x in range(C.dim(1))]

    def elem(p, i):
        return Cochain(p, BitVector(C.dim(p), 1 << i))

    def total(t):
        acc = 0
        for j, (p, i) in enumerate(t):
            d = C.apply_delta(elem(p, i))
            if d.degree > S.top_degree or not d.vector:
                continue
            args = [elem(*u) for u in t[:j]] + [d] + [elem(*u) for u in t[j + 1:]]
            acc ^= integral(S, lambda_cup(S, args), strict=False)
        return acc

    if samples is None:
        tuples: Iterable = itertools.product(basis, repeat=lam)
    else:
        rng = random.Random(seed)
        checks = [(0, i) for i in range(C.dim(0))]
        pool = []
        if len(checks) ** lam <= samples:
            pool.extend(itertools.product(checks, repeat=lam))
        else:
            pool.extend(tuple(rng.choice(checks) for _ in range(lam)) for _ in range(samples))
        pool.extend(tuple(rng.choice(basis) for _ in range(lam)) for _ in range(samples))
        tuples = pool
    bad = []
    for t in tuples:
        if total(t):
            bad.append(t)
    if not bad:
        return Report(True)
    labs = C.labels
    best = min(bad, key=lambda t: tuple((p, label_key(labs[p][i])) for p, i in t))
    return Report(False, "integrated Leibniz rule fails", {"lam": lam, "tuple": [labs[p][i] for p, i in best]})
