"""CSS code data from the degree 0, 1, 2 slice of a based complex.

Qubits are degree-1 basis elements.  X-checks are coboundaries of degree-0
elements, Z-checks are the rows of the degree-1 coboundary.  X-logicals are
degree-1 cohomology representatives; Z-logicals live on the chain side.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .complexes import BasedComplex, cohomology_basis, homology_basis
from .errors import ComplexError
from .f2linalg import BitMatrix, BitVector, Echelon, bits_of, kernel_basis, popcount

__all__ = [
    "CssCode",
    "CodeParameters",
    "from_complex",
    "min_weight_nontrivial",
    "distance_exhaustive",
    "classical_parameters",
    "randomized_upper_bound",
]


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d_exact: int | None = None
    d_lower: int | None = None
    d_upper: int | None = None
    method: str = ""

    def to_json(self) -> dict:
        out = {"n": self.n, "k": self.k}
        for key in ("d_exact", "d_lower", "d_upper"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out["method"] = self.method
        return out


@dataclass(frozen=True)
class CssCode:
    complex: BasedComplex
    n: int
    x_checks: BitMatrix
    z_checks: BitMatrix
    x_logicals: tuple[BitVector, ...]
    k: int

    def z_logicals(self) -> list[BitVector]:
        return homology_basis(self.complex, 1)

    def commute(self) -> bool:
        """H_Z H_X^T = 0."""
        return (self.z_checks @ self.x_checks.T).is_zero()


def from_complex(C: BasedComplex) -> CssCode:
    """Read off the CSS code with qubits in degree 1.

    Higher degrees (if any) are ignored; a missing degree 2 gives no Z-checks.
    """
    if not (C.min_degree <= 0 and C.max_degree >= 1):
        raise ComplexError("complex must contain degrees 0 and 1", code="degree")
    n = C.dim(1)
    x_checks = C.delta(0).T
    z_checks = C.delta(1) if C.max_degree >= 2 else BitMatrix.zeros(0, n)
    if C.min_degree < 0 or C.max_degree > 2:
        # restrict to the three-term slice so cohomology ignores other degrees
        labels = {p: C.labels[p] for p in (0, 1, 2) if p in C.labels}
        mats = {p: C.delta(p) for p in (0, 1) if p + 1 in labels}
        C = BasedComplex(labels, mats)
    logicals = tuple(cohomology_basis(C, 1))
    return CssCode(C, n, x_checks, z_checks, logicals, len(logicals))


def min_weight_nontrivial(
    n: int,
    syndrome_cols: Sequence[int],
    trivial: Sequence[int],
    weight_cap: int,
) -> tuple[int, int] | None:
    """Smallest weight ``w <= weight_cap`` of a vector with zero syndrome outside span(trivial).

    Returns ``(w, vector_bits)`` or ``None``.  Weight-``w`` vectors are
    enumerated by meet in the middle: the ``ceil(w/2)`` lowest support
    indices on one side, a syndrome lookup table for the rest.
    """
    if len(syndrome_cols) != n:
        raise ValueError("need one syndrome column per coordinate")
    triv = Echelon(trivial)
    tables: dict[int, dict[int, list[tuple[int, int]]]] = {}

    def table(w: int):
        if w not in tables:
            t: dict[int, list[tuple[int, int]]] = {}
            if w == 0:
                t[0] = [(0, n)]
            else:
                for combo in itertools.combinations(range(n), w):
                    s = 0
                    b = 0
                    for j in combo:
                        s ^= syndrome_cols[j]
                        b |= 1 << j
                    t.setdefault(s, []).append((b, combo[0]))
            tables[w] = t
        return tables[w]

    for w in range(1, weight_cap + 1):
        w1 = (w + 1) // 2
        w2 = w - w1
        t = table(w2)
        for combo in itertools.combinations(range(n), w1):
            s = 0
            a = 0
            for j in combo:
                s ^= syndrome_cols[j]
                a |= 1 << j
            hits = t.get(s)
            if not hits:
                continue
            last = combo[-1]
            for b, first in hits:
                if first > last and triv.reduce(a | b):
                    return w, a | b
    return None


def _x_side(code: CssCode):
    C = code.complex
    return C.delta(1).T.rows if C.max_degree >= 2 else [0] * code.n, C.delta(0).T.rows


def _z_side(code: CssCode):
    C = code.complex
    return C.delta(0).rows, code.z_checks.rows


def distance_exhaustive(code: CssCode, weight_cap: int) -> CodeParameters:
    """Exact distance if some nontrivial logical has weight <= ``weight_cap``.

    Otherwise only the lower bound ``weight_cap + 1`` is reported.
    """
    if weight_cap < 0:
        raise ValueError("weight_cap must be nonnegative")
    if code.k == 0:
        return CodeParameters(code.n, 0, method="no logical qubits")
    found = []
    for cols, triv in (_x_side(code), _z_side(code)):
        hit = min_weight_nontrivial(code.n, cols, triv, weight_cap)
        if hit is not None:
            found.append(hit[0])
    if found:
        return CodeParameters(code.n, code.k, d_exact=min(found), method=f"exhaustive<= {weight_cap}")
    return CodeParameters(code.n, code.k, d_lower=weight_cap + 1, method=f"exhaustive<= {weight_cap}")


def classical_parameters(C: BasedComplex, weight_cap: int | None = None) -> CodeParameters:
    """[n, k, d] of the classical code ker(delta^0 transpose) on degree-1 bits."""
    if not C.is_two_term():
        raise ComplexError("classical parameters need a two-term complex", code="degree")
    n = C.dim(1)
    k = n - C.rank_delta(0)
    if k == 0:
        return CodeParameters(n, 0, method="no codewords")
    cap = n if weight_cap is None else weight_cap
    hit = min_weight_nontrivial(n, C.delta(0).rows, [], cap)
    if hit is None:
        return CodeParameters(n, k, d_lower=cap + 1, method=f"exhaustive<= {cap}")
    return CodeParameters(n, k, d_exact=hit[0], method=f"exhaustive<= {cap}")


def _permute(bits: int, perm: Sequence[int]) -> int:
    out = 0
    for j in bits_of(bits):
        out |= 1 << perm[j]
    return out


def randomized_upper_bound(code: CssCode, iterations: int = 200, seed: int = 0) -> tuple[int, BitVector] | None:
    """Lowest-weight nontrivial logical found by random information sets.

    Each iteration brings a basis of the logical-containing space into
    reduced echelon form under a random column order and inspects single
    rows and pairs of rows.  The weight returned is an upper bound on the
    distance.
    """
    if code.k == 0:
        return None
    rng = random.Random(seed)
    n = code.n
    best: tuple[int, int] | None = None
    sides = []
    C = code.complex
    _, x_triv = _x_side(code)
    _, z_triv = _z_side(code)
    for syn_rows, triv in (
        (C.delta(1) if C.max_degree >= 2 else BitMatrix.zeros(0, n), x_triv),
        (C.delta(0).T, z_triv),
    ):
        space = [v.bits for v in kernel_basis(syn_rows)]
        sides.append((space, Echelon(triv)))
    for _ in range(iterations):
        perm = list(range(n))
        rng.shuffle(perm)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        for space, triv in sides:
            rows = Echelon(_permute(v, perm) for v in space).reduced_rows()
            cands = list(rows)
            for a, b in itertools.combinations(rows, 2):
                cands.append(a ^ b)
            for r in cands:
                w = popcount(r)
                if best is not None and w >= best[0]:
                    continue
                orig = _permute(r, inv)
                if triv.reduce(orig):
                    best = (w, orig)
    if best is None:
        return None
    return best[0], BitVector(n, best[1])
