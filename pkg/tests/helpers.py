"""Shared generators for small cup structures."""

from __future__ import annotations

import itertools
import random

from cupforge.constructions import group_algebra_code, search_splittings
from cupforge.orientation import CupStructure
from cupforge.products import AbelianGroup

ROLES = (None, "in", "out", "free")


def structure_from_roles(m: int, n: int, roles) -> CupStructure:
    """``roles[a*n + j]`` indexes ROLES for check ``a`` and bit ``j``."""
    bits = list(range(n))
    checks = {}
    for a in range(m):
        d = {"in": [], "out": [], "free": []}
        for j in range(n):
            r = roles[a * n + j]
            if r:
                d[ROLES[r]].append(j)
        checks[f"c{a}"] = d
    return CupStructure.from_checks(bits, checks)


def enumerate_structures(m: int, n: int):
    """Every pre-oriented complex with ``m`` checks on ``n`` bits, up to reordering the checks."""
    for roles in itertools.product(range(4), repeat=m * n):
        rows = [roles[a * n:(a + 1) * n] for a in range(m)]
        if rows != sorted(rows):
            continue
        yield structure_from_roles(m, n, roles)


def random_structure(rng: random.Random, max_checks: int = 6, max_bits: int = 12) -> CupStructure:
    m = rng.randint(1, max_checks)
    n = rng.randint(1, max_bits)
    density = rng.choice((0.2, 0.35, 0.5))
    roles = [rng.randint(1, 3) if rng.random() < density else 0 for _ in range(m * n)]
    return structure_from_roles(m, n, roles)


def random_group_algebra(rng: random.Random) -> CupStructure:
    """A small cyclic group-algebra code with a splitting meeting the two-factor hypotheses."""
    while True:
        order = rng.randint(3, 6)
        G = AbelianGroup([order])
        t = (rng.randint(1, order - 1),)
        c = {t, G.inv(t)}
        if rng.random() < 0.5:
            f = (rng.randint(0, order - 1),)
            c |= {f, G.inv(f)}
        found = search_splittings(G, frozenset(c))
        if found:
            return group_algebra_code(G, frozenset(c), rng.choice(found))


def mutate(S: CupStructure, rng: random.Random) -> CupStructure:
    """Move one bit of one check to a different role (possibly dropping or adding it)."""
    C = S.complex
    checks = {}
    for a in C.labels[0]:
        i, o, f = S.orientation.parts[a]
        checks[a] = {"in": set(i), "out": set(o), "free": set(f)}
    a = rng.choice(C.labels[0])
    x = rng.choice(C.labels[1])
    current = next((r for r in ("in", "out", "free") if x in checks[a][r]), None)
    new = rng.choice([r for r in ROLES if r != current])
    if current:
        checks[a][current].discard(x)
    if new:
        checks[a][new].add(x)
    return CupStructure.from_checks(C.labels[1], checks)
