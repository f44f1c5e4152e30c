"""Cycle, torus, plaquette-Ising and lineon families."""

from __future__ import annotations

from ..orientation import CupStructure
from ..products import TensorComplex

__all__ = ["repetition_circle", "torus_code", "plaquette_ising", "anisotropic_lineon"]


def repetition_circle(n: int) -> CupStructure:
    """Oriented cycle with ``n`` vertices (checks) and ``n`` edges (bits).

    Edge ``i`` runs from vertex ``i`` to vertex ``i + 1 mod n``, so vertex
    ``v`` has in-edge ``v - 1`` and out-edge ``v``.  ``n = 2`` gives a
    double edge between the two vertices.
    """
    if n < 2:
        raise ValueError("a cycle needs at least 2 vertices")
    return CupStructure.from_checks(range(n), {v: {"in": [(v - 1) % n], "out": [v]} for v in range(n)})


def torus_code(lam: int, L: int) -> TensorComplex:
    """Tensor product of ``lam`` cycles of length ``L``: the lam-dimensional torus."""
    if lam < 1:
        raise ValueError("lam must be positive")
    circle = repetition_circle(L)
    return TensorComplex([circle] * lam)


def plaquette_ising(L: int) -> CupStructure:
    """Plaquette checks on the ``L × L`` torus; bits are vertices.

    Plaquette ``(i, j)`` has corners ``(i, j)`` (in), ``(i+1, j+1)`` (out)
    and ``(i, j+1)``, ``(i+1, j)`` (free).  Parameters ``[L², 2L-1, L]``.
    """
    if L < 2:
        raise ValueError("L must be at least 2")
    checks = {}
    for i in range(L):
        for j in range(L):
            checks[(i, j)] = {
                "in": [(i, j)],
                "out": [((i + 1) % L, (j + 1) % L)],
                "free": [(i, (j + 1) % L), ((i + 1) % L, j)],
            }
    bits = [(i, j) for i in range(L) for j in range(L)]
    return CupStructure.from_checks(bits, checks)


def anisotropic_lineon(L: int) -> TensorComplex:
    """Plaquette-Ising code tensored with the length-``L`` cycle (``n = 2L³``)."""
    return TensorComplex([plaquette_ising(L), repetition_circle(L)])
