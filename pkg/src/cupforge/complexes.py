"""Based cochain complexes over GF(2).

A complex stores, for each degree ``p``, an ordered list of basis labels and
the coboundary ``delta(p)`` as a matrix from degree ``p`` to ``p + 1``
(rows indexed by degree ``p + 1``, columns by degree ``p``).

Labels are hashable values: ints, strings, tuples of labels, or ``Orbit``
wrappers.  ``label_key`` gives the canonical total order used everywhere.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .errors import ComplexError
from .f2linalg import (
    BitMatrix,
    BitVector,
    bits_of,
    image_basis,
    kernel_basis,
    quotient_basis,
    rank,
)

__all__ = [
    "Orbit",
    "label_key",
    "render_label",
    "Report",
    "Cochain",
    "BasedComplex",
    "validate",
    "cohomology_basis",
    "homology_basis",
    "betti",
]

Label = Hashable


@dataclass(frozen=True)
class Orbit:
    """Orbit of a group action, named by its least member."""

    rep: Any

    def __repr__(self) -> str:
        return f"Orbit({self.rep!r})"


def label_key(label) -> tuple:
    """Total order on labels: ints < strings < tuples < orbits."""
    if isinstance(label, bool):
        return (0, int(label))
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label))
    if isinstance(label, Orbit):
        return (3, label_key(label.rep))
    raise TypeError(f"unsupported label type {type(label).__name__}")


def render_label(label) -> str:
    """Whitespace-free text form used in circuit export."""
    if isinstance(label, Orbit):
        return "[" + render_label(label.rep) + "]"
    if isinstance(label, tuple):
        return "(" + ",".join(render_label(x) for x in label) + ")"
    return str(label)


@dataclass(frozen=True)
class Report:
    """Outcome of a check.  Truthy iff ``ok``."""

    ok: bool
    reason: str = ""
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"ok": self.ok}
        if self.reason:
            out["reason"] = self.reason
        if self.witness:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Orbit):
        return render_label(x)
    if isinstance(x, BitVector):
        return list(x.support)
    return x


@dataclass(frozen=True)
class Cochain:
    """A cochain of a fixed degree, as a bit vector over that degree's basis."""

    degree: int
    vector: BitVector

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree:
            raise ValueError("cannot add cochains of different degree")
        return Cochain(self.degree, self.vector + other.vector)

    def __bool__(self) -> bool:
        return bool(self.vector)


class BasedComplex:
    """Finite cochain complex with labeled bases.

    Construction does not check shapes or ``delta∘delta = 0``; call
    :func:`validate` for that.  Labels must be distinct within a degree.
    """

    def __init__(self, labels: Mapping[int, Sequence[Label]], coboundaries: Mapping[int, BitMatrix] | None = None):
        if not labels:
            raise ComplexError("complex needs at least one degree")
        degrees = sorted(labels)
        if degrees != list(range(degrees[0], degrees[-1] + 1)):
            raise ComplexError("degrees must be contiguous")
        self.min_degree = degrees[0]
        self.max_degree = degrees[-1]
        self.labels: dict[int, tuple] = {}
        self._index: dict[int, dict] = {}
        for p in degrees:
            labs = tuple(labels[p])
            idx = {lab: i for i, lab in enumerate(labs)}
            if len(idx) != len(labs):
                raise ComplexError(f"duplicate labels in degree {p}")
            self.labels[p] = labs
            self._index[p] = idx
        coboundaries = dict(coboundaries or {})
        self._delta: dict[int, BitMatrix] = {}
        for p in range(self.min_degree, self.max_degree):
            m = coboundaries.pop(p, None)
            if m is None:
                m = BitMatrix.zeros(len(self.labels[p + 1]), len(self.labels[p]))
            self._delta[p] = m
        if coboundaries:
            raise ComplexError(f"coboundary given for degrees outside range: {sorted(coboundaries)}")
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def from_maps(
        cls,
        labels: Mapping[int, Iterable[Label]],
        delta: Mapping[int, Mapping[Label, Iterable[Label]]],
    ) -> "BasedComplex":
        """Build from label sets and coboundary maps ``label -> labels``.

        Labels are sorted canonically; repeated targets cancel mod 2.
        """
        sorted_labels = {p: sorted(labs, key=label_key) for p, labs in labels.items()}
        index = {p: {lab: i for i, lab in enumerate(labs)} for p, labs in sorted_labels.items()}
        mats = {}
        for p, images in delta.items():
            if p not in index or p + 1 not in index:
                raise ComplexError(f"coboundary degree {p} out of range")
            src, dst = index[p], index[p + 1]
            cols = [0] * len(src)
            for lab, targets in images.items():
                j = src[lab]
                acc = 0
                for t in targets:
                    acc ^= 1 << dst[t]
                cols[j] = acc
            mats[p] = BitMatrix.from_columns(len(dst), cols)
        return cls(sorted_labels, mats)

    # -- basic access ------------------------------------------------------

    @property
    def degrees(self) -> range:
        return range(self.min_degree, self.max_degree + 1)

    @property
    def dims(self) -> dict[int, int]:
        return {p: len(self.labels[p]) for p in self.degrees}

    def dim(self, p: int) -> int:
        return len(self.labels[p]) if p in self.labels else 0

    def index(self, p: int, label: Label) -> int:
        try:
            return self._index[p][label]
        except KeyError:
            raise KeyError(f"no basis element {label!r} in degree {p}") from None

    def has_label(self, p: int, label: Label) -> bool:
        return p in self._index and label in self._index[p]

    def delta(self, p: int) -> BitMatrix:
        """Coboundary from degree ``p`` to ``p + 1`` (zero map at the ends)."""
        if p in self._delta:
            return self._delta[p]
        return BitMatrix.zeros(self.dim(p + 1), self.dim(p))

    def coboundary_bits(self, p: int, i: int) -> int:
        """Bitset over degree ``p + 1`` of the coboundary of basis element ``i``."""
        if p not in self._delta:
            return 0
        return self._delta[p].column(i)

    def cochain(self, p: int, labels: Iterable[Label]) -> Cochain:
        idx = self._index[p]
        bits = 0
        for lab in labels:
            bits ^= 1 << idx[lab]
        return Cochain(p, BitVector(self.dim(p), bits))

    def support_labels(self, c: Cochain | BitVector, p: int | None = None) -> list:
        if isinstance(c, Cochain):
            p, v = c.degree, c.vector
        else:
            v = c
        labs = self.labels[p]
        return [labs[i] for i in bits_of(v.bits)]

    def apply_delta(self, c: Cochain) -> Cochain:
        p = c.degree
        if p + 1 > self.max_degree:
            return Cochain(p + 1, BitVector(0, 0))
        return Cochain(p + 1, self.delta(p).matvec(c.vector))

    def _memo(self, key, compute):
        # idempotent: concurrent callers may both compute, results are equal
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            self._cache.setdefault(key, value)
        return self._cache[key]

    def rank_delta(self, p: int) -> int:
        if p not in self._delta:
            return 0
        return self._memo(("rank", p), lambda: rank(self._delta[p]))

    def is_two_term(self) -> bool:
        return self.min_degree == 0 and self.max_degree == 1

    def __repr__(self) -> str:
        dims = ", ".join(f"{p}:{d}" for p, d in self.dims.items())
        return f"BasedComplex({dims})"


def validate(C: BasedComplex) -> Report:
    """Check matrix shapes, then ``delta(p+1) delta(p) = 0`` degree by degree."""
    for p in range(C.min_degree, C.max_degree):
        m = C.delta(p)
        want = (C.dim(p + 1), C.dim(p))
        if m.shape != want:
            return Report(False, "shape", {"degree": p, "expected": list(want), "actual": list(m.shape)})
    for p in range(C.min_degree, C.max_degree - 1):
        prod = C.delta(p + 1) @ C.delta(p)
        if prod.is_zero():
            continue
        cols = prod.T.rows
        j = next(j for j, c in enumerate(cols) if c)
        return Report(
            False,
            "nilpotency",
            {"degree": p, "basis_element": C.labels[p][j], "image": [C.labels[p + 2][i] for i in bits_of(cols[j])]},
        )
    return Report(True)


def _check_degree(C: BasedComplex, p: int) -> None:
    if p not in C.labels:
        raise ComplexError(f"degree {p} out of range [{C.min_degree}, {C.max_degree}]", code="degree")


def cohomology_basis(C: BasedComplex, p: int) -> list[BitVector]:
    """Cocycle representatives of a basis of H^p, canonical for the complex."""
    _check_degree(C, p)

    def compute():
        n = C.dim(p)
        if p < C.max_degree:
            Z = kernel_basis(C.delta(p))
        else:
            Z = [BitVector(n, 1 << i) for i in range(n)]
        B = image_basis(C.delta(p - 1)) if p > C.min_degree else []
        return tuple(quotient_basis(Z, B))

    return list(C._memo(("H", p), compute))


def homology_basis(C: BasedComplex, p: int) -> list[BitVector]:
    """Cycle representatives for the chain-side dual at degree ``p``.

    Cycles are ``ker delta(p-1)^T`` and boundaries ``im delta(p)^T``.
    """
    _check_degree(C, p)

    def compute():
        n = C.dim(p)
        if p > C.min_degree:
            Z = kernel_basis(C.delta(p - 1).T)
        else:
            Z = [BitVector(n, 1 << i) for i in range(n)]
        B = image_basis(C.delta(p).T) if p < C.max_degree else []
        return tuple(quotient_basis(Z, B))

    return list(C._memo(("Hchain", p), compute))


def betti(C: BasedComplex, p: int) -> int:
    _check_degree(C, p)
    return C.dim(p) - C.rank_delta(p) - C.rank_delta(p - 1)
