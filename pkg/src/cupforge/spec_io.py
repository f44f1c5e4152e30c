"""JSON code specifications.

A spec names a construction (``kind``) and its parameters.  Every spec
resolves to the classical factors and the quantum cup structure (a tensor
or balanced product) the gate stage works on.  ``dump_explicit`` writes
the resolved structure as an ``explicit`` spec that loads back to the same
labels, orderings and results.

Kinds::

    {"kind": "torus", "lam": 2, "L": 3}
    {"kind": "plaquette_ising", "L": 3, "lambda": 2}
    {"kind": "lineon", "L": 2}
    {"kind": "group_algebra", "group": [6, 12], "c": "x + x^-1",
     "splitting": {"in": "x", "out": "x^-1", "free": ""}, "lambda": 2}
    {"kind": "bivariate_bicycle", "group": [6, 12], "c1": "...", "c2": "...",
     "s1": {...}, "s2": {...}}
    {"kind": "sipser_spielman", "group": [5], "T": ["x", "x^2"],
     "local_code": {"chat": ["x", "x^-1", "x^2", "x^-2"]},
     "mode": "lambda3", "c_hat": "chat", "t_hat": "x", "lambda": 3}
    {"kind": "explicit", "factors": [{"bits": [...], "checks": [
        {"label": ..., "in": [...], "out": [...], "free": [...]}]}],
     "group": {...}, "lambda": 2}

Classical kinds (plaquette_ising, sipser_spielman, a single explicit
factor) use the ``lambda``-fold tensor power for the gate stage;
group_algebra uses the ``lambda``-fold balanced product over its group.
Tuple labels are written as JSON lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .complexes import label_key
from .constructions import (
    Splitting,
    anisotropic_lineon,
    bivariate_bicycle,
    cayley_graph,
    cayley_local_system,
    group_algebra_balanced,
    plaquette_ising,
    ss_preorientation_lambda2,
    ss_preorientation_lambda3,
    torus_code,
    validate_splitting,
)
from .errors import SpecError
from .orientation import CupStructure
from .products import AbelianGroup, BalancedComplex, GroupAction, TensorComplex

__all__ = ["Built", "load_spec", "load_spec_file", "dump_explicit", "to_json_label", "from_json_label"]


@dataclass
class Built:
    kind: str
    lam: int
    factors: list[CupStructure]
    quantum: Any
    spec: dict
    extra: dict = field(default_factory=dict)

    def distinct_factors(self) -> list[CupStructure]:
        seen, out = set(), []
        for F in self.factors:
            key = json.dumps(factor_to_json(F), sort_keys=True)
            if key not in seen:
                seen.add(key)
                out.append(F)
        return out


def to_json_label(x):
    if isinstance(x, tuple):
        return [to_json_label(v) for v in x]
    return x


def from_json_label(x):
    if isinstance(x, list):
        return tuple(from_json_label(v) for v in x)
    return x


def factor_to_json(F: CupStructure) -> dict:
    C = F.complex
    checks = []
    for a in C.labels[0]:
        i, o, f = F.orientation.parts[a]
        checks.append({
            "label": to_json_label(a),
            "in": [to_json_label(x) for x in sorted(i, key=label_key)],
            "out": [to_json_label(x) for x in sorted(o, key=label_key)],
            "free": [to_json_label(x) for x in sorted(f, key=label_key)],
        })
    return {"bits": [to_json_label(x) for x in C.labels[1]], "checks": checks}


def factor_from_json(data: dict) -> CupStructure:
    try:
        bits = [from_json_label(x) for x in data["bits"]]
        checks = {}
        for ch in data["checks"]:
            lab = from_json_label(ch["label"])
            if lab in checks:
                raise SpecError(f"duplicate check label {lab!r}")
            checks[lab] = {k: [from_json_label(x) for x in ch.get(k, [])] for k in ("in", "out", "free")}
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed explicit factor: {exc}") from None
    return CupStructure.from_checks(bits, checks)


def _lam(spec: dict, override: int | None, default: int) -> int:
    lam = override if override is not None else spec.get("lambda", default)
    if not isinstance(lam, int) or lam < 1:
        raise SpecError("lambda must be a positive integer")
    return lam


def _need(spec: dict, *keys):
    missing = [k for k in keys if k not in spec]
    if missing:
        raise SpecError(f"spec of kind {spec.get('kind')!r} is missing {', '.join(missing)}")
    return [spec[k] for k in keys]


def load_spec(spec: dict, lam: int | None = None) -> Built:
    """Resolve a spec; ``lam`` overrides the spec's ``lambda`` where it is free."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SpecError("spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "torus":
        l, L = _need(spec, "lam", "L")
        if lam is not None and lam != l:
            raise SpecError("--lambda conflicts with the torus dimension")
        T = torus_code(l, L)
        return Built(kind, l, T.factors, T, spec)
    if kind == "lineon":
        (L,) = _need(spec, "L")
        if lam not in (None, 2):
            raise SpecError("the lineon code has two factors")
        T = anisotropic_lineon(L)
        return Built(kind, 2, T.factors, T, spec)
    if kind == "plaquette_ising":
        (L,) = _need(spec, "L")
        n = _lam(spec, lam, 2)
        F = plaquette_ising(L)
        return Built(kind, n, [F], TensorComplex([F] * n), spec)
    if kind == "group_algebra":
        orders, c = _need(spec, "group", "c")
        G = AbelianGroup(orders, spec.get("names"))
        celem = G.parse_element(c)
        n = _lam(spec, lam, 2)
        extra = {"group": G, "c": celem}
        if "splitting" not in spec:
            return Built(kind, n, [], None, spec, extra)
        s = Splitting.parse(G, spec["splitting"])
        F = validate_splitting(G, celem, s)
        Q = group_algebra_balanced(G, [celem] * n, [s] * n) if n >= 2 else TensorComplex([F])
        return Built(kind, n, [F] * n, Q, spec, extra)
    if kind == "bivariate_bicycle":
        orders, c1, c2, s1, s2 = _need(spec, "group", "c1", "c2", "s1", "s2")
        if lam not in (None, 2):
            raise SpecError("a two-block code has two factors")
        G = AbelianGroup(orders, spec.get("names"))
        e1, e2 = G.parse_element(c1), G.parse_element(c2)
        B = bivariate_bicycle(G, e1, e2, Splitting.parse(G, s1), Splitting.parse(G, s2))
        return Built(kind, 2, B.tensor.factors, B, spec, {"group": G})
    if kind == "sipser_spielman":
        orders, T, local = _need(spec, "group", "T", "local_code")
        G = AbelianGroup(orders, spec.get("names"))
        Tg = [G.parse_monomial(t) for t in T]
        X = cayley_graph(G, Tg)
        L = cayley_local_system(G, Tg, {c: [G.parse_monomial(s) for s in bits] for c, bits in local.items()})
        mode = spec.get("mode", "lambda3")
        if mode == "lambda2":
            F = ss_preorientation_lambda2(X, L, [G.inv(t) for t in Tg], Tg)
        elif mode == "lambda3":
            c_hat, t_hat = _need(spec, "c_hat", "t_hat")
            t = G.parse_monomial(t_hat)
            F = ss_preorientation_lambda3(X, L, c_hat, t, G.inv(t))
        else:
            raise SpecError(f"unknown mode {mode!r}")
        n = _lam(spec, lam, 3 if mode == "lambda3" else 2)
        return Built(kind, n, [F], TensorComplex([F] * n), spec)
    if kind == "explicit":
        (facs,) = _need(spec, "factors")
        factors = [factor_from_json(f) for f in facs]
        if len(factors) == 1:
            n = _lam(spec, lam, 2)
            if "group" in spec:
                raise SpecError("a group action needs at least two factors")
            return Built(kind, n, factors, TensorComplex(factors * n), spec)
        if lam is not None and lam != len(factors):
            raise SpecError("--lambda conflicts with the number of factors")
        T = TensorComplex(factors)
        if "group" in spec:
            return Built(kind, len(factors), factors, BalancedComplex(T, GroupAction.from_json(spec["group"])), spec)
        return Built(kind, len(factors), factors, T, spec)
    raise SpecError(f"unknown kind {kind!r}")


def load_spec_file(path: str, lam: int | None = None) -> Built:
    try:
        with open(path) as fh:
            spec = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None
    return load_spec(spec, lam)


def dump_explicit(b: Built) -> dict:
    """Explicit spec reproducing ``b`` exactly."""
    Q = b.quantum
    if Q is None:
        raise SpecError("nothing to dump: the spec has no orientation")
    if len(b.factors) == 1 and isinstance(Q, TensorComplex):
        return {"kind": "explicit", "lambda": b.lam, "factors": [factor_to_json(b.factors[0])]}
    factors = Q.tensor.factors if isinstance(Q, BalancedComplex) else Q.factors
    out = {"kind": "explicit", "factors": [factor_to_json(F) for F in factors]}
    if isinstance(Q, BalancedComplex):
        out["group"] = Q.action.to_json()
    return out
