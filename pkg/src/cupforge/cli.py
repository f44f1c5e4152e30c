"""Command-line interface: ``cupforge <command> --spec FILE ...``.

Commands
  build   resolve a spec, write the normalized spec and an explicit dump
  check   complex validity, integrated Leibniz rule per factor, invariance
  synth   phase polynomial and multi-controlled-Z circuit with a depth bound
  action  logical action on cohomology representatives and hierarchy level
  params  [[n, k, d]] (distance by capped exhaustive search) and factor params
  search  splittings of a group-algebra element

Exit status is 0 iff every check the command performs passes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import gates
from .complexes import validate
from .constructions import search_splittings
from .css import classical_parameters, distance_exhaustive, from_complex, randomized_upper_bound
from .errors import CupforgeError
from .orientation import (
    check_associativity,
    check_integrated_leibniz,
    check_nonoverlap,
)
from .products import AbelianGroup
from .spec_io import Built, dump_explicit, load_spec_file


def _write(out_dir: str | None, name: str, text: str) -> None:
    if out_dir is None:
        return
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, name), "w") as fh:
        fh.write(text)


def _emit(result: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(result, indent=1, default=str))
        return
    for key, value in result.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, default=str)
        print(f"{key}: {value}")


def _need_quantum(b: Built) -> None:
    if b.quantum is None:
        raise CupforgeError("this spec has no orientation; add a splitting", code="no_orientation")


def cmd_build(b: Built, args) -> tuple[dict, bool]:
    _need_quantum(b)
    C = b.quantum.complex
    code = from_complex(C)
    dump = dump_explicit(b)
    _write(args.out, "spec.json", json.dumps(b.spec, indent=1))
    _write(args.out, "complex.json", json.dumps(dump))
    result = {
        "kind": b.kind,
        "lambda": b.lam,
        "dims": {str(p): d for p, d in C.dims.items()},
        "n": code.n,
        "k": code.k,
        "valid": validate(C).ok,
    }
    return result, result["valid"]


def cmd_check(b: Built, args) -> tuple[dict, bool]:
    _need_quantum(b)
    ok = True
    factors = []
    for F in b.distinct_factors():
        entry = {"checks": F.num_checks, "bits": F.num_bits}
        v = validate(F.complex)
        entry["valid"] = v.to_json()
        ok &= v.ok
        no = check_nonoverlap(F)
        entry["nonoverlap"] = no.to_json()
        if no.ok:
            assoc = check_associativity(F)
            entry["associative"] = assoc.to_json()
            ok &= assoc.ok
        entry["integral_defined"] = F.integral_defined
        ok &= F.integral_defined
        rep = check_integrated_leibniz(F, b.lam)
        entry["integrated_leibniz"] = rep.to_json()
        ok &= rep.ok
        factors.append(entry)
    Q = b.quantum
    qv = validate(Q.complex)
    inv = gates.verify_invariance(Q)
    ok &= qv.ok and inv.ok
    result = {"lambda": b.lam, "factors": factors, "quantum_valid": qv.to_json(), "invariance": inv.to_json(), "ok": ok}
    _write(args.out, "check.json", json.dumps(result, indent=1, default=str))
    return result, ok


def cmd_synth(b: Built, args) -> tuple[dict, bool]:
    _need_quantum(b)
    Q = b.quantum
    P = gates.psi_polynomial(Q)
    circ = gates.synth_circuit(P)
    labels = Q.complex.labels[1]
    cert = gates.circuit_depth_certificate(circ)
    _write(args.out, "circuit.txt", gates.circuit_to_text(circ, labels))
    _write(args.out, "circuit.json", gates.circuit_to_json(circ, labels))
    _write(args.out, "polynomial.json", json.dumps(
        {"copies": list(P.copies), "qubits_per_copy": P.n, "monomials": [list(m) for m in P.sorted_monomials()]}))
    result = {"lambda": b.lam, "qubits_per_copy": P.n, "monomials": len(P.monomials), **cert}
    return result, cert["depth"] <= cert["bound"]


def cmd_action(b: Built, args) -> tuple[dict, bool]:
    _need_quantum(b)
    Q = b.quantum
    P = gates.psi_polynomial(Q)
    inv = gates.verify_invariance(Q, P)
    if not inv.ok:
        result = {"ok": False, "invariance": inv.to_json()}
        _write(args.out, "action.json", json.dumps(result, indent=1, default=str))
        return result, False
    act = gates.logical_action(Q, P)
    level = len(act.copies) if act.terms else 0
    result = {"lambda": b.lam, "k": act.k[0], "terms": [list(t) for t in sorted(act.terms)], "level": level}
    if level == 0:
        result["diagnostic"] = "the integrated cup vanishes on all cohomology classes"
    if b.lam == 2 and act.k[0]:
        _, _, r = gates.adapted_bases(Q, P)
        result["form_rank"] = r
    _write(args.out, "action.json", json.dumps(result, indent=1))
    return result, True


def cmd_params(b: Built, args) -> tuple[dict, bool]:
    _need_quantum(b)
    code = from_complex(b.quantum.complex)
    params = distance_exhaustive(code, args.weight_cap).to_json()
    if args.random_trials and params.get("d_exact") is None and code.k:
        found = randomized_upper_bound(code, args.random_trials, seed=args.seed)
        if found is not None:
            params["d_upper"] = found[0]
    factors = [classical_parameters(F.complex, args.weight_cap).to_json() for F in b.distinct_factors()]
    result = {"quantum": params, "factors": factors}
    _write(args.out, "params.json", json.dumps(result, indent=1))
    return result, True


def cmd_search(b: Built | None, args) -> tuple[dict, bool]:
    if b is not None:
        if "group" not in b.extra or "c" not in b.extra:
            raise CupforgeError("search needs a group_algebra spec", code="spec")
        G, c = b.extra["group"], b.extra["c"]
    else:
        if not args.group or not args.element:
            raise CupforgeError("search needs --spec or both --group and --element", code="spec")
        G = AbelianGroup([int(x) for x in args.group.split(",")])
        c = G.parse_element(args.element)
    found = search_splittings(G, c)
    result = {"group": list(G.orders), "c": G.format_element(c), "splittings": [s.format(G) for s in found]}
    _write(args.out, "splittings.json", json.dumps(result, indent=1))
    return result, True


COMMANDS = {
    "build": cmd_build,
    "check": cmd_check,
    "synth": cmd_synth,
    "action": cmd_action,
    "params": cmd_params,
    "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cupforge", description="Transversal multi-controlled-Z gates from cup products.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--spec", help="JSON code spec")
    ap.add_argument("--lambda", dest="lam", type=int, default=None, help="number of code copies")
    ap.add_argument("--weight-cap", type=int, default=4, help="largest weight tried by params")
    ap.add_argument("--random-trials", type=int, default=0, help="randomized upper-bound iterations for params")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="output directory")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--group", help="search: cyclic orders, e.g. 6,12")
    ap.add_argument("--element", help="search: group-algebra element, e.g. 'x + x^-1'")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.spec is None and args.command != "search":
            raise CupforgeError("--spec is required", code="spec")
        built = load_spec_file(args.spec, args.lam) if args.spec else None
        result, ok = COMMANDS[args.command](built, args)
    except (CupforgeError, OSError) as exc:
        code = getattr(exc, "code", "error")
        print(json.dumps({"ok": False, "error": str(exc), "code": code}), file=sys.stderr)
        return 2
    _emit(result, args.format)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
