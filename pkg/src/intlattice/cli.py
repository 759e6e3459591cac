"""Command-line interface: ``intlattice <subcommand> ...``.

Every subcommand prints one JSON report on stdout (``--text`` adds a short
human-readable summary on stderr) and exits with

* 0: ok / feasible / integrable
* 1: verification failure, or infeasibility / non-integrability proved
* 2: bad input
* 3: undecided (search budget exhausted, or the refutation produced no proof)
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import ratmat as rm
from .a15 import GENERATORS, SUPPORT_SETS, build_A15_plus, classify_norm3_triples, generated, named_lattices
from .embedding import embed_odd_unimodular_feasible, embed_unimodular_feasible
from .eutactic import (
    BUDGET_EXHAUSTED,
    DEFAULT_BUDGET,
    INTEGRABLE,
    decide_s_integrable,
    is_eutactic_star,
    refute_2_integrability,
)
from .lattice import Lattice
from .local import INFINITY, local_invariant, relevant_primes
from .serialize import DocumentError, dumps, load_lattice, to_json
from .shortvec import vectors_up_to
from .verify import run_checks

EXIT_CODES = {"ok": 0, "fail": 1, "bad-input": 2, "unknown": 3}


class BadInput(Exception):
    pass


def _report(command: str, inputs: dict, results: list[dict], exit_status: str) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "exit_status": exit_status}


def _result(claim: str, expected, computed, status: str) -> dict:
    return {"claim": claim, "expected": expected, "computed": computed, "status": status}


def _load(path: str) -> tuple[Lattice, dict]:
    try:
        return load_lattice(path)
    except DocumentError as exc:
        raise BadInput(str(exc)) from exc


def _gram_of(lat: Lattice):
    if not lat.is_integral():
        raise BadInput("lattice is not integral")
    return lat.gram


def cmd_invariants(args) -> dict:
    lat, doc = _load(args.file)
    g = _gram_of(lat)
    det = rm.determinant(g)
    places = [INFINITY] + relevant_primes(det)
    results = []
    for p in places:
        inv = local_invariant(g, p)
        computed = {"dim": inv.dim, "det_class": str(inv.det_class), "hasse": inv.hasse}
        results.append(_result(f"local invariant at {p}", None, computed, "ok"))
    return _report("invariants", {"file": args.file, "document": doc}, results, "ok")


def cmd_embed(args) -> dict:
    lat, doc = _load(args.file)
    g = _gram_of(lat)
    if args.rank < lat.rank:
        raise BadInput("target rank is smaller than the lattice rank")
    fn = embed_odd_unimodular_feasible if args.odd else embed_unimodular_feasible
    verdict = fn(g, args.rank)
    kind = "an odd unimodular" if args.odd else "a unimodular"
    status = "ok" if verdict.feasible else "fail"
    res = _result(f"embeds in {kind} lattice of rank {args.rank}", None, verdict.as_dict(), status)
    return _report("embed", {"file": args.file, "document": doc, "rank": args.rank, "odd": args.odd}, [res], status)


def cmd_shortvec(args) -> dict:
    lat, doc = _load(args.file)
    try:
        bound = rm.as_rational(args.bound)
        sv = vectors_up_to(lat, bound)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    listing = [{"coords": list(c), "vector": v, "norm": n} for c, v, n in zip(sv.coords, sv.vectors, sv.norms)]
    res = _result(f"vectors of norm at most {args.bound}", None, {"count": len(sv), "vectors": listing}, "ok")
    return _report("shortvec", {"file": args.file, "document": doc, "bound": args.bound}, [res], "ok")


def _named_or_file(args) -> tuple[Lattice, dict]:
    if args.named:
        if args.file:
            raise BadInput("give either a file or --named, not both")
        if args.method == "refute":
            return generated(args.named), {"named": args.named}
        return named_lattices()[args.named], {"named": args.named}
    if not args.file:
        raise BadInput("a lattice file or --named is required")
    lat, doc = _load(args.file)
    return lat, {"file": args.file, "document": doc}


def _support(args) -> tuple[int, ...]:
    if args.support:
        try:
            vals = tuple(sorted({int(x) for x in args.support.split(",") if x.strip()}))
        except ValueError as exc:
            raise BadInput("--support must be a comma-separated list of coordinates") from exc
        return vals
    if args.named:
        return SUPPORT_SETS[args.named]
    raise BadInput("--support is required for the refute method")


def cmd_s_int(args) -> dict:
    if args.scale < 1:
        raise BadInput("--scale must be positive")
    lat, inputs = _named_or_file(args)
    inputs.update({"scale": args.scale, "method": args.method})
    if args.method == "ilp":
        inputs["budget"] = args.budget
        res = decide_s_integrable(lat, args.scale, args.budget)
        computed = {"status": res.status, "nodes": res.nodes, "variables": res.variables, "equations": res.equations}
        if res.certificate is not None:
            cert = res.certificate
            computed["certificate"] = {
                "scale": cert.scale,
                "entries": [{"vector": v, "multiplicity": m} for v, m in cert.entries],
                "verified": is_eutactic_star(cert.expanded(), lat.basis, cert.scale, lat.form),
            }
        if res.status == INTEGRABLE:
            status = "ok"
        elif res.status == BUDGET_EXHAUSTED:
            status = "unknown"
        else:
            status = "fail"
        claim = f"sqrt({args.scale}) L embeds in some Z^n"
        return _report("s-int", inputs, [_result(claim, None, computed, status)], status)
    if args.scale != 2:
        raise BadInput("the refute method only handles scale 2")
    support = _support(args)
    inputs["support"] = list(support)
    big = build_A15_plus()
    if lat.ambient_dim != big.ambient_dim or lat.form is not None:
        raise BadInput("refute expects the generators of a sublattice of A15+ in R^16")
    try:
        cert = refute_2_integrability(big, lat, support)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    computed = {
        "mode": cert.mode,
        "support_set": list(cert.support_set),
        "pairs_checked": cert.pairs_checked,
        "witness": cert.witness,
        "details": cert.details,
    }
    status = "fail" if cert.proves_non_integrable else "unknown"
    claim = "complement in A15+ is not 2-integrable"
    return _report("s-int", inputs, [_result(claim, None, computed, status)], status)


def cmd_verify(args) -> dict:
    claims = run_checks(args.budget)
    results = [_result(c.claim, c.expected, c.computed, c.status) for c in claims]
    status = "ok" if all(c.status == "PASS" for c in claims) else "fail"
    return _report("verify-paper", {"budget": args.budget}, results, status)


def cmd_classify(args) -> dict:
    if args.gram:
        try:
            gram = rm.as_matrix(json.loads(args.gram))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise BadInput(f"--gram is not a JSON matrix: {exc}") from exc
        inputs = {"gram": gram}
    elif args.file:
        lat, doc = _load(args.file)
        gram = lat.gram
        inputs = {"file": args.file, "document": doc}
    else:
        raise BadInput("give --gram or a lattice file")
    try:
        orbits = classify_norm3_triples(gram)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    listing = [
        {
            "representative": [{"sign": s, "support": list(i)} for s, i in o.representative],
            "triple_intersection": o.invariant_tag[0],
            "pair_intersections": list(o.invariant_tag[1]),
        }
        for o in orbits
    ]
    res = _result("orbits of norm-3 triples under Aut(A15+)", None, {"count": len(orbits), "orbits": listing}, "ok")
    return _report("classify", inputs, [res], "ok")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intlattice", description="Exact computations on integral lattices.")
    p.add_argument("--text", action="store_true", help="also print a readable summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="local invariants at infinity and at each p dividing 2*det")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("embed", help="embedding into a unimodular lattice of given rank")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--odd", action="store_true", help="one-sided test for odd unimodular targets")
    s.add_argument("file")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("shortvec", help="all nonzero vectors up to a norm bound")
    s.add_argument("--bound", required=True, help="rational bound, e.g. 2 or 5/3")
    s.add_argument("file")
    s.set_defaults(func=cmd_shortvec)

    s = sub.add_parser("s-int", help="s-integrability by integer search or by the pair obstruction")
    s.add_argument("--scale", type=int, required=True)
    s.add_argument("--method", choices=("ilp", "refute"), default="ilp")
    s.add_argument("--support", help="comma-separated 1-based coordinates (refute)")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node limit (ilp)")
    s.add_argument("--named", choices=sorted(GENERATORS), help="use one of the four rank-12 lattices")
    s.add_argument("file", nargs="?")
    s.set_defaults(func=cmd_s_int)

    s = sub.add_parser("verify-paper", help="recompute every claim about A15+ and the rank-12 lattices")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("classify", help="classify norm-3 triples in A15+ with a given Gram matrix")
    s.add_argument("--gram", help="3x3 Gram matrix as JSON")
    s.add_argument("file", nargs="?")
    s.set_defaults(func=cmd_classify)
    return p


def _text_summary(report: dict) -> str:
    lines = [f"{report['command']}: {report['exit_status']}"]
    for r in report["results"]:
        tag = r["status"].upper()
        shown = r["computed"]
        if isinstance(shown, (dict, list)):
            shown = json.dumps(shown, sort_keys=True)
            if len(shown) > 100:
                shown = shown[:97] + "..."
        lines.append(f"  {tag:7} {r['claim']}: {shown}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv``, run the subcommand, and return (report, exit code)."""
    parser = build_parser()
    # --text only affects printing in main(); accept it anywhere on the line
    argv = [a for a in (argv or []) if a != "--text"]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return _report("usage", {"argv": list(argv or [])}, [], "ok" if code == 0 else "bad-input"), code
    try:
        report = args.func(args)
    except BadInput as exc:
        report = _report(args.command, {"argv": list(argv or [])}, [_result("input", None, str(exc), "bad-input")], "bad-input")
    report = to_json(report)
    return report, EXIT_CODES[report["exit_status"]]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report, code = run(argv)
    if report.get("command") != "usage":
        sys.stdout.write(dumps(report) + "\n")
        if "--text" in argv:
            sys.stderr.write(_text_summary(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
