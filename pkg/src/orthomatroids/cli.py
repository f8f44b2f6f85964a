"""Command-line front end.

Exit codes: 0 success / property holds, 1 a checked property fails,
2 usage or input error.  Every command is deterministic for a fixed input
and configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import axioms, generators as gen, lattice as lat, roundtrip
from .components import component_ranks, components, is_irreducible
from .errors import (
    InvalidInstance,
    NotOrthomatroid,
    NotPropositionalSystem,
    NotSimple,
    NotTransitive,
    OrthoError,
    RankMismatch,
)
from .orthoset import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    DEFAULT_SEED,
    Orthoset,
    check_closure_laws,
    check_galois,
    closure,
    mask_of,
    members,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# errors meaning "the instance lacks a property", as opposed to bad input
PROPERTY_ERRORS = (NotOrthomatroid, NotSimple, NotPropositionalSystem, NotTransitive, RankMismatch)


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"{path}: invalid JSON: {exc}") from None


def load_orthoset(path: str) -> Orthoset:
    data = _read_json(path)
    if isinstance(data, dict) and "leq_pairs" in data:
        raise InvalidInstance(f"{path}: expected an orthoset, got a lattice")
    return Orthoset.from_json(data)


def load_any(path: str) -> Orthoset | lat.FiniteOrthoLattice:
    data = _read_json(path)
    if isinstance(data, dict) and "leq_pairs" in data:
        return lat.FiniteOrthoLattice.from_json(data)
    return Orthoset.from_json(data)


def parse_subset(M: Orthoset, spec: str) -> int:
    """Comma-separated indices or labels; the empty string is the empty set."""
    out = []
    for tok in (t.strip() for t in spec.split(",")):
        if not tok:
            continue
        if M.labels is not None and tok in M.labels:
            out.append(M.labels.index(tok))
            continue
        try:
            idx = int(tok)
        except ValueError:
            raise UsageError(f"unknown element {tok!r}") from None
        if not 0 <= idx < M.n:
            raise UsageError(f"element {idx} out of range for n={M.n}")
        out.append(idx)
    return mask_of(out)


def _elem(M: Orthoset, x: int) -> str:
    return f"{x} ({M.labels[x]})" if M.labels is not None else str(x)


def _set(M: Orthoset, elements) -> str:
    idx = "{" + ",".join(str(i) for i in elements) + "}"
    if M.labels is None:
        return idx
    return idx + " " + "{" + ",".join(M.labels[i] for i in elements) + "}"


def _witness_text(M: Orthoset, w: dict) -> str:
    parts = [f"F={_set(M, w['F'])}"]
    if w.get("x") is not None:
        parts.append(f"x={_elem(M, w['x'])}")
    if w.get("y") is not None:
        parts.append(f"y={_elem(M, w['y'])}")
    if w.get("J") is not None:
        parts.append(f"J={_set(M, w['J'])}")
    return ", ".join(parts)


def _verdict_line(M: Orthoset, v: axioms.AxiomVerdict) -> str:
    if v.holds:
        return f"{v.axiom.value}: holds ({v.closed_sets_checked} closed sets)"
    return f"{v.axiom.value}: FAILS at {_witness_text(M, v.witness)}"


def _propsys_lines(L: lat.OrthoLattice, report: lat.PropSysReport) -> list[str]:
    lines = []
    for v in report.verdicts():
        if v.holds:
            line = f"  {v.property}: yes"
            if v.note:
                line += f" ({v.note})"
        else:
            w = ", ".join(
                f"{k}={L.node_label(val) if k != 'x' else val}" for k, val in v.witness.items() if val is not None
            )
            line = f"  {v.property}: FAILS at {w}"
        lines.append(line)
    return lines


def cmd_check(args) -> int:
    M = load_orthoset(args.instance)
    laws = check_galois(M, args.exhaustive_limit, seed=args.seed) + check_closure_laws(
        M, args.exhaustive_limit, seed=args.seed
    )
    closed = lat.closed_sets(M, args.node_budget)
    ep = axioms.check_exchange(M, closed)
    sp = axioms.check_straightening(M, closed)
    ob = axioms.check_orthobasis_axiom(M, closed)
    is_om = ep.holds and sp.holds
    simple = roundtrip.is_simple(M)
    rank = irreducible = report = L = None
    if is_om:
        rank = axioms.rank(M, check=False)
        if simple:
            irreducible = is_irreducible(M, check=False)
        L = lat.ClosedSetLattice(M, closed)
        report = lat.is_propositional_system(L, M)

    if args.format == "json":
        out = {
            "orthoset": {"n": M.n, "orthogonal_pairs": len(M.pairs()), "valid": True},
            "laws": [r.to_json() for r in laws],
            "axioms": [v.to_json() for v in (ep, sp, ob)],
            "orthomatroid": is_om,
            "simple": simple,
            "rank": rank,
            "irreducible": irreducible,
            "propositional_system": report.to_json(L) if report else None,
        }
        print(_dump(out))
    else:
        print(f"orthoset: valid (n={M.n}, {len(M.pairs())} orthogonal pairs)")
        failed = [r for r in laws if not r.holds]
        mode = "exhaustive" if all(r.exhaustive for r in laws) else "sampled"
        if failed:
            print(f"closure laws: FAIL ({', '.join(r.law.value for r in failed)}; {mode})")
        else:
            print(f"closure laws: hold ({len(laws)} laws, {mode})")
        for v in (ep, sp, ob):
            print(_verdict_line(M, v))
        summary = [f"orthomatroid: {'yes' if is_om else 'no'}", f"simple: {'yes' if simple else 'no'}"]
        if is_om:
            summary.append(f"rank: {rank}")
            if simple:
                summary.append(f"irreducible: {'yes' if irreducible else 'no'}")
            else:
                summary.append("irreducible: n/a (not simple; run simplify first)")
        print("; ".join(summary))
        if report is not None:
            print(f"propositional system: {'yes' if report else 'no'}")
            for line in _propsys_lines(L, report):
                print(line)
    return EXIT_OK if is_om else EXIT_FAIL


def _lattice_of(obj, node_budget: int) -> tuple[lat.OrthoLattice, Orthoset | None]:
    if isinstance(obj, Orthoset):
        return lat.build_lattice(obj, node_budget), obj
    return obj, None


def cmd_lattice(args) -> int:
    L, _ = _lattice_of(load_any(args.instance), args.node_budget)
    fmt = args.format or "json"
    if fmt == "dot":
        sys.stdout.write(L.to_dot())
    elif fmt == "json":
        print(L.dumps())
    else:
        print(f"{L.size} nodes, {len(L.atoms)} atoms, height {L.height()}")
        covers: dict[int, list[int]] = {}
        for i, j in L.hasse:
            covers.setdefault(i, []).append(j)
        for i in range(L.size):
            up = ", ".join(L.node_label(j) for j in covers.get(i, []))
            print(f"  [{i}] {L.node_label(i)}  ortho={L.node_label(L.ortho[i])}  covered by: {up or '-'}")
    return EXIT_OK


def cmd_propsys(args) -> int:
    L, M = _lattice_of(load_any(args.instance), args.node_budget)
    report = lat.is_propositional_system(L, M)
    if args.format == "json":
        print(_dump(report.to_json(L)))
    else:
        print(f"propositional system: {'yes' if report else 'no'}")
        for line in _propsys_lines(L, report):
            print(line)
    return EXIT_OK if report else EXIT_FAIL


def cmd_basis(args) -> int:
    M = load_orthoset(args.instance)
    span = parse_subset(M, args.span) if args.span is not None else M.full
    start = parse_subset(M, args.start)
    B = axioms.complete_orthobasis(M, span, start)
    # postconditions re-checked before anything is printed
    assert start & ~B.elements == 0
    assert axioms.is_orthoindependent(M, B.elements)
    assert B.spans == closure(M, span)
    if args.format == "json":
        print(_dump({"basis": members(B.elements), "spans": members(B.spans)}))
    else:
        print("B = {" + ",".join(str(x) for x in members(B.elements)) + "}")
        if M.labels is not None:
            print("labels: {" + ",".join(M.labels[x] for x in members(B.elements)) + "}")
        print(f"spans: {_set(M, members(B.spans))}")
    return EXIT_OK


def cmd_rank(args) -> int:
    M = load_orthoset(args.instance)
    span = parse_subset(M, args.span) if args.span is not None else M.full
    value = axioms.rank(M, span, verify=True if args.verify else None)
    if args.format == "json":
        print(_dump({"rank": value, "span": members(closure(M, span))}))
    else:
        print(f"rank: {value}")
    return EXIT_OK


def cmd_components(args) -> int:
    M = load_orthoset(args.instance)
    if not roundtrip.is_simple(M):
        x = next(x for x in range(M.n) if closure(M, 1 << x) != 1 << x)
        raise NotSimple(x, members(closure(M, 1 << x)))
    part = components(M)
    ranks = component_ranks(M, part)
    if args.format == "json":
        blocks = [
            {"elements": members(b), "size": b.bit_count(), "rank": r} for b, r in zip(part.blocks, ranks)
        ]
        print(_dump({"components": blocks, "index": list(part.index)}))
        return EXIT_OK
    k = len(part)
    if k == 1:
        print(f"1 component, size {part.blocks[0].bit_count()}, rank {ranks[0]}")
    else:
        print(f"{k} components")
        for i, (b, r) in enumerate(zip(part.blocks, ranks)):
            print(f"  [{i}] size {b.bit_count()}, rank {r}: {_set(M, members(b))}")
    return EXIT_OK


def cmd_simplify(args) -> int:
    M = load_orthoset(args.instance)
    simple, quotient = roundtrip.simplify(M)
    if args.format == "text":
        print(f"{M.n} elements -> {simple.n} elements")
        for x, q in enumerate(quotient):
            print(f"  {M.name(x)} -> {simple.name(q)}")
    else:
        print(_dump({"orthoset": simple.to_json(), "quotient_map": list(quotient)}))
    return EXIT_OK


def cmd_iso(args) -> int:
    A, B = load_any(args.first), load_any(args.second)
    if isinstance(A, Orthoset) != isinstance(B, Orthoset):
        raise UsageError("iso needs two orthosets or two lattices")
    if isinstance(A, Orthoset):
        found = roundtrip.ortho_isomorphic(A, B)
        reason = roundtrip.iso_obstruction(A, B)
    else:
        found = roundtrip.lattice_isomorphic(A, B)
        reason = roundtrip.lattice_obstruction(A, B)
    if found is None:
        reason = reason or "exhaustive search found no bijection"
        if args.format == "json":
            print(_dump({"isomorphic": False, "reason": reason}))
        else:
            print(f"NOT ISOMORPHIC: {reason}")
        return EXIT_FAIL
    mapping = list(found.mapping)
    if args.format == "json":
        print(_dump({"isomorphic": True, "mapping": mapping}))
    else:
        print(json.dumps(mapping))
    return EXIT_OK


def cmd_gen(args) -> int:
    kind = args.family
    if kind == "discrete":
        print(gen.discrete(args.n).dumps())
    elif kind == "mo":
        print(gen.mo(args.n).dumps())
    elif kind == "random":
        print(gen.random_orthoset(args.n, args.density, args.gen_seed).dumps())
    elif kind == "rays":
        form_kind = gen.FormKind(args.form)
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        vectors = gen.parse_ray_file(text, form_kind)
        if not vectors:
            raise InvalidInstance(f"{args.file}: no vectors")
        weights = None
        if args.weights:
            try:
                weights = tuple(int(w) for w in args.weights.split(","))
            except ValueError:
                raise UsageError(f"bad weights {args.weights!r}") from None
        form = gen.FormSpec(form_kind, len(vectors[0]), weights)
        M, _ = gen.from_rays(vectors, form, drop_isotropic=args.drop_isotropic)
        print(M.dumps())
    elif kind == "enum":
        found = gen.enumerate_orthomatroids(args.n, up_to_iso=not args.labeled, max_n=args.max_n)
        print(_dump([M.to_json() for M in found]))
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, default_format: str | None = "text") -> None:
    p.add_argument("--format", choices=["json", "dot", "text"], default=default_format)
    p.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT)
    p.add_argument("--node-budget", type=int, default=lat.DEFAULT_NODE_BUDGET)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthomatroids", description="Orthosets, orthomatroids and their lattices of closed sets."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="axiom report for an orthoset")
    p.add_argument("instance")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lattice", help="lattice of closed sets (JSON, DOT or text)")
    p.add_argument("instance")
    _add_common(p, default_format=None)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("propsys", help="propositional-system report for an orthoset or lattice")
    p.add_argument("instance")
    _add_common(p)
    p.set_defaults(func=cmd_propsys)

    p = sub.add_parser("basis", help="complete an orthoindependent set to an orthobasis")
    p.add_argument("instance")
    p.add_argument("--span", default=None, help="subset whose closure is spanned (default: all)")
    p.add_argument("--start", default="", help="orthoindependent starting set")
    _add_common(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("rank", help="rank of the closure of a subset")
    p.add_argument("instance")
    p.add_argument("--span", default=None)
    p.add_argument("--verify", action="store_true", help="force the all-orthobases check")
    _add_common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("components", help="irreducible components of a simple orthomatroid")
    p.add_argument("instance")
    _add_common(p)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("simplify", help="simple orthomatroid with the same lattice")
    p.add_argument("instance")
    _add_common(p, default_format="json")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("iso", help="ortho-isomorphism between two orthosets or two lattices")
    p.add_argument("first")
    p.add_argument("second")
    _add_common(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("gen", help="generate instances")
    gsub = p.add_subparsers(dest="family", required=True)
    g = gsub.add_parser("discrete")
    g.add_argument("n", type=int)
    g = gsub.add_parser("mo")
    g.add_argument("n", type=int)
    g = gsub.add_parser("random")
    g.add_argument("n", type=int)
    g.add_argument("density", type=float)
    g.add_argument("gen_seed", type=int, metavar="seed")
    g = gsub.add_parser("rays")
    g.add_argument("file")
    g.add_argument("--form", choices=[k.value for k in gen.FormKind], default="euclidean")
    g.add_argument("--weights", default=None, help="comma-separated diagonal form weights")
    g.add_argument("--drop-isotropic", action="store_true")
    g = gsub.add_parser("enum")
    g.add_argument("n", type=int)
    g.add_argument("--labeled", action="store_true", help="keep every labelled orthomatroid")
    g.add_argument("--max-n", type=int, default=gen.DEFAULT_ENUM_MAX_N)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        for flag in ("exhaustive_limit", "node_budget"):
            if getattr(args, flag, 1) <= 0:
                raise UsageError(f"--{flag.replace('_', '-')} must be positive")
        return args.func(args)
    except PROPERTY_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OrthoError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
