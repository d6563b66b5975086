"""Command-line front end: ``orthoposet <command> --type E7 --size 3 ...``.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 for unusable input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .h_elements import CHAIN_POLICY, Budget, build_htable, verify_h_relations, verify_h_well_defined
from .orbit import _first_def_violation, enumerate_orbit, is_admissible_moves, make_orthoset, max_moved, roots_of
from .poset import NotAdmissible, build_poset, check_structure, verify_order_axioms
from .representation import matrix_of_generator, matrix_to_json, verify_braid
from .root_system import DiagramType, UnsupportedDiagram, build_root_system, parse_root, type_name
from .tables import check_tables, desk_diagrams, seed_from_table

OUT_DIR_ENV = "ORTHOPOSET_OUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _out_path(name: str) -> Path:
    path = Path(name)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit(args, text: str) -> None:
    if args.out:
        _out_path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _orbit(args):
    try:
        dtype = DiagramType.parse(args.type)
    except UnsupportedDiagram as e:
        raise UsageError(str(e)) from None
    rs = build_root_system(dtype)
    try:
        if args.roots:
            seed = make_orthoset(rs, [parse_root(rs, r) for r in args.roots.split(",")])
        elif args.size is not None:
            seed = seed_from_table(dtype, args.size, args.variant, args.k).seed()
        else:
            raise UsageError("give either --roots or --size")
    except ValueError as e:
        raise UsageError(str(e)) from None
    return rs, enumerate_orbit(rs, seed)


def _poset(args):
    rs, orbit = _orbit(args)
    try:
        return rs, build_poset(orbit)
    except NotAdmissible:
        raise UsageError(f"the orbit of this seed is not admissible ({len(orbit)} members)") from None


def cmd_orbits(args) -> int:
    rs, orbit = _orbit(args)
    if args.format == "json":
        _emit(args, _dump(orbit.to_json()))
    else:
        seed = ", ".join(rs.format_root(r) for r in roots_of(rs, orbit.seed))
        _emit(
            args,
            f"diagram     {rs.dtype}\nseed        {{{seed}}}\nsize        {len(orbit)}\n"
            f"stabilizer  {orbit.stabilizer_order()}\nY           {type_name(orbit.orthogonal_type())}\n"
            f"admissible  {'yes' if orbit.admissible else 'no'}\n",
        )
    return EXIT_OK


def cmd_admissible(args) -> int:
    rs, orbit = _orbit(args)
    by_def = orbit.admissible
    by_moves = is_admissible_moves(orbit)
    lines = [
        f"orbit size {len(orbit)}",
        f"admissible (definition): {'yes' if by_def else 'no'}",
        f"admissible (moved roots): {'yes' if by_moves else 'no'}",
        f"max roots moved by one reflection: {max_moved(orbit)}",
    ]
    bad = _first_def_violation(orbit)
    if bad:
        m, i, j, g = bad
        B = ", ".join(rs.format_root(r) for r in roots_of(rs, orbit.members[m]))
        lines.append(f"witness: B={{{B}}}, nodes {i},{j}, root {rs.format_root(rs.positive_roots[g])}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if by_def == by_moves else EXIT_FAIL


def cmd_poset(args) -> int:
    rs, p = _poset(args)
    if args.format == "dot":
        _emit(args, p.to_dot())
    elif args.format == "json":
        _emit(args, _dump(p.to_json()))
    else:
        B0 = ", ".join(rs.format_root(r, epsilon=rs.dtype.family != "E") for r in roots_of(rs, p.orbit.members[p.b0]))
        _emit(
            args,
            f"members  {len(p)}\nB0       {{{B0}}}\nlevels   {max(p.level) + 1}\n"
            f"C        {p.c_nodes} ({type_name(p.c_type())})\n",
        )
    if args.check:
        rep = verify_order_axioms(p)
        rep.merge(check_structure(p))
        print(rep.summary(), file=sys.stderr)
        return EXIT_OK if rep.passed else EXIT_FAIL
    return EXIT_OK


def _budget(args) -> Budget:
    return Budget(exhaustive_members=args.exhaustive_limit, samples=args.budget)


def cmd_h_table(args) -> int:
    _, p = _poset(args)
    ht = build_htable(p)
    if args.format == "json":
        _emit(args, _dump(ht.to_json()))
    else:
        lines = [f"# chain policy: {CHAIN_POLICY}", "member  i  h  chain"]
        for e in ht.to_json():
            lines.append(f"{e['member']:6d} {e['i']:2d} {e['h']:2d}  {' '.join(map(str, e['chain']))}")
        _emit(args, "\n".join(lines) + "\n")
    if args.check:
        rep = verify_h_well_defined(p, _budget(args), ht)
        rep.merge(verify_h_relations(p, ht))
        print(rep.summary(), file=sys.stderr)
        return EXIT_OK if rep.passed else EXIT_FAIL
    return EXIT_OK


def cmd_verify_braid(args) -> int:
    _, p = _poset(args)
    ht = build_htable(p)
    rep = verify_braid(p, ht, jobs=args.jobs)
    print(f"{len(p)} members, C = {type_name(p.c_type())}")
    print(rep.summary())
    for i, j, m, lhs, rhs in rep.failures[:5]:
        print(f"  nodes {i},{j} at member {m}: {lhs} != {rhs}")
    if args.emit_matrices:
        mats = {str(i): matrix_to_json(matrix_of_generator(p, ht, i)) for i in p.rs.nodes}
        _out_path(args.emit_matrices).write_text(_dump({"members": len(p), "matrices": mats}))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_tables(args) -> int:
    diagrams = [DiagramType.parse(args.type)] if args.type else desk_diagrams(args.max_rank)
    results, diffs = check_tables(diagrams)
    if args.format == "json":
        rows = [
            {
                "class": r.cls.label(),
                "row": r.cls.row_id,
                "orbit": r.orbit,
                "admissible": r.admissible,
                "Y": type_name(r.Y),
                "C": None if r.C is None else type_name(r.C),
                "stabilizer": r.stabilizer,
            }
            for r in results
        ]
        diff_rows = [vars(d) for d in diffs]
        _emit(args, _dump({"classes": rows, "diff": diff_rows}))
    else:
        lines = [f"{'class':34s} {'row':9s} {'orbit':>7s} adm {'Y':12s} {'C':10s} {'|W|/|orbit|':>12s}"]
        for r in results:
            lines.append(
                f"{r.cls.label():34s} {r.cls.row_id or '-':9s} {r.orbit:7d} {'yes' if r.admissible else 'no ':3s} "
                f"{type_name(r.Y):12s} {'-' if r.C is None else type_name(r.C):10s} {r.stabilizer:12d}"
            )
        lines.append("")
        lines.append(f"{len(diffs)} mismatches against the tabulated values")
        for d in diffs:
            lines.append(f"  {d.label}: {d.column} expected {d.expected}, computed {d.computed}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if not diffs else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthoposet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(name, func, formats, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--type", required=True, help="diagram such as A5, D6, E7")
        sp.add_argument("--size", type=int, help="set size of a tabulated seed")
        sp.add_argument("--variant", type=int, default=0, help="which seed of that size (default 0)")
        sp.add_argument("--k", type=int, default=None, help="D_n: number of pairs e_i-e_j, e_i+e_j")
        sp.add_argument("--roots", help='explicit seed, e.g. "a1,a3" or "e1+e2,e3+e4"')
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help=f"output file (relative to ${OUT_DIR_ENV} if set)")
        sp.set_defaults(func=func)
        return sp

    seeded("orbits", cmd_orbits, ["text", "json"], "enumerate an orbit")
    seeded("admissible", cmd_admissible, ["text"], "decide admissibility two ways")
    sp = seeded("poset", cmd_poset, ["dot", "json", "text"], "build the monoidal poset")
    sp.add_argument("--check", action="store_true", help="also verify the order axioms")
    sp = seeded("h-table", cmd_h_table, ["json", "text"], "compute the elements h_{B,i}")
    sp.add_argument("--check", action="store_true", help="verify well-definedness and relations")
    sp.add_argument("--budget", type=int, default=100, help="sampled chains per pair on large orbits")
    sp.add_argument("--exhaustive-limit", type=int, default=1000, help="enumerate every chain up to this orbit size")
    sp = seeded("verify-braid", cmd_verify_braid, ["text"], "check the braid relations of the action")
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--emit-matrices", metavar="PATH", help="write all generator matrices as JSON")

    sp = sub.add_parser("tables", help="recompute the orbit tables and diff them")
    sp.add_argument("--type", help="restrict to one diagram")
    sp.add_argument("--max-rank", type=int, default=8)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, UnsupportedDiagram) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
