"""Orbit classes and their tabulated invariants, read from ``data/tables.json``.

Formulas in the fixture are small integer expressions in ``n``, ``t`` and
``k``; they are evaluated by a restricted AST walker, never by ``eval``.
"""
from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass
from functools import cache
from importlib import resources
from math import factorial

from .orbit import OrthoSet, enumerate_orbit, is_admissible_moves, make_orthoset
from .poset import build_poset
from .root_system import DiagramType, Root, build_root_system, normalize_type, parse_root, type_name

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def evaluate(expr: str | int, **names: int) -> int:
    """Evaluate an integer formula such as ``fact(n)//(fact(t)*fact(n-2*t))``."""
    if isinstance(expr, int):
        return expr

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ValueError(f"unknown name {node.id!r} in {expr!r}")
            return names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        if isinstance(node, ast.Compare):
            left = walk(node.left)
            for op, right in zip(node.ops, node.comparators):
                r = walk(right)
                if not _CMPOPS[type(op)](left, r):
                    return False
                left = r
            return True
        if isinstance(node, ast.BoolOp) and isinstance(node.op, ast.And):
            return all(walk(v) for v in node.values)
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id == "fact"
            and len(node.args) == 1
        ):
            return factorial(walk(node.args[0]))
        raise ValueError(f"unsupported expression {expr!r}")

    return walk(ast.parse(str(expr), mode="eval"))


@cache
def load_fixture() -> dict:
    text = resources.files("orthoposet").joinpath("data/tables.json").read_text()
    return json.loads(text)


def weyl_factor(kind: str, m: int) -> int:
    if kind == "pow2":
        return 2**m
    if kind == "S":
        return factorial(m) if m > 0 else 1
    if kind == "WB":
        return 2**m * factorial(m) if m > 0 else 1
    if kind == "WD":
        # D_m is empty for m <= 1
        return 2 ** (m - 1) * factorial(m) if m >= 2 else 1
    if kind == "WE":
        return DiagramType("E", m).weyl_order()
    if kind == "L32":
        return 168**m
    raise ValueError(f"unknown normalizer factor {kind!r}")


def normalizer_order(factors, **names: int) -> int:
    out = 1
    for kind, arg in factors:
        out *= weyl_factor(kind, evaluate(arg, **names))
    return out


def component_type(spec, **names: int) -> tuple[tuple[str, int], ...]:
    comps = []
    for fam, rank, mult in spec:
        comps += [(fam, evaluate(rank, **names))] * evaluate(mult, **names)
    return normalize_type(comps)


@dataclass(frozen=True)
class TableRow:
    row_id: str
    orbit: int
    Y: tuple[tuple[str, int], ...]
    C: tuple[tuple[str, int], ...]
    normalizer: int


@dataclass(frozen=True)
class OrbitClass:
    """One seed of the classification of orbits of orthogonal root sets."""

    dtype: DiagramType
    size: int
    variant: int
    k: int | None
    roots: tuple[Root, ...]
    row_id: str | None
    params: tuple[tuple[str, int], ...]
    # two seeds in different W-classes that together make up one tabulated orbit count
    fused: bool = False

    def seed(self) -> OrthoSet:
        return make_orthoset(build_root_system(self.dtype), self.roots)

    def label(self) -> str:
        extra = f" k={self.k}" if self.k is not None else ""
        return f"{self.dtype} |B|={self.size} variant={self.variant}{extra}"

    def expected(self) -> TableRow | None:
        if self.row_id is None:
            return None
        spec = load_fixture()["rows"][self.row_id]
        names = dict(self.params)
        return TableRow(
            self.row_id,
            evaluate(spec["orbit"], **names),
            component_type(spec["Y"], **names),
            component_type(spec["C"], **names),
            normalizer_order(spec["normalizer"], **names),
        )


def _eps(n: int, i: int, j: int, sign: int) -> tuple[int, ...]:
    v = [0] * n
    v[i - 1] = 1
    v[j - 1] = sign
    return tuple(v)


def orbit_classes(dtype: DiagramType | str) -> list[OrbitClass]:
    if isinstance(dtype, str):
        dtype = DiagramType.parse(dtype)
    rs = build_root_system(dtype)
    n = dtype.rank
    fx = load_fixture()
    out: list[OrbitClass] = []
    if dtype.family == "A":
        for t in range(1, (n + 1) // 2 + 1):
            roots = tuple(rs.simple(i) for i in range(1, 2 * t, 2))
            out.append(OrbitClass(dtype, t, 0, None, roots, "A", (("n", n), ("t", t))))
    elif dtype.family == "D":
        for t in range(1, n // 2 + 1):
            for k in range(t + 1):
                roots = []
                for i in range(1, 2 * t, 2):
                    roots.append(rs.from_epsilon(_eps(n, i, i + 1, -1)))
                    if i < 2 * k:
                        roots.append(rs.from_epsilon(_eps(n, i, i + 1, 1)))
                row = "D-single" if k == 0 else ("D-double" if k == t else None)
                fused = row == "D-single" and 2 * t == n
                params = (("n", n), ("t", t), ("k", k))
                out.append(OrbitClass(dtype, t + k, 0, k, tuple(sorted(roots)), row, params, fused))
        if n % 2 == 0:
            roots = tuple(rs.simple(i) for i in [*range(1, n - 2, 2), n])
            params = (("n", n), ("t", n // 2), ("k", 0))
            out.append(OrbitClass(dtype, n // 2, 1, None, roots, "D-single", params, True))
    else:
        named = fx["roots"].get(str(dtype), {})
        for entry in fx["orbit_classes"]:
            if entry.get("diagram") != str(dtype):
                continue
            roots = tuple(parse_root(rs, named.get(r, r)) for r in entry["roots"])
            out.append(
                OrbitClass(dtype, entry["size"], entry["variant"], None, roots, entry["row"], (("n", n),))
            )
    return sorted(out, key=lambda c: (c.size, c.variant, -1 if c.k is None else c.k))


def seed_from_table(dtype: DiagramType | str, size: int, variant: int = 0, k: int | None = None) -> OrbitClass:
    """Look up a classification seed by set size and variant.

    For ``D_n`` variant 0 is the family with ``k`` pairs ``e_i - e_(i+1), e_i + e_(i+1)``
    (``k`` defaults to 0) and variant 1 is ``{a1, a3, ..., a_(n-3), a_n}``.
    """
    classes = orbit_classes(dtype)
    for c in classes:
        if c.size == size and c.variant == variant:
            if c.k is None or c.k == (k or 0):
                return c
    valid = ", ".join(
        f"size={c.size} variant={c.variant}" + (f" k={c.k}" if c.k is not None else "") for c in classes
    )
    raise ValueError(f"no table seed for {dtype} size={size} variant={variant}; valid: {valid}")


@dataclass
class ClassResult:
    cls: OrbitClass
    orbit: int
    admissible: bool
    admissible_moves: bool
    Y: tuple[tuple[str, int], ...]
    C: tuple[tuple[str, int], ...] | None
    stabilizer: int


def compute_class(c: OrbitClass) -> ClassResult:
    rs = build_root_system(c.dtype)
    orbit = enumerate_orbit(rs, c.seed())
    adm = orbit.admissible
    C = build_poset(orbit).c_type() if adm else None
    return ClassResult(
        c, len(orbit), adm, is_admissible_moves(orbit), orbit.orthogonal_type(), C, orbit.stabilizer_order()
    )


@dataclass
class RowDiff:
    label: str
    column: str
    expected: object
    computed: object


def diff_class(res: ClassResult, fused_total: int | None = None) -> list[RowDiff]:
    c = res.cls
    exp = c.expected()
    out = []
    lab = c.label()
    if res.admissible != res.admissible_moves:
        out.append(RowDiff(lab, "admissible(def vs moves)", res.admissible, res.admissible_moves))
    if exp is None:
        if res.admissible:
            out.append(RowDiff(lab, "admissible", False, True))
        return out
    if not res.admissible:
        out.append(RowDiff(lab, "admissible", True, False))
    orbit = fused_total if c.fused and fused_total is not None else res.orbit
    if orbit != exp.orbit:
        out.append(RowDiff(lab, "orbit", exp.orbit, orbit))
    if res.Y != exp.Y:
        out.append(RowDiff(lab, "Y", type_name(exp.Y), type_name(res.Y)))
    if res.C is not None and res.C != exp.C:
        out.append(RowDiff(lab, "C", type_name(exp.C), type_name(res.C)))
    if res.stabilizer != exp.normalizer:
        out.append(RowDiff(lab, "normalizer", exp.normalizer, res.stabilizer))
    return out


def fused_totals(results: list[ClassResult]) -> dict[tuple, int]:
    totals: dict[tuple, int] = {}
    for r in results:
        if r.cls.fused:
            key = (r.cls.dtype, r.cls.row_id, r.cls.params)
            totals[key] = totals.get(key, 0) + r.orbit
    return totals


def check_tables(diagrams) -> tuple[list[ClassResult], list[RowDiff]]:
    results = []
    for d in diagrams:
        results += [compute_class(c) for c in orbit_classes(d)]
    totals = fused_totals(results)
    diffs = []
    for r in results:
        key = (r.cls.dtype, r.cls.row_id, r.cls.params)
        diffs += diff_class(r, totals.get(key))
    return results, diffs


def desk_diagrams(max_rank: int = 8) -> list[DiagramType]:
    out = [DiagramType("A", n) for n in range(1, max_rank + 1)]
    out += [DiagramType("D", n) for n in range(4, max_rank + 1)]
    out += [DiagramType("E", n) for n in (6, 7, 8)]
    return out
