"""The Artin-monoid action on the free right Z-module with basis ``x_B``.

``tau_i`` sends ``x_B`` to

* ``0`` when ``alpha_i`` lies in ``B``,
* ``x_B h_{B,i}`` when ``alpha_i`` is orthogonal to ``B``,
* ``x_{r_i B}`` when ``r_i B < B``,
* ``x_{r_i B} - m x_B`` when ``r_i B > B``,

and is extended right-linearly, so ``tau_i(x_B z) = (tau_i x_B) z``.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .coxeter_hecke import M, CoxeterGroup, HeckeElement
from .h_elements import HTable
from .poset import EdgeClass, MonoidalPoset

RepVector = dict[int, HeckeElement]


def _add(out: RepVector, m: int, z: HeckeElement) -> None:
    cur = out.get(m)
    z = z if cur is None else cur + z
    if z.is_zero():
        out.pop(m, None)
    else:
        out[m] = z


def basis_vector(G: CoxeterGroup, m: int) -> RepVector:
    return {m: HeckeElement.one(G)}


def tau(p: MonoidalPoset, ht: HTable, i: int, v: RepVector) -> RepVector:
    out: RepVector = {}
    for m, z in v.items():
        c = p.edge_class[m][i - 1]
        if c is EdgeClass.FIXES_IN_B:
            continue
        if c is EdgeClass.FIXES_PERP:
            if not p.c_nodes:
                raise AssertionError(f"alpha_{i} orthogonal to member {m} although C is empty")
            _add(out, m, z.mul_gen_left(ht.entries[m, i]))
        elif c is EdgeClass.LOWERS:
            _add(out, p.act(i, m), z)
        else:
            _add(out, p.act(i, m), z)
            _add(out, m, z.scale(-M))
    return out


def tau_word(p: MonoidalPoset, ht: HTable, word, v: RepVector) -> RepVector:
    for i in reversed(list(word)):
        v = tau(p, ht, i, v)
    return v


def right_multiply(v: RepVector, z: HeckeElement) -> RepVector:
    out: RepVector = {}
    for m, c in v.items():
        _add(out, m, c * z)
    return out


# bounds for products of at most three generators
LENGTH_BOUND = 3
DEGREE_BOUND = 3


@dataclass
class RepReport:
    pairs_checked: int = 0
    failures: list[tuple] = field(default_factory=list)
    max_length: int = 0
    max_degree: int = 0

    @property
    def within_bounds(self) -> bool:
        return self.max_length <= LENGTH_BOUND and self.max_degree <= DEGREE_BOUND

    @property
    def passed(self) -> bool:
        return not self.failures and self.within_bounds

    def merge(self, other: RepReport) -> None:
        self.pairs_checked += other.pairs_checked
        self.failures.extend(other.failures)
        self.max_length = max(self.max_length, other.max_length)
        self.max_degree = max(self.max_degree, other.max_degree)

    def summary(self) -> str:
        if self.failures:
            status = f"FAIL ({len(self.failures)} failures)"
        elif not self.within_bounds:
            status = "FAIL (T-length or m-degree above 3)"
        else:
            status = "PASS"
        return (
            f"braid relations: {status}; checked {self.pairs_checked} (pair, member) cases; "
            f"max T-length {self.max_length}, max m-degree {self.max_degree}"
        )


def _node_pairs(p: MonoidalPoset) -> list[tuple[int, int]]:
    nodes = p.rs.nodes
    return [(i, j) for i in nodes for j in nodes if i < j]


def _check_pair(p: MonoidalPoset, ht: HTable, G: CoxeterGroup, i: int, j: int, members) -> RepReport:
    rep = RepReport()
    joined = p.rs.adjacent(i, j)
    lw, rw = ((i, j, i), (j, i, j)) if joined else ((i, j), (j, i))
    for m in members:
        x = basis_vector(G, m)
        lhs = tau_word(p, ht, lw, x)
        rhs = tau_word(p, ht, rw, x)
        rep.pairs_checked += 1
        for vec in (lhs, rhs):
            for z in vec.values():
                rep.max_length = max(rep.max_length, z.max_length())
                rep.max_degree = max(rep.max_degree, z.max_degree())
        if lhs != rhs:
            rep.failures.append((i, j, m, lhs, rhs))
    return rep


_WORKER_STATE: tuple | None = None


def _worker(args) -> RepReport:
    p, ht, G = _WORKER_STATE
    i, j = args
    return _check_pair(p, ht, G, i, j, range(len(p)))


def verify_braid(p: MonoidalPoset, ht: HTable, jobs: int = 1) -> RepReport:
    """Check the braid relation of every node pair on every basis vector."""
    global _WORKER_STATE
    G = ht.group()
    pairs = _node_pairs(p)
    rep = RepReport()
    jobs = min(jobs, len(pairs), os.cpu_count() or 1)
    if jobs <= 1:
        for i, j in pairs:
            rep.merge(_check_pair(p, ht, G, i, j, range(len(p))))
        return rep
    _WORKER_STATE = (p, ht, G)
    try:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
            for part in ex.map(_worker, pairs):
                rep.merge(part)
    finally:
        _WORKER_STATE = None
    return rep


def with_edge_class(p: MonoidalPoset, m: int, i: int, cls: EdgeClass) -> MonoidalPoset:
    """Copy of ``p`` with one edge classification replaced (for mutation tests)."""
    classes = list(p.edge_class)
    row = list(classes[m])
    row[i - 1] = cls
    classes[m] = tuple(row)
    return replace(p, edge_class=classes)


SparseMatrix = dict[tuple[int, int], HeckeElement]


def matrix_of_generator(p: MonoidalPoset, ht: HTable, i: int) -> SparseMatrix:
    """Entry (row, col) is the coefficient of ``x_row`` in ``tau_i x_col``."""
    G = ht.group()
    out: SparseMatrix = {}
    for col in range(len(p)):
        for row, z in tau(p, ht, i, basis_vector(G, col)).items():
            out[row, col] = z
    return out


def matrix_mul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    by_row: dict[int, list[tuple[int, HeckeElement]]] = {}
    for (k, c), z in b.items():
        by_row.setdefault(k, []).append((c, z))
    out: SparseMatrix = {}
    for (r, k), x in a.items():
        for c, z in by_row.get(k, ()):
            prod = x * z
            cur = out.get((r, c))
            prod = prod if cur is None else cur + prod
            if prod.is_zero():
                out.pop((r, c), None)
            else:
                out[r, c] = prod
    return out


def matrix_to_json(mat: SparseMatrix) -> list[dict]:
    return [{"row": r, "col": c, "entry": z.to_json()} for (r, c), z in sorted(mat.items())]
