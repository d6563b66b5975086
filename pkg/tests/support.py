"""Cached orbit builders and independent oracles shared by the tests."""
from __future__ import annotations

import itertools
from functools import cache

from orthoposet.h_elements import build_htable
from orthoposet.orbit import enumerate_orbit, make_orthoset
from orthoposet.poset import build_poset
from orthoposet.root_system import build_root_system, parse_root
from orthoposet.tables import orbit_classes, seed_from_table


@cache
def orbit_for(dtype: str, size: int, variant: int = 0, k: int | None = None):
    c = seed_from_table(dtype, size, variant, k)
    return enumerate_orbit(build_root_system(dtype), c.seed())


@cache
def orbit_of_roots(dtype: str, roots: tuple[str, ...]):
    rs = build_root_system(dtype)
    return enumerate_orbit(rs, make_orthoset(rs, [parse_root(rs, r) for r in roots]))


@cache
def poset_for(dtype: str, size: int, variant: int = 0, k: int | None = None):
    return build_poset(orbit_for(dtype, size, variant, k))


@cache
def htable_for(dtype: str, size: int, variant: int = 0, k: int | None = None):
    return build_htable(poset_for(dtype, size, variant, k))


def admissible_classes(dtypes):
    """(dtype, size, variant, k) of every tabulated admissible seed."""
    out = []
    for d in dtypes:
        for c in orbit_classes(d):
            if c.row_id is not None:
                out.append((str(c.dtype), c.size, c.variant, c.k))
    return out


# ---- oracles -------------------------------------------------------------

def eps_positive_roots(family: str, n: int) -> set[tuple[int, ...]]:
    """Positive roots written in the orthonormal basis, listed directly."""
    out = set()
    if family == "A":
        for i, j in itertools.combinations(range(n + 1), 2):
            v = [0] * (n + 1)
            v[i], v[j] = 1, -1
            out.add(tuple(v))
    elif family == "D":
        for i, j in itertools.combinations(range(n), 2):
            for s in (1, -1):
                v = [0] * n
                v[i], v[j] = 1, s
                out.add(tuple(v))
    return out


def eps_height(family: str, n: int, v) -> int:
    """Height of a positive root from its orthonormal coordinates."""
    idx = [k + 1 for k, x in enumerate(v) if x]
    i, j = idx
    if family == "A" or v[j - 1] == -1:
        return j - i
    return 2 * n - i - j


def norm2_vectors_d(n: int) -> set[tuple[int, ...]]:
    """All integer vectors of squared length 2 in the D_n lattice (the roots)."""
    out = set()
    for i, j in itertools.combinations(range(n), 2):
        for a in (1, -1):
            for b in (1, -1):
                v = [0] * n
                v[i], v[j] = a, b
                out.add(tuple(v))
    return out


def _pair(gram, a, b) -> int:
    n = len(a)
    return sum(a[x] * gram[x][y] * b[y] for x in range(n) for y in range(n) if a[x] and b[y])


def oracle_orbit(rs, seed_roots) -> set[frozenset]:
    """Orbit closure under every reflection, with plain-Python gram arithmetic."""
    gram = [[int(x) for x in row] for row in rs.gram]
    deltas = list(rs.positive_roots)

    def canon(r):
        return r if sum(r) > 0 else tuple(-x for x in r)

    start = frozenset(canon(tuple(r)) for r in seed_roots)
    seen = {start}
    todo = [start]
    while todo:
        B = todo.pop()
        for d in deltas:
            C = frozenset(canon(tuple(x - _pair(gram, d, r) * y for x, y in zip(r, d))) for r in B)
            if C not in seen:
                seen.add(C)
                todo.append(C)
    return seen


def oracle_moves(rs, B_roots) -> list[int]:
    """For every positive root delta, how many roots of B its reflection moves."""
    gram = [[int(x) for x in row] for row in rs.gram]
    return [sum(1 for r in B_roots if abs(_pair(gram, d, r)) == 1) for d in rs.positive_roots]


# Hecke algebra of the symmetric group in permutation form

def perm_length(w) -> int:
    return sum(1 for a, b in itertools.combinations(range(len(w)), 2) if w[a] > w[b])


def perm_times_s(w, j):
    w = list(w)
    w[j - 1], w[j] = w[j], w[j - 1]
    return tuple(w)


def perm_hecke_mul_gen(x: dict, j: int) -> dict:
    """Right multiplication by T_{s_j}; coefficients are dicts degree -> int."""
    out: dict = {}

    def add(w, poly):
        cur = out.setdefault(w, {})
        for d, c in poly.items():
            cur[d] = cur.get(d, 0) + c
            if cur[d] == 0:
                del cur[d]
        if not cur:
            del out[w]

    for w, poly in x.items():
        ws = perm_times_s(w, j)
        add(ws, poly)
        if perm_length(ws) < perm_length(w):
            add(w, {d + 1: -c for d, c in poly.items()})
    return out


# ---- acceptance report ---------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def record(n: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {n} ({title}): {'PASS' if ok else 'FAIL'}  [{detail}; {seconds:.1f} s]"
    ACCEPTANCE_LINES[n] = line
    print(line)
