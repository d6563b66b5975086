"""Positive root systems of simply laced types in simple-root coordinates.

Nodes are labelled ``1..n`` following Bourbaki.  A root is a tuple of
integer coefficients over the simple roots; index ``k`` of the tuple holds
the coefficient of the simple root of node ``k + 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

Root = tuple[int, ...]


class UnsupportedDiagram(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DiagramType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        ok = (
            (self.family == "A" and self.rank >= 1)
            or (self.family == "D" and self.rank >= 4)
            or (self.family == "E" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise UnsupportedDiagram(f"unsupported diagram {self.family}{self.rank}")

    @classmethod
    def parse(cls, name: str) -> DiagramType:
        m = re.fullmatch(r"\s*([ADEade])_?(\d+)\s*", name)
        if not m:
            raise UnsupportedDiagram(f"unsupported diagram {name!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def edges(self) -> list[tuple[int, int]]:
        n = self.rank
        if self.family == "A":
            return [(i, i + 1) for i in range(1, n)]
        if self.family == "D":
            return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        # E: 1-3-4-5-...-n with 2 attached to 4
        return [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]

    def weyl_order(self) -> int:
        """Order of the Weyl group."""
        n = self.rank
        if self.family == "A":
            return factorial(n + 1)
        if self.family == "D":
            return 2 ** (n - 1) * factorial(n)
        return {6: 51840, 7: 2903040, 8: 696729600}[n]

    def positive_root_count(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family == "D":
            return n * (n - 1)
        return {6: 36, 7: 63, 8: 120}[n]


@dataclass(eq=False)
class RootSystem:
    """The positive roots of a simply laced diagram, with lookup tables.

    ``positive_roots`` is sorted by ``(height, coefficients)``.  Use
    :func:`build_root_system` (cached) rather than the constructor.
    """

    dtype: DiagramType
    gram: np.ndarray
    positive_roots: list[Root]
    lookup: dict[Root, int] = field(repr=False)
    # node_image[k][i-1] = (index, sign) of r_i applied to positive root k
    node_image: list[tuple[tuple[int, int], ...]] = field(repr=False)
    # pairwise inner products of positive roots
    root_gram: np.ndarray = field(repr=False)

    @property
    def rank(self) -> int:
        return self.dtype.rank

    @property
    def nodes(self) -> range:
        return self.dtype.nodes

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.gram[i - 1, j - 1] == -1

    def simple(self, i: int) -> Root:
        v = [0] * self.rank
        v[i - 1] = 1
        return tuple(v)

    def simple_index(self, i: int) -> int:
        return self.lookup[self.simple(i)]

    def inner_product(self, a: Root, b: Root) -> int:
        if len(a) != self.rank or len(b) != self.rank:
            raise ValueError("dimension mismatch")
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def reflect(self, i: int, r: Root) -> Root:
        g = self.gram[i - 1]
        c = int(sum(int(g[k]) * r[k] for k in range(self.rank)))
        if c == 0:
            return tuple(r)
        out = list(r)
        out[i - 1] -= c
        return tuple(out)

    def reflect_general(self, delta: Root, r: Root) -> Root:
        """``r - (delta, r) delta``; the result need not be a root."""
        c = self.inner_product(delta, r)
        return tuple(x - c * d for x, d in zip(r, delta))

    def find(self, r: Root) -> tuple[int, int] | None:
        """``(index, sign)`` with ``r == sign * positive_roots[index]``."""
        r = tuple(r)
        k = self.lookup.get(r)
        if k is not None:
            return k, 1
        k = self.lookup.get(tuple(-x for x in r))
        if k is not None:
            return k, -1
        return None

    def is_root(self, r: Root) -> bool:
        return self.find(r) is not None

    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    # -- epsilon coordinates (A_n and D_n only) -------------------------

    def to_epsilon(self, r: Root) -> tuple[int, ...]:
        n = self.rank
        if self.dtype.family == "A":
            v = [0] * (n + 1)
            for k, c in enumerate(r):
                v[k] += c
                v[k + 1] -= c
            return tuple(v)
        if self.dtype.family == "D":
            v = [0] * n
            for k, c in enumerate(r[: n - 1]):
                v[k] += c
                v[k + 1] -= c
            v[n - 2] += r[n - 1]
            v[n - 1] += r[n - 1]
            return tuple(v)
        raise ValueError("epsilon coordinates exist only for types A and D")

    def from_epsilon(self, v: tuple[int, ...]) -> Root:
        n = self.rank
        partial = np.cumsum(v)
        if self.dtype.family == "A":
            if len(v) != n + 1 or partial[-1] != 0:
                raise ValueError(f"{v} is not in the A{n} root lattice")
            return tuple(int(x) for x in partial[:n])
        if self.dtype.family == "D":
            if len(v) != n:
                raise ValueError("dimension mismatch")
            s = int(partial[n - 2])
            last = Fraction(s + v[n - 1], 2)
            prev = Fraction(s - v[n - 1], 2)
            if last.denominator != 1:
                raise ValueError(f"{v} is not in the D{n} root lattice")
            return tuple(int(x) for x in partial[: n - 2]) + (int(prev), int(last))
        raise ValueError("epsilon coordinates exist only for types A and D")

    def format_root(self, r: Root, epsilon: bool = False) -> str:
        if epsilon:
            v = self.to_epsilon(r)
            terms = [(c, f"e{k + 1}") for k, c in enumerate(v) if c]
        else:
            terms = [(c, f"a{k + 1}") for k, c in enumerate(r) if c]
        return _join_terms(terms)

    def to_json(self) -> dict:
        return {
            "type": str(self.dtype),
            "positive_roots": [list(r) for r in self.positive_roots],
        }


def _join_terms(terms: list[tuple[int, str]]) -> str:
    out = ""
    for c, name in terms:
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        out += f"{sign}{mag}{name}"
    return out.lstrip("+") or "0"


def gram_matrix(dtype: DiagramType) -> np.ndarray:
    n = dtype.rank
    g = 2 * np.eye(n, dtype=np.int64)
    for i, j in dtype.edges():
        g[i - 1, j - 1] = g[j - 1, i - 1] = -1
    return g


_CACHE: dict[DiagramType, RootSystem] = {}


def build_root_system(dtype: DiagramType | str) -> RootSystem:
    if isinstance(dtype, str):
        dtype = DiagramType.parse(dtype)
    if dtype in _CACHE:
        return _CACHE[dtype]
    g = gram_matrix(dtype)
    n = dtype.rank
    simples = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                c = int(g[i] @ np.asarray(r))
                if c == 0:
                    continue
                img = list(r)
                img[i] -= c
                img = tuple(img)
                if min(img) >= 0 and img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    roots = sorted(seen, key=lambda r: (sum(r), r))
    if len(roots) != dtype.positive_root_count():
        raise AssertionError(f"{dtype}: built {len(roots)} positive roots")
    lookup = {r: k for k, r in enumerate(roots)}
    arr = np.asarray(roots, dtype=np.int64)
    root_gram = arr @ g @ arr.T
    pairing = arr @ g  # pairing[k, i] = (root_k, alpha_{i+1})
    node_image = []
    for k, r in enumerate(roots):
        row = []
        for i in range(n):
            c = int(pairing[k, i])
            img = list(r)
            img[i] -= c
            img = tuple(img)
            if img in lookup:
                row.append((lookup[img], 1))
            else:
                row.append((lookup[tuple(-x for x in img)], -1))
        node_image.append(tuple(row))
    rs = RootSystem(dtype, g, roots, lookup, node_image, root_gram)
    _CACHE[dtype] = rs
    return rs


def height(r: Root) -> int:
    return sum(r)


_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?([ae])(\d+)")


def parse_root(rs: RootSystem, text: str) -> Root:
    """Parse ``"a1+2*a4"`` (simple roots) or ``"e1-e2"`` (epsilon form).

    ``a0`` denotes the highest root.  Raises ``ValueError`` unless the
    result is a root of ``rs``.
    """
    s = text.replace(" ", "")
    pos = 0
    coeffs = [0] * rs.rank
    eps: dict[int, int] = {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.start() != pos:
            raise ValueError(f"cannot parse root literal {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = sign * int(m.group(2) or 1)
        k = int(m.group(4))
        if m.group(3) == "a":
            if k == 0:
                for idx, x in enumerate(rs.highest_root()):
                    coeffs[idx] += c * x
            elif 1 <= k <= rs.rank:
                coeffs[k - 1] += c
            else:
                raise ValueError(f"no node {k} in {rs.dtype}")
        else:
            eps[k] = eps.get(k, 0) + c
        pos = m.end()
    if eps:
        dim = rs.rank + 1 if rs.dtype.family == "A" else rs.rank
        if max(eps) > dim or min(eps) < 1:
            raise ValueError(f"epsilon index out of range in {text!r}")
        v = tuple(eps.get(k, 0) for k in range(1, dim + 1))
        for idx, x in enumerate(rs.from_epsilon(v)):
            coeffs[idx] += x
    r = tuple(coeffs)
    if not rs.is_root(r):
        raise ValueError(f"{text!r} is not a root of {rs.dtype}")
    return r


def subdiagram_type(dtype: DiagramType, nodes) -> tuple[tuple[str, int], ...]:
    """Coxeter type of the subdiagram induced on ``nodes``.

    Returned as a sorted tuple of ``(family, rank)`` components; the empty
    tuple is the empty diagram.
    """
    nodes = set(nodes)
    adj: dict[int, set[int]] = {v: set() for v in nodes}
    for i, j in dtype.edges():
        if i in nodes and j in nodes:
            adj[i].add(j)
            adj[j].add(i)
    comps = []
    todo = set(nodes)
    while todo:
        start = todo.pop()
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v] - comp:
                comp.add(w)
                stack.append(w)
        todo -= comp
        comps.append(_component_type(comp, adj))
    return tuple(sorted(comps))


def _component_type(comp: set[int], adj: dict[int, set[int]]) -> tuple[str, int]:
    branch = [v for v in comp if len(adj[v]) >= 3]
    if not branch:
        return ("A", len(comp))
    (center,) = branch
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", len(comp))
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", len(comp))
    raise AssertionError(f"not a simply laced Dynkin diagram: arms {arms}")


def normalize_type(components) -> tuple[tuple[str, int], ...]:
    """Rewrite small D's and drop empty factors (D1, D0, A0 are empty)."""
    out = []
    for fam, rank in components:
        if rank <= 0 or (fam == "D" and rank <= 1):
            continue
        if fam == "D" and rank == 2:
            out += [("A", 1), ("A", 1)]
        elif fam == "D" and rank == 3:
            out.append(("A", 3))
        else:
            out.append((fam, rank))
    return tuple(sorted(out))


def type_name(components) -> str:
    if not components:
        return "empty"
    return "".join(f"{f}{r}" for f, r in components)
