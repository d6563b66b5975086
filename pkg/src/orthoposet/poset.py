"""The monoidal poset on an admissible orbit.

Two OrthoSets are compared by the minimal heights of their set differences.
On an admissible orbit ``B`` and ``r_i B`` are always comparable, which gives
every (member, node) pair one of four edge classes.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import islice

from .orbit import Orbit, OrthoSet, orthogonal_nodes, roots_of
from .root_system import RootSystem, height, subdiagram_type


class Ordering(enum.Enum):
    LESS = "<"
    GREATER = ">"
    EQUAL = "="
    INCOMPARABLE = "?"


class EdgeClass(enum.IntEnum):
    FIXES_IN_B = 0
    FIXES_PERP = 1
    RAISES = 2
    LOWERS = 3


class PosetError(RuntimeError):
    """Internal inconsistency: a structural property of the poset failed."""


class NotAdmissible(ValueError):
    pass


def compare(rs: RootSystem, B: OrthoSet, C: OrthoSet) -> Ordering:
    if B == C:
        return Ordering.EQUAL
    sb, sc = set(B), set(C)
    hb = min(height(rs.positive_roots[k]) for k in sb - sc)
    hc = min(height(rs.positive_roots[k]) for k in sc - sb)
    if hb < hc:
        return Ordering.LESS
    if hb > hc:
        return Ordering.GREATER
    return Ordering.INCOMPARABLE


def classify_edge(rs: RootSystem, i: int, B: OrthoSet) -> EdgeClass:
    s = rs.simple_index(i)
    if s in B:
        return EdgeClass.FIXES_IN_B
    if all(rs.root_gram[s, k] == 0 for k in B):
        return EdgeClass.FIXES_PERP
    img = tuple(sorted(rs.node_image[k][i - 1][0] for k in B))
    rel = compare(rs, img, B)
    if rel is Ordering.LESS:
        return EdgeClass.LOWERS
    if rel is Ordering.GREATER:
        return EdgeClass.RAISES
    raise PosetError(f"r_{i}B and B are {rel.name.lower()} for B={B}")


@dataclass(eq=False)
class MonoidalPoset:
    orbit: Orbit
    edge_class: list[tuple[EdgeClass, ...]] = field(repr=False)
    b0: int
    level: list[int] = field(repr=False)
    # parent[m] = (member one level up, node) along the lowest-node tree; None at b0
    parent: list[tuple[int, int] | None] = field(repr=False)
    c_nodes: list[int]

    @property
    def rs(self) -> RootSystem:
        return self.orbit.rs

    def __len__(self) -> int:
        return len(self.orbit)

    def cls(self, m: int, i: int) -> EdgeClass:
        return self.edge_class[m][i - 1]

    def act(self, i: int, m: int) -> int:
        return self.orbit.edges[m][i - 1]

    @cached_property
    def _raising(self) -> list[list[int]]:
        return [[i for i, c in enumerate(row, 1) if c is EdgeClass.RAISES] for row in self.edge_class]

    def raising_nodes(self, m: int) -> list[int]:
        return self._raising[m]

    def lowering_nodes(self, m: int) -> list[int]:
        return [i for i in self.rs.nodes if self.edge_class[m][i - 1] is EdgeClass.LOWERS]

    def perp_nodes(self, m: int) -> list[int]:
        return [i for i in self.rs.nodes if self.edge_class[m][i - 1] is EdgeClass.FIXES_PERP]

    def is_minimal(self, m: int) -> bool:
        return not self.lowering_nodes(m)

    def lt(self, a: int, b: int) -> bool:
        members = self.orbit.members
        return compare(self.rs, members[a], members[b]) is Ordering.LESS

    def tree_word(self, m: int) -> list[int]:
        """Nodes ``i_1 .. i_s`` with ``B = r_{i_1} ... r_{i_s} B_0``, descending at each step."""
        word = []
        while self.parent[m] is not None:
            m, i = self.parent[m]
            word.append(i)
        return word

    def c_type(self) -> tuple[tuple[str, int], ...]:
        return subdiagram_type(self.rs.dtype, self.c_nodes)

    def to_json(self) -> dict:
        out = self.orbit.to_json()
        out["b0"] = self.b0
        out["levels"] = list(self.level)
        out["edge_class"] = [[c.name for c in row] for row in self.edge_class]
        out["c_nodes"] = list(self.c_nodes)
        return out

    def to_dot(self) -> str:
        rs = self.rs
        lines = [f'digraph "{rs.dtype}" {{', "  rankdir=BT;"]
        for m, B in enumerate(self.orbit.members):
            label = ", ".join(rs.format_root(r) for r in roots_of(rs, B))
            lines.append(f'  {m} [label="{m} (level {self.level[m]})\\n{{{label}}}"];')
        for m in range(len(self.orbit)):
            for i in rs.nodes:
                if self.edge_class[m][i - 1] is EdgeClass.RAISES:
                    lines.append(f'  {m} -> {self.act(i, m)} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def maximal_element(p: MonoidalPoset) -> OrthoSet:
    return p.orbit.members[p.b0]


def build_poset(orbit: Orbit) -> MonoidalPoset:
    if not orbit.admissible:
        raise NotAdmissible("orbit not admissible")
    rs = orbit.rs
    classes = [tuple(classify_edge(rs, i, B) for i in rs.nodes) for B in orbit.members]
    tops = [m for m, row in enumerate(classes) if EdgeClass.RAISES not in row]
    if len(tops) != 1:
        raise PosetError(f"expected one maximal member, found {len(tops)}")
    b0 = tops[0]
    level = [-1] * len(orbit)
    parent: list[tuple[int, int] | None] = [None] * len(orbit)
    level[b0] = 0
    queue = deque([b0])
    while queue:
        m = queue.popleft()
        for i in rs.nodes:
            if classes[m][i - 1] is EdgeClass.LOWERS:
                t = orbit.edges[m][i - 1]
                if level[t] < 0:
                    level[t] = level[m] + 1
                    parent[t] = (m, i)
                    queue.append(t)
    if min(level) < 0:
        raise PosetError("some members are not reachable from B0 by lowering")
    c_nodes = orthogonal_nodes(rs, orbit.members[b0])
    return MonoidalPoset(orbit, classes, b0, level, parent, c_nodes)


@dataclass
class AxiomReport:
    checked: dict[str, int] = field(default_factory=dict)
    failures: dict[str, tuple] = field(default_factory=dict)
    notes: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def tick(self, clause: str, ok: bool, witness: tuple) -> None:
        self.checked[clause] = self.checked.get(clause, 0) + 1
        if not ok and clause not in self.failures:
            self.failures[clause] = witness

    def merge(self, other: AxiomReport) -> None:
        for k, v in other.checked.items():
            self.checked[k] = self.checked.get(k, 0) + v
        for k, v in other.failures.items():
            self.failures.setdefault(k, v)
        self.notes.update(other.notes)

    def summary(self) -> str:
        width = max((len(k) for k in [*self.checked, *self.notes]), default=0)
        lines = []
        for k in sorted(self.checked):
            status = "FAIL" if k in self.failures else "ok"
            lines.append(f"{k:{width}s} {self.checked[k]:9d} {status}")
        for k in sorted(self.notes):
            lines.append(f"{k:{width}s} {self.notes[k]:9d} (note)")
        return "\n".join(lines)


def verify_order_axioms(p: MonoidalPoset) -> AxiomReport:
    """Check the exchange properties of raising and lowering on every member.

    Clause keys: ``comparable``, ``perp-neighbour``, ``commuting-descents``,
    ``adjacent-descents``, ``height-two-root``, ``equal-raises`` and
    ``exchange-1`` to ``exchange-5``.
    """
    rs = p.rs
    rep = AxiomReport()
    members = p.orbit.members
    nodes = list(rs.nodes)
    simple = {i: rs.simple_index(i) for i in nodes}
    adj = {(i, j): rs.adjacent(i, j) for i in nodes for j in nodes}
    lt = p.lt
    r = p.act
    E = EdgeClass

    for B in range(len(members)):
        S = members[B]
        Sset = set(S)
        cls = p.edge_class[B]
        for i in nodes:
            c = cls[i - 1]
            moved = any(abs(rs.root_gram[simple[i], k]) == 1 for k in S)
            rel = compare(rs, members[r(i, B)], S)
            rep.tick("comparable", rel is not Ordering.INCOMPARABLE and (not moved or r(i, B) != B), (B, i))
            if c not in (E.FIXES_IN_B, E.FIXES_PERP):
                rep.tick("exchange-5", lt(r(i, B), B) or lt(B, r(i, B)), (B, i))

        for i in nodes:
            for j in nodes:
                if i == j:
                    continue
                a = adj[i, j]
                riB, rjB = r(i, B), r(j, B)
                if a and cls[i - 1] is E.FIXES_PERP:
                    if cls[j - 1] is E.LOWERS:
                        rep.tick("perp-neighbour", lt(r(i, rjB), rjB), (B, i, j))
                    if cls[j - 1] is E.RAISES:
                        rep.tick("perp-neighbour", lt(rjB, r(i, rjB)), (B, i, j))
                if not a and lt(riB, B) and lt(rjB, B) and riB != rjB:
                    rirjB = r(i, rjB)
                    rep.tick(
                        "commuting-descents",
                        rirjB == r(j, riB) and lt(rirjB, rjB) and lt(rirjB, riB),
                        (B, i, j),
                    )
                if a and lt(riB, B) and lt(rjB, B):
                    rirjB, rjriB = r(i, rjB), r(j, riB)
                    top = r(i, rjriB)
                    ok = rirjB == rjB or (
                        lt(rirjB, rjB) and lt(rjriB, riB) and lt(top, rirjB) and lt(top, rjriB)
                    )
                    rep.tick("adjacent-descents", ok and top == r(j, rirjB), (B, i, j))
                    if r(i, rjB) == rjB:
                        s = rs.lookup[tuple(x + y for x, y in zip(rs.simple(i), rs.simple(j)))]
                        rep.tick("height-two-root", s in Sset, (B, i, j))
                if riB == rjB and lt(B, riB):
                    rep.tick("equal-raises", _equal_raise_ok(rs, S, i, j) and not a, (B, i, j))
                if not a:
                    rirjB = r(i, rjB)
                    if lt(rirjB, riB) and lt(riB, B):
                        rep.tick("exchange-1", lt(rirjB, rjB) and lt(rjB, B), (B, i, j))
                    if lt(B, riB) and lt(B, rjB) and riB != rjB:
                        rep.tick("exchange-2", lt(riB, rirjB) and lt(rjB, rirjB), (B, i, j))
                else:
                    rirjB, rjriB = r(i, rjB), r(j, riB)
                    if lt(B, riB) and lt(B, rjB):
                        ok = (
                            lt(riB, rjriB)
                            and lt(rjriB, r(i, rjriB))
                            and lt(rjB, rirjB)
                            and lt(rirjB, r(j, rirjB))
                        )
                        rep.tick("exchange-3", ok, (B, i, j))
                    rjrirjB = r(j, rirjB)
                    if lt(rjrirjB, rjriB) and lt(rjriB, riB) and lt(riB, B):
                        ok = lt(rjrirjB, rirjB) and lt(rirjB, rjB) and lt(rjB, B)
                        rep.tick("exchange-4", ok, (B, i, j))
    return rep


def _equal_raise_ok(rs: RootSystem, S: OrthoSet, i: int, k: int) -> bool:
    si, sk = rs.simple_index(i), rs.simple_index(k)
    moved = [b for b in S if rs.root_gram[si, b] != 0 or rs.root_gram[sk, b] != 0]
    h = min(height(rs.positive_roots[b]) for b in moved)
    for b in moved:
        if height(rs.positive_roots[b]) != h:
            continue
        v = list(rs.positive_roots[b])
        v[i - 1] += 1
        v[k - 1] += 1
        if rs.lookup.get(tuple(v)) not in S:
            return False
    return True


def check_structure(p: MonoidalPoset) -> AxiomReport:
    """Edge antisymmetry, unique maximum, level/word-length agreement."""
    rs = p.rs
    rep = AxiomReport()
    E = EdgeClass
    n = len(p.orbit)
    for m in range(n):
        for i in rs.nodes:
            c = p.cls(m, i)
            t = p.act(i, m)
            back = p.cls(t, i)
            ok = (
                (c is E.RAISES and back is E.LOWERS)
                or (c is E.LOWERS and back is E.RAISES)
                or (c in (E.FIXES_IN_B, E.FIXES_PERP) and t == m)
            )
            rep.tick("antisym", ok, (m, i))
            if c is E.RAISES:
                # a raising move goes exactly one level up (shortest words)
                rep.tick("level-step", p.level[t] == p.level[m] - 1, (m, i))
    tops = [m for m in range(n) if not p.raising_nodes(m)]
    rep.tick("unique-max", tops == [p.b0], tuple(tops))
    rep.tick("level0", p.level[p.b0] == 0, (p.b0,))

    # shortest words from B0 in the full orbit graph are descending at every step
    dist = [-1] * n
    dist[p.b0] = 0
    queue = deque([p.b0])
    while queue:
        m = queue.popleft()
        for i in rs.nodes:
            t = p.act(i, m)
            if dist[t] < 0:
                dist[t] = dist[m] + 1
                queue.append(t)
    for m in range(n):
        rep.tick("level=dist", dist[m] == p.level[m], (m,))
        for i in rs.nodes:
            t = p.act(i, m)
            if dist[t] == dist[m] + 1:
                rep.tick("geodesic-descends", p.cls(m, i) is E.LOWERS, (m, i))

    # left descents of a minimal word raise B
    for m in range(n):
        word = p.tree_word(m)
        for i in rs.nodes:
            v = rs.simple(i)
            for a in word:
                v = rs.reflect(a, v)
            if sum(v) < 0:
                rep.tick("word-descent-raises", p.cls(m, i) is E.RAISES, (m, i))
    return rep


def upward_closure(p: MonoidalPoset, m: int) -> set[int]:
    """All members strictly above ``m`` in the transitive closure of raising edges."""
    seen: set[int] = set()
    stack = [m]
    while stack:
        x = stack.pop()
        for i in p.raising_nodes(x):
            t = p.act(i, x)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def check_closure_in_compare(p: MonoidalPoset, limit: int | None = None) -> AxiomReport:
    """Every pair in the transitive closure of raising edges is ``LESS`` under :func:`compare`."""
    rep = AxiomReport()
    members = p.orbit.members
    for m in islice(range(len(members)), limit):
        above = upward_closure(p, m)
        rep.tick("acyclic", m not in above, (m,))
        for t in above:
            rep.tick("closure<compare", p.lt(m, t), (m, t))
    return rep


def check_compare_transitive(p: MonoidalPoset) -> AxiomReport:
    """Transitivity and antisymmetry of :func:`compare` over all member triples."""
    rep = AxiomReport()
    rs = p.rs
    members = p.orbit.members
    n = len(members)
    less = [[compare(rs, members[a], members[b]) is Ordering.LESS for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            if less[a][b]:
                rep.tick("antisym-compare", not less[b][a], (a, b))
                for c in range(n):
                    if less[b][c]:
                        rep.tick("transitive", less[a][c], (a, b, c))
    return rep
