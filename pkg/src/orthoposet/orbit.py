"""Sets of mutually orthogonal positive roots and their Weyl group orbits.

An ``OrthoSet`` is a strictly increasing tuple of positive-root indices of
the ambient :class:`~orthoposet.root_system.RootSystem`.  The set action of ``w``
replaces each image root by its positive representative.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .root_system import Root, RootSystem, _component_type, height, subdiagram_type

OrthoSet = tuple[int, ...]


class NotOrthogonal(ValueError):
    pass


def make_orthoset(rs: RootSystem, roots: Iterable[Root]) -> OrthoSet:
    ids = []
    for r in roots:
        r = tuple(r)
        if r not in rs.lookup:
            raise ValueError(f"{r} is not a positive root of {rs.dtype}")
        ids.append(rs.lookup[r])
    B = tuple(sorted(set(ids)))
    if len(B) != len(ids):
        raise ValueError("repeated root")
    check_orthoset(rs, B)
    return B


def check_orthoset(rs: RootSystem, B: OrthoSet) -> None:
    if list(B) != sorted(set(B)):
        raise ValueError(f"{B} is not in canonical form")
    for a in range(len(B)):
        for b in range(a + 1, len(B)):
            if rs.root_gram[B[a], B[b]] != 0:
                raise NotOrthogonal(
                    f"{rs.positive_roots[B[a]]} and {rs.positive_roots[B[b]]} are not orthogonal"
                )


def roots_of(rs: RootSystem, B: OrthoSet) -> list[Root]:
    return [rs.positive_roots[k] for k in B]


def act_node(rs: RootSystem, i: int, B: OrthoSet) -> OrthoSet:
    img = rs.node_image
    return tuple(sorted(img[k][i - 1][0] for k in B))


def act_reflection(rs: RootSystem, delta: Root, B: OrthoSet) -> OrthoSet:
    if tuple(delta) not in rs.lookup:
        raise ValueError("reflection root must be positive")
    out = []
    for k in B:
        k2, _ = rs.find(rs.reflect_general(delta, rs.positive_roots[k]))
        out.append(k2)
    return tuple(sorted(out))


def orthogonal_nodes(rs: RootSystem, B: OrthoSet) -> list[int]:
    """Nodes ``i`` with the simple root orthogonal to every root of ``B``."""
    out = []
    for i in rs.nodes:
        s = rs.simple_index(i)
        if all(rs.root_gram[s, k] == 0 for k in B):
            out.append(i)
    return out


def other_reflection(rs: RootSystem, delta_r: Root, beta: Root, gamma: Root) -> Root:
    """Positive root of a reflection ``s`` commuting with ``r`` and with ``{beta} = rs{gamma}``."""
    if rs.inner_product(beta, gamma) != 0:
        raise ValueError("beta and gamma must be orthogonal")
    pb = rs.inner_product(beta, delta_r)
    pg = rs.inner_product(gamma, delta_r)
    if pb not in (1, -1) or pg not in (1, -1):
        raise ValueError("both roots must be moved by the reflection")
    d = tuple(b + pb * pg * g - pb * x for b, g, x in zip(beta, gamma, delta_r))
    found = rs.find(d)
    if found is None:
        raise AssertionError(f"{d} is not a root")
    return rs.positive_roots[found[0]]


@dataclass(eq=False)
class Orbit:
    """A complete W-orbit of OrthoSets with its node-action table.

    ``edges[m][i - 1]`` is the member index of ``r_i`` applied to member
    ``m``; ``fixed(m, i)`` tells whether that is ``m`` itself.
    """

    rs: RootSystem
    seed: OrthoSet
    members: list[OrthoSet]
    index_of: dict[OrthoSet, int] = field(repr=False)
    edges: list[tuple[int, ...]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.members)

    def fixed(self, m: int, i: int) -> bool:
        return self.edges[m][i - 1] == m

    @property
    def set_size(self) -> int:
        return len(self.seed)

    def stabilizer_order(self) -> int:
        order = self.rs.dtype.weyl_order()
        q, r = divmod(order, len(self.members))
        if r:
            raise AssertionError(f"orbit size {len(self.members)} does not divide |W| = {order}")
        return q

    @cached_property
    def admissible(self) -> bool:
        return is_admissible_def(self)

    def orthogonal_type(self) -> tuple[tuple[str, int], ...]:
        """Coxeter type of the roots orthogonal to the seed."""
        return orthogonal_subsystem_type(self.rs, self.seed)

    def to_json(self) -> dict:
        rs = self.rs
        n = rs.rank
        return {
            "diagram": str(rs.dtype),
            "seed": [list(r) for r in roots_of(rs, self.seed)],
            "size": len(self.members),
            "admissible": bool(self.admissible),
            "members": [list(B) for B in self.members],
            "edges": [
                {"node": i, "from": a, "to": e[i - 1]}
                for a, e in enumerate(self.edges)
                for i in range(1, n + 1)
                if e[i - 1] != a
            ],
        }


def enumerate_orbit(rs: RootSystem, seed: OrthoSet, limit: int = 5_000_000) -> Orbit:
    seed = tuple(sorted(seed))
    check_orthoset(rs, seed)
    img = rs.node_image
    n = rs.rank
    members = [seed]
    index_of = {seed: 0}
    edges: list[tuple[int, ...]] = []
    pos = 0
    while pos < len(members):
        B = members[pos]
        row = []
        for i in range(n):
            C = tuple(sorted(img[k][i][0] for k in B))
            idx = index_of.get(C)
            if idx is None:
                idx = len(members)
                if idx >= limit:
                    raise MemoryError(f"orbit exceeds {limit} members")
                index_of[C] = idx
                members.append(C)
            row.append(idx)
        edges.append(tuple(row))
        pos += 1
    return Orbit(rs, seed, members, index_of, edges)


def is_admissible_def(orbit: Orbit) -> bool:
    """Admissibility straight from the definition with non-adjacent node pairs."""
    return _first_def_violation(orbit) is None


def _first_def_violation(orbit: Orbit):
    rs = orbit.rs
    n = rs.rank
    roots = rs.positive_roots
    lookup = rs.lookup
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j and not rs.adjacent(i, j)]
    for m, B in enumerate(orbit.members):
        members = set(B)
        for i, j in pairs:
            for g in B:
                v = list(roots[g])
                v[i - 1] -= 1
                v[j - 1] += 1
                k = lookup.get(tuple(v))
                if k is not None and k in members:
                    if orbit.edges[m][i - 1] != orbit.edges[m][j - 1]:
                        return m, i, j, g
    return None


def moved_counts(orbit: Orbit, chunk: int = 4096) -> Iterator[np.ndarray]:
    """Yield, per chunk of members, ``|r_delta B \\ B|`` for every positive root delta.

    Each yielded array has shape ``(members_in_chunk, number_of_positive_roots)``.
    """
    G = np.abs(orbit.rs.root_gram) == 1
    M = np.asarray(orbit.members, dtype=np.int64).reshape(len(orbit.members), -1)
    for start in range(0, len(M), chunk):
        block = M[start : start + chunk]
        # G[block] has shape (rows, t, N)
        yield G[block].sum(axis=1)


def is_admissible_moves(orbit: Orbit) -> bool:
    """Admissibility as: every reflection moves 0, 1, 2 or 4 roots of every member."""
    for counts in moved_counts(orbit):
        if np.any((counts == 3) | (counts > 4)):
            return False
    return True


def max_moved(orbit: Orbit) -> int:
    return max(int(c.max()) for c in moved_counts(orbit))


def orthogonal_subsystem_type(rs: RootSystem, B: OrthoSet) -> tuple[tuple[str, int], ...]:
    """Coxeter type of the root subsystem orthogonal to all of ``B``."""
    perp = [k for k in range(len(rs.positive_roots)) if all(rs.root_gram[k, b] == 0 for b in B)]
    if not perp:
        return ()
    perp_set = set(perp)
    roots = rs.positive_roots
    # simple roots of the subsystem: positive roots that are not a sum of two others in it
    decomposable = set()
    for a in perp:
        for b in perp:
            s = tuple(x + y for x, y in zip(roots[a], roots[b]))
            k = rs.lookup.get(s)
            if k is not None and k in perp_set:
                decomposable.add(k)
    simples = [k for k in perp if k not in decomposable]
    adj = {a: {b for b in simples if rs.root_gram[a, b] != 0 and a != b} for a in simples}
    comps = []
    todo = set(simples)
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


def forbidden_configurations(orbit: Orbit) -> list[tuple]:
    """Root configurations that no orbit member may contain; empty when none occur."""
    rs = orbit.rs
    out = []
    roots = rs.positive_roots
    simple_idx = {i: rs.simple_index(i) for i in rs.nodes}
    for m, B in enumerate(orbit.members):
        perp = set(orthogonal_nodes(rs, B))
        for b in B:
            for c in B:
                if b == c:
                    continue
                hb, hc = height(roots[b]), height(roots[c])
                for i in rs.nodes:
                    s = simple_idx[i]
                    pb, pc = rs.root_gram[s, b], rs.root_gram[s, c]
                    if pb == 1 and pc == -1 and hb == hc + 1:
                        out.append(("i", m, i, b, c))
                    # r_i raises b and lowers c, c two steps higher, beside a perpendicular node
                    if pb == -1 and pc == 1 and hc == hb + 2:
                        for k in perp:
                            if rs.adjacent(k, i):
                                out.append(("ii", m, i, k, b, c))
    return out


def all_orthosets(rs: RootSystem, size: int) -> Iterator[OrthoSet]:
    """Every set of ``size`` mutually orthogonal positive roots, lexicographically."""
    N = len(rs.positive_roots)
    ortho = [set(np.nonzero(rs.root_gram[k] == 0)[0].tolist()) for k in range(N)]

    def extend(prefix: tuple[int, ...], candidates: list[int]):
        if len(prefix) == size:
            yield prefix
            return
        for pos, k in enumerate(candidates):
            rest = [c for c in candidates[pos + 1 :] if c in ortho[k]]
            if len(rest) + len(prefix) + 1 < size:
                continue
            yield from extend(prefix + (k,), rest)

    yield from extend((), list(range(N)))


def c_type_of(rs: RootSystem, nodes) -> tuple[tuple[str, int], ...]:
    return subdiagram_type(rs.dtype, nodes)
