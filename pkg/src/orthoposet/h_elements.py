"""Chain words ``v_{B,i}`` and the Hecke generators ``h_{B,i}``.

For ``alpha_i`` orthogonal to every root of ``B`` a chain word climbs from
``B`` to the maximum ``B_0``.  Each step takes a raising node ``j``: the
letter ``s_j`` when ``j`` and ``i`` are not joined, the letters ``s_j s_i``
(and ``i`` replaced by ``j``) when they are.  Conjugating ``s_i`` along the
word gives a simple reflection of ``C``, which is ``h_{B,i}``.

Chain choice is a convention here: the lowest raising node is taken at every
step.  The verifiers check that every other choice gives the same value.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field

from .coxeter_hecke import M, CoxeterGroup, HeckeElement, hecke_gen
from .orbit import OrthoSet
from .poset import AxiomReport, EdgeClass, MonoidalPoset, PosetError
from .root_system import Root, RootSystem

CHAIN_POLICY = "lowest raising node first"


class WellDefinednessError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ChainWord:
    word: tuple[int, ...]
    member: int
    node: int


@dataclass
class HTable:
    poset: MonoidalPoset = field(repr=False)
    entries: dict[tuple[int, int], int]
    chains: dict[tuple[int, int], tuple[int, ...]] = field(repr=False)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries[key]

    def __len__(self) -> int:
        return len(self.entries)

    def group(self) -> CoxeterGroup:
        return CoxeterGroup(self.poset.rs, self.poset.c_nodes)

    def corrupted(self, key: tuple[int, int], value: int) -> HTable:
        """Copy with one entry replaced (for mutation tests)."""
        entries = dict(self.entries)
        if key not in entries:
            raise KeyError(key)
        entries[key] = value
        return HTable(self.poset, entries, self.chains)

    def to_json(self) -> list[dict]:
        return [
            {"member": m, "i": i, "h": j, "chain": list(self.chains[m, i])}
            for (m, i), j in sorted(self.entries.items())
        ]


def member_index(p: MonoidalPoset, B: OrthoSet | int) -> int:
    if isinstance(B, int):
        return B
    try:
        return p.orbit.index_of[tuple(sorted(B))]
    except KeyError:
        raise ValueError(f"{B} is not in the orbit") from None


def _perp_root_sum(rs: RootSystem, i: int, j: int, B: OrthoSet) -> bool:
    a, b = rs.simple_index(i), rs.simple_index(j)
    return all(rs.root_gram[a, k] + rs.root_gram[b, k] == 0 for k in B)


def chain_step(p: MonoidalPoset, m: int, i: int, j: int) -> tuple[tuple[int, ...], int, int]:
    """One step along raising node ``j``: (letters, next member, next node)."""
    rs = p.rs
    members = p.orbit.members
    up = p.act(j, m)
    if not rs.adjacent(i, j):
        if p.cls(up, i) is not EdgeClass.FIXES_PERP:
            raise PosetError(f"alpha_{i} not orthogonal to r_{j}B at member {m}")
        return (j,), up, i
    if not _perp_root_sum(rs, i, j, members[up]):
        raise PosetError(f"alpha_{i}+alpha_{j} not orthogonal to r_{j}B at member {m}")
    top = p.act(i, up)
    if p.cls(top, j) is not EdgeClass.FIXES_PERP:
        raise PosetError(f"alpha_{j} not orthogonal to r_{i}r_{j}B at member {m}")
    return (j, i), top, j


def v_chain(p: MonoidalPoset, B: OrthoSet | int, i: int) -> ChainWord:
    m0 = m = member_index(p, B)
    if p.cls(m, i) is not EdgeClass.FIXES_PERP:
        raise ValueError(f"alpha_{i} is not orthogonal to member {m}")
    word: list[int] = []
    node = i
    while m != p.b0:
        ups = p.raising_nodes(m)
        if not ups:
            raise PosetError(f"member {m} is not maximal but has no raising node")
        letters, nxt, node = chain_step(p, m, node, ups[0])
        if p.level[nxt] != p.level[m] - len(letters):
            raise PosetError(f"chain step from member {m} does not climb {len(letters)} levels")
        word.extend(letters)
        m = nxt
    return ChainWord(tuple(word), m0, i)


def conjugate_root(rs: RootSystem, word, i: int) -> Root:
    """Root of ``v^-1 s_i v`` for ``v = s_{w_1} ... s_{w_k}``, made positive."""
    r = rs.simple(i)
    for j in word:
        r = rs.reflect(j, r)
    return _positive(r)


def _positive(r: Root) -> Root:
    return tuple(-x for x in r) if sum(r) < 0 else r


def root_to_c_node(p: MonoidalPoset, r: Root) -> int:
    if sum(r) == 1:
        j = r.index(1) + 1
        if j in p.c_nodes:
            return j
    raise WellDefinednessError(f"well-definedness violated: {p.rs.format_root(r)} is not a simple root of C")


def h_value(p: MonoidalPoset, B: OrthoSet | int, i: int, word=None) -> int:
    if word is None:
        word = v_chain(p, B, i).word
    return root_to_c_node(p, conjugate_root(p.rs, word, i))


def build_htable(p: MonoidalPoset) -> HTable:
    entries: dict[tuple[int, int], int] = {}
    chains: dict[tuple[int, int], tuple[int, ...]] = {}
    rs = p.rs
    # memoized along the lowest-node chain: chain(m, i) = step + chain(next)
    order = sorted(range(len(p)), key=lambda m: p.level[m])
    for m in order:
        for i in p.perp_nodes(m):
            if m == p.b0:
                word: tuple[int, ...] = ()
            else:
                ups = p.raising_nodes(m)
                if not ups:
                    raise PosetError(f"member {m} is not maximal but has no raising node")
                letters, nxt, node = chain_step(p, m, i, ups[0])
                word = letters + chains[nxt, node]
            chains[m, i] = word
            entries[m, i] = root_to_c_node(p, conjugate_root(rs, word, i))
    return HTable(p, entries, chains)


@dataclass
class Budget:
    """Literal chain enumeration limits.

    Orbits with at most ``exhaustive_members`` members get every chain of
    every pair enumerated (``max_chains`` caps the words per pair, None for
    no cap).  Larger orbits get ``samples`` random chains per pair, spread
    over every first step.
    """

    exhaustive_members: int = 1000
    max_chains: int | None = None
    samples: int = 100
    seed: int = 0


def all_chains(p: MonoidalPoset, m: int, i: int, limit: int | None = None, steps: dict | None = None):
    """Yield ``(word, conjugated root)`` for every chain from (m, i), lowest node first.

    The root is carried as (positive root index, sign) and reflected letter by
    letter through the node action table, so shared prefixes are reflected once.
    """
    rs = p.rs
    img = rs.node_image
    steps = {} if steps is None else steps
    stack = [(m, i, (), rs.simple_index(i), 1)]
    produced = 0
    while stack:
        m, i, prefix, k, sign = stack.pop()
        if m == p.b0:
            yield prefix, tuple(sign * x for x in rs.positive_roots[k])
            produced += 1
            if limit is not None and produced >= limit:
                return
            continue
        ups = p.raising_nodes(m)
        if not ups:
            raise PosetError(f"member {m} is not maximal but has no raising node")
        for j in reversed(ups):
            letters, nxt, node = _cached_step(p, steps, m, i, j)
            k2, s2 = k, sign
            for x in letters:
                k2, f = img[k2][x - 1]
                s2 *= f
            stack.append((nxt, node, prefix + letters, k2, s2))


def _cached_step(p: MonoidalPoset, steps: dict, m: int, i: int, j: int):
    step = steps.get((m, i, j))
    if step is None:
        step = steps[m, i, j] = chain_step(p, m, i, j)
    return step


def random_chain(p: MonoidalPoset, m: int, i: int, first: int, rng: random.Random, steps: dict | None = None):
    """A chain from (m, i) starting with raising node ``first``, then uniform random steps.

    Returns ``(word, conjugated root)`` like :func:`all_chains`.
    """
    rs = p.rs
    img = rs.node_image
    steps = {} if steps is None else steps
    k, sign = rs.simple_index(i), 1
    word: list[int] = []
    j = first
    while True:
        letters, m, i = _cached_step(p, steps, m, i, j)
        for x in letters:
            k, f = img[k][x - 1]
            sign *= f
        word.extend(letters)
        if m == p.b0:
            return tuple(word), tuple(sign * x for x in rs.positive_roots[k])
        j = rng.choice(p.raising_nodes(m))


def reachable_h_values(p: MonoidalPoset) -> dict[tuple[int, int], set[int]]:
    """For every (member, node) the set of h-values over all chains, by dynamic programming.

    A step along ``j`` not joined to ``i`` keeps the conjugated root, and a step
    ``s_j s_i`` turns ``alpha_i`` into ``alpha_j``; so the values at (B, i) are
    the union of the values at the successor states.
    """
    vals: dict[tuple[int, int], set[int]] = {}
    for m in sorted(range(len(p)), key=lambda m: p.level[m]):
        for i in p.perp_nodes(m):
            if m == p.b0:
                vals[m, i] = {i}
                continue
            acc: set[int] = set()
            for j in p.raising_nodes(m):
                _, nxt, node = chain_step(p, m, i, j)
                acc |= vals[nxt, node]
            vals[m, i] = acc
    return vals


def verify_h_well_defined(p: MonoidalPoset, budget: Budget | None = None, ht: HTable | None = None) -> AxiomReport:
    budget = budget or Budget()
    ht = ht or build_htable(p)
    rep = AxiomReport()
    rs = p.rs

    for (m, i), word in ht.chains.items():
        rep.tick("chain-length=level", len(word) == p.level[m], (m, i, word))
        # letters applied right to left to B_0 descend one level each and land on B
        cur, ok = p.b0, True
        for j in reversed(word):
            if p.cls(cur, j) is not EdgeClass.LOWERS:
                ok = False
                break
            cur = p.act(j, cur)
        rep.tick("word-image", ok and cur == m, (m, i, word))
    for i in p.c_nodes:
        rep.tick("h(B0,i)=i", ht.entries.get((p.b0, i)) == i, (p.b0, i))

    for (m, i), vals in reachable_h_values(p).items():
        rep.tick("all-chains-dp", vals == {ht.entries[m, i]}, (m, i, sorted(vals)))

    rng = random.Random(budget.seed)
    small = len(p) <= budget.exhaustive_members
    truncated = 0
    steps: dict = {}
    for (m, i), h in ht.entries.items():
        if small:
            pairs = all_chains(p, m, i, budget.max_chains, steps)
        elif m == p.b0:
            pairs = [((), rs.simple(i))]
        else:
            ups = p.raising_nodes(m)
            per = -(-budget.samples // len(ups))
            pairs = [random_chain(p, m, i, j, rng, steps) for j in ups for _ in range(per)]
        count = 0
        for w, r in pairs:
            count += 1
            try:
                got = root_to_c_node(p, _positive(r))
            except WellDefinednessError:
                got = None
            rep.tick("literal-chains", got == h, (m, i, w, got))
        if small and budget.max_chains is not None and count >= budget.max_chains:
            truncated += 1
    rep.notes["literal-chains-truncated-pairs"] = truncated
    rep.notes["literal-chains-exhaustive"] = int(small and truncated == 0)
    return rep


def verify_h_relations(p: MonoidalPoset, ht: HTable | None = None) -> AxiomReport:
    ht = ht or build_htable(p)
    rep = AxiomReport()
    rs = p.rs
    G = ht.group()
    one = HeckeElement.one(G) if p.c_nodes else None
    gens = {j: hecke_gen(G, j) for j in p.c_nodes}

    for j, t in gens.items():
        rep.tick("i:quadratic", t * t == one - t.scale(M), (j,))

    byb: dict[int, dict[int, int]] = defaultdict(dict)
    for (m, i), h in ht.entries.items():
        byb[m][i] = h
        rep.tick("h-in-C", h in gens, (m, i, h))

    for m, row in byb.items():
        perp = sorted(row)
        for a in perp:
            for b in perp:
                if a >= b:
                    continue
                ta, tb = gens.get(row[a]), gens.get(row[b])
                if ta is None or tb is None:
                    continue
                if not rs.adjacent(a, b):
                    rep.tick("ii:commute", ta * tb == tb * ta, (m, a, b))
                else:
                    rep.tick("iii:braid", ta * tb * ta == tb * ta * tb, (m, a, b))
        for i in perp:
            for j in rs.nodes:
                if j == i:
                    continue
                if not rs.adjacent(i, j):
                    up = p.act(j, m)
                    rep.tick("iv:h(rjB,i)=h(B,i)", ht.entries.get((up, i)) == row[i], (m, i, j))
                elif p.cls(m, j) in (EdgeClass.RAISES, EdgeClass.LOWERS):
                    top = p.act(i, p.act(j, m))
                    rep.tick("v:h(rirjB,j)=h(B,i)", ht.entries.get((top, j)) == row[i], (m, i, j))

    minimal_hits = {h for (m, _), h in ht.entries.items() if p.is_minimal(m)}
    for j in p.c_nodes:
        rep.tick("cor:surjective-at-minimal", j in minimal_hits, (j,))
    return rep
