"""Coxeter group W(C) on a node subset and its Hecke algebra over Z[m].

The generators satisfy ``T_s**2 == 1 - m*T_s``.  Group elements are keyed
by the images of the simple roots of ``C`` (vectors in simple-root
coordinates of the ambient diagram), which determines them uniquely.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator
from fractions import Fraction
from math import lcm

from .poset import MonoidalPoset
from .root_system import Root, RootSystem, subdiagram_type, type_name

GroupElement = tuple[Root, ...]


class Poly:
    """Polynomial in ``m`` with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self._hash = hash(self.coeffs)

    @classmethod
    def const(cls, k: int) -> Poly:
        return cls((k,))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[k] if k < len(b) else 0) for k, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-x for x in self.coeffs)

    def __sub__(self, other: Poly | int) -> Poly:
        return self + (-other)

    def __rsub__(self, other: int) -> Poly:
        return Poly.const(other) - self

    def __mul__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            return Poly(other * x for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, m: int) -> int:
        return sum(c * m**k for k, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("m" if k == 1 else f"m^{k}")
            if k and abs(c) == 1:
                parts.append(("-" if c < 0 else "+") + mono)
            else:
                parts.append(f"{c:+d}{mono}")
        return "".join(parts).lstrip("+")


ZERO = Poly()
ONE = Poly((1,))
M = Poly((0, 1))


def compute_C(p: MonoidalPoset) -> tuple[list[int], str]:
    """Nodes orthogonal to every root of B_0, with the type name of their subdiagram."""
    return list(p.c_nodes), type_name(p.c_type())


class CoxeterGroup:
    """The parabolic subgroup of W generated by the reflections of ``nodes``."""

    def __init__(self, rs: RootSystem, nodes: Iterable[int]) -> None:
        self.rs = rs
        self.nodes = tuple(sorted(nodes))
        self._pos = {j: k for k, j in enumerate(self.nodes)}
        self.identity: GroupElement = tuple(rs.simple(j) for j in self.nodes)
        node_set = set(self.nodes)
        self.positive_roots = [
            r for r in rs.positive_roots if all(c == 0 or (k + 1) in node_set for k, c in enumerate(r))
        ]
        self._height_weights = _height_weights(rs, self.nodes)

    def type(self) -> tuple[tuple[str, int], ...]:
        return subdiagram_type(self.rs.dtype, self.nodes)

    def _check(self, j: int) -> int:
        if j not in self._pos:
            raise ValueError(f"node {j} is not in C = {list(self.nodes)}")
        return self._pos[j]

    def gen(self, j: int) -> GroupElement:
        self._check(j)
        return tuple(self.rs.reflect(j, a) for a in self.identity)

    def apply(self, w: GroupElement, v: Root) -> Root:
        out = [0] * self.rs.rank
        for j, k in self._pos.items():
            c = v[j - 1]
            if c:
                for idx, x in enumerate(w[k]):
                    out[idx] += c * x
        return tuple(out)

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple(self.apply(a, img) for img in b)

    def mul_gen_right(self, w: GroupElement, j: int) -> GroupElement:
        k = self._check(j)
        wj = w[k]
        g = self.rs.gram[j - 1]
        out = []
        for idx, node in enumerate(self.nodes):
            c = int(g[node - 1])
            if c == 0:
                out.append(w[idx])
            else:
                out.append(tuple(x - c * y for x, y in zip(w[idx], wj)))
        return tuple(out)

    def mul_gen_left(self, j: int, w: GroupElement) -> GroupElement:
        self._check(j)
        return tuple(self.rs.reflect(j, img) for img in w)

    def right_descent(self, w: GroupElement, j: int) -> bool:
        return sum(w[self._check(j)]) < 0

    def left_descent(self, w: GroupElement, j: int) -> bool:
        # sign of ht(w^-1 alpha_j), from the pairings (alpha_j, w alpha_k)
        self._check(j)
        g = self.rs.gram[j - 1]
        total = 0
        for u, img in zip(self._height_weights, w):
            total += u * sum(int(a) * b for a, b in zip(g, img))
        return total < 0

    def descent(self, w: GroupElement, j: int, side: str = "right") -> bool:
        if side == "right":
            return self.right_descent(w, j)
        if side == "left":
            return self.left_descent(w, j)
        raise ValueError("side must be 'left' or 'right'")

    def length(self, w: GroupElement) -> int:
        return sum(1 for r in self.positive_roots if sum(self.apply(w, r)) < 0)

    def reduced_word(self, w: GroupElement) -> list[int]:
        word: list[int] = []
        while w != self.identity:
            j = next(j for j in self.nodes if sum(w[self._pos[j]]) < 0)
            word.append(j)
            w = self.mul_gen_right(w, j)
        word.reverse()
        return word

    def from_word(self, word: Iterable[int]) -> GroupElement:
        w = self.identity
        for j in word:
            w = self.mul_gen_right(w, j)
        return w

    def inv(self, w: GroupElement) -> GroupElement:
        return self.from_word(reversed(self.reduced_word(w)))

    def elements(self, limit: int = 100_000) -> Iterator[GroupElement]:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            yield w
            for j in self.nodes:
                u = self.mul_gen_right(w, j)
                if u not in seen:
                    if len(seen) >= limit:
                        raise MemoryError("group too large to enumerate")
                    seen.add(u)
                    queue.append(u)


class HeckeElement:
    """Finite sum of ``poly * T_w``; zero coefficients are never stored."""

    __slots__ = ("group", "terms")

    def __init__(self, group: CoxeterGroup, terms: dict[GroupElement, Poly] | None = None) -> None:
        self.group = group
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, group: CoxeterGroup) -> HeckeElement:
        return cls(group, {group.identity: ONE})

    @classmethod
    def basis(cls, group: CoxeterGroup, w: GroupElement, coeff: Poly = ONE) -> HeckeElement:
        return cls(group, {w: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: HeckeElement) -> HeckeElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return HeckeElement(self.group, out)

    def __neg__(self) -> HeckeElement:
        return HeckeElement(self.group, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + (-other)

    def scale(self, p: Poly | int) -> HeckeElement:
        if isinstance(p, int):
            p = Poly.const(p)
        return HeckeElement(self.group, {w: c * p for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def mul_gen_right(self, j: int) -> HeckeElement:
        G = self.group
        out: dict[GroupElement, Poly] = {}
        for w, c in self.terms.items():
            ws = G.mul_gen_right(w, j)
            out[ws] = out.get(ws, ZERO) + c
            if G.right_descent(w, j):
                out[w] = out.get(w, ZERO) - c * M
        return HeckeElement(G, out)

    def mul_gen_left(self, j: int) -> HeckeElement:
        G = self.group
        out: dict[GroupElement, Poly] = {}
        for w, c in self.terms.items():
            sw = G.mul_gen_left(j, w)
            out[sw] = out.get(sw, ZERO) + c
            if G.left_descent(w, j):
                out[w] = out.get(w, ZERO) - c * M
        return HeckeElement(G, out)

    def max_length(self) -> int:
        return max((self.group.length(w) for w in self.terms), default=0)

    def max_degree(self) -> int:
        return max((c.degree() for c in self.terms.values()), default=-1)

    def specialize(self, m: int) -> dict[GroupElement, int]:
        out = {w: c(m) for w, c in self.terms.items()}
        return {w: c for w, c in out.items() if c}

    def _sorted_terms(self):
        G = self.group
        words = [(G.reduced_word(w), c) for w, c in self.terms.items()]
        return sorted(words, key=lambda t: (len(t[0]), t[0]))

    def to_json(self) -> list[dict]:
        return [{"word": word, "poly": list(c.coeffs)} for word, c in self._sorted_terms()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) T[{','.join(map(str, word))}]" for word, c in self._sorted_terms())


def _height_weights(rs: RootSystem, nodes: tuple[int, ...]) -> list[int]:
    """Positive integer multiple of ``A^-1 (1, ..., 1)`` for the Cartan matrix ``A`` of ``nodes``."""
    n = len(nodes)
    if n == 0:
        return []
    a = [[Fraction(int(rs.gram[x - 1][y - 1])) for y in nodes] + [Fraction(1)] for x in nodes]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    sol = [a[r][n] for r in range(n)]
    d = lcm(*(x.denominator for x in sol))
    out = [int(x * d) for x in sol]
    assert all(x > 0 for x in out)
    return out


def hecke_gen(group: CoxeterGroup, j: int) -> HeckeElement:
    return HeckeElement.basis(group, group.gen(j))


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product ``a * b``, expanding each ``T_u`` of ``b`` along a reduced word."""
    G = a.group
    out = HeckeElement(G)
    for u, c in b.terms.items():
        part = a
        for j in G.reduced_word(u):
            part = part.mul_gen_right(j)
        out = out + part.scale(c)
    return out


def ge_identity(group: CoxeterGroup) -> GroupElement:
    return group.identity


def ge_mul(group: CoxeterGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    return group.mul(a, b)


def ge_inv(group: CoxeterGroup, a: GroupElement) -> GroupElement:
    return group.inv(a)
