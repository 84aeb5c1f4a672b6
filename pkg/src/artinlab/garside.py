"""Garside normal forms in spherical Artin groups.

Simples are the lifts of elements of the finite Coxeter group W, indexed by
their position in a GroupTable.  An element is Delta^p x_1 ... x_k with the
x_i simple, none trivial or equal to Delta, and left-greedy: the left descent
set of x_{i+1} is contained in the right descent set of x_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .coxeter import GroupTable, NotSpherical, enumerate_group
from .diagram import DynkinDiagram, is_spherical


class GarsideError(ValueError):
    pass


def parse_word(text: str) -> list:
    """'a b a'' -> [('a', 1), ('b', 1), ('a', -1)]."""
    out = []
    for tok in text.split():
        if tok.endswith("'"):
            out.append((tok.rstrip("'"), -1 if (len(tok) - len(tok.rstrip("'"))) % 2 else 1))
        else:
            out.append((tok, 1))
    return out


def format_word(word: Sequence) -> str:
    return " ".join(s if e > 0 else s + "'" for s, e in word)


class GarsideStructure:
    """Tables for computing normal forms over one spherical diagram."""

    def __init__(self, d: DynkinDiagram, table: GroupTable | None = None):
        if not is_spherical(d):
            raise NotSpherical(f"{d} is not spherical")
        self.diagram = d
        self.table = table or enumerate_group(d)
        t = self.table
        self.n = t.rank
        self.right = t.right.tolist()
        self.left = t.left.tolist()
        self.rdesc = [int(x) for x in t.right_descent]
        self.ldesc = [int(x) for x in t.left_descent]
        self.length = [int(x) for x in t.length]
        self.inv = [int(x) for x in t.inverse]
        self.w0 = t.longest
        self.tau = [int(x) for x in t.tau]
        self.gen = [self.right[0][s] for s in range(self.n)]
        self.support = [int(x) for x in t.support_mask]

    def index(self, s) -> int:
        return self.table.group.index(s)

    # simple arithmetic ------------------------------------------------------
    def normalize_pair(self, x: int, y: int) -> tuple[int, int]:
        """Left-greedy form of the positive element x.y (both simple)."""
        right, left, rdesc, ldesc = self.right, self.left, self.rdesc, self.ldesc
        while True:
            cand = ldesc[y] & ~rdesc[x]
            if not cand:
                return x, y
            s = (cand & -cand).bit_length() - 1
            x = right[x][s]
            y = left[y][s]

    def complement(self, x: int) -> int:
        """The simple x^-1 w0, so that x * complement(x) = Delta."""
        return self.table.mul(self.inv[x], self.w0)

    @cached_property
    def _complements(self) -> list:
        return [self.complement(x) for x in range(self.table.order)]

    # elements -----------------------------------------------------------------
    def identity(self) -> "GarsideElement":
        return GarsideElement(self, 0, ())

    def delta(self, p: int = 1) -> "GarsideElement":
        return GarsideElement(self, p, ())

    def simple(self, x: int) -> "GarsideElement":
        return self.identity().mul_simple(x)

    def generator(self, s, sign: int = 1) -> "GarsideElement":
        s = self.index(s)
        if sign > 0:
            return self.simple(self.gen[s])
        # s^-1 = Delta^-1 (w0 s)
        return GarsideElement(self, -1, ()).mul_simple(self.right[self.w0][s])

    def from_word(self, word: Iterable) -> "GarsideElement":
        """Word as (letter, +-1) pairs, a string like "a b a'", or plain letters."""
        if isinstance(word, str):
            word = parse_word(word)
        g = self.identity()
        for item in word:
            s, e = item if isinstance(item, tuple) else (item, 1)
            g = self.mul_letter(g, self.index(s), e)
        return g

    def mul_letter(self, g: "GarsideElement", s: int, e: int) -> "GarsideElement":
        """g * s^e for a generator index s and sign e."""
        if e > 0:
            return g.mul_simple(self.gen[s])
        # g s^-1 = Delta^(p-1) tau(body) (w0 s)
        return GarsideElement(self, g.p - 1, tuple(self.tau[x] for x in g.body)) \
            .mul_simple(self.right[self.w0][s])

    def matsumoto_lift(self, w: int) -> tuple:
        """Reduced word of w, read as a positive word of the Artin group."""
        return self.table.word_names(w)

    def lift(self, w: int) -> "GarsideElement":
        return self.simple(w)


@dataclass(frozen=True, eq=False)
class GarsideElement:
    G: GarsideStructure
    p: int
    body: tuple

    def __eq__(self, other):
        return isinstance(other, GarsideElement) and self.G is other.G and self.p == other.p \
            and self.body == other.body

    def __hash__(self):
        return hash((self.p, self.body))

    @property
    def key(self) -> tuple:
        return (self.p,) + self.body

    def is_trivial(self) -> bool:
        return self.p == 0 and not self.body

    def is_positive(self) -> bool:
        return self.p >= 0

    def mul_simple(self, y: int) -> "GarsideElement":
        """Right multiplication by the simple y with renormalization."""
        G = self.G
        if y == 0:
            return self
        body = list(self.body) + [y]
        # slide from the right end leftwards until stable
        changed = True
        while changed:
            changed = False
            for i in range(len(body) - 2, -1, -1):
                a, b = G.normalize_pair(body[i], body[i + 1])
                if (a, b) != (body[i], body[i + 1]):
                    body[i], body[i + 1] = a, b
                    changed = True
        p = self.p
        while body and body[0] == G.w0:
            body.pop(0)
            p += 1
        while body and body[-1] == 0:
            body.pop()
        if 0 in body:
            body = [x for x in body if x != 0]
            return GarsideElement(G, p, ()).mul_word_simples(body)
        return GarsideElement(G, p, tuple(body))

    def mul_word_simples(self, simples: Iterable[int]) -> "GarsideElement":
        g = self
        for x in simples:
            g = g.mul_simple(x)
        return g

    def conjugate_delta(self, q: int) -> tuple:
        """tau^q applied to the body."""
        if q % 2 == 0:
            return self.body
        return tuple(self.G.tau[x] for x in self.body)

    def __mul__(self, other: "GarsideElement") -> "GarsideElement":
        # Delta^p X Delta^q Y = Delta^(p+q) tau^q(X) Y
        start = GarsideElement(self.G, self.p + other.p, self.conjugate_delta(other.p))
        return start.mul_word_simples(other.body)

    def inverse(self) -> "GarsideElement":
        G = self.G
        g = G.identity()
        for x in reversed(self.body):
            # x^-1 = Delta^-1 tau(complement(x))
            g = g * GarsideElement(G, -1, ()).mul_simple(G.tau[G._complements[x]])
        return g * GarsideElement(G, -self.p, ())

    def __pow__(self, k: int) -> "GarsideElement":
        base = self if k >= 0 else self.inverse()
        g = self.G.identity()
        for _ in range(abs(k)):
            g = g * base
        return g

    # divisibility and fractions -------------------------------------------
    def right_divisible_by(self, s: int) -> bool:
        """For positive self: does the generator s right-divide it in the monoid?"""
        return (self * self.G.generator(s, -1)).p >= 0

    def fraction(self) -> tuple["GarsideElement", "GarsideElement"]:
        """(b, c) positive with self = b c^-1 and no common right divisor."""
        G = self.G
        if self.p >= 0:
            return self, G.identity()
        q = -self.p
        b = GarsideElement(G, 0, ()).mul_word_simples(self.conjugate_delta(self.p))
        c = G.delta(q)
        while True:
            for s in range(G.n):
                if c.right_divisible_by(s) and b.right_divisible_by(s):
                    inv = G.generator(s, -1)
                    b, c = b * inv, c * inv
                    break
            else:
                return b, c

    def support(self) -> frozenset:
        """Smallest X with self in A_X, read off the left normal form.

        For Delta^-q x_1 ... x_k the reduced left fraction a^-1 b has
        a = d(x_q) tau(d(x_{q-1})) ... tau^(q-1)(d(x_1)) with d(x) = x^-1 Delta
        (times a power of Delta when q > k) and b = x_{q+1} ... x_k.
        """
        G = self.G
        full = (1 << G.n) - 1
        if self.p > 0:
            return frozenset(range(G.n))
        q, body = -self.p, self.body
        if q > len(body):
            return frozenset(range(G.n))
        mask = 0
        for i, x in enumerate(body):
            if i < q:
                y = G._complements[x]
                if (q - 1 - i) % 2:
                    y = G.tau[y]
                mask |= G.support[y]
            else:
                mask |= G.support[x]
            if mask == full:
                break
        return frozenset(s for s in range(G.n) if mask >> s & 1)

    def fraction_support(self) -> frozenset:
        """Letters of the reduced right fraction b c^-1 (slower cross-check of support)."""
        b, c = self.fraction()
        mask = 0
        for part in (b, c):
            if part.p > 0:
                mask |= (1 << self.G.n) - 1
            for x in part.body:
                mask |= self.G.support[x]
        return frozenset(s for s in range(self.G.n) if mask >> s & 1)

    def in_parabolic(self, X: Iterable) -> bool:
        X = {self.G.index(s) for s in X}
        return self.support() <= X

    def signed_word(self) -> list:
        """A signed word representing the element: Delta^p written as reduced words of w0."""
        G = self.G
        w0 = list(G.table.word_names(G.w0))
        out = []
        if self.p >= 0:
            for _ in range(self.p):
                out += [(s, 1) for s in w0]
        else:
            for _ in range(-self.p):
                out += [(s, -1) for s in reversed(w0)]
        for x in self.body:
            out += [(s, 1) for s in G.table.word_names(x)]
        return out

    def short_word(self) -> list:
        """Signed word a^-1 b from the reduced left fraction; stays inside the support."""
        G = self.G
        names = G.table.word_names
        if self.p >= 0:
            return self.signed_word()
        q, body = -self.p, self.body
        a = []                      # simples of a, left to right
        if q > len(body):
            a += [G.w0] * (q - len(body))
            head = len(body)
        else:
            head = q
        for i in range(head - 1, -1, -1):
            y = G._complements[body[i]]
            if (head - 1 - i) % 2:
                y = G.tau[y]
            a.append(y)
        if q > len(body) and (q - len(body)) % 2:
            # moving the extra Delta factors to the front twists the complements
            a = a[:q - len(body)] + [G.tau[x] for x in a[q - len(body):]]
        out = []
        for x in reversed(a):
            out += [(s, -1) for s in reversed(names(x))]
        for x in body[head:]:
            out += [(s, 1) for s in names(x)]
        return out

    def length_bound(self) -> int:
        return abs(self.p) * self.G.length[self.G.w0] + sum(self.G.length[x] for x in self.body)

    def __str__(self):
        parts = [f"D^{self.p}"] if self.p else []
        parts += ["(" + " ".join(self.G.table.word_names(x)) + ")" for x in self.body]
        return " ".join(parts) if parts else "1"

    def __repr__(self):
        return f"GarsideElement({self})"


def normal_form(d_or_G, word) -> GarsideElement:
    G = d_or_G if isinstance(d_or_G, GarsideStructure) else GarsideStructure(d_or_G)
    return G.from_word(word)


def is_in_parabolic(g: GarsideElement, X: Iterable) -> bool:
    return g.in_parabolic(X)


def coset_equal(g: GarsideElement, h: GarsideElement, X: Iterable) -> bool:
    """g A_X = h A_X."""
    return (h.inverse() * g).in_parabolic(X)


def matsumoto_lift(table: GroupTable, w: int) -> tuple:
    return table.word_names(w)
