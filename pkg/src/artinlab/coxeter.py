"""Coxeter groups through the canonical reflection representation.

Matrices live in Z[theta]^(n x n), stored as integer arrays of shape
``(n, n, deg)`` (coefficients of 1, theta, ..., theta^(deg-1)).  The entries
``2B_st = -2cos(pi/m_st)`` are integral in theta because the minimal polynomial
is monic, so every group element has an integral matrix.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .diagram import DiagramError, DynkinDiagram, classify
from .exactnum import ExactReal

DEFAULT_BUDGET = int(os.environ.get("ARTINLAB_BUDGET", "60000"))
# entries of finite Coxeter groups stay tiny; anything this large means growth
OVERFLOW_GUARD = 2**50


class GroupTooLargeOrInfinite(RuntimeError):
    def __init__(self, limit, reason=""):
        super().__init__(f"group enumeration exceeded limit {limit}{': ' + reason if reason else ''}")
        self.limit = limit


class NotSpherical(ValueError):
    pass


class UnknownGenerator(DiagramError):
    pass


def _structure_tensor(minpoly: Sequence[int]) -> np.ndarray:
    """T[i, j, k] = coefficient of theta^k in theta^(i+j) reduced mod the monic minimal polynomial."""
    deg = len(minpoly) - 1
    powers = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(2 * deg - 1):
        powers.append(cur)
        # multiply by theta and reduce
        top = cur[-1]
        nxt = [0] + cur[:-1]
        nxt = [nxt[k] - top * minpoly[k] for k in range(deg)]
        cur = nxt
    T = np.zeros((deg, deg, deg), dtype=np.int64)
    for i in range(deg):
        for j in range(deg):
            T[i, j] = powers[i + j]
    return T


class CoxeterGroup:
    """Arithmetic of the canonical representation of the Coxeter group of a diagram."""

    def __init__(self, d: DynkinDiagram):
        self.diagram = d
        self.n = d.rank
        self.field = d.field
        self.deg = self.field.degree
        self.T = _structure_tensor(self.field.minpoly)
        n, deg = self.n, self.deg
        # c[s, j] = 2B_sj in Z[theta]
        c = np.zeros((n, n, deg), dtype=np.int64)
        for s in range(n):
            for j in range(n):
                if s == j:
                    c[s, j, 0] = 2
                else:
                    x = -self.field.two_cos(d.m(s, j))
                    for k, v in enumerate(x.coeffs):
                        assert v.denominator == 1
                        c[s, j, k] = int(v)
        self.c = c
        # multiplication-by-c[s, j] as a deg x deg matrix acting on coefficient vectors
        self.cmul = np.einsum("ijk,sqj->sqik", self.T, c)

    @cached_property
    def gen_matrices(self) -> list:
        return [self.right_mul(self.identity(), s) for s in range(self.n)]

    def identity(self, dtype=object) -> np.ndarray:
        M = np.zeros((self.n, self.n, self.deg), dtype=dtype)
        for i in range(self.n):
            M[i, i, 0] = 1
        return M

    def index(self, s) -> int:
        if isinstance(s, (int, np.integer)):
            if 0 <= s < self.n:
                return int(s)
            raise UnknownGenerator(f"generator index {s} out of range")
        try:
            return self.diagram.vertices.index(s)
        except ValueError:
            raise UnknownGenerator(f"unknown generator {s!r}") from None

    # products ---------------------------------------------------------
    def right_mul(self, M: np.ndarray, s: int) -> np.ndarray:
        """M * rho(s): column j becomes M[:, j] - M[:, s] * 2B_sj.  Works batched on leading axes."""
        col = M[..., :, s, :]
        delta = np.einsum("...pi,jik->...pjk", col, self.cmul[s].astype(M.dtype))
        return M - delta

    def left_mul(self, s: int, M: np.ndarray) -> np.ndarray:
        """rho(s) * M: row s becomes M[s, :] - sum_j 2B_sj M[j, :]."""
        out = M.copy()
        row = np.einsum("jqi,jik->qk", M, self.cmul[s].astype(M.dtype))
        out[s] = M[s] - row
        return out

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return np.einsum("pri,rqj,ijk->pqk", A, B, self.T.astype(A.dtype))

    def word_matrix(self, word: Iterable) -> np.ndarray:
        M = self.identity()
        for s in word:
            M = self.right_mul(M, self.index(s))
        return M

    # signs --------------------------------------------------------------
    def to_exact(self, coeffs) -> ExactReal:
        return ExactReal(self.field, [int(x) for x in coeffs])

    def root_sign(self, vec: np.ndarray) -> int:
        """Sign of a root given as (n, deg) coefficients: all coordinates share one sign."""
        for i in range(vec.shape[0]):
            if np.any(vec[i] != 0):
                return self.to_exact(vec[i]).sign()
        return 0

    def is_right_descent(self, M: np.ndarray, s: int) -> bool:
        return self.root_sign(M[:, s, :]) < 0

    def right_descents(self, M: np.ndarray) -> list:
        return [s for s in range(self.n) if self.is_right_descent(M, s)]

    def is_identity(self, M: np.ndarray) -> bool:
        return bool(np.array_equal(M, self.identity(M.dtype)))

    # words ------------------------------------------------------------
    def reduced_word_of(self, M: np.ndarray) -> tuple:
        """A reduced word for the element with matrix M, peeling right descents."""
        letters = []
        M = M.copy()
        while True:
            for s in range(self.n):
                if self.is_right_descent(M, s):
                    letters.append(s)
                    M = self.right_mul(M, s)
                    break
            else:
                break
        if not self.is_identity(M):
            raise AssertionError("descent peeling did not reach the identity")
        return tuple(reversed(letters))

    def reduce(self, word: Iterable) -> tuple:
        return self.reduced_word_of(self.word_matrix(word))

    def length(self, word: Iterable) -> int:
        return len(self.reduce(word))

    def equal(self, u: Iterable, v: Iterable) -> bool:
        return bool(np.array_equal(self.word_matrix(u), self.word_matrix(v)))

    def is_identity_word(self, word: Iterable) -> bool:
        return self.is_identity(self.word_matrix(word))

    def double_coset_min(self, word: Iterable, X: Iterable, Y: Iterable) -> tuple:
        """Reduced word of the minimal element of W_X w W_Y."""
        X = [self.index(s) for s in X]
        Y = [self.index(s) for s in Y]
        w = list(self.reduce(word))
        changed = True
        while changed:
            changed = False
            inv = self.word_matrix(reversed(w))
            for s in X:
                if self.is_right_descent(inv, s):
                    w = list(self.reduce([s] + w))
                    changed = True
                    break
            if changed:
                continue
            M = self.word_matrix(w)
            for t in Y:
                if self.is_right_descent(M, t):
                    w = list(self.reduce(w + [t]))
                    changed = True
                    break
        return tuple(w)

    def in_parabolic_product(self, word: Iterable, X: Iterable, Y: Iterable) -> bool:
        """w in W_X W_Y, decided by reducing to the minimal double coset representative."""
        return len(self.double_coset_min(word, X, Y)) == 0

    def support(self, word: Iterable) -> frozenset:
        return frozenset(self.reduce(word))

    # roots ------------------------------------------------------------
    def apply_to_root(self, M: np.ndarray, root: np.ndarray) -> np.ndarray:
        """M applied to a vector given as (n, deg) coefficients."""
        return np.einsum("pri,rj,ijk->pk", M, root, self.T.astype(M.dtype))

    def simple_root(self, s: int) -> np.ndarray:
        v = np.zeros((self.n, self.deg), dtype=object)
        v[s, 0] = 1
        return v

    def positive_roots(self, limit: int = DEFAULT_BUDGET) -> list:
        """Positive roots (closure of simple roots under simple reflections), finite groups only."""
        gens = self.gen_matrices
        seen = {}
        queue = deque()
        for s in range(self.n):
            r = self.simple_root(s)
            seen[r.tobytes() if r.dtype != object else _key(r)] = r
            queue.append(r)
        while queue:
            r = queue.popleft()
            for s in range(self.n):
                x = self.apply_to_root(gens[s], r)
                if self.root_sign(x) < 0:
                    continue
                k = _key(x)
                if k not in seen:
                    seen[k] = x
                    queue.append(x)
                    if len(seen) > limit:
                        raise GroupTooLargeOrInfinite(limit, "too many roots")
        return sorted(seen.values(), key=lambda r: (_height(r), _key(r)))


def _key(a: np.ndarray) -> tuple:
    return tuple(int(x) for x in a.ravel())


def _height(r) -> int:
    return int(sum(int(x) for x in r[:, 0]))


@dataclass
class GroupTable:
    """Finite Coxeter group with multiplication tables indexed by BFS order."""

    group: CoxeterGroup
    matrices: np.ndarray            # (N, n, n, deg) int64
    parent: np.ndarray              # BFS parent index (-1 for identity)
    last: np.ndarray                # last letter of the BFS reduced word
    length: np.ndarray
    right: np.ndarray               # right[w, s] = index of w*s
    left: np.ndarray = None         # left[w, s] = index of s*w
    inverse: np.ndarray = None
    right_descent: np.ndarray = None  # bitmask
    left_descent: np.ndarray = None
    longest: int = -1
    reflections: list = field(default_factory=list)
    index_of: dict = field(default_factory=dict, repr=False)

    @property
    def diagram(self) -> DynkinDiagram:
        return self.group.diagram

    @property
    def order(self) -> int:
        return len(self.length)

    @property
    def rank(self) -> int:
        return self.group.n

    def __len__(self):
        return self.order

    def word(self, w: int) -> tuple:
        out = []
        while w:
            out.append(int(self.last[w]))
            w = int(self.parent[w])
        return tuple(reversed(out))

    def word_names(self, w: int) -> tuple:
        return tuple(self.diagram.vertices[s] for s in self.word(w))

    def element(self, word: Iterable) -> int:
        w = 0
        for s in word:
            w = int(self.right[w, self.group.index(s)])
        return w

    def mul(self, x: int, y: int) -> int:
        for s in self.word(y):
            x = int(self.right[x, s])
        return x

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def descents_right(self, w: int) -> list:
        m = int(self.right_descent[w])
        return [s for s in range(self.rank) if m >> s & 1]

    def descents_left(self, w: int) -> list:
        m = int(self.left_descent[w])
        return [s for s in range(self.rank) if m >> s & 1]

    @cached_property
    def support_mask(self) -> np.ndarray:
        mask = np.zeros(self.order, dtype=np.int64)
        for w in range(1, self.order):
            mask[w] = mask[self.parent[w]] | (1 << int(self.last[w]))
        return mask

    @cached_property
    def tau_gen(self) -> list:
        """s -> w0 s w0 on generator indices."""
        out = []
        w0 = self.longest
        for s in range(self.rank):
            x = self.mul(int(self.right[w0, s]), w0)
            word = self.word(x)
            assert len(word) == 1
            out.append(word[0])
        return out

    @cached_property
    def tau(self) -> np.ndarray:
        """Conjugation by the longest element on all elements."""
        t = np.zeros(self.order, dtype=np.int64)
        tg = self.tau_gen
        for w in range(1, self.order):
            t[w] = self.right[t[self.parent[w]], tg[self.last[w]]]
        return t

    def min_coset_rep(self, w: int, J: Iterable) -> int:
        """Minimal element of the left coset w W_J."""
        mask = 0
        for s in J:
            mask |= 1 << s
        while True:
            d = int(self.right_descent[w]) & mask
            if not d:
                return w
            s = (d & -d).bit_length() - 1
            w = int(self.right[w, s])

    def parabolic_elements(self, J: Iterable) -> list:
        mask = 0
        for s in J:
            mask |= 1 << s
        return [w for w in range(self.order) if not (int(self.support_mask[w]) & ~mask)]

    def to_records(self) -> list:
        names = self.diagram.vertices
        return [{"index": w, "word": list(self.word_names(w)), "length": int(self.length[w]),
                 "right_descents": [names[s] for s in self.descents_right(w)],
                 "left_descents": [names[s] for s in self.descents_left(w)]}
                for w in range(self.order)]


def enumerate_group(d: DynkinDiagram, limit: int | None = None) -> GroupTable:
    """BFS closure under right multiplication with exact matrix dedup."""
    limit = DEFAULT_BUDGET if limit is None else limit
    G = CoxeterGroup(d)
    n = G.n
    ident = G.identity(np.int64)
    index_of = {ident.tobytes(): 0}
    mats = [ident]
    parent, last, length = [-1], [-1], [0]
    right_rows = {}
    frontier = [0]
    level = 0
    while frontier:
        batch = np.stack([mats[i] for i in frontier])
        new_frontier = []
        for s in range(n):
            prod = G.right_mul(batch, s)
            if np.abs(prod).max(initial=0) > OVERFLOW_GUARD:
                raise GroupTooLargeOrInfinite(limit, "matrix entries grow without bound")
            for k, w in enumerate(frontier):
                key = prod[k].tobytes()
                idx = index_of.get(key)
                if idx is None:
                    idx = len(mats)
                    if idx >= limit:
                        raise GroupTooLargeOrInfinite(limit)
                    index_of[key] = idx
                    mats.append(prod[k])
                    parent.append(w)
                    last.append(s)
                    length.append(level + 1)
                    new_frontier.append(idx)
                right_rows.setdefault(w, [0] * n)[s] = idx
        frontier = new_frontier
        level += 1
    N = len(mats)
    right = np.array([right_rows[w] for w in range(N)], dtype=np.int64)
    length = np.array(length, dtype=np.int64)
    parent = np.array(parent, dtype=np.int64)
    last = np.array(last, dtype=np.int64)
    # left multiplication: s * (u t) = (s u) t
    left = np.zeros((N, n), dtype=np.int64)
    for s in range(n):
        left[0, s] = right[0, s]
    for w in range(1, N):
        u, t = parent[w], last[w]
        left[w] = right[left[u], t]
    inverse = np.zeros(N, dtype=np.int64)
    for w in range(1, N):
        inverse[w] = left[inverse[parent[w]], last[w]]
    bits = 1 << np.arange(n, dtype=np.int64)
    rdesc = ((length[right] < length[:, None]) * bits).sum(axis=1)
    ldesc = ((length[left] < length[:, None]) * bits).sum(axis=1)
    longest = int(np.argmax(length))
    if (length == length[longest]).sum() != 1:
        raise AssertionError("longest element is not unique")
    table = GroupTable(G, np.stack(mats), parent, last, length, right, left, inverse,
                       rdesc, ldesc, longest, [], index_of)
    table.reflections = _reflections(table)
    if len(table.reflections) != int(length[longest]):
        raise AssertionError("reflection count differs from the length of the longest element")
    return table


def _reflections(table: GroupTable) -> list:
    """Closure of the simple reflections under conjugation t r t."""
    n = table.rank
    refl = [int(table.right[0, s]) for s in range(n)]
    seen = set(refl)
    queue = deque(refl)
    while queue:
        r = queue.popleft()
        for t in range(n):
            c = int(table.right[table.left[r, t], t])
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return sorted(seen, key=lambda w: (int(table.length[w]), w))


# ---------------------------------------------------------------------------
# reflection arrangement and Coxeter complex

@dataclass
class ReflectionData:
    table: GroupTable
    roots: list                 # positive roots, (n, deg) int arrays
    reflection_of_root: list    # group index of the reflection for each root

    def chamber_signs(self, w: int) -> tuple:
        """Sign vector of chamber w: + iff w^{-1} beta is a positive root."""
        G = self.table.group
        Minv = self.table.matrices[self.table.inverse[w]].astype(object)
        return tuple(G.root_sign(G.apply_to_root(Minv, r)) for r in self.roots)


def reflection_data(table: GroupTable) -> ReflectionData:
    G = table.group
    roots = G.positive_roots()
    if len(roots) != len(table.reflections):
        raise AssertionError("root count differs from reflection count")
    refl = []
    for r in roots:
        # reflection s_beta(v) = v - 2B(beta, v) beta, built from the matrix in the root basis
        for w in table.reflections:
            M = table.matrices[w].astype(object)
            image = G.apply_to_root(M, r)
            if np.array_equal(image, -r):
                refl.append(w)
                break
        else:
            raise AssertionError("no reflection negates a root")
    return ReflectionData(table, roots, refl)


def reflection_arrangement(d: DynkinDiagram, table: GroupTable | None = None, model: bool = False):
    """One central hyperplane per reflection.

    Coordinates are y_s = B(alpha_s, v), so the fundamental chamber is the
    positive orthant and the hyperplane of a root beta has normal vector beta
    (root-basis coordinates).  With ``model=True`` and d of type A_n or B_n the
    normals are rewritten in the standard coordinates x_i."""
    from .arrangement import Arrangement

    if not classify_all_spherical(d):
        raise NotSpherical(f"{d} is not spherical")
    table = table or enumerate_group(d)
    data = reflection_data(table)
    F = d.field
    normals = [[ExactReal(F, [int(x) for x in r[i]]) for i in range(d.rank)] for r in data.roots]
    if model:
        M = model_coordinates(d)
        normals = [[sum((beta[k] * M[k][j] for k in range(d.rank)), F.zero()) for j in range(d.rank)]
                   for beta in normals]
        # scale so the first nonzero coordinate is 1: x_i = 0, x_i - x_j = 0, x_i + x_j = 0
        normals = [[x / next(y for y in v if y) for x in v] for v in normals]
    return Arrangement.central(normals, field=F)


def _path_order(d: DynkinDiagram) -> list:
    G = d.dynkin_graph
    ends = [v for v in G if G.degree(v) <= 1]
    if d.rank == 1:
        return [0]
    if len(ends) != 2 or any(G.degree(v) > 2 for v in G):
        raise ValueError("diagram is not a path")
    # B_n: the label-4 edge at the end of the order
    start = ends[0]
    if d.rank > 2 and any(dd["label"] == 4 for _, _, dd in G.edges(ends[0], data=True)):
        start = ends[1]
    order = [start]
    while len(order) < d.rank:
        nxt = [v for v in G[order[-1]] if v not in order]
        order.append(nxt[0])
    return [d.index(v) for v in order]


def model_coordinates(d: DynkinDiagram) -> list:
    """Rows phi(alpha_s) (indexed by generator) of the change to standard coordinates.

    A_n: alpha_k -> e_{k-1} - e_k with e_0 = 0, so roots become e_i - e_j and -e_j.
    B_n: alpha_k -> e_k - e_{k+1}, alpha_n -> sqrt2 e_n."""
    label = classify(d)
    F = d.field
    n = d.rank
    order = _path_order(d)
    M = [[F.zero() for _ in range(n)] for _ in range(n)]
    if label.family == "A":
        for pos, s in enumerate(order):
            if pos > 0:
                M[s][pos - 1] = F.one()
            M[s][pos] = -F.one()
    elif label.family == "B":
        for pos, s in enumerate(order[:-1]):
            M[s][pos] = F.one()
            M[s][pos + 1] = -F.one()
        M[order[-1]][n - 1] = F.two_cos(4)  # 2cos(pi/4) = sqrt 2
    else:
        raise ValueError(f"model coordinates are provided for types A and B, not {label.name}")
    return M


@dataclass
class CoxeterComplexData:
    """Simplicial Coxeter complex: vertices are cosets g W_{S - s} labelled by type s."""

    table: GroupTable
    vertices: list          # (type s, minimal coset representative)
    vertex_index: dict
    chambers: np.ndarray    # (|W|, n) vertex id of each type
    fvector: tuple

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.fvector))

    def chamber_of(self, w: int) -> tuple:
        return tuple(int(v) for v in self.chambers[w])

    def vertex_of(self, w: int, s: int) -> int:
        J = [t for t in range(self.table.rank) if t != s]
        return self.vertex_index[(s, self.table.min_coset_rep(w, J))]

    def coset_elements(self, v: int) -> list:
        s, rep = self.vertices[v]
        return [w for w in range(self.table.order) if self.chambers[w, s] == v]

    def type_names(self) -> list:
        return [self.table.diagram.vertices[s] for s, _ in self.vertices]


def coxeter_complex(d: DynkinDiagram, table: GroupTable | None = None) -> CoxeterComplexData:
    if not classify_all_spherical(d):
        raise NotSpherical(f"{d} is not spherical")
    table = table or enumerate_group(d)
    n = table.rank
    vertices, vindex = [], {}
    chambers = np.zeros((table.order, n), dtype=np.int64)
    for s in range(n):
        J = [t for t in range(n) if t != s]
        for w in range(table.order):
            key = (s, table.min_coset_rep(w, J))
            if key not in vindex:
                vindex[key] = len(vertices)
                vertices.append(key)
            chambers[w, s] = vindex[key]
    fvec = []
    for k in range(1, n + 1):
        total = 0
        for T in itertools.combinations(range(n), k):
            J = [t for t in range(n) if t not in T]
            total += table.order // len(table.parabolic_elements(J))
        fvec.append(total)
    return CoxeterComplexData(table, vertices, vindex, chambers, tuple(fvec))


def classify_all_spherical(d: DynkinDiagram) -> bool:
    from .diagram import is_spherical
    return is_spherical(d)
