"""Exact hyperplane arrangements, their faces and the dual polyhedron.

Faces are sign vectors in {-1, 0, +1}^N.  An affine arrangement in R^n is
handled through its cone in R^(n+1): hyperplane a.x = b becomes
a.x - b x0 = 0, restricted to x0 > 0.  Realizability of every sign vector is
certified by an exact witness point produced by Fourier-Motzkin elimination.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx

from .exactnum import QQ, CycloField, ExactReal
from .linalg import dot, nullspace, rank, strict_feasible

MAX_HYPERPLANES = 64
MAX_DIM = 5


class ArrangementError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NotCentral(ArrangementError):
    pass


class NotSubset(ArrangementError):
    pass


def compose(F: Sequence[int], G: Sequence[int]) -> tuple:
    """Sign vector composition F o G."""
    return tuple(f if f else g for f, g in zip(F, G))


def conformal_leq(Y: Sequence[int], F: Sequence[int]) -> bool:
    """Y is a face of the closure of F."""
    return all(y == 0 or y == f for y, f in zip(Y, F))


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes a.x = b in R^dim with coefficients in one cyclotomic field."""

    dim: int
    normals: tuple
    offsets: tuple
    field: CycloField = QQ
    names: tuple = ()

    def __post_init__(self):
        F = self.field
        normals = tuple(tuple(F(x) if not isinstance(x, ExactReal) else F.embed(x) for x in a)
                        for a in self.normals)
        offsets = tuple(F(b) if not isinstance(b, ExactReal) else F.embed(b) for b in self.offsets)
        if len(normals) != len(offsets):
            raise ArrangementError("normals and offsets differ in length")
        keys = set()
        for a, b in zip(normals, offsets):
            if len(a) != self.dim:
                raise ArrangementError("normal vector has the wrong dimension")
            if not any(a):
                raise ArrangementError("zero normal vector")
            lead = next(x for x in a if x)
            key = tuple(x / lead for x in a) + (b / lead,)
            if key in keys:
                raise ArrangementError("duplicate hyperplane")
            keys.add(key)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)
        names = tuple(self.names) if self.names else tuple(f"H{k}" for k in range(len(normals)))
        object.__setattr__(self, "names", names)

    @classmethod
    def central(cls, normals: Sequence[Sequence], field: CycloField = QQ, names=()) -> "Arrangement":
        normals = [tuple(a) for a in normals]
        dim = len(normals[0]) if normals else 0
        return cls(dim, tuple(normals), tuple(field.zero() for _ in normals), field, tuple(names))

    @classmethod
    def affine(cls, dim: int, hyperplanes: Sequence, field: CycloField = QQ, names=()) -> "Arrangement":
        return cls(dim, tuple(tuple(a) for a, _ in hyperplanes), tuple(b for _, b in hyperplanes),
                   field, tuple(names))

    def __len__(self):
        return len(self.normals)

    @property
    def is_central(self) -> bool:
        return all(not b for b in self.offsets)

    def subarrangement(self, indices: Iterable[int]) -> "Arrangement":
        idx = list(indices)
        for i in idx:
            if not 0 <= i < len(self):
                raise NotSubset(f"hyperplane index {i} out of range")
        return Arrangement(self.dim, tuple(self.normals[i] for i in idx), tuple(self.offsets[i] for i in idx),
                           self.field, tuple(self.names[i] for i in idx))

    def normalized(self, i: int) -> tuple:
        a, b = self.normals[i], self.offsets[i]
        lead = next(x for x in a if x)
        return tuple(x / lead for x in a) + (b / lead,)

    def value(self, i: int, x: Sequence) -> ExactReal:
        return dot(self.normals[i], x, self.field.zero()) - self.offsets[i]

    def sign_vector(self, x: Sequence) -> tuple:
        return tuple(self.value(i, x).sign() for i in range(len(self)))

    def cone_normals(self) -> list:
        """Normals in R^(dim+1) with the homogenizing coordinate first (affine case)."""
        if self.is_central:
            return [list(a) for a in self.normals]
        return [[-b] + list(a) for a, b in zip(self.normals, self.offsets)]

    def to_json(self) -> dict:
        return {"dim": self.dim, "field": self.field.L,
                "hyperplanes": [{"name": nm, "normal": [str(x) for x in a], "offset": str(b)}
                                for nm, a, b in zip(self.names, self.normals, self.offsets)]}

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        try:
            F = CycloField(int(data.get("field", 1)))
            hs = data["hyperplanes"]
            normals = [tuple(F.parse(str(x)) for x in h["normal"]) for h in hs]
            offsets = [F.parse(str(h.get("offset", "0"))) for h in hs]
            names = [h.get("name", f"H{k}") for k, h in enumerate(hs)]
            return cls(int(data["dim"]), tuple(normals), tuple(offsets), F, tuple(names))
        except (KeyError, TypeError) as exc:
            raise ArrangementError(f"malformed arrangement data: {exc}") from exc

    def describe(self) -> list:
        out = []
        for nm, a, b in zip(self.names, self.normals, self.offsets):
            terms = [f"({x})*x{k + 1}" for k, x in enumerate(a) if x]
            out.append(f"{nm}: {' + '.join(terms)} = {b}")
        return out


# ---------------------------------------------------------------------------
# faces

@dataclass
class FaceLattice:
    arrangement: Arrangement
    faces: list              # sign tuples, sorted
    dims: list
    witnesses: list          # exact points in R^dim (affine coordinates)
    bounded: list
    index: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.faces)

    @cached_property
    def chambers(self) -> list:
        return [i for i, F in enumerate(self.faces) if all(F)]

    def zero_set(self, i: int) -> frozenset:
        return frozenset(k for k, s in enumerate(self.faces[i]) if s == 0)

    def leq(self, i: int, j: int) -> bool:
        return conformal_leq(self.faces[i], self.faces[j])

    def of_dim(self, k: int) -> list:
        return [i for i, d in enumerate(self.dims) if d == k]

    @property
    def fvector(self) -> tuple:
        top = max(self.dims) if self.dims else -1
        return tuple(len(self.of_dim(k)) for k in range(top + 1))

    def face_id(self, signs: Sequence[int]) -> int:
        return self.index[tuple(signs)]

    @cached_property
    def cofaces(self) -> list:
        """For each face, the faces whose closure contains it (including itself)."""
        out = [[] for _ in self.faces]
        for j, G in enumerate(self.faces):
            for i, F in enumerate(self.faces):
                if conformal_leq(F, G):
                    out[i].append(j)
        return out


def compute_faces(a: Arrangement, max_hyperplanes: int = MAX_HYPERPLANES, max_dim: int = MAX_DIM) -> FaceLattice:
    """All realizable sign vectors, built one hyperplane at a time with exact witnesses."""
    if len(a) > max_hyperplanes or a.dim > max_dim:
        raise BudgetExceeded(f"arrangement with {len(a)} hyperplanes in dimension {a.dim} exceeds the budget")
    F = a.field
    zero, one = F.zero(), F.one()
    affine = not a.is_central
    H = a.cone_normals()
    D = a.dim + (1 if affine else 0)
    extra = [[one] + [zero] * a.dim] if affine else []
    start = [one] + [zero] * a.dim if affine else [zero] * D
    faces = [((), start)]
    span_cache: dict = {}

    def basis_for(zeros: tuple):
        if zeros not in span_cache:
            span_cache[zeros] = nullspace([H[i] for i in zeros], D, zero, one)
        return span_cache[zeros]

    def find_point(signs: tuple, k: int, s: int):
        """Witness for the face of hyperplanes 0..k-1 with signs, plus sign s on hyperplane k."""
        zeros = tuple(i for i, t in enumerate(signs) if t == 0)
        B = basis_for(zeros)
        if not B:
            return None
        rows = [[dot(H[i], b, zero) * signs[i] for b in B] for i in range(len(signs)) if signs[i]]
        rows += [[dot(e, b, zero) for b in B] for e in extra]
        rows.append([dot(H[k], b, zero) * s for b in B])
        y = strict_feasible(rows, len(B), zero, one)
        if y is None:
            return None
        return [sum((y[j] * B[j][c] for j in range(len(B))), zero) for c in range(D)]

    for k, h in enumerate(H):
        new = []
        for signs, p in faces:
            zeros = tuple(i for i, t in enumerate(signs) if t == 0)
            if all(not dot(h, b, zero) for b in basis_for(zeros)):
                new.append((signs + (0,), p))
                continue
            s = dot(h, p, zero).sign()
            if s == 0:
                new.append((signs + (0,), p))
                for t in (1, -1):
                    q = find_point(signs, k, t)
                    assert q is not None
                    new.append((signs + (t,), q))
                continue
            new.append((signs + (s,), p))
            r = find_point(signs, k, -s)
            if r is None:
                continue
            new.append((signs + (-s,), r))
            hp, hr = dot(h, p, zero), dot(h, r, zero)
            t = hp / (hp - hr)
            q = [pi + t * (ri - pi) for pi, ri in zip(p, r)]
            new.append((signs + (0,), q))
        faces = new
    faces.sort(key=lambda fp: fp[0])
    signs_list = [f for f, _ in faces]
    dims, witnesses = [], []
    rank_cache = {}
    for signs, p in faces:
        zeros = tuple(i for i, t in enumerate(signs) if t == 0)
        if zeros not in rank_cache:
            rank_cache[zeros] = rank([H[i] for i in zeros])
        dims.append(D - rank_cache[zeros] - (1 if affine else 0))
        if affine:
            witnesses.append([x / p[0] for x in p[1:]])
        else:
            witnesses.append(list(p))
    bounded = _boundedness(a, signs_list)
    lattice = FaceLattice(a, signs_list, dims, witnesses, bounded)
    lattice.index = {f: i for i, f in enumerate(signs_list)}
    return lattice


def _boundedness(a: Arrangement, faces: list) -> list:
    """A face is bounded iff its recession cone is {0}."""
    if rank([list(n) for n in a.normals]) < a.dim:
        return [False] * len(faces)
    if a.is_central:
        return [all(s == 0 for s in f) for f in faces]
    at_inf = _faces_at_infinity(a)
    out = []
    for f in faces:
        unbounded = any(any(g) and all((gi == 0) if fi == 0 else (gi in (0, fi)) for gi, fi in zip(g, f))
                        for g in at_inf)
        out.append(not unbounded)
    return out


def _faces_at_infinity(a: Arrangement) -> list:
    """Sign vectors of directions d relative to the linear parts a_i (parallel hyperplanes share a class)."""
    reps, where = [], []
    keys = {}
    for n in a.normals:
        lead = next(x for x in n if x)
        k = tuple(x / lead for x in n)
        if k not in keys:
            keys[k] = len(reps)
            reps.append(n)
        rep = reps[keys[k]]
        where.append((keys[k], (lead / next(x for x in rep if x)).sign()))
    base = compute_faces(Arrangement.central(reps, a.field)).faces
    return [tuple(g[idx] * sgn for idx, sgn in where) for g in base]


# ---------------------------------------------------------------------------
# the dual polyhedron

@dataclass
class GatePair:
    E_prime: int
    F_prime: int
    translation: dict        # vertex of E' -> vertex of F'
    walls: frozenset         # W(E') = W(E) n W(F)


class DualComplex:
    """Sigma: vertices are chambers, the cell dual to face F has vertices {C : F <= C}."""

    def __init__(self, lattice: FaceLattice):
        self.lattice = lattice
        self.arrangement = lattice.arrangement
        self.n = self.arrangement.dim
        self.chambers = lattice.chambers
        self.chamber_pos = {c: k for k, c in enumerate(self.chambers)}

    @property
    def faces(self):
        return self.lattice.faces

    def cell_dim(self, F: int) -> int:
        return self.n - self.lattice.dims[F]

    @cached_property
    def cell_vertices(self) -> list:
        out = [[] for _ in self.faces]
        for c in self.chambers:
            C = self.faces[c]
            for i, Fs in enumerate(self.faces):
                if conformal_leq(Fs, C):
                    out[i].append(c)
        return out

    @cached_property
    def edges(self) -> list:
        """(face, chamber, chamber) for every codimension-one face."""
        out = []
        for i in self.lattice.of_dim(self.n - 1):
            Fs = self.faces[i]
            h = Fs.index(0)
            plus = self.lattice.index[Fs[:h] + (1,) + Fs[h + 1:]]
            minus = self.lattice.index[Fs[:h] + (-1,) + Fs[h + 1:]]
            out.append((i, minus, plus))
        return out

    def edge_wall(self, edge_face: int) -> int:
        return self.faces[edge_face].index(0)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.chambers)
        for f, u, v in self.edges:
            g.add_edge(u, v, face=f, wall=self.edge_wall(f))
        return g

    @cached_property
    def parallel_classes(self) -> dict:
        classes = {}
        for i in range(len(self.faces)):
            classes.setdefault(self.lattice.zero_set(i), []).append(i)
        return classes

    def separating(self, x: int, y: int) -> frozenset:
        return frozenset(k for k, (a, b) in enumerate(zip(self.faces[x], self.faces[y])) if a != b)

    def distance(self, x: int, y: int) -> int:
        return len(self.separating(x, y))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** self.cell_dim(i) for i in range(len(self.faces)))

    def fvector(self) -> tuple:
        counts = [0] * (self.n + 1)
        for i in range(len(self.faces)):
            counts[self.cell_dim(i)] += 1
        return tuple(counts)

    def gate_project(self, x: int, F: int) -> int:
        """prj_F(x) = F o x: the unique vertex of F nearest to x."""
        return self.lattice.index[compose(self.faces[F], self.faces[x])]

    def gate_face(self, E: int, F: int) -> GatePair:
        Es, Fs = self.faces[E], self.faces[F]
        Ep = self.lattice.index[compose(Es, Fs)]
        Fp = self.lattice.index[compose(Fs, Es)]
        translation = {v: self.gate_project(v, F) for v in self.cell_vertices[Ep]}
        walls = self.lattice.zero_set(E) & self.lattice.zero_set(F)
        return GatePair(Ep, Fp, translation, walls)

    def geodesic(self, x: int, y: int) -> list:
        """A gallery from x to y crossing each separating hyperplane once."""
        path = [x]
        cur = self.faces[x]
        target = self.faces[y]
        while cur != target:
            for k in range(len(cur)):
                if cur[k] != target[k]:
                    flipped = cur[:k] + (target[k],) + cur[k + 1:]
                    if flipped in self.lattice.index:
                        cur = flipped
                        path.append(self.lattice.index[cur])
                        break
            else:
                raise AssertionError("no adjacent chamber reduces the distance")
        return path

    def elementary_segment(self, x: int, F: int) -> list:
        """Minimal positive path from x to its gate on F."""
        return self.geodesic(x, self.gate_project(x, F))

    def to_json(self) -> dict:
        return {
            "vertices": [list(self.faces[c]) for c in self.chambers],
            "cells": [{"face": list(self.faces[i]), "dim": self.cell_dim(i),
                       "vertices": [self.chamber_pos[c] for c in self.cell_vertices[i]]}
                      for i in range(len(self.faces))],
            "parallel_classes": [[self.arrangement.names[k] for k in sorted(z)] for z in
                                 sorted(self.parallel_classes, key=lambda z: sorted(z))],
            "edges": [[self.chamber_pos[u], self.chamber_pos[v], self.arrangement.names[self.edge_wall(f)]]
                      for f, u, v in self.edges],
        }


def dual_complex(a: Arrangement | FaceLattice) -> DualComplex:
    lattice = a if isinstance(a, FaceLattice) else compute_faces(a)
    return DualComplex(lattice)


# ---------------------------------------------------------------------------
# deconing, collapsing, bounded complex

def decone(a: Arrangement, h: int) -> Arrangement:
    """Intersect with the chart h.x = 1 and drop h; returns an affine arrangement in R^(dim-1)."""
    if not a.is_central:
        raise NotCentral("deconing needs a central arrangement")
    if not 0 <= h < len(a):
        raise ArrangementError(f"hyperplane index {h} out of range")
    hn = a.normals[h]
    k = next(i for i, x in enumerate(hn) if x)
    hk = hn[k]
    hyper, names = [], []
    for j, g in enumerate(a.normals):
        if j == h:
            continue
        gk = g[k]
        normal = tuple(g[i] - gk * hn[i] / hk for i in range(a.dim) if i != k)
        offset = -gk / hk
        lead = next(x for x in normal if x)
        hyper.append((tuple(x / lead for x in normal), offset / lead))
        names.append(a.names[j])
    return Arrangement.affine(a.dim - 1, hyper, a.field, names)


def coordinate_hyperplane(a: Arrangement, k: int) -> int:
    """Index of the hyperplane x_k = 0 (k counted from 1)."""
    for i, (n, b) in enumerate(zip(a.normals, a.offsets)):
        if not b and n[k - 1] and not any(x for j, x in enumerate(n) if j != k - 1):
            return i
    raise ArrangementError(f"no hyperplane x{k} = 0")


@dataclass
class CollapseMap:
    source: FaceLattice
    target: FaceLattice
    sub: tuple
    face_map: list                 # face of source -> face of target
    vertex_map: dict               # chamber -> chamber
    edge_map: dict                 # edge face -> target edge face or a target chamber when collapsed
    collapsed_edges: list


def collapse_map(a: Arrangement | FaceLattice, sub: Iterable[int]) -> CollapseMap:
    source = a if isinstance(a, FaceLattice) else compute_faces(a)
    arr = source.arrangement
    sub = tuple(sorted(set(sub)))
    for i in sub:
        if not 0 <= i < len(arr):
            raise NotSubset(f"hyperplane index {i} not in the arrangement")
    target = compute_faces(arr.subarrangement(sub))
    face_map = []
    for Fs in source.faces:
        r = tuple(Fs[i] for i in sub)
        if r not in target.index:
            raise AssertionError("restricted sign vector is not a face")
        face_map.append(target.index[r])
    n = arr.dim
    vertex_map = {c: face_map[c] for c in source.chambers}
    edge_map, collapsed = {}, []
    for i in source.of_dim(n - 1):
        h = source.faces[i].index(0)
        edge_map[i] = face_map[i]
        if h not in sub:
            collapsed.append(i)
    return CollapseMap(source, target, sub, face_map, vertex_map, edge_map, collapsed)


@dataclass
class BoundedComplex:
    lattice: FaceLattice
    faces: list          # indices of bounded faces in the lattice
    order: list          # (i, j) pairs with faces[i] a facet-or-face of faces[j]
    dual: dict           # bounded face -> list of chambers of its dual Sigma cell

    @property
    def fvector(self) -> tuple:
        if not self.faces:
            return ()
        dims = [self.lattice.dims[i] for i in self.faces]
        return tuple(dims.count(k) for k in range(max(dims) + 1))


def bounded_complex(a: Arrangement | FaceLattice) -> BoundedComplex:
    lattice = a if isinstance(a, FaceLattice) else compute_faces(a)
    bf = [i for i in range(len(lattice)) if lattice.bounded[i]]
    order = [(i, j) for i in bf for j in bf if i != j and lattice.leq(i, j)]
    dc = DualComplex(lattice)
    dual = {i: dc.cell_vertices[i] for i in bf}
    return BoundedComplex(lattice, bf, order, dual)


# ---------------------------------------------------------------------------
# walls of the H3 Coxeter complex

@dataclass
class WallSystem:
    """Reflection arrangement of a rank-3 finite Coxeter group with wall incidences."""

    table: object
    complex: object
    arrangement: Arrangement
    reflection_of_root: list

    def walls_of_vertex(self, v: int) -> set:
        """Hyperplanes containing the ray of vertex v = g W_J: reflections in g W_J g^-1."""
        t = self.table
        s, rep = self.complex.vertices[v]
        J = [u for u in range(t.rank) if u != s]
        conj = {t.mul(t.mul(rep, x), t.inv(rep)) for x in t.parabolic_elements(J)}
        return {k for k, r in enumerate(self.reflection_of_root) if r in conj}

    def wall_cycle(self, k: int) -> list:
        """Vertices on wall k in cyclic order."""
        t, cx = self.table, self.complex
        r = self.reflection_of_root[k]
        g = nx.Graph()
        n = t.rank
        for w in range(t.order):
            for u in range(n):
                # edge of type {all but u}: the coset w W_u, lying in the wall of w u w^-1
                if t.mul(t.mul(w, int(t.right[0, u])), t.inv(w)) == r:
                    ends = [cx.chambers[w, s] for s in range(n) if s != u]
                    g.add_edge(int(ends[0]), int(ends[1]))
        cycle = nx.cycle_basis(g)
        if len(cycle) != 1 or len(cycle[0]) != g.number_of_nodes():
            raise AssertionError("wall is not a single cycle")
        return cycle[0]

    def consecutive_on_wall(self, k: int, types: Sequence[int]) -> list:
        """All runs of consecutive vertices on wall k with the given vertex types."""
        cyc = self.wall_cycle(k)
        m = len(cyc)
        out = []
        for i in range(m):
            for direction in (1, -1):
                run = [cyc[(i + direction * j) % m] for j in range(len(types))]
                if [self.complex.vertices[v][0] for v in run] == list(types):
                    out.append(run)
        return out


class NotH3(ValueError):
    pass


class UnknownVertex(ValueError):
    pass


def h3_wall_system(d) -> WallSystem:
    from .coxeter import coxeter_complex, enumerate_group, reflection_arrangement, reflection_data
    from .diagram import classify

    if classify(d).name != "H3":
        raise NotH3(f"{d} is not of type H3")
    t = enumerate_group(d)
    cx = coxeter_complex(d, t)
    arr = reflection_arrangement(d, t)
    data = reflection_data(t)
    return WallSystem(t, cx, arr, data.reflection_of_root)


def walls_through(system: WallSystem, points: Iterable[int]) -> tuple[Arrangement, list]:
    """Sub-arrangement of walls containing at least one of the given Coxeter-complex vertices."""
    walls = set()
    for v in points:
        if not 0 <= v < len(system.complex.vertices):
            raise UnknownVertex(f"no vertex {v}")
        walls |= system.walls_of_vertex(v)
    idx = sorted(walls)
    return system.arrangement.subarrangement(idx), idx
