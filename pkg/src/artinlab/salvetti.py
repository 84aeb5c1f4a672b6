"""Salvetti complexes of real arrangements.

A cell is a class [F, v] of a face F of Sigma and a chamber v; its canonical
representative is (F, prj_F(v)), with prj_F(v) = F o v in sign-vector terms.
Cells of dimension at most two carry attaching maps; higher cells are listed
symbolically.  Orientation convention: the 1-cell [e, v] runs from v to the
other endpoint of e.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arrangement import DualComplex, compose


class NotReflectionArrangement(ValueError):
    pass


@dataclass
class SalvettiComplex:
    sigma: DualComplex
    cells: list                 # (face index, chamber index), canonical
    cell_index: dict
    dims: list
    boundaries: dict            # cell id -> list of (1-cell id, +-1) for 2-cells, (tail, head) for 1-cells
    labels: dict = field(default_factory=dict)     # 1-cell id -> generator label (reflection case)
    chamber_element: dict = field(default_factory=dict)

    @property
    def counts(self) -> tuple:
        top = max(self.dims)
        return tuple(self.dims.count(k) for k in range(top + 1))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d for d in self.dims)

    def cell(self, F: int, v: int) -> int:
        """Id of the class [F, v] for any chamber v."""
        faces = self.sigma.faces
        rep = self.sigma.lattice.index[compose(faces[F], faces[v])]
        return self.cell_index[(F, rep)]

    def projection(self, c: int) -> int:
        """p: cell -> face of Sigma."""
        return self.cells[c][0]

    def cells_of_dim(self, k: int) -> list:
        return [i for i, d in enumerate(self.dims) if d == k]

    def standard_subcomplex(self, F: int) -> set:
        """Cells of F-hat: [E, v] with the Sigma-cell of E inside that of F."""
        lat = self.sigma.lattice
        return {i for i, (E, v) in enumerate(self.cells) if lat.leq(F, E)}

    def edge_endpoints(self, c: int) -> tuple:
        return self.boundaries[c]

    def directed_graph(self):
        import networkx as nx
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.sigma.chambers)
        for c in self.cells_of_dim(1):
            u, v = self.boundaries[c]
            g.add_edge(u, v, cell=c, label=self.labels.get(c))
        return g

    def to_json(self) -> dict:
        names = self.sigma.arrangement.names
        faces = self.sigma.faces
        out = []
        for i, (F, v) in enumerate(self.cells):
            rec = {"id": i, "dim": self.dims[i], "face": list(faces[F]), "vertex": list(faces[v])}
            if self.dims[i] == 1:
                rec["from"], rec["to"] = [self.cell_index[(t, t)] for t in self.boundaries[i]]
                if i in self.labels:
                    rec["label"] = self.labels[i]
            elif self.dims[i] == 2:
                rec["boundary"] = [[c, s] for c, s in self.boundaries[i]]
            out.append(rec)
        return {"hyperplanes": list(names), "counts": list(self.counts),
                "euler_characteristic": self.euler_characteristic, "cells": out}


def build_salvetti(dc: DualComplex) -> SalvettiComplex:
    lat = dc.lattice
    faces = lat.faces
    cells, index, dims = [], {}, []
    for F in range(len(faces)):
        for v in dc.cell_vertices[F]:
            index[(F, v)] = len(cells)
            cells.append((F, v))
            dims.append(dc.cell_dim(F))
    boundaries = {}
    for c, (F, v) in enumerate(cells):
        if dims[c] == 1:
            other = [u for u in dc.cell_vertices[F] if u != v][0]
            boundaries[c] = (v, other)
        elif dims[c] == 2:
            boundaries[c] = _polygon_boundary(dc, index, F, v)
    return SalvettiComplex(dc, cells, index, dims, boundaries)


def _polygon_boundary(dc: DualComplex, index: dict, F: int, v: int) -> list:
    """Two positive paths from v to the opposite vertex of the polygon; the second is reversed."""
    lat = dc.lattice
    faces = lat.faces
    Fs, Vs = faces[F], faces[v]
    opposite = lat.index[compose(Fs, tuple(-x for x in Vs))]
    walls = [k for k, s in enumerate(Fs) if s == 0]
    verts = set(dc.cell_vertices[F])
    paths = []
    for first in walls:
        flipped = Vs[:first] + (-Vs[first],) + Vs[first + 1:]
        if flipped not in lat.index or lat.index[flipped] not in verts:
            continue
        path = [v, lat.index[flipped]]
        while path[-1] != opposite:
            cur = faces[path[-1]]
            step = None
            for k in walls:
                if cur[k] == Vs[k]:
                    nxt = cur[:k] + (-cur[k],) + cur[k + 1:]
                    if nxt in lat.index and lat.index[nxt] not in path and lat.index[nxt] in verts:
                        step = lat.index[nxt]
                        break
            if step is None:
                raise AssertionError("polygon walk failed")
            path.append(step)
        paths.append(path)
    if len(paths) != 2:
        raise AssertionError("a codimension-two face must have a polygon with two sides")
    out = []
    for sign, path in ((1, paths[0]), (-1, paths[1])):
        seq = []
        for a, b in zip(path, path[1:]):
            e = lat.index[tuple(0 if x != y else x for x, y in zip(faces[a], faces[b]))]
            seq.append((index[(e, a)], sign))
        out.extend(seq if sign > 0 else list(reversed(seq)))
    return out


# ---------------------------------------------------------------------------
# retraction

@dataclass
class Retraction:
    complex: SalvettiComplex
    face: int
    image: dict      # cell -> cell for every cell


def _compose_table(dc: DualComplex) -> np.ndarray:
    lat = dc.lattice
    faces = lat.faces
    arr = np.array(faces, dtype=np.int8)
    m = len(faces)
    table = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        comp = np.where(arr[i] != 0, arr[i], arr)
        for j in range(m):
            table[i, j] = lat.index[tuple(int(x) for x in comp[j])]
    return table


def salvetti_retraction(sc: SalvettiComplex, F: int) -> Retraction:
    """Pi: [E, v] -> [F o E, F o v] on all cells."""
    faces = sc.sigma.faces
    lat = sc.sigma.lattice
    image = {}
    for c, (E, v) in enumerate(sc.cells):
        G = lat.index[compose(faces[F], faces[E])]
        u = lat.index[compose(faces[F], faces[v])]
        image[c] = sc.cell_index[(G, u)]
    return Retraction(sc, F, image)


@dataclass
class RetractionAudit:
    pairs_checked: int
    property_failures: list
    identity_failures: list
    compatibility_failures: list

    @property
    def ok(self) -> bool:
        return not (self.property_failures or self.identity_failures or self.compatibility_failures)


def audit_retractions(sc: SalvettiComplex) -> RetractionAudit:
    """Exhaustive check over all face pairs.

    * Pi_F(E-hat) equals the standard subcomplex of Pi_F(E) = F o E;
    * Pi_F restricted to F-hat is the identity;
    * [E, v1] = [E, v2] implies [F o E, v1] = [F o E, v2].
    """
    dc = sc.sigma
    lat = dc.lattice
    comp = _compose_table(dc)
    m = len(lat.faces)
    chambers = np.array(dc.chambers, dtype=np.int64)
    # cells of E-hat as (E', v) arrays per face
    upper = [[j for j in range(m) if lat.leq(i, j)] for i in range(m)]
    hat = []
    for i in range(m):
        Es, vs = [], []
        for j in upper[i]:
            for v in dc.cell_vertices[j]:
                Es.append(j)
                vs.append(v)
        hat.append((np.array(Es, dtype=np.int64), np.array(vs, dtype=np.int64)))
    prop_fail, id_fail, compat_fail = [], [], []
    for F in range(m):
        for E in range(m):
            Es, vs = hat[E]
            img = set(zip(comp[F, Es].tolist(), comp[F, vs].tolist()))
            G = int(comp[F, E])
            Gs, gv = hat[G]
            if img != set(zip(Gs.tolist(), gv.tolist())):
                prop_fail.append((F, E))
            k1 = comp[E, chambers]
            k2 = comp[G, chambers]
            if len(np.unique(k1 * m + k2)) != len(np.unique(k1)):
                compat_fail.append((F, E))
        Fs, fv = hat[F]
        if not np.array_equal(comp[F, Fs], Fs) or not np.array_equal(comp[F, fv], fv):
            id_fail.append(F)
    return RetractionAudit(m * m, prop_fail, id_fail, compat_fail)


# ---------------------------------------------------------------------------
# reflection case

@dataclass
class Presentation:
    generators: tuple
    relators: list       # (left word, right word) pairs of equal positive words

    def __str__(self):
        rels = ", ".join(f"{''.join(a) if all(len(x) == 1 for x in a) else ' '.join(a)}="
                         f"{''.join(b) if all(len(x) == 1 for x in b) else ' '.join(b)}"
                         for a, b in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def label_reflection_case(sc: SalvettiComplex, table, data) -> None:
    """Attach W elements to chambers and generator labels to 1-cells."""
    lat = sc.sigma.lattice
    by_signs = {}
    for w in range(table.order):
        by_signs[data.chamber_signs(w)] = w
    if set(by_signs) != {lat.faces[c] for c in lat.chambers}:
        raise NotReflectionArrangement("chambers do not match the group elements")
    elem = {lat.index[s]: w for s, w in by_signs.items()}
    sc.chamber_element = elem
    names = table.diagram.vertices
    for c in sc.cells_of_dim(1):
        u, v = sc.boundaries[c]
        x = table.mul(table.inv(elem[u]), elem[v])
        word = table.word(x)
        if len(word) != 1:
            raise NotReflectionArrangement("edge does not join chambers differing by a generator")
        sc.labels[c] = names[word[0]]


def extract_presentation(sc: SalvettiComplex, d, table=None, data=None) -> Presentation:
    """Quotient by the free W-action: cells [F, e] at the identity chamber give generators and relators."""
    from .coxeter import enumerate_group, reflection_data

    table = table or enumerate_group(d)
    data = data or reflection_data(table)
    if len(sc.sigma.arrangement) != len(data.roots):
        raise NotReflectionArrangement("hyperplane count differs from the reflection count")
    if not sc.labels:
        label_reflection_case(sc, table, data)
    elem = sc.chamber_element
    e = next(c for c, w in elem.items() if w == 0)
    gens = sorted({sc.labels[c] for c in sc.cells_of_dim(1) if sc.cells[c][1] == e},
                  key=d.vertices.index)
    relators = []
    for c in sc.cells_of_dim(2):
        if sc.cells[c][1] != e:
            continue
        left = [sc.labels[x] for x, s in sc.boundaries[c] if s > 0]
        right = [sc.labels[x] for x, s in reversed(sc.boundaries[c]) if s < 0]
        relators.append((tuple(left), tuple(right)))
    # canonical order: by generator pair
    relators.sort(key=lambda r: tuple(sorted(d.vertices.index(x) for x in set(r[0]))))
    pres = Presentation(tuple(gens), relators)
    expected = artin_relators(d)
    if _canonical(pres.relators) != _canonical(expected) or list(gens) != list(d.vertices):
        raise AssertionError(f"extracted presentation {pres} differs from the Artin presentation")
    return pres


def artin_relators(d) -> list:
    from .diagram import INF

    out = []
    for i, a in enumerate(d.vertices):
        for b in d.vertices[i + 1:]:
            m = d.m(a, b)
            if m == INF:
                continue
            out.append((tuple((a, b)[k % 2] for k in range(m)), tuple((b, a)[k % 2] for k in range(m))))
    return out


def _canonical(relators) -> set:
    """Relators as sets of cyclic words up to rotation and inversion."""
    out = set()
    for left, right in relators:
        word = [(x, 1) for x in left] + [(x, -1) for x in reversed(right)]
        variants = []
        for w in (word, [(x, -s) for x, s in reversed(word)]):
            for k in range(len(w)):
                variants.append(tuple(w[k:] + w[:k]))
        out.add(min(variants))
    return out


# ---------------------------------------------------------------------------
# collapse maps lift to Salvetti complexes

@dataclass
class SalvettiCollapse:
    source: SalvettiComplex
    target: SalvettiComplex
    cell_map: dict


def lift_collapse(source: SalvettiComplex, target: SalvettiComplex, cmap) -> SalvettiCollapse:
    """c-hat [F, v] = [c(F), c(v)]; checks well-definedness and p o c-hat = c o p."""
    faces_t = target.sigma.faces
    lat_t = target.sigma.lattice
    out = {}
    for i, (F, v) in enumerate(source.cells):
        cF, cv = cmap.face_map[F], cmap.face_map[v]
        rep = lat_t.index[compose(faces_t[cF], faces_t[cv])]
        out[i] = target.cell_index[(cF, rep)]
        if target.cells[out[i]][0] != cmap.face_map[source.cells[i][0]]:
            raise AssertionError("lifted collapse does not commute with the projection")
    # well-definedness over all representatives (F, v') of each class
    dc = source.sigma
    for F in range(len(dc.faces)):
        for v in dc.chambers:
            i = source.cell(F, v)
            cF, cv = cmap.face_map[F], cmap.face_map[v]
            j = target.cell_index[(cF, lat_t.index[compose(faces_t[cF], faces_t[cv])])]
            if j != out[i]:
                raise AssertionError("lifted collapse depends on the representative")
    return SalvettiCollapse(source, target, out)
