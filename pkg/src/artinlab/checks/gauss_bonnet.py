"""Combinatorial Gauss-Bonnet on disk diagrams.

Angles and areas are in units of pi.  With Fraction (or int) input all
arithmetic is exact; floats are accepted and compared with a tolerance.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

NUMERIC_TOL = 1e-9


class InvalidEmbedding(ValueError):
    pass


def _number(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidEmbedding(f"unsupported angle value {x!r}")


@dataclass
class Face:
    """A polygonal cell: its boundary vertex cycle and the corner angle at each vertex."""
    vertices: list
    angles: list
    area: object = None

    def __post_init__(self):
        if len(self.vertices) < 3 or len(self.vertices) != len(self.angles):
            raise InvalidEmbedding("a face needs at least three corners and one angle per corner")
        self.angles = [_number(a) for a in self.angles]
        if self.area is not None:
            self.area = _number(self.area)

    def edges(self) -> list:
        k = len(self.vertices)
        return [frozenset((self.vertices[i], self.vertices[(i + 1) % k])) for i in range(k)]


@dataclass
class DiskDiagram:
    faces: list
    name: str = ""

    @classmethod
    def from_json(cls, data: dict) -> "DiskDiagram":
        faces = [Face([str(v) for v in f["vertices"]], f["angles"], f.get("area")) for f in data["faces"]]
        return cls(faces, data.get("name", ""))

    @classmethod
    def load(cls, path) -> "DiskDiagram":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def vertices(self) -> list:
        seen = {}
        for f in self.faces:
            for v in f.vertices:
                seen.setdefault(v, None)
        return list(seen)

    def edge_faces(self) -> dict:
        out = {}
        for k, f in enumerate(self.faces):
            for e in f.edges():
                out.setdefault(e, []).append(k)
        return out


@dataclass
class GaussBonnetReport:
    geometry: str
    curvature: dict                 # vertex -> kappa / pi
    total: object                   # sum of kappa / pi
    area: object                    # sum of face areas / pi
    residual: object                # total - area - 2
    exact: bool
    euler_characteristic: int
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.exact:
            return self.residual == 0
        return abs(float(self.residual)) <= NUMERIC_TOL

    def to_json(self) -> dict:
        fmt = _fmt
        return {"geometry": self.geometry, "ok": self.ok, "exact": self.exact,
                "curvature": {v: fmt(k) for v, k in self.curvature.items()},
                "totalCurvature": fmt(self.total), "totalArea": fmt(self.area),
                "residual": fmt(self.residual), "eulerCharacteristic": self.euler_characteristic,
                "units": "pi"}

    def text(self) -> str:
        lines = [f"gauss-bonnet ({self.geometry}): {'OK' if self.ok else 'FAILED'}"]
        for v, k in self.curvature.items():
            lines.append(f"  kappa({v}) = {_fmt(k)} pi")
        lines.append(f"  sum kappa = {_fmt(self.total)} pi")
        if self.geometry == "hyperbolic":
            lines.append(f"  sum area = {_fmt(self.area)} pi")
            lines.append(f"  sum kappa - sum area = {_fmt(self.total - self.area)} pi")
        lines.append(f"  residual = {_fmt(self.residual)}")
        return "\n".join(lines)


def _fmt(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(float(x))


def _close(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= NUMERIC_TOL


def validate(dd: DiskDiagram, geometry: str) -> int:
    """Check the combinatorial disk conditions; returns V - E + F."""
    if not dd.faces:
        raise InvalidEmbedding("empty diagram")
    for f in dd.faces:
        if len(set(f.vertices)) != len(f.vertices):
            raise InvalidEmbedding(f"face {f.vertices} repeats a vertex")
        if any(a <= 0 for a in f.angles):
            raise InvalidEmbedding(f"face {f.vertices} has a non-positive corner angle")
        k = len(f.vertices)
        if geometry == "flat" and not _close(sum(f.angles), Fraction(k - 2)):
            raise InvalidEmbedding(f"flat face {f.vertices} has angle sum {_fmt(sum(f.angles))} pi, not {k - 2} pi")
        if geometry == "hyperbolic" and f.area is None and not sum(f.angles) < k - 2:
            raise InvalidEmbedding(f"hyperbolic face {f.vertices} has angle sum at least {k - 2} pi")
    ef = dd.edge_faces()
    if any(len(fs) > 2 for fs in ef.values()):
        raise InvalidEmbedding("an edge lies on more than two faces")
    chi = len(dd.vertices()) - len(ef) + len(dd.faces)
    if chi != 1:
        raise InvalidEmbedding(f"Euler characteristic {chi}, a disk needs 1")
    return chi


def gauss_bonnet(dd: DiskDiagram, geometry: str = "flat") -> GaussBonnetReport:
    """kappa(v) = (2 - chi(lk v)) pi - alpha(v).

    The link of v is a graph with one vertex per edge-end at v and one edge
    per corner at v, so chi(lk v) = #edges at v - #corners at v.  Flat
    diagrams satisfy sum kappa = 2 pi; hyperbolic ones sum kappa - sum area = 2 pi
    with area (k - 2) pi - sum of angles unless given.
    """
    if geometry not in ("flat", "hyperbolic"):
        raise InvalidEmbedding(f"unknown geometry {geometry!r}")
    chi = validate(dd, geometry)
    edge_ends, corners, alpha = {}, {}, {}
    for e in dd.edge_faces():
        for v in e:
            edge_ends[v] = edge_ends.get(v, 0) + 1
    for f in dd.faces:
        for v, a in zip(f.vertices, f.angles):
            corners[v] = corners.get(v, 0) + 1
            alpha[v] = alpha.get(v, 0) + a
    curvature = {v: (2 - (edge_ends[v] - corners[v])) - alpha[v] for v in dd.vertices()}
    total = sum(curvature.values())
    area = Fraction(0)
    if geometry == "hyperbolic":
        for f in dd.faces:
            area += f.area if f.area is not None else (len(f.vertices) - 2) - sum(f.angles)
    residual = total - area - 2
    exact = all(isinstance(x, Fraction) for x in list(curvature.values()) + [area])
    return GaussBonnetReport(geometry, curvature, total, area, residual, exact, chi)


def regular_polygon_face(vertices: Sequence[str], angle) -> Face:
    return Face(list(vertices), [angle] * len(vertices))
