"""Tetrahedral mesh ingestion: TetGen (.node/.ele) and ASCII MEDIT (.mesh).

Formats are auto-detected by extension.  TetGen indices may be 0- or
1-based (taken from the first index of the .node file).  Loaded meshes
carry derived adjacency: edge set, triangle incidence and vertex stars.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np


class MeshParseError(ValueError):
    def __init__(self, path, line_no, msg):
        super().__init__(f"{path}:{line_no}: {msg}")
        self.path = str(path)
        self.line_no = line_no


@dataclass
class TetMesh:
    vertices: np.ndarray  # (n, 3) float
    tets: np.ndarray  # (m, 4) int, 0-based, each row sorted
    name: str = ""
    edges: set = field(default_factory=set)
    tri_tets: dict = field(default_factory=dict)
    vertex_tets: dict = field(default_factory=dict)
    adjacency: dict = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_tets(self) -> int:
        return len(self.tets)

    def neighbors(self, v: int) -> set:
        return {u for (a, b) in self.edges if v in (a, b) for u in (a, b) if u != v}


def _derive_adjacency(mesh: TetMesh):
    mesh.edges = set()
    mesh.tri_tets = {}
    mesh.vertex_tets = {}
    for i, tet in enumerate(mesh.tets):
        t = tuple(int(x) for x in tet)
        for e in combinations(t, 2):
            mesh.edges.add(e)
        for tri in combinations(t, 3):
            mesh.tri_tets.setdefault(tri, []).append(i)
        for v in t:
            mesh.vertex_tets.setdefault(v, []).append(i)
    mesh.adjacency = {v: set() for v in range(mesh.n_vertices)}
    for a, b in mesh.edges:
        mesh.adjacency[a].add(b)
        mesh.adjacency[b].add(a)


def build_mesh(vertices, tets, name: str = "") -> TetMesh:
    vertices = np.asarray(vertices, dtype=np.float64)
    tets_arr = np.array([sorted(int(v) for v in t) for t in tets], dtype=np.int64)
    if len(tets_arr):
        if tets_arr.min() < 0 or tets_arr.max() >= len(vertices):
            raise ValueError("tet vertex index out of range")
        rows = {tuple(r) for r in tets_arr.tolist()}
        if len(rows) != len(tets_arr):
            raise ValueError("duplicate tets in mesh")
    else:
        tets_arr = tets_arr.reshape(0, 4)
    mesh = TetMesh(vertices=vertices, tets=tets_arr, name=name)
    _derive_adjacency(mesh)
    return mesh


def _data_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for i, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield i, line


def load_tetgen(node_path) -> TetMesh:
    node_path = Path(node_path)
    ele_path = node_path.with_suffix(".ele")
    lines = list(_data_lines(node_path))
    if not lines:
        raise MeshParseError(node_path, 0, "empty .node file")
    ln, header = lines[0]
    parts = header.split()
    try:
        n_pts = int(parts[0])
    except ValueError:
        raise MeshParseError(node_path, ln, "bad .node header") from None
    if len(lines) - 1 < n_pts:
        raise MeshParseError(node_path, ln, f"expected {n_pts} vertex lines")
    coords = {}
    for ln, line in lines[1 : 1 + n_pts]:
        p = line.split()
        try:
            idx = int(p[0])
            coords[idx] = (float(p[1]), float(p[2]), float(p[3]))
        except (ValueError, IndexError):
            raise MeshParseError(node_path, ln, f"bad vertex line: {line}") from None
    base = min(coords)
    if base not in (0, 1):
        raise MeshParseError(node_path, 0, f"unsupported index base {base}")
    vertices = [coords[i + base] for i in range(n_pts)]

    lines = list(_data_lines(ele_path))
    if not lines:
        raise MeshParseError(ele_path, 0, "empty .ele file")
    ln, header = lines[0]
    try:
        n_tets = int(header.split()[0])
    except ValueError:
        raise MeshParseError(ele_path, ln, "bad .ele header") from None
    tets = []
    for ln, line in lines[1 : 1 + n_tets]:
        p = line.split()
        try:
            tets.append(tuple(int(x) - base for x in p[1:5]))
        except (ValueError, IndexError):
            raise MeshParseError(ele_path, ln, f"bad tet line: {line}") from None
        if any(v < 0 or v >= n_pts for v in tets[-1]):
            raise MeshParseError(ele_path, ln, f"vertex index out of range: {line}")
    try:
        return build_mesh(vertices, tets, name=node_path.stem)
    except ValueError as exc:
        raise MeshParseError(ele_path, 0, str(exc)) from None


def load_medit(path) -> TetMesh:
    path = Path(path)
    tokens: list[tuple[int, str]] = []
    for ln, line in _data_lines(path):
        for tok in line.split():
            tokens.append((ln, tok))
    pos = 0

    def take() -> tuple[int, str]:
        nonlocal pos
        if pos >= len(tokens):
            raise MeshParseError(path, tokens[-1][0] if tokens else 0, "unexpected EOF")
        t = tokens[pos]
        pos += 1
        return t

    vertices: list[tuple] = []
    tets: list[tuple] = []
    dim = 3
    while pos < len(tokens):
        ln, tok = take()
        key = tok.lower()
        if key == "meshversionformatted":
            take()
        elif key == "dimension":
            dim = int(take()[1])
        elif key == "vertices":
            n = int(take()[1])
            for _ in range(n):
                xyz = [float(take()[1]) for _ in range(dim)]
                take()  # reference tag
                while len(xyz) < 3:
                    xyz.append(0.0)
                vertices.append(tuple(xyz))
        elif key == "tetrahedra":
            n = int(take()[1])
            for _ in range(n):
                quad = [int(take()[1]) - 1 for _ in range(4)]
                take()  # reference tag
                tets.append(tuple(quad))
        elif key == "end":
            break
        elif key in ("triangles", "edges", "quadrilaterals", "corners", "ridges"):
            n = int(take()[1])
            width = {"triangles": 4, "edges": 3, "quadrilaterals": 5, "corners": 1, "ridges": 1}[key]
            for _ in range(n * width):
                take()
        else:
            raise MeshParseError(path, ln, f"unknown MEDIT section {tok!r}")
    if any(v < 0 or v >= len(vertices) for t in tets for v in t):
        raise MeshParseError(path, 0, "tet vertex index out of range")
    try:
        return build_mesh(vertices, tets, name=path.stem)
    except ValueError as exc:
        raise MeshParseError(path, 0, str(exc)) from None


def load_mesh(path) -> TetMesh:
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".node":
        return load_tetgen(path)
    if ext == ".ele":
        return load_tetgen(path.with_suffix(".node"))
    if ext == ".mesh":
        return load_medit(path)
    raise ValueError(f"unrecognized mesh extension {ext!r} (use .node/.ele or .mesh)")


def write_medit(path, vertices, tets):
    """ASCII MEDIT export (1-based indices, unit reference tags)."""
    lines = ["MeshVersionFormatted 2", "Dimension 3", "Vertices", str(len(vertices))]
    for v in vertices:
        lines.append(f"{float(v[0])} {float(v[1])} {float(v[2])} 1")
    lines.append("Tetrahedra")
    lines.append(str(len(tets)))
    for t in tets:
        lines.append(" ".join(str(int(x) + 1) for x in t) + " 1")
    lines.append("End")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
