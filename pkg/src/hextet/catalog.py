"""The classified catalog of hexahedron triangulations.

Classes are keyed by the canonical relabeling of their tet set.  Ids have
the form "<tetcount>_<letters>" where letters run A, B, ..., Z, AA, AB...
in lexicographic order of the canonical keys within one tet count.  The
letters are a deterministic local ordering; they are not meaningful across
implementations.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from multiprocessing import Pool

from .balls import ball_defect
from .boundary import all_boundaries, boundary_classes, from_triangles
from .decomp import DecompGraph, decomposition_graph
from .enumerate import MAX_TETS_DEFAULT, enumerate_triangulations
from .triangulation import boundary_triangles, canonical_key

TET_RANGE = range(5, 16)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    tet_count: int
    tets: tuple[tuple[int, ...], ...]  # canonical representative
    orbit_size: int
    boundary_class: str
    graph: DecompGraph


def class_letters(i: int) -> str:
    letters = ""
    i += 1
    while i > 0:
        i, r = divmod(i - 1, 26)
        letters = chr(ord("A") + r) + letters
    return letters


def _enumerate_one(args):
    key, max_tets = args
    from .boundary import BoundaryTriangulation

    b = BoundaryTriangulation(key)
    return key, enumerate_triangulations(b, max_tets=max_tets)


def enumerate_labeled(max_tets: int = MAX_TETS_DEFAULT, workers: int = 1):
    """Labeled triangulations per boundary key, optionally in parallel."""
    keys = [b.key() for b in all_boundaries()]
    if workers > 1:
        with Pool(workers) as pool:
            pairs = pool.map(_enumerate_one, [(k, max_tets) for k in keys])
        return dict(pairs)
    return {k: _enumerate_one((k, max_tets))[1] for k in keys}


def build_catalog(max_tets: int = MAX_TETS_DEFAULT, workers: int = 1) -> list[CatalogEntry]:
    per_boundary = enumerate_labeled(max_tets=max_tets, workers=workers)
    classes: dict[tuple, int] = {}
    for labeled in per_boundary.values():
        for tets in labeled:
            key = canonical_key(tets)
            classes[key] = classes.get(key, 0) + 1

    _, boundary_class_of = boundary_classes()

    entries = []
    by_count: dict[int, list[tuple]] = {}
    for key in classes:
        by_count.setdefault(len(key), []).append(key)
    for count in sorted(by_count):
        for i, key in enumerate(sorted(by_count[count])):
            rep = key
            if ball_defect(rep, boundary_triangles(rep)) is not None:
                raise AssertionError(f"catalog representative fails validation: {rep}")
            b = from_triangles(boundary_triangles(rep))
            entries.append(
                CatalogEntry(
                    id=f"{count}_{class_letters(i)}",
                    tet_count=count,
                    tets=rep,
                    orbit_size=classes[key],
                    boundary_class=boundary_class_of[b.key()],
                    graph=decomposition_graph(rep, b),
                )
            )
    return entries


def entry_to_dict(e: CatalogEntry) -> dict:
    return {
        "id": e.id,
        "tetCount": e.tet_count,
        "tets": [list(t) for t in e.tets],
        "orbitSize": e.orbit_size,
        "boundaryClass": e.boundary_class,
        "decompGraph": {
            "black": [list(p) for p in e.graph.black],
            "grey": [list(p) for p in e.graph.grey],
        },
    }


def entry_from_dict(d: dict) -> CatalogEntry:
    tets = tuple(tuple(t) for t in d["tets"])
    return CatalogEntry(
        id=d["id"],
        tet_count=d["tetCount"],
        tets=tets,
        orbit_size=d["orbitSize"],
        boundary_class=d["boundaryClass"],
        graph=DecompGraph(
            n=len(tets),
            black=tuple(tuple(p) for p in d["decompGraph"]["black"]),
            grey=tuple(tuple(p) for p in d["decompGraph"]["grey"]),
        ),
    )


def catalog_to_json(entries: list[CatalogEntry]) -> str:
    return json.dumps([entry_to_dict(e) for e in entries], indent=1) + "\n"


def catalog_from_json(text: str) -> list[CatalogEntry]:
    return [entry_from_dict(d) for d in json.loads(text)]


def counts_by_tets(entries: list[CatalogEntry]) -> dict[int, int]:
    counts = {n: 0 for n in TET_RANGE}
    for e in entries:
        counts[e.tet_count] = counts.get(e.tet_count, 0) + 1
    return counts


def counts_csv(entries: list[CatalogEntry], geometrical: dict[int, int] | None = None) -> str:
    """Class counts per tet count, one row per line like the summary table."""
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(["#tets"] + [str(n) for n in TET_RANGE] + ["Sum"])
    counts = counts_by_tets(entries)
    row = [counts.get(n, 0) for n in TET_RANGE]
    w.writerow(["combinatorial"] + [str(c) for c in row] + [str(sum(row))])
    if geometrical is not None:
        grow = [geometrical.get(n, 0) for n in TET_RANGE]
        w.writerow(["geometrical"] + [str(c) for c in grow] + [str(sum(grow))])
    return out.getvalue()
