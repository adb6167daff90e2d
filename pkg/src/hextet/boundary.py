"""The 64 boundary triangulations of the hexahedron and their 7 classes.

A boundary triangulation picks one diagonal per quadrilateral facet, so
there are 2^6 labeled instances.  The 48 symmetries act on those choices;
the orbits are the boundary classes, labeled 'a', 'b', ... in order of
their smallest member.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .template import (
    FACETS,
    FACET_CYCLES,
    FACET_DIAGONALS,
    SYMMETRY_GROUP,
    facet_triangles,
)


@dataclass(frozen=True)
class BoundaryTriangulation:
    """One diagonal per facet, in facet order."""

    diagonals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.diagonals) != 6:
            raise ValueError("expected one diagonal per facet")
        for i, d in enumerate(self.diagonals):
            if d not in FACET_DIAGONALS[i]:
                raise ValueError(f"{d} is not a diagonal of facet {FACET_CYCLES[i]}")

    @property
    def triangles(self) -> tuple[tuple[int, ...], ...]:
        """The 12 boundary triangles, sorted."""
        tris = []
        for i, d in enumerate(self.diagonals):
            tris.extend(facet_triangles(i, d))
        return tuple(sorted(tris))

    def relabel(self, g) -> "BoundaryTriangulation":
        diags = []
        for i in range(6):
            img = tuple(sorted((g[self.diagonals[i][0]], g[self.diagonals[i][1]])))
            # The facet moves under g; find where it landed.
            facet_img = tuple(sorted(g[v] for v in FACETS[i]))
            diags.append((FACETS.index(facet_img), img))
        diags.sort()
        return BoundaryTriangulation(tuple(d for _, d in diags))

    def key(self):
        return self.diagonals


def from_triangles(tris) -> BoundaryTriangulation:
    """Recover the diagonal choices from a 12-triangle boundary set."""
    tris = set(tuple(sorted(t)) for t in tris)
    diags = []
    for i in range(6):
        for d in FACET_DIAGONALS[i]:
            if set(facet_triangles(i, d)) <= tris:
                diags.append(d)
                break
        else:
            raise ValueError(f"no diagonal of facet {FACET_CYCLES[i]} matches")
    b = BoundaryTriangulation(tuple(diags))
    if set(b.triangles) != tris:
        raise ValueError("triangle set is not a hexahedron boundary")
    return b


def all_boundaries() -> tuple[BoundaryTriangulation, ...]:
    """All 64 labeled boundary triangulations, in deterministic order."""
    return tuple(
        BoundaryTriangulation(choice)
        for choice in product(*FACET_DIAGONALS)
    )


def boundary_classes():
    """Orbit partition of the 64 boundaries under the 48 symmetries.

    Returns (classes, class_of) where classes maps class letter to the
    sorted tuple of member keys and class_of maps each member key to its
    letter.  Letters are assigned by the smallest member of each orbit.
    """
    remaining = {b.key(): b for b in all_boundaries()}
    orbits = []
    while remaining:
        k = min(remaining)
        b = remaining[k]
        orb = sorted({b.relabel(g).key() for g in SYMMETRY_GROUP})
        orbits.append(tuple(orb))
        for key in orb:
            remaining.pop(key, None)
    orbits.sort()
    classes = {}
    class_of = {}
    for i, orb in enumerate(orbits):
        letter = chr(ord("a") + i)
        classes[letter] = orb
        for key in orb:
            class_of[key] = letter
    return classes, class_of
