"""Exact rational geometry: orientation signs, volumes, hulls, verification.

Points are mappings label -> (x, y, z) with Fraction/int coordinates.
Everything in this module is exact; nothing here touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .chirotope import BASES, Chirotope, circuit
from .template import CORNER_COORDS
from .triangulation import consistent_orientation, normalize_tets


class DegenerateConfiguration(ValueError):
    def __init__(self, quad):
        super().__init__(f"coplanar quadruple {quad}")
        self.quad = quad


def det4(points, a, b, c, d):
    """Homogeneous 4x4 determinant of four labeled points (6x signed volume)."""
    pa, pb, pc, pd = points[a], points[b], points[c], points[d]
    u = (pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2])
    v = (pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2])
    w = (pd[0] - pa[0], pd[1] - pa[1], pd[2] - pa[2])
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def orientation(points, a, b, c, d) -> int:
    det = det4(points, a, b, c, d)
    return (det > 0) - (det < 0)


def signs_of_points(points) -> tuple[int, ...]:
    """Orientation of each sorted basis; 0 entries flag coplanar quadruples."""
    return tuple(orientation(points, *b) for b in BASES)


def chirotope_of_points(points) -> Chirotope:
    """Exact chirotope; raises DegenerateConfiguration on any coplanarity."""
    signs = []
    for b in BASES:
        s = orientation(points, *b)
        if s == 0:
            raise DegenerateConfiguration(b)
        signs.append(s)
    return Chirotope(signs)


def tet_volume(points, tet) -> Fraction:
    return Fraction(abs(det4(points, *sorted(tet)))) / 6


def total_volume(points, tets) -> Fraction:
    return sum((tet_volume(points, t) for t in tets), Fraction(0))


def hull_facet_triangles(points) -> list[tuple[tuple[int, ...], int]]:
    """Hull boundary triangles of a point set in general position.

    Returns (triangle, side) pairs where side is the orientation sign all
    non-triangle points share.
    """
    labels = sorted(points)
    out = []
    for tri in combinations(labels, 3):
        sides = {orientation(points, *tri, x) for x in labels if x not in tri}
        if 0 in sides:
            raise DegenerateConfiguration(tri)
        if len(sides) == 1:
            out.append((tri, sides.pop()))
    return out


def hull_volume(points) -> Fraction:
    """Exact convex hull volume via cones from the centroid."""
    labels = sorted(points)
    n = len(labels)
    cx = sum((Fraction(points[v][0]) for v in labels), Fraction(0)) / n
    cy = sum((Fraction(points[v][1]) for v in labels), Fraction(0)) / n
    cz = sum((Fraction(points[v][2]) for v in labels), Fraction(0)) / n
    ext = dict(points)
    ext["_apex"] = (cx, cy, cz)
    vol = Fraction(0)
    for tri, _side in hull_facet_triangles(points):
        vol += Fraction(abs(det4(ext, *tri, "_apex"))) / 6
    return vol


def in_convex_position(chi: Chirotope) -> bool:
    """No point lies inside a tetrahedron of four others: every circuit
    splits 2 against 3."""
    from .chirotope import FIVE_SUBSETS

    for five in FIVE_SUBSETS:
        plus, minus = circuit(chi, five)
        if len(plus) == 1 or len(minus) == 1:
            return False
    return True


def improper_pair(points_or_chi, tets):
    """Search all tet pairs for a crossing Radon partition.

    Accepts either a point map (signs computed exactly) or a Chirotope.
    Returns (tet, tet, five_subset) for the first pair whose circuit has
    X+ inside one tet and X- inside the other, or None when all pairs
    intersect properly.
    """
    chi = (
        points_or_chi
        if isinstance(points_or_chi, Chirotope)
        else chirotope_of_points(points_or_chi)
    )
    tets = sorted(tuple(sorted(t)) for t in tets)
    for i in range(len(tets)):
        for j in range(i + 1, len(tets)):
            a, b = set(tets[i]), set(tets[j])
            union = sorted(a | b)
            if len(union) < 5:
                continue
            for five in combinations(union, 5):
                plus, minus = circuit(chi, five)
                if (plus <= a and minus <= b) or (plus <= b and minus <= a):
                    return tets[i], tets[j], five
    return None


def oriented_tet_signs(points, tets) -> list[int]:
    """Orientation sign of each tet under the consistent orientation of the
    complex (so a proper embedding makes them all equal)."""
    tets = normalize_tets(tets)
    orient = consistent_orientation(tets)
    return [orientation(points, *t) * orient[t] for t in tets]


def verify_realization(points, tets, target: Chirotope):
    """Exact validity check of labeled coordinates against a triangulation.

    Conditions: the point chirotope equals the target on all 70 bases, the
    consistently oriented tets are uniformly positive or uniformly negative,
    and no pair of tets admits a crossing Radon partition.  Returns
    (ok, detail); detail names the first failing basis or tet pair.
    """
    try:
        chi = chirotope_of_points(points)
    except DegenerateConfiguration as exc:
        return False, ("degenerate", exc.quad)
    if chi != target:
        for i, b in enumerate(BASES):
            if chi.signs[i] != target.signs[i]:
                return False, ("chirotope-mismatch", b)
    signs = oriented_tet_signs(points, tets)
    if len(set(signs)) != 1:
        return False, ("orientation", tuple(signs))
    bad = improper_pair(chi, tets)
    if bad is not None:
        return False, ("improper-intersection", bad)
    return True, None


def reference_cube_points():
    """Unit cube corners in template labeling, as exact integers."""
    return {v: tuple(Fraction(c) for c in xyz) for v, xyz in CORNER_COORDS.items()}


def tiles_reference_cube(tets) -> bool:
    """Does the labeled triangulation tile the exact unit cube?

    The cube is a degenerate configuration (facet and diagonal planes), so
    this avoids chirotopes entirely: all tets must have nonzero volume with
    one consistent global orientation, and the volumes must sum to 1.  For
    catalog triangulations (valid ball complexes) this is equivalent to a
    proper geometric triangulation of the cube.
    """
    pts = reference_cube_points()
    tets = normalize_tets(tets)
    orient = consistent_orientation(tets)
    total = Fraction(0)
    global_sign = 0
    for t in tets:
        d = det4(pts, *t)
        if d == 0:
            return False
        s = (1 if d > 0 else -1) * orient[t]
        if global_sign == 0:
            global_sign = s
        elif s != global_sign:
            return False
        total += Fraction(abs(d)) / 6
    return total == 1
