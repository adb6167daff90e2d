"""CNF encoding of the admissible-chirotope constraints of a triangulation.

Variables 1..70 are the sorted bases (true = +1).  The clauses say the
chirotope must:

  (1) satisfy the 3-term exchange condition for every pair sigma and every
      4-subset of the remaining labels (products of two basis signs get a
      definitional auxiliary variable each, so the condition is two ternary
      clauses per combination);
  (2) be acyclic: no 5-subset carries a positive circuit;
  (3) make every tet of the triangulation positive under the consistent
      orientation of the complex;
  (4) admit no circuit with X+ inside one tet and X- inside another
      (tets intersect properly);
  (5) optionally keep the points in convex position: no circuit isolates
      a single point against four others.

Uniformity and the alternating rule are structural: one variable per
sorted basis, sign corrections applied at encode time.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .chirotope import (
    BASES,
    BASIS_INDEX,
    FIVE_SUBSETS,
    N_BASES,
    Chirotope,
    circuit,
    check_chirotope,
    perm_parity,
)
from .triangulation import consistent_orientation, normalize_tets

LABELS = range(1, 9)


@dataclass
class SatInstance:
    n_vars: int
    clauses: list[tuple[int, ...]]
    tets: tuple = ()
    convex: bool = False
    comment: str = ""
    n_basis: int = N_BASES

    def chirotope_of_model(self, model) -> Chirotope:
        """Model is indexable by var (1-based) with truthy = +1."""
        return Chirotope(tuple(1 if model[v] else -1 for v in range(1, self.n_basis + 1)))


def _basis_lit(ordered) -> int:
    """Signed literal asserting chi(ordered tuple) = +1."""
    var = BASIS_INDEX[tuple(sorted(ordered))] + 1
    return var if perm_parity(tuple(ordered)) > 0 else -var


def _circuit_plus_literals(five) -> list[int]:
    """Literal j asserts that element j of the sorted 5-subset sits in X+."""
    lits = []
    for j in range(5):
        rest = five[:j] + five[j + 1 :]
        var = BASIS_INDEX[rest] + 1
        f = -1 if j % 2 == 0 else 1
        lits.append(var if f > 0 else -var)
    return lits


def encode_instance(
    tets, convex: bool = False, hull_boundary: bool = False
) -> SatInstance:
    """CNF for the admissible chirotopes of `tets`.

    `hull_boundary` adds the clauses forcing every boundary triangle of the
    triangulation onto the convex hull (all five remaining points on one
    side), which makes the union of the tets equal the hull.  That is a
    strictly stronger condition than convex position and is used only for
    witness construction, never for the satisfiability verdicts.
    """
    tets = normalize_tets(tets)
    clauses: list[tuple[int, ...]] = []
    next_var = N_BASES + 1

    # (1) exchange condition, one auxiliary equality variable per product
    for sigma in combinations(LABELS, 2):
        rest = [x for x in LABELS if x not in sigma]
        for quad in combinations(rest, 4):
            e1, e2, e3, e4 = quad
            term_lits = []
            for (x, y), (u, w) in (
                ((e1, e2), (e3, e4)),
                ((e1, e3), (e2, e4)),
                ((e1, e4), (e2, e3)),
            ):
                l1 = _basis_lit(sigma + (x, y))
                l2 = _basis_lit(sigma + (u, w))
                v1, s1 = abs(l1), (l1 > 0) - (l1 < 0)
                v2, s2 = abs(l2), (l2 > 0) - (l2 < 0)
                q = next_var
                next_var += 1
                # q <-> (v1 == v2)
                clauses.append((-v1, -v2, q))
                clauses.append((v1, v2, q))
                clauses.append((-v1, v2, -q))
                clauses.append((v1, -v2, -q))
                # product sign = s1*s2 when v1 == v2
                term_lits.append(q if s1 * s2 > 0 else -q)
            a1, a2, a3 = term_lits[0], -term_lits[1], term_lits[2]
            clauses.append((-a1, -a2, -a3))
            clauses.append((a1, a2, a3))

    # (2) acyclicity
    for five in FIVE_SUBSETS:
        lits = _circuit_plus_literals(five)
        clauses.append(tuple(-l for l in lits))
        clauses.append(tuple(lits))

    # (3) positive tets under the consistent orientation
    orient = consistent_orientation(tets)
    for t in tets:
        var = BASIS_INDEX[t] + 1
        clauses.append((var,) if orient[t] > 0 else (-var,))

    # (4) proper pairwise intersections
    seen: set[tuple[int, ...]] = set()
    for i in range(len(tets)):
        for j in range(i + 1, len(tets)):
            a, b = set(tets[i]), set(tets[j])
            union = sorted(a | b)
            if len(union) < 5:
                continue
            for five in combinations(union, 5):
                lits = _circuit_plus_literals(five)
                for first, second in ((a, b), (b, a)):
                    clause = []
                    for idx, elt in enumerate(five):
                        if elt in first and elt not in second:
                            clause.append(-lits[idx])
                        elif elt in second and elt not in first:
                            clause.append(lits[idx])
                    key = tuple(sorted(clause))
                    if key not in seen:
                        seen.add(key)
                        clauses.append(tuple(clause))

    # (5) convex position
    if convex:
        for five in FIVE_SUBSETS:
            lits = _circuit_plus_literals(five)
            for idx in range(5):
                others_plus = tuple(lits[j] for j in range(5) if j != idx)
                clauses.append((-lits[idx],) + others_plus)
                clauses.append((lits[idx],) + tuple(-l for l in others_plus))

    # boundary triangles on the hull: chi(a,b,c,x) equal for all x outside
    if hull_boundary:
        from .triangulation import boundary_triangles

        for tri in boundary_triangles(tets):
            others = [x for x in LABELS if x not in tri]
            lits = [_basis_lit(tri + (x,)) for x in others]
            for i in range(len(lits)):
                for j in range(i + 1, len(lits)):
                    clauses.append((lits[i], -lits[j]))
                    clauses.append((-lits[i], lits[j]))

    return SatInstance(
        n_vars=next_var - 1,
        clauses=clauses,
        tets=tets,
        convex=convex,
        comment=f"admissible chirotopes, {len(tets)} tets, convex={convex}",
    )


def admissible(chi: Chirotope, tets, convex: bool = False) -> bool:
    """Direct check that a chirotope satisfies a triangulation's constraints,
    independent of the CNF encoding."""
    tets = normalize_tets(tets)
    if not check_chirotope(chi):
        return False
    orient = consistent_orientation(tets)
    for t in tets:
        if chi.sign_sorted(t) != orient[t]:
            return False
    for i in range(len(tets)):
        for j in range(i + 1, len(tets)):
            a, b = set(tets[i]), set(tets[j])
            union = sorted(a | b)
            if len(union) < 5:
                continue
            for five in combinations(union, 5):
                plus, minus = circuit(chi, five)
                if (plus <= a and minus <= b) or (plus <= b and minus <= a):
                    return False
    if convex:
        for five in FIVE_SUBSETS:
            plus, minus = circuit(chi, five)
            if len(plus) == 1 or len(minus) == 1:
                return False
    return True


def to_dimacs(inst: SatInstance) -> str:
    lines = [f"c {inst.comment}", f"p cnf {inst.n_vars} {len(inst.clauses)}"]
    for c in inst.clauses:
        lines.append(" ".join(map(str, c)) + " 0")
    return "\n".join(lines) + "\n"


def dimacs_sidecar(inst: SatInstance) -> dict:
    """Mapping of DIMACS variable indices to sorted bases."""
    return {
        "basisVariables": {str(i + 1): list(BASES[i]) for i in range(N_BASES)},
        "auxiliaryFrom": N_BASES + 1,
        "tets": [list(t) for t in inst.tets],
        "convex": inst.convex,
    }
