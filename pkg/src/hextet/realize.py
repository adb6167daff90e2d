"""Coordinate realizations of admissible chirotopes.

The search gauge-fixes points 1, 2, 3, 5 to an affine frame (orientation
matched to the target sign of basis (1,2,3,5)), then runs multi-start Adam
descent on the hinge penalty over the 12 remaining coordinates.  Float
candidates are snapped to small-denominator rationals and re-verified with
exact arithmetic; only exact successes count.

Failure after the budget is merely "not found" - never a proof of
non-realizability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chirotope import Chirotope
from .exactgeom import (
    chirotope_of_points,
    DegenerateConfiguration,
    hull_facet_triangles,
    in_convex_position,
    verify_realization,
)
from .kernels import BASIS_ARRAY, STATUS_SATISFIED, descent
from .sat import LimitExceeded, iterate_models
from .satenc import encode_instance
from .triangulation import boundary_triangles

EPSILON = 1e-4
DEFAULT_RESTARTS = 64
DEFAULT_ITERS = 10_000
RATIONAL_DENOMINATOR_CAP = 10**6

FRAME_LABELS = (1, 2, 3, 5)
FREE_LABELS = (4, 6, 7, 8)
_FREE_ROWS = np.array([v - 1 for v in FREE_LABELS], dtype=np.int64)


@dataclass
class Budget:
    restarts: int = DEFAULT_RESTARTS
    iters: int = DEFAULT_ITERS
    chirotope_limit: int = 64
    learning_rate: float = 0.04


@dataclass
class Realization:
    class_id: str
    tets: tuple
    chirotope: Chirotope
    points: dict[int, tuple[Fraction, Fraction, Fraction]]
    convex: bool = False
    hull_boundary: bool = False  # boundary triangles are hull facets

    def verify(self) -> tuple[bool, object]:
        return verify_realization(self.points, self.tets, self.chirotope)


def _initial_points(chi: Chirotope, rng: np.random.Generator, restart: int) -> np.ndarray:
    pts = np.zeros((8, 3))
    pts[0] = (0.0, 0.0, 0.0)
    pts[1] = (1.0, 0.0, 0.0)
    pts[2] = (1.0, 1.0, 0.0)
    pts[4] = (0.0, 0.0, float(chi.sign(1, 2, 3, 5)))
    cube = {4: (0.0, 1.0, 0.0), 6: (1.0, 0.0, 1.0), 7: (1.0, 1.0, 1.0), 8: (0.0, 1.0, 1.0)}
    if restart % 2 == 0:
        # jittered cube corners, widening with the restart index
        scale = 0.3 + 0.2 * (restart // 2 % 8)
        for v in FREE_LABELS:
            base = np.array(cube[v])
            if chi.sign(1, 2, 3, 5) < 0:
                base[2] = -base[2]
            pts[v - 1] = base + rng.normal(0.0, scale, 3)
    else:
        pts[_FREE_ROWS] = rng.uniform(-1.5, 2.5, (4, 3))
    return pts


def _rationalize(pts: np.ndarray, cap: int) -> dict[int, tuple[Fraction, ...]]:
    out = {}
    for v in range(1, 9):
        out[v] = tuple(
            Fraction(float(pts[v - 1, c])).limit_denominator(cap) for c in range(3)
        )
    return out


def realize_chirotope(
    chi: Chirotope,
    seed: int = 0,
    budget: Budget | None = None,
) -> dict[int, tuple[Fraction, ...]] | None:
    """Search exact coordinates whose chirotope equals `chi` on all bases."""
    budget = budget or Budget()
    target = np.array(chi.signs, dtype=np.float64)
    for restart in range(budget.restarts):
        rng = np.random.default_rng((seed, restart))
        pts = _initial_points(chi, rng, restart)
        status = descent(
            pts, _FREE_ROWS, BASIS_ARRAY, target, EPSILON, budget.iters, budget.learning_rate
        )
        if status != STATUS_SATISFIED:
            continue
        cap = RATIONAL_DENOMINATOR_CAP
        for _ in range(6):
            exact = _rationalize(pts, cap)
            try:
                if chirotope_of_points(exact) == chi:
                    return exact
            except DegenerateConfiguration:
                pass
            cap *= 2
    return None


@dataclass
class ClassResult:
    class_id: str
    status: str  # realized | sat-infeasible | certified | undecided
    realization: Realization | None = None
    chirotopes_tried: int = 0
    certificates: list = field(default_factory=list)


def admissible_chirotopes(tets, convex: bool = False, limit: int | None = None,
                          max_conflicts: int | None = None,
                          hull_boundary: bool = False):
    """Stream the admissible chirotopes of a triangulation via SAT."""
    inst = encode_instance(tets, convex=convex, hull_boundary=hull_boundary)
    basis_vars = list(range(1, inst.n_basis + 1))
    for model in iterate_models(
        inst.n_vars, inst.clauses, project=basis_vars, limit=limit,
        max_conflicts=max_conflicts,
    ):
        yield inst.chirotope_of_model(model)


def boundary_on_hull(points, tets) -> bool:
    """All 12 boundary triangles of the triangulation are hull facets, so
    the union of the tets is the convex hull."""
    hull = {tri for tri, _ in hull_facet_triangles(points)}
    return set(boundary_triangles(tets)) <= hull


def _realize_from_stream(class_id, tets, convex, hull_boundary, seed, budget):
    tried = 0
    try:
        for chi in admissible_chirotopes(
            tets, convex=convex, hull_boundary=hull_boundary,
            limit=budget.chirotope_limit,
        ):
            tried += 1
            pts = realize_chirotope(chi, seed=seed, budget=budget)
            if pts is None:
                continue
            r = Realization(
                class_id, tuple(tets), chi, pts,
                convex=convex, hull_boundary=hull_boundary,
            )
            ok, detail = r.verify()
            if not ok:
                raise AssertionError(f"exact verification rejected {class_id}: {detail}")
            if convex and not in_convex_position(chi):
                raise AssertionError(
                    f"convex SAT produced non-convex chirotope for {class_id}"
                )
            if hull_boundary and not boundary_on_hull(pts, tets):
                raise AssertionError(
                    f"hull-boundary chirotope realized off the hull for {class_id}"
                )
            return r, tried
    except LimitExceeded:
        pass
    return None, tried


def realize_class(
    class_id: str,
    tets,
    convex: bool = False,
    seed: int = 0,
    budget: Budget | None = None,
) -> ClassResult:
    """Realize one catalog class: try each admissible chirotope in turn.

    With convex=True the satisfiability verdict comes from the plain convex
    constraints; the witness search first restricts to chirotopes whose
    boundary triangles lie on the hull (so the tets fill the whole hull)
    and falls back to arbitrary convex-position witnesses if none realizes.
    """
    budget = budget or Budget()
    if not convex:
        r, tried = _realize_from_stream(class_id, tets, False, False, seed, budget)
        if r is not None:
            return ClassResult(class_id, "realized", r, tried)
        if tried == 0:
            return ClassResult(class_id, "sat-infeasible", None, 0)
        return ClassResult(class_id, "undecided", None, tried)

    feasible = False
    for _chi in admissible_chirotopes(tets, convex=True, limit=1):
        feasible = True
    if not feasible:
        return ClassResult(class_id, "sat-infeasible", None, 0)
    r, tried = _realize_from_stream(class_id, tets, True, True, seed, budget)
    if r is not None:
        return ClassResult(class_id, "realized", r, tried)
    r, tried2 = _realize_from_stream(class_id, tets, True, False, seed, budget)
    if r is not None:
        return ClassResult(class_id, "realized", r, tried + tried2)
    return ClassResult(class_id, "undecided", None, tried + tried2)
