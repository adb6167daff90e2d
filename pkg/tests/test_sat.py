import itertools
import random

import pytest

from hextet.sat import LimitExceeded, Solver, iterate_models, solve_instance


def _random_cnf(rng, max_vars=8, max_clauses=24):
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        k = rng.randint(1, 3)
        vs = rng.sample(range(1, n + 1), min(k, n))
        clauses.append(tuple(v * rng.choice((1, -1)) for v in vs))
    return n, clauses


def _brute_models(n, clauses):
    out = []
    for bits in itertools.product((0, 1), repeat=n):
        if all(any((l > 0) == bool(bits[abs(l) - 1]) for l in c) for c in clauses):
            out.append(bits)
    return out


def test_verdicts_and_models_match_brute_force():
    rng = random.Random(7)
    for _ in range(200):
        n, clauses = _random_cnf(rng)
        brute = _brute_models(n, clauses)
        res, model = solve_instance(n, clauses)
        assert res == bool(brute)
        if res:
            assert all(
                any((l > 0) == bool(model[abs(l)]) for l in c) for c in clauses
            )


def test_enumeration_counts_match_brute_force():
    rng = random.Random(13)
    for _ in range(80):
        n, clauses = _random_cnf(rng, max_vars=6, max_clauses=12)
        brute = _brute_models(n, clauses)
        models = list(iterate_models(n, clauses, project=list(range(1, n + 1))))
        assert len(models) == len(brute)
        got = {tuple(m[v] for v in range(1, n + 1)) for m in models}
        assert got == set(brute)


def test_pigeonhole_unsat():
    holes = 5
    pigeons = holes + 1

    def var(p, h):
        return (p - 1) * holes + h + 1

    clauses = [tuple(var(p, h) for h in range(holes)) for p in range(1, pigeons + 1)]
    for h in range(holes):
        for p1 in range(1, pigeons + 1):
            for p2 in range(p1 + 1, pigeons + 1):
                clauses.append((-var(p1, h), -var(p2, h)))
    res, _ = solve_instance(pigeons * holes, clauses)
    assert res is False


def test_empty_clause_is_unsat():
    res, _ = solve_instance(2, [(1, 2), ()])
    assert res is False


def test_budget_raises_with_partials():
    holes = 7
    pigeons = holes + 1

    def var(p, h):
        return (p - 1) * holes + h + 1

    clauses = [tuple(var(p, h) for h in range(holes)) for p in range(1, pigeons + 1)]
    for h in range(holes):
        for p1 in range(1, pigeons + 1):
            for p2 in range(p1 + 1, pigeons + 1):
                clauses.append((-var(p1, h), -var(p2, h)))
    gen = iterate_models(
        pigeons * holes, clauses, project=[1], max_conflicts=5
    )
    with pytest.raises(LimitExceeded) as exc:
        list(gen)
    assert exc.value.partial == []


def test_deterministic_across_runs():
    rng = random.Random(23)
    n, clauses = _random_cnf(rng, max_vars=8, max_clauses=20)
    first = [m[1:] for m in iterate_models(n, clauses, project=list(range(1, n + 1)), limit=10)]
    second = [m[1:] for m in iterate_models(n, clauses, project=list(range(1, n + 1)), limit=10)]
    assert first == second


def test_incremental_add_clause():
    s = Solver(3, [(1, 2), (-1, 3)])
    assert s.solve() is True
    assert s.add_clause([-v if s.model()[v] else v for v in range(1, 4)])
    s.solve()  # either SAT with a new model or UNSAT; must not crash
