"""Embedded CDCL SAT solver.

Standard machinery: two watched literals, first-UIP clause learning with
recursive minimization, VSIDS activities with phase saving, Luby restarts.
Deterministic: no randomness anywhere, ties broken by variable index, so
repeated runs yield identical models and identical enumeration order.

The solver is incremental in the way all-solutions enumeration needs:
after a SAT answer, add a blocking clause and call solve() again; learned
clauses are kept.
"""

from __future__ import annotations

from heapq import heappop, heappush


class LimitExceeded(Exception):
    """Conflict budget ran out; carries whatever was enumerated so far."""

    def __init__(self, partial):
        super().__init__("solver conflict budget exceeded")
        self.partial = partial


_UNASSIGNED = -1


def _lit_idx(lit: int) -> int:
    v = lit if lit > 0 else -lit
    return 2 * v + (lit < 0)


class Solver:
    def __init__(self, n_vars: int, clauses=()):
        self.n = n_vars
        self.assign = [_UNASSIGNED] * (n_vars + 1)  # var -> 0/1
        self.level = [0] * (n_vars + 1)
        self.reason = [-1] * (n_vars + 1)
        self.activity = [0.0] * (n_vars + 1)
        self.saved_phase = [0] * (n_vars + 1)
        self.var_inc = 1.0
        self.clauses: list[list[int]] = []
        self.watches: list[list[int]] = [[] for _ in range(2 * n_vars + 2)]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.ok = True
        self.conflicts = 0
        self._heap: list[tuple[float, int]] = []
        for v in range(1, n_vars + 1):
            heappush(self._heap, (0.0, v))
        for c in clauses:
            self.add_clause(c)

    # ----- assignment helpers -------------------------------------------

    def _value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        if v == _UNASSIGNED:
            return _UNASSIGNED
        return v ^ (lit < 0)

    def _enqueue(self, lit: int, reason: int):
        var = abs(lit)
        self.assign[var] = 1 if lit > 0 else 0
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)

    # ----- clause management --------------------------------------------

    def add_clause(self, lits) -> bool:
        """Add a clause at decision level 0.  Returns False when the solver
        becomes unsatisfiable outright."""
        if not self.ok:
            return False
        if self.trail_lim:
            self._backtrack(0)
        lits = sorted(set(lits), key=abs)
        if any(-l in lits for l in lits):
            return True  # tautology
        lits = [l for l in lits if self._value(l) != 0]
        if any(self._value(l) == 1 for l in lits):
            return True
        if not lits:
            self.ok = False
            return False
        if len(lits) == 1:
            self._enqueue(lits[0], -1)
            if self._propagate() != -1:
                self.ok = False
                return False
            return True
        cref = len(self.clauses)
        self.clauses.append(lits)
        self.watches[_lit_idx(lits[0])].append(cref)
        self.watches[_lit_idx(lits[1])].append(cref)
        return True

    # ----- propagation ----------------------------------------------------

    def _propagate(self) -> int:
        """Unit propagation; returns conflicting clause ref or -1."""
        clauses = self.clauses
        watches = self.watches
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            fidx = _lit_idx(-lit)
            ws = watches[fidx]
            i = j = 0
            n_ws = len(ws)
            while i < n_ws:
                cref = ws[i]
                i += 1
                c = clauses[cref]
                if c[0] == -lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                v0 = self._value(first)
                if v0 == 1:
                    ws[j] = cref
                    j += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    if self._value(c[k]) != 0:
                        c[1], c[k] = c[k], c[1]
                        watches[_lit_idx(c[1])].append(cref)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = cref
                j += 1
                if v0 == 0:
                    while i < n_ws:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    self.qhead = len(self.trail)
                    return cref
                self._enqueue(first, cref)
            del ws[j:]
        return -1

    # ----- conflict analysis ----------------------------------------------

    def _bump(self, var: int):
        self.activity[var] += self.var_inc
        if self.activity[var] > 1e100:
            for v in range(1, self.n + 1):
                self.activity[v] *= 1e-100
            self.var_inc *= 1e-100
        heappush(self._heap, (-self.activity[var], var))

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        learnt = [0]  # placeholder for the asserting literal
        seen = [False] * (self.n + 1)
        counter = 0
        lit = 0
        idx = len(self.trail) - 1
        level = len(self.trail_lim)
        while True:
            for q in (self.clauses[confl] if lit == 0 else self.clauses[confl][1:]):
                var = abs(q)
                if not seen[var] and self.level[var] > 0:
                    seen[var] = True
                    self._bump(var)
                    if self.level[var] >= level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            lit = self.trail[idx]
            idx -= 1
            seen[abs(lit)] = False
            counter -= 1
            if counter == 0:
                break
            confl = self.reason[abs(lit)]
        learnt[0] = -lit

        # recursive minimization: drop literals implied by the rest
        marked = set(abs(l) for l in learnt)
        keep = [learnt[0]]
        for l in learnt[1:]:
            if self.reason[abs(l)] == -1 or not self._redundant(abs(l), marked, seen):
                keep.append(l)
        learnt = keep

        if len(learnt) == 1:
            return learnt, 0
        bt = max(self.level[abs(l)] for l in learnt[1:])
        k = max(range(1, len(learnt)), key=lambda k_: self.level[abs(learnt[k_])])
        learnt[1], learnt[k] = learnt[k], learnt[1]
        return learnt, bt

    def _redundant(self, var: int, marked: set, seen) -> bool:
        stack = [var]
        visited = set()
        while stack:
            v = stack.pop()
            cref = self.reason[v]
            if cref == -1:
                return False
            for q in self.clauses[cref]:
                qv = abs(q)
                if qv == v or qv in visited:
                    continue
                visited.add(qv)
                if self.level[qv] == 0:
                    continue
                if qv not in marked:
                    return False
                stack.append(qv)
        return True

    def _backtrack(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        bound = self.trail_lim[lvl]
        for lit in reversed(self.trail[bound:]):
            var = abs(lit)
            self.saved_phase[var] = self.assign[var]
            self.assign[var] = _UNASSIGNED
            self.reason[var] = -1
            heappush(self._heap, (-self.activity[var], var))
        del self.trail[bound:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    # ----- main loop --------------------------------------------------------

    def _decide(self) -> int:
        while self._heap:
            _, var = heappop(self._heap)
            if self.assign[var] == _UNASSIGNED:
                return var if self.saved_phase[var] == 1 else -var
        for var in range(1, self.n + 1):
            if self.assign[var] == _UNASSIGNED:
                return var if self.saved_phase[var] == 1 else -var
        return 0

    @staticmethod
    def _luby(i: int) -> int:
        k = 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
        while i != (1 << k) - 1:
            i -= (1 << k) - 1
            k = (i + 1).bit_length() - 1
        return 1 << (k - 1)

    def solve(self, max_conflicts: int | None = None):
        """True = SAT (model available), False = UNSAT, None = budget hit."""
        if not self.ok:
            return False
        if self.trail_lim:
            self._backtrack(0)
        if self._propagate() != -1:
            self.ok = False
            return False
        restart_idx = 1
        budget = 100 * self._luby(restart_idx)
        conflicts_here = 0
        while True:
            confl = self._propagate()
            if confl != -1:
                self.conflicts += 1
                conflicts_here += 1
                if max_conflicts is not None and self.conflicts > max_conflicts:
                    self._backtrack(0)
                    return None
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, bt = self._analyze(confl)
                self._backtrack(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    cref = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[_lit_idx(learnt[0])].append(cref)
                    self.watches[_lit_idx(learnt[1])].append(cref)
                    self._enqueue(learnt[0], cref)
                self.var_inc /= 0.95
                continue
            if conflicts_here >= budget:
                conflicts_here = 0
                restart_idx += 1
                budget = 100 * self._luby(restart_idx)
                self._backtrack(0)
                continue
            lit = self._decide()
            if lit == 0:
                return True
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, -1)

    def model(self) -> list[int]:
        """Indexable by variable, entries 0/1."""
        return list(self.assign)


def solve_instance(n_vars: int, clauses, max_conflicts=None):
    s = Solver(n_vars, clauses)
    res = s.solve(max_conflicts=max_conflicts)
    return res, (s.model() if res else None)


def iterate_models(
    n_vars: int,
    clauses,
    project: list[int],
    limit: int | None = None,
    max_conflicts: int | None = None,
):
    """Solve-block-repeat enumeration projected onto `project` variables.

    Yields models (lists indexed by var).  Raises LimitExceeded with the
    partial list when the conflict budget runs out.
    """
    s = Solver(n_vars, clauses)
    found = []
    while limit is None or len(found) < limit:
        res = s.solve(max_conflicts=max_conflicts)
        if res is None:
            raise LimitExceeded(found)
        if res is False:
            return
        m = s.model()
        found.append(m)
        yield m
        blocking = [(-v if m[v] else v) for v in project]
        if not s.add_clause(blocking):
            return
