"""A small deterministic CDCL SAT solver.

Two watched literals, first-UIP learning, activity-ordered decisions with
ties broken towards the lowest variable index, phase saving, Luby restarts.
Variables are positive ints; literals are +v / -v as in DIMACS.

Internally literal ``+v`` is ``2v`` and ``-v`` is ``2v+1``.
"""

from __future__ import annotations

import heapq
import time


def luby(i: int) -> int:
    """The i-th term (0-based) of the Luby sequence 1,1,2,1,1,2,4,..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


class Solver:
    RESTART_UNIT = 100
    DECAY = 0.95

    def __init__(self):
        self.nvars = 0
        self.clauses: list[list[int]] = []
        self.watches: list[list[int]] = [[], []]
        self.lval = [0, 0]  # per internal literal: 1 true, -1 false, 0 free
        self.level = [0]
        self.reason: list[int | None] = [None]
        self.activity = [0.0]
        self.phase = [False]
        self.seen = [False]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.ok = True
        self.var_inc = 1.0
        self.heap: list[tuple[float, int]] = []
        self.stats = {"conflicts": 0, "decisions": 0, "propagations": 0, "restarts": 0}

    # -- construction -----------------------------------------------------

    def new_var(self) -> int:
        self.nvars += 1
        v = self.nvars
        self.watches.extend(([], []))
        self.lval.extend((0, 0))
        self.level.append(0)
        self.reason.append(None)
        self.activity.append(0.0)
        self.phase.append(False)
        self.seen.append(False)
        heapq.heappush(self.heap, (0.0, v))
        return v

    @staticmethod
    def _int(lit: int) -> int:
        return 2 * lit if lit > 0 else 2 * -lit + 1

    def add_clause(self, lits) -> bool:
        """Add a clause given as DIMACS literals.  Returns False once unsat."""
        if not self.ok:
            return False
        assert not self.trail_lim, "clauses may only be added at level 0"
        c = []
        for lit in lits:
            il = self._int(lit)
            if il ^ 1 in c:
                return True  # tautology
            if il not in c:
                c.append(il)
        # drop literals already false at level 0, satisfied clauses vanish
        if any(self.lval[x] == 1 for x in c):
            return True
        c = [x for x in c if self.lval[x] != -1]
        if not c:
            self.ok = False
            return False
        if len(c) == 1:
            self._enqueue(c[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self._attach(c)
        return True

    def _attach(self, c: list[int]) -> int:
        ci = len(self.clauses)
        self.clauses.append(c)
        self.watches[c[0]].append(ci)
        self.watches[c[1]].append(ci)
        return ci

    # -- core -------------------------------------------------------------

    def _enqueue(self, lit: int, reason: int | None) -> None:
        self.lval[lit] = 1
        self.lval[lit ^ 1] = -1
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> int | None:
        lval, clauses, watches, trail = self.lval, self.clauses, self.watches, self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            self.stats["propagations"] += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            kept = []
            i, n = 0, len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if lval[first] == 1:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    if lval[c[k]] != -1:
                        c[1], c[k] = c[k], false_lit
                        watches[c[1]].append(ci)
                        break
                else:
                    kept.append(ci)
                    if lval[first] == -1:
                        kept.extend(ws[i:])
                        watches[false_lit] = kept
                        self.qhead = len(trail)
                        return ci
                    self._enqueue(first, ci)
            watches[false_lit] = kept
        return None

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for x in range(1, self.nvars + 1):
                self.activity[x] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[x], x) for x in range(1, self.nvars + 1) if self.lval[2 * x] == 0]
            heapq.heapify(self.heap)
        elif self.lval[2 * v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        seen, level, trail = self.seen, self.level, self.trail
        cur = len(self.trail_lim)
        learnt = [0]
        path = 0
        p = None
        idx = len(trail) - 1
        while True:
            c = self.clauses[confl]
            for q in c if p is None else c[1:]:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if level[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            seen[p >> 1] = False
            path -= 1
            if path == 0:
                break
            confl = self.reason[p >> 1]
        learnt[0] = p ^ 1
        for q in learnt[1:]:
            seen[q >> 1] = False
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: level[learnt[k] >> 1])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[learnt[1] >> 1]

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            v = lit >> 1
            self.phase[v] = not (lit & 1)
            self.lval[lit] = 0
            self.lval[lit ^ 1] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    def _pick(self) -> int | None:
        heap, lval, act = self.heap, self.lval, self.activity
        while heap:
            a, v = heap[0]
            if lval[2 * v] != 0 or -a != act[v]:
                heapq.heappop(heap)
                continue
            heapq.heappop(heap)
            return v
        # stale entries may hide free variables; rebuild once
        free = [(-act[x], x) for x in range(1, self.nvars + 1) if lval[2 * x] == 0]
        if not free:
            return None
        heapq.heapify(free)
        self.heap = free
        return self._pick()

    def solve(self, deadline: float | None = None) -> bool | None:
        """True (sat), False (unsat) or None when ``deadline`` passes."""
        if not self.ok:
            return False
        if self._propagate() is not None:
            self.ok = False
            return False
        restarts = 0
        budget = self.RESTART_UNIT * luby(0)
        since = 0
        ticks = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.stats["conflicts"] += 1
                since += 1
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._enqueue(learnt[0], self._attach(learnt))
                self.var_inc /= self.DECAY
                continue
            ticks += 1
            if deadline is not None and ticks % 64 == 0 and time.monotonic() > deadline:
                self._cancel_until(0)
                return None
            if since >= budget:
                restarts += 1
                self.stats["restarts"] += 1
                since = 0
                budget = self.RESTART_UNIT * luby(restarts)
                self._cancel_until(0)
                continue
            v = self._pick()
            if v is None:
                return True
            self.stats["decisions"] += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(2 * v + (0 if self.phase[v] else 1), None)

    def set_phase(self, lit: int) -> None:
        """Prefer ``lit`` when its variable is first decided."""
        self.phase[abs(lit)] = lit > 0

    def value(self, lit: int) -> bool:
        """Truth of a DIMACS literal in the model found by the last solve()."""
        return self.lval[self._int(lit)] == 1

    def model(self) -> list[int]:
        return [v if self.lval[2 * v] == 1 else -v for v in range(1, self.nvars + 1)]
