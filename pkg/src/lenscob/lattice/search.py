"""Exhaustive search for embeddings of linear lattices into ``(Z^N, -Id)``.

Vectors are placed one at a time in chain order.  Candidates for the next
vector are produced by a constraint-driven walk: while some pairing with an
already placed vector is wrong, the next nonzero coordinate must lie in that
vector's support; once every pairing is right, the leftover norm goes either
onto fresh coordinates or onto any used coordinate (which reopens
constraints).  Columns with identical profiles over the placed vectors are
interchangeable, so candidates must be non-increasing across each such class,
and fresh coordinates are filled in sorted, non-negative form.  The search is
complete: an "absent" verdict is a proof of non-embeddability.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .subsets import LinearLatticeSpec, VectorSubset


class BudgetExceeded(Exception):
    pass


@dataclass
class EmbeddingResult:
    status: str  # "found", "absent" or "undecided"
    witness: VectorSubset | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "nodes": self.nodes,
            "witness": self.witness.to_json() if self.witness is not None else None,
        }


def _square_partitions(r: int, max_parts: int, cap: int | None = None):
    """Non-increasing lists of positive ints whose squares sum to ``r``."""
    if r == 0:
        yield []
        return
    if max_parts == 0:
        return
    top = math.isqrt(r) if cap is None else min(cap, math.isqrt(r))
    for x in range(top, 0, -1):
        # remaining parts are <= x, so they can carry at most (max_parts-1)*x^2
        if r - x * x > (max_parts - 1) * x * x:
            break
        for rest in _square_partitions(r - x * x, max_parts - 1, x):
            yield [x] + rest


class _Search:
    def __init__(self, weights, pairing, N, budget=None):
        self.w = list(weights)
        self.P = pairing
        self.n = len(self.w)
        self.N = N
        self.budget = budget
        self.nodes = 0
        self.tail = [sum(self.w[k:]) for k in range(self.n + 1)]

    def tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded

    def candidates(self, prefix, used):
        """Candidate vectors for position ``len(prefix)``; yields ``(vec, new_used)``."""
        k = len(prefix)
        targets = [-self.P[i][k] for i in range(k)]
        supp = [[j for j in range(used) if prefix[i][j]] for i in range(k)]
        col_hits = [[(i, prefix[i][j]) for i in range(k) if prefix[i][j]] for j in range(used)]
        classes: dict[tuple, list[int]] = {}
        for j in range(used):
            classes.setdefault(tuple(prefix[i][j] for i in range(k)), []).append(j)
        classes_list = [c for c in classes.values() if len(c) > 1]
        fresh_room = self.N - used
        seen_states = set()
        out = []
        emitted = set()

        def ok_symmetry(assign):
            for cls in classes_list:
                vals = [assign.get(j, 0) for j in cls]
                if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
                    return False
            return True

        def emit(assign, fresh):
            if not ok_symmetry(assign):
                return
            vec = [0] * self.N
            for j, x in assign.items():
                vec[j] = x
            for t, x in enumerate(fresh):
                vec[used + t] = x
            vec = tuple(vec)
            if vec not in emitted:
                emitted.add(vec)
                out.append((vec, used + len(fresh)))

        def walk(assign, r, dots):
            state = frozenset(assign.items())
            if state in seen_states:
                return
            seen_states.add(state)
            self.tick()
            worst = None
            for i in range(k):
                need = targets[i] - dots[i]
                if need:
                    free = [j for j in supp[i] if j not in assign]
                    cap = sum(prefix[i][j] ** 2 for j in free)
                    if need * need > r * cap:
                        return
                    if worst is None or len(free) < len(worst[1]):
                        worst = (i, free)
            if worst is not None:
                cols = worst[1]
            else:
                if r == 0:
                    emit(assign, [])
                    return
                for parts in _square_partitions(r, fresh_room):
                    emit(assign, parts)
                cols = [j for j in range(used) if j not in assign]
            top = math.isqrt(r)
            for j in cols:
                for x in range(-top, top + 1):
                    if x == 0:
                        continue
                    nd = list(dots)
                    for i, y in col_hits[j]:
                        nd[i] += x * y
                    assign[j] = x
                    walk(assign, r - x * x, nd)
                    del assign[j]

        walk({}, self.w[k], [0] * k)
        return out

    def pruned(self, k, used):
        # every coordinate has to be hit for an equal-rank embedding
        return used + self.tail[k] < self.N <= self.n

    def dfs(self, prefix, used):
        k = len(prefix)
        if k == self.n:
            return list(prefix)
        if self.pruned(k, used):
            return None
        for vec, nu in self.candidates(prefix, used):
            prefix.append(vec)
            res = self.dfs(prefix, nu)
            if res is not None:
                return res
            prefix.pop()
        return None


def _check_witness(spec: LinearLatticeSpec, S: VectorSubset) -> None:
    if S.pairing_matrix() != spec.pairing_matrix():
        raise AssertionError("embedding witness does not reproduce the pairing matrix")


def _run_branch(args):
    weights, pairing, N, budget, prefix, used = args
    s = _Search(weights, pairing, N, budget)
    try:
        res = s.dfs([tuple(v) for v in prefix], used)
    except BudgetExceeded:
        return "undecided", None, s.nodes
    return ("found" if res is not None else "absent"), res, s.nodes


def find_embedding(spec: LinearLatticeSpec, rank: int | None = None,
                   node_budget: int | None = None, jobs: int = 1) -> EmbeddingResult:
    """Look for vectors in ``Z^rank`` (default: the rank of ``spec``) whose
    ``-Id`` pairings reproduce the pairing matrix of ``spec``.

    ``node_budget`` bounds the number of search nodes; running out gives
    status ``"undecided"``, never ``"absent"``.  With ``jobs > 1`` the
    second-level branches are explored in worker processes (the budget then
    applies per branch) and the witness reported is still the first one in
    sequential search order.
    """
    N = spec.rank if rank is None else rank
    weights = spec.weights
    P = spec.pairing_matrix()
    if not weights:
        return EmbeddingResult("found", VectorSubset(N, ()), 0)

    if jobs <= 1 or len(weights) < 2:
        status, res, nodes = _run_branch((weights, P, N, node_budget, [], 0))
    else:
        # Split on the first two vectors.  Node counts are reported as the
        # sequential search would count them, so output does not depend on jobs.
        s = _Search(weights, P, N, None)
        tasks, groups = [], []
        first = [] if s.pruned(0, 0) else s.candidates([], 0)
        base = s.nodes
        for v0, u0 in first:
            if s.pruned(1, u0):
                groups.append((0, []))
                continue
            before = s.nodes
            second = s.candidates([v0], u0)
            groups.append((s.nodes - before, list(range(len(tasks), len(tasks) + len(second)))))
            tasks.extend(([v0, v1], u1) for v1, u1 in second)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                _run_branch, [(weights, P, N, node_budget, pre, u) for pre, u in tasks]))
        status, res, nodes = "absent", None, base
        for pre_nodes, idxs in groups:
            nodes += pre_nodes
            for i in idxs:
                st, r, nn = results[i]
                nodes += nn
                if st == "found":
                    status, res = "found", r
                    break
                if st == "undecided":
                    status = "undecided"
            if status == "found":
                break
    if status != "found":
        return EmbeddingResult(status, None, nodes)
    S = VectorSubset(N, tuple(tuple(v) for v in res))
    _check_witness(spec, S)
    return EmbeddingResult("found", S, nodes)
