"""Brute-force ground truth used to certify the real solvers.

These are deliberately simple: cuts by subset enumeration in increasing
cardinality, CSPs by exhaustive assignment enumeration, plus short-path
listing.  None of it scales; none of it is supposed to.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Union

import numpy as np

from .csp import CspInstance, CspSolution
from .errors import BudgetExceeded
from .graph import CutSet, Graph, Instance, Variant, bfs_distances, verify_cut

DEFAULT_MAX_SIZE = 6
DEFAULT_CSP_BUDGET = 10 ** 7


class Unknown:
    """Marker: enumeration budget exhausted before any feasible cut was found."""

    __slots__ = ()

    def __repr__(self):
        return "UNKNOWN"


UNKNOWN = Unknown()


def brute_force_cut(inst: Instance,
                    max_size: int = DEFAULT_MAX_SIZE) -> Union[CutSet, Unknown]:
    """First feasible cut in (cardinality, lexicographic) enumeration order.

    Returns UNKNOWN when no candidate set of size <= max_size is feasible;
    that is an explicit "don't know", not infeasibility.
    """
    g = inst.graph
    if inst.variant is Variant.EDGE:
        candidates: list = sorted(g.edges)
    else:
        candidates = [v for v in g.sorted_vertices() if v not in (inst.s, inst.t)]
    for k in range(0, min(max_size, len(candidates)) + 1):
        for combo in combinations(candidates, k):
            cut = CutSet(inst.variant, combo)
            if verify_cut(inst, cut).feasible:
                return CutSet(inst.variant, combo, lower_bound=k,
                              algorithm="brute-force")
    return UNKNOWN


def _packed_keys(q: CspInstance, scope, value_arrays) -> tuple:
    """Pack per-variable value arrays / allowed tuples into single integer keys."""
    mins = [min(q.domains[v]) for v in scope]
    spans = [max(q.domains[v]) - min(q.domains[v]) + 1 for v in scope]
    strides = [1] * len(scope)
    for i in range(len(scope) - 2, -1, -1):
        strides[i] = strides[i + 1] * spans[i + 1]
    keys = 0
    for i, arr in enumerate(value_arrays):
        keys = keys + (arr - mins[i]) * strides[i]
    return keys, mins, strides


def brute_force_csp(q: CspInstance,
                    budget: int = DEFAULT_CSP_BUDGET) -> Optional[CspSolution]:
    """Exhaustive minimum over all assignments; None if hard-infeasible.

    Ties go to the lexicographically first assignment under the per-variable
    domain orders.  Raises BudgetExceeded when the assignment space is
    larger than ``budget``.
    """
    total = 1
    for d in q.domains:
        total *= len(d)
    if total > budget:
        raise BudgetExceeded(
            f"{total} assignments exceed the budget of {budget}")
    if total == 0:
        return None
    if q.num_vars == 0:
        return CspSolution(0, ())

    sizes = [len(d) for d in q.domains]
    strides = [1] * q.num_vars
    for i in range(q.num_vars - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    idx = np.arange(total, dtype=np.int64)

    def values_of(v: int) -> np.ndarray:
        dom = np.asarray(q.domains[v], dtype=np.int64)
        return dom[(idx // strides[v]) % sizes[v]]

    def allowed_mask(c) -> np.ndarray:
        arrays = [values_of(v) for v in c.scope]
        keys, mins, key_strides = _packed_keys(q, c.scope, arrays)
        allowed = np.array(
            sorted(sum((x - m) * s for x, m, s in zip(t, mins, key_strides))
                   for t in c.allowed),
            dtype=np.int64)
        return np.isin(keys, allowed)

    hard_ok = np.ones(total, dtype=bool)
    for c in q.hard:
        hard_ok &= allowed_mask(c)
    violations = np.zeros(total, dtype=np.int64)
    for c in q.soft:
        violations += ~allowed_mask(c)
    if not hard_ok.any():
        return None
    costs = np.where(hard_ok, violations, np.iinfo(np.int64).max)
    best = int(np.argmin(costs))
    assignment = tuple(q.domains[v][(best // strides[v]) % sizes[v]]
                       for v in range(q.num_vars))
    return CspSolution(int(violations[best]), assignment)


def enumerate_short_paths(g: Graph, s: int, t: int, L: int) -> list[tuple[int, ...]]:
    """All simple s-t paths with at most L edges, in DFS order.

    Branches are pruned with the exact hop distance to t, so the search
    only walks prefixes that can still finish within the budget.
    """
    dist_t = bfs_distances(g, t)
    if dist_t[s] is None or dist_t[s] > L:
        return []
    paths: list[tuple[int, ...]] = []

    def extend(v: int, path: list[int], used: set[int]) -> None:
        if v == t:
            paths.append(tuple(path))
            return
        spent = len(path) - 1
        for w in g.neighbors(v):
            if w in used:
                continue
            d = dist_t[w]
            if d is None or spent + 1 + d > L:
                continue
            path.append(w)
            used.add(w)
            extend(w, path, used)
            used.discard(w)
            path.pop()

    extend(s, [s], {s})
    return paths
