"""Minimum-cost CSP solving by dynamic programming over a tree decomposition.

Bottom-up over the rooted tree: each node enumerates the assignments of its
bag, filters by every hard constraint its bag covers, charges each soft
constraint at exactly one owner node (the topmost bag containing its whole
scope), and folds children in one at a time by agreeing on the shared
variables.  A top-down pass over stored back-pointers rebuilds one optimal
assignment.

Tables are dense numpy arrays indexed by a mixed-radix bag index while they
fit under ``dense_cutoff`` entries, and plain dicts above that; tables over
``table_budget`` entries abort with ResourceExceeded instead of thrashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Union

import numpy as np

from .csp import (Assignment, Constraint, CspInstance, CspSolution,
                  decode_edge, decode_vertex, encode_edge_cut,
                  encode_vertex_cut)
from .errors import (DecompositionMismatch, LbcutError, NoVertexCut,
                     ResourceExceeded)
from .graph import CutSet, Instance, Variant, verify_cut
from .treedec import Strategy, TreeDecomposition, build_heuristic

DENSE_CUTOFF = 1 << 22
TABLE_BUDGET = 1 << 26

_INT_MAX = np.iinfo(np.int64).max


def _check_decomposition(q: CspInstance, td: TreeDecomposition) -> None:
    """Raise DecompositionMismatch unless td can drive the DP for q."""
    if td.n_nodes == 0:
        raise DecompositionMismatch("decomposition has no nodes")
    if len(td.tree_edges) != td.n_nodes - 1 or any(d is None for d in td.depth):
        raise DecompositionMismatch("decomposition is not a tree")
    occurrences: dict[int, set[int]] = {}
    for a, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < q.num_vars:
                raise DecompositionMismatch(
                    f"bag {a} references unknown variable {v}")
            occurrences.setdefault(v, set()).add(a)
    for v, occ in occurrences.items():
        seen = set()
        stack = [next(iter(occ))]
        while stack:
            a = stack.pop()
            if a in seen:
                continue
            seen.add(a)
            for b in list(td.children[a]) + ([td.parent[a]] if td.parent[a] is not None else []):
                if b in occ and b not in seen:
                    stack.append(b)
        if seen != occ:
            raise DecompositionMismatch(
                f"bags containing variable {v} do not form a subtree")
    bag_sets = td.bag_sets()
    for c in q.hard + q.soft:
        scope = set(c.scope)
        if not any(scope <= bs for bs in bag_sets):
            raise DecompositionMismatch(
                f"no bag covers constraint scope {c.scope}")


def soft_owners(q: CspInstance, td: TreeDecomposition) -> list[int]:
    """Owner node of each soft constraint: the topmost bag covering its scope."""
    bag_sets = td.bag_sets()
    owners = []
    for c in q.soft:
        scope = set(c.scope)
        covering = [a for a, bs in enumerate(bag_sets) if scope <= bs]
        if not covering:
            raise DecompositionMismatch(
                f"no bag covers constraint scope {c.scope}")
        owners.append(min(covering, key=lambda a: (td.depth[a], a)))
    return owners


class _Table:
    """Per-node DP state over the bag's mixed-radix assignment index."""

    __slots__ = ("vars", "sizes", "strides", "size", "dense",
                 "cost", "entries", "ptrs", "child_nodes", "_pos_cache")

    def __init__(self, bag_vars, domains, dense_cutoff):
        self.vars = tuple(bag_vars)
        self.sizes = [len(domains[v]) for v in self.vars]
        self.strides = [1] * len(self.vars)
        for i in range(len(self.vars) - 2, -1, -1):
            self.strides[i] = self.strides[i + 1] * self.sizes[i + 1]
        size = 1
        for s in self.sizes:
            size *= s
        self.size = size
        self.dense = size <= dense_cutoff
        self.cost: Optional[np.ndarray] = None
        self.entries: Optional[dict[int, list]] = None
        self.ptrs: list[np.ndarray] = []
        self.child_nodes: list[int] = []
        self._pos_cache: dict[int, np.ndarray] = {}

    def positions(self, v: int) -> np.ndarray:
        """Dense only: the domain position of variable v for every index."""
        if v not in self._pos_cache:
            i = self.vars.index(v)
            idx = np.arange(self.size, dtype=np.int64)
            self._pos_cache[v] = (idx // self.strides[i]) % self.sizes[i]
        return self._pos_cache[v]

    def decode(self, idx: int, domains) -> dict[int, int]:
        out = {}
        for v, sz, st in zip(self.vars, self.sizes, self.strides):
            out[v] = domains[v][(idx // st) % sz]
        return out


def _constraint_lut(q: CspInstance, c: Constraint) -> tuple[list[int], np.ndarray]:
    """Boolean table over the scope's domain-position space; True = allowed."""
    sizes = [len(q.domains[v]) for v in c.scope]
    strides = [1] * len(c.scope)
    for i in range(len(c.scope) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    pos_of = [{x: k for k, x in enumerate(q.domains[v])} for v in c.scope]
    total = 1
    for s in sizes:
        total *= s
    lut = np.zeros(total, dtype=bool)
    for t in c.allowed:
        key = sum(pos_of[i][x] * strides[i] for i, x in enumerate(t))
        lut[key] = True
    return strides, lut


def _apply_dense(tbl: _Table, q: CspInstance, c: Constraint, hard: bool) -> None:
    strides, lut = _constraint_lut(q, c)
    key = np.zeros(tbl.size, dtype=np.int64)
    for i, v in enumerate(c.scope):
        key += tbl.positions(v) * strides[i]
    ok = lut[key]
    if hard:
        tbl.cost[~ok] = np.inf
    else:
        tbl.cost += ~ok


def _build_table(q: CspInstance, bag, hard_cons, soft_cons,
                 dense_cutoff, table_budget, node) -> _Table:
    tbl = _Table(bag, q.domains, dense_cutoff)
    if tbl.size > table_budget:
        raise ResourceExceeded(
            f"table at node {node} needs {tbl.size} entries "
            f"(budget {table_budget})")
    if tbl.dense:
        tbl.cost = np.zeros(tbl.size, dtype=np.float64)
        for c in hard_cons:
            _apply_dense(tbl, q, c, hard=True)
        for c in soft_cons:
            _apply_dense(tbl, q, c, hard=False)
    else:
        entries: dict[int, list] = {}
        doms = [q.domains[v] for v in tbl.vars]
        var_at = {v: i for i, v in enumerate(tbl.vars)}
        for positions in product(*(range(s) for s in tbl.sizes)):
            values = {v: doms[i][positions[i]] for v, i in var_at.items()}
            if any(tuple(values[v] for v in c.scope) not in c.allowed
                   for c in hard_cons):
                continue
            cost = sum(1 for c in soft_cons
                       if tuple(values[v] for v in c.scope) not in c.allowed)
            idx = sum(p * st for p, st in zip(positions, tbl.strides))
            entries[idx] = [float(cost), []]
        tbl.entries = entries
    return tbl


def _shared_layout(parent: _Table, child: _Table):
    child_set = set(child.vars)
    shared = [v for v in parent.vars if v in child_set]
    sizes = [parent.sizes[parent.vars.index(v)] for v in shared]
    strides = [1] * len(shared)
    for i in range(len(shared) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    total = 1
    for s in sizes:
        total *= s
    return shared, strides, total


def _project_index(tbl: _Table, idx: int, shared, strides) -> int:
    out = 0
    for v, st in zip(shared, strides):
        i = tbl.vars.index(v)
        out += ((idx // tbl.strides[i]) % tbl.sizes[i]) * st
    return out


def _child_message(child: _Table, shared, strides, total):
    """Group-minimum of the child table over the shared variables.

    Returns (msg, arg) arrays of length ``total``; ties break toward the
    smallest child index in both representations.
    """
    msg = np.full(total, np.inf)
    arg = np.full(total, _INT_MAX, dtype=np.int64)
    if child.dense:
        proj = np.zeros(child.size, dtype=np.int64)
        for v, st in zip(shared, strides):
            proj += child.positions(v) * st
        np.minimum.at(msg, proj, child.cost)
        cand = np.flatnonzero(child.cost == msg[proj])
        np.minimum.at(arg, proj[cand], cand)
    else:
        for idx in sorted(child.entries):
            cost = child.entries[idx][0]
            s = _project_index(child, idx, shared, strides)
            if cost < msg[s]:
                msg[s] = cost
                arg[s] = idx
    return msg, arg


def _join_child(parent: _Table, child: _Table, child_node: int) -> None:
    shared, strides, total = _shared_layout(parent, child)
    msg, arg = _child_message(child, shared, strides, total)
    parent.child_nodes.append(child_node)
    if parent.dense:
        proj = np.zeros(parent.size, dtype=np.int64)
        for v, st in zip(shared, strides):
            proj += parent.positions(v) * st
        parent.cost += msg[proj]
        parent.ptrs.append(arg[proj])
    else:
        dead = []
        for idx, entry in parent.entries.items():
            s = _project_index(parent, idx, shared, strides)
            if not np.isfinite(msg[s]):
                dead.append(idx)
            else:
                entry[0] += msg[s]
                entry[1].append(int(arg[s]))
        for idx in dead:
            del parent.entries[idx]


def solve_min_csp(q: CspInstance, td: TreeDecomposition, *,
                  dense_cutoff: int = DENSE_CUTOFF,
                  table_budget: int = TABLE_BUDGET) -> Optional[CspSolution]:
    """Minimize violated soft constraints; None iff hard-infeasible.

    ``td`` must be a tree decomposition of the constraint graph covering
    every constraint scope (DecompositionMismatch otherwise).  Variables
    that appear in no bag are unconstrained and get their domain minimum.
    """
    _check_decomposition(q, td)
    if any(len(d) == 0 for d in q.domains):
        return None
    owners = soft_owners(q, td)
    bag_sets = td.bag_sets()
    hard_at: list[list[Constraint]] = [[] for _ in range(td.n_nodes)]
    for c in q.hard:
        scope = set(c.scope)
        for a, bs in enumerate(bag_sets):
            if scope <= bs:
                hard_at[a].append(c)
    soft_at: list[list[Constraint]] = [[] for _ in range(td.n_nodes)]
    for c, a in zip(q.soft, owners):
        soft_at[a].append(c)

    order = []
    stack = [td.root]
    while stack:
        a = stack.pop()
        order.append(a)
        stack.extend(td.children[a])

    tables: dict[int, _Table] = {}
    for a in reversed(order):
        tbl = _build_table(q, td.bags[a], hard_at[a], soft_at[a],
                           dense_cutoff, table_budget, a)
        for c in td.children[a]:
            _join_child(tbl, tables[c], c)
        tables[a] = tbl

    root_tbl = tables[td.root]
    if root_tbl.dense:
        if root_tbl.size == 0:
            return None
        best = int(np.argmin(root_tbl.cost))
        best_cost = root_tbl.cost[best]
        if not np.isfinite(best_cost):
            return None
    else:
        if not root_tbl.entries:
            return None
        best = min(root_tbl.entries, key=lambda i: (root_tbl.entries[i][0], i))
        best_cost = root_tbl.entries[best][0]

    values: list[Optional[int]] = [None] * q.num_vars
    walk = [(td.root, best)]
    while walk:
        node, idx = walk.pop()
        tbl = tables[node]
        for v, x in tbl.decode(idx, q.domains).items():
            if values[v] is None:
                values[v] = x
        if tbl.dense:
            child_idxs = [int(p[idx]) for p in tbl.ptrs]
        else:
            child_idxs = tbl.entries[idx][1]
        walk.extend(zip(tbl.child_nodes, child_idxs))
    for v in range(q.num_vars):
        if values[v] is None:
            values[v] = q.domains[v][0]
    return CspSolution(int(round(best_cost)), tuple(values))


@dataclass(frozen=True)
class ExactRun:
    cut: CutSet
    width_used: int
    csp_cost: int


def solve_exact_cut_detailed(inst: Instance,
                             td: Optional[TreeDecomposition] = None, *,
                             strategy: Strategy = Strategy.MIN_FILL,
                             dense_cutoff: int = DENSE_CUTOFF,
                             table_budget: int = TABLE_BUDGET) -> ExactRun:
    """Encode, solve, decode, and verify; reports the decomposition width used."""
    from .treedec import width as td_width

    if inst.variant is Variant.EDGE:
        q = encode_edge_cut(inst)
    else:
        if inst.graph.has_edge(inst.s, inst.t):
            raise NoVertexCut(
                f"vertices {inst.s} and {inst.t} are adjacent")
        q = encode_vertex_cut(inst)
    if td is None:
        td = build_heuristic(inst.graph, strategy)
    sol = solve_min_csp(q, td, dense_cutoff=dense_cutoff,
                        table_budget=table_budget)
    if sol is None:
        raise LbcutError("cut encodings are always hard-feasible; "
                         "infeasibility indicates a bug")
    if inst.variant is Variant.EDGE:
        decoded = decode_edge(inst, sol.assignment)
    else:
        decoded = decode_vertex(inst, sol.assignment)
    cut = CutSet(inst.variant, decoded.members,
                 lower_bound=len(decoded.members), algorithm="exact-dp")
    if not verify_cut(inst, cut).feasible:
        raise LbcutError("decoded cut failed verification; solver bug")
    if len(cut.members) != sol.cost:
        raise LbcutError("decoded cut size disagrees with the CSP cost")
    return ExactRun(cut, td_width(td), sol.cost)


def solve_exact_cut(inst: Instance,
                    td: Optional[TreeDecomposition] = None, *,
                    strategy: Strategy = Strategy.MIN_FILL,
                    dense_cutoff: int = DENSE_CUTOFF,
                    table_budget: int = TABLE_BUDGET) -> CutSet:
    """Optimal L-bounded cut of the instance via the CSP route."""
    return solve_exact_cut_detailed(
        inst, td, strategy=strategy, dense_cutoff=dense_cutoff,
        table_budget=table_budget).cut
