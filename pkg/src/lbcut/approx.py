"""Recursive width-factor approximation for L-bounded vertex cuts.

Given a rooted tree decomposition of width w, the returned cut is feasible,
at most w times the optimum, and comes with a certified lower bound on the
optimum.  The recursion:

  1. no s-t path of length <= L: return the empty cut (bound 0);
  2. no bag holds both s and t: an ordinary minimum vertex cut suffices
     and some bag minus the terminals bounds its size by w (bound 1);
  3. otherwise let R be the nodes whose bag holds both terminals and whose
     subtree subgraph still has a short s-t path, and b a deepest node
     of R (max depth, then smallest id);
  4. if B(b) = {s,t}: the terminals separate the graph, recurse on the two
     halves split at b and take the union (bounds add);
  5. else delete B(b) minus the terminals, recurse on the remainder, and
     add the deleted vertices (bound grows by 1: every short s-t path in
     b's subtree subgraph runs through the deleted set, disjointly from
     the remainder's short paths).

If R is empty even though some bag holds both terminals (a case the
recursion above never selects a node for), the bag of the topmost such node
minus the terminals is itself a feasible cut: all short s-t paths would
otherwise be confined to that node's subtree subgraph, which has none.
That fallback returns directly with bound 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidDecomposition, LbcutError, NoVertexCut
from .graph import (CutSet, Graph, Instance, Variant, hop_distance,
                    min_vertex_cut, verify_cut)
from .treedec import (Strategy, TreeDecomposition, build_heuristic,
                      prune_decomposition, split_at, subtree_vertex_sets,
                      validate, width)


@dataclass(frozen=True)
class TraceEvent:
    """One recursion event: leaf-mincut, split, prune, or fallback."""

    kind: str
    node: Optional[int] = None
    bag: tuple[int, ...] = ()
    removed: tuple[int, ...] = ()
    graph: Optional[Graph] = field(default=None, repr=False)
    subtree_vertices: tuple[int, ...] = ()


@dataclass(frozen=True)
class ApproxResult:
    cut: CutSet
    lower_bound: int
    width_used: int
    trace: tuple[TraceEvent, ...]


def _recurse(g: Graph, td: TreeDecomposition, s: int, t: int, L: int,
             trace: list[TraceEvent],
             parent_measure: Optional[tuple[int, int]]) -> tuple[set[int], int]:
    measure = (td.n_nodes, len(g.vertices))
    if parent_measure is not None and not measure < parent_measure:
        raise InvalidDecomposition(
            "recursion failed to shrink (node count, vertex count); "
            "the decomposition is inconsistent")

    if hop_distance(g, s, t, cap=L) is None:
        return set(), 0

    bag_sets = td.bag_sets()
    both = [a for a in range(td.n_nodes)
            if s in bag_sets[a] and t in bag_sets[a]]
    if not both:
        cut = min_vertex_cut(g, s, t)
        trace.append(TraceEvent("leaf-mincut", removed=cut.members, graph=g))
        return set(cut.members), 1

    subtree_sets = subtree_vertex_sets(td)
    candidates = [
        a for a in both
        if hop_distance(g.induced(subtree_sets[a]), s, t, cap=L) is not None]

    if not candidates:
        a_star = min(both, key=lambda a: (td.depth[a], a))
        removed = tuple(sorted(bag_sets[a_star] - {s, t}))
        if not removed:
            raise InvalidDecomposition(
                "fallback separator is empty; the decomposition is inconsistent")
        trace.append(TraceEvent("fallback", node=a_star, bag=td.bags[a_star],
                                removed=removed, graph=g,
                                subtree_vertices=tuple(sorted(subtree_sets[a_star]))))
        return set(removed), 1

    b = max(candidates, key=lambda a: (td.depth[a], -a))
    if bag_sets[b] == {s, t}:
        if b == td.root:
            raise InvalidDecomposition(
                "terminal-only bag at the root cannot split the graph")
        sp = split_at(td, g, b)
        trace.append(TraceEvent("split", node=b, bag=td.bags[b], graph=g,
                                subtree_vertices=tuple(sorted(subtree_sets[b]))))
        below_cut, below_lb = _recurse(sp.below_graph, sp.below, s, t, L,
                                       trace, measure)
        above_cut, above_lb = _recurse(sp.above_graph, sp.above, s, t, L,
                                       trace, measure)
        return below_cut | above_cut, below_lb + above_lb

    removed = tuple(sorted(bag_sets[b] - {s, t}))
    g2, td2 = prune_decomposition(td, g, removed)
    trace.append(TraceEvent("prune", node=b, bag=td.bags[b], removed=removed,
                            graph=g,
                            subtree_vertices=tuple(sorted(subtree_sets[b]))))
    rest_cut, rest_lb = _recurse(g2, td2, s, t, L, trace, measure)
    return rest_cut | set(removed), 1 + rest_lb


def approx_vertex_cut(inst: Instance, td: TreeDecomposition) -> ApproxResult:
    """Run the recursion on a validated decomposition of the instance graph."""
    if inst.variant is not Variant.VERTEX:
        raise ValueError("the approximation handles vertex cuts only")
    if inst.graph.has_edge(inst.s, inst.t):
        raise NoVertexCut(f"vertices {inst.s} and {inst.t} are adjacent")
    check = validate(td, inst.graph)
    if not check.ok:
        raise InvalidDecomposition(check.violation)
    all_bag_vertices = set().union(*td.bag_sets())
    if not all_bag_vertices <= inst.graph.vertices:
        raise InvalidDecomposition(
            "bags contain vertices that are not in the graph")

    trace: list[TraceEvent] = []
    members, lower_bound = _recurse(inst.graph, td, inst.s, inst.t, inst.L,
                                    trace, None)
    cut = CutSet(Variant.VERTEX, tuple(sorted(members)),
                 lower_bound=lower_bound, algorithm="approx")
    if not verify_cut(inst, cut).feasible:
        raise LbcutError("approximation returned an infeasible cut; solver bug")
    return ApproxResult(cut, lower_bound, width(td), tuple(trace))


def approx_auto(inst: Instance,
                strategy: Strategy = Strategy.MIN_FILL) -> ApproxResult:
    """Build a heuristic decomposition, then approximate with it."""
    if inst.variant is not Variant.VERTEX:
        raise ValueError("the approximation handles vertex cuts only")
    td = build_heuristic(inst.graph, strategy)
    return approx_vertex_cut(inst, td)
