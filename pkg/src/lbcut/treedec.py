"""Rooted tree decompositions: validation, heuristics, surgery, PACE I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .errors import GraphError, InvalidDecomposition, ParseError
from .graph import Graph


class Strategy(Enum):
    MIN_FILL = "min-fill"
    MIN_DEGREE = "min-degree"


@dataclass(frozen=True)
class TreeDecomposition:
    """A rooted tree of bags.  Nodes are 0..len(bags)-1.

    The structure is not required to be a valid decomposition of any
    particular graph at construction time; ``validate`` checks the axioms.
    parent/children/depth are derived from the root (None for nodes that a
    broken ``tree_edges`` leaves unreachable).
    """

    bags: tuple[tuple[int, ...], ...]
    tree_edges: frozenset[tuple[int, int]]
    root: int = 0
    parent: tuple[Optional[int], ...] = field(init=False, repr=False, compare=False)
    children: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    depth: tuple[Optional[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        bags = tuple(tuple(sorted(set(b))) for b in self.bags)
        object.__setattr__(self, "bags", bags)
        k = len(bags)
        edges = set()
        for x, y in self.tree_edges:
            if x == y or not (0 <= x < k and 0 <= y < k):
                raise InvalidDecomposition(f"bad tree edge ({x},{y})")
            edges.add((x, y) if x < y else (y, x))
        object.__setattr__(self, "tree_edges", frozenset(edges))
        if not 0 <= self.root < max(k, 1):
            raise InvalidDecomposition(f"root {self.root} out of range")

        adj: list[list[int]] = [[] for _ in range(k)]
        for x, y in edges:
            adj[x].append(y)
            adj[y].append(x)
        parent: list[Optional[int]] = [None] * k
        depth: list[Optional[int]] = [None] * k
        children: list[list[int]] = [[] for _ in range(k)]
        if k:
            depth[self.root] = 0
            queue = deque([self.root])
            while queue:
                a = queue.popleft()
                for b in sorted(adj[a]):
                    if depth[b] is None and b != self.root:
                        parent[b] = a
                        depth[b] = depth[a] + 1
                        children[a].append(b)
                        queue.append(b)
        object.__setattr__(self, "parent", tuple(parent))
        object.__setattr__(self, "children", tuple(tuple(c) for c in children))
        object.__setattr__(self, "depth", tuple(depth))

    @property
    def n_nodes(self) -> int:
        return len(self.bags)

    def bag_sets(self) -> list[frozenset[int]]:
        return [frozenset(b) for b in self.bags]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violation: Optional[str] = None


def width(td: TreeDecomposition) -> int:
    if not td.bags:
        raise InvalidDecomposition("empty decomposition has no width")
    return max(len(b) for b in td.bags) - 1


def validate(td: TreeDecomposition, g: Graph) -> ValidationResult:
    """Check the tree structure and the three decomposition axioms for g."""
    k = td.n_nodes
    if k == 0:
        return ValidationResult(False, "decomposition has no nodes")
    if len(td.tree_edges) != k - 1:
        return ValidationResult(
            False, f"{len(td.tree_edges)} tree edges over {k} nodes is not a tree")
    if any(d is None for d in td.depth):
        return ValidationResult(False, "tree edges do not connect all nodes")

    nodes_with: dict[int, list[int]] = {}
    for a, bag in enumerate(td.bags):
        for v in bag:
            nodes_with.setdefault(v, []).append(a)

    for v in g.sorted_vertices():
        if v not in nodes_with:
            return ValidationResult(False, f"vertex {v} appears in no bag")
    for u, v in sorted(g.edges):
        if not set(nodes_with[u]) & set(nodes_with[v]):
            return ValidationResult(False, f"edge ({u},{v}) is covered by no bag")
    for v in g.sorted_vertices():
        occ = set(nodes_with[v])
        start = next(iter(occ))
        seen = {start}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in _tree_neighbors(td, a):
                if b in occ and b not in seen:
                    seen.add(b)
                    queue.append(b)
        if seen != occ:
            return ValidationResult(
                False, f"bags containing vertex {v} do not form a subtree")
    return ValidationResult(True)


def _tree_neighbors(td: TreeDecomposition, a: int) -> list[int]:
    out = list(td.children[a])
    if td.parent[a] is not None:
        out.append(td.parent[a])
    return out


def _fill_in(work: dict[int, set[int]], v: int) -> int:
    nbrs = sorted(work[v])
    count = 0
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1:]:
            if y not in work[x]:
                count += 1
    return count


def build_heuristic(g: Graph, strategy: Strategy = Strategy.MIN_FILL) -> TreeDecomposition:
    """Tree decomposition from a greedy elimination ordering.

    Bag of v = v plus its not-yet-eliminated neighbors in the running
    chordal completion.  Node i holds the bag of the i-th eliminated vertex;
    its parent is the node of the earliest-eliminated other bag member.
    Ties always break toward the smallest vertex id.
    """
    if not g.vertices:
        raise GraphError("cannot decompose an empty graph")
    work = {v: set(g.neighbors(v)) for v in g.sorted_vertices()}
    order: list[int] = []
    bags: list[tuple[int, ...]] = []
    while work:
        if strategy is Strategy.MIN_FILL:
            v = min(work, key=lambda u: (_fill_in(work, u), u))
        else:
            v = min(work, key=lambda u: (len(work[u]), u))
        nbrs = work.pop(v)
        order.append(v)
        bags.append(tuple(sorted({v} | nbrs)))
        for u in nbrs:
            work[u] |= nbrs
            work[u].discard(u)
            work[u].discard(v)
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for i, bag in enumerate(bags):
        later = [pos[u] for u in bag if u != order[i]]
        if later:
            edges.append((i, min(later)))
        elif i + 1 < len(bags):
            edges.append((i, i + 1))  # keep disconnected pieces in one tree
    return TreeDecomposition(tuple(bags), frozenset(edges), root=0)


def rooted_at(td: TreeDecomposition, new_root: int) -> TreeDecomposition:
    return TreeDecomposition(td.bags, td.tree_edges, root=new_root)


@dataclass(frozen=True)
class SubtreeSplit:
    """The two halves of a decomposition split at a node b.

    ``below`` is b with its descendants (rooted at b); ``above`` is
    everything except b's strict descendants (original root).  The graphs
    are induced by the respective bag unions; they overlap inside B(b) only.
    """

    below: TreeDecomposition
    above: TreeDecomposition
    below_graph: Graph
    above_graph: Graph


def _subtree_nodes(td: TreeDecomposition, b: int) -> set[int]:
    out = {b}
    stack = [b]
    while stack:
        a = stack.pop()
        for c in td.children[a]:
            out.add(c)
            stack.append(c)
    return out


def _restrict(td: TreeDecomposition, keep: list[int], new_root: int) -> TreeDecomposition:
    index = {orig: i for i, orig in enumerate(keep)}
    bags = tuple(td.bags[a] for a in keep)
    edges = frozenset(
        (min(index[x], index[y]), max(index[x], index[y]))
        for x, y in td.tree_edges if x in index and y in index)
    return TreeDecomposition(bags, edges, root=index[new_root])


def split_at(td: TreeDecomposition, g: Graph, b: int) -> SubtreeSplit:
    if not 0 <= b < td.n_nodes:
        raise InvalidDecomposition(f"node {b} out of range")
    below_set = _subtree_nodes(td, b)
    below_ids = sorted(below_set)
    above_ids = sorted(set(range(td.n_nodes)) - (below_set - {b}))
    below = _restrict(td, below_ids, b)
    above = _restrict(td, above_ids, td.root)
    below_vertices = set().union(*below.bags) if below.bags else set()
    above_vertices = set().union(*above.bags) if above.bags else set()
    return SubtreeSplit(below, above,
                        g.induced(below_vertices), g.induced(above_vertices))


def prune_decomposition(td: TreeDecomposition, g: Graph,
                        cut: Iterable[int]) -> tuple[Graph, TreeDecomposition]:
    """Delete a vertex set from the graph and from every bag (bags may empty)."""
    drop = frozenset(cut)
    if not drop <= g.vertices:
        raise GraphError("prune set contains vertices not in the graph")
    bags = tuple(tuple(v for v in bag if v not in drop) for bag in td.bags)
    return g.without_vertices(drop), TreeDecomposition(bags, td.tree_edges, td.root)


def subtree_vertex_sets(td: TreeDecomposition) -> tuple[frozenset[int], ...]:
    """For every node a, the union of bags over the subtree rooted at a."""
    order = []
    stack = [td.root]
    while stack:
        a = stack.pop()
        order.append(a)
        stack.extend(td.children[a])
    sets: list[frozenset[int]] = [frozenset()] * td.n_nodes
    for a in reversed(order):
        acc = set(td.bags[a])
        for c in td.children[a]:
            acc |= sets[c]
        sets[a] = frozenset(acc)
    return tuple(sets)


def write_td(td: TreeDecomposition, n_vertices: int,
             comments: Iterable[str] = ()) -> str:
    """Serialize in PACE 2017 .td format (1-indexed, bags ascending)."""
    lines = [f"c {c}" for c in comments]
    max_bag = max((len(b) for b in td.bags), default=0)
    lines.append(f"s td {td.n_nodes} {max_bag} {n_vertices}")
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in bag]))
    for x, y in sorted(td.tree_edges):
        lines.append(f"{x + 1} {y + 1}")
    return "\n".join(lines) + "\n"


def read_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse PACE .td text; returns (decomposition rooted at node 0, n)."""
    header: Optional[tuple[int, int, int]] = None
    bags: dict[int, tuple[int, ...]] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            raise ParseError("blank line", lineno)
        if parts[0] == "c":
            continue
        if parts[0] == "s":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("malformed header, expected 's td <bags> <size> <n>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            if any(x < 0 for x in header):
                raise ParseError("negative header field", lineno)
            continue
        if header is None:
            raise ParseError("data before header", lineno)
        num_bags, _, n_vertices = header
        if parts[0] == "b":
            try:
                values = [int(x) for x in parts[1:]]
            except ValueError:
                raise ParseError("non-integer value in bag line", lineno) from None
            if not values:
                raise ParseError("bag line without id", lineno)
            bag_id, verts = values[0], values[1:]
            if not 1 <= bag_id <= num_bags:
                raise ParseError(f"bag id {bag_id} out of range", lineno)
            if bag_id in bags:
                raise ParseError(f"duplicate bag id {bag_id}", lineno)
            for v in verts:
                if not 1 <= v <= n_vertices:
                    raise ParseError(f"vertex {v} out of range", lineno)
            bags[bag_id] = tuple(v - 1 for v in verts)
        else:
            try:
                ids = [int(x) for x in parts]
            except ValueError:
                raise ParseError("malformed tree edge line", lineno) from None
            if len(ids) != 2:
                raise ParseError("tree edge line needs exactly two ids", lineno)
            x, y = ids
            if x == y or not (1 <= x <= num_bags and 1 <= y <= num_bags):
                raise ParseError(f"bad tree edge ({x},{y})", lineno)
            e = (min(x, y) - 1, max(x, y) - 1)
            if e in edges:
                raise ParseError(f"duplicate tree edge ({x},{y})", lineno)
            edges.add(e)
    if header is None:
        raise ParseError("missing 's td' header")
    num_bags, max_bag, n_vertices = header
    if len(bags) != num_bags:
        raise ParseError(f"header declares {num_bags} bags, found {len(bags)}")
    ordered = tuple(bags[i] for i in range(1, num_bags + 1))
    actual = max((len(b) for b in ordered), default=0)
    if actual != max_bag:
        raise ParseError(f"header declares max bag size {max_bag}, found {actual}")
    return TreeDecomposition(ordered, frozenset(edges), root=0), n_vertices
