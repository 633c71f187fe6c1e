"""Instance file format (DIMACS-like) and deterministic instance generators.

Format: optional `c ...` comment lines, one `p lbcut <n> <m>` header, then
exactly m lines `e <u> <v>` with 1-indexed endpoints.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Iterable, Sequence, Union

from .errors import ParseError, UsageError
from .graph import Graph, norm_edge

GENERATOR_KINDS = ("grid", "cycle", "diamond", "theta", "partial-ktree")


def parse_instance(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            raise ParseError("blank line", lineno)
        if parts[0] == "c":
            continue
        if parts[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "lbcut":
                raise ParseError("malformed header, expected 'p lbcut <n> <m>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative header field", lineno)
            continue
        if parts[0] == "e":
            if header is None:
                raise ParseError("edge before header", lineno)
            if len(parts) != 3:
                raise ParseError("edge line needs exactly two endpoints", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer endpoint", lineno) from None
            n = header[0]
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"endpoint out of range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            e = norm_edge(u - 1, v - 1)
            if e in seen:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            seen.add(e)
            edges.append(e)
            continue
        raise ParseError(f"unrecognized line kind {parts[0]!r}", lineno)
    if header is None:
        raise ParseError("missing 'p lbcut' header")
    if len(edges) != header[1]:
        raise ParseError(
            f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], frozenset(range(header[0])), frozenset(edges))


def write_instance(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p lbcut {g.n} {g.m}")
    for u, v in sorted(g.edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def load_instance(path: Union[str, Path]) -> Graph:
    return parse_instance(Path(path).read_text())


def _grid(rows: int, cols: int) -> list[tuple[int, int]]:
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return edges


def _partial_ktree(n: int, k: int, keep: float, rng: random.Random) -> tuple[int, list]:
    if n < k + 1:
        raise UsageError("partial-ktree needs n >= k+1")
    edges = {norm_edge(u, v) for u in range(k + 1) for v in range(u + 1, k + 1)}
    cliques = [tuple(range(k + 1))]
    for v in range(k + 1, n):
        base = list(cliques[rng.randrange(len(cliques))])
        if len(base) > k:
            base = sorted(rng.sample(base, k))
        for u in base:
            edges.add(norm_edge(u, v))
        for u in base:
            cliques.append(tuple(sorted(set(base) - {u}) + [v]))
        cliques.append(tuple(base))
    kept = [e for e in sorted(edges) if rng.random() < keep]
    return n, kept


def generate(kind: str, params: Sequence, seed: int = 0) -> str:
    """Instance text for a named family; deterministic under (params, seed)."""
    rng = random.Random(seed)
    if kind == "grid":
        rows, cols = _int_params(kind, params, 2)
        if rows < 1 or cols < 1:
            raise UsageError("grid needs rows >= 1 and cols >= 1")
        n, edges = rows * cols, _grid(rows, cols)
        note = f"grid rows={rows} cols={cols}"
    elif kind == "cycle":
        (n,) = _int_params(kind, params, 1)
        if n < 3:
            raise UsageError("cycle needs n >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
        note = f"cycle n={n}"
    elif kind == "diamond":
        (k,) = _int_params(kind, params, 1)
        if k < 1:
            raise UsageError("diamond needs k >= 1")
        # s=1, middles 2..k+1, t=k+2 (1-indexed in the file)
        n = k + 2
        edges = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
        note = f"diamond k={k}"
    elif kind == "theta":
        p, q = _int_params(kind, params, 2)
        if p < 1 or q < 1 or (p == 1 and q == 1):
            raise UsageError("theta needs path lengths >= 1, not both 1")
        # s=1, t=2; first path interior 3..p+1, second p+2..p+q (1-indexed)
        n = p + q
        first = [0] + list(range(2, p + 1)) + [1]
        second = [0] + list(range(p + 1, p + q)) + [1]
        edges = list(zip(first, first[1:])) + list(zip(second, second[1:]))
        note = f"theta p={p} q={q}"
    elif kind == "partial-ktree":
        if len(params) != 3:
            raise UsageError("partial-ktree needs params: n k keep_prob")
        try:
            n, k, keep = int(params[0]), int(params[1]), float(params[2])
        except (TypeError, ValueError):
            raise UsageError("partial-ktree needs params: n k keep_prob") from None
        if k < 1 or not 0.0 <= keep <= 1.0:
            raise UsageError("partial-ktree needs k >= 1 and 0 <= keep_prob <= 1")
        n, edges = _partial_ktree(n, k, keep, rng)
        note = f"partial-ktree n={n} k={k} keep={keep}"
    else:
        raise UsageError(
            f"unknown generator kind {kind!r}; choose from {', '.join(GENERATOR_KINDS)}")
    g = Graph.from_edges(n, edges)
    return write_instance(g, comments=[f"generated: {note} seed={seed}"])


def _int_params(kind: str, params: Sequence, count: int) -> list[int]:
    if len(params) != count:
        raise UsageError(f"{kind} needs exactly {count} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except (TypeError, ValueError):
        raise UsageError(f"{kind} needs integer parameters") from None
