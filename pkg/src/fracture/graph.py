"""Simple undirected graphs and the matrices built from them.

Nodes keep their original integer ids through every removal. Internally each
node also has a *position* (its rank in sorted id order), and every matrix is
indexed by position. ``Graph.node_ids[pos]`` maps back to the original id.
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, TextIO

import numpy as np
import scipy.sparse as sp

from .exceptions import DuplicateEdge, ParseError, SelfLoop, UnknownNode

#: Matrices with dimension above this are returned in sparse form.
DENSE_LIMIT = 512


class Graph:
    """Immutable simple graph with stable original node ids.

    Parameters
    ----------
    node_ids : iterable of int
        Original identifiers. Sorted internally; positions follow that order.
    edges : iterable of (int, int)
        Pairs of original ids. Self-loops and repeated pairs are rejected.
    """

    __slots__ = ("node_ids", "adjacency", "n", "m", "_index", "__dict__")

    def __init__(self, node_ids: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        ids = sorted(set(int(v) for v in node_ids))
        index = {v: i for i, v in enumerate(ids)}
        nbrs: list[set[int]] = [set() for _ in ids]
        m = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"self-loop on node {u}")
            try:
                i, j = index[u], index[v]
            except KeyError as exc:
                raise UnknownNode(f"edge ({u}, {v}) references unknown node {exc.args[0]}") from None
            if j in nbrs[i]:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            nbrs[i].add(j)
            nbrs[j].add(i)
            m += 1
        self.node_ids: tuple[int, ...] = tuple(ids)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.n = len(ids)
        self.m = m
        self._index = index

    @classmethod
    def _from_positions(cls, node_ids, adjacency, m) -> "Graph":
        g = cls.__new__(cls)
        g.node_ids = tuple(node_ids)
        g.adjacency = tuple(adjacency)
        g.n = len(g.node_ids)
        g.m = m
        g._index = {v: i for i, v in enumerate(g.node_ids)}
        return g

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_ids == other.node_ids and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.node_ids, self.adjacency))

    def __contains__(self, node_id) -> bool:
        return node_id in self._index

    def position(self, node_id: int) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise UnknownNode(f"node {node_id} is not in the graph") from None

    def neighbors(self, node_id: int) -> list[int]:
        """Original ids adjacent to ``node_id``."""
        ids = self.node_ids
        return [ids[j] for j in self.adjacency[self.position(node_id)]]

    def degree_array(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as position pairs ``(i, j)`` with ``i < j``, in lexicographic order."""
        for i, nb in enumerate(self.adjacency):
            for j in nb:
                if j > i:
                    yield i, j

    def edge_ids(self) -> Iterator[tuple[int, int]]:
        ids = self.node_ids
        for i, j in self.edges():
            yield ids[i], ids[j]

    @cached_property
    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` array of position pairs, smaller position first."""
        arr = np.fromiter((x for e in self.edges() for x in e), dtype=np.int64, count=2 * self.m)
        return arr.reshape(self.m, 2)

    @cached_property
    def adjacency_matrix(self) -> sp.csr_array:
        e = self.edge_array
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(rows.size, dtype=np.int64)
        return sp.csr_array((data, (rows, cols)), shape=(self.n, self.n))


# ---------------------------------------------------------------------------
# parsing

_NODES_HEADER = re.compile(r"#\s*nodes\s*:\s*(\S+)\s*$", re.IGNORECASE)


def _parse_int(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None
    if v < 0:
        raise ParseError(f"line {lineno}: negative node id {v}")
    return v


def parse_edge_list(text: str | TextIO | Iterable[str]) -> Graph:
    """Parse whitespace-separated ``u v`` pairs.

    Lines starting with ``#`` are comments, except an optional header
    ``# nodes: N`` which declares ids ``0..N-1`` (so isolated nodes survive).
    """
    if isinstance(text, str):
        text = text.splitlines()
    nodes: set[int] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            hdr = _NODES_HEADER.match(line)
            if hdr:
                nodes.update(range(_parse_int(hdr.group(1), lineno)))
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _parse_int(toks[0], lineno), _parse_int(toks[1], lineno)
        nodes.add(u)
        nodes.add(v)
        edges.append((u, v))
    return Graph(nodes, edges)


def parse_pajek(text: str | TextIO | Iterable[str]) -> Graph:
    """Read the ``*Vertices`` / ``*Edges`` / ``*Arcs`` subset of Pajek ``.net``.

    Ids are 1-based in the file and 0-based in the result. Edge weights (a
    third column) are ignored. Reciprocal arcs collapse to one edge.
    """
    if isinstance(text, str):
        text = text.splitlines()
    n = None
    section = None
    seen_arcs: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text, 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("*"):
            head = line.split()
            key = head[0].lower()
            if key == "*vertices":
                if len(head) < 2:
                    raise ParseError(f"line {lineno}: *Vertices without a count")
                n = _parse_int(head[1], lineno)
                section = "vertices"
            elif key in ("*edges", "*arcs"):
                if n is None:
                    raise ParseError(f"line {lineno}: {head[0]} before *Vertices")
                section = key[1:]
            else:
                raise ParseError(f"line {lineno}: unsupported section {head[0]}")
            continue
        if section is None:
            raise ParseError(f"line {lineno}: data outside any section")
        if section == "vertices":
            continue  # labels and coordinates are not used
        toks = line.split()
        if len(toks) < 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _parse_int(toks[0], lineno), _parse_int(toks[1], lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {lineno}: vertex id outside 1..{n}")
        u, v = u - 1, v - 1
        if section == "arcs" and u != v:
            key = (min(u, v), max(u, v))
            if key in seen_arcs:
                continue
            seen_arcs.add(key)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing *Vertices section")
    return Graph(range(n), edges)


_GML_TOKEN = re.compile(r'"[^"]*"|\[|\]|[^\s\[\]]+')


def parse_gml(text: str | TextIO) -> Graph:
    """Minimal GML reader: ``node [ id N ]`` and ``edge [ source U target V ]``.

    Only enough to load the common ``power.gml`` distribution; other keys are
    skipped.
    """
    if not isinstance(text, str):
        text = "".join(text)
    tokens = _GML_TOKEN.findall(text)
    nodes: list[int] = []
    edges: list[tuple[int, int]] = []
    stack: list[tuple[str, dict]] = []
    key = None
    pos = 0
    while pos < len(tokens):
        tok = tokens[pos]
        pos += 1
        if tok == "[":
            stack.append((key or "", {}))
            key = None
        elif tok == "]":
            if not stack:
                raise ParseError("unbalanced ']' in GML")
            name, attrs = stack.pop()
            try:
                if name == "node":
                    nodes.append(_parse_int(attrs["id"], 0))
                elif name == "edge":
                    edges.append((_parse_int(attrs["source"], 0), _parse_int(attrs["target"], 0)))
            except KeyError as exc:
                raise ParseError(f"GML {name} missing {exc.args[0]!r}") from None
        elif key is None:
            key = tok
        else:
            if stack:
                stack[-1][1][key] = tok
            key = None
    if stack:
        raise ParseError("unterminated '[' in GML")
    return Graph(nodes, edges)


_READERS = {"edgelist": parse_edge_list, "pajek": parse_pajek, "gml": parse_gml}


def guess_format(path: str | os.PathLike) -> str:
    ext = os.path.splitext(str(path))[1].lower()
    return {".net": "pajek", ".paj": "pajek", ".gml": "gml"}.get(ext, "edgelist")


def read_graph(path: str | os.PathLike, format: str | None = None) -> Graph:
    """Load a graph file; the format defaults to a guess from the extension."""
    fmt = format or guess_format(path)
    try:
        reader = _READERS[fmt]
    except KeyError:
        raise ValueError(f"unknown graph format {fmt!r}") from None
    with open(path, encoding="utf-8") as fh:
        return reader(fh.read())


def write_edge_list(g: Graph) -> str:
    """Inverse of :func:`parse_edge_list` for graphs whose ids are ``0..n-1``."""
    lines = []
    if g.node_ids == tuple(range(g.n)):
        lines.append(f"# nodes: {g.n}")
    lines += [f"{u} {v}" for u, v in g.edge_ids()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural operations


def remove_nodes(g: Graph, r: Iterable[int]) -> Graph:
    """Induced subgraph on ``V \\ r``; surviving nodes keep their ids."""
    drop = set(r)
    if not drop:
        return g
    missing = drop.difference(g._index)
    if missing:
        raise UnknownNode(f"cannot remove absent node(s) {sorted(missing)}")
    old_ids = g.node_ids
    keep = [i for i in range(g.n) if old_ids[i] not in drop]
    remap = {old: new for new, old in enumerate(keep)}
    adjacency = []
    deg_sum = 0
    for i in keep:
        nb = tuple(remap[j] for j in g.adjacency[i] if j in remap)
        adjacency.append(nb)
        deg_sum += len(nb)
    return Graph._from_positions([old_ids[i] for i in keep], adjacency, deg_sum // 2)


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    keep = set(nodes)
    return remove_nodes(g, [v for v in g.node_ids if v not in keep])


@dataclass(frozen=True)
class ComponentList:
    """Connected components, largest first (ties: smallest contained id)."""

    components: tuple[frozenset[int], ...]
    edge_counts: tuple[int, ...]

    def __len__(self):
        return len(self.components)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    @property
    def largest(self) -> frozenset[int]:
        return self.components[0] if self.components else frozenset()

    @property
    def largest_edges(self) -> int:
        return self.edge_counts[0] if self.edge_counts else 0


def component_labels(g: Graph) -> tuple[np.ndarray, int]:
    """Breadth-first component label per position, labels in discovery order."""
    labels = np.full(g.n, -1, dtype=np.int64)
    adj = g.adjacency
    k = 0
    for start in range(g.n):
        if labels[start] >= 0:
            continue
        labels[start] = k
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if labels[w] < 0:
                    labels[w] = k
                    queue.append(w)
        k += 1
    return labels, k


def components_bfs(g: Graph) -> ComponentList:
    """Connected components by breadth-first search, with internal edge counts."""
    labels, k = component_labels(g)
    members: list[list[int]] = [[] for _ in range(k)]
    degree_totals = [0] * k
    for i, lab in enumerate(labels.tolist()):
        members[lab].append(g.node_ids[i])
        degree_totals[lab] += len(g.adjacency[i])
    # discovery order already visits components by smallest position == smallest id
    order = sorted(range(k), key=lambda c: -len(members[c]))
    return ComponentList(
        components=tuple(frozenset(members[c]) for c in order),
        edge_counts=tuple(degree_totals[c] // 2 for c in order),
    )


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component (ties: smallest contained id)."""
    comps = components_bfs(g)
    if not comps.components:
        return g
    return induced_subgraph(g, comps.largest)


# ---------------------------------------------------------------------------
# matrices


def _want_sparse(dim: int, sparse: bool | None) -> bool:
    return dim > DENSE_LIMIT if sparse is None else sparse


def adjacency(g: Graph, sparse: bool | None = None):
    a = g.adjacency_matrix
    return a.copy() if _want_sparse(g.n, sparse) else a.toarray()


def laplacian(g: Graph, sparse: bool | None = None):
    """``L = D - A`` as exact integers (dense ndarray or ``csr_array``)."""
    a = g.adjacency_matrix
    lap = sp.diags_array(g.degree_array(), dtype=np.int64).tocsr() - a
    return lap.tocsr() if _want_sparse(g.n, sparse) else lap.toarray()


def signless_laplacian(g: Graph, sparse: bool | None = None):
    """``Q = D + A`` as exact integers."""
    a = g.adjacency_matrix
    q = sp.diags_array(g.degree_array(), dtype=np.int64).tocsr() + a
    return q.tocsr() if _want_sparse(g.n, sparse) else q.toarray()


def augmented_signless(g: Graph, sparse: bool | None = None):
    """``[[Q, d], [d^T, 0]]`` with ``d = A 1``, of size ``n + 1``."""
    d = g.degree_array()
    q = sp.diags_array(d, dtype=np.int64).tocsr() + g.adjacency_matrix
    col = sp.csr_array(d.reshape(-1, 1))
    out = sp.block_array([[q, col], [col.T, None]], format="csr")
    if out.shape != (g.n + 1, g.n + 1):  # block_array drops an empty corner for n == 0
        out = sp.csr_array((g.n + 1, g.n + 1), dtype=np.int64)
    return out if _want_sparse(g.n + 1, sparse) else out.toarray()


def incidence(g: Graph, sparse: bool | None = None):
    """Signed ``n x m`` incidence: ``+1`` at the smaller endpoint, ``-1`` at the larger."""
    e = g.edge_array
    cols = np.arange(g.m)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    data = np.concatenate([np.ones(g.m, dtype=np.int64), -np.ones(g.m, dtype=np.int64)])
    b = sp.csr_array((data, (rows, np.concatenate([cols, cols]))), shape=(g.n, g.m))
    return b if _want_sparse(max(g.n, g.m), sparse) else b.toarray()


def nuclear_norm_identity(g: Graph) -> tuple[float, float]:
    """Return ``(sum of Laplacian eigenvalues, 2m)``.

    Small graphs sum an actual eigendecomposition; above the dense limit the
    trace is used, which equals the eigenvalue sum for a symmetric matrix.
    """
    if g.n <= DENSE_LIMIT:
        total = float(np.linalg.eigvalsh(laplacian(g, sparse=False).astype(float)).sum()) if g.n else 0.0
    else:
        total = float(laplacian(g, sparse=True).diagonal().sum())
    return total, float(2 * g.m)
