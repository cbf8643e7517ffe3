"""Tree representation, validation, canonicalization, and the edge-degree spectrum.

A tree is stored as an immutable adjacency structure together with a canonical
key: the lexicographically maximal level sequence (preorder depth list) of the
tree rooted at its centroid.  Two trees are isomorphic iff their keys are equal,
which gives cheap dedupe and a deterministic total order on isomorphism classes.

Accepted text formats (see ``parse_tree`` / the ``format_*`` functions):

* edge list: one ``u v`` pair per line, 0-based vertex ids;
* level sequence: space-separated depths of a canonical preorder walk,
  e.g. ``0 1 2 2 1``;
* Pruefer sequence: n-2 space-separated vertex ids (labeled input,
  canonicalized on load).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateEdge, EmptyTree, NotATree, SelfLoop

__all__ = [
    "Tree",
    "EdgeSpectrum",
    "build_tree",
    "tree_from_adjacency",
    "tree_from_level_sequence",
    "tree_from_prufer",
    "edge_spectrum",
    "canonical_key",
    "parse_tree",
    "parse_edge_list",
    "parse_level_sequence",
    "parse_prufer",
    "format_edge_list",
    "format_level_sequence",
    "format_prufer",
]


# ---------------------------------------------------------------------------
# canonical form helpers (shared with the enumeration oracle, so they accept
# bare adjacency lists and avoid any Tree overhead)
# ---------------------------------------------------------------------------

def centroids(adj: Sequence[Sequence[int]]) -> list[int]:
    """Vertices minimizing the largest component left by their removal (1 or 2)."""
    n = len(adj)
    if n == 1:
        return [0]
    # subtree sizes from an iterative DFS rooted at 0
    order: list[int] = []
    parent = [-1] * n
    stack = [0]
    seen = [False] * n
    seen[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    size = [1] * n
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            size[p] += size[v]
    best = n + 1
    out: list[int] = []
    for v in range(n):
        heaviest = n - size[v]
        for w in adj[v]:
            if w != parent[v] and size[w] > heaviest:
                heaviest = size[w]
        if heaviest < best:
            best = heaviest
            out = [v]
        elif heaviest == best:
            out.append(v)
    return out


def _max_level_seq(adj: Sequence[Sequence[int]], root: int) -> tuple[int, ...]:
    """Lexicographically maximal preorder depth sequence of the rooted tree."""

    def walk(v: int, parent: int, depth: int) -> tuple[int, ...]:
        blocks = sorted(
            (walk(w, v, depth + 1) for w in adj[v] if w != parent), reverse=True
        )
        seq = (depth,)
        for b in blocks:
            seq += b
        return seq

    return walk(root, -1, 0)


def canonical_level_sequence(adj: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical level sequence: maximal sequence over the centroid rootings.

    With a single centroid the tree is rooted there; with two centroids (the
    rootings on either side of the centroid edge) the larger sequence wins.
    """
    return max(_max_level_seq(adj, c) for c in centroids(adj))


def level_sequence_to_adjacency(seq: Sequence[int]) -> list[list[int]]:
    """Adjacency lists of the tree encoded by a preorder depth sequence."""
    n = len(seq)
    if n == 0 or seq[0] != 0:
        raise NotATree(f"level sequence must start at depth 0: {list(seq)!r}")
    adj: list[list[int]] = [[] for _ in range(n)]
    # path[d] = most recent vertex seen at depth d
    path = [0] * n
    prev_depth = 0
    for i in range(1, n):
        d = seq[i]
        if d < 1 or d > prev_depth + 1:
            raise NotATree(f"invalid depth jump at position {i}: {list(seq)!r}")
        p = path[d - 1]
        adj[p].append(i)
        adj[i].append(p)
        path[d] = i
        prev_depth = d
    return adj


def prufer_to_edges(seq: Sequence[int]) -> list[tuple[int, int]]:
    """Decode a Pruefer sequence over ids 0..n-1 into the edge list of a labeled tree."""
    n = len(seq) + 2
    deg = [1] * n
    for v in seq:
        if not 0 <= v < n:
            raise NotATree(f"Pruefer symbol {v} out of range for n={n}")
        deg[v] += 1
    edges: list[tuple[int, int]] = []
    # ptr scans for the smallest leaf; leaf chains are followed directly
    ptr = 0
    leaf = -1
    for v in seq:
        if leaf < 0:
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
            ptr += 1
        edges.append((leaf, v))
        deg[v] -= 1
        if deg[v] == 1 and v < ptr:
            leaf = v
        else:
            leaf = -1
    if leaf < 0:
        while deg[ptr] != 1:
            ptr += 1
        leaf = ptr
    last = n - 1
    edges.append((leaf, last))
    return edges


# ---------------------------------------------------------------------------
# Tree and EdgeSpectrum
# ---------------------------------------------------------------------------

class Tree:
    """Immutable unlabeled tree with adjacency and canonical form.

    Equality and hashing use the canonical key, so ``t1 == t2`` means
    "isomorphic", not "identically labeled".  Transformations build new trees.
    """

    __slots__ = ("n", "adjacency", "degrees", "canonical_key")

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    canonical_key: str

    def __init__(self, adjacency: Sequence[Sequence[int]], _key: str | None = None):
        adj = tuple(tuple(sorted(nb)) for nb in adjacency)
        _validate_adjacency(adj)
        object.__setattr__(self, "n", len(adj))
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(self, "degrees", tuple(len(nb) for nb in adj))
        key = _key if _key is not None else " ".join(
            map(str, canonical_level_sequence(adj))
        )
        object.__setattr__(self, "canonical_key", key)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Tree is immutable")

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self.canonical_key == other.canonical_key

    def __hash__(self):
        return hash(self.canonical_key)

    def __repr__(self):
        return f"Tree(n={self.n}, key={self.canonical_key!r})"

    def __reduce__(self):
        return (Tree, (self.adjacency, self.canonical_key))

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once, as (u, v) with u < v."""
        for u, nbs in enumerate(self.adjacency):
            for v in nbs:
                if u < v:
                    yield (u, v)

    def pendant_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d == 1]

    def replace_edges(
        self,
        remove: Iterable[tuple[int, int]],
        add: Iterable[tuple[int, int]],
    ) -> "Tree":
        """New tree with ``remove`` edges deleted and ``add`` edges inserted."""
        edge_set = {frozenset(e) for e in self.edges()}
        for e in remove:
            fs = frozenset(e)
            if fs not in edge_set:
                raise NotATree(f"cannot remove missing edge {tuple(e)}")
            edge_set.discard(fs)
        for e in add:
            edge_set.add(frozenset(e))
        return build_tree([tuple(sorted(e)) for e in edge_set], n=self.n)


def _validate_adjacency(adj: tuple[tuple[int, ...], ...]) -> None:
    n = len(adj)
    if n == 0:
        raise NotATree("a tree has at least one vertex")
    m = 0
    directed: list[tuple[int, int]] = []
    for u, nbs in enumerate(adj):
        prev = -1
        for v in nbs:
            if v == u:
                raise SelfLoop(f"self loop at vertex {u}")
            if v == prev:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            if not 0 <= v < n:
                raise NotATree(f"neighbor {v} out of range at vertex {u}")
            directed.append((u, v))
            prev = v
        m += len(nbs)
    if sorted(directed) != sorted((v, u) for u, v in directed):
        raise NotATree("asymmetric adjacency")
    if m != 2 * (n - 1):
        raise NotATree(f"{m // 2} edges for {n} vertices; a tree needs {n - 1}")
    # connectivity: one traversal must reach everything
    seen = [False] * n
    seen[0] = True
    stack = [0]
    reached = 1
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                stack.append(w)
    if reached != n:
        raise NotATree(f"graph is disconnected ({reached} of {n} vertices reached)")


def build_tree(edge_list: Iterable[tuple[int, int]], n: int | None = None) -> Tree:
    """Validated Tree from ``(u, v)`` pairs over ids 0..n-1.

    ``n = 1`` is allowed with an empty edge list.  Raises NotATree,
    DuplicateEdge, or SelfLoop on anything that is not a tree.
    """
    edges = [(int(u), int(v)) for u, v in edge_list]
    if n is None:
        n = max((max(u, v) for u, v in edges), default=-1) + 1
        if not edges:
            n = 1
    if n < 1:
        raise NotATree("a tree has at least one vertex")
    seen: set[frozenset[int]] = set()
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise SelfLoop(f"self loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise NotATree(f"vertex id out of range in edge ({u}, {v})")
        fs = frozenset((u, v))
        if fs in seen:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        seen.add(fs)
        adj[u].append(v)
        adj[v].append(u)
    return Tree(adj)


def tree_from_adjacency(adj: Sequence[Sequence[int]]) -> Tree:
    return Tree(adj)


def tree_from_level_sequence(seq: Sequence[int]) -> Tree:
    return Tree(level_sequence_to_adjacency(seq))


def tree_from_prufer(seq: Sequence[int]) -> Tree:
    return build_tree(prufer_to_edges(seq))


def canonical_key(t: Tree) -> str:
    """Canonical key of a tree; equal strings iff isomorphic trees."""
    return t.canonical_key


# ---------------------------------------------------------------------------
# edge-degree spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeSpectrum:
    """Counts of edges joining a degree-i and a degree-j vertex (i <= j)."""

    n: int
    entries: dict[tuple[int, int], int]

    def total(self) -> int:
        return sum(self.entries.values())

    def __iter__(self):
        return iter(sorted(self.entries.items()))


def edge_spectrum(t: Tree) -> EdgeSpectrum:
    """Classify every edge by its endpoint degrees.

    The spectrum determines every vertex-degree-based index of the tree.
    """
    if t.n < 2:
        raise EmptyTree("no edges to classify for n < 2")
    deg = t.degrees
    counts: dict[tuple[int, int], int] = {}
    for u, v in t.edges():
        a, b = deg[u], deg[v]
        pair = (a, b) if a <= b else (b, a)
        counts[pair] = counts.get(pair, 0) + 1
    return EdgeSpectrum(t.n, counts)


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Tree:
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise NotATree(f"expected 'u v' per line, got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if not edges:
        return build_tree([], n=1)
    return build_tree(edges)


def parse_level_sequence(text: str) -> Tree:
    values = [int(tok) for tok in text.split()]
    if not values:
        raise NotATree("empty level sequence")
    return tree_from_level_sequence(values)


def parse_prufer(text: str) -> Tree:
    values = [int(tok) for tok in text.split()]
    return tree_from_prufer(values)


def parse_tree(text: str, fmt: str = "auto") -> Tree:
    """Parse any accepted tree format.

    ``fmt`` is one of ``edges``, ``levels``, ``prufer``, or ``auto``.  Auto
    detection: multiple lines of pairs parse as an edge list; a single line is
    tried as a level sequence first (it must start with 0 and step by at most
    one), then as a Pruefer sequence.  Ambiguous single-line inputs such as
    ``0 1 2 2 1`` are read as level sequences; pass an explicit format to
    force the other reading.
    """
    if fmt == "edges":
        return parse_edge_list(text)
    if fmt == "levels":
        return parse_level_sequence(text)
    if fmt == "prufer":
        return parse_prufer(text)
    if fmt != "auto":
        raise ValueError(f"unknown tree format {fmt!r}")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) > 1 or (len(lines) == 1 and len(lines[0].split()) == 2):
        return parse_edge_list(text)
    try:
        return parse_level_sequence(text)
    except (NotATree, ValueError):
        return parse_prufer(text)


def format_level_sequence(t: Tree) -> str:
    """Canonical level sequence text; bit-stable under reparsing."""
    return t.canonical_key


def _subtree_seq(adj, v: int, parent: int, depth: int) -> tuple[int, ...]:
    blocks = sorted(
        (_subtree_seq(adj, w, v, depth + 1) for w in adj[v] if w != parent),
        reverse=True,
    )
    seq = (depth,)
    for b in blocks:
        seq += b
    return seq


def _canonical_relabeling(t: Tree) -> list[int]:
    """Map old vertex id -> position in the canonical preorder walk."""
    adj = t.adjacency
    best_root = -1
    best_seq: tuple[int, ...] | None = None
    for c in centroids(adj):
        seq = _max_level_seq(adj, c)
        if best_seq is None or seq > best_seq:
            best_seq = seq
            best_root = c
    new_id = [0] * t.n
    counter = 0

    def walk(v: int, parent: int, depth: int) -> None:
        nonlocal counter
        new_id[v] = counter
        counter += 1
        kids = sorted(
            ((_subtree_seq(adj, w, v, depth + 1), w) for w in adj[v] if w != parent),
            reverse=True,
        )
        for _sub, w in kids:
            walk(w, v, depth + 1)

    walk(best_root, -1, 0)
    return new_id


def format_edge_list(t: Tree) -> str:
    """Edge list text under the canonical relabeling; bit-stable under reparsing."""
    if t.n == 1:
        return ""
    new_id = _canonical_relabeling(t)
    pairs = sorted(
        (min(new_id[u], new_id[v]), max(new_id[u], new_id[v])) for u, v in t.edges()
    )
    return "\n".join(f"{u} {v}" for u, v in pairs)


def format_prufer(t: Tree) -> str:
    """Pruefer sequence of the canonically relabeled tree; bit-stable under reparsing."""
    if t.n < 3:
        return ""
    new_id = _canonical_relabeling(t)
    n = t.n
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in t.edges():
        a, b = new_id[u], new_id[v]
        adj[a].add(b)
        adj[b].add(a)
    deg = [len(s) for s in adj]
    out = []
    import heapq

    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        out.append(nb)
        adj[nb].discard(leaf)
        deg[nb] -= 1
        if deg[nb] == 1:
            heapq.heappush(leaves, nb)
    return " ".join(map(str, out))
