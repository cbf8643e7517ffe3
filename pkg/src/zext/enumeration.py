"""Free-tree generation and the families used by the extremal search.

``free_trees(n)`` streams every isomorphism class of trees on n vertices
exactly once, by the constant-amortized-time successor on canonical level
sequences: rooted trees in decreasing lexicographic order of their level
sequence, filtered to the canonical-root representatives of free trees (the
first root subtree must not be deeper than the rest of the tree, with size and
lexicographic tie-breaks; invalid sequences are skipped in O(1) amortized by
jumping directly to the next representative).

``free_tree_count(n)`` is an independent oracle: the rooted-tree counting
recurrence combined with the unrooted correction, sharing no code with the
generator.  Tests also cross-check the generator against exhaustive labeled
generation from Pruefer sequences for small n.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator, Sequence

from .errors import InvalidArms, InvalidShape, NOutOfRange
from .trees import Tree, build_tree, level_sequence_to_adjacency

__all__ = [
    "DEFAULT_GENERATOR_CAP",
    "TreeStream",
    "free_trees",
    "free_tree_sequences",
    "free_tree_count",
    "double_star",
    "balanced_double_star",
    "fig3_tree",
    "cache_file_path",
    "write_cache_file",
    "read_cache_sequences",
]

# exhaustive generation stays desk-scale up to here; raise via the cap argument
DEFAULT_GENERATOR_CAP = 24

COUNT_ORACLE_CAP = 40


# ---------------------------------------------------------------------------
# successor-based generation of canonical level sequences
# ---------------------------------------------------------------------------

def _split_first_subtree(layout: list[int]) -> tuple[list[int], list[int]]:
    """(first root subtree re-rooted at depth 0, remaining tree with it removed)."""
    m = None
    found_one = False
    for i in range(len(layout)):
        if layout[i] == 1:
            if found_one:
                m = i
                break
            found_one = True
    if m is None:
        m = len(layout)
    left = [layout[i] - 1 for i in range(1, m)]
    rest = [0] + layout[m:]
    return left, rest


def _next_rooted(layout: list[int], p: int | None = None) -> list[int] | None:
    """Successor of a canonical rooted level sequence, or None after the star."""
    if p is None:
        p = len(layout) - 1
        while layout[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while layout[q] != layout[p] - 1:
        q -= 1
    result = list(layout)
    for i in range(p, len(result)):
        result[i] = result[i - p + q]
    return result


def _next_free(candidate: list[int]) -> list[int] | None:
    """Return ``candidate`` if it canonically represents a free tree, else jump
    to the next sequence that does."""
    left, rest = _split_first_subtree(candidate)
    left_height = max(left)
    rest_height = max(rest)
    valid = rest_height >= left_height
    if valid and rest_height == left_height:
        if len(left) > len(rest):
            valid = False
        elif len(left) == len(rest) and left > rest:
            valid = False
    if valid:
        return candidate
    p = len(left)
    new_candidate = _next_rooted(candidate, p)
    if new_candidate is None:
        return None
    if candidate[p] > 2:
        new_left, _ = _split_first_subtree(new_candidate)
        suffix = range(1, max(new_left) + 2)
        new_candidate[-len(suffix):] = suffix
    return new_candidate


def free_tree_sequences(n: int, cap: int = DEFAULT_GENERATOR_CAP) -> Iterator[list[int]]:
    """All canonical level sequences of free trees on n vertices, in generation order."""
    if not 1 <= n <= cap:
        raise NOutOfRange(f"need 1 <= n <= {cap}, got {n}")
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [0, 1]
        return
    # start from the path rooted at its center, the largest valid sequence
    layout: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while layout is not None:
        layout = _next_free(layout)
        if layout is None:
            return
        yield layout
        layout = _next_rooted(layout)


class TreeStream:
    """Single-consumer stream over the isomorphism classes of trees on n vertices.

    Iteration yields validated ``Tree`` values; ``emitted`` counts them.  The
    underlying cursor is the current level sequence, so disjoint sub-streams
    for parallel consumers can be formed by slicing the emission index.
    """

    def __init__(self, n: int, cap: int = DEFAULT_GENERATOR_CAP,
                 sequences: Iterator[Sequence[int]] | None = None):
        self.n = n
        self.emitted = 0
        self._seqs = sequences if sequences is not None else free_tree_sequences(n, cap)

    def __iter__(self) -> Iterator[Tree]:
        for seq in self._seqs:
            self.emitted += 1
            yield Tree(level_sequence_to_adjacency(seq))


def free_trees(n: int, cap: int = DEFAULT_GENERATOR_CAP) -> TreeStream:
    """Stream of pairwise non-isomorphic trees covering all of the order-n classes."""
    return TreeStream(n, cap)


# ---------------------------------------------------------------------------
# counting oracle (independent of the generator)
# ---------------------------------------------------------------------------

def _rooted_counts(n_max: int) -> list[int]:
    """rooted[k] = number of rooted trees on k vertices, rooted[0] unused."""
    rooted = [0] * (n_max + 1)
    rooted[1] = 1
    # weighted[k] = sum over divisors d of k of d * rooted[d]
    for n in range(2, n_max + 1):
        total = 0
        for k in range(1, n):
            weighted = 0
            d = 1
            while d * d <= k:
                if k % d == 0:
                    weighted += d * rooted[d]
                    other = k // d
                    if other != d:
                        weighted += other * rooted[other]
                d += 1
            total += weighted * rooted[n - k]
        assert total % (n - 1) == 0
        rooted[n] = total // (n - 1)
    return rooted


def free_tree_count(n: int) -> int:
    """Number of isomorphism classes of trees on n vertices.

    Rooted-tree recurrence plus the unrooted correction: subtract the count of
    edge-rooted pairs, restoring the symmetric-edge classes counted twice.
    """
    if not 1 <= n <= COUNT_ORACLE_CAP:
        raise NOutOfRange(f"need 1 <= n <= {COUNT_ORACLE_CAP}, got {n}")
    if n == 1:
        return 1
    rooted = _rooted_counts(n)
    pairs = sum(rooted[i] * rooted[n - i] for i in range(1, n))
    if n % 2 == 0:
        return rooted[n] - (pairs - rooted[n // 2]) // 2
    return rooted[n] - pairs // 2


# ---------------------------------------------------------------------------
# plain-text cache of generated level sequences
# ---------------------------------------------------------------------------

def cache_file_path(n: int, cache_dir: str | Path) -> Path:
    return Path(cache_dir) / f"trees_n{n}.txt"


def write_cache_file(n: int, cache_dir: str | Path,
                     cap: int = DEFAULT_GENERATOR_CAP) -> Path:
    """Write all level sequences for n to the cache, returning the file path."""
    path = cache_file_path(n, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [" ".join(map(str, seq)) for seq in free_tree_sequences(n, cap)]
    header = f"# n={n} count={len(lines)}"
    path.write_text("\n".join([header] + lines) + "\n")
    return path


def read_cache_sequences(path: str | Path) -> Iterator[list[int]]:
    """Level sequences from a cache file, in the original generation order."""
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise ValueError(f"{path}: missing '# n=<N> count=<C>' header")
        for line in fh:
            line = line.strip()
            if line:
                yield [int(tok) for tok in line.split()]


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def double_star(x: int, y: int) -> Tree:
    """Tree on x + y + 2 vertices: two adjacent centers of degrees x+1 and y+1,
    every other vertex pendant."""
    if x < 1 or y < 1:
        raise InvalidArms(f"double star arms must be >= 1, got ({x}, {y})")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(x)]
    edges += [(1, 2 + x + j) for j in range(y)]
    return build_tree(edges)


def balanced_double_star(n: int) -> Tree:
    """The double star with arm sizes floor((n-2)/2) and ceil((n-2)/2)."""
    if n < 4:
        raise NOutOfRange(f"balanced double star needs n >= 4, got {n}")
    x = (n - 2) // 2
    return double_star(x, n - 2 - x)


def fig3_tree(pendants_on_center: int, arm_pendants: Sequence[int]) -> Tree:
    """Depth-two family: a center adjacent to k arm vertices and some leaves,
    arm i carrying ``arm_pendants[i]`` leaves.

    n = 1 + k + pendants_on_center + sum(arm_pendants).  Requires k >= 1,
    every arm pendant count >= 1, and pendants_on_center >= 0.
    """
    k = len(arm_pendants)
    if k < 1:
        raise InvalidShape("need at least one arm")
    if pendants_on_center < 0:
        raise InvalidShape("center pendant count must be >= 0")
    if any(a < 1 for a in arm_pendants):
        raise InvalidShape("every arm must carry at least one pendant")
    edges = []
    arms = list(range(1, k + 1))
    nxt = k + 1
    for i in arms:
        edges.append((0, i))
    for i, count in zip(arms, arm_pendants):
        for _ in range(count):
            edges.append((i, nxt))
            nxt += 1
    for _ in range(pendants_on_center):
        edges.append((0, nxt))
        nxt += 1
    return build_tree(edges)
