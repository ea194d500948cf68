"""
gallai_partition.py - Extract, check and reduce Gallai partitions; generate random Gallai colourings
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from core.coloring import ColoredComplete
from core.errors import GallaiInputError
from core.union_find import UnionFind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GallaiPartition:
    """Parts H_1..H_t with one colour between each pair and at most two colours overall"""
    parts: Tuple[Tuple[int, ...], ...]
    between: Dict[Tuple[int, int], int]
    palette: FrozenSet[int]

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def between_color(self, i: int, j: int) -> int:
        return self.between[(i, j) if i < j else (j, i)]

    def part_sizes(self) -> List[int]:
        return [len(part) for part in self.parts]

    def part_of(self) -> Dict[int, int]:
        return {v: index for index, part in enumerate(self.parts) for v in part}

    def to_dict(self) -> Dict:
        return {
            "num_parts": self.num_parts,
            "parts": [list(part) for part in self.parts],
            "part_sizes": self.part_sizes(),
            "palette": sorted(self.palette),
            "between": [[i, j, c] for (i, j), c in sorted(self.between.items())],
        }


@dataclass(frozen=True)
class ReducedGraph:
    """One representative vertex per part, coloured by the between-part colours"""
    coloring: ColoredComplete
    representatives: Tuple[int, ...]

    @property
    def palette(self) -> FrozenSet[int]:
        return frozenset(self.coloring.colors_used())


def _candidate_palettes(colors: Iterable[int]) -> List[Tuple[int, ...]]:
    colors = sorted(colors)
    return [(a, b) for a, b in itertools.combinations(colors, 2)] + [(a,) for a in colors]


def _part_pair_colors(matrix: np.ndarray, labels: np.ndarray, t: int) -> Tuple[np.ndarray, np.ndarray]:
    """Min and max edge colour between every pair of parts (t x t)"""
    order = np.argsort(labels, kind="stable")
    sorted_labels = labels[order]
    starts = np.flatnonzero(np.r_[True, sorted_labels[1:] != sorted_labels[:-1]])
    m = matrix[np.ix_(order, order)].astype(np.int16)
    # the diagonal never leaves a part, mask it out of the minimum
    low = np.where(m == 0, np.iinfo(np.int16).max, m)
    col_min = np.minimum.reduceat(low, starts, axis=1)
    col_max = np.maximum.reduceat(m, starts, axis=1)
    return np.minimum.reduceat(col_min, starts, axis=0), np.maximum.reduceat(col_max, starts, axis=0)


def _refine(g: ColoredComplete, palette: Tuple[int, ...]) -> List[List[int]]:
    """Seed with components of off-palette edges, merge bichromatic neighbours to a fixpoint"""
    n = g.order
    uf = UnionFind(n)
    off_palette = np.triu(~np.isin(g.matrix, palette), k=1)
    for i, j in np.argwhere(off_palette):
        uf.union(int(i), int(j))

    while uf.num_components >= 2:
        labels = np.array(uf.labels())
        t = int(labels.max()) + 1
        pair_min, pair_max = _part_pair_colors(g.matrix, labels, t)
        mixed = np.argwhere(np.triu(pair_min != pair_max, k=1))
        if not mixed.size:
            break
        representative = [int(np.flatnonzero(labels == p)[0]) for p in range(t)]
        for p, q in mixed:
            uf.union(representative[p], representative[q])

    return uf.components()


def _as_partition(g: ColoredComplete, parts: List[List[int]]) -> GallaiPartition:
    between = {}
    for i, j in itertools.combinations(range(len(parts)), 2):
        between[(i, j)] = int(g.matrix[parts[i][0], parts[j][0]])
    return GallaiPartition(
        parts=tuple(tuple(part) for part in parts),
        between=between,
        palette=frozenset(between.values()),
    )


def find_gallai_partition(g: ColoredComplete) -> Optional[GallaiPartition]:
    """
    Find a nontrivial Gallai partition

    Every candidate palette (colour pairs, then single colours) is tried; the
    partition with the fewest parts wins, ties broken by the parts themselves.
    The result is a greedy coarsening, not necessarily a minimum-t partition.

    Returns:
        GallaiPartition, or None when no palette admits two or more parts
        (which happens only if g contains a rainbow triangle)
    """
    if g.order < 2:
        raise GallaiInputError("a Gallai partition needs at least two vertices")

    best: Optional[GallaiPartition] = None
    for palette in _candidate_palettes(g.colors_used()):
        parts = _refine(g, palette)
        if len(parts) < 2:
            continue
        candidate = _as_partition(g, parts)
        if best is None or (candidate.num_parts, candidate.parts) < (best.num_parts, best.parts):
            best = candidate

    if best is None:
        logger.debug("no palette gives a nontrivial partition of %r", g)
    return best


def _check_cover(g: ColoredComplete, p: GallaiPartition) -> None:
    seen = [v for part in p.parts for v in part]
    if any(not part for part in p.parts):
        raise GallaiInputError("partition has an empty part")
    if len(seen) != len(set(seen)):
        raise GallaiInputError("partition parts overlap")
    if sorted(seen) != list(range(g.order)):
        raise GallaiInputError("partition parts do not cover the vertex set exactly")


def verify_partition(g: ColoredComplete, p: GallaiPartition) -> bool:
    """Check every Gallai partition property edge by edge"""
    _check_cover(g, p)
    if p.num_parts < 2:
        return False

    colors_between = set()
    for i, j in itertools.combinations(range(p.num_parts), 2):
        block = g.matrix[np.ix_(p.parts[i], p.parts[j])]
        expected = p.between.get((i, j))
        if expected is None or not np.all(block == expected):
            return False
        colors_between.add(expected)

    return len(colors_between) <= 2 and colors_between == set(p.palette)


def reduced_graph(g: ColoredComplete, p: GallaiPartition) -> ReducedGraph:
    """The t-vertex colouring induced by one vertex from each part"""
    if not verify_partition(g, p):
        raise GallaiInputError("reduced graph requested for an invalid Gallai partition")
    representatives = tuple(part[0] for part in p.parts)
    return ReducedGraph(coloring=g.restrict(representatives), representatives=representatives)


def reduced_graph_to_networkx(rg: ReducedGraph) -> nx.Graph:
    """Reduced graph as a networkx graph with a `color` attribute on every edge"""
    graph = nx.Graph()
    graph.add_nodes_from(range(rg.coloring.order))
    graph.add_weighted_edges_from(rg.coloring.edges(), weight="color")
    return graph


def random_gallai(seed: int, order: int, num_colors: int, depth: int = 3) -> ColoredComplete:
    """
    Random rainbow-triangle-free colouring, deterministic in the seed

    Blocks are substituted recursively into the vertices of a randomly
    2-coloured complete base graph; at depth 0 a block is 2-coloured outright.
    """
    if order < 1 or num_colors < 1:
        raise GallaiInputError("random_gallai needs order ≥ 1 and at least one colour")
    rng = np.random.default_rng(seed)
    m = np.zeros((order, order), dtype=np.int64)

    def pick_two() -> np.ndarray:
        return rng.choice(np.arange(1, num_colors + 1), size=min(2, num_colors), replace=False)

    def fill(vertices: np.ndarray, level: int) -> None:
        size = len(vertices)
        if size < 2:
            return
        colors = pick_two()
        if level <= 0 or size == 2:
            for a, b in itertools.combinations(vertices, 2):
                m[a, b] = m[b, a] = rng.choice(colors)
            return

        t = int(rng.integers(2, min(size, 5) + 1))
        shuffled = rng.permutation(vertices)
        cuts = np.sort(rng.choice(np.arange(1, size), size=t - 1, replace=False))
        blocks = np.split(shuffled, cuts)
        for i, j in itertools.combinations(range(t), 2):
            c = rng.choice(colors)
            m[np.ix_(blocks[i], blocks[j])] = c
            m[np.ix_(blocks[j], blocks[i])] = c
        for block in blocks:
            fill(block, level - 1)

    fill(np.arange(order), depth)
    return ColoredComplete(m, num_colors)
