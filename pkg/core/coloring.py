"""
coloring.py - The k-edge-coloured complete graph and colour-degree arithmetic
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from core.errors import GallaiInputError

logger = logging.getLogger(__name__)


class ColoredComplete:
    """
    A complete graph on `order` vertices whose edges carry colours 1..num_colors.

    Stored as a read-only symmetric uint8 matrix with a zero diagonal, plus one
    bitmask per (colour, vertex) holding that vertex's neighbourhood in the colour.
    Instances never change after construction.
    """

    __slots__ = ("_matrix", "num_colors", "_masks")

    def __init__(self, matrix: Sequence[Sequence[int]], num_colors: int):
        m = np.array(matrix, dtype=np.int64, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise GallaiInputError(f"colour matrix must be square and non-empty, got shape {m.shape}")
        if num_colors < 1 or num_colors > 255:
            raise GallaiInputError(f"number of colours must lie in 1..255, got {num_colors}")
        if np.any(np.diag(m) != 0):
            raise GallaiInputError("colour matrix must have a zero diagonal (no self-loops)")
        if not np.array_equal(m, m.T):
            raise GallaiInputError("colour matrix must be symmetric")
        off_diagonal = m[~np.eye(m.shape[0], dtype=bool)]
        if off_diagonal.size and (off_diagonal.min() < 1 or off_diagonal.max() > num_colors):
            raise GallaiInputError(f"edge colours must lie in 1..{num_colors}")

        m = m.astype(np.uint8)
        m.setflags(write=False)
        self._matrix = m
        self.num_colors = int(num_colors)
        self._masks = self._build_masks()

    def _build_masks(self) -> List[List[int]]:
        masks = []
        for c in range(1, self.num_colors + 1):
            packed = np.packbits(self._matrix == c, axis=1, bitorder="little")
            masks.append([int.from_bytes(row.tobytes(), "little") for row in packed])
        return masks

    @classmethod
    def from_edges(cls, order: int, num_colors: int, edge_color: Dict[Tuple[int, int], int]) -> "ColoredComplete":
        """Build from a mapping {(i, j): colour}; every unordered pair must be present"""
        m = np.zeros((order, order), dtype=np.int64)
        for (i, j), c in edge_color.items():
            if i == j:
                raise GallaiInputError(f"self-loop at vertex {i}")
            m[i, j] = m[j, i] = c
        missing = [(i, j) for i in range(order) for j in range(i + 1, order) if m[i, j] == 0]
        if missing:
            raise GallaiInputError(f"{len(missing)} edges have no colour, first {missing[0]}")
        return cls(m, num_colors)

    @classmethod
    def from_upper_rows(cls, order: int, num_colors: int, rows: Sequence[Sequence[int]]) -> "ColoredComplete":
        """Row i holds the colours of edges (i, j) for j = i+1..order-1"""
        if len(rows) != max(order - 1, 0):
            raise GallaiInputError(f"expected {max(order - 1, 0)} rows, got {len(rows)}")
        m = np.zeros((order, order), dtype=np.int64)
        for i, row in enumerate(rows):
            if len(row) != order - 1 - i:
                raise GallaiInputError(f"row {i} must hold {order - 1 - i} colours, got {len(row)}")
            m[i, i + 1:] = row
            m[i + 1:, i] = row
        return cls(m, num_colors)

    @classmethod
    def from_flat(cls, order: int, num_colors: int, flat: Sequence[int]) -> "ColoredComplete":
        """
        Build from the vertex-extension encoding used by the search engine:
        the colours from vertex 1 to 0, then vertex 2 to 0 and 1, and so on.
        """
        if len(flat) != order * (order - 1) // 2:
            raise GallaiInputError(f"flat encoding of order {order} needs {order * (order - 1) // 2} colours")
        m = np.zeros((order, order), dtype=np.int64)
        pos = 0
        for j in range(1, order):
            m[j, :j] = flat[pos:pos + j]
            m[:j, j] = flat[pos:pos + j]
            pos += j
        return cls(m, num_colors)

    @classmethod
    def monochromatic(cls, order: int, color: int = 1, num_colors: Optional[int] = None) -> "ColoredComplete":
        m = np.full((order, order), color, dtype=np.int64)
        np.fill_diagonal(m, 0)
        return cls(m, num_colors if num_colors is not None else color)

    @property
    def order(self) -> int:
        return int(self._matrix.shape[0])

    @property
    def matrix(self) -> np.ndarray:
        """Read-only colour matrix (diagonal entries are 0)"""
        return self._matrix

    def color(self, i: int, j: int) -> int:
        self._check_vertex(i)
        self._check_vertex(j)
        if i == j:
            raise GallaiInputError(f"no edge from vertex {i} to itself")
        return int(self._matrix[i, j])

    def mask(self, v: int, c: int) -> int:
        """Neighbourhood of v in colour c as a bitmask (bit j set for neighbour j)"""
        self._check_vertex(v)
        self._check_color(c)
        return self._masks[c - 1][v]

    def color_masks(self, c: int) -> List[int]:
        self._check_color(c)
        return self._masks[c - 1]

    def neighborhood(self, v: int, c: int) -> FrozenSet[int]:
        self._check_vertex(v)
        self._check_color(c)
        return frozenset(_bits(self._masks[c - 1][v]))

    def edges(self) -> Iterator[Tuple[int, int, int]]:
        n = self.order
        for i in range(n):
            for j in range(i + 1, n):
                yield i, j, int(self._matrix[i, j])

    def colors_used(self) -> Set[int]:
        n = self.order
        if n < 2:
            return set()
        return {int(c) for c in np.unique(self._matrix[np.triu_indices(n, k=1)])}

    def upper_rows(self) -> List[List[int]]:
        n = self.order
        return [[int(c) for c in self._matrix[i, i + 1:]] for i in range(n - 1)]

    def flat(self) -> Tuple[int, ...]:
        """Inverse of from_flat"""
        return tuple(int(self._matrix[j, i]) for j in range(1, self.order) for i in range(j))

    def restrict(self, vertices: Iterable[int]) -> "ColoredComplete":
        """Induced colouring on the given vertices, relabelled 0..len-1 in the given order"""
        keep = list(vertices)
        for v in keep:
            self._check_vertex(v)
        if len(set(keep)) != len(keep):
            raise GallaiInputError("restriction vertices must be distinct")
        return ColoredComplete(self._matrix[np.ix_(keep, keep)], self.num_colors)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.order:
            raise GallaiInputError(f"vertex {v} out of range 0..{self.order - 1}")

    def _check_color(self, c: int) -> None:
        if not 1 <= c <= self.num_colors:
            raise GallaiInputError(f"colour {c} out of range 1..{self.num_colors}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredComplete):
            return NotImplemented
        return self.num_colors == other.num_colors and np.array_equal(self._matrix, other._matrix)

    def __hash__(self) -> int:
        return hash((self.num_colors, self._matrix.tobytes()))

    def __repr__(self) -> str:
        return f"ColoredComplete(order={self.order}, num_colors={self.num_colors})"


@dataclass(frozen=True)
class StarUnionPattern:
    """K(1,n) ∪ K(1,m) with n ≥ m ≥ 1; arguments given the other way round are swapped"""
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise GallaiInputError(f"star sizes must be at least 1, got ({self.n}, {self.m})")
        if self.m > self.n:
            n, m = self.m, self.n
            object.__setattr__(self, "n", n)
            object.__setattr__(self, "m", m)

    @property
    def vertex_count(self) -> int:
        return self.n + self.m + 2

    def to_dict(self) -> Dict:
        return {"n": self.n, "m": self.m}

    def __str__(self) -> str:
        return f"K(1,{self.n}) ∪ K(1,{self.m})"


@dataclass(frozen=True)
class StarUnionEmbedding:
    """Certificate for a monochromatic star union: centres u, v and their leaf sets"""
    color: int
    center_a: int
    center_b: int
    leaves_a: Tuple[int, ...]
    leaves_b: Tuple[int, ...]

    def is_valid_in(self, g: ColoredComplete, pattern: StarUnionPattern) -> bool:
        """Re-check the certificate edge by edge"""
        a, b = set(self.leaves_a), set(self.leaves_b)
        if len(a) != pattern.n or len(b) != pattern.m or len(self.leaves_a) != pattern.n or len(self.leaves_b) != pattern.m:
            return False
        if self.center_a == self.center_b or a & b:
            return False
        if {self.center_a, self.center_b} & (a | b):
            return False
        vertices = a | b | {self.center_a, self.center_b}
        if any(not 0 <= v < g.order for v in vertices):
            return False
        return all(g.color(self.center_a, x) == self.color for x in a) and \
            all(g.color(self.center_b, y) == self.color for y in b)

    def to_dict(self) -> Dict:
        return {
            "color": self.color,
            "centers": [self.center_a, self.center_b],
            "leaves_a": list(self.leaves_a),
            "leaves_b": list(self.leaves_b),
        }


def color_degree(g: ColoredComplete, v: int, c: int) -> int:
    """Number of edges at v with colour c"""
    g._check_vertex(v)
    g._check_color(c)
    return g.mask(v, c).bit_count()


def max_mono_star(g: ColoredComplete, v: int) -> Tuple[int, int]:
    """
    Largest monochromatic star centred at v

    Returns:
        (colour, degree); ties go to the smallest colour index
    """
    if g.order < 2:
        raise GallaiInputError("a star needs at least two vertices")
    g._check_vertex(v)
    best_color, best_degree = 1, -1
    for c in range(1, g.num_colors + 1):
        degree = g.mask(v, c).bit_count()
        if degree > best_degree:
            best_color, best_degree = c, degree
    return best_color, best_degree


def has_mono_star(g: ColoredComplete, size: int) -> Optional[Tuple[int, int]]:
    """First (vertex, colour) carrying a monochromatic K(1,size), or None"""
    if g.order < 2:
        return None
    for v in range(g.order):
        color, degree = max_mono_star(g, v)
        if degree >= size:
            return v, color
    return None


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> List[int]:
    """Set bits of a mask in ascending order"""
    return list(_bits(mask))
