"""
detectors.py - Rainbow-triangle and monochromatic star-union detection
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.coloring import ColoredComplete, StarUnionEmbedding, StarUnionPattern, bits

logger = logging.getLogger(__name__)


def find_rainbow_triangle(g: ColoredComplete) -> Optional[Tuple[int, int, int]]:
    """
    Lexicographically first triangle whose three edges have distinct colours

    Returns:
        (x, y, z) with x < y < z, or None for a Gallai colouring
    """
    if g.order < 3 or len(g.colors_used()) < 3:
        return None

    m = g.matrix.astype(np.int16)
    n = g.order
    for x in range(n - 2):
        row = m[x, x + 1:]
        a = row[:, None]
        b = row[None, :]
        sub = m[x + 1:, x + 1:]
        rainbow = np.triu((a != b) & (sub != a) & (sub != b), k=1)
        hits = np.argwhere(rainbow)
        if hits.size:
            y, z = hits[0]
            return x, x + 1 + int(y), x + 1 + int(z)
    return None


def star_union_centers(masks: Sequence[int], n: int, m: int) -> Optional[Tuple[int, int]]:
    """
    First ordered pair of centres (u, v) admitting K(1,n) ∪ K(1,m) in one colour class.

    `masks[x]` is the colour-class neighbourhood of x. The pair works exactly when
    |N(u)-v| ≥ n, |N(v)-u| ≥ m and |(N(u) ∪ N(v)) - {u, v}| ≥ n + m.
    """
    order = len(masks)
    big = [u for u in range(order) if masks[u].bit_count() >= n]
    if not big:
        return None
    small = [v for v in range(order) if masks[v].bit_count() >= m]
    for u in big:
        bit_u = 1 << u
        for v in small:
            if u == v:
                continue
            bit_v = 1 << v
            nu = masks[u] & ~bit_v
            nv = masks[v] & ~bit_u
            if nu.bit_count() >= n and nv.bit_count() >= m and (nu | nv).bit_count() >= n + m:
                return u, v
    return None


def assign_leaves(masks: Sequence[int], u: int, v: int, n: int, m: int) -> Tuple[List[int], List[int]]:
    """Private neighbours first, then shared ones, lowest vertex first"""
    nu = masks[u] & ~(1 << v)
    nv = masks[v] & ~(1 << u)
    common = bits(nu & nv)
    leaves_a = bits(nu & ~nv)[:n]
    take = n - len(leaves_a)
    leaves_a += common[:take]
    leaves_b = bits(nv & ~nu)[:m]
    leaves_b += common[take:take + m - len(leaves_b)]
    return sorted(leaves_a), sorted(leaves_b)


def find_mono_star_union(g: ColoredComplete, p: StarUnionPattern) -> Optional[StarUnionEmbedding]:
    """
    Search every colour class for a monochromatic K(1,n) ∪ K(1,m)

    Returns:
        The first certificate in (colour, u, v) order, or None
    """
    if g.order < p.vertex_count:
        return None
    for c in range(1, g.num_colors + 1):
        masks = g.color_masks(c)
        centers = star_union_centers(masks, p.n, p.m)
        if centers is None:
            continue
        u, v = centers
        leaves_a, leaves_b = assign_leaves(masks, u, v, p.n, p.m)
        embedding = StarUnionEmbedding(c, u, v, tuple(leaves_a), tuple(leaves_b))
        logger.debug("found %s in colour %d at centres %d, %d", p, c, u, v)
        return embedding
    return None
