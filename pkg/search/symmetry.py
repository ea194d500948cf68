"""
symmetry.py - Isomorph rejection for vertex-by-vertex colouring extension
"""
from functools import lru_cache
from typing import List, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_edge_match

Flat = Tuple[int, ...]


def vertices_in(flat_length: int) -> int:
    """Number of placed vertices for a flat encoding of the given length"""
    v = 1
    while v * (v - 1) // 2 < flat_length:
        v += 1
    if v * (v - 1) // 2 != flat_length:
        raise ValueError(f"{flat_length} is not a triangular number")
    return v


def _graph(flat: Flat, order: int) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(order))
    pos = 0
    for j in range(1, order):
        for i in range(j):
            graph.add_edge(i, j, color=flat[pos])
            pos += 1
    return graph


@lru_cache(maxsize=8192)
def automorphisms(flat: Flat) -> Tuple[Tuple[int, ...], ...]:
    """Colour-preserving vertex permutations of a placed colouring, identity first"""
    order = vertices_in(len(flat))
    identity = tuple(range(order))
    if order <= 1:
        return (identity,)
    graph = _graph(flat, order)
    matcher = GraphMatcher(graph, graph, edge_match=categorical_edge_match("color", None))
    perms = {tuple(mapping[v] for v in range(order)) for mapping in matcher.isomorphisms_iter()}
    perms.discard(identity)
    return (identity,) + tuple(sorted(perms))


def normalize(row: Sequence[int], free_colors: Sequence[int]) -> Flat:
    """Rename the free colours in order of first appearance to the smallest free names"""
    free = set(free_colors)
    names = sorted(free_colors)
    mapping = {}
    out = []
    for c in row:
        if c in free:
            if c not in mapping:
                mapping[c] = names[len(mapping)]
            out.append(mapping[c])
        else:
            out.append(c)
    return tuple(out)


def permute_row(row: Sequence[int], perm: Sequence[int]) -> Flat:
    """Row of the new vertex after relabelling old vertex i as perm[i]"""
    out: List[int] = [0] * len(row)
    for i, c in enumerate(row):
        out[perm[i]] = c
    return tuple(out)


def is_canonical_extension(parent: Flat, row: Sequence[int], num_colors: int) -> bool:
    """
    Keep `row` only if it is the least member of its orbit under the parent's
    automorphisms combined with renamings of the colours the parent never uses
    """
    row = tuple(row)
    free = [c for c in range(1, num_colors + 1) if c not in set(parent)]
    if normalize(row, free) != row:
        return False
    for perm in automorphisms(parent)[1:]:
        if normalize(permute_row(row, perm), free) < row:
            return False
    return True
