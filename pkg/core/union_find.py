"""
union_find.py - Disjoint sets over vertex indices, used to grow and merge partition parts
"""
from typing import Dict, List


class UnionFind:
    """Union by size with path halving"""

    def __init__(self, size: int):
        self._parent = list(range(size))
        self._size = [1] * size
        self.num_components = size

    def find(self, v: int) -> int:
        parent = self._parent
        while v != parent[v]:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(self, a: int, b: int) -> bool:
        """Merge the sets holding a and b; False if they were already together"""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        self.num_components -= 1
        return True

    def components(self) -> List[List[int]]:
        """Components as sorted vertex lists, ordered by smallest member"""
        groups: Dict[int, List[int]] = {}
        for v in range(len(self._parent)):
            groups.setdefault(self.find(v), []).append(v)
        return sorted(groups.values(), key=lambda part: part[0])

    def labels(self) -> List[int]:
        """Component index of every vertex, numbered by smallest member"""
        labels = [0] * len(self._parent)
        for index, part in enumerate(self.components()):
            for v in part:
                labels[v] = index
        return labels
