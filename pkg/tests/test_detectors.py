"""
test_detectors.py - Unit and property tests for the rainbow-triangle and star-union detectors
"""
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from core.coloring import ColoredComplete, StarUnionPattern
from core.detectors import assign_leaves, find_mono_star_union, find_rainbow_triangle, star_union_centers
from oracles import SAMPLES, colorings, naive_has_star_union, naive_rainbow_triangle
from verifier.constructions import build_small_m_lower, pentagon_blowup


def star_colored_k5() -> ColoredComplete:
    """Every edge at vertex 0 has colour 2, the rest colour 1"""
    edges = {(i, j): 2 if i == 0 else 1 for i in range(5) for j in range(i + 1, 5)}
    return ColoredComplete.from_edges(5, 2, edges)


class TestRainbowTriangle(unittest.TestCase):

    def test_rainbow_k3(self):
        g = ColoredComplete.from_edges(3, 3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})
        self.assertEqual(find_rainbow_triangle(g), (0, 1, 2))

    def test_two_colors_never_rainbow(self):
        self.assertIsNone(find_rainbow_triangle(star_colored_k5()))

    def test_pentagon_blowup_is_gallai(self):
        self.assertIsNone(find_rainbow_triangle(pentagon_blowup([3, 1, 2, 4, 2])))

    def test_lexicographically_first(self):
        # rainbow triangles (0, 2, 3) and (1, 2, 3); the first must win
        edges = {(0, 1): 1, (0, 2): 1, (0, 3): 2, (1, 2): 1, (1, 3): 2, (2, 3): 3}
        self.assertEqual(find_rainbow_triangle(ColoredComplete.from_edges(4, 3, edges)), (0, 2, 3))

    @given(colorings(max_order=8))
    @settings(max_examples=SAMPLES, deadline=None)
    def test_agrees_with_naive_scan(self, g):
        self.assertEqual(find_rainbow_triangle(g), naive_rainbow_triangle(g))


class TestStarUnion(unittest.TestCase):

    def test_monochromatic_clique_contains_pattern(self):
        g = ColoredComplete.monochromatic(7)
        p = StarUnionPattern(3, 2)
        embedding = find_mono_star_union(g, p)
        self.assertIsNotNone(embedding)
        self.assertTrue(embedding.is_valid_in(g, p))

    def test_too_few_vertices(self):
        self.assertIsNone(find_mono_star_union(ColoredComplete.monochromatic(6), StarUnionPattern(3, 2)))

    def test_star_colored_k5(self):
        g = star_colored_k5()
        p = StarUnionPattern(1, 1)
        self.assertIsNone(star_union_centers(g.color_masks(2), 1, 1))
        self.assertIsNotNone(star_union_centers(g.color_masks(1), 1, 1))
        embedding = find_mono_star_union(g, p)
        self.assertEqual(embedding.color, 1)
        self.assertTrue(embedding.is_valid_in(g, p))

    def test_small_m_witness_avoids_pattern(self):
        witness = build_small_m_lower(23, 3, 3)
        self.assertIsNone(find_mono_star_union(witness.coloring, StarUnionPattern(23, 3)))

    def test_shared_neighbours_are_split(self):
        # centres 0 and 1 see exactly the same three leaves
        masks = [0b11100, 0b11100, 0b00011, 0b00011, 0b00011]
        self.assertEqual(star_union_centers(masks, 2, 1), (0, 1))
        leaves_a, leaves_b = assign_leaves(masks, 0, 1, 2, 1)
        self.assertEqual(leaves_a, [2, 3])
        self.assertEqual(leaves_b, [4])
        self.assertIsNone(star_union_centers(masks, 2, 2))

    def test_private_leaves_first(self):
        # u = 0 sees 2, 3, 4; v = 1 sees 3 only, so 3 must go to v
        masks = [0b11100, 0b01000, 0b00001, 0b00011, 0b00001]
        leaves_a, leaves_b = assign_leaves(masks, 0, 1, 2, 1)
        self.assertEqual(leaves_b, [3])
        self.assertEqual(leaves_a, [2, 4])

    @given(colorings(max_order=9), st.integers(1, 4), st.integers(1, 3))
    @settings(max_examples=SAMPLES, deadline=None)
    def test_agrees_with_brute_force(self, g, n, m):
        p = StarUnionPattern(n, m)
        if p.n + p.m > 6:
            return
        embedding = find_mono_star_union(g, p)
        self.assertEqual(embedding is not None, naive_has_star_union(g, p.n, p.m))
        if embedding is not None:
            self.assertTrue(embedding.is_valid_in(g, p))


if __name__ == '__main__':
    unittest.main()
