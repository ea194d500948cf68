"""
test_constructions.py - Unit tests for the lower-bound witness builders and the self-verifier
"""
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from core.coloring import ColoredComplete, StarUnionPattern, color_degree, has_mono_star, max_mono_star
from core.detectors import find_mono_star_union, find_rainbow_triangle
from core.errors import GallaiInputError, UnsupportedParameterError
from oracles import SAMPLES
from verifier import formulas
from verifier.constructions import (EQUAL, FROM_FILE, GENERAL, SINGLE_STAR, SMALL_M, VerificationStatus, Witness,
                                    build_equal_lower, build_general_lower, build_single_star_lower,
                                    build_small_m_lower, build_witness, construction_grid, distinct_arrangements,
                                    extend_with_apex, general_construction_fails, general_part_sizes,
                                    pentagon_blowup, small_m_part_sizes, verify_witness)
from verifier.gallai_partition import random_gallai


class TestPentagonBlowup(unittest.TestCase):

    def test_unit_sizes_give_two_complementary_cycles(self):
        g = pentagon_blowup([1] * 5)
        self.assertEqual(g.order, 5)
        self.assertEqual(g.colors_used(), {2, 3})
        for v in range(5):
            self.assertEqual(color_degree(g, v, 2), 2)
            self.assertEqual(color_degree(g, v, 3), 2)
        for x in range(5):
            for y in range(x + 1, 5):
                for z in range(y + 1, 5):
                    self.assertGreater(len({g.color(x, y), g.color(x, z), g.color(y, z)}), 1)

    def test_elevens(self):
        g = pentagon_blowup([11] * 5, 1, (2, 3))
        self.assertEqual(g.order, 55)
        self.assertEqual(max_mono_star(g, 0), (2, 22))
        self.assertEqual(max(color_degree(g, v, 1) for v in range(55)), 10)
        self.assertIsNone(find_rainbow_triangle(g))

    def test_arrangement_moves_parts(self):
        g = pentagon_blowup([1, 1, 1, 1, 2], arrangement=[0, 2, 1, 3, 4])
        # parts 0 and 1 now sit at positions 0 and 2, a diagonal
        self.assertEqual(g.color(0, 1), 3)
        self.assertEqual(g.color(0, 2), 2)
        self.assertEqual(g.color(4, 5), 1)

    def test_rejects_bad_input(self):
        with self.assertRaises(GallaiInputError):
            pentagon_blowup([1, 1, 1, 1])
        with self.assertRaises(GallaiInputError):
            pentagon_blowup([1, 1, 0, 1, 1])
        with self.assertRaises(GallaiInputError):
            pentagon_blowup([1] * 5, 2, (2, 3))
        with self.assertRaises(GallaiInputError):
            pentagon_blowup([1] * 5, arrangement=[0, 0, 1, 2, 3])


class TestExtendWithApex(unittest.TestCase):

    def test_empty_list_is_identity(self):
        g = pentagon_blowup([2] * 5)
        self.assertIs(extend_with_apex(g, []), g)

    def test_single_vertex(self):
        g = extend_with_apex(ColoredComplete.monochromatic(1), [1])
        self.assertEqual(g.order, 2)
        self.assertEqual(g.color(0, 1), 1)

    def test_two_apexes_on_pentagon(self):
        g = extend_with_apex(pentagon_blowup([11] * 5), [4, 5])
        self.assertEqual(g.order, 57)
        self.assertEqual(g.num_colors, 5)
        self.assertEqual(g.color(55, 56), 5)
        self.assertEqual(color_degree(g, 55, 4), 55)
        self.assertIsNone(find_rainbow_triangle(g))

    def test_reused_color_rejected(self):
        with self.assertRaises(GallaiInputError):
            extend_with_apex(pentagon_blowup([2] * 5), [2])
        with self.assertRaises(GallaiInputError):
            extend_with_apex(pentagon_blowup([2] * 5), [4, 4])

    @given(st.integers(0, 2 ** 32 - 1), st.integers(1, 9), st.integers(1, 3), st.integers(1, 4),
           st.integers(1, 3), st.integers(1, 3))
    @settings(max_examples=SAMPLES, deadline=None)
    def test_apexes_keep_gallai_and_target_free(self, seed, order, num_colors, n, m, apexes):
        g = random_gallai(seed, order, num_colors)
        fresh = list(range(g.num_colors + 1, g.num_colors + 1 + apexes))
        extended = extend_with_apex(g, fresh)
        pattern = StarUnionPattern(n, m)
        self.assertEqual(extended.order, order + apexes)
        self.assertIsNone(find_rainbow_triangle(extended))
        # an apex colour has one vertex of degree above 1, so it never holds two centres
        self.assertEqual(find_mono_star_union(extended, pattern) is None,
                         find_mono_star_union(g, pattern) is None)


class TestSmallM(unittest.TestCase):

    def test_odd_n(self):
        witness = build_small_m_lower(23, 3, 3)
        self.assertEqual(witness.order, 55)
        self.assertEqual(witness.claimed_bound, 56)
        self.assertEqual(witness.verified, VerificationStatus.PASS)
        self.assertEqual(witness.provenance.part_sizes, (11,) * 5)

    def test_even_n(self):
        witness = build_small_m_lower(22, 3, 4)
        self.assertEqual(witness.order, 52)
        self.assertEqual(witness.verified, VerificationStatus.PASS)
        self.assertEqual(witness.provenance.apex_colors, (4,))

    def test_apex_star_is_harmless(self):
        witness = build_small_m_lower(23, 3, 4)
        self.assertEqual(color_degree(witness.coloring, 55, 4), 55)
        self.assertIsNone(find_mono_star_union(witness.coloring, StarUnionPattern(23, 3)))

    def test_order_matches_formula(self):
        for n in (22, 23, 38, 47):
            for k in (3, 4, 6):
                witness = build_small_m_lower(n, 5, k)
                self.assertEqual(witness.order + 1, formulas.gr_small_m(k, n, 5).value)

    def test_needs_three_colors(self):
        with self.assertRaises(GallaiInputError):
            build_small_m_lower(23, 3, 2)

    def test_part_sizes(self):
        self.assertEqual(small_m_part_sizes(23), [11] * 5)
        self.assertEqual(small_m_part_sizes(22), [11, 10, 10, 10, 10])


class TestEqual(unittest.TestCase):

    def test_three_three(self):
        witness = build_equal_lower(3, 3)
        self.assertEqual(witness.order, 10)
        self.assertEqual(witness.verified, VerificationStatus.PASS)
        self.assertEqual(witness.claimed_bound, formulas.gr_equal(3, 3).value)

    def test_f1_is_regular_in_both_colors(self):
        f1 = build_equal_lower(3, 3).coloring.restrict(range(5))
        for v in range(5):
            self.assertEqual(color_degree(f1, v, 1), 2)
            self.assertEqual(color_degree(f1, v, 2), 2)

    def test_five_four(self):
        witness = build_equal_lower(5, 4)
        self.assertEqual(witness.order, 17)
        self.assertEqual(witness.verified, VerificationStatus.PASS)
        self.assertEqual(color_degree(witness.coloring, 14, 1), 14)

    def test_even_n_unsupported(self):
        with self.assertRaises(UnsupportedParameterError):
            build_equal_lower(4, 3)

    def test_smallest_case(self):
        witness = build_equal_lower(1, 3)
        self.assertEqual(witness.order, 4)
        self.assertEqual(witness.verified, VerificationStatus.PASS)


class TestGeneral(unittest.TestCase):

    def test_odd_n(self):
        witness = build_general_lower(9, 2, 3)
        self.assertEqual(witness.order, 18)
        self.assertEqual(witness.verified, VerificationStatus.PASS)

    def test_even_n(self):
        witness = build_general_lower(10, 2, 3)
        self.assertEqual(witness.order, 19)
        self.assertEqual(witness.verified, VerificationStatus.PASS)

    def test_m_equals_n(self):
        witness = build_general_lower(9, 9, 3)
        self.assertEqual(witness.provenance.part_sizes, (4, 4, 4, 4, 9))
        self.assertEqual(witness.verified, VerificationStatus.PASS)

    def test_failing_band_comes_back_failed(self):
        with self.assertLogs('verifier.constructions', level='INFO'):
            witness = build_general_lower(9, 6, 3)
        self.assertEqual(witness.verified, VerificationStatus.FAIL)
        self.assertTrue(witness.star_union_certificate.is_valid_in(witness.coloring, witness.pattern))

    def test_m_above_n_rejected(self):
        with self.assertRaises(GallaiInputError):
            build_general_lower(9, 10, 3)

    def test_part_sizes(self):
        self.assertEqual(general_part_sizes(9, 2), [4, 4, 4, 4, 2])
        self.assertEqual(general_part_sizes(10, 2), [4, 4, 4, 2, 5])

    def test_failing_band(self):
        self.assertEqual([m for m in range(1, 10) if general_construction_fails(9, m)], [6, 7])
        self.assertEqual([m for m in range(1, 11) if general_construction_fails(10, m)], [6, 7, 8])
        self.assertFalse(any(general_construction_fails(5, m) for m in range(1, 6)))


class TestSingleStar(unittest.TestCase):

    def test_order_matches_formula(self):
        for m in range(2, 12):
            witness = build_single_star_lower(m, 3)
            self.assertEqual(witness.order + 1, formulas.gr_single_star(3, m).value)
            self.assertEqual(witness.verified, VerificationStatus.PASS)
            self.assertIsNone(has_mono_star(witness.coloring, m))

    def test_m_one_rejected(self):
        with self.assertRaises(GallaiInputError):
            build_single_star_lower(1, 3)


class TestVerifyWitness(unittest.TestCase):

    def test_monochromatic_clique_fails_with_certificate(self):
        g = ColoredComplete.monochromatic(10)
        witness = verify_witness(Witness.from_coloring(g, 2, 2))
        self.assertEqual(witness.verified, VerificationStatus.FAIL)
        self.assertTrue(witness.star_union_certificate.is_valid_in(g, StarUnionPattern(2, 2)))
        self.assertEqual(witness.provenance.construction, FROM_FILE)

    def test_rainbow_triangle_fails(self):
        g = ColoredComplete.from_edges(3, 3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})
        witness = verify_witness(Witness.from_coloring(g, 5, 5))
        self.assertEqual(witness.rainbow_certificate, (0, 1, 2))
        self.assertEqual(witness.verified, VerificationStatus.FAIL)

    def test_wrong_claimed_bound_fails(self):
        witness = verify_witness(Witness.from_coloring(pentagon_blowup([1] * 5), 3, 3, claimed_bound=9))
        self.assertEqual(witness.verified, VerificationStatus.FAIL)
        self.assertIn("claimed bound", witness.failures[0])

    def test_to_dict(self):
        summary = build_equal_lower(3, 3).to_dict()
        self.assertEqual(summary['verified'], 'pass')
        self.assertEqual(summary['provenance']['construction'], EQUAL)
        self.assertEqual(summary['pattern'], {'n': 3, 'm': 3})


class TestGrid(unittest.TestCase):

    def test_dispatch(self):
        self.assertEqual(build_witness(SMALL_M, 23, 3, 3).provenance.construction, SMALL_M)
        self.assertEqual(build_witness(SINGLE_STAR, m=4).order, 6)
        with self.assertRaises(GallaiInputError):
            build_witness(GENERAL, 9)
        with self.assertRaises(GallaiInputError):
            build_witness("octagon", 9, 2)

    def test_grid_sample_matches_known_band(self):
        for construction, n, m, k in construction_grid(n_values=(9, 11), k_values=(3, 4)):
            witness = build_witness(construction, n, m, k)
            expected_fail = construction == GENERAL and general_construction_fails(n, m)
            self.assertEqual(witness.verified == VerificationStatus.FAIL, expected_fail, (construction, n, m, k))
            self.assertIsNone(witness.rainbow_certificate)

    def test_whole_grid(self):
        lower_bound = {
            SMALL_M: lambda n, m, k: formulas.gr_small_m(k, n, m).value,
            GENERAL: lambda n, m, k: formulas.gr_general_lower(k, n, m).lower,
            EQUAL: lambda n, m, k: formulas.gr_equal(k, n).value,
        }
        for construction, n, m, k in construction_grid():
            point = (construction, n, m, k)
            witness = build_witness(construction, n, m, k)
            self.assertIsNone(witness.rainbow_certificate, point)
            self.assertEqual(witness.order + 1, lower_bound[construction](n, m, k), point)
            if construction == GENERAL and general_construction_fails(n, m):
                self.assertEqual(witness.verified, VerificationStatus.FAIL, point)
                self.assertTrue(witness.star_union_certificate.is_valid_in(witness.coloring, witness.pattern))
            else:
                self.assertEqual(witness.verified, VerificationStatus.PASS, point)
                self.assertIsNone(witness.star_union_certificate, point)

    def test_grid_shape(self):
        points = list(construction_grid())
        self.assertIn((SMALL_M, 51, 8, 6), points)
        self.assertIn((EQUAL, 25, 25, 3), points)
        self.assertNotIn((EQUAL, 4, 4, 3), points)
        self.assertEqual(sum(1 for p in points if p[0] == GENERAL), sum(n for n in range(9, 52, 2)) * 4)


class TestDistinctArrangements(unittest.TestCase):

    def test_counts(self):
        self.assertEqual(distinct_arrangements([3] * 5), [(0, 1, 2, 3, 4)])
        self.assertEqual(len(distinct_arrangements([4, 4, 4, 4, 6])), 1)
        self.assertEqual(len(distinct_arrangements([4, 4, 4, 2, 5])), 2)
        self.assertEqual(len(distinct_arrangements([1, 2, 3, 4, 5])), 12)

    def test_identity_first(self):
        self.assertEqual(distinct_arrangements([4, 4, 4, 2, 5])[0], (0, 1, 2, 3, 4))


if __name__ == '__main__':
    unittest.main()
