"""
test_search.py - Unit tests for the exhaustive avoider search, its symmetry filter and thresholds
"""
import unittest

from core.coloring import StarUnionPattern
from core.config import SearchSettings
from core.errors import GallaiInputError, SearchInconclusive
from search.engine import SearchEngine, SearchProblem, Verdict, compute_threshold, decide, is_avoider
from search.symmetry import automorphisms, is_canonical_extension, normalize, permute_row, vertices_in
from verifier import formulas

ONE_ONE = StarUnionPattern(1, 1)


class TestSymmetry(unittest.TestCase):

    def test_vertices_in(self):
        self.assertEqual(vertices_in(0), 1)
        self.assertEqual(vertices_in(1), 2)
        self.assertEqual(vertices_in(10), 5)
        with self.assertRaises(ValueError):
            vertices_in(4)

    def test_automorphisms(self):
        self.assertEqual(automorphisms(()), ((0,),))
        perms = automorphisms((1, 1, 1))
        self.assertEqual(len(perms), 6)
        self.assertEqual(perms[0], (0, 1, 2))
        # only the swap of vertices 0 and 1 keeps edge (0, 1) coloured 2
        self.assertEqual(automorphisms((2, 1, 1)), ((0, 1, 2), (1, 0, 2)))

    def test_normalize(self):
        self.assertEqual(normalize((3, 1, 3, 2), [2, 3]), (2, 1, 2, 3))
        self.assertEqual(normalize((1, 1), []), (1, 1))

    def test_permute_row(self):
        self.assertEqual(permute_row((1, 2, 3), (2, 0, 1)), (2, 3, 1))

    def test_canonical_extension(self):
        self.assertTrue(is_canonical_extension((1,), (1, 2), 2))
        self.assertFalse(is_canonical_extension((1,), (2, 1), 2))
        # colour 3 is unused by the parent, so it must come before colour 4
        self.assertFalse(is_canonical_extension((1,), (1, 4), 4))
        self.assertFalse(is_canonical_extension((1,), (1, 3), 4))
        self.assertTrue(is_canonical_extension((1,), (1, 2), 4))


class TestSearchProblem(unittest.TestCase):

    def test_ramsey_mode_needs_two_colors(self):
        with self.assertRaises(GallaiInputError):
            SearchProblem(3, ONE_ONE, False, 4)

    def test_bad_order(self):
        with self.assertRaises(GallaiInputError):
            SearchProblem(2, ONE_ONE, True, 0)

    def test_digest_depends_on_every_field(self):
        base = SearchProblem(2, ONE_ONE, False, 5)
        self.assertEqual(base.digest, SearchProblem(2, ONE_ONE, False, 5).digest)
        self.assertNotEqual(base.digest, SearchProblem(2, ONE_ONE, True, 5).digest)
        self.assertNotEqual(base.digest, SearchProblem(2, ONE_ONE, False, 6).digest)
        self.assertNotEqual(base.digest, SearchProblem(2, StarUnionPattern(2, 1), False, 5).digest)


class TestDecide(unittest.TestCase):

    def assert_avoider(self, outcome):
        self.assertEqual(outcome.verdict, Verdict.AVOIDER_FOUND)
        self.assertEqual(outcome.witness.order, outcome.problem.order)
        self.assertTrue(is_avoider(outcome.witness, outcome.problem.pattern, outcome.problem.gallai_constraint))
        self.assertTrue(outcome.restrictions_avoid())

    def test_ramsey_one_one(self):
        self.assert_avoider(decide(SearchProblem(2, ONE_ONE, False, 4)))
        outcome = decide(SearchProblem(2, ONE_ONE, False, 5))
        self.assertEqual(outcome.verdict, Verdict.EXHAUSTED)
        self.assertIsNone(outcome.witness)
        self.assertGreater(outcome.nodes_explored, 0)

    def test_gallai_three_colors_one_one(self):
        self.assert_avoider(decide(SearchProblem(3, ONE_ONE, True, 4)))
        self.assertEqual(decide(SearchProblem(3, ONE_ONE, True, 5)).verdict, Verdict.EXHAUSTED)

    def test_one_color_exhausts_immediately(self):
        outcome = decide(SearchProblem(1, StarUnionPattern(2, 1), True, 5))
        self.assertEqual(outcome.verdict, Verdict.EXHAUSTED)
        self.assertEqual(outcome.nodes_explored, 0)
        self.assert_avoider(decide(SearchProblem(1, StarUnionPattern(2, 1), True, 4)))

    def test_budget_gives_inconclusive(self):
        with self.assertRaises(SearchInconclusive) as ctx:
            decide(SearchProblem(3, ONE_ONE, True, 5), node_budget=10)
        self.assertEqual(ctx.exception.nodes_explored, 10)

    def test_to_dict(self):
        summary = decide(SearchProblem(2, ONE_ONE, False, 4)).to_dict()
        self.assertEqual(summary["verdict"], "avoider_found")
        self.assertEqual(summary["problem"], {"k": 2, "n": 1, "m": 1, "mode": "ramsey", "order": 4})
        self.assertEqual(len(summary["witness"]), 3)

    def test_pruning_does_not_change_verdicts(self):
        cases = [(3, ONE_ONE, True), (2, ONE_ONE, True), (2, StarUnionPattern(2, 1), True),
                 (2, ONE_ONE, False), (2, StarUnionPattern(2, 1), False)]
        for k, pattern, gallai in cases:
            for order in range(2, 6):
                problem = SearchProblem(k, pattern, gallai, order)
                pruned = decide(problem)
                full = decide(problem, prune=False)
                self.assertEqual(pruned.verdict, full.verdict, problem)
                if full.witness is not None:
                    self.assertTrue(is_avoider(full.witness, pattern, gallai))

    def test_worker_count_does_not_change_the_result(self):
        problems = [
            SearchProblem(2, ONE_ONE, False, 4),
            SearchProblem(2, ONE_ONE, False, 5),
            SearchProblem(2, StarUnionPattern(2, 1), False, 6),
            SearchProblem(3, ONE_ONE, True, 5),
        ]
        for problem in problems:
            serial = decide(problem, workers=1)
            for workers in (2, 4, 8):
                for shard_depth in (1, 2, 3):
                    with self.subTest(problem=problem, workers=workers, shard_depth=shard_depth):
                        parallel = decide(problem, workers=workers, shard_depth=shard_depth)
                        self.assertEqual(serial.verdict, parallel.verdict)
                        self.assertEqual(serial.witness, parallel.witness)
                        self.assertEqual(serial.nodes_explored, parallel.nodes_explored)


class TestThreshold(unittest.TestCase):

    def test_known_thresholds(self):
        self.assertEqual(compute_threshold(2, ONE_ONE, False, 6), 5)
        self.assertEqual(compute_threshold(2, StarUnionPattern(2, 1), False, 7), 6)
        self.assertEqual(compute_threshold(3, ONE_ONE, True, 6), 5)

    def test_gallai_threshold_matches_equal_case(self):
        self.assertEqual(compute_threshold(3, ONE_ONE, True, 6), formulas.gr_equal(3, 1).value)

    def test_ramsey_thresholds_match_formula(self):
        for n, m in ((1, 1), (2, 1), (3, 1), (2, 2)):
            expected = formulas.ramsey_union_stars(n, m).value
            self.assertEqual(compute_threshold(2, StarUnionPattern(n, m), False, expected + 1), expected, (n, m))

    def test_absent_when_avoiders_persist(self):
        self.assertIsNone(compute_threshold(2, ONE_ONE, False, 4))

    def test_threshold_needs_two_vertices(self):
        with self.assertRaises(GallaiInputError):
            compute_threshold(2, ONE_ONE, False, 1)

    def test_inconclusive_propagates(self):
        with self.assertRaises(SearchInconclusive):
            compute_threshold(3, ONE_ONE, True, 6, node_budget=20)

    def test_engine_from_settings(self):
        engine = SearchEngine.from_settings(SearchSettings(node_budget=50000, workers=3), workers=1)
        self.assertEqual(engine.node_budget, 50000)
        self.assertEqual(engine.workers, 1)
        self.assertEqual(engine.threshold(2, ONE_ONE, False, 6), 5)


if __name__ == '__main__':
    unittest.main()
