"""
engine.py - Exhaustive vertex-by-vertex search for colourings that avoid a rainbow triangle and a star union
"""
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from core.coloring import ColoredComplete, StarUnionPattern
from core.config import SearchSettings
from core.detectors import find_mono_star_union, find_rainbow_triangle, star_union_centers
from core.errors import CheckpointMismatchError, GallaiInputError, SearchInconclusive, SearchPaused
from search import checkpoint as ckpt
from search.symmetry import Flat, is_canonical_extension, vertices_in

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 3 ** 15
DEFAULT_SHARD_DEPTH = 3
_DEADLINE_CHECK_EVERY = 1024

# outcomes of one DFS run
_EXHAUSTED = "exhausted"
_AVOIDER = "avoider"
_BUDGET = "budget"
_TIMEOUT = "timeout"
_PAUSED = "paused"


class Verdict(str, Enum):
    AVOIDER_FOUND = "avoider_found"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class SearchProblem:
    """Does some k-colouring of K_order avoid the pattern (and rainbow triangles in gallai mode)?"""
    k: int
    pattern: StarUnionPattern
    gallai_constraint: bool
    order: int

    def __post_init__(self):
        if not 1 <= self.k <= 255:
            raise GallaiInputError(f"number of colours must lie in 1..255, got {self.k}")
        if self.order < 1:
            raise GallaiInputError(f"host order must be at least 1, got {self.order}")
        if self.order > 65535:
            raise GallaiInputError("host order does not fit a checkpoint header")
        if not self.gallai_constraint and self.k != 2:
            raise GallaiInputError("ramsey mode is defined for exactly two colours")

    @property
    def mode(self) -> str:
        return "gallai" if self.gallai_constraint else "ramsey"

    def record(self) -> Dict:
        return {"k": self.k, "n": self.pattern.n, "m": self.pattern.m, "mode": self.mode, "order": self.order}

    @property
    def digest(self) -> bytes:
        return ckpt.problem_hash(self.record())


@dataclass(frozen=True)
class SearchOutcome:
    problem: SearchProblem
    verdict: Verdict
    witness: Optional[ColoredComplete]
    nodes_explored: int
    wall_time: float

    def restrictions_avoid(self) -> bool:
        """Every one-vertex deletion of the avoider is still an avoider"""
        if self.witness is None or self.witness.order < 2:
            return True
        g = self.witness
        return all(
            is_avoider(g.restrict([u for u in range(g.order) if u != v]), self.problem.pattern,
                       self.problem.gallai_constraint)
            for v in range(g.order)
        )

    def to_dict(self) -> Dict:
        return {
            "problem": self.problem.record(),
            "verdict": self.verdict.value,
            "witness": self.witness.upper_rows() if self.witness is not None else None,
            "nodes_explored": self.nodes_explored,
            "wall_time": round(self.wall_time, 6),
        }


def is_avoider(g: ColoredComplete, pattern: StarUnionPattern, gallai: bool) -> bool:
    if gallai and find_rainbow_triangle(g) is not None:
        return False
    return find_mono_star_union(g, pattern) is None


class _Walker:
    """Node tests and child generation for one problem; a node is a flat colour tuple"""

    def __init__(self, problem: SearchProblem, prune: bool):
        self.problem = problem
        self.prune = prune
        self.k = problem.k
        self.n = problem.pattern.n
        self.m = problem.pattern.m
        self.check_rainbow = problem.gallai_constraint and problem.k >= 3

    def placed(self, flat: Flat) -> int:
        return vertices_in(len(flat))

    def children(self, flat: Flat) -> List[Flat]:
        v = self.placed(flat)
        return [flat + row for row in itertools.product(range(1, self.k + 1), repeat=v)]

    def admissible(self, flat: Flat) -> bool:
        v = self.placed(flat)
        if not self.prune:
            if v < self.problem.order:
                return True
            return is_avoider(ColoredComplete.from_flat(v, self.k, flat), self.problem.pattern,
                              self.problem.gallai_constraint)
        if v <= 1:
            return True

        x = v - 1
        row = flat[-x:]
        if self.check_rainbow and self._rainbow_at_new_vertex(flat, row):
            return False
        if v >= self.n + self.m + 2 and self._star_union_through_new_vertex(flat, v, row):
            return False
        return is_canonical_extension(flat[:-x], row, self.k)

    @staticmethod
    def _rainbow_at_new_vertex(flat: Flat, row: Sequence[int]) -> bool:
        for j in range(1, len(row)):
            cj = row[j]
            base = j * (j - 1) // 2
            for i in range(j):
                ci = row[i]
                if ci != cj:
                    e = flat[base + i]
                    if e != ci and e != cj:
                        return True
        return False

    def _star_union_through_new_vertex(self, flat: Flat, v: int, row: Sequence[int]) -> bool:
        # the parent had none, so any new copy uses an edge at the new vertex
        for c in set(row):
            masks = [0] * v
            pos = 0
            for j in range(1, v):
                for i in range(j):
                    if flat[pos] == c:
                        masks[i] |= 1 << j
                        masks[j] |= 1 << i
                    pos += 1
            if star_union_centers(masks, self.n, self.m) is not None:
                return True
        return False


def _explore(walker: _Walker, stack: List[Flat], nodes: int, node_budget: int,
             deadline: Optional[float], pause_after: Optional[int] = None) -> Tuple[str, Optional[Flat], int]:
    """
    Depth-first search from an explicit stack, mutated in place

    Returns:
        (status, avoider or None, nodes popped so far including `nodes`)
    """
    order = walker.problem.order
    popped = 0
    while stack:
        if pause_after is not None and popped >= pause_after:
            return _PAUSED, None, nodes
        flat = stack.pop()
        nodes += 1
        popped += 1
        if nodes > node_budget:
            return _BUDGET, None, nodes
        if deadline is not None and popped % _DEADLINE_CHECK_EVERY == 0 and time.monotonic() > deadline:
            return _TIMEOUT, None, nodes
        if not walker.admissible(flat):
            continue
        if walker.placed(flat) == order:
            return _AVOIDER, flat, nodes
        stack.extend(reversed(walker.children(flat)))
    return _EXHAUSTED, None, nodes


def _run_shard(args: Tuple[SearchProblem, bool, Flat, int, Optional[float]]) -> Tuple[str, Optional[Flat], int]:
    """Explore the subtree below one admitted shard root; the root itself is not counted"""
    problem, prune, root, node_budget, seconds = args
    walker = _Walker(problem, prune)
    deadline = time.monotonic() + seconds if seconds is not None else None
    stack = list(reversed(walker.children(root)))
    return _explore(walker, stack, 0, node_budget, deadline)


class SearchEngine:
    """
    Decides avoider existence for a SearchProblem under a node budget

    With several workers the tree is cut at `shard_depth` extension steps and the
    shards are merged in depth-first order, so verdict, witness and node count
    match a single-worker run exactly (a time budget is the one exception).
    """

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET, time_budget: Optional[float] = None,
                 workers: int = 1, shard_depth: int = DEFAULT_SHARD_DEPTH, prune: bool = True):
        if node_budget < 1:
            raise GallaiInputError("node budget must be positive")
        if time_budget is not None and time_budget <= 0:
            raise GallaiInputError("time budget must be positive")
        if workers < 1 or shard_depth < 1:
            raise GallaiInputError("workers and shard depth must be at least 1")
        self.node_budget = node_budget
        self.time_budget = time_budget
        self.workers = workers
        self.shard_depth = shard_depth
        self.prune = prune

    @classmethod
    def from_settings(cls, settings: SearchSettings, workers: Optional[int] = None, prune: bool = True) -> "SearchEngine":
        """Build from a config SearchSettings section"""
        return cls(node_budget=settings.node_budget, time_budget=settings.time_budget_seconds,
                   workers=workers if workers is not None else settings.workers,
                   shard_depth=settings.shard_depth, prune=prune)

    def decide(self, problem: SearchProblem, checkpoint_path: Optional[str] = None,
               pause_after: Optional[int] = None) -> SearchOutcome:
        """
        Search every colouring of K_order up to isomorphism

        Args:
            problem: What to decide
            checkpoint_path: Where to record the final state, and the frontier on pause
            pause_after: Stop after this many nodes and raise SearchPaused

        Raises:
            SearchInconclusive: The node or time budget ran out first
            SearchPaused: pause_after was reached; resume() continues from the checkpoint
        """
        if pause_after is not None and checkpoint_path is None:
            raise GallaiInputError("pausing needs a checkpoint path")
        if pause_after is not None and pause_after < 1:
            raise GallaiInputError("pause_after must be positive")
        if checkpoint_path is not None:
            ckpt.check_header_fields(problem.k, problem.pattern.n, problem.pattern.m, problem.order)
        start = time.monotonic()

        if problem.k == 1 and problem.order >= problem.pattern.vertex_count:
            outcome = SearchOutcome(problem, Verdict.EXHAUSTED, None, 0, time.monotonic() - start)
            self._finish(outcome, checkpoint_path)
            return outcome

        walker = _Walker(problem, self.prune)
        if checkpoint_path is None and self.workers > 1 and problem.order > self.shard_depth + 1:
            outcome = self._decide_parallel(walker, start)
        else:
            outcome = self._decide_serial(walker, [()], 0, 0.0, start, checkpoint_path, pause_after)
        logger.info("N=%d %s mode k=%d %s: %s after %d nodes", problem.order, problem.mode, problem.k,
                    problem.pattern, outcome.verdict.value, outcome.nodes_explored)
        return outcome

    def resume(self, path: str, problem: SearchProblem, pause_after: Optional[int] = None) -> SearchOutcome:
        """Continue a checkpointed search of the same problem; a finished one returns its cached verdict"""
        cp = ckpt.read_checkpoint(path)
        if cp.digest != problem.digest or (cp.k, cp.n, cp.m, cp.gallai, cp.order) != (
                problem.k, problem.pattern.n, problem.pattern.m, problem.gallai_constraint, problem.order):
            raise CheckpointMismatchError(f"checkpoint {path} was written for a different problem")
        if cp.prune != self.prune:
            raise CheckpointMismatchError(f"checkpoint {path} was written with pruning {'on' if cp.prune else 'off'}")

        if cp.status == ckpt.STATUS_EXHAUSTED:
            return SearchOutcome(problem, Verdict.EXHAUSTED, None, cp.nodes_explored, cp.wall_time)
        if cp.status == ckpt.STATUS_AVOIDER:
            if len(cp.records) != 1:
                raise CheckpointMismatchError(f"checkpoint {path} has no avoider record")
            witness = ColoredComplete.from_flat(problem.order, problem.k, cp.records[0])
            return SearchOutcome(problem, Verdict.AVOIDER_FOUND, witness, cp.nodes_explored, cp.wall_time)

        logger.info("resuming %s from %d frontier nodes after %d nodes", path, len(cp.records), cp.nodes_explored)
        return self._decide_serial(_Walker(problem, self.prune), list(cp.records), cp.nodes_explored,
                                   cp.wall_time, time.monotonic(), path, pause_after)

    def threshold(self, k: int, pattern: StarUnionPattern, gallai_constraint: bool, n_max: int) -> Optional[int]:
        """
        Smallest order up to n_max at which no avoider exists

        Ascending search is sound: an avoider on N vertices restricts to one on N - 1.
        """
        if n_max < 2:
            raise GallaiInputError("n_max must be at least 2")
        for order in range(1, n_max + 1):
            outcome = self.decide(SearchProblem(k, pattern, gallai_constraint, order))
            if outcome.verdict == Verdict.EXHAUSTED:
                return order
        return None

    def _deadline(self, start: float) -> Optional[float]:
        return start + self.time_budget if self.time_budget is not None else None

    def _decide_serial(self, walker: _Walker, stack: List[Flat], nodes: int, prior_time: float, start: float,
                       checkpoint_path: Optional[str], pause_after: Optional[int]) -> SearchOutcome:
        problem = walker.problem
        status, avoider, nodes = _explore(walker, stack, nodes, self.node_budget, self._deadline(start), pause_after)
        elapsed = prior_time + time.monotonic() - start

        if status == _PAUSED:
            ckpt.write_checkpoint(checkpoint_path, self._checkpoint(problem, ckpt.STATUS_RUNNING, nodes, elapsed, stack))
            raise SearchPaused(checkpoint_path, nodes)
        if status in (_BUDGET, _TIMEOUT):
            raise self._inconclusive(problem, status, min(nodes, self.node_budget))

        if status == _AVOIDER:
            outcome = SearchOutcome(problem, Verdict.AVOIDER_FOUND,
                                    ColoredComplete.from_flat(problem.order, problem.k, avoider), nodes, elapsed)
        else:
            outcome = SearchOutcome(problem, Verdict.EXHAUSTED, None, nodes, elapsed)
        self._finish(outcome, checkpoint_path)
        return outcome

    def _decide_parallel(self, walker: _Walker, start: float) -> SearchOutcome:
        problem = walker.problem
        shard_order = self.shard_depth + 1

        # serial walk of the shallow tree, remembering how many nodes precede each shard
        shards: List[Tuple[Flat, int]] = []
        stack: List[Flat] = [()]
        shallow_nodes = 0
        while stack:
            flat = stack.pop()
            shallow_nodes += 1
            if not walker.admissible(flat):
                continue
            if walker.placed(flat) == shard_order:
                shards.append((flat, shallow_nodes))
                continue
            stack.extend(reversed(walker.children(flat)))
        logger.info("split N=%d into %d shards over %d workers", problem.order, len(shards), self.workers)

        seconds = self.time_budget
        jobs = [(problem, self.prune, root, self.node_budget, seconds) for root, _ in shards]
        subtree_nodes = 0
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            for (root, before), (status, avoider, count) in zip(shards, executor.map(_run_shard, jobs)):
                total = before + subtree_nodes + count
                if status in (_BUDGET, _TIMEOUT) or total > self.node_budget:
                    executor.shutdown(wait=False, cancel_futures=True)
                    raise self._inconclusive(problem, status if status != _EXHAUSTED else _BUDGET,
                                             min(total, self.node_budget))
                if status == _AVOIDER:
                    executor.shutdown(wait=False, cancel_futures=True)
                    witness = ColoredComplete.from_flat(problem.order, problem.k, avoider)
                    return SearchOutcome(problem, Verdict.AVOIDER_FOUND, witness, total, time.monotonic() - start)
                subtree_nodes += count

        total = shallow_nodes + subtree_nodes
        if total > self.node_budget:
            raise self._inconclusive(problem, _BUDGET, self.node_budget)
        return SearchOutcome(problem, Verdict.EXHAUSTED, None, total, time.monotonic() - start)

    def _inconclusive(self, problem: SearchProblem, status: str, nodes: int) -> SearchInconclusive:
        cap = f"time budget of {self.time_budget}s" if status == _TIMEOUT else f"node budget of {self.node_budget}"
        return SearchInconclusive(f"N={problem.order} {problem.mode} k={problem.k} {problem.pattern}: "
                                  f"{cap} exhausted without a verdict", nodes)

    def _checkpoint(self, problem: SearchProblem, status: int, nodes: int, elapsed: float,
                    records: List[Flat]) -> ckpt.Checkpoint:
        return ckpt.Checkpoint(problem.k, problem.pattern.n, problem.pattern.m, problem.gallai_constraint,
                               problem.order, self.prune, problem.digest, status, nodes, elapsed, list(records))

    def _finish(self, outcome: SearchOutcome, checkpoint_path: Optional[str]) -> None:
        if checkpoint_path is None:
            return
        if outcome.verdict == Verdict.AVOIDER_FOUND:
            cp = self._checkpoint(outcome.problem, ckpt.STATUS_AVOIDER, outcome.nodes_explored,
                                  outcome.wall_time, [outcome.witness.flat()])
        else:
            cp = self._checkpoint(outcome.problem, ckpt.STATUS_EXHAUSTED, outcome.nodes_explored,
                                  outcome.wall_time, [])
        ckpt.write_checkpoint(checkpoint_path, cp)


def decide(problem: SearchProblem, node_budget: int = DEFAULT_NODE_BUDGET, time_budget: Optional[float] = None,
           workers: int = 1, shard_depth: int = DEFAULT_SHARD_DEPTH, prune: bool = True,
           checkpoint_path: Optional[str] = None, pause_after: Optional[int] = None) -> SearchOutcome:
    engine = SearchEngine(node_budget, time_budget, workers, shard_depth, prune)
    return engine.decide(problem, checkpoint_path, pause_after)


def resume(path: str, problem: SearchProblem, node_budget: int = DEFAULT_NODE_BUDGET,
           time_budget: Optional[float] = None, prune: bool = True,
           pause_after: Optional[int] = None) -> SearchOutcome:
    return SearchEngine(node_budget, time_budget, prune=prune).resume(path, problem, pause_after)


def compute_threshold(k: int, pattern: StarUnionPattern, gallai_constraint: bool, n_max: int,
                      node_budget: int = DEFAULT_NODE_BUDGET, time_budget: Optional[float] = None,
                      workers: int = 1, shard_depth: int = DEFAULT_SHARD_DEPTH) -> Optional[int]:
    engine = SearchEngine(node_budget, time_budget, workers, shard_depth)
    return engine.threshold(k, pattern, gallai_constraint, n_max)
