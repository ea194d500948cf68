"""
stability.py - Check the five-part stability conclusion for colourings without a large between-part star
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from core.coloring import ColoredComplete
from core.errors import GallaiInputError
from verifier.constructions import pentagon_blowup
from verifier.gallai_partition import GallaiPartition, find_gallai_partition

logger = logging.getLogger(__name__)

MIN_N = 22
MIN_R = 4


@dataclass
class StabilityReport:
    n: int
    r: int
    order: int
    holds_hypothesis: bool
    num_parts: int
    part_sizes: List[int]
    min_part_size: int
    palette: List[int]
    min_between_degree_per_color: int
    max_between_degree: int
    conclusion_holds: Optional[bool]
    warnings: List[str] = field(default_factory=list)

    @property
    def required_part_size(self) -> int:
        """ceil((n - r + 3) / 2)"""
        return (self.n - self.r + 4) // 2

    @property
    def required_degree(self) -> int:
        return self.n - self.r + 3

    @property
    def counterexample(self) -> bool:
        """Hypothesis holds but the conclusion does not"""
        return self.holds_hypothesis and self.conclusion_holds is False

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "r": self.r,
            "order": self.order,
            "holds_hypothesis": self.holds_hypothesis,
            "conclusion_holds": self.conclusion_holds,
            "counterexample": self.counterexample,
            "num_parts": self.num_parts,
            "part_sizes": self.part_sizes,
            "min_part_size": self.min_part_size,
            "required_part_size": self.required_part_size,
            "palette": self.palette,
            "min_between_degree_per_color": self.min_between_degree_per_color,
            "required_degree": self.required_degree,
            "max_between_degree": self.max_between_degree,
            "warnings": self.warnings,
        }


def _precondition_warnings(g: ColoredComplete, n: int, r: int, min_n: int) -> List[str]:
    warnings = []
    if n < min_n:
        warnings.append(f"n={n} is below {min_n}")
    if r < MIN_R:
        warnings.append(f"r={r} is below {MIN_R}")
    if 4 * r > n + 4:
        warnings.append(f"r={r} exceeds (n+4)/4")
    if 2 * g.order != 5 * n - r:
        warnings.append(f"order {g.order} differs from (5n-r)/2 = {(5 * n - r) / 2:g}")
    return warnings


def between_part_degrees(g: ColoredComplete, partition: GallaiPartition) -> np.ndarray:
    """(order x num_colors) table: edges of each colour from each vertex to other parts"""
    labels = np.empty(g.order, dtype=np.int64)
    for index, part in enumerate(partition.parts):
        labels[list(part)] = index
    between = np.where(labels[:, None] != labels[None, :], g.matrix, 0)
    return np.stack([(between == c).sum(axis=1) for c in range(1, g.num_colors + 1)], axis=1)


def check_star_stability(g: ColoredComplete, n: int, r: int, min_n: int = MIN_N) -> StabilityReport:
    """
    Inspect a Gallai partition of g against the stability statement for (n, r)

    Precondition violations (n, r out of range, wrong order) become warnings.
    The hypothesis is the right order plus no vertex with n between-part edges
    in one colour; the conclusion is only evaluated when it holds.

    Raises:
        GallaiInputError: g has a rainbow triangle, so no partition exists
    """
    partition = find_gallai_partition(g) if g.order >= 2 else None
    if partition is None:
        raise GallaiInputError("no Gallai partition: the colouring contains a rainbow triangle or is too small")

    warnings = _precondition_warnings(g, n, r, min_n)
    degrees = between_part_degrees(g, partition)
    max_degree = int(degrees.max())
    order_ok = 2 * g.order == 5 * n - r
    holds_hypothesis = order_ok and max_degree < n

    palette = sorted(partition.palette)
    if len(palette) == 2:
        min_degree = int(degrees[:, [c - 1 for c in palette]].min())
    else:
        min_degree = 0
    sizes = partition.part_sizes()

    report = StabilityReport(
        n=n,
        r=r,
        order=g.order,
        holds_hypothesis=holds_hypothesis,
        num_parts=partition.num_parts,
        part_sizes=sizes,
        min_part_size=min(sizes),
        palette=palette,
        min_between_degree_per_color=min_degree,
        max_between_degree=max_degree,
        conclusion_holds=None,
        warnings=warnings,
    )
    if holds_hypothesis:
        report.conclusion_holds = (
            partition.num_parts == 5
            and report.min_part_size >= report.required_part_size
            and len(palette) == 2
            and min_degree >= report.required_degree
        )
        if not report.conclusion_holds:
            logger.warning("stability counterexample at n=%d r=%d: parts %s, min degree %d",
                           n, r, sizes, min_degree)
    return report


def near_balanced_sizes(total: int) -> Iterator[Tuple[int, ...]]:
    """Every placement of the larger parts among five parts summing to total"""
    q, extra = divmod(total, 5)
    for bigger in itertools.combinations(range(5), extra):
        yield tuple(q + 1 if i in bigger else q for i in range(5))


def stability_sweep(n_values: Iterable[int], r_values: Optional[Iterable[int]] = None,
                    min_n: int = MIN_N) -> List[StabilityReport]:
    """
    Run the checker over pentagon blow-ups of order (5n-r)/2 with near-balanced parts

    r defaults to 4..floor((n+4)/4); pairs with 5n - r odd have no such order and are skipped.
    """
    reports = []
    r_fixed = list(r_values) if r_values is not None else None
    for n in n_values:
        rs = r_fixed if r_fixed is not None else range(MIN_R, (n + 4) // 4 + 1)
        for r in rs:
            if (5 * n - r) % 2:
                continue
            for sizes in near_balanced_sizes((5 * n - r) // 2):
                reports.append(check_star_stability(pentagon_blowup(sizes, 1, (2, 3)), n, r, min_n))
    logger.info("stability sweep produced %d reports, %d with the hypothesis holding",
                len(reports), sum(rep.holds_hypothesis for rep in reports))
    return reports
