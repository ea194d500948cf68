"""
constructions.py - Lower-bound witness colourings: pentagon blow-ups, apex extension and self-verification
"""
import dataclasses
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.coloring import ColoredComplete, StarUnionEmbedding, StarUnionPattern, has_mono_star
from core.detectors import find_mono_star_union, find_rainbow_triangle
from core.errors import GallaiInputError, UnsupportedParameterError
from verifier import formulas

logger = logging.getLogger(__name__)

SMALL_M = "small-m"
EQUAL = "equal"
GENERAL = "general"
PENTAGON = "pentagon"
SINGLE_STAR = "single-star"
FROM_FILE = "file"


class VerificationStatus(str, Enum):
    UNCHECKED = "unchecked"
    PASS = "pass"
    FAIL = "fail"


@dataclass(frozen=True)
class Provenance:
    """Which construction produced a witness, and with which parameters"""
    construction: str
    n: int
    m: int
    k: int
    part_sizes: Tuple[int, ...] = ()
    arrangement: Optional[Tuple[int, ...]] = None
    apex_colors: Tuple[int, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "construction": self.construction,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "part_sizes": list(self.part_sizes),
            "arrangement": list(self.arrangement) if self.arrangement is not None else None,
            "apex_colors": list(self.apex_colors),
        }


@dataclass(frozen=True)
class Witness:
    """
    A colouring offered as proof that some Ramsey-type number exceeds its order.

    `pattern` is the star union to avoid; single-star witnesses set `star_size`
    instead. `claimed_bound` is the number the witness certifies, order + 1.
    """
    coloring: ColoredComplete
    provenance: Provenance
    claimed_bound: int
    pattern: Optional[StarUnionPattern] = None
    star_size: Optional[int] = None
    verified: VerificationStatus = VerificationStatus.UNCHECKED
    rainbow_certificate: Optional[Tuple[int, int, int]] = None
    star_union_certificate: Optional[StarUnionEmbedding] = None
    star_certificate: Optional[Tuple[int, int]] = None
    failures: Tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def from_coloring(cls, g: ColoredComplete, n: int, m: int, claimed_bound: Optional[int] = None) -> "Witness":
        """Wrap an arbitrary colouring (read from a file, found by search) as a star-union witness"""
        pattern = StarUnionPattern(n, m)
        provenance = Provenance(FROM_FILE, pattern.n, pattern.m, g.num_colors)
        bound = claimed_bound if claimed_bound is not None else g.order + 1
        return cls(coloring=g, provenance=provenance, claimed_bound=bound, pattern=pattern)

    @property
    def order(self) -> int:
        return self.coloring.order

    def to_dict(self) -> Dict:
        return {
            "order": self.order,
            "num_colors": self.coloring.num_colors,
            "claimed_bound": self.claimed_bound,
            "provenance": self.provenance.to_dict(),
            "pattern": self.pattern.to_dict() if self.pattern else None,
            "star_size": self.star_size,
            "verified": self.verified.value,
            "rainbow_certificate": list(self.rainbow_certificate) if self.rainbow_certificate else None,
            "star_union_certificate": self.star_union_certificate.to_dict() if self.star_union_certificate else None,
            "star_certificate": list(self.star_certificate) if self.star_certificate else None,
            "failures": list(self.failures),
        }


def _pentagon_matrix(sizes: Sequence[int], inside_color: int, a: int, b: int,
                     arrangement: Optional[Sequence[int]] = None) -> np.ndarray:
    """
    Blow-up colour matrix. Part i holds sizes[i] consecutive vertices and sits at
    pentagon position arrangement[i]; empty parts are allowed here.
    """
    positions = list(arrangement) if arrangement is not None else list(range(5))
    if sorted(positions) != list(range(5)):
        raise GallaiInputError(f"arrangement must be a permutation of 0..4, got {positions}")
    labels = np.repeat(np.array(positions), sizes)
    diff = (labels[:, None] - labels[None, :]) % 5
    matrix = np.where(diff == 0, inside_color, np.where(np.isin(diff, (1, 4)), a, b))
    np.fill_diagonal(matrix, 0)
    return matrix


def pentagon_blowup(sizes: Sequence[int], inside_color: int = 1, colors: Tuple[int, int] = (2, 3),
                    arrangement: Optional[Sequence[int]] = None,
                    num_colors: Optional[int] = None) -> ColoredComplete:
    """
    Substitute cliques into the two-coloured K_5 made of two complementary 5-cycles

    Args:
        sizes: Five part sizes, each at least 1
        inside_color: Colour of every edge inside a part
        colors: (a, b); cycle-adjacent parts are joined in a, diagonal parts in b
        arrangement: Pentagon position of each part, identity by default
        num_colors: Palette size of the result, default the largest colour used

    Returns:
        ColoredComplete on sum(sizes) vertices, parts laid out consecutively
    """
    if len(sizes) != 5 or any(s < 1 for s in sizes):
        raise GallaiInputError(f"a pentagon blow-up needs five part sizes ≥ 1, got {list(sizes)}")
    a, b = colors
    if len({inside_color, a, b}) != 3:
        raise GallaiInputError(f"inside colour and the two between colours must differ, got {inside_color}, {a}, {b}")
    top = max(inside_color, a, b)
    return ColoredComplete(_pentagon_matrix(sizes, inside_color, a, b, arrangement),
                           num_colors if num_colors is not None else top)


def extend_with_apex(g: ColoredComplete, new_colors: Sequence[int]) -> ColoredComplete:
    """Append one vertex per colour, each joined to every earlier vertex in its own colour"""
    new_colors = list(new_colors)
    if not new_colors:
        return g
    if len(set(new_colors)) != len(new_colors):
        raise GallaiInputError(f"apex colours must be pairwise distinct, got {new_colors}")
    reused = set(new_colors) & g.colors_used()
    if reused:
        raise GallaiInputError(f"apex colours {sorted(reused)} already appear on edges of the colouring")
    if min(new_colors) < 1:
        raise GallaiInputError("apex colours start at 1")

    order = g.order + len(new_colors)
    m = np.zeros((order, order), dtype=np.int64)
    m[:g.order, :g.order] = g.matrix
    for offset, c in enumerate(new_colors):
        v = g.order + offset
        m[v, :v] = c
        m[:v, v] = c
    return ColoredComplete(m, max(g.num_colors, max(new_colors)))


def _check_k(k: int) -> None:
    if k < 3:
        raise GallaiInputError(f"constructions need k ≥ 3 so colours 1, 2 and 3 are available, got k={k}")


def small_m_part_sizes(n: int) -> List[int]:
    if n % 2:
        return [(n - 1) // 2] * 5
    return [n // 2] + [(n - 2) // 2] * 4


def general_part_sizes(n: int, m: int) -> List[int]:
    """Odd n: four K_{(n-1)/2} then K_m; even n: three K_{(n-2)/2}, K_m, K_{n/2}"""
    if n % 2:
        return [(n - 1) // 2] * 4 + [m]
    return [(n - 2) // 2] * 3 + [m, n // 2]


def _pentagon_witness(construction: str, sizes: List[int], n: int, m: int, k: int, claimed_bound: int,
                      arrangement: Optional[Sequence[int]] = None) -> Witness:
    base = ColoredComplete(_pentagon_matrix(sizes, 1, 2, 3, arrangement), 3)
    apex_colors = tuple(range(4, k + 1))
    g = extend_with_apex(base, apex_colors)
    provenance = Provenance(construction, n, m, k, tuple(sizes),
                            tuple(arrangement) if arrangement is not None else None, apex_colors)
    logger.debug("built %s witness of order %d for n=%d m=%d k=%d", construction, g.order, n, m, k)
    return Witness(coloring=g, provenance=provenance, claimed_bound=claimed_bound, pattern=StarUnionPattern(n, m))


def build_small_m_lower(n: int, m: int, k: int, arrangement: Optional[Sequence[int]] = None) -> Witness:
    """Five near-equal colour-1 cliques in a pentagon of colours 2 and 3, plus apexes 4..k"""
    _check_k(k)
    if n < 2 or m < 1 or m > n:
        raise GallaiInputError(f"small-m construction needs n ≥ 2 and 1 ≤ m ≤ n, got n={n}, m={m}")
    bound = formulas.gr_small_m(k, n, m).value
    return verify_witness(_pentagon_witness(SMALL_M, small_m_part_sizes(n), n, m, k, bound, arrangement))


def build_general_lower(n: int, m: int, k: int, arrangement: Optional[Sequence[int]] = None) -> Witness:
    """
    Pentagon blow-up with a K_m part among the near-equal parts, plus apexes 4..k

    Order 2n+m+k-5 for odd n and 2n+m+k-6 for even n. The result is verified,
    not trusted: for odd n ≥ 7 with (n+3)/2 ≤ m ≤ n-2 and even n ≥ 8 with
    n/2+1 ≤ m ≤ n-2 it contains the target star union and comes back failed.
    """
    _check_k(k)
    if m > n:
        raise GallaiInputError(f"general construction needs m ≤ n, got n={n}, m={m}")
    if n < 1 or m < 1:
        raise GallaiInputError(f"star sizes must be at least 1, got n={n}, m={m}")
    bound = formulas.gr_general_lower(k, n, m).lower
    return verify_witness(_pentagon_witness(GENERAL, general_part_sizes(n, m), n, m, k, bound, arrangement))


def build_single_star_lower(m: int, k: int, arrangement: Optional[Sequence[int]] = None) -> Witness:
    """Pentagon base of the small-m construction sized by m; avoids a monochromatic K(1,m)"""
    _check_k(k)
    if m < 2:
        raise GallaiInputError(f"single-star construction needs m ≥ 2, got m={m}")
    sizes = small_m_part_sizes(m)
    g = ColoredComplete(_pentagon_matrix(sizes, 1, 2, 3, arrangement), k)
    provenance = Provenance(SINGLE_STAR, m, m, k, tuple(sizes),
                            tuple(arrangement) if arrangement is not None else None)
    witness = Witness(coloring=g, provenance=provenance, claimed_bound=formulas.gr_single_star(k, m).value,
                      star_size=m)
    return verify_witness(witness)


def _circulant_split(order: int, n: int) -> np.ndarray:
    """K_order coloured 1 on circular distances 1..(n-1)/2 and 2 on the rest"""
    idx = np.arange(order)
    gap = np.abs(idx[:, None] - idx[None, :])
    distance = np.minimum(gap, order - gap)
    matrix = np.where(distance <= (n - 1) // 2, 1, 2)
    np.fill_diagonal(matrix, 0)
    return matrix


def build_equal_lower(n: int, k: int) -> Witness:
    """
    Witness for K(1,n) ∪ K(1,n) on 3n + k - 2 vertices, odd n only

    F_1 is K_{2n-1} split into two (n-1)-regular circulants (colours 1, 2).
    F_2 adds a colour-1 K_n joined to F_1 in colour 3. Apex v joins F_2 in
    colour 1, apex w joins F_2 and v in colour 2, then apexes 4..k.
    """
    _check_k(k)
    if n < 1:
        raise GallaiInputError(f"star size must be at least 1, got n={n}")
    if n % 2 == 0:
        raise UnsupportedParameterError(
            f"no equal-case construction for even n={n}: an (n-1)-regular graph on 2n-1 vertices "
            f"would have odd degree sum"
        )

    f1 = 2 * n - 1
    f2 = f1 + n
    m = np.zeros((f2 + 2, f2 + 2), dtype=np.int64)
    m[:f1, :f1] = _circulant_split(f1, n)
    m[f1:f2, f1:f2] = 1
    m[:f1, f1:f2] = 3
    m[f1:f2, :f1] = 3
    v, w = f2, f2 + 1
    m[v, :v] = m[:v, v] = 1
    m[w, :w] = m[:w, w] = 2
    np.fill_diagonal(m, 0)

    base = ColoredComplete(m, 3)
    apex_colors = tuple(range(4, k + 1))
    g = extend_with_apex(base, apex_colors)
    provenance = Provenance(EQUAL, n, n, k, (f1, n), None, apex_colors)
    witness = Witness(coloring=g, provenance=provenance, claimed_bound=formulas.gr_equal(k, n).value,
                      pattern=StarUnionPattern(n, n))
    return verify_witness(witness)


def verify_witness(w: Witness) -> Witness:
    """Run both detectors and the order check; return a copy carrying the verdict and any certificate"""
    failures = []
    g = w.coloring

    rainbow = find_rainbow_triangle(g)
    if rainbow is not None:
        failures.append(f"rainbow triangle at {rainbow}")

    star_union = None
    star = None
    if w.pattern is not None:
        star_union = find_mono_star_union(g, w.pattern)
        if star_union is not None:
            failures.append(f"monochromatic {w.pattern} in colour {star_union.color}")
    if w.star_size is not None:
        star = has_mono_star(g, w.star_size)
        if star is not None:
            failures.append(f"monochromatic K(1,{w.star_size}) at vertex {star[0]} in colour {star[1]}")

    if g.order != w.claimed_bound - 1:
        failures.append(f"order {g.order} does not match claimed bound {w.claimed_bound} - 1")

    status = VerificationStatus.FAIL if failures else VerificationStatus.PASS
    if failures:
        logger.info("%s witness n=%d m=%d k=%d failed: %s", w.provenance.construction,
                    w.provenance.n, w.provenance.m, w.provenance.k, "; ".join(failures))
    return dataclasses.replace(w, verified=status, rainbow_certificate=rainbow,
                               star_union_certificate=star_union, star_certificate=star, failures=tuple(failures))


def build_witness(construction: str, n: Optional[int] = None, m: Optional[int] = None, k: int = 3,
                  arrangement: Optional[Sequence[int]] = None) -> Witness:
    """Dispatch on the construction name used by the CLI and the certify pipeline"""
    if construction == SMALL_M:
        return build_small_m_lower(_need(n, "n"), _need(m, "m"), k, arrangement)
    if construction == GENERAL:
        return build_general_lower(_need(n, "n"), _need(m, "m"), k, arrangement)
    if construction == EQUAL:
        return build_equal_lower(_need(n, "n"), k)
    if construction == SINGLE_STAR:
        return build_single_star_lower(_need(m if m is not None else n, "m"), k, arrangement)
    raise GallaiInputError(f"unknown construction {construction!r}")


def _need(value: Optional[int], name: str) -> int:
    if value is None:
        raise GallaiInputError(f"--{name} is required for this construction")
    return value


def general_construction_fails(n: int, m: int) -> bool:
    """Whether the general construction at (n, m) is known to contain the target star union"""
    if n % 2:
        return n >= 7 and (n + 3) // 2 <= m <= n - 2
    return n >= 8 and n // 2 + 1 <= m <= n - 2


def construction_grid(n_values: Optional[Sequence[int]] = None,
                      k_values: Sequence[int] = (3, 4, 5, 6)) -> Iterator[Tuple[str, int, int, int]]:
    """
    Parameter points (construction, n, m, k) of the witness grid

    small-m and general run over odd n in 9..51; small-m takes m up to
    max(1, ceil((n-8)/6)), general every m in 1..n. equal runs over odd n in 1..25.
    """
    odd_n = list(n_values) if n_values is not None else list(range(9, 52, 2))
    for n, k in itertools.product(odd_n, k_values):
        for m in range(1, max(1, -(-(n - 8) // 6)) + 1):
            yield SMALL_M, n, m, k
    for n, k in itertools.product(odd_n, k_values):
        for m in range(1, n + 1):
            yield GENERAL, n, m, k
    for n, k in itertools.product(range(1, 26, 2), k_values):
        yield EQUAL, n, n, k


def distinct_arrangements(sizes: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    One arrangement per class of cyclic placements of the part sizes, up to
    rotation and reflection of the pentagon, the identity placement's class first
    """
    seen = set()
    result = []
    for perm in itertools.permutations(range(5)):
        # perm[i] is the position of part i; read the sizes around the cycle
        cycle = [0] * 5
        for part, pos in enumerate(perm):
            cycle[pos] = sizes[part]
        key = min(
            tuple(seq[(start + step) % 5] for step in range(5))
            for seq in (cycle, cycle[::-1])
            for start in range(5)
        )
        if key not in seen:
            seen.add(key)
            result.append(tuple(perm))
    return result
