"""
formulas.py - Closed-form Gallai-Ramsey and Ramsey values for star unions, with guard reporting
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from core.errors import GallaiInputError

logger = logging.getLogger(__name__)

EXACT = "exact"
BOUNDS = "bounds"


@dataclass(frozen=True)
class FormulaResult:
    """
    Uniform result of a formula evaluation

    Guards are advisory: a violated guard is listed in `guard_violations` but the
    value is still computed. A bound with no known value is None.
    """
    name: str
    kind: str
    lower: Optional[int]
    upper: Optional[int]
    params: Dict[str, int] = field(default_factory=dict)
    guard_violations: Tuple[str, ...] = ()
    notices: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in (EXACT, BOUNDS):
            raise GallaiInputError(f"unknown formula kind {self.kind!r}")
        if self.kind == EXACT and (self.lower is None or self.lower != self.upper):
            raise GallaiInputError("an exact result needs lower == upper")
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise GallaiInputError(f"{self.name}: lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.kind == EXACT else None

    @property
    def guards_satisfied(self) -> bool:
        return not self.guard_violations

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "params": dict(self.params),
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "guards_satisfied": self.guards_satisfied,
            "guard_violations": list(self.guard_violations),
            "notices": list(self.notices),
        }


def _violations(checks: List[Tuple[str, bool]]) -> Tuple[str, ...]:
    return tuple(name for name, ok in checks if not ok)


def _exact(name: str, value: int, params: Dict[str, int], checks: List[Tuple[str, bool]],
           notices: Tuple[str, ...] = ()) -> FormulaResult:
    violations = _violations(checks)
    if violations:
        logger.debug("%s%s guards violated: %s", name, params, ", ".join(violations))
    return FormulaResult(name, EXACT, value, value, params, violations, notices)


def ramsey_union_stars(n: int, m: int) -> FormulaResult:
    """Two-colour Ramsey number of K(1,n) ∪ K(1,m): max(n + 2m, 2n + 1, n + m + 3)"""
    notices: Tuple[str, ...] = ()
    if m > n:
        n, m = m, n
        notices = (f"star sizes swapped to n={n}, m={m}",)
    if m < 1:
        raise GallaiInputError(f"star sizes must be at least 1, got m={m}")
    value = max(n + 2 * m, 2 * n + 1, n + m + 3)
    return _exact("ramsey-union-stars", value, {"n": n, "m": m}, [("n >= m >= 1", n >= m >= 1)], notices)


def gr_single_star(k: int, m: int) -> FormulaResult:
    """gr_k(K_3 : K(1,m)); independent of k once k ≥ 2"""
    value = (5 * m - 6) // 2 if m % 2 == 0 else (5 * m - 3) // 2
    return _exact("gr-single-star", value, {"k": k, "m": m}, [("m >= 2", m >= 2), ("k >= 2", k >= 2)])


def _pentagon_value(k: int, n: int) -> int:
    """(5n-6)/2 + k - 3 for even n, (5n-3)/2 + k - 3 for odd n"""
    base = (5 * n - 6) // 2 if n % 2 == 0 else (5 * n - 3) // 2
    return base + k - 3


def gr_small_m(k: int, n: int, m: int) -> FormulaResult:
    """gr_k(K_3 : K(1,n) ∪ K(1,m)) when m is small against n"""
    checks = [
        ("n >= 22", n >= 22),
        ("m >= 5", m >= 5),
        ("m <= (n-8)/6", 6 * m <= n - 8),
        ("k >= 3", k >= 3),
    ]
    return _exact("gr-small-m", _pentagon_value(k, n), {"k": k, "n": n, "m": m}, checks)


def gr_equal(k: int, n: int) -> FormulaResult:
    """gr_k(K_3 : K(1,n) ∪ K(1,n)) = 3n + k - 1"""
    return _exact("gr-equal", 3 * n + k - 1, {"k": k, "n": n}, [("k >= 3", k >= 3), ("n >= 1", n >= 1)])


def gr_general_bounds(k: int, n: int, m: int) -> FormulaResult:
    """Lower and upper bounds for the general case between small m and m = n"""
    if n % 2 == 0:
        lower = max(2 * n + m + k - 5, (5 * n - 6) // 2 + k - 3)
        upper = 3 * n + 3 * m + k - 3
    else:
        lower = max(2 * n + m + k - 4, (5 * n - 3) // 2 + k - 3)
        upper = 3 * n + 3 * m + k - 2
    checks = [
        ("n >= 9", n >= 9),
        ("n > m", n > m),
        ("m >= 2", m >= 2),
        ("m >= (n-2)/6", 6 * m >= n - 2),
        ("k >= 3", k >= 3),
    ]
    violations = _violations(checks)
    return FormulaResult("gr-general-bounds", BOUNDS, lower, upper, {"k": k, "n": n, "m": m}, violations)


def gr_small_m_lower(k: int, n: int, m: int) -> FormulaResult:
    """The pentagon lower bound on its own, valid for every m ≥ 5"""
    checks = [("n >= 22", n >= 22), ("m >= 5", m >= 5), ("k >= 3", k >= 3)]
    return FormulaResult("gr-small-m-lower", BOUNDS, _pentagon_value(k, n), None,
                         {"k": k, "n": n, "m": m}, _violations(checks))


def gr_general_lower(k: int, n: int, m: int) -> FormulaResult:
    """2n + m + k - 5 for even n, 2n + m + k - 4 for odd n"""
    lower = 2 * n + m + k - (5 if n % 2 == 0 else 4)
    checks = [("k >= 2", k >= 2), ("m <= n", m <= n)]
    return FormulaResult("gr-general-lower", BOUNDS, lower, None, {"k": k, "n": n, "m": m}, _violations(checks))


def gr_general_upper(k: int, n: int, m: int) -> FormulaResult:
    upper = 3 * n + 3 * m + k - (3 if n % 2 == 0 else 2)
    checks = [("k >= 2", k >= 2), ("m <= n", m <= n)]
    return FormulaResult("gr-general-upper", BOUNDS, None, upper, {"k": k, "n": n, "m": m}, _violations(checks))


FORMULAS: Dict[str, Callable[..., FormulaResult]] = {
    "ramsey-union-stars": ramsey_union_stars,
    "gr-single-star": gr_single_star,
    "gr-small-m": gr_small_m,
    "gr-equal": gr_equal,
    "gr-general-bounds": gr_general_bounds,
    "gr-small-m-lower": gr_small_m_lower,
    "gr-general-lower": gr_general_lower,
    "gr-general-upper": gr_general_upper,
}

# parameter names each formula takes, in call order
FORMULA_PARAMS: Dict[str, Tuple[str, ...]] = {
    "ramsey-union-stars": ("n", "m"),
    "gr-single-star": ("k", "m"),
    "gr-small-m": ("k", "n", "m"),
    "gr-equal": ("k", "n"),
    "gr-general-bounds": ("k", "n", "m"),
    "gr-small-m-lower": ("k", "n", "m"),
    "gr-general-lower": ("k", "n", "m"),
    "gr-general-upper": ("k", "n", "m"),
}


def evaluate(name: str, **params: int) -> FormulaResult:
    """Look a formula up by its CLI name and call it with the parameters it needs"""
    if name not in FORMULAS:
        raise GallaiInputError(f"unknown formula {name!r}; choose from {', '.join(FORMULAS)}")
    missing = [p for p in FORMULA_PARAMS[name] if params.get(p) is None]
    if missing:
        raise GallaiInputError(f"formula {name} needs --{' --'.join(missing)}")
    return FORMULAS[name](*(params[p] for p in FORMULA_PARAMS[name]))
