"""Closed-form lower/upper/exact/conjectured link-count bounds.

All quantities are exact: integers, Fractions, or r + s*sqrt(n) values
kept symbolic (PlusSqrt).  Floating point appears nowhere; the narrow
margins involved (for example 1093 against 1093.5 at n=3, k=7) rule
doubles out.  Display formatting is the CLI's problem.

Known exact values carry a provenance label so reports never pass a bound
off as a proven value:

  * power_of_three_family  -- h(3, k) = (3^k - 1) / 2 for every k >= 1
  * planar_closed_form     -- h(n, 2) = 2n - 2 for every n >= 3
  * trivial_small          -- one-point grids (0 links) and 1-D grids (1 link)

A short table of reported constructions supplies additional upper bounds
(for example 23 for the 4x4x4 grid) that beat the generic 3-D formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .lattice import Grid

# -- exact r + s*sqrt(n) values ----------------------------------------


@dataclass(frozen=True)
class PlusSqrt:
    """Exact value r + s*sqrt(radicand) with rational r, s and s >= 0.

    Perfect-square radicands collapse to the rational part on
    construction.  Comparisons against rationals square out the radical
    with explicit sign bookkeeping; no approximation is involved.
    """

    r: Fraction
    s: Fraction
    radicand: int

    def __init__(self, r, s, radicand: int):
        r, s = Fraction(r), Fraction(s)
        if radicand < 0:
            raise ValueError("radicand must be non-negative")
        if s < 0:
            raise ValueError("PlusSqrt keeps s >= 0")
        root = math.isqrt(radicand)
        if root * root == radicand:
            r, s = r + s * root, Fraction(0)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "radicand", radicand)

    @property
    def is_rational(self) -> bool:
        return self.s == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.r

    def cmp_rational(self, other) -> int:
        """Sign of (self - other) for rational other, decided exactly."""
        a = self.r - Fraction(other)  # self - other = a + s*sqrt(radicand)
        if self.s == 0:
            return (a > 0) - (a < 0)
        if a >= 0:
            return 1
        # a < 0 < s: compare a^2 with s^2 * radicand
        d = a * a - self.s * self.s * self.radicand
        if d == 0:
            return 0  # radicand turned out to be a perfect square of a rational
        return -1 if d > 0 else 1

    def __lt__(self, other):
        return self.cmp_rational(other) < 0

    def __le__(self, other):
        return self.cmp_rational(other) <= 0

    def __gt__(self, other):
        return self.cmp_rational(other) > 0

    def __ge__(self, other):
        return self.cmp_rational(other) >= 0

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.r)
        return f"{self.r} + {self.s}*sqrt({self.radicand})"


# -- bound formulas ------------------------------------------------------


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def trivial_lower_bound(n: int, k: int) -> int:
    """Baseline lower bound (n^k - 1)/(n - 1) for the n^k hypercubic grid.

    Evaluates both the folded form and its long unsimplified counterpart
    and insists they agree exactly.
    """
    _check(n >= 3, f"trivial lower bound needs n >= 3, got n={n}")
    _check(k >= 3, f"trivial lower bound needs k >= 3, got k={k}")
    long_form = math.ceil(
        Fraction(
            n**k - (k - 2) * n**2 + (k - 2) * n - n + n * ((k - 2) * n - k + 2),
            n - 1,
        )
    ) + 1
    simple = (n**k - 1) // (n - 1)
    assert (n**k - 1) % (n - 1) == 0
    assert long_form == simple, (long_form, simple)
    return simple


def general_lower_bound(dims: Sequence[int] | Grid) -> int:
    """Lower bound for rectangular grids from the three-link coverage cap.

    A chain of three consecutive links meets at most
    2*n_k + n_{k-1} - 3 points (one extra on the very first link), and
    each of the k-2 short axes forces at least one additional link.  For
    k = 2 the short-axis sum is empty.
    """
    grid = dims if isinstance(dims, Grid) else Grid(dims)
    d = grid.dims
    k = grid.k
    _check(k >= 2, f"general lower bound needs k >= 2, got k={k}")
    _check(d[0] >= 3, f"general lower bound needs the smallest axis >= 3, got {d[0]}")
    numerator = 3 * (math.prod(d) - sum(d[: k - 2]) + k - 3)
    denominator = 2 * d[-1] + d[-2] - 3
    return math.ceil(Fraction(numerator, denominator)) + k - 2


def upper_bound_3d(n: int) -> int:
    """Best known constructive upper bound for the n x n x n grid."""
    _check(n >= 3, f"3-D upper bound needs n >= 3, got n={n}")
    return (
        (3 * n * n) // 2
        - (n - 1) // 4
        + (n + 1) // 4
        - (n + 2) // 4
        + n // 4
        + n
        - 2
    )


def upper_bound_any_dim(n: int, k: int) -> int:
    """Upper bound for n^k grids lifted from the 3-D construction.

    The bracketed coefficient is the 3-D bound with its trailing n - 2
    replaced by n - 1, multiplied by n^(k-3), minus one.
    """
    _check(n >= 3, f"k-D upper bound needs n >= 3, got n={n}")
    _check(k >= 3, f"k-D upper bound needs k >= 3, got k={k}")
    return (upper_bound_3d(n) + 1) * n ** (k - 3) - 1


def kranakis_bound(n: int, k: int, c) -> Fraction:
    """Kranakis-style conjectured bound k/(k-1) * n^(k-1) + c * n^(k-2)."""
    c = Fraction(c)
    _check(k >= 2, f"Kranakis bound needs k >= 2, got k={k}")
    _check(n >= 1, f"Kranakis bound needs n >= 1, got n={n}")
    _check(c >= 0, f"Kranakis bound needs c >= 0, got c={c}")
    return Fraction(k, k - 1) * n ** (k - 1) + c * Fraction(n) ** (k - 2)


def bereg_bound(n: int, k: int) -> PlusSqrt:
    """Bereg's proved bound k/(k-1) * n^(k-1) + n^(k-3/2), kept symbolic.

    n^(k-3/2) = n^(k-2) * sqrt(n); for square n the radical collapses to
    a rational.
    """
    _check(k >= 2, f"Bereg bound needs k >= 2, got k={k}")
    _check(n >= 1, f"Bereg bound needs n >= 1, got n={n}")
    return PlusSqrt(Fraction(k, k - 1) * n ** (k - 1), Fraction(n) ** (k - 2), n)


PROV_POWER_OF_THREE = "power_of_three_family"
PROV_PLANAR = "planar_closed_form"
PROV_TRIVIAL = "trivial_small"


def known_exact_value(n: int, k: int) -> Optional[tuple]:
    """(value, provenance) when the minimum link count is known exactly."""
    if n < 1 or k < 1:
        return None
    if n == 1:
        return (0, PROV_TRIVIAL)
    if n == 3:
        return ((3**k - 1) // 2, PROV_POWER_OF_THREE)
    if k == 1:
        return (1, PROV_TRIVIAL)
    if k == 2 and n >= 3:
        return (2 * n - 2, PROV_PLANAR)
    return None


# Reported constructions that beat (or exist outside) the generic
# formulas, keyed by (n, k).  The 2x2x2 entry is the six-link apex cycle
# checked exactly by the verifier; the 2x2 entry is settled by the
# solver's exhaustive search.
KNOWN_UPPER_BOUNDS = {
    (4, 3): (23, "reported_construction"),
    (5, 3): (36, "reported_construction"),
    (2, 3): (6, "apex_cycle"),
    (2, 2): (3, "exhaustive_search"),
}


def _sign_plus_sqrt(r: Fraction, s: Fraction, radicand: int) -> int:
    """Exact sign of r + s*sqrt(radicand) for rational r, s of any sign."""
    sr = (r > 0) - (r < 0)
    ss = (s > 0) - (s < 0)
    if ss == 0 or radicand == 0:
        return sr
    root = math.isqrt(radicand)
    if root * root == radicand:
        v = r + s * root
        return (v > 0) - (v < 0)
    if sr == 0 or sr == ss:
        return ss
    d = r * r - s * s * radicand
    if d == 0:
        raise ArithmeticError("non-square radicand cannot square to a rational")
    return sr if d > 0 else ss


def _cmp_bound_values(a, b) -> int:
    """Exact sign of a - b where each is an int, Fraction, or PlusSqrt."""
    ra, sa, na = (a.r, a.s, a.radicand) if isinstance(a, PlusSqrt) else (Fraction(a), Fraction(0), 1)
    rb, sb, nb = (b.r, b.s, b.radicand) if isinstance(b, PlusSqrt) else (Fraction(b), Fraction(0), 1)
    if sa and sb and na != nb:
        raise ValueError("cannot compare bounds over different radicands exactly")
    radicand = na if sa else nb
    return _sign_plus_sqrt(ra - rb, sa - sb, radicand)


def best_upper_bound(n: int, k: int) -> Optional[tuple]:
    """Smallest established upper bound with its source label.

    Considers the exact value when known, the 3-D/k-D constructions, the
    reported-construction table, and Bereg's bound.  Returns
    (value, label) where value is an int or a PlusSqrt.
    """
    candidates: list = []
    exact = known_exact_value(n, k)
    if exact is not None:
        candidates.append((exact[0], f"exact:{exact[1]}"))
    if (n, k) in KNOWN_UPPER_BOUNDS:
        candidates.append(KNOWN_UPPER_BOUNDS[(n, k)])
    if n >= 3 and k == 3:
        candidates.append((upper_bound_3d(n), "upper_3d"))
    if n >= 3 and k >= 3:
        candidates.append((upper_bound_any_dim(n, k), "upper_k"))
    if n >= 2 and k >= 2:
        candidates.append((bereg_bound(n, k), "bereg"))
    if not candidates:
        return None
    best = candidates[0]
    for entry in candidates[1:]:
        if _cmp_bound_values(entry[0], best[0]) < 0:
            best = entry
    return best


def best_lower_bound(n: int, k: int) -> Optional[tuple]:
    """Largest established lower bound with its source label."""
    candidates = []
    exact = known_exact_value(n, k)
    if exact is not None:
        candidates.append((exact[0], f"exact:{exact[1]}"))
    if n >= 3 and k >= 3:
        candidates.append((trivial_lower_bound(n, k), "lower_trivial"))
    if n >= 3 and k >= 2:
        candidates.append((general_lower_bound(Grid((n,) * k)), "lower_general"))
    if not candidates:
        return None
    return max(candidates, key=lambda entry: entry[0])


def sandwich_check(k: int) -> tuple:
    """(kranakis(3,k,1) < h(3,k), h(3,k) <= bereg(3,k), both), exactly."""
    _check(k >= 2, f"sandwich check needs k >= 2, got k={k}")
    exact = Fraction(3**k - 1, 2)
    left = kranakis_bound(3, k, 1) < exact
    right = bereg_bound(3, k).cmp_rational(exact) >= 0
    return (left, right, left and right)


def efficiency_loss_bound(n: int) -> Fraction:
    """Per-link efficiency-loss cap (n^2 - n - 2) / (3n + 2).

    Note: a figure of 8/31 sometimes circulates for n = 3; direct
    evaluation of the formula gives 4/11, and that is what is returned.
    The n = 3 family actually achieves zero loss (its per-link rate tends
    to n - 1 = 2 exactly), so the cap is not tight there.
    """
    _check(n >= 2, f"efficiency loss bound needs n >= 2, got n={n}")
    return Fraction(n * n - n - 2, 3 * n + 2)


def power3_margin_holds(k: int) -> bool:
    """Exact check that (3^k - 1)/2 < 3^(k-1) + (3/2) * 3^(k-2).

    Valid for every k >= 1; at k = 1 the right side is evaluated as the
    exact rational 1 + (3/2) * (1/3) = 3/2.
    """
    _check(k >= 1, f"margin check needs k >= 1, got k={k}")
    lhs = Fraction(3**k - 1, 2)
    rhs = Fraction(3) ** (k - 1) + Fraction(3, 2) * Fraction(3) ** (k - 2)
    return lhs < rhs


def constant_threshold_scan(c, k_max: int) -> Optional[int]:
    """Smallest k <= k_max with h(3,k) > kranakis_bound(3,k,c), else None."""
    c = Fraction(c)
    for k in range(2, k_max + 1):
        if Fraction(3**k - 1, 2) > kranakis_bound(3, k, c):
            return k
    return None


# -- ratio / conjecture machinery ----------------------------------------

BASIS_EXACT = "exact"
BASIS_UPPER = "upper_bound"
BASIS_LOWER = "lower_bound"


def h_estimate(
    n: int,
    k: int,
    basis: str = BASIS_EXACT,
    overrides: Optional[dict] = None,
) -> Optional[tuple]:
    """Pick an exact-or-bound stand-in for the minimum link count.

    Returns (value, basis_label, source) or None when nothing usable is
    known.  Exact values are preferred under every basis; overrides map
    (n, k) -> (value, source) and are treated per the requested basis.
    """
    if overrides and (n, k) in overrides:
        value, source = overrides[(n, k)]
        return (Fraction(value), basis if basis != BASIS_EXACT else BASIS_UPPER, source)
    exact = known_exact_value(n, k)
    if exact is not None:
        return (Fraction(exact[0]), BASIS_EXACT, exact[1])
    if basis == BASIS_EXACT:
        return None
    if basis == BASIS_UPPER:
        best = best_upper_bound(n, k)
        if best is None or isinstance(best[0], PlusSqrt):
            return None
        return (Fraction(best[0]), BASIS_UPPER, best[1])
    if basis == BASIS_LOWER:
        best = best_lower_bound(n, k)
        if best is None:
            return None
        return (Fraction(best[0]), BASIS_LOWER, best[1])
    raise ValueError(f"unknown basis {basis!r}")


@dataclass(frozen=True)
class RatioReport:
    """Coverage-rate ratio n^k / ((n-1) * h~) for one grid."""

    n: int
    k: int
    h_value: Fraction
    basis: str
    source: str
    ratio: Fraction
    loss_bound: Fraction

    @property
    def nodes_per_link(self) -> Fraction:
        return self.ratio * (self.n - 1)

    @property
    def avg_new_below_n_minus_1(self) -> bool:
        """Whether h~ > n^k / (n-1), i.e. links average < n-1 new nodes."""
        return self.h_value > Fraction(self.n**k, self.n - 1)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "h": _frac_str(self.h_value),
            "basis": self.basis,
            "source": self.source,
            "ratio": _frac_str(self.ratio),
            "nodes_per_link": _frac_str(self.nodes_per_link),
            "avg_new_below_n_minus_1": self.avg_new_below_n_minus_1,
            "loss_bound": _frac_str(self.loss_bound),
        }


def ratio_report(
    n: int,
    k: int,
    basis: str = BASIS_EXACT,
    overrides: Optional[dict] = None,
) -> Optional[RatioReport]:
    _check(n >= 2, f"ratio needs n >= 2, got n={n}")
    _check(k >= 1, f"ratio needs k >= 1, got k={k}")
    picked = h_estimate(n, k, basis, overrides)
    if picked is None:
        return None
    h_value, basis_used, source = picked
    if h_value <= 0:
        return None
    return RatioReport(
        n=n,
        k=k,
        h_value=h_value,
        basis=basis_used,
        source=source,
        ratio=Fraction(n**k) / ((n - 1) * h_value),
        loss_bound=efficiency_loss_bound(n),
    )


def planar_ratio_identity(n: int) -> bool:
    """Exact identity n^2/((n-1)(2n-2)) == 1/(2(n-1)^2) + 1/(n-1) + 1/2."""
    _check(n >= 3, f"planar identity needs n >= 3, got n={n}")
    lhs = Fraction(n * n, (n - 1) * (2 * n - 2))
    rhs = Fraction(1, 2 * (n - 1) ** 2) + Fraction(1, n - 1) + Fraction(1, 2)
    return lhs == rhs


@dataclass(frozen=True)
class ChainComparison:
    """Adjacent-n comparison of coverage-rate ratios."""

    left: Optional[RatioReport]
    right: Optional[RatioReport]
    verdict: Optional[bool]
    identity_holds: Optional[bool]

    @property
    def available(self) -> bool:
        return self.verdict is not None

    def to_json_dict(self) -> dict:
        return {
            "left": self.left.to_json_dict() if self.left else None,
            "right": self.right.to_json_dict() if self.right else None,
            "verdict": self.verdict,
            "identity_holds": self.identity_holds,
        }


def ratio_chain(
    n: int,
    k: int,
    basis: str = BASIS_EXACT,
    overrides: Optional[dict] = None,
) -> ChainComparison:
    """Compare the rate at n against the rate at n+1, exactly.

    When a stand-in value is unavailable the result says so explicitly;
    no silent substitution happens.  For k = 2 (and n >= 3) the planar
    ratio identity is asserted as a sanity check of the closed form.
    """
    left = ratio_report(n, k, basis, overrides)
    right = ratio_report(n + 1, k, basis, overrides)
    verdict = None
    if left is not None and right is not None:
        verdict = left.ratio > right.ratio
    identity = None
    if k == 2 and n >= 3:
        identity = planar_ratio_identity(n)
        assert identity, f"planar ratio identity failed at n={n}"
    return ChainComparison(left=left, right=right, verdict=verdict, identity_holds=identity)


# -- report assembly ------------------------------------------------------


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass
class BoundsReport:
    """Every applicable bound for one grid, with provenance labels."""

    grid: Grid
    lower_trivial: Optional[int] = None
    lower_general: Optional[int] = None
    upper_3d: Optional[int] = None
    upper_k: Optional[int] = None
    kranakis: dict = field(default_factory=dict)  # Fraction c -> Fraction
    bereg: Optional[PlusSqrt] = None
    exact_known: Optional[tuple] = None  # (value, provenance)
    cited_upper: Optional[tuple] = None  # (value, source)
    line_cover_lb: Optional[int] = None
    sandwich: Optional[tuple] = None  # (left, right, both) for n == 3

    def lower_values(self) -> list:
        out = []
        if self.lower_trivial is not None:
            out.append(("lower_trivial", self.lower_trivial))
        if self.lower_general is not None:
            out.append(("lower_general", self.lower_general))
        if self.line_cover_lb is not None:
            out.append(("line_cover", self.line_cover_lb))
        return out

    def upper_values(self) -> list:
        out = []
        if self.upper_3d is not None:
            out.append(("upper_3d", self.upper_3d))
        if self.upper_k is not None:
            out.append(("upper_k", self.upper_k))
        if self.cited_upper is not None:
            out.append((f"cited:{self.cited_upper[1]}", self.cited_upper[0]))
        if self.bereg is not None:
            out.append(("bereg", self.bereg))
        return out

    def validate(self) -> None:
        """Assert lower <= upper for every populated pair, exactly."""
        for lo_name, lo in self.lower_values():
            for up_name, up in self.upper_values():
                if isinstance(up, PlusSqrt):
                    ok = up.cmp_rational(lo) >= 0
                else:
                    ok = lo <= up
                assert ok, f"{lo_name}={lo} exceeds {up_name}={up} on {self.grid}"
        if self.exact_known is not None:
            value = self.exact_known[0]
            for lo_name, lo in self.lower_values():
                assert lo <= value, f"exact {value} below {lo_name}={lo}"
            for up_name, up in self.upper_values():
                if isinstance(up, PlusSqrt):
                    assert up.cmp_rational(value) >= 0, f"exact {value} above {up_name}={up}"
                else:
                    assert value <= up, f"exact {value} above {up_name}={up}"

    def to_json_dict(self) -> dict:
        out: dict = {"dims": list(self.grid.dims)}
        if self.grid.is_hypercubic:
            out["n"] = self.grid.n
        out["k"] = self.grid.k
        out["lower_trivial"] = self.lower_trivial
        out["lower_general"] = self.lower_general
        out["upper_3d"] = self.upper_3d
        out["upper_k"] = self.upper_k
        out["kranakis"] = {_frac_str(c): _frac_str(v) for c, v in self.kranakis.items()}
        if self.bereg is None:
            out["bereg"] = None
        else:
            out["bereg"] = {
                "r": _frac_str(self.bereg.r),
                "s": _frac_str(self.bereg.s),
                "radicand": self.bereg.radicand,
                "text": str(self.bereg),
            }
        if self.exact_known is None:
            out["exact_known"] = None
        else:
            out["exact_known"] = {"value": self.exact_known[0], "provenance": self.exact_known[1]}
        if self.cited_upper is None:
            out["cited_upper"] = None
        else:
            out["cited_upper"] = {"value": self.cited_upper[0], "source": self.cited_upper[1]}
        out["line_cover_lb"] = self.line_cover_lb
        if self.sandwich is not None:
            out["sandwich"] = {
                "kranakis_c1_below_exact": self.sandwich[0],
                "exact_at_most_bereg": self.sandwich[1],
                "both": self.sandwich[2],
            }
        return out


def bounds_report(
    grid: Grid | Sequence[int],
    c_values: Sequence = (1, Fraction(3, 2)),
    line_cover_lb: Optional[int] = None,
) -> BoundsReport:
    """Assemble every applicable bound for a grid; not-applicable stays None."""
    grid = grid if isinstance(grid, Grid) else Grid(grid)
    report = BoundsReport(grid=grid, line_cover_lb=line_cover_lb)
    dims = grid.dims
    k = grid.k
    if dims[0] >= 3 and k >= 2:
        report.lower_general = general_lower_bound(grid)
    if grid.is_hypercubic:
        n = grid.n
        if n >= 3 and k >= 3:
            report.lower_trivial = trivial_lower_bound(n, k)
            report.upper_k = upper_bound_any_dim(n, k)
        if n >= 3 and k == 3:
            report.upper_3d = upper_bound_3d(n)
        if k >= 2 and n >= 1:
            report.kranakis = {Fraction(c): kranakis_bound(n, k, c) for c in c_values}
            report.bereg = bereg_bound(n, k)
        report.exact_known = known_exact_value(n, k)
        if (n, k) in KNOWN_UPPER_BOUNDS:
            report.cited_upper = KNOWN_UPPER_BOUNDS[(n, k)]
        if n == 3 and k >= 2:
            report.sandwich = sandwich_check(k)
    report.validate()
    return report
