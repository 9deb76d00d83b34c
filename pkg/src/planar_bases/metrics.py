"""Efficiency, counting bound and the small-height efficiency ceilings."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .grid import Rect

# One-dimensional efficiency limits s_x / k^2 for all large s_x, taken as given:
# ALPHA for admissible bases, BETA for restricted ones.
ALPHA = Fraction("0.45851")
BETA = Fraction("0.41983")

# (height s_y, restricted) -> printed 4-decimal ceiling
PRINTED_CONSTANTS = {
    (1, False): "0.4311",
    (2, False): "0.4190",
    (2, True): "0.3149",
    (4, True): "0.3585",
}


@dataclass(frozen=True)
class EfficiencyReport:
    N: int
    k: int
    c: Fraction
    rho: Fraction
    delta_k: int

    def row(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "c": f"{float(self.c):.6f}",
            "rho": f"{float(self.rho):.6f}",
            "delta_k": self.delta_k,
        }


def efficiency(k: int, rect: Rect) -> EfficiencyReport:
    from .constructions import trivial_size

    if k < 1:
        raise ValueError("k must be >= 1")
    N = rect.area
    return EfficiencyReport(
        N=N,
        k=k,
        c=Fraction(N, k * k),
        rho=Fraction(rect.height, rect.width),
        delta_k=k - trivial_size(rect),
    )


def counting_lower_bound(rect: Rect) -> int:
    """Least k with k(k+1)/2 >= N: k points give at most that many distinct sums."""
    N = rect.area
    k = (math.isqrt(8 * N + 1) - 1) // 2
    while k * (k + 1) // 2 < N:
        k += 1
    return k


def upper_bound_constant(s_y: int, restricted: bool) -> Fraction:
    """Asymptotic efficiency ceiling for targets of height s_y.

    Each case balances row-wise constraints and multiplies the resulting
    s_x / k^2 limit by the number of rows:

    * height 1: s_x <= a k0^2 and s_x <= k0 k1 meet at k1 = a k0, so
      s_x/k^2 <= a/(1+a)^2 and c <= 2a/(1+a)^2.
    * height 2: adding s_x <= k0 k2 + k1^2/2 gives s_x/k^2 <= a/(1+2a-a^2/2)^2,
      c <= 3a/(1+2a-a^2/2)^2.
    * restricted height 2: both edge rows are restricted 1-D bases of size
      k0 = k/2, so s_x <= b k0^2 = b k^2/4 and c <= 3b/4.
    * restricted height 4: rows k0 = k2, k1 = b k0, k = (2+b) k0, so
      c <= 5b/(2+b)^2.

    Here a = ALPHA and b = BETA.
    """
    a, b = ALPHA, BETA
    if (s_y, restricted) == (1, False):
        return 2 * a / (1 + a) ** 2
    if (s_y, restricted) == (2, False):
        return 3 * a / (1 + 2 * a - a * a / 2) ** 2
    if (s_y, restricted) == (2, True):
        return 3 * b / 4
    if (s_y, restricted) == (4, True):
        return 5 * b / (2 + b) ** 2
    raise ValueError(f"no bound for height {s_y} (restricted={restricted})")


def l_shaped_limit(rect: Rect) -> Fraction:
    """rho / (1 + rho)^2, the large-size efficiency of the L-shaped basis."""
    rho = Fraction(rect.height, rect.width)
    return rho / (1 + rho) ** 2


def empirical_bound_check(height: int, restricted: bool, s_x_max: int,
                          s_x_min: int = 0, cache=None, threads: int = 1) -> list[dict]:
    """Minimal-size efficiency against the asymptotic ceiling for each width.

    Small widths may exceed the ceiling; such rows are flagged, not raised.
    """
    from .mim import min_k_restricted
    from .search import min_k

    if height not in (1, 2, 4):
        raise ValueError("height must be 1, 2 or 4")
    bound = upper_bound_constant(height, restricted)
    rows = []
    for s_x in range(s_x_min, s_x_max + 1):
        if restricted and s_x % 2:
            continue
        rect = Rect(s_x, height)
        if restricted:
            k, _ = min_k_restricted(rect, cache=cache, threads=threads)
        else:
            k, _ = min_k(rect, cache=cache, count_only=True, threads=threads)
        eff = efficiency(k, rect)
        rows.append({
            "s_x": s_x,
            "s_y": height,
            "k": k,
            "c": eff.c,
            "bound": bound,
            "exceeds": eff.c >= bound,
            "counting_ok": eff.c <= Fraction(k + 1, 2 * k),
        })
    return rows
