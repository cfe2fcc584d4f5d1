"""Exact guaranteed fractions for Delta-edge-colorable subgraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .multigraph import Multigraph, contains_ck3, contains_ck3_plus_e, max_degree, max_triangle_density

SHANNON = "Shannon"
MAIN_1 = "thm:main_1"
MAIN_2 = "thm:main_2"
MAIN = "thm:main"

SEVEN_HALVES = Fraction(7, 2)


def shannon_fraction(delta: int) -> Fraction:
    if delta < 1:
        raise ValueError("delta must be at least 1")
    return Fraction(delta, 3 * delta // 2)


def beyond_shannon_fraction(delta: int) -> Fraction:
    if delta < 4:
        raise ValueError("delta must be at least 4")
    return Fraction(delta, 3 * delta // 2 - 1)


def connected_fraction(delta: int) -> Fraction:
    """Guarantee for connected graphs other than the single forbidden graph."""
    if delta < 3:
        raise ValueError("delta must be at least 3")
    if delta % 2 == 0:
        return Fraction(2 * delta, 3 * delta - 2)
    return Fraction(2 * delta + 1, 3 * delta)


def rho(delta: int, k: int, t: int) -> Fraction:
    """Minimum of 7/2 and (3*delta - alpha) / (2e) over the admissible triples.

    Admissible ``(e, alpha, beta)``: ``e >= 2``, ``alpha >= 2e``,
    ``beta >= 0``, ``alpha + beta <= delta``, ``e + delta - beta <= t`` and
    ``2*beta + delta - alpha >= k + 1``.
    """
    best = SEVEN_HALVES
    for e in range(2, delta // 2 + 1):
        for alpha in range(2 * e, delta + 1):
            for beta in range(0, delta - alpha + 1):
                if e + delta - beta <= t and 2 * beta + delta - alpha >= k + 1:
                    val = Fraction(3 * delta - alpha, 2 * e)
                    if val < best:
                        best = val
    return best


def meets_main1_threshold(t: int, delta: int) -> bool:
    """``t >= (sqrt(22)/2 - 1) * delta``, decided in integers."""
    lhs = 2 * t + 2 * delta
    return lhs >= 0 and lhs * lhs >= 22 * delta * delta


def main1_min_t(delta: int) -> int:
    """Smallest integer ``t`` meeting the threshold of :func:`meets_main1_threshold`."""
    s = isqrt(22 * delta * delta)
    t = max(0, (s - 2 * delta) // 2)
    while not meets_main1_threshold(t, delta):
        t += 1
    return t


def corollary_mu_fraction(delta: int, mu: int) -> Fraction:
    """``delta / (3 mu)``, valid when ``mu >= (delta/6)(sqrt(22) - 2)``."""
    if delta < 1 or mu < 1:
        raise ValueError("delta and mu must be positive")
    lhs = 6 * mu + 2 * delta
    if lhs * lhs < 22 * delta * delta:
        raise ValueError(f"multiplicity {mu} is below the threshold for delta={delta}")
    return Fraction(delta, 3 * mu)


def collapse_parameter(delta: int, t: int) -> int:
    return max(0, min(delta, 2 * (t - delta) + 1))


@dataclass(frozen=True)
class BoundReport:
    delta: int
    t: int
    k: int
    theorem: str
    guarantee: Fraction
    measured_t: int
    forbidden: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def render(self) -> str:
        forb = ",".join(self.forbidden) if self.forbidden else "none"
        g = self.guarantee
        return (
            f"delta={self.delta} t={self.t} k={self.k} theorem={self.theorem} "
            f"guarantee={g.numerator}/{g.denominator} forbidden={forb}"
        )


def forbidden_subgraphs(g: Multigraph, delta: int | None = None) -> tuple[str, ...]:
    """Names of the bottleneck triangles present for this maximum degree."""
    if delta is None:
        delta = max_degree(g)
    if delta < 2:
        return ()
    if delta % 2 == 0:
        c = delta // 2
        return (f"{c}K3",) if contains_ck3(g, c) else ()
    c = (delta - 1) // 2
    return (f"{c}K3+e",) if contains_ck3_plus_e(g, c) else ()


def _equals_forbidden(g: Multigraph, delta: int) -> bool:
    """Whether ``g`` itself (ignoring isolated vertices) is the forbidden triangle."""
    if max_triangle_density(g) != g.m:
        return False
    target = 3 * delta // 2
    if delta % 2 == 1:
        target = (3 * delta - 1) // 2
    return g.m == target and bool(forbidden_subgraphs(g, delta))


def plan_guarantee(g: Multigraph) -> BoundReport:
    """Strongest guarantee provable for ``g`` with ``max_degree(g)`` colors."""
    delta = max_degree(g)
    measured = max_triangle_density(g)
    if delta == 0:
        return BoundReport(0, 0, 0, SHANNON, Fraction(1), measured, (), ("edgeless graph",))
    forb = forbidden_subgraphs(g, delta)
    notes = []
    full = 3 * delta // 2
    # (theorem, guarantee, t); earlier entries win ties
    cands: list[tuple[str, Fraction, int]] = []
    if delta >= 4 and not forb:
        cands.append((MAIN_2, beyond_shannon_fraction(delta), full - 1))
    if delta >= 4 and g.is_connected() and not _equals_forbidden(g, delta):
        cands.append((MAIN, connected_fraction(delta), full - 1))
    cands.append((SHANNON, shannon_fraction(delta), full))
    t1 = max(measured, main1_min_t(delta))
    if t1 <= full:
        cands.append((MAIN_1, Fraction(delta, t1), t1))
    if delta == 3:
        notes.append("subcubic 7/9 bound not implemented; Shannon fallback")
    best = cands[0]
    for c in cands[1:]:
        if c[1] > best[1]:
            best = c
    name, frac, t = best
    return BoundReport(delta, t, collapse_parameter(delta, t), name, frac, measured, forb, tuple(notes))


def required_colored(m: int, fraction: Fraction) -> int:
    """Smallest integer count meeting ``fraction * m``."""
    prod = fraction * m
    return -((-prod.numerator) // prod.denominator)
