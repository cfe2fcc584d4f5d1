"""End-to-end coloring: plan a guarantee, collapse, maximize, lift, check.

:func:`color_graph` is the entry point used by the CLI and the approximation
module. It escalates the move-search budget when the lifted coloring misses
the planned bound or the engine cannot certify its final state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import BoundReport, plan_guarantee, required_colored
from .collapse import CollapseRecord, collapse_all, lift_coloring
from .coloring import PartialColoring
from .engine import DEFAULT_STATE_CAP, Certification, default_budget, maximize_potential
from .multigraph import Multigraph, max_degree

MAX_ESCALATIONS = 4


@dataclass(frozen=True)
class ColorResult:
    coloring: PartialColoring
    report: BoundReport
    certification: Certification
    records: tuple[CollapseRecord, ...]
    collapsed: Multigraph
    engine_coloring: PartialColoring
    required: int
    escalations: int

    @property
    def colored(self) -> int:
        return self.coloring.colored_count

    @property
    def uncertified(self) -> bool:
        return self.certification.uncertified

    @property
    def fraction(self) -> Fraction:
        m = len(self.coloring.colors)
        return Fraction(self.colored, m) if m else Fraction(1)


def color_graph(
    g: Multigraph,
    palette: int | None = None,
    budget: int | None = None,
    collapse: bool = True,
) -> ColorResult:
    """Color ``g`` with ``palette`` colors (default its maximum degree).

    The guarantee is planned for ``g``'s own maximum degree; a larger
    palette can only help.
    """
    report = plan_guarantee(g)
    delta = max_degree(g)
    k = palette if palette is not None else max(1, delta)
    if k < delta:
        raise ValueError(f"palette {k} is smaller than the maximum degree {delta}")
    required = required_colored(g.m, report.guarantee)
    if collapse and report.k > 0:
        small, records = collapse_all(g, report.k)
    else:
        small, records = g, []
    if budget is None:
        budget = default_budget(k)
    cap = DEFAULT_STATE_CAP
    start = None
    escalations = 0
    while True:
        col, cert = maximize_potential(small, k, budget=budget, start=start, cap=cap)
        lifted = lift_coloring(records, col)
        ok = lifted.colored_count >= required and cert.passed
        if ok or escalations == MAX_ESCALATIONS:
            break
        escalations += 1
        budget *= 2
        cap *= 2
        start = col
    if not ok:
        cert = Certification(cert.violations, cert.budget, True, cert.notes + ("bound or certification unmet after escalation",))
    return ColorResult(lifted, report, cert, tuple(records), small, col, required, escalations)
