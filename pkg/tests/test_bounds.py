from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from kecs.bounds import (
    MAIN,
    MAIN_1,
    MAIN_2,
    SHANNON,
    beyond_shannon_fraction,
    collapse_parameter,
    connected_fraction,
    corollary_mu_fraction,
    main1_min_t,
    meets_main1_threshold,
    plan_guarantee,
    required_colored,
    rho,
)
from kecs.multigraph import Multigraph, generate

F = Fraction


def rho_reference(delta: int, k: int, t: int) -> Fraction:
    """Unrestricted grid search over every integer triple in [0, delta]."""
    vals = [F(7, 2)]
    for e, alpha, beta in product(range(delta + 1), repeat=3):
        if e >= 2 and alpha >= 2 * e and alpha + beta <= delta and e + delta - beta <= t and 2 * beta + delta - alpha >= k + 1:
            vals.append(F(3 * delta - alpha, 2 * e))
    return min(vals)


@pytest.mark.parametrize(("delta", "expected"), [(3, F(3, 4)), (4, F(2, 3)), (1, F(1))])
def test_shannon_fraction(delta, expected):
    from kecs.bounds import shannon_fraction

    assert shannon_fraction(delta) == expected


@pytest.mark.parametrize(("delta", "expected"), [(4, F(4, 5)), (5, F(5, 6)), (6, F(3, 4))])
def test_beyond_shannon_fraction(delta, expected):
    assert beyond_shannon_fraction(delta) == expected


@pytest.mark.parametrize(("delta", "expected"), [(4, F(4, 5)), (5, F(11, 15)), (3, F(7, 9))])
def test_connected_fraction(delta, expected):
    assert connected_fraction(delta) == expected


def test_fraction_domains():
    from kecs.bounds import shannon_fraction

    with pytest.raises(ValueError):
        shannon_fraction(0)
    with pytest.raises(ValueError):
        beyond_shannon_fraction(3)
    with pytest.raises(ValueError):
        connected_fraction(2)


@pytest.mark.parametrize("args", [(6, 5, 8), (7, 5, 9), (9, 7, 12), (6, 6, 6)])
def test_rho_equals_seven_halves(args):
    assert rho(*args) == F(7, 2)
    assert rho_reference(*args) == F(7, 2)


def test_rho_below_cap_when_constraints_are_loose():
    # e=2, alpha=5, beta=1 is admissible for delta=6, k=1, t=8
    assert rho(6, 1, 8) == F(13, 4) == rho_reference(6, 1, 8)


@pytest.mark.parametrize("delta", range(4, 11))
def test_rho_matches_reference_grid(delta):
    for k in range(0, delta + 1, 2):
        for t in range(delta, 3 * delta // 2 + 1):
            assert rho(delta, k, t) == rho_reference(delta, k, t)


@pytest.mark.parametrize("delta", range(4, 13))
def test_rho_monotonicity(delta):
    for k in range(delta + 1):
        vals = [rho(delta, k, t) for t in range(0, 3 * delta // 2 + 1)]
        assert all(v <= F(7, 2) for v in vals)
        assert all(a >= b for a, b in zip(vals, vals[1:]))
    for t in range(0, 3 * delta // 2 + 1):
        vals = [rho(delta, k, t) for k in range(delta + 1)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("delta", range(4, 13))
def test_beyond_improves_on_shannon(delta):
    from kecs.bounds import shannon_fraction

    assert beyond_shannon_fraction(delta) > shannon_fraction(delta)


@pytest.mark.parametrize("delta", range(4, 13))
def test_connected_versus_beyond(delta):
    # equal for even delta; for odd delta the connected bound is the weaker one
    if delta % 2 == 0:
        assert connected_fraction(delta) == beyond_shannon_fraction(delta)
    else:
        assert connected_fraction(delta) < beyond_shannon_fraction(delta)


@pytest.mark.parametrize(("delta", "mu", "expected"), [(6, 3, F(2, 3)), (2, 1, F(2, 3))])
def test_corollary_fraction(delta, mu, expected):
    assert corollary_mu_fraction(delta, mu) == expected


def test_corollary_threshold_unmet():
    with pytest.raises(ValueError, match="below the threshold"):
        corollary_mu_fraction(6, 2)


@pytest.mark.parametrize("delta", range(1, 40))
def test_main1_threshold_against_float(delta):
    t = main1_min_t(delta)
    assert meets_main1_threshold(t, delta)
    assert not meets_main1_threshold(t - 1, delta)
    assert t >= (22**0.5 / 2 - 1) * delta - 1e-9


def test_collapse_parameter():
    assert collapse_parameter(6, 8) == 5
    assert collapse_parameter(6, 9) == 6
    assert collapse_parameter(4, 3) == 0


def test_plan_for_even_forbidden_graph():
    rep = plan_guarantee(generate("cK3", 2))
    assert rep.forbidden == ("2K3",)
    assert rep.theorem == SHANNON
    assert rep.guarantee == F(2, 3)


def test_plan_for_triangle_minus_edge():
    rep = plan_guarantee(generate("cK3MinusE", 2))
    assert (rep.delta, rep.forbidden, rep.theorem, rep.guarantee) == (4, (), MAIN_2, F(4, 5))
    assert rep.render() == "delta=4 t=5 k=3 theorem=thm:main_2 guarantee=4/5 forbidden=none"


def test_plan_for_petersen_notes_subcubic_fallback():
    rep = plan_guarantee(generate("petersen"))
    assert (rep.delta, rep.theorem, rep.guarantee) == (3, SHANNON, F(3, 4))
    assert rep.notes


def test_plan_for_connected_odd_graph_with_forbidden_triangle():
    rep = plan_guarantee(generate("joinedTwins", 2))
    assert rep.forbidden == ("2K3+e",)
    assert (rep.theorem, rep.guarantee) == (MAIN, F(11, 15))


def test_plan_uses_triangle_density_when_it_pays():
    # a 4-cycle of 7-fold edges: delta=14, density 14, threshold t=19 gives 14/19 > 14/20
    g = Multigraph(4, ((0, 1),) * 7 + ((1, 2),) * 7 + ((2, 3),) * 7 + ((0, 3),) * 7)
    rep = plan_guarantee(g)
    assert rep.theorem == MAIN_1
    assert (rep.t, rep.guarantee, rep.measured_t) == (19, F(14, 19), 14)


def test_plan_for_edgeless_graph():
    assert plan_guarantee(Multigraph(3, ())).guarantee == 1


def test_required_colored_rounds_up():
    assert required_colored(15, F(11, 15)) == 11
    assert required_colored(7, F(2, 3)) == 5
    assert required_colored(0, F(2, 3)) == 0


@pytest.mark.parametrize("family,c", [("cK3", 2), ("cK3PlusE", 2), ("cK3MinusE", 3), ("joinedTwins", 3), ("petersen", 1)])
def test_report_invariants(family, c):
    rep = plan_guarantee(generate(family, c))
    assert 0 < rep.guarantee <= 1
    assert 0 <= rep.k <= rep.delta
    assert rep.t <= 3 * rep.delta // 2
