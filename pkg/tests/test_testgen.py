import pytest

from affa.testgen import random_closed
from affa.theory import Family, Theory, box_kinds


SH2 = Theory(Family.SHADED_AODD, 2, 2, 1)
AR2 = Theory(Family.ARROW_AODD, 2, 4, 1)
CO2 = Theory(Family.COLOR_AODD, 2, 2, 1)
AE1 = Theory(Family.ARROW_AEVEN, 1, 3, 1)


def test_same_seed_same_diagram():
    for seed in range(20):
        a = random_closed(SH2, 5, 2, seed)
        b = random_closed(SH2, 5, 2, seed)
        assert a == b


def test_different_seeds_differ_somewhere():
    draws = {random_closed(AR2, 5, 2, seed) for seed in range(30)}
    assert len(draws) > 1


@pytest.mark.parametrize("th", [SH2, AR2, CO2, AE1,
                                Theory(Family.SHADED_AINF),
                                Theory(Family.ARROW_AINF)])
def test_draws_are_closed_and_valid(th):
    for seed in range(50):
        d = random_closed(th, 4, 2, seed)
        assert not d.bottom and not d.top
        assert d.validate() == []


def test_zero_budget_gives_loops_only():
    for seed in range(10):
        d = random_closed(SH2, 0, 3, seed)
        assert not d.boxes


def test_bounds_must_be_nonnegative():
    with pytest.raises(ValueError):
        random_closed(SH2, -1, 0, 0)
    with pytest.raises(ValueError):
        random_closed(SH2, 0, -1, 0)


@pytest.mark.parametrize("th", [SH2, AR2])
def test_coverage_over_many_draws(th):
    stats: dict = {}
    for seed in range(1000):
        random_closed(th, 6, 2, seed, stats=stats)
    for kind in box_kinds(th):
        assert stats.get(f"kind:{kind.value}", 0) > 0, kind
    assert stats.get("tensor:left", 0) > 0
    assert stats.get("tensor:right", 0) > 0
    assert stats.get("close:left", 0) > 0
    assert stats.get("close:right", 0) > 0
    assert stats.get("clicked", 0) > 0
