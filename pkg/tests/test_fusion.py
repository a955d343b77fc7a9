from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affa.fusion import (
    FusionGraph,
    Word,
    bratteli,
    gram_matrix,
    grading,
    hom_dim,
    principal_graph,
    simple_decompose,
    span_diagrams,
    trace_of_word,
)
from affa.labeling import GroupElement
from affa.theory import Family, Label, Theory


SH1 = Theory(Family.SHADED_AODD, 1, 1, 0)
SH2 = Theory(Family.SHADED_AODD, 2, 2, 1)
AR1 = Theory(Family.ARROW_AODD, 1, 2, 1)
AR2 = Theory(Family.ARROW_AODD, 2, 4, 1)
AE2 = Theory(Family.ARROW_AEVEN, 2, 5, 1)
CO2 = Theory(Family.COLOR_AODD, 2, 2, 1)
ARINF = Theory(Family.ARROW_AINF)


def test_grading_is_cyclic_and_additive_for_arrows():
    w = Word(AR2, (Label.DOWN, Label.DOWN, Label.DOWN))
    assert grading(w) == GroupElement(False, 4, 3)
    assert grading(Word(AR2, ())).is_identity()
    assert grading(Word(AR2, (Label.UP, Label.DOWN))).is_identity()


def test_grading_alternates_for_checkerboard_words():
    # adjacent strands of the same color contribute opposite steps
    assert grading(Word(SH2, (Label.RED, Label.RED))).is_identity()
    assert grading(Word(SH2, (Label.RED, Label.BLUE))) \
        == GroupElement(False, 4, 2)
    assert grading(Word(CO2, (Label.BLUE, Label.RED))) \
        == GroupElement(False, 4, 2)


def test_plain_letters_have_no_grading():
    with pytest.raises(ValueError):
        grading(Word(AR2, (Label.PLAIN,)))


def test_hom_dim_by_weight():
    empty = Word(AR2, ())
    # dim Hom(Q1^k, unit) = 1 exactly when the cyclic order divides k
    for k in range(13):
        expected = 1 if k % 4 == 0 else 0
        assert hom_dim(empty, Word(AR2, (Label.DOWN,) * k)) == expected
    assert hom_dim(Word(AR2, (Label.UP,)), Word(AR2, (Label.DOWN,) * 3)) == 1


def test_hom_dim_needs_matching_theory():
    with pytest.raises(ValueError):
        hom_dim(Word(AR2, ()), Word(AR1, ()))


def test_simple_decompose_gives_shortest_word():
    assert simple_decompose(Word(AR2, (Label.DOWN,) * 3)).display() == "P1"
    assert simple_decompose(Word(AR2, ())).display() == "1"
    w = simple_decompose(Word(SH2, (Label.RED, Label.BLUE)))
    assert len(w.labels) == 2
    assert grading(w) == grading(Word(SH2, (Label.RED, Label.BLUE)))


@pytest.mark.parametrize("th,count", [
    (SH2, 4), (AR2, 4), (AE2, 5), (CO2, 4),
    (Theory(Family.SHADED_AODD, 5, 1, 0), 10),
    (Theory(Family.ARROW_AEVEN, 5, 1, 0), 11)])
def test_principal_graph_is_the_affine_cycle(th, count):
    g = principal_graph(th)
    assert len(g.vertices) == count
    assert all(t == Fraction(1) for t in g.traces)
    # trace formula at loop parameter 2: twice each trace is the sum of
    # the neighbours' traces, counted with multiplicity
    for v in range(count):
        nb = sum(m for i, j, m in g.edges if v in (i, j))
        assert nb == 2


def test_smallest_cycle_is_a_double_edge():
    g = principal_graph(SH1)
    assert g.vertices == ("1", "Q1")
    assert g.edges == ((0, 1, 2),)


def test_infinite_graph_needs_and_respects_radius():
    with pytest.raises(ValueError):
        principal_graph(ARINF)
    g = principal_graph(ARINF, radius=3)
    assert len(g.vertices) == 7  # a path: 0, +-1, +-2, +-3
    assert all(t == Fraction(1) for t in g.traces)


def test_bratteli_matches_walk_counts():
    rows = 6
    for th in (AR2, SH2, AE2):
        from affa.fusion import _group_params
        _, m = _group_params(th)
        b = bratteli(th, rows)
        # independent oracle: multiplicities are +-1 walk counts on Z_m
        walks = {0: 1}
        for r in range(rows):
            assert b["dims"][r] == sum(v * v for v in walks.values())
            nxt: dict[int, int] = {}
            for e, c in walks.items():
                for d in (+1, -1):
                    f = (e + d) % m
                    nxt[f] = nxt.get(f, 0) + c
            walks = nxt


def test_bratteli_row_zero_is_the_unit():
    b = bratteli(AR2, 3)
    assert b["rows"][0] == [{"word": "1", "mult": 1}]
    assert b["dims"] == [1, 2, 8, 32]


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_trace_of_plain_word_is_power_of_two(k):
    assert trace_of_word(Word(SH2, (Label.PLAIN,) * k)) \
        .as_fraction() == 2 ** k


def test_trace_of_simple_word_is_one():
    from affa.cyclotomic import Cyclo
    assert trace_of_word(Word(AR2, (Label.DOWN, Label.UP))) == Cyclo.one()


def test_gram_of_balanced_arrow_word():
    w = Word(AR1, (Label.DOWN,) * 4)  # weight 4 = 0 mod 2: dimension 1
    res = gram_matrix(w, max_boxes=2)
    assert res.rank == 1
    assert res.psd
    assert res.size >= 1


def test_gram_of_unbalanced_word_is_zero_dimensional():
    res = gram_matrix(Word(AR2, (Label.DOWN,)), max_boxes=0)
    assert res.size == 0 and res.rank == 0 and res.psd


def test_gram_rejects_plain_words():
    with pytest.raises(ValueError):
        gram_matrix(Word(SH2, (Label.PLAIN,)), max_boxes=0)


def test_span_diagrams_are_valid_and_boundary_only():
    word = (Label.RED, Label.BLUE, Label.RED, Label.BLUE)
    for d in span_diagrams(SH2, word, max_boxes=2):
        assert d.validate() == []
        assert not d.bottom and tuple(d.top) == word


@settings(max_examples=25, deadline=None)
@given(bits=st.lists(st.booleans(), min_size=0, max_size=6),
       th=st.sampled_from([SH2, AR2, AE2, CO2]))
def test_gram_rank_equals_hom_dim(bits, th):
    hi, lo = ((Label.RED, Label.BLUE) if not th.is_oriented()
              else (Label.UP, Label.DOWN))
    word = tuple(hi if b else lo for b in bits)
    res = gram_matrix(Word(th, word), max_boxes=len(word) // 2)
    assert res.rank == hom_dim(Word(th, ()), Word(th, word))
    assert res.psd
