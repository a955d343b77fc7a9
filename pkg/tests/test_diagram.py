import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affa.cyclotomic import Cyclo, root_power
from affa.diagram import Diagram, Morphism, Strand, anchor, bnd, boxleg, make_strand
from affa.theory import BoxKind, Family, Label, Theory


SH2 = Theory(Family.SHADED_AODD, 2, 2, 1)
SH1 = Theory(Family.SHADED_AODD, 1)
AR2 = Theory(Family.ARROW_AODD, 2, 4, 1)
AE1 = Theory(Family.ARROW_AEVEN, 1, 3, 1)
CO2 = Theory(Family.COLOR_AODD, 2, 2, 1)
AINF = Theory(Family.ARROW_AINF)


def the_diagram(m: Morphism) -> Diagram:
    (d,) = m.terms
    return d


def test_identity_validates_with_two_faces():
    m = Morphism.identity(SH2, [Label.RED])
    d = the_diagram(m)
    assert d.validate() == []
    assert len(d.faces()) == 2


def test_generators_validate_everywhere():
    theories = [SH2, SH1, AR2, AE1, CO2,
                Theory(Family.VEC_CYCLIC, 3, 3, 1),
                Theory(Family.SU2_REP, 2, 2, 1)]
    from affa.theory import box_kinds, leg_count
    for th in theories:
        for kind in box_kinds(th):
            for rot in range(leg_count(th, kind)):
                d = the_diagram(Morphism.generator(th, kind, rot))
                assert d.validate() == [], (th, kind, rot, d.validate())


def test_bare_box_face_count():
    # a lone k-legged box cut out of the plane leaves k regions
    from affa.theory import box_kinds, leg_count
    for th in (SH2, AR2, AE1):
        for kind in box_kinds(th):
            d = the_diagram(Morphism.generator(th, kind))
            assert len(d.faces()) == leg_count(th, kind)


def test_crossing_is_rejected():
    s1 = make_strand(bnd("top", 0), bnd("top", 2), Label.RED)
    s2 = make_strand(bnd("top", 1), bnd("top", 3), Label.RED)
    d = Diagram.make(SH2, [], [Label.RED] * 4, [], [s1, s2])
    assert any("non-planar" in e for e in d.validate())
    # the nested matching is fine
    s1 = make_strand(bnd("top", 0), bnd("top", 3), Label.RED)
    s2 = make_strand(bnd("top", 1), bnd("top", 2), Label.RED)
    d = Diagram.make(SH2, [], [Label.RED] * 4, [], [s1, s2])
    assert d.validate() == []


def test_label_mismatch_is_rejected():
    s = make_strand(bnd("bottom", 0), bnd("top", 0), Label.RED)
    d = Diagram.make(SH2, [Label.BLUE], [Label.RED], [], [s])
    assert d.validate() != []


def test_flow_mismatch_is_rejected():
    # an Up strand must flow bottom -> top
    s = Strand(bnd("bottom", 0), bnd("top", 0), Label.UP, -1)
    d = Diagram.make(AR2, [Label.UP], [Label.UP], [], [s])
    assert any("flow" in e for e in d.validate())


def test_compose_identity_unit():
    for th, kind in ((SH2, BoxKind.U), (AR2, BoxKind.USTAR),
                     (AE1, BoxKind.U), (CO2, BoxKind.V)):
        g = Morphism.generator(th, kind)
        assert Morphism.identity(th, g.top).compose(g) == g
        assert g.compose(Morphism.identity(th, g.bottom)) == g


def test_tensor_associative_and_boundary():
    a = Morphism.generator(SH2, BoxKind.U)
    b = Morphism.identity(SH2, [Label.RED])
    c = Morphism.cup(SH2, Label.BLUE)
    assert a.tensor(b).tensor(c) == a.tensor(b.tensor(c))
    t = a.tensor(c)
    assert t.top == a.top + c.top


def test_cap_after_cup_is_a_loop():
    m = Morphism.cap(SH2, Label.RED).compose(Morphism.cup(SH2, Label.RED))
    assert m == Morphism.loop(SH2, Label.RED)
    m = Morphism.cap(AR2, Label.UP).compose(Morphism.cup(AR2, Label.UP))
    assert m == Morphism.loop(AR2, Label.UP)


def test_zigzag_is_identity():
    for th, lab in ((SH2, Label.RED), (AR2, Label.UP), (AR2, Label.DOWN),
                    (Theory(Family.SU2_REP, 2, 2, 1), Label.PLUS)):
        ident = Morphism.identity(th, [lab])
        from affa.theory import dual_label
        lower = ident.tensor(Morphism.cup(th, dual_label(lab)))
        upper = Morphism.cap(th, lab).tensor(ident)
        assert upper.compose(lower) == ident


def test_compose_mismatch_is_zero():
    # red meets blue through the interface: the term vanishes
    top_red = Morphism.identity(SH2, [Label.RED])
    bot_blue = Morphism.identity(SH2, [Label.BLUE])
    assert top_red.compose(bot_blue).is_zero()
    # gluing cup(Up)'s [Up, Down] under cap(Down)'s [Down, Up] clashes too
    cup = Morphism.cup(AR2, Label.UP)
    cap = Morphism.cap(AR2, Label.DOWN)
    assert cap.compose(cup).is_zero()
    assert not Morphism.cap(AR2, Label.UP).compose(cup).is_zero()


def test_shading_clash_is_zero():
    # U's star region is unshaded, V*'s is shaded; stacked at n=1 they share
    # the left region, so the composite vanishes
    u = Morphism.generator(SH1, BoxKind.U)
    vstar = Morphism.generator(SH1, BoxKind.VSTAR)
    assert vstar.compose(u).is_zero()
    ustar = Morphism.generator(SH1, BoxKind.USTAR)
    assert not ustar.compose(u).is_zero()


def test_adjoint_is_involution():
    for m in (Morphism.generator(SH2, BoxKind.U, rot=1),
              Morphism.generator(AE1, BoxKind.U),
              Morphism.cup(AR2, Label.UP),
              Morphism.cap(CO2, Label.BLUE),
              Morphism.loop(AR2, Label.UP)):
        assert m.adjoint().adjoint() == m


def test_adjoint_antihomomorphism():
    u = Morphism.generator(SH2, BoxKind.U)
    ustar = Morphism.generator(SH2, BoxKind.USTAR)
    lhs = ustar.compose(u).adjoint()
    rhs = u.adjoint().compose(ustar.adjoint())
    assert lhs == rhs


def test_adjoint_of_generator_is_adjoint_kind():
    u = Morphism.generator(AE1, BoxKind.U)
    assert u.adjoint() == Morphism.generator(AE1, BoxKind.USTAR)
    v = Morphism.generator(SH2, BoxKind.V)
    assert v.adjoint() == Morphism.generator(SH2, BoxKind.VSTAR)


def test_click_boundary_matches_tables():
    # one notch turns U's boundary into Vstar's (shaded), and leaves the
    # arrow U boundary invariant
    u = Morphism.generator(SH2, BoxKind.U).click(1)
    vstar = Morphism.generator(SH2, BoxKind.VSTAR)
    assert (u.bottom, u.top) == (vstar.bottom, vstar.top)
    au = Morphism.generator(AR2, BoxKind.U).click(1)
    assert (au.bottom, au.top) == ((Label.UP,) * 2, (Label.DOWN,) * 2)


def test_click_full_turn_is_structural_identity():
    from affa.theory import leg_count
    for th, kind in ((SH2, BoxKind.U), (AR2, BoxKind.USTAR),
                     (AE1, BoxKind.U), (CO2, BoxKind.VSTAR)):
        m = Morphism.generator(th, kind, rot=1)
        k = leg_count(th, kind)
        assert m.click(k) == m
        assert m.click(1).click(-1) == m


def test_trace_of_identity_is_loops():
    w = [Label.RED, Label.BLUE]
    tr = Morphism.identity(SH2, w).trace_close("right")
    assert tr == Morphism.loop(SH2, Label.RED).tensor(
        Morphism.loop(SH2, Label.BLUE))
    assert tr == Morphism.identity(SH2, w).trace_close("left")


def test_expand_plain_counts():
    m = Morphism.identity(AR2, [Label.PLAIN]).expand_plain()
    assert len(m.terms) == 2
    loops = Morphism.loop(SH2, Label.PLAIN)
    for _ in range(2):
        loops = loops.tensor(Morphism.loop(SH2, Label.PLAIN))
    expanded = loops.expand_plain()
    # interchangeable loops collapse to multisets of colors, with the
    # binomial multiplicities summing to 2^3
    assert len(expanded.terms) == 4
    total = Cyclo.zero()
    for c in expanded.terms.values():
        total = total + c
    assert total == Cyclo.from_fraction(8)


def test_morphism_linear_algebra():
    u = Morphism.generator(SH2, BoxKind.U)
    v = Morphism.generator(SH2, BoxKind.V)
    z = u + v - u - v
    assert z.is_zero()
    w = u.scale(root_power(2, 1)) + u.scale(root_power(2, 1))
    assert w == u.scale(-2)


def test_serialization_round_trip():
    ms = [Morphism.generator(SH2, BoxKind.U, rot=3),
          Morphism.generator(SH2, BoxKind.U).scale(root_power(2, 1))
          + Morphism.generator(SH2, BoxKind.V).scale(-3),
          Morphism.generator(AE1, BoxKind.USTAR, rot=2),
          Morphism.loop(CO2, Label.RED),
          Morphism.identity(AINF, [Label.PLAIN, Label.UP])]
    for m in ms:
        again = Morphism.parse(m.serialize())
        assert again == m


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Morphism.parse(b"{not json")
    with pytest.raises(ValueError):
        Morphism.parse(b'{"bottom": []}')
    bad = Morphism.generator(SH2, BoxKind.U).serialize().replace(
        b'"Red"', b'"Crimson"')
    with pytest.raises(ValueError):
        Morphism.parse(bad)


@settings(max_examples=40, deadline=None)
@given(word=st.lists(st.sampled_from([Label.RED, Label.BLUE, Label.PLAIN]),
                     max_size=5))
def test_identity_idempotent_under_compose(word):
    ident = Morphism.identity(SH2, word)
    assert ident.compose(ident) == ident
    assert ident.adjoint() == ident


@settings(max_examples=40, deadline=None)
@given(word=st.lists(st.sampled_from([Label.UP, Label.DOWN]), max_size=4))
def test_oriented_trace_gives_one_loop_per_strand(word):
    tr = Morphism.identity(AR2, word).trace_close()
    (d,) = tr.terms if tr.terms else (None,)
    if word:
        assert d.n_anchors == len(word)
    else:
        assert d.n_anchors == 0
