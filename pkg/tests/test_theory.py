import pytest

from affa.cyclotomic import Cyclo
from affa.theory import (
    BoxKind,
    Family,
    Label,
    Theory,
    alphabet,
    box_kinds,
    box_signature,
    click_rewrite,
    cyc_signature,
    dual_label,
    kind_adjoint,
    leg_count,
    star_parity,
)


def shaded(n, order=1, exp=0):
    return Theory(Family.SHADED_AODD, n, order, exp)


def arrow_odd(n, order=1, exp=0):
    return Theory(Family.ARROW_AODD, n, order, exp)


def arrow_even(n, order=1, exp=0):
    return Theory(Family.ARROW_AEVEN, n, order, exp)


def color(n, order=1, exp=0):
    return Theory(Family.COLOR_AODD, n, order, exp)


def test_shaded_signature_example():
    th = shaded(2)
    assert box_signature(th, BoxKind.U) == (
        (Label.BLUE, Label.RED), (Label.RED, Label.BLUE))
    assert box_signature(th, BoxKind.USTAR) == (
        (Label.RED, Label.BLUE), (Label.BLUE, Label.RED))
    # V shares U's signature; only the star parity differs
    assert box_signature(th, BoxKind.V) == box_signature(th, BoxKind.U)
    assert star_parity(BoxKind.U) == 0
    assert star_parity(BoxKind.V) == 1


def test_arrow_signatures():
    assert box_signature(arrow_odd(2), BoxKind.U) == (
        (Label.UP, Label.UP), (Label.DOWN, Label.DOWN))
    assert box_signature(arrow_even(1), BoxKind.U) == (
        (Label.UP, Label.UP), (Label.DOWN,))
    assert box_signature(arrow_even(1), BoxKind.USTAR) == (
        (Label.DOWN,), (Label.UP, Label.UP))


def test_source_signatures():
    vec = Theory(Family.VEC_CYCLIC, 3, 3, 1)
    assert box_signature(vec, BoxKind.SCRIPT_U) == ((), (Label.DOT,) * 3)
    su = Theory(Family.SU2_REP, 2, 2, 1)
    assert box_signature(su, BoxKind.NCAP_MINUS) == ((Label.MINUS,) * 2, ())
    assert box_signature(su, BoxKind.NCUP_PLUS) == ((), (Label.PLUS,) * 2)
    with pytest.raises(ValueError):
        box_signature(su, BoxKind.U)


def test_cyc_signature_is_ccw():
    th = shaded(2)
    # bottom left-to-right, then top right-to-left
    assert cyc_signature(th, BoxKind.U) == (
        Label.BLUE, Label.RED, Label.BLUE, Label.RED)
    assert leg_count(arrow_even(1), BoxKind.U) == 3


def test_alphabets_and_duals():
    assert Label.PLAIN in alphabet(shaded(1))
    assert alphabet(Theory(Family.VEC_CYCLIC, 2)) == frozenset({Label.DOT})
    assert dual_label(Label.UP) is Label.DOWN
    assert dual_label(Label.RED) is Label.RED
    assert kind_adjoint(BoxKind.U) is BoxKind.USTAR
    assert kind_adjoint(BoxKind.NCUP_MINUS) is BoxKind.NCAP_MINUS


def test_theory_validation():
    with pytest.raises(ValueError):
        shaded(3, 2, 1)  # 2 does not divide 3
    with pytest.raises(ValueError):
        arrow_even(2, 2, 1)  # 2 does not divide 5
    with pytest.raises(ValueError):
        Theory(Family.SHADED_AINF, 3)
    with pytest.raises(ValueError):
        Theory(Family.ARROW_AINF, None, 2, 1)
    Theory(Family.SHADED_AINF)  # box-free theory is fine
    assert arrow_even(2, 5, 3).root() == Cyclo([0, 0, 0, 1, 0], 5)


def test_theory_json_round_trip():
    for th in (shaded(3, 3, 2), arrow_odd(2, 4, 1), arrow_even(2, 5, 2),
               color(4, 2, 1), Theory(Family.COLOR_AINF),
               Theory(Family.VEC_CYCLIC, 5, 5, 3),
               Theory(Family.SU2_REP, 3, 3, 1)):
        assert Theory.from_json(th.to_json()) == th
    with pytest.raises(ValueError):
        Theory.from_json({"family": "NoSuchFamily"})


def test_click_rewrite_round_trips():
    cases = [(shaded(3, 3, 1), BoxKind.U), (shaded(2, 2, 1), BoxKind.V),
             (arrow_odd(2, 4, 3), BoxKind.U),
             (arrow_even(2, 5, 2), BoxKind.USTAR),
             (color(3, 3, 2), BoxKind.VSTAR)]
    for th, kind in cases:
        k2, c_fwd = click_rewrite(th, kind, +1)
        k3, c_back = click_rewrite(th, k2, -1)
        assert k3 is kind
        assert c_fwd * c_back == Cyclo.one()


def test_full_rotation_is_identity():
    """Applying the click rewrite leg-count many times returns the original
    kind with total scalar 1."""
    cases = [(shaded(3, 3, 1), BoxKind.U), (shaded(2, 2, 1), BoxKind.VSTAR),
             (arrow_odd(2, 4, 1), BoxKind.U),
             (arrow_even(1, 3, 1), BoxKind.U),
             (arrow_even(2, 5, 3), BoxKind.USTAR),
             (color(3, 3, 1), BoxKind.V)]
    for th, kind in cases:
        k = leg_count(th, kind)
        cur, total = kind, Cyclo.one()
        for _ in range(k):
            cur, c = click_rewrite(th, cur, +1)
            total = total * c
        assert cur is kind
        assert total == Cyclo.one()


def test_box_kind_lists():
    assert box_kinds(shaded(1)) == (BoxKind.U, BoxKind.USTAR,
                                    BoxKind.V, BoxKind.VSTAR)
    assert box_kinds(Theory(Family.SHADED_AINF)) == ()
    assert len(box_kinds(Theory(Family.SU2_REP, 1))) == 4
