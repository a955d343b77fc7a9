"""The two source categories, their 3-cocycle data, and the functors into
the oriented-strand planar theories.

Both functors act on objects by dot |-> Down, plus |-> Up, minus |-> Down
and send each source box to a bent generator box: the lower legs of the
image generator are folded up around its right side.  Folding preserves
the counterclockwise order of the legs and the star corner, so on the
combinatorial map the translation is simply a relabeling: every box keeps
its legs and turns into the matching arrow generator, every strand keeps
its endpoints and gets the image label with the direction its new
endpoints force.  Evaluation of source-category diagrams is defined
through this image (the functors are equivalences); the size-one source
categories, which have no strand image, are trivial and handled directly
by the evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass

from affa.cyclotomic import Cyclo
from affa.diagram import Diagram, Morphism, SNK, SRC, Strand
from affa.theory import BoxKind, Family, Label, ORIENTED_LABELS, Theory

_LABEL_MAP = {Label.DOT: Label.DOWN, Label.PLUS: Label.UP,
              Label.MINUS: Label.DOWN, Label.PLAIN: Label.PLAIN}
_KIND_MAP = {BoxKind.SCRIPT_U: BoxKind.U,
             BoxKind.SCRIPT_USTAR: BoxKind.USTAR,
             BoxKind.NCUP_MINUS: BoxKind.U,
             BoxKind.NCUP_PLUS: BoxKind.USTAR,
             BoxKind.NCAP_MINUS: BoxKind.USTAR,
             BoxKind.NCAP_PLUS: BoxKind.U}


# -- the 3-cocycle ---------------------------------------------------------

@dataclass(frozen=True)
class CocycleSpec:
    """An m-th root of unity zeta, defining the 3-cocycle on Z_m."""

    m: int
    zeta: Cyclo

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if self.zeta ** self.m != Cyclo.one():
            raise ValueError("zeta must be an m-th root of unity")


def cocycle(spec: CocycleSpec, i: int, j: int, k: int) -> Cyclo:
    """zeta raised to i*(j + k - ((j + k) mod m))/m, the carry cocycle."""
    m = spec.m
    for x in (i, j, k):
        if not 0 <= x < m:
            raise ValueError("cocycle arguments must be residues mod m")
    e = i * ((j + k) - ((j + k) % m)) // m
    return spec.zeta ** e


def check_cocycle(spec: CocycleSpec) -> bool:
    """Exhaustive 3-cocycle identity over all m**4 tuples."""
    m = spec.m
    w = cocycle
    for g1 in range(m):
        for g2 in range(m):
            for g3 in range(m):
                for g4 in range(m):
                    lhs = w(spec, (g1 + g2) % m, g3, g4) \
                        * w(spec, g1, g2, (g3 + g4) % m)
                    rhs = w(spec, g1, g2, g3) \
                        * w(spec, g1, (g2 + g3) % m, g4) \
                        * w(spec, g2, g3, g4)
                    if lhs != rhs:
                        return False
    return True


# -- the translation -------------------------------------------------------

def image_theory(th: Theory) -> Theory:
    """The oriented-strand theory a source category lands in."""
    if th.family not in (Family.VEC_CYCLIC, Family.SU2_REP):
        raise ValueError("image_theory expects a source-category theory")
    m = th.m
    if m < 2:
        raise ValueError("the size-one source categories have no "
                         "strand image")
    if th.family is Family.VEC_CYCLIC:
        # the cyclic source with root zeta pairs with the conjugate root
        order, exp = th.root_order, (-th.root_exp) % th.root_order
    else:
        order, exp = 1, 0
    if m % 2 == 0:
        return Theory(Family.ARROW_AODD, m // 2, order, exp)
    return Theory(Family.ARROW_AEVEN, (m - 1) // 2, order, exp)


def _image_role(d: Diagram, helper: Diagram, e) -> int:
    if e[0] == "box":
        return helper.leg_flow(e[1], e[2])
    if e[0] == "bnd":
        word = d.bottom if e[1] == "bottom" else d.top
        sign = ORIENTED_LABELS[_LABEL_MAP[word[e[2]]]]
        if e[1] == "bottom":
            return SRC if sign > 0 else SNK
        return SNK if sign > 0 else SRC
    return 0


def _image_diagram(d: Diagram, tgt: Theory) -> Diagram:
    boxes = []
    for kind, rot in d.boxes:
        if rot != 0:
            raise ValueError("rotated source boxes are outside the "
                             "functor image")
        boxes.append((_KIND_MAP[kind], rot))
    helper = Diagram(tgt, (), (), tuple(boxes), 0, ())
    strands = []
    for s in d.strands:
        lab = _LABEL_MAP[s.label]
        if lab is Label.PLAIN:
            strands.append(Strand(s.a, s.b, lab, 0))
            continue
        if s.a[0] == "anchor":
            strands.append(Strand(s.a, s.b, lab, +1))
            continue
        # every strand acquires the orientation its image endpoints force:
        # bending the lower legs of the image box reverses their flow
        ra = _image_role(d, helper, s.a)
        rb = _image_role(d, helper, s.b)
        if (ra, rb) == (SRC, SNK):
            src, dir = s.a, +1
        elif (ra, rb) == (SNK, SRC):
            src, dir = s.b, -1
        else:
            raise ValueError("diagram is not in the functor image")
        # the strand carries whatever object its source end presents
        if src[0] == "box":
            lab = helper.leg_label(src[1], src[2])
        else:
            word = d.bottom if src[1] == "bottom" else d.top
            lab = _LABEL_MAP[word[src[2]]]
        strands.append(Strand(s.a, s.b, lab, dir))
    out = Diagram.make(tgt, [_LABEL_MAP[l] for l in d.bottom],
                       [_LABEL_MAP[l] for l in d.top],
                       boxes, strands, n_anchors=d.n_anchors)
    errs = out.validate()
    if errs:
        raise ValueError("diagram is not in the functor image: "
                         + "; ".join(errs))
    return out


def to_image(m: Morphism) -> Morphism:
    """The functor image of a source-category morphism."""
    tgt = image_theory(m.theory)
    out = Morphism.zero(tgt, [_LABEL_MAP[l] for l in m.bottom],
                        [_LABEL_MAP[l] for l in m.top])
    for d, c in m.terms.items():
        out = out + Morphism.from_diagram(_image_diagram(d, tgt), c)
    return out


def functor_vec_image(src: Morphism) -> Morphism:
    if src.theory.family is not Family.VEC_CYCLIC:
        raise ValueError("expected a morphism of the cyclic source category")
    return to_image(src)


def functor_rep_image(src: Morphism) -> Morphism:
    if src.theory.family is not Family.SU2_REP:
        raise ValueError("expected a morphism of the signed-strand "
                         "source category")
    return to_image(src)


# -- desk-scale verification -----------------------------------------------

def source_theory(which: str, m: int, zeta_exp: int = 0) -> Theory:
    """The source category D (which='vec') or B (which='rep') with root
    exp(2*pi*i*zeta_exp/m)."""
    fam = {"vec": Family.VEC_CYCLIC, "rep": Family.SU2_REP}.get(which)
    if fam is None:
        raise ValueError("which must be 'vec' or 'rep'")
    from math import gcd
    g = gcd(zeta_exp % m, m) if zeta_exp % m else m
    return Theory(fam, m, m // g, (zeta_exp % m) // g)


def _source_words(th: Theory, max_len: int):
    if th.family is Family.VEC_CYCLIC:
        for k in range(max_len + 1):
            yield (Label.DOT,) * k
        return
    yield ()
    words = [()]
    for _ in range(max_len):
        words = [w + (l,) for w in words
                 for l in (Label.PLUS, Label.MINUS)]
        yield from words


def _source_hom_dim(th: Theory, word) -> int:
    """dim Hom(unit, word) in the source category: one when the word's
    net weight vanishes mod m, zero otherwise."""
    weight = sum(ORIENTED_LABELS.get(l, 1) for l in word)
    return 1 if weight % th.m == 0 else 0


def check_functor(which: str, m: int, zeta_exp: int = 0) -> dict:
    """Relation preservation, hom-dimension match, and nontriviality."""
    from affa.evaluate import defining_relations, inner_product, morphism_eq
    th = source_theory(which, m, zeta_exp)
    trivial = m < 2
    report: dict = {"which": which, "m": m, "zeta_exp": zeta_exp % m,
                    "relations": [], "hom_dims": [], "nontrivial": False}
    image = (lambda x: x) if trivial else to_image
    for name, lhs, rhs in defining_relations(th):
        ok = morphism_eq(image(lhs), image(rhs))
        report["relations"].append({"name": name, "ok": ok})
    if trivial:
        for word in _source_words(th, 2 * m):
            report["hom_dims"].append(
                {"word": [l.value for l in word],
                 "source": _source_hom_dim(th, word), "target": 1,
                 "ok": _source_hom_dim(th, word) == 1})
    else:
        from affa.fusion import Word, hom_dim
        tgt = image_theory(th)
        empty = Word(tgt, ())
        for word in _source_words(th, 2 * m):
            src_dim = _source_hom_dim(th, word)
            tgt_dim = hom_dim(empty,
                              Word(tgt, tuple(_LABEL_MAP[l] for l in word)))
            report["hom_dims"].append(
                {"word": [l.value for l in word], "source": src_dim,
                 "target": tgt_dim, "ok": src_dim == tgt_dim})
    gen_kind = (BoxKind.SCRIPT_U if which == "vec" else BoxKind.NCUP_MINUS)
    gen = Morphism.generator(th, gen_kind)
    report["nontrivial"] = \
        inner_product(image(gen), image(gen)) == Cyclo.one()
    report["ok"] = (all(r["ok"] for r in report["relations"])
                    and all(h["ok"] for h in report["hom_dims"])
                    and report["nontrivial"])
    return report
