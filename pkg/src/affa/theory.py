"""Presentations: families, strand alphabets, box signatures, click behavior.

A Theory pins down one presentation: the family, the size parameter n
(or m for the source categories), and the chosen root of unity given as
(order, exponent).  Everything downstream (diagram validity, rewriting
scalars, region labeling groups) is table-driven from here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from affa.cyclotomic import Cyclo, root_power


class Family(enum.Enum):
    SHADED_AODD = "ShadedAodd"
    ARROW_AODD = "UnshadedArrowAodd"
    ARROW_AEVEN = "UnshadedArrowAeven"
    COLOR_AODD = "UnshadedColorAodd"
    SHADED_AINF = "ShadedAInf"
    ARROW_AINF = "UnshadedArrowAInf"
    COLOR_AINF = "UnshadedColorAInf"
    VEC_CYCLIC = "VecCyclicSource"
    SU2_REP = "SUTwoRepSource"


class Label(enum.Enum):
    RED = "Red"
    BLUE = "Blue"
    UP = "Up"
    DOWN = "Down"
    PLAIN = "Plain"
    DOT = "Dot"
    PLUS = "Plus"
    MINUS = "Minus"


class BoxKind(enum.Enum):
    U = "U"
    USTAR = "Ustar"
    V = "V"
    VSTAR = "Vstar"
    SCRIPT_U = "ScriptU"
    SCRIPT_USTAR = "ScriptUstar"
    NCAP_PLUS = "NCap+"
    NCAP_MINUS = "NCap-"
    NCUP_PLUS = "NCup+"
    NCUP_MINUS = "NCup-"


# Labels carrying an orientation, with their "upward flow" sign.
ORIENTED_LABELS = {Label.UP: +1, Label.DOWN: -1, Label.PLUS: +1, Label.MINUS: -1}

_FINITE = {Family.SHADED_AODD, Family.ARROW_AODD, Family.ARROW_AEVEN,
           Family.COLOR_AODD}
_INFINITE = {Family.SHADED_AINF, Family.ARROW_AINF, Family.COLOR_AINF}
_SOURCE = {Family.VEC_CYCLIC, Family.SU2_REP}


@dataclass(frozen=True)
class Theory:
    family: Family
    n: int | None = None
    root_order: int = 1
    root_exp: int = 0

    def __post_init__(self):
        fam = self.family
        if fam in _INFINITE:
            if self.n is not None:
                raise ValueError(f"{fam.value} takes no size parameter")
            if (self.root_order, self.root_exp) != (1, 0):
                raise ValueError(f"{fam.value} carries no root of unity")
            return
        if self.n is None or self.n < 1:
            raise ValueError(f"{fam.value} needs a positive size parameter")
        if self.root_order < 1:
            raise ValueError("root order must be positive")
        cap = self.root_bound()
        if cap % self.root_order != 0:
            raise ValueError(
                f"root order {self.root_order} must divide {cap} for {fam.value}")
        if not (0 <= self.root_exp < self.root_order):
            raise ValueError("root exponent must be reduced mod the order")

    def root_bound(self) -> int:
        """The group order the root must divide (n, 2n, 2n+1, or m)."""
        fam, n = self.family, self.n
        if fam in (Family.SHADED_AODD, Family.COLOR_AODD):
            return n
        if fam is Family.ARROW_AODD:
            return 2 * n
        if fam is Family.ARROW_AEVEN:
            return 2 * n + 1
        if fam in _SOURCE:
            return n
        raise ValueError(f"{fam.value} has no root bound")

    @property
    def m(self) -> int:
        """Alias for the source-category size parameter."""
        if self.family not in _SOURCE:
            raise ValueError("m is only defined for source categories")
        return self.n

    def root(self) -> Cyclo:
        """The chosen root of unity (sigma / omega / tau / zeta)."""
        return root_power(self.root_order, self.root_exp)

    def is_oriented(self) -> bool:
        return self.family in (Family.ARROW_AODD, Family.ARROW_AEVEN,
                               Family.ARROW_AINF, Family.SU2_REP)

    def is_shaded(self) -> bool:
        return self.family in (Family.SHADED_AODD, Family.SHADED_AINF)

    def is_planar_algebra(self) -> bool:
        """True for the theories the evaluator works in directly."""
        return self.family in _FINITE | _INFINITE

    # -- group size for the van-Kampen / grading group ------------------
    def group_order(self) -> int:
        fam, n = self.family, self.n
        if fam is Family.SHADED_AODD:
            return n          # dihedral D_n parameter
        if fam is Family.COLOR_AODD:
            return n          # dihedral D_n parameter
        if fam is Family.ARROW_AODD:
            return 2 * n      # cyclic Z_2n
        if fam is Family.ARROW_AEVEN:
            return 2 * n + 1  # cyclic Z_2n+1
        raise ValueError(f"{fam.value} has no finite labeling group")

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        out: dict = {"family": self.family.value}
        if self.n is not None:
            out["n"] = self.n
        if self.family not in _INFINITE:
            out["root"] = {"order": self.root_order, "exp": self.root_exp}
        return out

    @staticmethod
    def from_json(obj: dict) -> "Theory":
        if not isinstance(obj, dict) or "family" not in obj:
            raise ValueError("malformed theory: missing family")
        try:
            fam = Family(obj["family"])
        except ValueError:
            raise ValueError(f"unknown family {obj['family']!r}") from None
        root = obj.get("root", {"order": 1, "exp": 0})
        return Theory(fam, obj.get("n"),
                      int(root.get("order", 1)), int(root.get("exp", 0)))


def alphabet(theory: Theory) -> frozenset[Label]:
    fam = theory.family
    if fam in (Family.SHADED_AODD, Family.COLOR_AODD,
               Family.SHADED_AINF, Family.COLOR_AINF):
        return frozenset({Label.RED, Label.BLUE, Label.PLAIN})
    if fam in (Family.ARROW_AODD, Family.ARROW_AEVEN, Family.ARROW_AINF):
        return frozenset({Label.UP, Label.DOWN, Label.PLAIN})
    if fam is Family.VEC_CYCLIC:
        return frozenset({Label.DOT})
    if fam is Family.SU2_REP:
        return frozenset({Label.PLUS, Label.MINUS, Label.PLAIN})
    raise ValueError(fam)


def plain_expansion(theory: Theory) -> tuple[Label, Label]:
    """The two labeled variants a Plain strand decomposes into."""
    if theory.is_oriented():
        return (Label.UP, Label.DOWN) if theory.family is not Family.SU2_REP \
            else (Label.PLUS, Label.MINUS)
    return (Label.RED, Label.BLUE)


def dual_label(label: Label) -> Label:
    """The label seen at the far end of a bent strand."""
    flips = {Label.UP: Label.DOWN, Label.DOWN: Label.UP,
             Label.PLUS: Label.MINUS, Label.MINUS: Label.PLUS}
    return flips.get(label, label)


def box_kinds(theory: Theory) -> tuple[BoxKind, ...]:
    fam = theory.family
    if fam is Family.SHADED_AODD:
        return (BoxKind.U, BoxKind.USTAR, BoxKind.V, BoxKind.VSTAR)
    if fam in (Family.ARROW_AODD, Family.ARROW_AEVEN):
        return (BoxKind.U, BoxKind.USTAR)
    if fam is Family.COLOR_AODD:
        return (BoxKind.V, BoxKind.VSTAR)
    if fam in _INFINITE:
        return ()
    if fam is Family.VEC_CYCLIC:
        return (BoxKind.SCRIPT_U, BoxKind.SCRIPT_USTAR)
    if fam is Family.SU2_REP:
        return (BoxKind.NCAP_PLUS, BoxKind.NCAP_MINUS,
                BoxKind.NCUP_PLUS, BoxKind.NCUP_MINUS)
    raise ValueError(fam)


def _alt(first: Label, second: Label, k: int) -> tuple[Label, ...]:
    return tuple(first if i % 2 == 0 else second for i in range(k))


def box_signature(theory: Theory, kind: BoxKind) -> tuple[tuple[Label, ...], tuple[Label, ...]]:
    """(bottom labels, top labels) at rotation offset 0."""
    if kind not in box_kinds(theory):
        raise ValueError(f"{kind.value} is not a box of {theory.family.value}")
    fam, n = theory.family, theory.n
    if fam is Family.SHADED_AODD or fam is Family.COLOR_AODD:
        bot = _alt(Label.BLUE, Label.RED, n)
        top = _alt(Label.RED, Label.BLUE, n)
        if kind in (BoxKind.U, BoxKind.V):
            return bot, top
        return top, bot
    if fam is Family.ARROW_AODD:
        if kind is BoxKind.U:
            return (Label.UP,) * n, (Label.DOWN,) * n
        return (Label.DOWN,) * n, (Label.UP,) * n
    if fam is Family.ARROW_AEVEN:
        if kind is BoxKind.U:
            return (Label.UP,) * (n + 1), (Label.DOWN,) * n
        return (Label.DOWN,) * n, (Label.UP,) * (n + 1)
    if fam is Family.VEC_CYCLIC:
        if kind is BoxKind.SCRIPT_U:
            return (), (Label.DOT,) * n
        return (Label.DOT,) * n, ()
    if fam is Family.SU2_REP:
        if kind is BoxKind.NCAP_PLUS:
            return (Label.PLUS,) * n, ()
        if kind is BoxKind.NCAP_MINUS:
            return (Label.MINUS,) * n, ()
        if kind is BoxKind.NCUP_PLUS:
            return (), (Label.PLUS,) * n
        return (), (Label.MINUS,) * n
    raise ValueError(fam)


def cyc_signature(theory: Theory, kind: BoxKind) -> tuple[Label, ...]:
    """Leg labels in counterclockwise cyclic order starting bottom-left.

    Cyclic index c corresponds to bottom leg c for c < #bottom, then the
    top legs right-to-left.
    """
    bot, top = box_signature(theory, kind)
    return bot + tuple(reversed(top))


def leg_count(theory: Theory, kind: BoxKind) -> int:
    bot, top = box_signature(theory, kind)
    return len(bot) + len(top)


def kind_adjoint(kind: BoxKind) -> BoxKind:
    pairs = {BoxKind.U: BoxKind.USTAR, BoxKind.V: BoxKind.VSTAR,
             BoxKind.SCRIPT_U: BoxKind.SCRIPT_USTAR,
             BoxKind.NCAP_PLUS: BoxKind.NCUP_PLUS,
             BoxKind.NCAP_MINUS: BoxKind.NCUP_MINUS}
    inv = {v: k for k, v in pairs.items()}
    return pairs.get(kind) or inv[kind]


def star_parity(kind: BoxKind) -> int:
    """Required checkerboard parity of the star-corner region (shaded only)."""
    return 0 if kind in (BoxKind.U, BoxKind.USTAR) else 1


def click_rewrite(theory: Theory, kind: BoxKind, direction: int) -> tuple[BoxKind, Cyclo]:
    """One application of the Fourier transform F (direction=+1) or its
    inverse (direction=-1) to a generator box: (new kind, scalar cost)."""
    if direction not in (+1, -1):
        raise ValueError("direction must be +1 or -1")
    root = theory.root()
    one = Cyclo.one(theory.root_order)
    fam = theory.family
    if fam is Family.SHADED_AODD:
        if direction == +1:
            table = {BoxKind.U: (BoxKind.VSTAR, root),
                     BoxKind.VSTAR: (BoxKind.U, one),
                     BoxKind.USTAR: (BoxKind.V, one),
                     BoxKind.V: (BoxKind.USTAR, root)}
        else:
            table = {BoxKind.U: (BoxKind.VSTAR, one),
                     BoxKind.VSTAR: (BoxKind.U, root.inverse()),
                     BoxKind.USTAR: (BoxKind.V, root.inverse()),
                     BoxKind.V: (BoxKind.USTAR, one)}
        return table[kind]
    if fam in (Family.ARROW_AODD, Family.ARROW_AEVEN):
        scalar = root if direction == +1 else root.inverse()
        return kind, scalar
    if fam is Family.COLOR_AODD:
        if direction == +1:
            table = {BoxKind.V: (BoxKind.VSTAR, root),
                     BoxKind.VSTAR: (BoxKind.V, one)}
        else:
            table = {BoxKind.V: (BoxKind.VSTAR, one),
                     BoxKind.VSTAR: (BoxKind.V, root.inverse())}
        return table[kind]
    raise ValueError(f"{fam.value} boxes have no click relation")
