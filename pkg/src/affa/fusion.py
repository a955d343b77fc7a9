"""Simple objects as strand words: grading, hom dimensions, principal
graphs, Bratteli diagrams, traces, and Gram matrices.

Every simple object is an invertible tensor word in the two strand
generators (P1 = red/up, Q1 = blue/down).  A word's class is its grading
in the cyclic group Z_m of invertible simples, and hom spaces between
words are one-dimensional exactly when the gradings agree.  Oriented
words grade letter by letter (Q1 -> +1, P1 -> -1); checkerboard words
grade by parity pairs, since the shading alternates along the boundary
and swaps the roles of the two colors at odd positions.  Gram matrices
are computed from exhaustive spanning sets: planar diagrams onto the
word built from boundary-to-boundary arcs and generator boxes none of
whose strands touch another box (box-to-box strands always cancel by the
evaluation algorithm).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from affa.cyclotomic import Cyclo
from affa.diagram import Diagram, Morphism, SNK, SRC, Strand, bnd, boxleg, \
    make_strand
from affa.labeling import GroupElement
from affa.theory import (
    Family,
    Label,
    ORIENTED_LABELS,
    Theory,
    box_kinds,
    dual_label,
    leg_count,
    star_parity,
)

_CHECKER = (Family.SHADED_AODD, Family.SHADED_AINF,
            Family.COLOR_AODD, Family.COLOR_AINF)
_ORIENTED = (Family.ARROW_AODD, Family.ARROW_AEVEN, Family.ARROW_AINF)


def _group_params(th: Theory) -> tuple[bool, int]:
    """(grades by parity pairs, order of the simple-class group; 0 means
    the infinite cyclic group)."""
    if th.family in _CHECKER:
        # 2n simple classes: two shading parities times n rotation classes
        return True, (2 * th.n if th.n is not None else 0)
    if th.family in _ORIENTED:
        return False, (th.group_order() if th.n is not None else 0)
    raise ValueError(f"{th.family.value} has no strand grading")


def _strand_labels(th: Theory) -> tuple[Label, Label]:
    """(P1, Q1) as strand labels."""
    if th.family in _CHECKER:
        return Label.RED, Label.BLUE
    return Label.UP, Label.DOWN


def _display_name(label: Label) -> str:
    return {Label.RED: "P1", Label.UP: "P1",
            Label.BLUE: "Q1", Label.DOWN: "Q1",
            Label.PLAIN: "X"}[label]


@dataclass(frozen=True)
class Word:
    """A tensor word in the strand generators (plain strands allowed only
    where a non-simple object makes sense, e.g. traces)."""

    theory: Theory
    labels: tuple[Label, ...]

    def __post_init__(self):
        _group_params(self.theory)
        object.__setattr__(self, "labels", tuple(self.labels))
        allowed = set(_strand_labels(self.theory)) | {Label.PLAIN}
        for l in self.labels:
            if l not in allowed:
                raise ValueError(f"{l.value} is not a strand generator")

    def display(self) -> str:
        if not self.labels:
            return "1"
        return "*".join(_display_name(l) for l in self.labels)

    def dual(self) -> "Word":
        return Word(self.theory,
                    tuple(dual_label(l) for l in reversed(self.labels)))


def grading(w: Word) -> GroupElement:
    """The image of the word in the cyclic group of simple classes."""
    pairs, order = _group_params(w.theory)
    p1, q1 = _strand_labels(w.theory)
    total = 0
    for pos, l in enumerate(w.labels):
        if l is Label.PLAIN:
            raise ValueError("plain strands have no grading")
        step = 1 if l is q1 else -1
        if pairs and pos % 2:
            step = -step
        total += step
    return GroupElement(False, order, total)


def hom_dim(w1: Word, w2: Word) -> int:
    """1 when the words land on the same simple class, else 0."""
    if w1.theory != w2.theory:
        raise ValueError("hom_dim needs words of one theory")
    return 1 if grading(w1) == grading(w2) else 0


def _element_labels(th: Theory, g: GroupElement) -> tuple[Label, ...]:
    """The canonical shortest word with grading g."""
    pairs, _ = _group_params(th)
    p1, q1 = _strand_labels(th)
    e = g.rot
    if g.order and e > g.order - e:
        e -= g.order
    if not pairs:
        return (q1 if e > 0 else p1,) * abs(e)
    # alternating colors: the shading swaps the letters at odd positions
    first, second = (q1, p1) if e > 0 else (p1, q1)
    return tuple(first if t % 2 == 0 else second for t in range(abs(e)))


def simple_decompose(w: Word) -> Word:
    """The canonical representative of the word's simple class."""
    return Word(w.theory, _element_labels(w.theory, grading(w)))


# -- graphs ------------------------------------------------------------------

@dataclass(frozen=True)
class FusionGraph:
    """Vertices are simple classes; edges carry multiplicities."""

    vertices: tuple[str, ...]
    traces: tuple[Fraction, ...]
    edges: tuple[tuple[int, int, int], ...]


def _step(g: GroupElement, delta: int) -> GroupElement:
    return GroupElement(False, g.order, g.rot + delta)


def _class_vertices(th: Theory, radius: int | None):
    """BFS of simple classes under tensoring by the plain strand.  From
    any class the two summands of the strand move it one step either way
    around the cyclic class group."""
    _, order = _group_params(th)
    ident = GroupElement.identity(False, order)
    if order:
        radius = order  # covers the whole finite group
    elif radius is None:
        raise ValueError("infinite families need a radius")
    seen = {ident: 0}
    frontier = [ident]
    elems = [ident]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for delta in (+1, -1):
                u = _step(v, delta)
                if u not in seen:
                    seen[u] = len(elems)
                    elems.append(u)
                    nxt.append(u)
        frontier = nxt
    return elems, seen, bool(order)


def principal_graph(th: Theory, radius: int | None = None) -> FusionGraph:
    """The graph of simple classes under tensoring with the plain strand;
    an affine A cycle for the finite families, a line segment view for the
    infinite ones."""
    elems, index, finite = _class_vertices(th, radius)
    counts: dict[tuple[int, int], int] = {}
    for i, v in enumerate(elems):
        for delta in (+1, -1):
            j = index.get(_step(v, delta))
            if j is None:
                continue  # beyond the requested radius
            a, b = min(i, j), max(i, j)
            counts[(a, b)] = counts.get((a, b), 0) + 1
    edges = tuple(sorted((a, b, c // 2) for (a, b), c in counts.items()))
    if finite:
        # affine A: every vertex has total degree two, and with all traces
        # equal to one the delta = 2 trace formula holds on the nose
        for i in range(len(elems)):
            deg = sum(m for a, b, m in edges if i in (a, b))
            assert deg == 2, "principal graph is not an affine A cycle"
    words = tuple(Word(th, _element_labels(th, v)).display() for v in elems)
    return FusionGraph(words, (Fraction(1),) * len(elems), edges)


def bratteli(th: Theory, rows: int) -> dict:
    """Rows 0..rows of the tensor powers of the plain strand, with edge
    multiplicities and the box-space dimensions (sums of squares)."""
    if rows < 0:
        raise ValueError("rows must be nonnegative")
    _, order = _group_params(th)
    ident = GroupElement.identity(False, order)

    def sort_key(g: GroupElement):
        return g.rot

    current = {ident: 1}
    out_rows = []
    out_edges = []
    dims = []
    for level in range(rows + 1):
        ordered = sorted(current, key=sort_key)
        out_rows.append([
            {"word": Word(th, _element_labels(th, g)).display(),
             "mult": current[g]} for g in ordered])
        dims.append(sum(c * c for c in current.values()))
        if level == rows:
            break
        nxt: dict[GroupElement, int] = {}
        edges: dict[tuple[int, int], int] = {}
        for g in current:
            for delta in (+1, -1):
                h = _step(g, delta)
                nxt[h] = nxt.get(h, 0) + current[g]
        ordered_next = sorted(nxt, key=sort_key)
        pos = {h: j for j, h in enumerate(ordered_next)}
        for i, g in enumerate(ordered):
            for delta in (+1, -1):
                j = pos[_step(g, delta)]
                edges[(i, j)] = edges.get((i, j), 0) + 1
        out_edges.append(sorted((i, j, m) for (i, j), m in edges.items()))
        current = nxt
    return {"rows": out_rows, "edges": out_edges, "dims": dims}


def trace_of_word(w: Word) -> Cyclo:
    """The categorical trace of the identity on the word."""
    from affa.evaluate import eval_closed
    ident = Morphism.identity(w.theory, list(w.labels))
    return eval_closed(ident.trace_close("right"))


# -- Gram matrices -----------------------------------------------------------

def _top_role(label: Label) -> int:
    sign = ORIENTED_LABELS.get(label)
    if sign is None:
        return 0
    return SNK if sign > 0 else SRC


def _arc_strand(word, i: int, j: int) -> Strand | None:
    li, lj = word[i], word[j]
    if ORIENTED_LABELS.get(li) is None:
        if li != lj:
            return None
        return make_strand(bnd("top", i), bnd("top", j), li, 0)
    if li != dual_label(lj):
        return None
    if ORIENTED_LABELS[li] < 0:  # i is the emitting end
        return Strand(bnd("top", i), bnd("top", j), li, +1)
    return Strand(bnd("top", i), bnd("top", j), lj, -1)


def _leg_strand(helper: Diagram, b: int, leg: int, word,
                pos: int) -> Strand | None:
    leg_lab = helper.leg_label(b, leg)
    w = word[pos]
    if ORIENTED_LABELS.get(w) is None:
        if ORIENTED_LABELS.get(leg_lab) is not None or leg_lab != w:
            return None
        return make_strand(boxleg(b, leg), bnd("top", pos), w, 0)
    flow = helper.leg_flow(b, leg)
    want = _top_role(w)
    if flow == want or flow == 0:
        return None
    if flow == SRC:
        return Strand(boxleg(b, leg), bnd("top", pos), leg_lab, +1)
    return Strand(boxleg(b, leg), bnd("top", pos), w, -1)


def _kind_orbits(th: Theory) -> list[tuple]:
    """Box kinds grouped by click orbit."""
    groups: dict[str, list] = {}
    for k in box_kinds(th):
        groups.setdefault(_click_orbit_rep(th, k), []).append(k)
    return [tuple(v) for _, v in sorted(groups.items())]


def _realize_box(th: Theory, word, slots, orbit, cache):
    """One concrete (kind, rot, leg order) attaching a box of the given
    click orbit to the slots, or None.  All realizations are proportional
    by the click relations, so one representative spans their line; in
    shaded families the representative of the canonical shading class is
    picked.  The star-corner parity relative to the outer region depends
    only on the slot positions (the gaps between legs are self-closed,
    hence cross an even number of strands), so the choice is local."""
    mini = tuple(word[s] for s in slots)
    ckey = (orbit[0], mini, slots[0] % 2)
    if ckey in cache:
        return cache[ckey]
    k = len(slots)
    found = None
    for kind in orbit:
        for rot in range(k):
            helper = Diagram(th, (), (), ((kind, rot),), 0, ())
            for shift in range(k):
                for direction in (1, -1):
                    legs = tuple((shift + direction * t) % k
                                 for t in range(k))
                    strands = [_leg_strand(helper, 0, leg, mini, t)
                               for t, leg in enumerate(legs)]
                    if any(s is None for s in strands):
                        continue
                    d = Diagram.make(th, [], list(mini), [(kind, rot)],
                                     strands)
                    if d.validate():
                        continue
                    if th.is_shaded():
                        faces, face_of = d.face_index()
                        parity = d._face_parities(faces, face_of)
                        outer = face_of[bnd("top", k - 1)]
                        star = face_of[d.star_face_endpoint(0)]
                        want = star_parity(kind) ^ (slots[0] % 2)
                        if parity[star] ^ parity[outer] != want:
                            continue
                    found = (kind, rot, legs)
                    break
                if found:
                    break
            if found:
                break
        if found:
            break
    cache[ckey] = found
    return found


def _placements(th: Theory, word, positions: tuple[int, ...],
                budget: int, cache):
    """Non-crossing fillings of the positions by arcs and boxes, one
    placement per attachment topology."""
    if not positions:
        yield []
        return
    i, rest = positions[0], positions[1:]
    for t, j in enumerate(rest):
        inner, outer = rest[:t], rest[t + 1:]
        if _arc_strand(word, i, j) is None:
            continue
        for fill_in in _placements(th, word, inner, budget, cache):
            used = sum(1 for it in fill_in if it[0] == "box")
            for fill_out in _placements(th, word, outer, budget - used,
                                        cache):
                yield [("arc", i, j)] + fill_in + fill_out
    if budget <= 0:
        return
    for orbit in _kind_orbits(th):
        k = leg_count(th, orbit[0])
        if k - 1 > len(rest):
            continue
        for assign in _leg_assignments(k, rest):
            slots = (i,) + assign["points"]
            real = _realize_box(th, word, slots, orbit, cache)
            if real is None:
                continue
            kind, rot, legs = real
            item = ("box", kind, rot, legs, slots)
            for fills in _gap_products(th, word, assign["gaps"],
                                       budget - 1, cache):
                used = sum(1 for it in fills if it[0] == "box")
                for tail_fill in _placements(th, word, assign["tail"],
                                             budget - 1 - used, cache):
                    yield [item] + fills + tail_fill


def _leg_assignments(k: int, rest: tuple[int, ...]):
    """Choices of k-1 further attachment points, with the gaps between
    consecutive points recorded."""
    from itertools import combinations
    for points in combinations(range(len(rest)), k - 1):
        gaps = []
        prev = -1
        for idx in points:
            gaps.append(rest[prev + 1:idx])
            prev = idx
        tail = rest[prev + 1:]
        yield {"points": tuple(rest[idx] for idx in points),
               "gaps": tuple(gaps), "tail": tail}


def _gap_products(th: Theory, word, gaps, budget: int, cache):
    if not gaps:
        yield []
        return
    head, tail = gaps[0], gaps[1:]
    for fill in _placements(th, word, head, budget, cache):
        used = sum(1 for it in fill if it[0] == "box")
        for more in _gap_products(th, word, tail, budget - used, cache):
            yield fill + more


def _canonical_shading(d: Diagram) -> bool:
    """True when every box shades the plane with the outermost boundary
    region unshaded.  The rejected diagrams span the hom space of the
    oppositely shaded boundary object, which shares the strand colors."""
    faces, face_of = d.face_index()
    parity = d._face_parities(faces, face_of)
    outer = face_of[bnd("top", len(d.top) - 1)]
    for b, (kind, _) in enumerate(d.boxes):
        star = face_of[d.star_face_endpoint(b)]
        if parity[star] ^ parity[outer] != star_parity(kind):
            return False
    return True


def _click_orbit_rep(th: Theory, kind) -> str:
    """Canonical name of the click orbit of a box kind.  Box variants in
    one orbit at the same attachment slots differ by click relations, so
    they span the same line."""
    from affa.theory import click_rewrite
    seen = {kind}
    k = kind
    while True:
        k, _ = click_rewrite(th, k, +1)
        if k in seen:
            break
        seen.add(k)
    return min(x.value for x in seen)


def span_diagrams(th: Theory, word, max_boxes: int) -> list[Diagram]:
    """Spanning diagrams from nothing to the word whose boxes touch only
    the boundary: one representative per attachment topology (arcs, and
    per box its click orbit and boundary slots).  In shaded families only
    the representatives shading the outer region unshaded are kept."""
    word = tuple(word)
    results = []
    seen_keys = set()
    orbit = {k: _click_orbit_rep(th, k) for k in box_kinds(th)}
    cache: dict = {}
    for placement in _placements(th, word, tuple(range(len(word))),
                                 max_boxes, cache):
        key_arcs = []
        key_boxes = []
        boxes = []
        strands = []
        ok = True
        for item in placement:
            if item[0] == "arc":
                key_arcs.append((item[1], item[2]))
                strands.append(_arc_strand(word, item[1], item[2]))
                continue
            _, kind, rot, legs, slots = item
            key_boxes.append((orbit[kind], slots))
            b = len(boxes)
            boxes.append((kind, rot))
            helper = Diagram(th, (), (), ((kind, rot),), 0, ())
            for leg, pos in zip(legs, slots):
                s = _leg_strand(helper, 0, leg, word, pos)
                if s is None:
                    ok = False
                    break
                strands.append(Strand(boxleg(b, leg), s.b, s.label, s.dir))
            if not ok:
                break
        if not ok:
            continue
        key = (tuple(sorted(key_arcs)), tuple(sorted(key_boxes)))
        if key in seen_keys:
            continue
        d = Diagram.make(th, [], list(word), boxes, strands)
        if d.validate():
            continue
        if d.boxes and th.is_shaded() and not _canonical_shading(d):
            continue
        seen_keys.add(key)
        results.append(d)
    return results


@dataclass(frozen=True)
class GramResult:
    matrix: tuple[tuple[Cyclo, ...], ...]
    rank: int
    psd: bool
    size: int


def _rank(matrix) -> int:
    rows = [list(r) for r in matrix]
    n = len(rows)
    rank = 0
    col = 0
    width = n and len(rows[0])
    while rank < n and col < width:
        pivot = None
        for r in range(rank, n):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(n):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _positive_real(c: Cyclo) -> bool:
    if c.is_rational():
        return c.as_fraction() > 0
    z = c.approx()
    assert abs(z.imag) < 1e-9, "pivot is not real"
    assert abs(z.real) > 1e-9, "pivot sign numerically undecidable"
    return z.real > 0


def _is_psd(matrix) -> bool:
    m = [list(r) for r in matrix]
    live = list(range(len(m)))
    while live:
        pivot = None
        for i in live:
            if not m[i][i].is_zero():
                pivot = i
                break
        if pivot is None:
            # zero diagonal: PSD forces the whole remainder to vanish
            return all(m[i][j].is_zero() for i in live for j in live)
        if not _positive_real(m[pivot][pivot]):
            return False
        live.remove(pivot)
        d = m[pivot][pivot].inverse()
        for i in live:
            for j in live:
                m[i][j] = m[i][j] - m[i][pivot] * d * m[pivot][j]
    return True


def gram_matrix(w: Word, max_boxes: int) -> GramResult:
    """Gram matrix of the spanning set of Hom(1, w), its exact rank, and
    positive semidefiniteness."""
    from affa.evaluate import inner_product
    if Label.PLAIN in w.labels:
        raise ValueError("gram_matrix needs a concrete word")
    basis = [Morphism.from_diagram(d)
             for d in span_diagrams(w.theory, w.labels, max_boxes)]
    n = len(basis)
    matrix = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            val = inner_product(basis[i], basis[j])
            matrix[i][j] = val
            matrix[j][i] = val.conj()
    grid = tuple(tuple(row) for row in matrix)
    for i in range(n):
        for j in range(n):
            assert grid[i][j] == grid[j][i].conj(), "Gram not Hermitian"
    return GramResult(grid, _rank(grid), _is_psd(grid), n)
