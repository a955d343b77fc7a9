"""Planar diagrams as combinatorial maps, and formal linear combinations.

A Diagram is a rotation system: boxes with counterclockwise leg orders,
degree-2 anchor vertices hosting free loops, and (for open diagrams) a
single collapsed boundary vertex.  Strands are a perfect matching on
endpoints.  Planarity is the genus-0 Euler check per connected
component, so equality of diagrams is decidable structure equality and
isotopy invariance holds by construction.

Endpoints are tuples:
    ("bnd", "bottom"|"top", i)   boundary point
    ("box", b, leg)              physical leg (ccw from bottom-left)
    ("anchor", a, s)             anchor slot s in {0, 1}

Orientation is carried by labels: Up/Plus flow upward through the
boundary, Down/Minus downward.  A strand's `dir` is +1 when the flow
runs from endpoint `a` to endpoint `b`, -1 the other way, 0 when the
label is unoriented.  The serialized label of an oriented strand is the
object presented at its source endpoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from affa.cyclotomic import Cyclo
from affa.theory import (
    BoxKind,
    Label,
    ORIENTED_LABELS,
    Theory,
    alphabet,
    box_kinds,
    box_signature,
    cyc_signature,
    dual_label,
    kind_adjoint,
    leg_count,
    plain_expansion,
    star_parity,
)

Endpoint = tuple

SRC, SNK = +1, -1


def bnd(side: str, i: int) -> Endpoint:
    return ("bnd", side, i)


def boxleg(b: int, leg: int) -> Endpoint:
    return ("box", b, leg)


def anchor(a: int, s: int) -> Endpoint:
    return ("anchor", a, s)


def _ep_key(e: Endpoint):
    if e[0] == "bnd":
        return (0 if e[1] == "bottom" else 3, 0, e[2])
    if e[0] == "box":
        return (1, e[1], e[2])
    if e[0] == "anchor":
        return (2, e[1], e[2])
    # transient interface nodes used while gluing
    return (4, 0 if e[1] in ("b", "bot") else 1, e[2])


@dataclass(frozen=True)
class Strand:
    a: Endpoint
    b: Endpoint
    label: Label
    dir: int = 0  # +1: flow a->b, -1: flow b->a, 0: unoriented

    def __post_init__(self):
        if _ep_key(self.a) > _ep_key(self.b):
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)
            if self.dir:
                object.__setattr__(self, "dir", -self.dir)

    def other(self, e: Endpoint) -> Endpoint:
        return self.b if e == self.a else self.a

    def flow_at(self, e: Endpoint) -> int:
        """SRC if the flow starts at e, SNK if it ends there, 0 unoriented."""
        if not self.dir:
            return 0
        if e == self.a:
            return SRC if self.dir == +1 else SNK
        return SNK if self.dir == +1 else SRC


def make_strand(a: Endpoint, b: Endpoint, label: Label, dir: int = 0) -> Strand:
    return Strand(a, b, label, dir)


def _canonical_box_order(theory: Theory,
                         bottom: tuple[Label, ...],
                         top: tuple[Label, ...],
                         boxes: tuple[tuple[BoxKind, int], ...],
                         strands: Sequence[Strand]) -> list[int] | None:
    """Box numbering by a canonical traversal of the rotation system, so
    structurally equal diagrams agree regardless of input box order.
    Returns the old indices in their new order, or None when the structure
    is not traversable (left for validate to reject)."""
    nb = len(boxes)
    if nb <= 1:
        return list(range(nb))
    emap: dict[Endpoint, Strand] = {}
    for s in strands:
        if s.a in emap or s.b in emap:
            return None
        emap[s.a] = s
        emap[s.b] = s

    def rotation(v):
        if v[0] == "bnd":
            return ([bnd("top", j) for j in range(len(top))]
                    + [bnd("bottom", i) for i in reversed(range(len(bottom)))])
        if v[0] == "anchor":
            return [anchor(v[1], 0), anchor(v[1], 1)]
        kind, _ = boxes[v[1]]
        return [boxleg(v[1], c) for c in range(leg_count(theory, kind))]

    def vertex_of(e):
        return ("bnd",) if e[0] == "bnd" else (e[0], e[1])

    def traverse(root, entry):
        """Breadth-first over vertices, scanning each rotation from the
        entry endpoint; encoding is invariant under box renumbering."""
        index = {root: 0}
        order = [root[1]] if root[0] == "box" else []
        enc = []
        queue = [(root, entry)]
        qi = 0
        while qi < len(queue):
            v, ent = queue[qi]
            qi += 1
            rot = rotation(v)
            if v[0] == "box":
                kind, r = boxes[v[1]]
                enc.append(("v", kind.value, r))
            else:
                enc.append(("v", v[0]))
            start = rot.index(ent) if ent is not None else 0
            for t in range(len(rot)):
                e = rot[(start + t) % len(rot)]
                s = emap.get(e)
                if s is None:
                    return None
                o = s.other(e)
                tv = vertex_of(o)
                if tv not in index:
                    index[tv] = len(index)
                    if tv[0] == "box":
                        order.append(tv[1])
                    queue.append((tv, o))
                enc.append(("e", s.label.value, s.flow_at(e),
                            index[tv], o[2]))
        return tuple(enc), order

    placed: list[int] = []
    if bottom or top:
        got = traverse(("bnd",), None)
        if got is None:
            return None
        placed.extend(got[1])
    remaining = [i for i in range(nb) if i not in set(placed)]
    comps = []
    while remaining:
        probe = traverse(("box", remaining[0]), None)
        if probe is None:
            return None
        comp = probe[1]
        key = min((boxes[i][0].value, boxes[i][1]) for i in comp)
        best = None
        for i in comp:
            if (boxes[i][0].value, boxes[i][1]) != key:
                continue
            for leg in range(leg_count(theory, boxes[i][0])):
                got = traverse(("box", i), boxleg(i, leg))
                if got is None:
                    return None
                if best is None or got[0] < best[0]:
                    best = got
        comps.append(best)
        gone = set(comp)
        remaining = [i for i in remaining if i not in gone]
    comps.sort(key=lambda x: x[0])
    for _, order in comps:
        placed.extend(order)
    if sorted(placed) != list(range(nb)):
        return None
    return placed


def _object_at(theory: Theory, boxes: Sequence[tuple[BoxKind, int]],
               e: Endpoint, role: int) -> Label | None:
    """Oriented object presented at endpoint e by a strand whose flow role
    there is `role`; None when unconstrained (anchors)."""
    if e[0] == "bnd":
        up, down = plain_expansion(theory)
        if e[1] == "bottom":
            return up if role == SRC else down
        return up if role == SNK else down
    if e[0] == "box":
        kind, rot = boxes[e[1]]
        sig = cyc_signature(theory, kind)
        return sig[(e[2] - rot) % len(sig)]
    return None


@dataclass(frozen=True)
class Diagram:
    theory: Theory
    bottom: tuple[Label, ...]
    top: tuple[Label, ...]
    boxes: tuple[tuple[BoxKind, int], ...]
    n_anchors: int
    strands: tuple[Strand, ...]

    @staticmethod
    def make(theory: Theory,
             bottom: Sequence[Label],
             top: Sequence[Label],
             boxes: Sequence[tuple[BoxKind, int]],
             strands: Iterable[Strand],
             n_anchors: int = 0) -> "Diagram":
        """Canonical constructor: normalizes box rotations mod leg count,
        renumbers anchors deterministically, canonicalizes loop strands,
        sorts strands."""
        boxes = tuple((k, r % leg_count(theory, k)) for k, r in boxes)
        strands = list(strands)
        # Canonicalize anchor loops: flow always slot 0 -> slot 1.
        for i, s in enumerate(strands):
            if s.a[0] == "anchor" and s.b[0] == "anchor" and s.dir == -1:
                strands[i] = Strand(s.a, s.b, dual_label(s.label), +1)
        # Renumber anchors deterministically by (label, dir, old index).
        loops = sorted((s for s in strands if s.a[0] == "anchor"),
                       key=lambda s: (s.label.value, s.dir, s.a[1]))
        remap: dict[int, int] = {}
        for s in loops:
            if s.a[1] not in remap:
                remap[s.a[1]] = len(remap)
        out = []
        for s in strands:
            ea = anchor(remap[s.a[1]], s.a[2]) if s.a[0] == "anchor" else s.a
            eb = anchor(remap[s.b[1]], s.b[2]) if s.b[0] == "anchor" else s.b
            out.append(Strand(ea, eb, s.label, s.dir)
                       if (ea, eb) != (s.a, s.b) else s)
        order = _canonical_box_order(theory, tuple(bottom), tuple(top),
                                     boxes, out)
        if order is not None and order != list(range(len(boxes))):
            old_to_new = {old: new for new, old in enumerate(order)}
            boxes = tuple(boxes[old] for old in order)
            out = [Strand(
                boxleg(old_to_new[s.a[1]], s.a[2]) if s.a[0] == "box" else s.a,
                boxleg(old_to_new[s.b[1]], s.b[2]) if s.b[0] == "box" else s.b,
                s.label, s.dir) for s in out]
        out.sort(key=lambda s: (_ep_key(s.a), _ep_key(s.b)))
        return Diagram(theory, tuple(bottom), tuple(top), boxes,
                       len(remap) if remap else n_anchors, tuple(out))

    # -- structural helpers -------------------------------------------
    def leg_label(self, b: int, leg: int) -> Label:
        kind, rot = self.boxes[b]
        sig = cyc_signature(self.theory, kind)
        return sig[(leg - rot) % len(sig)]

    def leg_flow(self, b: int, leg: int) -> int:
        """SRC if the strand at this leg flows out of the box, SNK into it."""
        kind, rot = self.boxes[b]
        sig = cyc_signature(self.theory, kind)
        k = len(sig)
        c = (leg - rot) % k
        sign = ORIENTED_LABELS.get(sig[c])
        if sign is None:
            return 0
        p = len(box_signature(self.theory, kind)[0])
        into_box = (sign > 0) == (c < p)
        return SNK if into_box else SRC

    def endpoint_map(self) -> dict[Endpoint, Strand]:
        out: dict[Endpoint, Strand] = {}
        for s in self.strands:
            for e in (s.a, s.b):
                if e in out:
                    raise ValueError(f"endpoint {e} used twice")
                out[e] = s
        return out

    def is_closed(self) -> bool:
        return not self.bottom and not self.top

    # -- rotation system ------------------------------------------------
    def vertices(self) -> list[tuple]:
        vs: list[tuple] = []
        if self.bottom or self.top:
            vs.append(("bnd",))
        vs.extend(("box", i) for i in range(len(self.boxes)))
        vs.extend(("anchor", i) for i in range(self.n_anchors))
        return vs

    def rotation(self, v: tuple) -> list[Endpoint]:
        """Counterclockwise endpoint order at vertex v (all vertices viewed
        from the same side of the sphere; the collapsed boundary vertex
        sits at infinity, hence runs the square boundary clockwise)."""
        if v[0] == "bnd":
            return ([bnd("top", j) for j in range(len(self.top))]
                    + [bnd("bottom", i)
                       for i in reversed(range(len(self.bottom)))])
        if v[0] == "box":
            kind, _ = self.boxes[v[1]]
            return [boxleg(v[1], c)
                    for c in range(leg_count(self.theory, kind))]
        return [anchor(v[1], 0), anchor(v[1], 1)]

    def vertex_of(self, e: Endpoint) -> tuple:
        if e[0] == "bnd":
            return ("bnd",)
        return (e[0], e[1])

    def faces(self) -> list[list[Endpoint]]:
        """Face orbits of the rotation system.  Each face is the cyclic list
        of endpoints it sweeps; every endpoint lies in exactly one face."""
        emap = self.endpoint_map()
        succ: dict[Endpoint, Endpoint] = {}
        for v in self.vertices():
            rot = self.rotation(v)
            for i, e in enumerate(rot):
                succ[e] = rot[(i + 1) % len(rot)]
        faces = []
        seen: set[Endpoint] = set()
        for e0 in sorted(succ, key=_ep_key):
            if e0 in seen:
                continue
            face = []
            e = e0
            while True:
                face.append(e)
                seen.add(e)
                e = succ[emap[e].other(e)]
                if e == e0:
                    break
            faces.append(face)
        return faces

    def face_index(self) -> tuple[list[list[Endpoint]], dict[Endpoint, int]]:
        faces = self.faces()
        return faces, {e: fi for fi, f in enumerate(faces) for e in f}

    def components(self) -> list[set[tuple]]:
        """Connected components as sets of vertices."""
        parent: dict[tuple, tuple] = {v: v for v in self.vertices()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.strands:
            ra, rb = find(self.vertex_of(s.a)), find(self.vertex_of(s.b))
            if ra != rb:
                parent[ra] = rb
        groups: dict[tuple, set[tuple]] = {}
        for v in parent:
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def star_face_endpoint(self, b: int) -> Endpoint:
        """The endpoint whose face corner is the star corner of box b
        (ccw between legs rot-1 and rot)."""
        _, rot = self.boxes[b]
        return boxleg(b, rot)

    # -- validation -------------------------------------------------------
    def validate(self) -> list[str]:
        errors: list[str] = []
        th = self.theory
        alpha = alphabet(th)
        for lab in (*self.bottom, *self.top):
            if lab not in alpha:
                errors.append(f"boundary label {lab.value} not in alphabet")
        legal = box_kinds(th)
        for i, (kind, rot) in enumerate(self.boxes):
            if kind not in legal:
                return errors + [f"box {i}: kind {kind.value} illegal here"]
            if not (0 <= rot < leg_count(th, kind)):
                errors.append(f"box {i}: rotation {rot} out of range")
        try:
            emap = self.endpoint_map()
        except ValueError as exc:
            return errors + [str(exc)]
        expected: set[Endpoint] = set()
        expected.update(bnd("bottom", i) for i in range(len(self.bottom)))
        expected.update(bnd("top", i) for i in range(len(self.top)))
        for i, (kind, _) in enumerate(self.boxes):
            expected.update(boxleg(i, c) for c in range(leg_count(th, kind)))
        expected.update(anchor(i, s) for i in range(self.n_anchors)
                        for s in (0, 1))
        if set(emap) != expected:
            missing = sorted(expected - set(emap), key=_ep_key)
            extra = sorted(set(emap) - expected, key=_ep_key)
            if missing:
                errors.append(f"uncovered endpoints: {missing[:4]}")
            if extra:
                errors.append(f"stray endpoints: {extra[:4]}")
            return errors
        for i in range(self.n_anchors):
            s = emap[anchor(i, 0)]
            if s is not emap[anchor(i, 1)] or s.a != anchor(i, 0):
                errors.append(f"anchor {i} is not a single loop strand")
        for s in self.strands:
            errors.extend(self._check_strand(s))
        if errors:
            return errors
        # Planarity: genus 0 per connected component.
        faces, face_of = self.face_index()
        for comp in self.components():
            es = {s for s in self.strands if self.vertex_of(s.a) in comp}
            if not es:
                continue
            fs = {face_of[s.a] for s in es} | {face_of[s.b] for s in es}
            if len(comp) - len(es) + len(fs) != 2:
                errors.append(f"non-planar component: V={len(comp)} "
                              f"E={len(es)} F={len(fs)}")
        if errors:
            return errors
        if th.is_shaded() and self.boxes:
            if not self._shading_consistent(faces, face_of):
                errors.append("inconsistent checkerboard shading at boxes")
        return errors

    def _check_strand(self, s: Strand) -> list[str]:
        th = self.theory
        errors = []
        if s.label not in alphabet(th):
            return [f"strand label {s.label.value} not in alphabet"]
        sign = ORIENTED_LABELS.get(s.label)
        if s.label is Label.PLAIN:
            if s.dir:
                errors.append("plain strand cannot carry a direction")
            for e in (s.a, s.b):
                if e[0] == "box":
                    errors.append("plain strand cannot end on a box leg")
                elif e[0] == "bnd" and self._bnd_label(e) is not Label.PLAIN:
                    errors.append("plain strand at a labeled boundary point")
            return errors
        if sign is None:
            # Unoriented concrete label: must equal both endpoint labels.
            if s.dir:
                errors.append(f"{s.label.value} strand cannot be directed")
            for e in (s.a, s.b):
                exp = self._endpoint_label(e)
                if exp is not None and exp is not Label.PLAIN and exp != s.label:
                    errors.append(f"strand label {s.label.value} != endpoint "
                                  f"label {exp.value} at {e}")
            return errors
        # Oriented strand: one source, one sink; label = object at source.
        if s.dir not in (+1, -1):
            return [f"oriented strand needs a direction: {s}"]
        for e in (s.a, s.b):
            need = self._endpoint_flow(e)
            if need and need != s.flow_at(e):
                errors.append(f"flow disagreement at {e}")
        src = s.a if s.dir == +1 else s.b
        obj = _object_at(th, self.boxes, src, SRC)
        if obj is not None and obj != s.label:
            errors.append(
                f"strand label {s.label.value} != source object {obj.value}")
        return errors

    def _bnd_label(self, e: Endpoint) -> Label:
        return (self.bottom if e[1] == "bottom" else self.top)[e[2]]

    def _endpoint_label(self, e: Endpoint) -> Label | None:
        if e[0] == "bnd":
            return self._bnd_label(e)
        if e[0] == "box":
            return self.leg_label(e[1], e[2])
        return None

    def _endpoint_flow(self, e: Endpoint) -> int:
        """Required flow role at e (SRC/SNK), or 0 if unconstrained."""
        if e[0] == "box":
            return self.leg_flow(e[1], e[2])
        if e[0] == "bnd":
            sign = ORIENTED_LABELS.get(self._bnd_label(e))
            if sign is None:
                return 0
            upward = sign > 0
            if e[1] == "bottom":
                return SRC if upward else SNK
            return SNK if upward else SRC
        return 0

    def _shading_consistent(self, faces, face_of) -> bool:
        """Exists a checkerboard parity per component matching all boxes."""
        parity = self._face_parities(faces, face_of)
        comp_of_vertex = {}
        for ci, comp in enumerate(self.components()):
            for v in comp:
                comp_of_vertex[v] = ci
        required: dict[int, int] = {}
        for b, (kind, _) in enumerate(self.boxes):
            f = face_of[self.star_face_endpoint(b)]
            val = parity[f] ^ star_parity(kind)
            ci = comp_of_vertex[("box", b)]
            if required.setdefault(ci, val) != val:
                return False
        return True

    def _face_parities(self, faces, face_of) -> list[int]:
        """2-coloring of faces (parity flips across every strand).  Always
        consistent: all vertex degrees are even, so face cycles are even."""
        adj: dict[int, set[int]] = {i: set() for i in range(len(faces))}
        for s in self.strands:
            fa, fb = face_of[s.a], face_of[s.b]
            adj[fa].add(fb)
            adj[fb].add(fa)
        parity = [-1] * len(faces)
        for start in range(len(faces)):
            if parity[start] != -1:
                continue
            parity[start] = 0
            stack = [start]
            while stack:
                f = stack.pop()
                for g in adj[f]:
                    if parity[g] == -1:
                        parity[g] = parity[f] ^ 1
                        stack.append(g)
        return parity

    # -- serialization -----------------------------------------------------
    def to_json(self, coeff: Cyclo | None = None) -> dict:
        def ep(e):
            if e[0] == "bnd":
                return {"bnd": e[1], "i": e[2]}
            if e[0] == "box":
                return {"box": e[1], "leg": e[2]}
            return {"anchor": e[1], "side": e[2]}

        emap = self.endpoint_map()
        strand_ids = {id(s): i for i, s in enumerate(self.strands)}
        embedding = {}
        for v in self.vertices():
            key = v[0] if v[0] == "bnd" else f"{v[0]}{v[1]}"
            embedding[key] = [strand_ids[id(emap[e])]
                              for e in self.rotation(v)]
        out = {
            "theory": self.theory.to_json(),
            "bottom": [l.value for l in self.bottom],
            "top": [l.value for l in self.top],
            "boxes": [{"kind": k.value, "rot": r} for k, r in self.boxes],
            "strands": [{"a": ep(s.a), "b": ep(s.b), "label": s.label.value,
                         "dir": s.dir} for s in self.strands],
            "anchors": self.n_anchors,
            "embedding": embedding,
        }
        if coeff is not None:
            out["coeff"] = coeff.to_json()
        return out

    @staticmethod
    def from_json(obj: dict) -> "Diagram":
        if not isinstance(obj, dict):
            raise ValueError("diagram term must be an object")
        if "theory" not in obj:
            raise ValueError("missing theory")
        th = Theory.from_json(obj["theory"])

        def ep(e):
            if "bnd" in e:
                if e["bnd"] not in ("bottom", "top"):
                    raise ValueError(f"bad boundary side {e['bnd']!r}")
                return bnd(e["bnd"], int(e["i"]))
            if "box" in e:
                return boxleg(int(e["box"]), int(e["leg"]))
            if "anchor" in e:
                return anchor(int(e["anchor"]), int(e["side"]))
            raise ValueError(f"malformed endpoint {e!r}")

        try:
            bottom = [Label(x) for x in obj.get("bottom", [])]
            top = [Label(x) for x in obj.get("top", [])]
            boxes = [(BoxKind(b["kind"]), int(b.get("rot", 0)))
                     for b in obj.get("boxes", [])]
            strands = [make_strand(ep(s["a"]), ep(s["b"]), Label(s["label"]),
                                   int(s.get("dir", 0)))
                       for s in obj.get("strands", [])]
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"malformed diagram: {exc}") from None
        d = Diagram.make(th, bottom, top, boxes, strands,
                         int(obj.get("anchors", 0)))
        errs = d.validate()
        if errs:
            raise ValueError("invalid diagram: " + "; ".join(errs))
        return d


class Morphism:
    """A formal scalar-linear combination of diagrams sharing a boundary."""

    __slots__ = ("theory", "bottom", "top", "terms")

    def __init__(self, theory: Theory, bottom: Sequence[Label],
                 top: Sequence[Label],
                 terms: Mapping[Diagram, Cyclo] | None = None):
        self.theory = theory
        self.bottom = tuple(bottom)
        self.top = tuple(top)
        clean: dict[Diagram, Cyclo] = {}
        for d, c in (terms or {}).items():
            if (d.theory, d.bottom, d.top) != (theory, self.bottom, self.top):
                raise ValueError("term boundary does not match morphism")
            if not c.is_zero():
                clean[d] = clean[d] + c if d in clean else c
        self.terms = {d: c for d, c in clean.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(theory: Theory, bottom: Sequence[Label],
             top: Sequence[Label]) -> "Morphism":
        return Morphism(theory, bottom, top, {})

    @staticmethod
    def from_diagram(d: Diagram, coeff: Cyclo | None = None) -> "Morphism":
        c = coeff if coeff is not None else Cyclo.one()
        return Morphism(d.theory, d.bottom, d.top, {d: c})

    @staticmethod
    def identity(theory: Theory, word: Sequence[Label]) -> "Morphism":
        strands = []
        for i, lab in enumerate(word):
            sign = ORIENTED_LABELS.get(lab)
            dir = 0 if sign is None else (+1 if sign > 0 else -1)
            strands.append(make_strand(bnd("bottom", i), bnd("top", i),
                                       lab, dir))
        return Morphism.from_diagram(Diagram.make(theory, word, word, [],
                                                  strands))

    @staticmethod
    def generator(theory: Theory, kind: BoxKind, rot: int = 0) -> "Morphism":
        """The bare generator box at the given rotation offset, legs running
        straight to the boundary."""
        k = leg_count(theory, kind)
        rot %= k
        sig = cyc_signature(theory, kind)
        p = len(box_signature(theory, kind)[0])
        q = k - p
        box = [(kind, rot)]
        bottom: list[Label] = []
        top: list[Label] = []
        strands = []
        for c in range(p):
            lab = sig[(c - rot) % k]
            if lab not in ORIENTED_LABELS:
                bottom.append(lab)
                strands.append(Strand(bnd("bottom", c), boxleg(0, c), lab, 0))
                continue
            # flow at the leg is intrinsic; the boundary shows the object
            # matching that flow seen from below
            helper = Diagram(theory, (), (), tuple(box), 0, ())
            flow = helper.leg_flow(0, c)
            if flow == SNK:   # into the box from below
                obj = _object_at(theory, box, bnd("bottom", c), SRC)
                bottom.append(obj)
                strands.append(Strand(bnd("bottom", c), boxleg(0, c),
                                      obj, +1))
            else:             # out of the box, downward
                bottom.append(_object_at(theory, box, bnd("bottom", c), SNK))
                strands.append(Strand(bnd("bottom", c), boxleg(0, c),
                                      lab, -1))
        for j in range(q):
            leg = p + (q - 1 - j)
            lab = sig[(leg - rot) % k]
            if lab not in ORIENTED_LABELS:
                top.append(lab)
                strands.append(Strand(boxleg(0, leg), bnd("top", j), lab, 0))
                continue
            helper = Diagram(theory, (), (), tuple(box), 0, ())
            flow = helper.leg_flow(0, leg)
            if flow == SRC:   # out of the box, upward
                top.append(_object_at(theory, box, bnd("top", j), SNK))
                strands.append(Strand(boxleg(0, leg), bnd("top", j),
                                      lab, +1))
            else:             # into the box from above
                obj = _object_at(theory, box, bnd("top", j), SRC)
                top.append(obj)
                strands.append(Strand(boxleg(0, leg), bnd("top", j),
                                      obj, -1))
        d = Diagram.make(theory, bottom, top, box, strands)
        return Morphism.from_diagram(d)

    @staticmethod
    def cup(theory: Theory, label: Label) -> "Morphism":
        """The arc from nothing to [label, dual(label)]; for unoriented
        labels both new points carry `label`."""
        sign = ORIENTED_LABELS.get(label)
        if sign is None:
            s = make_strand(bnd("top", 0), bnd("top", 1), label, 0)
            word = [label, label]
        elif sign > 0:
            # flow enters at the right (downward) end and exits at the left
            s = Strand(bnd("top", 0), bnd("top", 1), dual_label(label), -1)
            word = [label, dual_label(label)]
        else:
            s = Strand(bnd("top", 0), bnd("top", 1), label, +1)
            word = [label, dual_label(label)]
        return Morphism.from_diagram(Diagram.make(theory, [], word, [], [s]))

    @staticmethod
    def cap(theory: Theory, label: Label) -> "Morphism":
        """The arc from [label, dual(label)] to nothing."""
        sign = ORIENTED_LABELS.get(label)
        if sign is None:
            s = make_strand(bnd("bottom", 0), bnd("bottom", 1), label, 0)
            word = [label, label]
        elif sign > 0:
            s = Strand(bnd("bottom", 0), bnd("bottom", 1), label, +1)
            word = [label, dual_label(label)]
        else:
            s = Strand(bnd("bottom", 0), bnd("bottom", 1),
                       dual_label(label), -1)
            word = [label, dual_label(label)]
        return Morphism.from_diagram(Diagram.make(theory, word, [], [], [s]))

    @staticmethod
    def loop(theory: Theory, label: Label) -> "Morphism":
        """A single free loop on a fresh anchor."""
        dir = +1 if label in ORIENTED_LABELS else 0
        s = make_strand(anchor(0, 0), anchor(0, 1), label, dir)
        d = Diagram.make(theory, [], [], [], [s], n_anchors=1)
        return Morphism.from_diagram(d)

    # -- linear structure -------------------------------------------------
    def _check_same_boundary(self, other: "Morphism"):
        if (self.theory, self.bottom, self.top) != \
                (other.theory, other.bottom, other.top):
            raise ValueError("boundary signature mismatch")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_same_boundary(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return Morphism(self.theory, self.bottom, self.top, terms)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + other.scale(-1)

    def scale(self, c: Cyclo | int | Fraction) -> "Morphism":
        if not isinstance(c, Cyclo):
            c = Cyclo.from_fraction(c)
        return Morphism(self.theory, self.bottom, self.top,
                        {d: x * c for d, x in self.terms.items()})

    def __rmul__(self, c) -> "Morphism":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        if (self.theory, self.bottom, self.top) != \
                (other.theory, other.bottom, other.top):
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[d] == other.terms[d] for d in self.terms)

    __hash__ = None

    def __repr__(self):
        return (f"Morphism({self.theory.family.value}, "
                f"{[l.value for l in self.bottom]}->"
                f"{[l.value for l in self.top]}, {len(self.terms)} terms)")

    # -- diagrammatic operations -------------------------------------------
    def tensor(self, other: "Morphism") -> "Morphism":
        if self.theory != other.theory:
            raise ValueError("theory mismatch in tensor")
        out: dict[Diagram, Cyclo] = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                d = _tensor_diagrams(da, db)
                c = ca * cb
                out[d] = out[d] + c if d in out else c
        return Morphism(self.theory, self.bottom + other.bottom,
                        self.top + other.top, out)

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other: glue other's top to self's bottom."""
        if self.theory != other.theory:
            raise ValueError("theory mismatch in compose")
        if len(self.bottom) != len(other.top):
            raise ValueError("compose length mismatch")
        out: dict[Diagram, Cyclo] = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                d = _glue(da, db)
                if d is None:
                    continue
                c = ca * cb
                out[d] = out[d] + c if d in out else c
        return Morphism(self.theory, other.bottom, self.top, out)

    def adjoint(self) -> "Morphism":
        out: dict[Diagram, Cyclo] = {}
        for d, c in self.terms.items():
            da = _adjoint_diagram(d)
            cc = c.conj()
            out[da] = out[da] + cc if da in out else cc
        return Morphism(self.theory, self.top, self.bottom, out)

    def click(self, steps: int) -> "Morphism":
        m = self
        step = 1 if steps >= 0 else -1
        for _ in range(abs(steps)):
            newb, newt, _ = _click_boundary(m.bottom, m.top, step)
            out: dict[Diagram, Cyclo] = {}
            for d, c in m.terms.items():
                dd = _click_diagram(d, step)
                out[dd] = out[dd] + c if dd in out else c
            m = Morphism(m.theory, newb, newt, out)
        return m

    def trace_close(self, side: str = "right") -> "Morphism":
        if self.bottom != self.top:
            raise ValueError("trace requires equal bottom and top words")
        if side not in ("left", "right"):
            raise ValueError("side must be left or right")
        # On the sphere the two closures are isotopic, and the engine works
        # with sphere maps (these theories are spherical), so both sides
        # yield the same combinatorial map.
        out: dict[Diagram, Cyclo] = {}
        for d, c in self.terms.items():
            dd = _trace_diagram(d)
            if dd is None:
                continue
            out[dd] = out[dd] + c if dd in out else c
        return Morphism(self.theory, [], [], out)

    def expand_plain(self) -> "Morphism":
        out: dict[Diagram, Cyclo] = {}
        for d, c in self.terms.items():
            for dd in _expand_plain_diagram(d):
                out[dd] = out[dd] + c if dd in out else c
        return Morphism(self.theory, self.bottom, self.top, out)

    # -- serialization -----------------------------------------------------
    def serialize(self) -> bytes:
        terms = [d.to_json(c) for d, c in sorted(
            self.terms.items(), key=lambda kv: repr(kv[0]))]
        doc = {"theory": self.theory.to_json(),
               "bottom": [l.value for l in self.bottom],
               "top": [l.value for l in self.top],
               "terms": terms}
        return json.dumps(doc, indent=1).encode()

    @staticmethod
    def parse(data: bytes | str) -> "Morphism":
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ValueError(
                f"bad JSON at position {exc.pos}: {exc.msg}") from None
        if not isinstance(doc, dict) or "theory" not in doc:
            raise ValueError("missing theory")
        th = Theory.from_json(doc["theory"])
        try:
            bottom = [Label(x) for x in doc.get("bottom", [])]
            top = [Label(x) for x in doc.get("top", [])]
        except ValueError as exc:
            raise ValueError(f"bad boundary label: {exc}") from None
        terms: dict[Diagram, Cyclo] = {}
        for t in doc.get("terms", []):
            d = Diagram.from_json(t)
            c = Cyclo.from_json(t.get("coeff", {"order": 1, "coeffs": ["1"]}))
            terms[d] = terms[d] + c if d in terms else c
        return Morphism(th, bottom, top, terms)


# ---------------------------------------------------------------------------
# diagram-level operation internals
# ---------------------------------------------------------------------------

def _offset_endpoint(e: Endpoint, dbox: int, danchor: int,
                     dbot: int = 0, dtop: int = 0) -> Endpoint:
    if e[0] == "box":
        return boxleg(e[1] + dbox, e[2])
    if e[0] == "anchor":
        return anchor(e[1] + danchor, e[2])
    if e[1] == "bottom":
        return bnd("bottom", e[2] + dbot)
    return bnd("top", e[2] + dtop)


def _tensor_diagrams(a: Diagram, b: Diagram) -> Diagram:
    strands = list(a.strands)
    for s in b.strands:
        strands.append(Strand(
            _offset_endpoint(s.a, len(a.boxes), a.n_anchors,
                             len(a.bottom), len(a.top)),
            _offset_endpoint(s.b, len(a.boxes), a.n_anchors,
                             len(a.bottom), len(a.top)),
            s.label, s.dir))
    return Diagram.make(a.theory, a.bottom + b.bottom, a.top + b.top,
                        a.boxes + b.boxes, strands,
                        a.n_anchors + b.n_anchors)


class _Chains:
    """Splices strands across a set of interface links; shared by compose
    and trace closure.  Produces None (the zero term) on label or flow
    disagreement along any chain."""

    def __init__(self, strands: list[Strand],
                 links: dict[Endpoint, Endpoint],
                 obj_at: Callable[[Endpoint, int], Label | None],
                 upward_role: dict[Endpoint, int],
                 up_down: tuple[Label, Label]):
        self.emap: dict[Endpoint, Strand] = {}
        for s in strands:
            self.emap[s.a] = s
            self.emap[s.b] = s
        self.links = links
        self.obj_at = obj_at
        # per link endpoint: the flow role there that means "object flows
        # toward the upper side of the cut" (fixes loop orientation labels)
        self.upward_role = upward_role
        self.up_down = up_down

    def run(self) -> tuple[list[Strand], list[tuple[Label, int]]] | None:
        done: set[int] = set()
        out: list[Strand] = []
        loops: list[tuple[Label, int]] = []
        for e0 in sorted(self.emap, key=_ep_key):
            if e0 in self.links or id(self.emap[e0]) in done:
                continue
            s0 = self.emap[e0]
            if s0.other(e0) not in self.links:
                # untouched strand (including anchor loops): keep verbatim
                done.add(id(s0))
                out.append(s0)
                continue
            chain = self._walk(e0, done)
            merged = self._merge_open(chain, e0, chain[-1][2])
            if merged is None:
                return None
            out.append(merged)
        for e0 in sorted(self.links, key=_ep_key):
            if e0 not in self.emap or id(self.emap[e0]) in done:
                continue
            chain = self._walk(e0, done)
            lab_dir = self._merge_loop(chain)
            if lab_dir is None:
                return None
            loops.append(lab_dir)
        return out, loops

    def _walk(self, e0: Endpoint, done: set[int]):
        """Traverse from e0; yields [(strand, enter, exit)] until a real
        endpoint (open chain) or until the chain returns to its start."""
        chain = []
        e = e0
        while True:
            s = self.emap[e]
            if id(s) in done:
                return chain
            done.add(id(s))
            exit_ep = s.other(e)
            chain.append((s, e, exit_ep))
            if exit_ep not in self.links:
                return chain
            e = self.links[exit_ep]

    @staticmethod
    def _chain_flow_label(chain):
        """(unoriented concrete label or None, flow in {+1,0,-1} measured
        along traversal order); None result = inconsistent chain."""
        label = None
        flow = 0
        for s, enter, _exit in chain:
            if s.label is Label.PLAIN:
                continue
            if s.dir:
                f = +1 if s.flow_at(enter) == SRC else -1
                if flow and flow != f:
                    return None
                flow = f
            else:
                if label is not None and label != s.label:
                    return None
                label = s.label
        return label, flow

    def _merge_open(self, chain, a: Endpoint, b: Endpoint) -> Strand | None:
        got = self._chain_flow_label(chain)
        if got is None:
            return None
        label, flow = got
        if flow:
            src = a if flow == +1 else b
            obj = self.obj_at(src, SRC)
            return Strand(a, b, obj, flow)
        if label is None:
            return make_strand(a, b, Label.PLAIN, 0)
        return make_strand(a, b, label, 0)

    def _merge_loop(self, chain):
        got = self._chain_flow_label(chain)
        if got is None:
            return None
        label, flow = got
        if flow:
            # label the loop by the object crossing the first oriented cut
            up, down = self.up_down
            for s, enter, _exit in chain:
                if s.dir:
                    upward = s.flow_at(enter) == self.upward_role[enter]
                    return (up if upward else down, +1)
        if label is None:
            return (Label.PLAIN, 0)
        return (label, 0)


def _close_chains(theory: Theory, boxes, strands, links, bottom, top,
                  base_anchors: int,
                  upward_role: dict[Endpoint, int]) -> Diagram | None:
    """Run chain splicing and assemble the result; None = zero term."""

    def obj_at(e: Endpoint, role: int) -> Label | None:
        return _object_at(theory, boxes, e, role)

    got = _Chains(strands, links, obj_at, upward_role,
                  plain_expansion(theory)).run()
    if got is None:
        return None
    merged, loops = got
    na = base_anchors
    final = list(merged)
    for lab, dir in loops:
        final.append(Strand(anchor(na, 0), anchor(na, 1), lab, dir))
        na += 1
    d = Diagram.make(theory, bottom, top, boxes, final, na)
    if theory.is_shaded() and d.boxes:
        faces, face_of = d.face_index()
        if not d._shading_consistent(faces, face_of):
            return None
    return d


def _glue(a: Diagram, b: Diagram) -> Diagram | None:
    """a after b (b's top glued to a's bottom); None = zero term."""
    n = len(b.top)
    for i in range(n):
        lb, la = b.top[i], a.bottom[i]
        if lb is not Label.PLAIN and la is not Label.PLAIN and lb != la:
            return None
    dbox, danchor = len(b.boxes), b.n_anchors

    def from_b(e):
        if e[0] == "bnd" and e[1] == "top":
            return ("ifc", "b", e[2])
        return e

    def from_a(e):
        if e[0] == "bnd":
            return ("ifc", "t", e[2]) if e[1] == "bottom" else e
        return _offset_endpoint(e, dbox, danchor)

    strands = [Strand(from_b(s.a), from_b(s.b), s.label, s.dir)
               for s in b.strands]
    strands += [Strand(from_a(s.a), from_a(s.b), s.label, s.dir)
                for s in a.strands]
    links: dict[Endpoint, Endpoint] = {}
    upward: dict[Endpoint, int] = {}
    for i in range(n):
        links[("ifc", "b", i)] = ("ifc", "t", i)
        links[("ifc", "t", i)] = ("ifc", "b", i)
        upward[("ifc", "b", i)] = SNK   # arriving at b's top = flowing up
        upward[("ifc", "t", i)] = SRC   # leaving a's bottom = flowing up
    return _close_chains(a.theory, b.boxes + a.boxes, strands, links,
                         b.bottom, a.top, a.n_anchors + b.n_anchors, upward)


def _trace_diagram(d: Diagram) -> Diagram | None:
    def remap(e):
        if e[0] == "bnd":
            return ("ifc", "bot" if e[1] == "bottom" else "t", e[2])
        return e

    strands = [Strand(remap(s.a), remap(s.b), s.label, s.dir)
               for s in d.strands]
    links: dict[Endpoint, Endpoint] = {}
    upward: dict[Endpoint, int] = {}
    for i in range(len(d.bottom)):
        links[("ifc", "bot", i)] = ("ifc", "t", i)
        links[("ifc", "t", i)] = ("ifc", "bot", i)
        upward[("ifc", "bot", i)] = SRC
        upward[("ifc", "t", i)] = SNK
    return _close_chains(d.theory, d.boxes, strands, links, [], [],
                         d.n_anchors, upward)


def _adjoint_diagram(d: Diagram) -> Diagram:
    th = d.theory
    new_boxes = []
    for kind, rot in d.boxes:
        k = leg_count(th, kind)
        new_boxes.append((kind_adjoint(kind), (k - rot) % k))

    def remap(e: Endpoint) -> Endpoint:
        if e[0] == "bnd":
            return bnd("top" if e[1] == "bottom" else "bottom", e[2])
        if e[0] == "box":
            kind, _ = d.boxes[e[1]]
            return boxleg(e[1], leg_count(th, kind) - 1 - e[2])
        return e

    out = []
    for s in d.strands:
        na, nb = remap(s.a), remap(s.b)
        if s.dir == 0 or s.a[0] == "anchor":
            out.append(make_strand(na, nb, s.label, s.dir))
            continue
        # Flipping vertically and reversing arrows makes each endpoint swap
        # its flow role: the new source is the image of the old sink.
        old_snk = s.a if s.flow_at(s.a) == SNK else s.b
        new_src = remap(old_snk)
        obj = _object_at(th, new_boxes, new_src, SRC)
        out.append(Strand(na, nb, obj, +1 if new_src == na else -1))
    return Diagram.make(th, d.top, d.bottom, new_boxes, out, d.n_anchors)


def _click_boundary(bottom: Sequence[Label], top: Sequence[Label],
                    step: int):
    """One-notch boundary rotation.  Counterclockwise positions run along
    the bottom left-to-right then the top right-to-left; a +1 click slides
    every point one position clockwise (the outer star advances a notch).
    Returns (bottom', top', endpoint moves); a label dualizes when its
    point crosses between the two boundary rows."""
    p, q = len(bottom), len(top)
    k = p + q
    moves: dict[Endpoint, Endpoint] = {}
    if k == 0:
        return tuple(), tuple(), moves

    def at(pos: int) -> Endpoint:
        return bnd("bottom", pos) if pos < p else bnd("top", k - 1 - pos)

    labels = {bnd("bottom", i): bottom[i] for i in range(p)}
    labels.update({bnd("top", j): top[j] for j in range(q)})
    newb: list = [None] * p
    newt: list = [None] * q
    for c in range(k):
        src, dst = at(c), at((c - step) % k)
        lab = labels[src]
        if src[1] != dst[1]:
            lab = dual_label(lab)
        moves[src] = dst
        if dst[1] == "bottom":
            newb[dst[2]] = lab
        else:
            newt[dst[2]] = lab
    return tuple(newb), tuple(newt), moves


def _click_diagram(d: Diagram, step: int) -> Diagram:
    newb, newt, moves = _click_boundary(d.bottom, d.top, step)
    strands = [Strand(moves.get(s.a, s.a), moves.get(s.b, s.b),
                      s.label, s.dir) for s in d.strands]
    return Diagram.make(d.theory, newb, newt, d.boxes, strands, d.n_anchors)


def _expand_plain_diagram(d: Diagram) -> Iterator[Diagram]:
    plain = [i for i, s in enumerate(d.strands) if s.label is Label.PLAIN]
    if not plain:
        yield d
        return
    up, down = plain_expansion(d.theory)
    oriented = d.theory.is_oriented()

    def variants(s: Strand):
        if not oriented:
            yield Strand(s.a, s.b, up, 0)
            yield Strand(s.a, s.b, down, 0)
            return
        if s.a[0] == "anchor":
            # the two loop orientations
            yield Strand(s.a, s.b, up, +1)
            yield Strand(s.a, s.b, down, +1)
            return
        for dir in (+1, -1):
            src = s.a if dir == +1 else s.b
            obj = _object_at(d.theory, d.boxes, src, SRC)
            yield Strand(s.a, s.b, obj, dir)

    def rec(i: int, strands: list[Strand]):
        if i == len(plain):
            yield Diagram.make(d.theory, d.bottom, d.top, d.boxes,
                               strands, d.n_anchors)
            return
        for v in variants(d.strands[plain[i]]):
            nxt = list(strands)
            nxt[plain[i]] = v
            yield from rec(i + 1, nxt)

    yield from rec(0, list(d.strands))
