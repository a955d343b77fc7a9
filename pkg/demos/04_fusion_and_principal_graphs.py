"""Fusion data: invertible simple objects, principal graphs, Bratteli rows.

The simple objects form a cyclic group; tensoring with either strand
generator steps one position around it, so the principal graph is the
affine A cycle (2n or 2n+1 vertices) with every trace equal to 1."""

from affa.fusion import Word, bratteli, grading, hom_dim, principal_graph
from affa.theory import Family, Label, Theory

arrow = Theory(Family.ARROW_AODD, 2, 4, 1)
even = Theory(Family.ARROW_AEVEN, 2, 5, 1)
shaded = Theory(Family.SHADED_AODD, 2, 2, 1)

for th in (arrow, even, shaded):
    g = principal_graph(th)
    print(f"{th.family.value} n={th.n}: {len(g.vertices)}-cycle",
          g.vertices)

w = Word(arrow, (Label.DOWN, Label.DOWN, Label.DOWN))
print("\ngrading of Q1^3 in Z_4:", grading(w))
empty = Word(arrow, ())
print("dim Hom(1, Q1^k) for k = 0..8:",
      [hom_dim(empty, Word(arrow, (Label.DOWN,) * k)) for k in range(9)])

b = bratteli(arrow, 4)
print("\nBratteli dims (sum of multiplicity squares):", b["dims"])
for r, row in enumerate(b["rows"]):
    print(f"  row {r}:", {c['word']: c['mult'] for c in row})

inf = Theory(Family.ARROW_AINF)
g = principal_graph(inf, radius=4)
print("\ninfinite family to radius 4:", g.vertices)
