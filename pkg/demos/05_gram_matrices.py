"""Gram matrices of hom-space spanning sets.

For a boundary word w, the engine enumerates all planar diagrams from
the empty object to w (arcs plus boundary-attached generator boxes),
fills the matrix of inner products exactly, and certifies: Hermitian,
positive semidefinite, and rank equal to the fusion-theoretic hom
dimension."""

from affa.fusion import Word, gram_matrix, hom_dim
from affa.theory import Family, Label, Theory

arrow = Theory(Family.ARROW_AODD, 1, 2, 1)   # m = 2, omega = -1
shaded = Theory(Family.SHADED_AODD, 1, 1, 0)

w = Word(arrow, (Label.DOWN,) * 4)
res = gram_matrix(w, max_boxes=2)
print(f"word Q1^4 in the m=2 arrow theory: {res.size} spanning diagrams,",
      f"rank {res.rank}, psd={res.psd}")
print("matrix:")
for row in res.matrix:
    print("  [" + ", ".join(f"{c!r:>4}" for c in row) + "]")

for k in range(5):
    w = Word(shaded, (Label.RED, Label.BLUE) * k)
    res = gram_matrix(w, max_boxes=k)
    dim = hom_dim(Word(shaded, ()), w)
    print(f"shaded (RB)^{k}: size {res.size:3d} rank {res.rank}",
          f"hom_dim {dim} psd={res.psd}")
