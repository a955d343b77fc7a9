"""The two source categories and their functors into the arrow theories.

A cyclic group with a 3-cocycle (carry cocycle of an m-th root zeta)
presents a pointed category; its image lands in the arrow theory of the
matching parity with the conjugate root.  The signed-strand source
category lands in the trivial-root arrow theory.  check_functor verifies
relation preservation, hom dimensions, and nontriviality."""

from affa.cyclotomic import root_power
from affa.equiv import (CocycleSpec, check_cocycle, check_functor, cocycle,
                        image_theory, source_theory, to_image)
from affa.diagram import Morphism
from affa.theory import BoxKind

spec = CocycleSpec(2, root_power(2, 1))   # zeta = -1 on Z_2
print("cocycle identity holds:", check_cocycle(spec))
print("w(1,1,1) =", cocycle(spec, 1, 1, 1), "(the carry picks up zeta)")

vec = source_theory("vec", 4, 1)
tgt = image_theory(vec)
print(f"\nVec source m=4 zeta=i  ->  {tgt.family.value} n={tgt.n}",
      f"root {tgt.root()} (conjugate)")

u = Morphism.generator(vec, BoxKind.SCRIPT_U)
print("image of the m-valent source box has boundary",
      [l.value for l in to_image(u).top])

for m in (2, 3, 4):
    for e in range(m):
        r = check_functor("vec", m, e)
        print(f"check_functor(vec, m={m}, zeta_exp={e}): ok={r['ok']}")
print("check_functor(rep, m=3): ok =", check_functor("rep", 3)["ok"])
