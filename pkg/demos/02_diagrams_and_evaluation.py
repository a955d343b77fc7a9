"""Planar diagrams and the rewriting evaluator.

Closed diagrams in any of the finite theories evaluate to an exact
cyclotomic scalar: plain loops contribute a factor of 2 each, colored
or oriented loops a factor of 1, and generator boxes cancel in pairs,
picking up root-of-unity scalars from their rotations."""

from affa.diagram import Morphism
from affa.evaluate import eval_closed, eval_with_steps, inner_product
from affa.theory import BoxKind, Family, Label, Theory

shaded = Theory(Family.SHADED_AODD, 2, 2, 1)    # sigma = -1
arrow = Theory(Family.ARROW_AODD, 2, 4, 1)      # omega = i

print("plain loop:", eval_closed(Morphism.loop(shaded, Label.PLAIN)))
print("red loop:  ", eval_closed(Morphism.loop(shaded, Label.RED)))

three = Morphism.identity(shaded, [])
for _ in range(3):
    three = three.tensor(Morphism.loop(shaded, Label.PLAIN))
print("three plain loops:", eval_closed(three), "(= 2^3)")

u = Morphism.generator(arrow, BoxKind.U)
print("tr(U* U) =", inner_product(u, u))
print("tr(U* F(U)) =", inner_product(u, u.click(1)),
      "(the click eigenvalue omega = i)")

val, steps = eval_with_steps(u.adjoint().compose(u).trace_close("left"))
print(f"left closure evaluates to {val} in {steps} rewrite steps")
