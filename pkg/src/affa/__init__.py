"""affa: a symbolic engine for the index-4 affine-A planar algebras.

Exact diagram evaluation (rewriting + region-labeling invariant), hom
dimensions, principal graphs, Gram matrices, relation and functor checks,
and the classification counts, all over exact cyclotomic arithmetic.
"""

from affa.cyclotomic import Cyclo, root_power
from affa.diagram import Diagram, Morphism, Strand
from affa.theory import Family, Theory, BoxKind, Label

__all__ = ["Cyclo", "root_power", "Family", "Theory", "BoxKind", "Label",
           "Diagram", "Morphism", "Strand"]
