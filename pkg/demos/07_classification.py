"""Classification: enumerating presentations and counting classes.

Each family admits finitely many presentations (one per legal root);
the click eigenvalue — recomputed through the evaluator, not read off
the declaration — separates them, giving exactly n, 3n, and 2n+1
classes in the three finite families."""

from affa.classify import (are_isomorphic, click_eigenvalue, count_classes,
                           enumerate_presentations)
from affa.theory import Family, Theory

for family in ("shaded-a-odd", "unshaded-a-odd", "a-even"):
    print(f"{family}: classes at n = 1..5:",
          [count_classes(family, n) for n in range(1, 6)])
print("infinite families:", count_classes("unshaded-a-inf"),
      "unshaded classes,", count_classes("shaded-a-inf"), "shaded class")

print("\neigenvalues in the n=2 unshaded family:")
for th in enumerate_presentations("unshaded-a-odd", 2):
    print(f"  {th.family.value:22s} root={th.root()!r:>6}",
          f"eigenvalue={click_eigenvalue(th)!r}")

t1 = Theory(Family.ARROW_AODD, 2, 4, 1)   # omega = i
t2 = Theory(Family.ARROW_AODD, 2, 4, 3)   # omega = -i
ok, reason = are_isomorphic(t1, t2)
print(f"\nomega=i vs omega=-i isomorphic? {ok} ({reason})")
ok, reason = are_isomorphic(t1, Theory(Family.COLOR_AODD, 2, 1, 0))
print(f"arrow vs color isomorphic? {ok} ({reason})")
