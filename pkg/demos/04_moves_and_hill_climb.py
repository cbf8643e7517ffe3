"""Watch the rewriting moves push a tree toward the balanced double star.

Each move carries a receipt: the exact term map of the value change and a
verdict computed by sign-certain comparison.  Chaining the moves from any
starting tree ends at the balanced double star, the unique maximizer of the
exponential second Zagreb value.
"""

from zext import approx_log, exp_vdb_index, hill_climb
from zext.enumeration import double_star, fig3_tree
from zext.search import path_tree, star_tree
from zext.transforms import balance_move, lemma_distance_move, pendant_shift_move

# one move of each kind, with its receipt
spider = fig3_tree(0, [1, 1, 1])                     # three arms of one pendant
r = pendant_shift_move(spider, 1, 2)
print("pendant shift on the 3-arm spider:")
print("  delta map:", dict(sorted(r.delta.terms.items())))
print("  verdict:", r.ordering.value)
print()

r = balance_move(double_star(1, 4))
print("balancing S(1,4) -> S(2,3):")
print("  delta map:", dict(sorted(r.delta.terms.items())))
print("  verdict:", r.ordering.value)
print()

p6 = path_tree(6)
r = lemma_distance_move(p6, 1, 2, 3)
print("distance move on P6 at (1, 2, 3):")
print("  after:", r.after.canonical_key, " verdict:", r.ordering.value)
print()

# full climbs from the two classical extremes
for label, start in (("P9", path_tree(9)), ("S9", star_tree(9))):
    receipts = hill_climb(start)
    print(f"climb from {label}:")
    log_before = approx_log(exp_vdb_index(start, "M2"))
    print(f"  start {start.canonical_key}  log value {log_before:.6f}")
    for step, rec in enumerate(receipts, 1):
        lv = approx_log(exp_vdb_index(rec.after, "M2"))
        print(f"  step {step}: {rec.move:28s} -> {rec.after.canonical_key}"
              f"  log value {lv:.6f}")
    print()
