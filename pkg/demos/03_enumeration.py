"""Stream every free tree on n vertices, exactly once per isomorphism class.

The generator runs on canonical level sequences (preorder depth lists) with a
constant-amortized-time successor; an independent counting recurrence checks
the totals.  Trees on up to 24 vertices stay desk-scale.
"""

from collections import Counter

from zext import free_tree_count, free_trees
from zext.enumeration import free_tree_sequences
from zext.transforms import classify_shape

print("free trees by vertex count (generator vs counting recurrence):")
for n in range(1, 13):
    generated = sum(1 for _ in free_tree_sequences(n))
    print(f"  n={n:2d}: generated {generated:5d}   recurrence {free_tree_count(n):5d}")
print()

print("the 11 trees on 7 vertices, as level sequences with shape tags:")
shapes = Counter()
for t in free_trees(7):
    tag = classify_shape(t).value
    shapes[tag] += 1
    print(f"  {t.canonical_key}   degrees {sorted(t.degrees, reverse=True)}   {tag}")
print("shape census:", dict(shapes))
