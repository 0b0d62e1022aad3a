"""Words in the genus-2 surface group and Dehn's algorithm.

Run:  python3 demos/01_words_and_dehn.py
"""
from surfwalk.words import canonical_geodesic, dehn_reduce, geodesic_class, is_identity, surface_presentation

p = surface_presentation(2)
rel = p.relators[0]
print("relator:", p.format(rel))

# Seven letters of the relator are longer than half of it, so Dehn's
# algorithm swaps them for the inverse of the missing letter.
w = rel[:7]
print(p.format(w), "->", p.format(dehn_reduce(w, p)))

# Exactly half a relator is not shortened, but it has a second geodesic
# spelling.  The canonical form picks the lexicographically smallest.
half = rel[:4]
print("geodesics of", p.format(half) + ":")
for u in sorted(geodesic_class(half, p)):
    print("   ", p.format(u))
print("canonical:", p.format(canonical_geodesic(half, p)))

# The relator with a conjugating prefix is still trivial.
print("a1 . relator . a1^-1 trivial?", is_identity((0,) + rel + (1,), p))
