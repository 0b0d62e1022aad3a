"""Balls in the Cayley graph and the types of their vertices.

Every vertex other than the identity has one or two neighbours one step
closer to the identity.  Type-2 vertices are far apart, and every type-1
vertex has a "convenient" neighbour further out.

Run:  python3 demos/02_growing_balls.py
"""
import time

from surfwalk.ball import build_ball, check_geometric_proposition, sphere_sizes
from surfwalk.words import surface_presentation

for g, R in ((2, 7), (3, 5)):
    t0 = time.perf_counter()
    b = build_ball(surface_presentation(g), R)
    print(f"genus {g}, radius {R}: {b.num_vertices} vertices in {time.perf_counter() - t0:.2f}s")
    print("  sphere sizes:", sphere_sizes(b))
    s = sphere_sizes(b)
    print("  growth ratios:", [round(s[n + 1] / s[n], 3) for n in range(1, R)])

b = build_ball(surface_presentation(2), 6)
rep = check_geometric_proposition(b)
print("\ngenus 2, radius 6 type census:", rep.summary()["type_counts"])
print("type-2 pairs at distance <= 2:", len(rep.type2_pairs))
print("type-1 vertices checked:", rep.checked_type1, " fewest convenient neighbours:", rep.min_convenient)
print("girth at the identity:", b.girth_at_identity())
