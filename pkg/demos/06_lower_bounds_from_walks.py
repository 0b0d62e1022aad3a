"""Lower bounds from exact closed-walk counts and from a truncated operator.

p_2n^(1/2n) increases to mu, but slowly; the ratio of consecutive return
probabilities and the top eigenvalue of the ball-restricted operator get
closer much faster.

Run:  python3 demos/06_lower_bounds_from_walks.py
"""
from surfwalk.ball import build_ball
from surfwalk.walks import closed_walk_counts, dirichlet_top_eigenvalue, moment_ratio_lower, return_prob_lower
from surfwalk.words import surface_presentation

p = surface_presentation(2)
b = build_ball(p, 7)
t = closed_walk_counts(b, 7)
print(" n          W_2n   p_2n^(1/2n)")
for n in range(1, t.nmax + 1):
    print(f"{n:2d} {t.counts[n]:13d}   {t.root(n):.5f}")
print("roots nondecreasing (checked in exact integers):", t.roots_nondecreasing())
print("return-probability bound:", round(return_prob_lower(t), 5))
print("moment-ratio bound:      ", round(moment_ratio_lower(t), 5))

for R in range(1, 7):
    print(f"Dirichlet eigenvalue, radius {R}: {dirichlet_top_eigenvalue(build_ball(p, R)):.5f}")
print("best upper bound for comparison: 0.7373")
