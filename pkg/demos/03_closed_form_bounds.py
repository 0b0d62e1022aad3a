"""Closed-form bounds on the spectral radius, and a finite check of the 1-form one.

Run:  python3 demos/03_closed_form_bounds.py
"""
import math

from surfwalk.ball import build_ball
from surfwalk.bounds import (kesten_girth_correction, kesten_lower, one_form_bound, one_relator_bound,
                             tree_bound, verify_one_form)
from surfwalk.words import surface_presentation

print(" g   Kesten   1-form    tree")
for g in range(2, 11):
    k = 4 * g
    print(f"{g:2d}   {kesten_lower(k):.4f}   {one_form_bound(k)[1]:.4f}   {tree_bound(k, k - 1):.4f}")

print("\ngirth improvement of the Kesten bound at g=2: %.3e" % kesten_girth_correction(2))
print("and at g=10 (needs high precision):", f"{kesten_girth_correction(10):.3e}")
print("one-relator bound with 3 generators:", round(one_relator_bound(3), 4))

# The 1-form weighs edges by b going out and 1/b coming in; the worst row
# sum sits at type-2 vertices.
b = build_ball(surface_presentation(2), 6)
cert = verify_one_form(b, math.sqrt(3))
print("\nrow sums per vertex type at b = sqrt(3):", {t: round(v, 6) for t, v in cert.row_sums_by_type.items()})
print("max / 8 =", cert.max_row_sum / 8, " sqrt(3)/2 =", math.sqrt(3) / 2)
