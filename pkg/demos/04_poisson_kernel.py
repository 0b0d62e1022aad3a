"""Upper bounds from powers of the hyperbolic Poisson kernel.

F(nu, phi) averages the kernel power over the 4g neighbouring tile centres.
For each nu its maximum over phi bounds the spectral radius; the maximum
sits at phi = 0, which the derivative sign checks certify.

Run:  python3 demos/04_poisson_kernel.py
"""
import numpy as np

from surfwalk.poisson import F, constants, lemma4_check, optimize_nu, pocket_check, poisson_bound

c = constants(2)
print(f"genus 2: D = {c.D:.5f}, X = {c.X:.4f}, delta = {c.delta:.4f}, epsilon = {c.epsilon:.4f}")

phis = np.linspace(0, np.pi / 8, 5)
for nu in (0.1, 0.3, 0.6):
    print(f"  nu={nu}: F over one period", np.round(F(c, nu, phis), 5))

opt = optimize_nu(c)
print(f"best nu = {opt.nu:.4f}, bound = {opt.bound:.4f}")
cert = lemma4_check(c, opt.nu)
print("derivative sign margins:", cert.worst_d1, cert.worst_d2, cert.worst_d3)

print("\n g    nu      bound   certified")
for g in range(2, 11):
    r = poisson_bound(g)
    print(f"{g:2d}  {r.nu:.4f}  {r.bound:.4f}   {r.phi_zero_certified}")

rows, fail = pocket_check(60)
print("\nscalar inequality holds up to g=60:", fail is None, " smallest margin:", round(min(r.margin for r in rows), 3))
