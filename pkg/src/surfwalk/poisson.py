"""Upper bounds on the genus-g spectral radius from powers of the hyperbolic
Poisson kernel, and numeric certificates for the calculus facts behind them.

Centres of adjacent tiles in the regular {4g, 4g} tiling sit at hyperbolic
distance D_g = 2 arccosh(cot(pi/4g)).  Averaging the kernel power b^nu
over the 4g neighbours of a tile centre gives

    F(nu, phi) = mean_j (C - S cos(phi + j*pi/2g))^(-nu),   C = cosh D, S = sinh D

and max_phi F(nu, phi) bounds mu_g for every nu.  The maximum sits at
phi = 0 when g <= 27 and 0 <= nu <= 1, which is what ``lemma4_check``,
``quartic_check`` and ``pocket_check`` certify numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, InvalidGenus, InvalidParameter
from .golden import golden_max, golden_min


@dataclass(frozen=True)
class PoissonConstants:
    g: int
    X: float
    D: float
    C: float
    S: float
    delta: float
    epsilon: float

    def check(self, rtol: float = 1e-12) -> None:
        X, C, S = self.X, self.C, self.S
        problems = []
        if not math.isclose(C, 2 * X - 1, rel_tol=rtol):
            problems.append("C != 2X - 1")
        if not math.isclose(S, 2 * math.sqrt(X * (X - 1)), rel_tol=rtol):
            problems.append("S != 2 sqrt(X(X-1))")
        # C^2 and S^2 grow like g^4, so the identity is checked relative to C^2
        if abs(C * C - S * S - 1) > rtol * C * C:
            problems.append("C^2 - S^2 != 1")
        if not math.isclose(math.cos(self.delta), S / C, rel_tol=rtol):
            problems.append("cos(delta) != S/C")
        if not math.isclose(math.cos(self.epsilon), S / C - 1 / (S * C), rel_tol=rtol):
            problems.append("cos(epsilon) != S/C - 1/(SC)")
        if not 0 < self.delta < self.epsilon < math.pi / (4 * self.g):
            problems.append("0 < delta < epsilon < pi/4g fails")
        if not X > 2:
            problems.append("X <= 2")
        if problems:
            raise ConsistencyError(f"genus {self.g}: " + "; ".join(problems))


def constants(g: int) -> PoissonConstants:
    if g < 2:
        raise InvalidGenus(f"genus must be >= 2, got {g}")
    cot = 1.0 / math.tan(math.pi / (4 * g))
    X = cot * cot
    D = 2.0 * math.acosh(cot)
    C, S = math.cosh(D), math.sinh(D)
    # arccos(S/C) and arccos(S/C - 1/(SC)) rewritten with C^2 = 1 + S^2;
    # arccos loses digits here because both arguments approach 1 as g grows
    delta = math.atan2(1.0, S)
    epsilon = math.atan2(math.sqrt(3 * S * S - 1), S * S - 1)
    c = PoissonConstants(g, X, D, C, S, delta, epsilon)
    c.check()
    return c


def kernel_b(rho, phi):
    """Imaginary part of the point at distance rho from i, at angle phi from the upward geodesic."""
    if np.any(np.asarray(rho) <= 0):
        raise InvalidParameter("rho must be positive")
    return 1.0 / (np.cosh(rho) - np.sinh(rho) * np.cos(phi))


def F(c: PoissonConstants, nu, phi):
    """Mean of b(D_g, phi + j*2pi/4g)^nu over j; vectorised over ``phi``."""
    n = 4 * c.g
    phi = np.asarray(phi, dtype=float)
    angles = phi[..., None] + np.arange(n) * (2 * np.pi / n)
    vals = (c.C - c.S * np.cos(angles)) ** (-nu)
    out = vals.mean(axis=-1)
    return float(out) if out.ndim == 0 else out


@dataclass
class PoissonEvaluation:
    nu: float
    phi_step: float
    max_phi: float
    max_value: float
    value_at_zero: float

    @property
    def max_at_zero(self) -> bool:
        return self.max_phi == 0.0


def scan_max_phi(c: PoissonConstants, nu: float, step: float) -> PoissonEvaluation:
    """Maximise F(nu, .) over one fundamental domain [0, pi/4g].

    F is even and pi/2g-periodic, so the domain covers every phi.  A grid
    pass is followed by golden-section refinement around the best grid point.
    """
    half = math.pi / (4 * c.g)
    if not 0 < step <= math.pi / (64 * c.g):
        raise InvalidParameter(f"phi step must lie in (0, pi/{64 * c.g}]")
    n = int(math.ceil(half / step))
    grid = np.linspace(0.0, half, n + 1)
    vals = F(c, nu, grid)
    i = int(np.argmax(vals))  # first maximum, i.e. smallest phi on ties
    best_phi, best = float(grid[i]), float(vals[i])
    lo, hi = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, n)])
    x, fx = golden_max(lambda t: F(c, nu, t), lo, hi, tol=1e-12)
    # improvements at rounding level count as ties, which go to the smaller phi
    if fx > best * (1 + 8 * np.finfo(float).eps):
        best_phi, best = x, fx
    return PoissonEvaluation(nu, step, best_phi, best, F(c, nu, 0.0))


@dataclass
class NuOptimum:
    nu: float
    bound: float
    unimodal: bool


def optimize_nu(c: PoissonConstants, tol: float = 1e-6, samples: int = 201) -> NuOptimum:
    """Minimise nu -> F(nu, 0) over [0, 1] by golden-section search.

    A coarse sample first checks that the sampled sequence has a single
    valley; the flag is reported, not enforced.
    """
    if not 0 < tol <= 1e-3:
        raise InvalidParameter("tol must lie in (0, 1e-3]")
    nus = np.linspace(0.0, 1.0, samples)
    vals = np.array([F(c, nu, 0.0) for nu in nus])
    d = np.sign(np.diff(vals))
    d = d[d != 0]
    unimodal = bool(np.count_nonzero(np.diff(d)) <= 1)
    nu, val = golden_min(lambda t: F(c, t, 0.0), 0.0, 1.0, tol=tol)
    return NuOptimum(nu, val, unimodal)


def beta_derivatives(c: PoissonConstants, nu, phi):
    """beta(phi) = (C - S cos phi)^(-nu) and its first three phi-derivatives, in closed form."""
    C, S = c.C, c.S
    phi = np.asarray(phi, dtype=float)
    cos, sin = np.cos(phi), np.sin(phi)
    u = C - S * cos
    beta = u ** (-nu)
    d1 = -nu * S * sin / u ** (nu + 1)
    d2 = nu * S * (S - C * cos + nu * S * sin**2) / u ** (nu + 2)
    d3 = nu * S * sin * (1 - (3 * nu + 1) * S * (S - C * cos) - nu**2 * S**2 * sin**2) / u ** (nu + 3)
    return beta, d1, d2, d3


@dataclass
class DerivativeSignCertificate:
    g: int
    nu: float
    grid: int
    worst_d1: float
    worst_d2: float
    worst_d3: float
    certified: bool


def lemma4_check(c: PoissonConstants, nu: float, grid: int = 10**5, slack: float = 1e-12) -> DerivativeSignCertificate:
    """Sign checks on dense grids: d1 <= 0 on [0, pi], d2 >= 0 on [delta, pi], d3 <= 0 on [epsilon, pi].

    Worst margins are signed so that non-negative means satisfied.
    """
    if not 0 <= nu <= 1:
        raise InvalidParameter("nu must lie in [0, 1]")
    if grid < 10**4:
        raise InvalidParameter("grid must have at least 1e4 points")
    _, d1, _, _ = beta_derivatives(c, nu, np.linspace(0.0, math.pi, grid))
    _, _, d2, _ = beta_derivatives(c, nu, np.linspace(c.delta, math.pi, grid))
    _, _, _, d3 = beta_derivatives(c, nu, np.linspace(c.epsilon, math.pi, grid))
    w1, w2, w3 = float(-d1.max()), float(d2.min()), float(-d3.max())
    ok = w1 >= -slack and w2 >= -slack and w3 >= -slack
    return DerivativeSignCertificate(c.g, nu, grid, w1, w2, w3, ok)


def quartic(X):
    return 16 * X**4 - 44 * X**3 + 20 * X**2 + 9 * X + 1


def quartic_shifted(X):
    y = X - 2
    return 16 * y**4 + 84 * y**3 + 140 * y**2 + 73 * y + 3


def quartic_check(g: int = None, X: float = None):
    """Evaluate the quartic in both expansions; returns (value, positive and X > 2)."""
    if X is None:
        if g is None or g < 2:
            raise InvalidGenus(f"genus must be >= 2, got {g}")
        X = 1.0 / math.tan(math.pi / (4 * g)) ** 2
    a, b = quartic(X), quartic_shifted(X)
    if not math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9):
        raise ConsistencyError(f"quartic expansions disagree at X={X}: {a} vs {b}")
    return b, bool(b > 0 and X > 2)


def Rg(c: PoissonConstants, nu: float) -> float:
    q = math.pi / (2 * c.g)
    num = c.S - c.C * math.cos(q) + nu * c.S * math.sin(q) ** 2
    return (4 * c.g - 1) * num / (c.C - c.S * math.cos(q)) ** 2


@dataclass
class PocketRow:
    g: int
    delta: float
    inv_delta: float
    R1: float
    passed: bool

    @property
    def margin(self) -> float:
        return self.inv_delta - self.R1


def pocket_check(g_max: int, g_min: int = 2):
    """Rows (g, delta_g, 1/delta_g, R_g(1), 1/delta_g >= R_g(1)) and the first failing g or None."""
    if g_min < 2 or g_max < g_min:
        raise InvalidGenus(f"bad genus range [{g_min}, {g_max}]")
    rows = []
    first_fail = None
    for g in range(g_min, g_max + 1):
        c = constants(g)
        r1 = Rg(c, 1.0)
        ok = 1.0 / c.delta >= r1
        rows.append(PocketRow(g, c.delta, 1.0 / c.delta, r1, ok))
        if not ok and first_fail is None:
            first_fail = g
    return rows, first_fail


@dataclass
class PoissonResult:
    g: int
    nu: float
    value_at_zero: float
    bound: float
    max_phi: float
    phi_zero_certified: bool
    unimodal: bool


def poisson_bound(g: int, nu_tol: float = 1e-6, phi_step: float = None) -> PoissonResult:
    """Optimised nu, F(nu, 0), and the reported bound max_phi F(nu, phi).

    The reported bound is the scanned maximum, so it stays a valid upper
    bound even where the maximum is not at phi = 0.
    """
    c = constants(g)
    opt = optimize_nu(c, nu_tol)
    step = phi_step if phi_step is not None else math.pi / (64 * g) / 16
    ev = scan_max_phi(c, opt.nu, step)
    # the calculus argument that puts the maximum at phi = 0 needs all three
    rows, _ = pocket_check(g, g)
    certified = (ev.max_at_zero and rows[0].passed and quartic_check(g)[1]
                 and lemma4_check(c, opt.nu).certified)
    return PoissonResult(g, opt.nu, ev.value_at_zero, ev.max_value, ev.max_phi, certified, opt.unimodal)
