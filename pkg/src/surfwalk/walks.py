"""Lower bounds on the spectral radius from a finite ball.

Two routes: exact counts W_2n of closed walks at the identity, whose
(2n)-th roots divided by k increase to mu; and the top eigenvalue of the
Markov operator restricted (Dirichlet) to the ball, which can only be
smaller than the norm of the full operator.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix

from .ball import ABSENT, Ball
from .errors import ConvergenceError, InsufficientRadius, InvalidParameter


@dataclass(frozen=True)
class WalkTable:
    k: int
    counts: tuple  # W_0, W_2, ..., W_2nmax as Python ints

    @property
    def nmax(self) -> int:
        return len(self.counts) - 1

    def return_prob(self, n: int) -> Fraction:
        return Fraction(self.counts[n], self.k ** (2 * n))

    def root(self, n: int) -> float:
        """p_2n^(1/2n), computed from the exact count without overflow."""
        return math.exp(math.log(self.counts[n]) / (2 * n)) / self.k

    def roots_nondecreasing(self) -> bool:
        # p_2n^(1/2n) <= p_2m^(1/2m)  <=>  W_2n^m <= W_2m^n, exactly
        W = self.counts
        return all(W[n] ** (n + 1) <= W[n + 1] ** n for n in range(1, self.nmax))

    def supermultiplicative(self) -> bool:
        W = self.counts
        return all(W[a + b] >= W[a] * W[b]
                   for a in range(self.nmax + 1) for b in range(self.nmax + 1 - a))

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "W_2n", "p_2n", "p_2n^(1/2n)"])
        for n, c in enumerate(self.counts):
            p = self.return_prob(n)
            w.writerow([n, str(c), repr(float(p)), "" if n == 0 else repr(self.root(n))])


def _neighbour_table(b: Ball):
    adj = b.adjacency
    return np.where(adj != ABSENT, adj, b.num_vertices)  # sentinel row of zeros


def closed_walk_counts(b: Ball, nmax: int, return_odd: bool = False):
    """Exact W_0..W_2nmax at the identity by dynamic programming over the ball.

    A closed walk of length 2n stays within distance n of its start, so the
    radius-n ball gives exact counts.  int64 is used while k^(2 nmax) fits,
    Python integers otherwise.
    """
    if nmax < 0:
        raise InvalidParameter("nmax must be >= 0")
    if b.radius < nmax:
        raise InsufficientRadius(f"radius {b.radius} < nmax {nmax}")
    k = b.k
    exact_int64 = k ** (2 * nmax) < 2**62
    dtype = np.int64 if exact_int64 else object
    nb = _neighbour_table(b)
    vec = np.zeros(b.num_vertices + 1, dtype=dtype)
    vec[0] = 1
    counts = [1]
    odd = []
    for step in range(1, 2 * nmax + 1):
        # fixed neighbour order, fresh output vector
        nxt = np.zeros_like(vec)
        nxt[:-1] = vec[nb].sum(axis=1)
        vec = nxt
        if step % 2 == 0:
            counts.append(int(vec[0]))
        else:
            odd.append(int(vec[0]))
    table = WalkTable(k, tuple(counts))
    return (table, odd) if return_odd else table


def return_prob_lower(t: WalkTable) -> float:
    """max_n p_2n^(1/2n), a lower bound on mu."""
    if t.nmax < 1:
        raise InvalidParameter("need nmax >= 1")
    return max(t.root(n) for n in range(1, t.nmax + 1))


def markov_operator(b: Ball) -> csr_matrix:
    """(1/k) times the in-ball adjacency matrix."""
    u, v, _ = b.edges()
    n = b.num_vertices
    rows = np.concatenate([u, v])
    cols = np.concatenate([v, u])
    return csr_matrix((np.full(len(rows), 1.0 / b.k), (rows, cols)), shape=(n, n))


def dirichlet_top_eigenvalue(b: Ball, tol: float = 1e-10, max_iter: int = 100000) -> float:
    """Norm of the ball-restricted Markov operator by power iteration from the identity.

    The graph is bipartite, so +lambda and -lambda are both eigenvalues and
    the plain Rayleigh quotient of iterates supported on one side is zero.
    The estimate used is ||M v|| / ||v||, i.e. the square root of the
    Rayleigh quotient of M^2, which never exceeds the true norm.
    """
    if not 0 < tol <= 1e-6:
        raise InvalidParameter("tol must lie in (0, 1e-6]")
    if b.num_vertices == 1:
        return 0.0
    M = markov_operator(b)
    v = np.zeros(b.num_vertices)
    v[0] = 1.0
    est = 0.0
    for _ in range(max_iter):
        w = M @ v
        nrm = np.linalg.norm(w)
        new = float(nrm)  # v has unit norm
        if abs(new - est) < tol:
            return new
        est = new
        v = w / nrm
    raise ConvergenceError(f"no convergence in {max_iter} iterations", last=est)


def moment_ratio_lower(t: WalkTable) -> float:
    """sqrt(W_2nmax / W_2(nmax-1)) / k.

    Return probabilities are even moments of the spectral measure, so
    p_2n+2 / p_2n is nondecreasing with limit mu^2; the last ratio is a
    lower bound that converges much faster than the root p_2n^(1/2n).
    """
    if t.nmax < 1:
        raise InvalidParameter("need nmax >= 1")
    W = t.counts
    return math.sqrt(W[-1] / W[-2]) / t.k
