import math

INVPHI = (math.sqrt(5) - 1) / 2


def golden_min(f, lo, hi, tol=1e-6, max_iter=500):
    """Minimise a unimodal ``f`` on [lo, hi]; returns (argmin, min).

    The endpoints are compared against the interior estimate so a minimum
    sitting on the boundary is returned exactly.
    """
    a, b = lo, hi
    x1 = b - INVPHI * (b - a)
    x2 = a + INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while b - a > tol and it < max_iter:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INVPHI * (b - a)
            f2 = f(x2)
        it += 1
    x, fx = (x1, f1) if f1 <= f2 else (x2, f2)
    for end in (lo, hi):
        fe = f(end)
        if fe < fx or (fe == fx and end < x):
            x, fx = end, fe
    return x, fx


def golden_max(f, lo, hi, tol=1e-6, max_iter=500):
    x, fx = golden_min(lambda t: -f(t), lo, hi, tol, max_iter)
    return x, -fx
