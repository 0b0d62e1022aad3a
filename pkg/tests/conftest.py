from collections import defaultdict

import pytest

from surfwalk.ball import build_ball
from surfwalk.words import abelianization, canonical_geodesic, is_identity, inverse, reduced_words, surface_presentation


@pytest.fixture(scope="session")
def p2():
    return surface_presentation(2)


@pytest.fixture(scope="session")
def ball2_4(p2):
    return build_ball(p2, 4)


@pytest.fixture(scope="session")
def ball2_6(p2):
    return build_ball(p2, 6)


@pytest.fixture(scope="session")
def ball3_4():
    return build_ball(surface_presentation(3), 4)


def brute_sphere_sizes(p, radius):
    """Partition all freely reduced words of length <= radius into elements with
    pairwise Dehn identity tests (within abelianisation buckets).  Words are
    visited by increasing length, so an element's first word is a geodesic."""
    reps = defaultdict(list)
    sizes = [0] * (radius + 1)
    for n in range(radius + 1):
        for w in reduced_words(p.k, n):
            bucket = reps[abelianization(w, p.h)]
            if any(is_identity(inverse(u) + w, p) for u in bucket):
                continue
            bucket.append(w)
            sizes[n] += 1
    return sizes


def brute_closed_walks(p, n):
    """W_2n = sum over elements x of N_n(x)^2, N_n(x) = #words of length n equal to x."""
    from itertools import product
    counts = defaultdict(int)
    for w in product(range(p.k), repeat=n):
        counts[canonical_geodesic(w, p)] += 1
    return sum(c * c for c in counts.values())


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
