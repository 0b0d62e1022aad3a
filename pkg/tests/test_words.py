from collections import defaultdict
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfwalk.errors import InvalidGenus, InvalidParameter
from surfwalk.words import (Presentation, abelianization, canonical_geodesic, dehn_reduce, free_reduce,
                            geodesic_class, geodesic_length, inv, inverse, is_cyclically_reduced,
                            is_freely_reduced, is_identity, reduced_words, rotations, surface_presentation)

letters8 = st.lists(st.integers(0, 7), max_size=30)


def naive_free_reduce(w):
    w = list(w)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == w[i + 1] ^ 1:
                del w[i:i + 2]
                changed = True
                break
    return tuple(w)


@given(letters8)
def test_free_reduce_idempotent_and_matches_naive(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert is_freely_reduced(r)
    assert r == naive_free_reduce(w)


@given(letters8)
def test_inverse_cancels(w):
    assert free_reduce(tuple(w) + inverse(w)) == ()
    assert inverse(inverse(w)) == tuple(w)


def test_letter_encoding():
    assert [inv(i) for i in range(4)] == [1, 0, 3, 2]
    p = surface_presentation(2)
    assert p.relators == ((0, 2, 1, 3, 4, 6, 5, 7),)
    assert p.format((0, 3)) == "a1 b1^-1"
    assert p.format(()) == "1"
    assert p.k == 8


def test_presentation_pieces():
    p = surface_presentation(2)
    assert len(p.pieces) == 16  # 8 rotations of the relator and of its inverse
    for piece in p.pieces:
        assert is_identity(piece, p)
    assert len(rotations((0, 2, 1, 3))) == 4
    assert is_cyclically_reduced((0, 2, 1, 3))
    assert not is_cyclically_reduced((0, 2, 1))


def test_bad_presentations():
    with pytest.raises(InvalidGenus):
        surface_presentation(1)
    with pytest.raises(InvalidParameter):
        Presentation(2, ((0, 1, 2),))
    with pytest.raises(InvalidParameter):
        Presentation(2, ((0, 9),))


def test_dehn_shortens_long_relator_subword():
    p = surface_presentation(2)
    rel = p.relators[0]
    assert dehn_reduce(rel, p) == ()
    # seven letters of the relator equal the inverse of the eighth
    assert dehn_reduce(rel[:7], p) == (6,)


def test_dehn_five_eighths():
    p = surface_presentation(2)
    w = p.relators[0][:5]
    r = dehn_reduce(w, p)
    assert len(r) == 3
    assert is_identity(inverse(w) + r, p)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 7), max_size=12), st.integers(0, 15), st.integers(0, 12))
def test_inserting_relator_keeps_element(w, piece, pos):
    p = surface_presentation(2)
    w = tuple(w)
    pos = min(pos, len(w))
    v = w[:pos] + p.pieces[piece] + w[pos:]
    assert canonical_geodesic(v, p) == canonical_geodesic(w, p)
    assert is_identity(inverse(w) + v, p)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 7), max_size=14))
def test_canonical_is_geodesic_fixed_point(w):
    p = surface_presentation(2)
    c = canonical_geodesic(w, p)
    assert canonical_geodesic(c, p) == c
    assert is_identity(inverse(w) + c, p)
    assert len(c) <= len(dehn_reduce(w, p))
    assert all(len(u) == len(c) for u in geodesic_class(w, p))


def test_canonical_vs_identity_exhaustive_length_3():
    p = surface_presentation(2)
    words = [w for n in range(4) for w in reduced_words(8, n)]
    can = {w: canonical_geodesic(w, p) for w in words}
    buckets = defaultdict(list)
    for w in words:
        buckets[abelianization(w, 4)].append(w)
    for b in buckets.values():
        for x, y in product(b, b):
            assert (can[x] == can[y]) == is_identity(inverse(x) + y, p)


def test_geodesic_length_of_relator_halves():
    p = surface_presentation(2)
    rel = p.relators[0]
    assert geodesic_length(rel[:4], p) == 4
    assert geodesic_length(rel[:5], p) == 3


def test_reduced_words_counts_and_order():
    for n in range(5):
        ws = list(reduced_words(8, n))
        assert len(ws) == (1 if n == 0 else 8 * 7 ** (n - 1))
        assert ws == sorted(ws)


def test_abelianization_is_homomorphism():
    p = surface_presentation(3)
    assert abelianization(p.relators[0], 6) == (0,) * 6
    assert abelianization((0, 0, 3), 2) == (2, -1)
