"""Words over a symmetric alphabet, free reduction, and Dehn's algorithm.

Letters are integers.  Generator ``j`` is letter ``2*j`` and its inverse is
``2*j + 1``, so ``inv(i) == i ^ 1``.  Words are plain tuples of letters and
compare lexicographically in letter-index order, which for a surface group
gives ``a1 < a1^-1 < b1 < b1^-1 < a2 < ...``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidGenus, InvalidParameter

Word = tuple


def inv(letter: int) -> int:
    return letter ^ 1


def inverse(w: Sequence[int]) -> Word:
    return tuple(letter ^ 1 for letter in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for letter in w:
        if out and out[-1] == letter ^ 1:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def is_freely_reduced(w: Sequence[int]) -> bool:
    return all(w[i + 1] != w[i] ^ 1 for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return is_freely_reduced(w) and not (len(w) > 1 and w[0] == w[-1] ^ 1)


def rotations(w: Sequence[int]) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(len(w))]


@dataclass(frozen=True)
class Presentation:
    """Group presentation ``<h generators | relators>``.

    ``pieces`` holds every cyclic rotation of every relator and of its
    inverse.  The lookup tables used by Dehn's algorithm and by the
    half-relator swaps are derived from it once at construction.
    """

    h: int
    relators: tuple
    names: tuple = ()
    pieces: tuple = field(init=False, repr=False)
    _longer: dict = field(init=False, repr=False, compare=False)
    _halves: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.h < 2:
            raise InvalidParameter(f"need at least 2 generators, got {self.h}")
        rels = tuple(tuple(r) for r in self.relators)
        if not rels:
            raise InvalidParameter("at least one relator is required")
        for r in rels:
            if not r or not is_cyclically_reduced(r):
                raise InvalidParameter(f"relator {r} is not cyclically reduced")
            if any(not 0 <= x < 2 * self.h for x in r):
                raise InvalidParameter(f"relator {r} uses letters outside the alphabet")
        object.__setattr__(self, "relators", rels)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{j + 1}" for j in range(self.h)))

        seen = set()
        pieces = []
        for r in rels:
            for p in rotations(r) + rotations(inverse(r)):
                if p not in seen:
                    seen.add(p)
                    pieces.append(p)
        object.__setattr__(self, "pieces", tuple(pieces))

        # longer[m]: subword of length m > |piece|/2  ->  inverse of the rest
        longer: dict[int, dict] = {}
        # halves: subword equal to exactly half a piece -> inverse of the other half
        halves: dict[Word, set] = {}
        for p in pieces:
            n = len(p)
            for m in range(n // 2 + 1, n + 1):
                longer.setdefault(m, {}).setdefault(p[:m], inverse(p[m:]))
            if n % 2 == 0:
                halves.setdefault(p[: n // 2], set()).add(inverse(p[n // 2:]))
        object.__setattr__(self, "_longer", dict(sorted(longer.items())))
        object.__setattr__(self, "_halves", {u: tuple(sorted(v)) for u, v in halves.items()})

    @property
    def k(self) -> int:
        return 2 * self.h

    def letter_name(self, letter: int) -> str:
        name = self.names[letter >> 1]
        return name if letter % 2 == 0 else name + "^-1"

    def format(self, w: Sequence[int]) -> str:
        return " ".join(self.letter_name(x) for x in w) if w else "1"


def surface_presentation(g: int) -> Presentation:
    """Genus-g surface group with relator ``a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1``."""
    if g < 2:
        raise InvalidGenus(f"genus must be >= 2, got {g}")
    rel = []
    names = []
    for j in range(g):
        a, b = 4 * j, 4 * j + 2
        rel += [a, b, a + 1, b + 1]
        names += [f"a{j + 1}", f"b{j + 1}"]
    return Presentation(h=2 * g, relators=(tuple(rel),), names=tuple(names))


def _dehn_step(w: Word, p: Presentation):
    # shortest qualifying subword first, leftmost within a length
    n = len(w)
    for m, table in p._longer.items():
        if m > n:
            break
        for i in range(n - m + 1):
            rep = table.get(w[i:i + m])
            if rep is not None:
                return w[:i] + rep + w[i + m:]
    return None


def dehn_reduce(w: Iterable[int], p: Presentation) -> Word:
    """Dehn's algorithm: free-reduce, then shorten more-than-half relator subwords until none remain."""
    w = free_reduce(w)
    while True:
        shorter = _dehn_step(w, p)
        if shorter is None:
            return w
        w = free_reduce(shorter)


def is_identity(w: Iterable[int], p: Presentation) -> bool:
    return not dehn_reduce(w, p)


def _half_swaps(w: Word, p: Presentation):
    n = len(w)
    for length in {len(u) for u in p._halves}:
        for i in range(n - length + 1):
            for rep in p._halves.get(w[i:i + length], ()):
                yield w[:i] + rep + w[i + length:]


def geodesic_class(w: Iterable[int], p: Presentation) -> set:
    """All words reachable from a geodesic form of ``w`` by half-relator swaps.

    If a word in the closure turns out to be shortenable, the search restarts
    from the shorter word, so the returned words all have geodesic length.
    """
    w = dehn_reduce(w, p)
    while True:
        seen = {w}
        queue = deque([w])
        restart = None
        while queue and restart is None:
            u = queue.popleft()
            for v in _half_swaps(u, p):
                if v in seen:
                    continue
                r = dehn_reduce(v, p)
                if len(r) < len(v):
                    restart = r
                    break
                seen.add(v)
                queue.append(v)
        if restart is None:
            return seen
        w = restart


def canonical_geodesic(w: Iterable[int], p: Presentation) -> Word:
    """Lexicographically least geodesic representative of the element ``w``."""
    return min(geodesic_class(w, p))


def geodesic_length(w: Iterable[int], p: Presentation) -> int:
    return len(canonical_geodesic(w, p))


def reduced_words(k: int, length: int):
    """Yield every freely reduced word of the given length, in lexicographic order."""
    def extend(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for s in range(k):
            if prefix and prefix[-1] == s ^ 1:
                continue
            prefix.append(s)
            yield from extend(prefix)
            prefix.pop()
    yield from extend([])


def abelianization(w: Iterable[int], h: int) -> tuple:
    """Exponent-sum vector; a homomorphism invariant used to bucket words in oracles."""
    v = [0] * h
    for x in w:
        v[x >> 1] += -1 if x & 1 else 1
    return tuple(v)
