"""The Rado graph on N presented by the BIT predicate."""

from ..core import infinite_answer
from .base import Structure


def adjacent(i, j):
    """i ~ j iff, with i < j, bit i of j is set."""
    if i == j:
        return False
    if i > j:
        i, j = j, i
    return (j >> i) & 1 == 1


_LADDER_BASE = 300  # above every small-scan witness, so bit bands stay apart


def _pattern_witnesses(pattern):
    """Vertices realizing a BIT-adjacency pattern to the given vertices:
    small ones by scanning, then "ladder" constructions.

    The enum-least witness for a pattern over a vertex near 2^k sits near
    2^(2^k), far past any scan budget, so beyond the small scan witnesses
    are built at reserved bit positions: a ladder witness has its top bit at
    a fresh position >= _LADDER_BASE, carries one ladder bit per required
    big neighbour and one low bit per required small neighbour.  All the
    adjacencies a construction will ever query are then decided by bits at
    positions that grow by one per witness, keeping values polynomial in
    length."""
    for y in range(256):
        if all(adjacent(y, t) == adj for t, adj in pattern):
            yield y
    bits = 0
    top = _LADDER_BASE
    big = []
    for t, adj in pattern:
        if t >= 256:
            big.append(t)
        if t >= (1 << _LADDER_BASE):
            a = t.bit_length() - 1
            top = max(top, a + 1)
            if adj:
                bits += 1 << a
        elif adj:
            bits += 1 << t
    # from-below witnesses: set-bit positions of the big constrained
    # vertices decide adjacency to them
    seen = set(range(256))
    for t in big:
        pos = 0
        v = t
        while v:
            if v & 1 and pos not in seen:
                seen.add(pos)
                if all(adjacent(pos, u) == adj for u, adj in pattern):
                    yield pos
            v >>= 1
            pos += 1
    anchor = top
    while True:
        yield bits + (1 << anchor)
        anchor += 1


class RadoGraph(Structure):
    structure_id = "rado"
    description = "Rado graph via the BIT adjacency predicate"

    oligomorphic = True
    algebraically_finite = True
    stabilizer_orbits_all_infinite = True
    single_copy = False

    def _generate(self):
        i = 0
        while True:
            yield i
            i += 1

    def index_of(self, p):
        return p

    def encode(self, p):
        return str(p)

    def decode(self, s):
        p = int(s)
        if p < 0:
            raise ValueError("rado vertices are naturals")
        return p

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        # same adjacency pattern to the sockel (homogeneity)
        return all(adjacent(x, a) == adjacent(y, a) for a in sockel)

    def extendable(self, pm):
        items = list(pm.items())
        for i, (a, fa) in enumerate(items):
            for b, fb in items[i + 1:]:
                if adjacent(a, b) != adjacent(fa, fb):
                    return False
        return True

    def typeset_finite(self, sockel, x):
        # every adjacency pattern is realized by infinitely many vertices
        return infinite_answer()

    def target_candidates(self, items, source):
        pattern = [(t, adjacent(source, s)) for s, t in items]
        yield from _pattern_witnesses(pattern)

    def source_candidates(self, items, target):
        pattern = [(s, adjacent(target, t)) for s, t in items]
        yield from _pattern_witnesses(pattern)

    def type_unranked(self, sockel, x):
        return True

    def ac_members_exact(self, sockel):
        return frozenset(sockel)
