"""The integers as a linear order; automorphisms are the translations."""

from ..core import infinite_answer
from .base import Structure


def zigzag(i):
    """0, 1, -1, 2, -2, ..."""
    n = (i + 1) // 2
    return n if i % 2 == 1 else -n


def zigzag_index(n):
    if n == 0:
        return 0
    return 2 * n - 1 if n > 0 else -2 * n


class ZOrder(Structure):
    structure_id = "zorder"
    description = "integers with the natural order (translations only)"

    oligomorphic = False
    algebraically_finite = False
    stabilizer_orbits_all_infinite = False
    single_copy = True

    def _generate(self):
        i = 0
        while True:
            yield zigzag(i)
            i += 1

    def index_of(self, p):
        return zigzag_index(p)

    def encode(self, p):
        return str(p)

    def decode(self, s):
        return int(s)

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        if not sockel:
            return True  # translations act transitively
        return x == y  # any fixed point pins the translation

    def extendable(self, pm):
        # a partial map extends to a translation iff all differences agree
        deltas = {tgt - src for src, tgt in pm.items()}
        return len(deltas) <= 1

    def typeset_finite(self, sockel, x):
        if not sockel:
            return infinite_answer()
        return self.singleton_answer(x)

    def type_unranked(self, sockel, x):
        # every point orbit is ranked: rank 0 over a nonempty sockel,
        # rank 1 for the full orbit of the translation group
        return False
