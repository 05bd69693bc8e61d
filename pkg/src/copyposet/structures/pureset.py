"""The pure countable set: U = N with the full symmetric group."""

from ..core import infinite_answer
from .base import Structure


class PureSet(Structure):
    structure_id = "pureset"
    description = "naturals acted on by the full symmetric group"

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
            raise ValueError("pureset points are naturals")
        return p

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        return True

    def extendable(self, pm):
        return True  # any finite injection extends to a permutation

    def typeset_finite(self, sockel, x):
        return infinite_answer()

    def type_unranked(self, sockel, x):
        return True

    def ac_members_exact(self, sockel):
        return frozenset(sockel)
