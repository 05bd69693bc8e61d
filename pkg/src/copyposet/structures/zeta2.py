"""The linear order of type zeta^2: Z x Z ordered lexicographically.

Automorphisms are block-respecting maps: a single outer translation of the
block index together with an independent inner translation inside each
block, so (a, b) |-> (a + t, b + s_a).
"""

from ..core import infinite_answer
from .base import Structure
from .zorder import zigzag


class Zeta2(Structure):
    structure_id = "zeta2"
    description = "Z x Z lexicographically (order type zeta squared)"

    oligomorphic = False
    algebraically_finite = False
    stabilizer_orbits_all_infinite = False
    single_copy = True

    def _generate(self):
        d = 0
        while True:
            for i in range(d + 1):
                yield (zigzag(i), zigzag(d - i))
            d += 1

    def encode(self, p):
        return "(%d,%d)" % p

    def decode(self, s):
        s = s.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError("expected (a,b)")
        a, b = s[1:-1].split(",")
        return (int(a), int(b))

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        if not sockel:
            return True
        blocks = {a for (a, _) in sockel}
        if x[0] in blocks:
            return x == y  # pinned block: the whole block is fixed pointwise
        return x[0] == y[0]  # free block: the inner translation is arbitrary

    def extendable(self, pm):
        outer = {tgt[0] - src[0] for src, tgt in pm.items()}
        if len(outer) > 1:
            return False
        inner = {}
        for src, tgt in pm.items():
            d = tgt[1] - src[1]
            if inner.setdefault(src[0], d) != d:
                return False
        return True

    def typeset_finite(self, sockel, x):
        if not sockel:
            return infinite_answer()
        blocks = {a for (a, _) in sockel}
        if x[0] in blocks:
            return self.singleton_answer(x)
        return infinite_answer()  # the free block {a} x Z

    def type_unranked(self, sockel, x):
        # orbits have order type 1, zeta or zeta^2: all ranked
        return False
