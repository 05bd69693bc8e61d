"""The linear order of type zeta * eta: rationally many copies of Z.

Points are (block, offset) with block a rational and offset an integer,
ordered lexicographically.  Automorphisms combine any order-automorphism of
the block line with an independent translation inside each block.
"""

from ..core import infinite_answer
from .base import Structure
from .dlo import DLO
from .zorder import zigzag

_dlo = DLO()


class ZetaEta(Structure):
    structure_id = "zetaeta"
    description = "eta-indexed copies of Z (order type zeta times eta)"

    oligomorphic = False
    algebraically_finite = False
    stabilizer_orbits_all_infinite = False
    single_copy = False

    def _generate(self):
        d = 0
        while True:
            for i in range(d + 1):
                yield (_dlo.point_at(i), zigzag(d - i))
            d += 1

    def encode(self, p):
        return "(%s|%d)" % (_dlo.encode(p[0]), p[1])

    def decode(self, s):
        s = s.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError("expected (q|n)")
        q, n = s[1:-1].split("|")
        return (_dlo.decode(q), int(n))

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        blocks = {q for (q, _) in sockel}
        if x[0] in blocks:
            return x == y  # a pinned block is fixed pointwise
        if y[0] in blocks:
            return False
        # free blocks: same cut position among the pinned blocks
        return all((x[0] < b) == (y[0] < b) for b in blocks)

    def extendable(self, pm):
        inner = {}
        for src, tgt in pm.items():
            d = tgt[1] - src[1]
            if inner.setdefault(src[0], d) != d:
                return False
        items = list(pm.items())
        for i, (a, fa) in enumerate(items):
            for b, fb in items[i + 1:]:
                if (a[0] == b[0]) != (fa[0] == fb[0]):
                    return False
                if a[0] != b[0] and (a[0] < b[0]) != (fa[0] < fb[0]):
                    return False
        return True

    def typeset_finite(self, sockel, x):
        blocks = {q for (q, _) in sockel}
        if x[0] in blocks:
            return self.singleton_answer(x)
        return infinite_answer()

    def type_unranked(self, sockel, x):
        blocks = {q for (q, _) in sockel}
        # free-block orbits have order type zeta*eta: unranked
        return x[0] not in blocks

    def target_candidates(self, items, source):
        from .dlo import simplest_in_gap
        lo = hi = None
        for (sq, sn), (tq, tn) in items:
            if sq == source[0]:
                yield (tq, source[1] + (tn - sn))  # block pinned, delta forced
                return
            if sq < source[0]:
                lo = tq if lo is None or tq > lo else lo
            else:
                hi = tq if hi is None or tq < hi else hi
        for q in simplest_in_gap(lo, hi):
            yield (q, 0)

    def source_candidates(self, items, target):
        from .dlo import simplest_in_gap
        lo = hi = None
        for (sq, sn), (tq, tn) in items:
            if tq == target[0]:
                yield (sq, target[1] - (tn - sn))
                return
            if tq < target[0]:
                lo = sq if lo is None or sq > lo else lo
            else:
                hi = sq if hi is None or sq < hi else hi
        for q in simplest_in_gap(lo, hi):
            yield (q, 0)
