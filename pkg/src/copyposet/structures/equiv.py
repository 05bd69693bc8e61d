"""The homogeneous equivalence relation: infinitely many infinite classes.

Points are pairs (class, index); all classes have the same (infinite) size,
so the only invariant of a point over a sockel is its class-membership
pattern.
"""

from ..core import infinite_answer
from .base import Structure


class EquivInf(Structure):
    structure_id = "equiv"
    description = "equivalence relation with infinitely many infinite classes"

    oligomorphic = True
    algebraically_finite = True
    stabilizer_orbits_all_infinite = True
    single_copy = False

    def _generate(self):
        d = 0
        while True:
            for c in range(d + 1):
                yield (c, d - c)
            d += 1

    def index_of(self, p):
        c, i = p
        d = c + i
        return d * (d + 1) // 2 + c

    def encode(self, p):
        return "%d.%d" % p

    def decode(self, s):
        c, i = s.split(".")
        c, i = int(c), int(i)
        if c < 0 or i < 0:
            raise ValueError("class and index are naturals")
        return (c, i)

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        return all((x[0] == a[0]) == (y[0] == a[0]) for a in sockel)

    def extendable(self, pm):
        items = list(pm.items())
        for i, (a, fa) in enumerate(items):
            for b, fb in items[i + 1:]:
                if (a[0] == b[0]) != (fa[0] == fb[0]):
                    return False
        return True

    def typeset_finite(self, sockel, x):
        # classes are infinite and there are infinitely many classes
        return infinite_answer()

    def target_candidates(self, items, source):
        forced = None
        used = set()
        for s, t in items:
            used.add(t[0])
            if s[0] == source[0]:
                forced = t[0]
        if forced is not None:
            i = 0
            while True:
                yield (forced, i)
                i += 1
        c = 0
        while True:
            if c not in used:
                for i in range(3):
                    yield (c, i)
            c += 1

    def source_candidates(self, items, target):
        forced = None
        used = set()
        for s, t in items:
            used.add(s[0])
            if t[0] == target[0]:
                forced = s[0]
        if forced is not None:
            i = 0
            while True:
                yield (forced, i)
                i += 1
        c = 0
        while True:
            if c not in used:
                for i in range(3):
                    yield (c, i)
            c += 1

    def type_unranked(self, sockel, x):
        return True

    def ac_members_exact(self, sockel):
        return frozenset(sockel)
