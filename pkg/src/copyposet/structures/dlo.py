"""The dense linear order (Q, <).

Canonical enumeration: 0 first, then rounds k = 1, 2, ... each emitting
k, -k, k - 1/2, -(k - 1/2) and one filler value from the signed
Stern-Brocot breadth-first stream (positives of a tree row in ascending
order, then their negatives), skipping anything already emitted.  The
rounds front-load every unit interval (s, s+1) so small windows carry
witnesses for them; the filler makes the enumeration onto Q.
"""

from collections import deque
from fractions import Fraction

from ..core import infinite_answer
from .base import Structure

ZERO = Fraction(0)


def simplest_in_gap(lo, hi):
    """Rationals strictly between lo and hi (None for unbounded), simplest
    first in Stern-Brocot order.  Deterministic and exhaustive on the gap."""
    left, right = (-1, 0), (1, 0)
    while True:
        mid = (left[0] + right[0], left[1] + right[1])
        if mid[1] == 0:
            mid = (0, 1)  # root of the full-line tree
        val = Fraction(*mid)
        if lo is not None and val <= lo:
            left = mid
            continue
        if hi is not None and val >= hi:
            right = mid
            continue
        break
    queue = deque([(left, mid, right)])
    while queue:
        lnode, mnode, rnode = queue.popleft()
        val = Fraction(*mnode)
        if (lo is None or val > lo) and (hi is None or val < hi):
            yield val
        span_lo = None if lnode[1] == 0 else Fraction(*lnode)
        span_hi = None if rnode[1] == 0 else Fraction(*rnode)
        lmid = (lnode[0] + mnode[0], lnode[1] + mnode[1])
        rmid = (mnode[0] + rnode[0], mnode[1] + rnode[1])
        # descend only into subtrees whose span meets the open gap
        if (lo is None or val > lo) and (hi is None or span_lo is None
                                         or span_lo < hi):
            queue.append((lnode, lmid, mnode))
        if (hi is None or val < hi) and (lo is None or span_hi is None
                                         or span_hi > lo):
            queue.append((mnode, rmid, rnode))


def _stern_brocot_rows():
    """Rows of the positive Stern-Brocot tree, each in ascending order."""
    row = [((0, 1), (1, 1), (1, 0))]  # (left bound, value, right bound)
    while True:
        yield [Fraction(v[0], v[1]) for (_, v, _) in row]
        nxt = []
        for left, val, right in row:
            lmed = (left[0] + val[0], left[1] + val[1])
            rmed = (val[0] + right[0], val[1] + right[1])
            nxt.append((left, lmed, val))
            nxt.append((val, rmed, right))
        row = nxt


def _signed_sb_stream():
    for row in _stern_brocot_rows():
        for v in row:
            yield v
        for v in row:
            yield -v


class DLO(Structure):
    structure_id = "dlo"
    description = "rationals with the dense linear order"

    oligomorphic = True
    algebraically_finite = True
    stabilizer_orbits_all_infinite = True
    single_copy = False

    def _generate(self):
        emitted = {ZERO}
        yield ZERO
        filler = _signed_sb_stream()
        k = 1
        while True:
            half = Fraction(2 * k - 1, 2)
            for v in (Fraction(k), Fraction(-k), half, -half):
                if v not in emitted:
                    emitted.add(v)
                    yield v
            while True:
                v = next(filler)
                if v not in emitted:
                    emitted.add(v)
                    yield v
                    break
            k += 1

    def encode(self, p):
        if p.denominator == 1:
            return str(p.numerator)
        return "%d/%d" % (p.numerator, p.denominator)

    def decode(self, s):
        return Fraction(s)

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        # same position relative to every sockel point
        return all((x < a) == (y < a) for a in sockel)

    def extendable(self, pm):
        items = sorted(pm.items())
        return all(a[1] < b[1] for a, b in zip(items, items[1:]))

    def typeset_finite(self, sockel, x):
        # stabilizer orbits off the sockel are open intervals
        return infinite_answer()

    def target_candidates(self, items, source):
        lo = hi = None
        for s, t in items:
            if s < source:
                lo = t if lo is None or t > lo else lo
            else:
                hi = t if hi is None or t < hi else hi
        yield from simplest_in_gap(lo, hi)

    def source_candidates(self, items, target):
        lo = hi = None
        for s, t in items:
            if t < target:
                lo = s if lo is None or s > lo else lo
            else:
                hi = s if hi is None or s < hi else hi
        yield from simplest_in_gap(lo, hi)

    def type_unranked(self, sockel, x):
        return True

    def ac_members_exact(self, sockel):
        return frozenset(sockel)
