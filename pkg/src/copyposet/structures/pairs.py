"""The induced action of the symmetric group on 2-subsets of N.

Points are unordered pairs {i, j}; a permutation of N acts by taking images
elementwise.  Orbit questions reduce to searches over injective assignments
of the finite supports involved.
"""

from itertools import combinations

from ..core import finite_answer, infinite_answer
from .base import Structure


def support(pairs):
    s = set()
    for p in pairs:
        s |= p
    return s


def _find_assignment(pairs_map):
    """An injective support assignment inducing the given map on pairs, or
    None.  Each support element of the domain side must go into every image
    of a pair containing it; backtracking handles global injectivity."""
    cand = {}
    for u, v in pairs_map.items():
        for e in u:
            cur = cand.get(e)
            cand[e] = set(v) if cur is None else cur & v
    if any(not c for c in cand.values()):
        return None
    elems = sorted(cand, key=lambda e: (len(cand[e]), e))
    used = set()
    chosen = {}

    def assign(k):
        if k == len(elems):
            return True
        e = elems[k]
        for t in sorted(cand[e]):
            if t in used:
                continue
            used.add(t)
            chosen[e] = t
            if assign(k + 1):
                return True
            used.discard(t)
            del chosen[e]
        return False

    return chosen if assign(0) else None


def _assignment_exists(pairs_map):
    return _find_assignment(pairs_map) is not None


class PairsAction(Structure):
    structure_id = "pairs"
    description = "2-subsets of N under the symmetric group of N"

    oligomorphic = True
    algebraically_finite = True
    stabilizer_orbits_all_infinite = False
    single_copy = False

    def _generate(self):
        j = 1
        while True:
            for i in range(j):
                yield frozenset((i, j))
            j += 1

    def index_of(self, p):
        i, j = sorted(p)
        return j * (j - 1) // 2 + i

    def encode(self, p):
        return "{%d,%d}" % tuple(sorted(p))

    def decode(self, s):
        s = s.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError("expected {i,j}")
        i, j = (int(t) for t in s[1:-1].split(","))
        if i < 0 or j < 0 or i == j:
            raise ValueError("expected a 2-subset of the naturals")
        return frozenset((i, j))

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        m = {u: u for u in sockel}
        m[x] = y
        return _assignment_exists(m)

    def extendable(self, pm):
        return _assignment_exists(dict(pm.items()))

    def typeset_finite(self, sockel, x):
        supp = support(sockel)
        if not x <= supp:
            return infinite_answer()  # a free element can move arbitrarily far
        members = [
            frozenset(c)
            for c in combinations(sorted(supp), 2)
            if frozenset(c) not in sockel
            and (frozenset(c) == x or self.same_type(sockel, x, frozenset(c)))
        ]
        return finite_answer(self.sort_points(members))

    def type_unranked(self, sockel, x):
        # oligomorphic: unranked iff the typeset is infinite
        return not x <= support(sockel)

    def target_candidates(self, items, source):
        for i in range(300):
            yield self.point_at(i)
        # extend a witness assignment of the current map over the source's
        # support, sending unconstrained elements to fresh naturals
        pm = dict(items)
        asn = _find_assignment(pm)
        if asn is None:
            return
        used = set(asn.values()) | support(pm.values())
        base = max(used | source | {0}) + 1
        k = 0
        while True:
            img = []
            fresh = base + 2 * k
            for e in sorted(source):
                if e in asn:
                    img.append(asn[e])
                else:
                    img.append(fresh)
                    fresh += 1
            if len(set(img)) == 2:
                yield frozenset(img)
            k += 1

    def source_candidates(self, items, target):
        for i in range(300):
            yield self.point_at(i)
        inv = {v: u for u, v in dict(items).items()}
        asn = _find_assignment(inv)
        if asn is None:
            return
        used = set(asn.values()) | support(inv.values())
        base = max(used | target | {0}) + 1
        k = 0
        while True:
            src = []
            fresh = base + 2 * k
            for e in sorted(target):
                if e in asn:
                    src.append(asn[e])
                else:
                    src.append(fresh)
                    fresh += 1
            if len(set(src)) == 2:
                yield frozenset(src)
            k += 1

    def ac_members_exact(self, sockel):
        supp = sorted(support(sockel))
        return frozenset(frozenset(c) for c in combinations(supp, 2))
