"""A Z-levelled tree: unique predecessor, countably many successors.

Model: a node at level L is a choice sequence with finitely many nonzero
entries, one entry per level i <= L recording which child the node's
ancestor at level i is of its parent (0 = the distinguished spine child).
Encoded as (L, ((i, e), ...)) with the nonzero entries sorted by level.
Downward chains are unique, so meets exist and the poset is a tree whose
intervals are finite.

Automorphisms shift levels uniformly and permute sibling subtrees, so a
finite partial injection extends to an automorphism exactly when it shifts
all levels by one constant and preserves the levels of pairwise meets.
"""

from ..core import infinite_answer
from .base import Structure


def level(x):
    return x[0]


def _cmap(x):
    return dict(x[1])


def trunc(x, lvl):
    if lvl > x[0]:
        raise ValueError("cannot truncate upward")
    return (lvl, tuple((i, e) for (i, e) in x[1] if i <= lvl))


def tree_le(x, y):
    return x[0] <= y[0] and trunc(y, x[0]) == x


def meet(x, y):
    cx, cy = _cmap(x), _cmap(y)
    diff = [i for i in set(cx) | set(cy) if cx.get(i, 0) != cy.get(i, 0)]
    lvl = min(x[0], y[0])
    if diff:
        lvl = min(lvl, min(diff) - 1)
    return trunc(x if lvl <= x[0] else y, lvl)


def _cost_sets(rem, min_d):
    """Tuples of (depth, choice) with distinct ascending depths >= min_d,
    choices >= 1, total cost sum(depth + choice) == rem."""
    if rem == 0:
        yield ()
        return
    for d in range(min_d, rem):
        for e in range(1, rem - d + 1):
            for rest in _cost_sets(rem - d - e, d + 1):
                yield ((d, e),) + rest


class TreeTZ(Structure):
    structure_id = "treetz"
    description = "Z-levelled tree, unique predecessor, infinitely many successors"

    oligomorphic = False
    algebraically_finite = False
    stabilizer_orbits_all_infinite = False
    single_copy = False

    def _generate(self):
        cost = 0
        while True:
            batch = []
            for lvl in range(-cost, cost + 1):
                rem = cost - abs(lvl)
                for cs in _cost_sets(rem, 0):
                    choices = tuple((lvl - d, e) for (d, e) in reversed(cs))
                    batch.append((lvl, choices))
            for node in sorted(batch):
                yield node
            cost += 1

    def encode(self, p):
        entries = ",".join("%d:%d" % (i, e) for (i, e) in p[1])
        return "L%d:[%s]" % (p[0], entries)

    def decode(self, s):
        s = s.strip()
        if not s.startswith("L") or ":[" not in s or not s.endswith("]"):
            raise ValueError("expected L<level>:[i:e,...]")
        head, body = s[1:-1].split(":[", 1)
        lvl = int(head)
        choices = []
        if body:
            for item in body.split(","):
                i, e = item.split(":")
                choices.append((int(i), int(e)))
        choices.sort()
        if any(e < 1 or i > lvl for (i, e) in choices):
            raise ValueError("invalid choice entries")
        return (lvl, tuple(choices))

    def same_type(self, sockel, x, y):
        self.check_same_type_pre(sockel, x, y)
        if not sockel:
            return True
        if level(x) != level(y):
            return False
        return all(
            level(meet(x, a)) == level(meet(y, a)) for a in sockel)

    def extendable(self, pm):
        items = list(pm.items())
        deltas = {level(t) - level(s) for s, t in items}
        if len(deltas) > 1:
            return False
        d = deltas.pop() if deltas else 0
        for i, (a, fa) in enumerate(items):
            for b, fb in items[i + 1:]:
                if level(meet(fa, fb)) - level(meet(a, b)) != d:
                    return False
        return True

    def typeset_finite(self, sockel, x):
        if any(tree_le(x, a) for a in sockel):
            return self.singleton_answer(x)  # ancestor chains are fixed
        return infinite_answer()

    def type_unranked(self, sockel, x):
        return not any(tree_le(x, a) for a in sockel)
