"""Base interface for countable group actions (U, G).

A Structure presents one countable set U with a fixed canonical enumeration
u_0, u_1, ... and a decidable calculus for the pointwise stabilizers of its
automorphism group: orbit equality of points over a finite sockel, finite
extendability of partial injections, exact finiteness of typesets, and
certified unrankedness.  All operations are pure; instances hold only
append-only enumeration caches and are safe to share.
"""

from __future__ import annotations

from ..core import PartialMap, finite_answer
from ..errors import PreconditionError, SearchBudgetError

# Safety cap for searches that are mathematically guaranteed to terminate on
# the built-ins; hitting it means a broken oracle, not a tight budget.
_SCAN_CAP = 200_000


class Structure:
    structure_id = "?"
    description = ""

    # capability flags reported by the CLI and consulted by constructions
    oligomorphic = False
    algebraically_finite = False
    stabilizer_orbits_all_infinite = False
    single_copy = False
    finiteness_exact = True
    unranked_certifier = True

    def __init__(self):
        self._enum_cache = []
        self._index_cache = {}

    # -- enumeration ------------------------------------------------------

    def _generate(self):
        """Yield the canonical enumeration u_0, u_1, ... (never exhausts)."""
        raise NotImplementedError

    def _grow(self, n):
        if len(self._enum_cache) >= n:
            return
        if not hasattr(self, "_gen"):
            self._gen = self._generate()
        while len(self._enum_cache) < n:
            p = next(self._gen)
            self._index_cache[p] = len(self._enum_cache)
            self._enum_cache.append(p)

    def point_at(self, i):
        if i < 0:
            raise PreconditionError("negative enumeration index")
        self._grow(i + 1)
        return self._enum_cache[i]

    def prefix(self, n):
        """The first n points of the canonical enumeration."""
        if n < 0:
            raise PreconditionError("n must be >= 0")
        self._grow(n)
        return list(self._enum_cache[:n])

    def index_of(self, p):
        """Position of p in the canonical enumeration (total, by bijectivity)."""
        while p not in self._index_cache:
            if len(self._enum_cache) > _SCAN_CAP:
                raise SearchBudgetError(
                    "point %r not found within enumeration scan cap" % (p,))
            self._grow(len(self._enum_cache) + 64)
        return self._index_cache[p]

    def sort_points(self, pts):
        return sorted(pts, key=self.index_of)

    # -- text encodings (bit-exact, used by CLI and certificates) ---------

    def encode(self, p):
        raise NotImplementedError

    def decode(self, s):
        raise NotImplementedError

    # -- orbit calculus ----------------------------------------------------

    def same_type(self, sockel, x, y):
        """True iff some g in G fixes ``sockel`` pointwise and maps x to y.

        Pre: x and y are not in sockel.  Exact for every built-in."""
        raise NotImplementedError

    def extendable(self, pm):
        """True iff some g in G extends the partial injection ``pm``."""
        raise NotImplementedError

    def typeset_finite(self, sockel, x):
        """Exact finiteness of the typeset of <sockel |> x>."""
        raise NotImplementedError

    def type_unranked(self, sockel, x):
        """Certified rank status of the type <sockel |> x>.

        True: certified unranked.  False: certified ranked.  None: the
        structure cannot certify (reserved for user-supplied oracles)."""
        raise NotImplementedError

    # -- generic derived operations ----------------------------------------

    def check_same_type_pre(self, sockel, x, y):
        if x in sockel or y in sockel:
            raise PreconditionError("representative lies in the sockel")

    def extensions(self, pm, x, budget):
        """Yield, in enumeration order, the y with ``pm + {x -> y}``
        extendable, scanning the first ``budget`` enumeration positions."""
        if not self.extendable(pm):
            raise PreconditionError("base map is not extendable")
        if x in pm:
            raise PreconditionError("x already in the sources of the map")
        for i in range(budget):
            y = self.point_at(i)
            cand = pm.extended(x, y)
            if cand is not None and self.extendable(cand):
                yield y

    def typeset_iter(self, sockel, x):
        """Members of the typeset of <sockel |> x> in enumeration order.

        For finite typesets the stream is exact and exhausts; for infinite
        ones it is the on-demand witness stream."""
        self.check_same_type_pre(sockel, x, x)
        fin = self.typeset_finite(sockel, x)
        if fin.is_finite:
            for y in self.sort_points(fin.members):
                yield y
            return
        i = 0
        while True:
            if i > _SCAN_CAP:
                raise SearchBudgetError("typeset stream scan cap exceeded")
            y = self.point_at(i)
            i += 1
            if y in sockel:
                continue
            if y == x or self.same_type(sockel, x, y):
                yield y

    def typeset_members(self, sockel, x, n):
        out = []
        for y in self.typeset_iter(sockel, x):
            if len(out) >= n:
                break
            out.append(y)
        return out

    def unranked_witness(self, sockel, x, sockel_ext):
        """A continuation witness for property (p), or None if the type
        <sockel |> x> is certified ranked.

        Returns q in the typeset of <sockel |> x>, q not in ``sockel_ext``,
        with <sockel_ext |> q> certified unranked."""
        sockel = frozenset(sockel)
        ext = frozenset(sockel_ext)
        if not sockel <= ext:
            raise PreconditionError("sockel_ext must contain the sockel")
        status = self.type_unranked(sockel, x)
        if status is False:
            return None
        if status is None:
            return None
        for q in self.typeset_iter(sockel, x):
            if q in ext:
                continue
            if self.type_unranked(ext, q) is True:
                return q
        raise SearchBudgetError("no unranked continuation found (oracle bug?)")

    # -- construction move policies -----------------------------------------

    def target_candidates(self, items, source):
        """Candidate images for a fresh ``source`` given the mapped pairs
        ``items``, most preferred first; may be infinite (the engine caps
        the scan).  Default: enumeration order.  Structures whose witnesses
        sit deep in the enumeration override this with constructed
        candidates."""
        del items, source
        i = 0
        while True:
            yield self.point_at(i)
            i += 1

    def source_candidates(self, items, target):
        """Candidate fresh sources for claiming ``target`` into an image."""
        del items, target
        i = 0
        while True:
            yield self.point_at(i)
            i += 1

    def orbit_reps(self, sockel, pool):
        """Partition ``pool`` (points outside sockel) into typeset classes.

        Returns [(rep, members)] with enum-least reps, in rep order."""
        classes = []
        for p in self.sort_points(pool):
            for rep, members in classes:
                if self.same_type(sockel, rep, p):
                    members.append(p)
                    break
            else:
                classes.append((p, [p]))
        return classes

    def tuples_same_orbit(self, xs, ys):
        """Orbit equality of two equal-length tuples under G."""
        if len(xs) != len(ys):
            return False
        m = {}
        for a, b in zip(xs, ys):
            if m.get(a, b) != b:
                return False
            m[a] = b
        try:
            pm = PartialMap(m.items())
        except PreconditionError:
            return False
        return self.extendable(pm)

    # -- algebraic-closure helpers ----------------------------------------

    def ac_members_exact(self, sockel):
        """The full algebraic closure of a finite set, for algebraically
        finite structures only (exact, closed form)."""
        raise PreconditionError(
            "%s is not certified algebraically finite" % self.structure_id)

    def ac_is_exact(self, sockel):
        """Whether the window computation of ac(sockel) captures all of it."""
        return self.algebraically_finite

    def singleton_answer(self, x):
        return finite_answer((x,))

    def __repr__(self):
        return "<structure %s>" % self.structure_id
