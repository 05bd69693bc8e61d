"""Types over a finite sockel, continuations, bounded rank, orbit profiles.

The rank search realizes the ordinal recursion at desk scale: candidate
sockel extensions come from a finite window, continuation representatives
from a strictly larger probe window (so a candidate extension cannot look
good merely because the window hides the continuations it fails on), and
"unranked" is only ever concluded from a structure-supplied certificate,
never from search failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import PreconditionError

AT_MOST = "at_most"
NOT_WITHIN = "not_within"
UNRANKED = "unranked"

DEFAULT_SOCKEL_EXTENSION_CAP = 6


@dataclass(frozen=True)
class TypeHandle:
    """A type: finite sockel plus a representative point outside it."""

    structure_id: str
    sockel: tuple
    rep: object

    def sockel_set(self):
        return frozenset(self.sockel)


def make_type(structure, sockel, rep):
    sockel = frozenset(sockel)
    if rep in sockel:
        raise PreconditionError("representative lies in the sockel")
    return TypeHandle(structure.structure_id,
                      tuple(structure.sort_points(sockel)), rep)


def types_equal(structure, t1, t2):
    if t1.sockel_set() != t2.sockel_set():
        return False
    if t1.rep == t2.rep:
        return True
    return structure.same_type(t1.sockel_set(), t1.rep, t2.rep)


@dataclass(frozen=True)
class RankAnswer:
    """Outcome of a bounded rank computation.

    at_most: ``bound`` is an upper bound for the rank, with a witness chain
    of sockel extensions down to rank-0 finiteness certificates.
    not_within: exhaustive search over window-bounded extensions failed; not
    evidence of a rank lower bound.
    unranked: certified by the structure's property-(p) witness method."""

    kind: str
    bound: int = -1
    window: int = 0
    certified: bool = False
    witness: dict = field(default_factory=dict, compare=False)

    @property
    def is_at_most(self):
        return self.kind == AT_MOST


def typeset_members(structure, t, n):
    """The first n members of the typeset, in enumeration order."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    return structure.typeset_members(t.sockel_set(), t.rep, n)


def continuation_partition(structure, t, ext_sockel, depth):
    """Representatives of the distinct continuations of t with the given
    larger sockel, drawn from the typeset members within U_depth.

    Members of the typeset that lie in the extended sockel itself have
    degenerate singleton continuations and carry no representative."""
    ext = frozenset(ext_sockel)
    if not t.sockel_set() <= ext:
        raise PreconditionError("extended sockel must contain the sockel")
    sockel = t.sockel_set()
    window = structure.prefix(depth)
    pool = [q for q in window
            if q not in sockel and q not in ext
            and (q == t.rep or structure.same_type(sockel, t.rep, q))]
    reps = structure.orbit_reps(ext, pool)
    return [make_type(structure, ext, rep) for rep, _ in reps]


class _RankSearch:
    def __init__(self, structure, window, size_cap, probe):
        self.structure = structure
        self.window = window
        self.size_cap = size_cap
        self.probe = probe if probe is not None else max(2 * window, window + 8)
        self._memo = {}

    def _class_key(self, sockel, rep):
        # enum-least member of the typeset identifies the orbit
        least = next(iter(self.structure.typeset_iter(sockel, rep)))
        return (sockel, least)

    def bound(self, sockel, rep, k):
        key = (self._class_key(frozenset(sockel), rep), k)
        if key not in self._memo:
            self._memo[key] = self._bound(frozenset(sockel), rep, k)
        return self._memo[key]

    def _bound(self, sockel, rep, k):
        st = self.structure
        fin = st.typeset_finite(sockel, rep)
        if fin.is_finite:
            return RankAnswer(
                AT_MOST, bound=0, window=self.window, certified=True,
                witness={"leaf": [st.encode(m) for m in fin.members]})
        status = st.type_unranked(sockel, rep)
        if status is True:
            return RankAnswer(UNRANKED, window=self.window, certified=True)
        if k <= 0:
            return RankAnswer(NOT_WITHIN, bound=k, window=self.window)
        # candidate extensions come from the window plus the representative
        # itself (the F' = F + {p} pattern; its block may lie past the
        # window).  The rep-pinning extension goes first: it is the move the
        # recursion bottoms out on and it keeps the reported bounds tight.
        cand = set(st.prefix(self.window)) | {rep}
        window_pts = [p for p in st.sort_points(cand) if p not in sockel]
        probe_pts = st.prefix(self.probe)
        candidates = [(rep,)]
        for size in range(1, self.size_cap + 1):
            candidates.extend(
                added for added in combinations(window_pts, size)
                if added != (rep,))
        for added in candidates:
            ext = sockel | set(added)
            pool = [q for q in probe_pts
                    if q not in ext
                    and (q == rep or st.same_type(sockel, rep, q))]
            reps = st.orbit_reps(ext, pool)
            subs = []
            for crep, _ in reps:
                sub = self.bound(ext, crep, k - 1)
                if not sub.is_at_most:
                    subs = None
                    break
                subs.append((crep, sub))
            if subs is None:
                continue
            bound = 1 + max((s.bound for _, s in subs), default=0)
            witness = {
                "extension": [st.encode(p) for p in st.sort_points(ext)],
                "continuations": [
                    {"rep": st.encode(r), "answer": s.witness,
                     "bound": s.bound}
                    for r, s in subs],
            }
            return RankAnswer(AT_MOST, bound=bound, window=self.window,
                              certified=True, witness=witness)
        return RankAnswer(NOT_WITHIN, bound=k, window=self.window)


def rank_at_most(structure, t, k, window, size_cap=DEFAULT_SOCKEL_EXTENSION_CAP,
                 probe=None, search=None):
    """Bounded rank of a type: AtMost with a witness chain, NotWithin after
    exhaustive window search, or certified Unranked."""
    if k < 0 or window < len(t.sockel):
        raise PreconditionError("need k >= 0 and window >= |sockel|")
    if search is None:
        search = _RankSearch(structure, window, size_cap, probe)
    return search.bound(t.sockel_set(), t.rep, k)


def rank_search(structure, window, size_cap=DEFAULT_SOCKEL_EXTENSION_CAP,
                probe=None):
    """A reusable rank engine (shares its memo across queries)."""
    return _RankSearch(structure, window, size_cap, probe)


def oligomorphic_profile(structure, n, window):
    """Number of orbit classes of n-tuples with entries in U_window.

    Stabilizes as the window grows exactly for the oligomorphic built-ins."""
    if not 1 <= n <= 4:
        raise PreconditionError("profile arity is limited to 1..4")
    if window < n:
        raise PreconditionError("window must be >= n")
    pts = structure.prefix(window)
    reps = []
    count = 0
    tuples = [()]
    for _ in range(n):
        tuples = [t + (p,) for t in tuples for p in pts]
    for tup in tuples:
        for r in reps:
            if structure.tuples_same_orbit(r, tup):
                break
        else:
            reps.append(tup)
            count += 1
    return count
