"""Bounded verification and the independent ground-truth oracle.

check_copy drives the membership characterization at a finite window: every
small sockel inside the copy, paired with every window point, must have an
orbit witness landing in the copy.  Verdicts are three-valued; unknown
carries the unresolved obligations instead of silently passing.

brute_same_type re-derives orbit equality from each structure's raw data
(order comparisons, adjacency bits, class labels, differences, meets,
support permutations) without touching the structures' fast decision
procedures; the differential test pits the two against each other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import PreconditionError
from .structures.rado import adjacent as rado_adjacent
from .structures.treetz import level as tree_level, meet as tree_meet

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Certificate:
    kind: str
    structure_id: str
    params: dict = field(default_factory=dict)
    verdict: str = "pass"  # pass | fail | unknown
    counterexample: dict | None = None
    witnesses: tuple = ()
    unresolved: tuple = ()

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_record(self):
        rec = {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "structure": self.structure_id,
            "params": self.params,
            "verdict": self.verdict,
        }
        if self.counterexample is not None:
            rec["counterexample"] = self.counterexample
        if self.witnesses:
            rec["witnesses"] = list(self.witnesses)
        if self.unresolved:
            rec["unresolved"] = list(self.unresolved)
        return rec

    def to_json(self):
        return json.dumps(self.to_record(), sort_keys=True,
                          separators=(",", ":"))


def write_certificates(path, certs):
    with open(path, "w", encoding="utf-8") as fh:
        for c in certs:
            fh.write(c.to_json() + "\n")


def check_copy(handle, depth, sockel_cap=2, budget=500):
    """Certificate for the copy characterization on a window.

    For every sockel F inside the decided part of the copy (|F| bounded)
    and every window point x, searches the typeset of <F |> x> in
    enumeration order for a member decided inside the copy.  fail carries
    the first (F, x) whose typeset provably misses the copy; obligations
    blocked by unknown memberships make the verdict unknown."""
    st = handle.structure
    window = st.prefix(depth)
    inside = [p for p in window if handle.membership(p).is_in]
    unresolved = []
    witnesses = []
    params = {"depth": depth, "sockel_cap": sockel_cap, "budget": budget,
              "copy": handle.describe()}
    for size in range(0, sockel_cap + 1):
        for ftup in combinations(inside, size):
            fset = frozenset(ftup)
            fenc = [st.encode(p) for p in ftup]
            for x in window:
                if x in fset:
                    continue
                if handle.membership(x).is_in:
                    continue  # witness g = identity
                found = None
                saw_unknown = False
                for i in range(budget):
                    y = st.point_at(i)
                    if y in fset:
                        continue
                    if y != x and not st.same_type(fset, x, y):
                        continue
                    m = handle.membership(y)
                    if m.is_in:
                        found = y
                        break
                    if m.is_unknown:
                        saw_unknown = True
                if found is not None:
                    witnesses.append({
                        "sockel": fenc, "point": st.encode(x),
                        "witness": st.encode(found)})
                    continue
                fin = st.typeset_finite(fset, x)
                if fin.is_finite:
                    # the whole typeset is known: consult it directly
                    inside_members = [m for m in st.sort_points(fin.members)
                                      if handle.membership(m).is_in]
                    if inside_members:
                        witnesses.append({
                            "sockel": fenc, "point": st.encode(x),
                            "witness": st.encode(inside_members[0])})
                        continue
                    if all(handle.membership(m).is_out
                           for m in fin.members):
                        return Certificate(
                            "copy-check", st.structure_id, params, "fail",
                            counterexample={
                                "sockel": fenc, "point": st.encode(x),
                                "typeset": [st.encode(m) for m in
                                            st.sort_points(fin.members)]})
                    unresolved.append({"sockel": fenc, "point": st.encode(x)})
                elif saw_unknown:
                    unresolved.append({"sockel": fenc, "point": st.encode(x)})
                else:
                    # every scanned typeset member is decided out
                    return Certificate(
                        "copy-check", st.structure_id, params, "fail",
                        counterexample={
                            "sockel": fenc, "point": st.encode(x),
                            "scanned": budget})
    if unresolved:
        return Certificate("copy-check", st.structure_id, params, "unknown",
                           unresolved=tuple(
                               json.dumps(u, sort_keys=True)
                               for u in unresolved))
    return Certificate("copy-check", st.structure_id, params, "pass",
                       witnesses=tuple(
                           json.dumps(w, sort_keys=True)
                           for w in witnesses[:64]))


# -- ground truth, structure by structure ------------------------------------


def _brute_dlo(fset, x, y):
    pairs = [(a, a) for a in fset] + [(x, y)]
    pairs.sort()
    return all(s1 < s2 and t1 < t2
               for (s1, t1), (s2, t2) in zip(pairs, pairs[1:]))


def _brute_pureset(fset, x, y):
    del fset, x, y
    return True  # the identity on F plus x -> y is injective, so it extends


def _brute_zorder(fset, x, y):
    # the map preserves differences iff a single translation fits
    deltas = {0} if fset else set()
    deltas.add(y - x)
    return len(deltas) <= 1


def _brute_rado(fset, x, y):
    pairs = [(a, a) for a in fset] + [(x, y)]
    for i, (s1, t1) in enumerate(pairs):
        for s2, t2 in pairs[i + 1:]:
            if rado_adjacent(s1, s2) != rado_adjacent(t1, t2):
                return False
    return True


def _brute_equiv(fset, x, y):
    pairs = [(a, a) for a in fset] + [(x, y)]
    for i, (s1, t1) in enumerate(pairs):
        for s2, t2 in pairs[i + 1:]:
            if (s1[0] == s2[0]) != (t1[0] == t2[0]):
                return False
    return True


def _brute_zeta2(fset, x, y):
    pairs = [(a, a) for a in fset] + [(x, y)]
    outer = {t[0] - s[0] for s, t in pairs}
    if len(outer) > 1:
        return False
    inner = {}
    for s, t in pairs:
        d = t[1] - s[1]
        if inner.setdefault(s[0], d) != d:
            return False
    return True


def _brute_zetaeta(fset, x, y):
    pairs = [(a, a) for a in fset] + [(x, y)]
    inner = {}
    for s, t in pairs:
        d = t[1] - s[1]
        if inner.setdefault(s[0], d) != d:
            return False
    for i, (s1, t1) in enumerate(pairs):
        for s2, t2 in pairs[i + 1:]:
            if (s1[0] == s2[0]) != (t1[0] == t2[0]):
                return False
            if s1[0] != s2[0] and (s1[0] < s2[0]) != (t1[0] < t2[0]):
                return False
    return True


def _brute_treetz(fset, x, y):
    pairs = [(a, a) for a in fset] + [(x, y)]
    deltas = {tree_level(t) - tree_level(s) for s, t in pairs}
    if len(deltas) > 1:
        return False
    d = deltas.pop()
    for i, (s1, t1) in enumerate(pairs):
        for s2, t2 in pairs[i + 1:]:
            if tree_level(tree_meet(t1, t2)) - tree_level(tree_meet(s1, s2)) != d:
                return False
    return True


def _brute_pairs(fset, x, y):
    # plain exhaustive search over permutations of the combined support
    elems = sorted(set().union(x, y, *fset) or {0})
    fps = [tuple(sorted(u)) for u in fset]
    xt, yt = tuple(sorted(x)), tuple(sorted(y))
    for perm in permutations(elems):
        img = dict(zip(elems, perm))
        if tuple(sorted((img[xt[0]], img[xt[1]]))) != yt:
            continue
        if all(tuple(sorted((img[u[0]], img[u[1]]))) == u for u in fps):
            return True
    return False


_BRUTE = {
    "dlo": _brute_dlo,
    "pureset": _brute_pureset,
    "zorder": _brute_zorder,
    "rado": _brute_rado,
    "equiv": _brute_equiv,
    "zeta2": _brute_zeta2,
    "zetaeta": _brute_zetaeta,
    "treetz": _brute_treetz,
    "pairs": _brute_pairs,
}


def brute_same_type(structure, sockel, x, y, ground_depth):
    """Ground-truth orbit equality from raw relational data, independent of
    the structure's decision procedure."""
    fset = frozenset(sockel)
    window = set(structure.prefix(ground_depth))
    if not fset <= window or x not in window or y not in window:
        raise PreconditionError("inputs must lie inside the ground window")
    if x in fset or y in fset:
        raise PreconditionError("representative lies in the sockel")
    if x == y:
        return True
    try:
        fn = _BRUTE[structure.structure_id]
    except KeyError:
        raise PreconditionError(
            "no raw oracle for %s" % structure.structure_id) from None
    return fn(fset, x, y)


def check_inclusion(lower, upper, depth):
    """Certificate that the first copy sits inside the second on a window."""
    st = lower.structure
    params = {"depth": depth, "lower": lower.describe(),
              "upper": upper.describe()}
    unresolved = []
    for x in st.prefix(depth):
        ml = lower.membership(x)
        if not ml.is_in:
            continue
        mu = upper.membership(x)
        if mu.is_out:
            return Certificate("inclusion", st.structure_id, params, "fail",
                               counterexample={"point": st.encode(x)})
        if mu.is_unknown:
            unresolved.append(st.encode(x))
    if unresolved:
        return Certificate("inclusion", st.structure_id, params, "unknown",
                           unresolved=tuple(unresolved))
    return Certificate("inclusion", st.structure_id, params, "pass")


def check_disjointness(left, right, depth, core=()):
    """Certificate that two copies meet exactly in ``core`` on a window."""
    st = left.structure
    coreset = frozenset(core)
    params = {"depth": depth,
              "core": [st.encode(p) for p in st.sort_points(coreset)],
              "left": left.describe(), "right": right.describe()}
    unresolved = []
    for x in st.prefix(depth):
        ml, mr = left.membership(x), right.membership(x)
        if x in coreset:
            if not (ml.is_in and mr.is_in):
                return Certificate(
                    "disjointness", st.structure_id, params, "fail",
                    counterexample={"point": st.encode(x),
                                    "reason": "core point not in both"})
            continue
        if ml.is_in and mr.is_in:
            return Certificate(
                "disjointness", st.structure_id, params, "fail",
                counterexample={"point": st.encode(x),
                                "reason": "common point off the core"})
        if not (ml.is_out or mr.is_out):
            unresolved.append(st.encode(x))
    if unresolved:
        return Certificate("disjointness", st.structure_id, params,
                           "unknown", unresolved=tuple(unresolved))
    return Certificate("disjointness", st.structure_id, params, "pass")


def check_meet_irreducible_candidate(handle, x, depth, samples=6, seed=0):
    """Heuristic refutation search for maximality among copies avoiding x.

    Tries to build a copy strictly containing the decided window part of
    the handle and still excluding x; pass means "not refuted", never a
    proof."""
    from . import engine

    st = handle.structure
    if not handle.membership(x).is_out:
        raise PreconditionError("the avoided point must be decided out")
    params = {"depth": depth, "samples": samples, "point": st.encode(x),
              "copy": handle.describe()}
    base = frozenset(handle.decided_in(depth))
    extras = [z for z in st.prefix(depth)
              if z != x and z not in base
              and not handle.membership(z).is_in]
    for z in extras[:samples]:
        try:
            bigger = engine.copy_avoiding(st, base | {z}, {x}, seed=seed)
            bigger.advance(max(2 * depth, 12))
        except Exception:
            continue
        if all(bigger.membership(p).is_in for p in base | {z}) and \
                bigger.membership(x).is_out:
            return Certificate(
                "meet-irreducible", st.structure_id, params, "fail",
                counterexample={"added": st.encode(z),
                                "refuting": bigger.describe()})
    return Certificate("meet-irreducible", st.structure_id, params, "pass",
                       witnesses=("not refuted within %d samples" % samples,))
