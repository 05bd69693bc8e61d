"""Shared value types: partial injections, finiteness answers, memberships."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError


class PartialMap:
    """A finite partial injection on the points of one structure.

    Functional by construction (dict-backed); injectivity is enforced.
    Instances are immutable from the outside: use ``extended`` to grow.
    """

    __slots__ = ("_map",)

    def __init__(self, pairs=()):
        m = dict(pairs)
        targets = list(m.values())
        if len(set(targets)) != len(targets):
            raise PreconditionError("partial map is not injective: %r" % (m,))
        self._map = m

    def __len__(self):
        return len(self._map)

    def __contains__(self, src):
        return src in self._map

    def __getitem__(self, src):
        return self._map[src]

    def get(self, src, default=None):
        return self._map.get(src, default)

    def items(self):
        return self._map.items()

    @property
    def sources(self):
        return self._map.keys()

    @property
    def targets(self):
        return set(self._map.values())

    def extended(self, src, tgt):
        """Return self plus ``src -> tgt``, or None if the extension would
        break functionality or injectivity."""
        old = self._map.get(src)
        if old is not None or src in self._map:
            return self if old == tgt else None
        if tgt in self.targets:
            return None
        pm = PartialMap.__new__(PartialMap)
        m = dict(self._map)
        m[src] = tgt
        pm._map = m
        return pm

    def inverse(self):
        return PartialMap((v, k) for k, v in self._map.items())

    def fixes(self, points):
        return all(self._map.get(a) == a for a in points)

    def __eq__(self, other):
        return isinstance(other, PartialMap) and self._map == other._map

    def __repr__(self):
        inner = ", ".join("%r->%r" % kv for kv in self._map.items())
        return "PartialMap{%s}" % inner


FINITE = "finite"
INFINITE = "infinite"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class FinitenessAnswer:
    """Answer to "is this typeset finite?".

    ``members`` lists the entire typeset when kind == "finite".  For
    "infinite" the witness stream is ``Structure.typeset_iter``.  "unknown"
    is reserved for user oracles without a finiteness method and carries the
    scanned window."""

    kind: str
    members: tuple = ()
    window: int = 0

    @property
    def is_finite(self):
        return self.kind == FINITE

    @property
    def is_infinite(self):
        return self.kind == INFINITE


def finite_answer(members):
    return FinitenessAnswer(FINITE, tuple(members))


def infinite_answer():
    return FinitenessAnswer(INFINITE)


def unknown_answer(window):
    return FinitenessAnswer(UNKNOWN, (), window)


@dataclass(frozen=True)
class Membership:
    """Three-valued membership in a progressively constructed copy.

    In/Out answers are permanent across stages; unknown carries the stage at
    which the question was asked."""

    kind: str
    stage: int = -1

    @property
    def is_in(self):
        return self.kind == "in"

    @property
    def is_out(self):
        return self.kind == "out"

    @property
    def is_unknown(self):
        return self.kind == "unknown"

    def __repr__(self):
        if self.kind == "unknown":
            return "UnknownAtStage(%d)" % self.stage
        return self.kind.capitalize()


IN = Membership("in")
OUT = Membership("out")


def unknown_at(stage):
    return Membership("unknown", stage)
