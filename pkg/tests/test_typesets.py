"""Types, continuations, bounded rank, orbit profiles."""

from fractions import Fraction as F

import pytest

from copyposet import PreconditionError
from copyposet.structures import get_structure
from copyposet import typesets as ts

fs = frozenset


def test_make_type_rejects_rep_in_sockel(dlo):
    with pytest.raises(PreconditionError):
        ts.make_type(dlo, {F(0)}, F(0))


def test_typeset_members_examples():
    dlo = get_structure("dlo")
    t = ts.make_type(dlo, {F(0)}, F(1))
    assert ts.typeset_members(dlo, t, 3) == [F(1), F(1, 2), F(2)]
    z = get_structure("zorder")
    assert ts.typeset_members(z, ts.make_type(z, {0}, 5), 3) == [5]
    ps = get_structure("pureset")
    assert ts.typeset_members(ps, ts.make_type(ps, set(), 0), 2) == [0, 1]


def test_types_equal_by_orbit(dlo):
    t1 = ts.make_type(dlo, {F(0)}, F(1))
    t2 = ts.make_type(dlo, {F(0)}, F(2))
    t3 = ts.make_type(dlo, {F(0)}, F(-1))
    assert ts.types_equal(dlo, t1, t2)
    assert not ts.types_equal(dlo, t1, t3)


# -- continuation partitions ---------------------------------------------------

def test_continuation_partition_dlo_depths(dlo):
    t = ts.make_type(dlo, {F(0)}, F(1))
    reps8 = [h.rep for h in
             ts.continuation_partition(dlo, t, {F(0), F(2)}, 8)]
    assert reps8 == [F(1)]  # only the (0,2) class is visible at depth 8
    reps11 = [h.rep for h in
              ts.continuation_partition(dlo, t, {F(0), F(2)}, 11)]
    assert reps11 == [F(1), F(3)]  # the (2,inf) class appears with 3


def test_continuation_partition_examples():
    ps = get_structure("pureset")
    t = ts.make_type(ps, set(), 0)
    assert [h.rep for h in ts.continuation_partition(ps, t, {1}, 5)] == [0]
    rado = get_structure("rado")
    t = ts.make_type(rado, set(), 0)
    reps = [h.rep for h in ts.continuation_partition(rado, t, {1}, 8)]
    assert reps == [0, 4]  # adjacent to 1 / not adjacent to 1


def test_continuation_partition_requires_extension(dlo):
    t = ts.make_type(dlo, {F(0)}, F(1))
    with pytest.raises(PreconditionError):
        ts.continuation_partition(dlo, t, {F(2)}, 8)


def test_partition_law(structure):
    # continuation typesets are pairwise disjoint and, together with the
    # degenerate classes of extended-sockel points, cover the window part
    # of the typeset
    sockel = frozenset(structure.prefix(1))
    rep = next(p for p in structure.prefix(6) if p not in sockel)
    t = ts.make_type(structure, sockel, rep)
    ext = frozenset(structure.prefix(3))
    depth = 10
    handles = ts.continuation_partition(structure, t, ext, depth)
    window_members = [q for q in structure.prefix(depth)
                      if q not in sockel
                      and (q == rep or structure.same_type(sockel, rep, q))]
    covered = set()
    for h in handles:
        cls = {q for q in window_members
               if q not in ext
               and (q == h.rep or structure.same_type(ext, h.rep, q))}
        assert not (covered & cls), "continuation typesets overlap"
        covered |= cls
    leftovers = set(window_members) - covered
    assert all(q in ext for q in leftovers)


def test_rank_monotone_under_continuation():
    z2 = get_structure("zeta2")
    base = ts.rank_at_most(z2, ts.make_type(z2, set(), (0, 0)), 3, 8)
    assert base.is_at_most and base.bound == 2
    cont = ts.rank_at_most(
        z2, ts.make_type(z2, {(0, 0)}, (1, 0)), 3, 8)
    assert cont.is_at_most and cont.bound <= base.bound


def test_rank_invariant_under_group_elements():
    z2 = get_structure("zeta2")
    # translate the sockel and rep by g = (+1 outer, +2 inner everywhere)
    a = ts.rank_at_most(z2, ts.make_type(z2, {(0, 0)}, (3, 5)), 2, 8)
    b = ts.rank_at_most(z2, ts.make_type(z2, {(1, 2)}, (4, 7)), 2, 8)
    assert a.kind == b.kind and a.bound == b.bound


# -- rank values -----------------------------------------------------------------

def test_rank_values_zorder():
    z = get_structure("zorder")
    a = ts.rank_at_most(z, ts.make_type(z, set(), 0), 1, 4)
    assert a.is_at_most and a.bound == 1
    assert a.witness["extension"] == ["0"]
    a0 = ts.rank_at_most(z, ts.make_type(z, {0}, 5), 1, 4)
    assert a0.is_at_most and a0.bound == 0


def test_rank_values_zeta2():
    z2 = get_structure("zeta2")
    t = ts.make_type(z2, set(), (0, 0))
    assert ts.rank_at_most(z2, t, 1, 8).kind == ts.NOT_WITHIN
    a = ts.rank_at_most(z2, t, 2, 8)
    assert a.is_at_most and a.bound == 2


def test_rank_unranked_certified_dlo(dlo):
    for sockel in (set(), {F(0)}, {F(0), F(1)}):
        rep = F(7, 2) if F(7, 2) not in sockel else F(9, 2)
        a = ts.rank_at_most(dlo, ts.make_type(dlo, sockel, rep), 3, 10)
        assert a.kind == ts.UNRANKED and a.certified


def test_rank_preconditions(dlo):
    t = ts.make_type(dlo, set(), F(0))
    with pytest.raises(PreconditionError):
        ts.rank_at_most(dlo, t, -1, 8)


# -- oligomorphic profiles ---------------------------------------------------------

def test_profile_examples():
    assert ts.oligomorphic_profile(get_structure("dlo"), 2, 6) == 3
    assert ts.oligomorphic_profile(get_structure("pureset"), 2, 6) == 2
    assert ts.oligomorphic_profile(get_structure("rado"), 2, 8) == 3


def test_profile_stabilizes_for_oligomorphic():
    dlo = get_structure("dlo")
    assert ts.oligomorphic_profile(dlo, 2, 8) == \
        ts.oligomorphic_profile(dlo, 2, 10) == 3
    eq = get_structure("equiv")
    assert ts.oligomorphic_profile(eq, 2, 8) == \
        ts.oligomorphic_profile(eq, 2, 10)


def test_profile_grows_for_zorder():
    z = get_structure("zorder")
    assert ts.oligomorphic_profile(z, 2, 4) < \
        ts.oligomorphic_profile(z, 2, 8)


def test_profile_arity_bounds(dlo):
    with pytest.raises(PreconditionError):
        ts.oligomorphic_profile(dlo, 5, 8)
    with pytest.raises(PreconditionError):
        ts.oligomorphic_profile(dlo, 2, 1)
