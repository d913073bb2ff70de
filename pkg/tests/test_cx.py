from math import comb

import pytest

from parsumlab.combinatorics import Germ, GroupHom, cyclic_group, make_universal_action, trivial_group
from parsumlab.cx import (CX, CXBounds, core_value, cx_build, cx_functor, epsilon, epsilon_simplex, epsilon_tilde,
                          nerve_of_functor_matches, poset)
from parsumlab.cx_fixed import (cx_fixed_and_homotopy_fixed, fixed_point_reduction_check, nonsaturation_witness,
                                weak_saturation_check)
from parsumlab.cx_monoidal import (cx_parsummable_lift, iota, nabla, verify_epsilon_monoidal,
                                   verify_nabla_coherence, verify_rho_laws)
from parsumlab.em import NerveEM, ProductSSet, finite_subsets, trivial_point
from parsumlab.errors import InsufficientGermDomain, SupportsOverlap
from parsumlab.fincat import check_equivalence
from parsumlab.parsummable import example_finite_subsets, nerve_parsummable, verify_parsummable
from parsumlab.sset import homology_equivalence_check, nerve

fs = frozenset


@pytest.fixture(scope="module")
def subsets_cx():
    X = NerveEM(finite_subsets())
    cx = CX(X, CXBounds(a_max=1, s_max=1, m_max=1, window=2, d=2))
    return cx, cx.category()


def test_act_example():
    cx = CX(NerveEM(finite_subsets()), CXBounds(a_max=1, s_max=1, m_max=1, window=6))
    objs = cx.make_objects([(2,)], [(5,)], lambda A: [(1,)])
    o = next(o for o in objs if any(x[0][-1] == fs({5}) for _, x in o.core))
    u = Germ({2: 3, 5: 6})
    uo = cx.act(u, o)
    assert (uo.A, uo.S, uo.m) == ((3,), (6,), (1,))
    relabel = lambda s: (tuple(u.apply_set(v) for v in s[0]), tuple((u.apply_set(a), u.apply_set(b)) for a, b in s[1]))
    assert dict(uo.core) == {c: relabel(x) for c, x in o.core}
    assert cx.support(uo) == {3, 6}


def test_act_identity_on_support():
    cx = CX(trivial_point(3), CXBounds(a_max=1, s_max=1, m_max=1, window=3))
    for o in cx.objects(3):
        u = Germ({a: a for a in o.support} | {9: 10})
        assert cx.act(u, o) == o and cx.structure_iso(u, o) == cx.identity(o)


def test_act_needs_domain():
    cx = CX(trivial_point(3), CXBounds(a_max=1, s_max=1, m_max=1, window=3))
    o = next(o for o in cx.objects(3) if o.support)
    with pytest.raises(InsufficientGermDomain):
        cx.act(Germ({}), o)


def test_point_objects_without_a():
    cx, C = cx_build(trivial_point(2), CXBounds(a_max=0, s_max=1, m_max=0, window=1))
    assert sorted((o.A, o.S, o.m) for o in C.objects) == [((), (), ()), ((), (1,), ())]


@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_object_count_grows_with_window(w):
    cx = CX(trivial_point(2), CXBounds(a_max=0, s_max=2, m_max=0, window=w))
    assert len(cx.objects(w)) == sum(comb(w, k) for k in range(3))


def test_support_audit_and_category_axioms(subsets_cx):
    cx, C = subsets_cx
    for o in C.objects:
        assert cx.support(o) == o.support
    small = CX(trivial_point(3), CXBounds(a_max=1, s_max=1, m_max=1, window=2)).category()
    assert small.validate()


def test_translate_support(subsets_cx):
    cx, C = subsets_cx
    u = Germ({1: 4, 2: 7})
    for o in C.objects:
        assert cx.support(cx.act(u, o)) == u.apply_set(o.support)


def test_cx_functor_identity_and_composite():
    b = CXBounds(a_max=1, s_max=1, m_max=1, window=2)
    X = ProductSSet(NerveEM(finite_subsets()), trivial_point(3))
    Y, Z = NerveEM(finite_subsets()), trivial_point(3)
    (cX, CXc), (cY, CYc), (cZ, CZc) = cx_build(X, b), cx_build(Y, b), cx_build(Z, b)
    star = lambda x: Z.X.levels[Y.level(x)][0]
    proj = lambda x: x[0]
    ident = cx_functor(lambda x: x, cX, cX, CXc, CXc)
    assert all(ident.obj[o] == o for o in CXc.objects)
    F, G = cx_functor(proj, cX, cY, CXc, CYc), cx_functor(star, cY, cZ, CYc, CZc)
    GF = cx_functor(lambda x: star(proj(x)), cX, cZ, CXc, CZc)
    F.validate()
    assert all(G.obj[F.obj[o]] == GF.obj[o] for o in CXc.objects)
    assert all(G.mor[F.mor[f]] == GF.mor[f] for f in CXc.morphisms())
    assert all(cY.support(F.obj[o]) == o.support for o in CXc.objects)


def test_epsilon_vertex_and_simpliciality(subsets_cx):
    cx, C = subsets_cx
    X = cx.X
    e = epsilon(cx, C, X.to_sset(2, 2), 2)
    e.validate()
    for o in C.objects:
        assert e(0, ((o,), ())) == core_value(X, o, (poset(o.m).top,))


def test_epsilon_equivariant(subsets_cx):
    cx, C = subsets_cx
    N = nerve(C, 1)
    u0, u1 = Germ({1: 3, 2: 4}), Germ({1: 4, 2: 5})
    for s in N.levels[1][:200]:
        (a, b), (f,) = s
        moved = ((cx.act(u0, a), cx.act(u1, b)),
                 (cx.compose(cx.structure_iso(u1, b), cx.compose(f, cx.structure_iso_inverse(u0, a))),))
        assert epsilon_simplex(cx, moved) == cx.X.act((u0, u1), epsilon_simplex(cx, s))


def test_epsilon_natural():
    b = CXBounds(a_max=1, s_max=1, m_max=1, window=2)
    X = ProductSSet(NerveEM(finite_subsets()), trivial_point(3))
    Y = NerveEM(finite_subsets())
    (cX, CXc), (cY, CYc) = cx_build(X, b), cx_build(Y, b)
    F = cx_functor(lambda x: x[0], cX, cY, CXc, CYc)
    N = nerve(CXc, 1)
    for n in range(2):
        for s in N.levels[n][:300]:
            image = (tuple(F.obj[o] for o in s[0]), tuple(F.mor[f] for f in s[1]))
            assert epsilon_simplex(cY, image) == epsilon_simplex(cX, s)[0]


def test_epsilon_is_homology_equivalence_on_point():
    cx, C = cx_build(trivial_point(4), CXBounds(a_max=1, s_max=1, m_max=2, window=1, d=2))
    e = epsilon(cx, C, trivial_point(2).X, 2)
    assert homology_equivalence_check(e, 1)


def test_epsilon_tilde(subsets_cx):
    cx, C = subsets_cx
    D = finite_subsets().to_fincat(2)
    F = epsilon_tilde(cx, C, D)
    F.validate()
    ok, bad = nerve_of_functor_matches(cx, F, 2)
    assert ok, bad
    for o in C.objects:
        assert F.obj[o] == core_value(cx.X, o, (poset(o.m).top,))[0][0]


def test_rho_laws():
    rep = verify_rho_laws([((1,), (2,), (1,)), ((1, 2), (3,), (1, 1)), ((), (1, 2), ())], 3, 1)
    assert rep.ok
    assert set(rep.checked) >= {"equivariance", "composite", "identity"}


def test_nabla_unit_and_overlap(subsets_cx):
    cx, C = subsets_cx
    pt = CX(trivial_point(8), cx.bounds)
    o = next(o for o in C.objects if o.A and o.S)
    u = nabla(cx, pt, o, iota())
    assert (u.A, u.S, u.m) == (o.A, o.S, o.m)
    assert {c: x[0] for c, x in u.core} == dict(o.core)
    with pytest.raises(SupportsOverlap):
        nabla(cx, cx, o, o)


def test_nabla_coherence_and_epsilon_monoidal():
    cx, C = cx_build(trivial_point(4), CXBounds(a_max=1, s_max=1, m_max=1, window=3, d=2))
    assert verify_nabla_coherence(cx, C.objects, C.morphisms()[:40]).ok
    assert verify_epsilon_monoidal(cx, C, d=1, limit=500).ok


def test_parsummable_lift():
    P = nerve_parsummable(example_finite_subsets(3), 2)
    L = cx_parsummable_lift(P, CXBounds(a_max=1, s_max=1, m_max=1, window=2))
    assert (L.zero.A, L.zero.S, L.zero.m) == ((), (), ())
    assert verify_parsummable(L, morphism_limit=20).ok
    objs = [o for o in L.objects() if o.support]
    for o1 in objs:
        for o2 in objs:
            if L.summable(o1, o2):
                assert L.base.support(L.add(o1, o2)) == o1.support | o2.support


@pytest.fixture(scope="module")
def fixed_setup():
    U = make_universal_action(cyclic_group(2), 5)
    cx = CX(trivial_point(4), CXBounds(a_max=1, s_max=3, m_max=1, window=3, d=2))
    T = fs({1, 2, 3})
    phi = lambda h: None
    return cx, U, phi, T, cx_fixed_and_homotopy_fixed(cx, U, phi, T)


def test_fixed_trivial_group_is_iso():
    U = make_universal_action(trivial_group(), 2)
    cx = CX(trivial_point(3), CXBounds(a_max=1, s_max=2, m_max=1, window=2))
    data = cx_fixed_and_homotopy_fixed(cx, U, GroupHom.trivial(trivial_group()), {1, 2})
    assert len(data.fixed.objects) == len(data.hfix.objects) == len(data.category.objects)
    assert check_equivalence(data.comparison)
    assert weak_saturation_check(cx, U, lambda h: None, {1, 2}, d=1).ok


def test_fixed_objects_match_brute_force(fixed_setup):
    cx, U, phi, T, data = fixed_setup
    H = U.group
    expected = [o for o in data.category.objects if all(cx.act(U.germ(h), o) == o for h in H.elements)]
    assert sorted(map(repr, data.fixed.objects)) == sorted(map(repr, expected))
    # fixed objects have H-stable A and S, and m constant on orbits
    for o in data.fixed.objects:
        assert U.is_stable(o.A) and U.is_stable(o.S)


def test_comparison_fully_faithful(fixed_setup):
    *_, data = fixed_setup
    rep = check_equivalence(data.comparison)
    assert rep.fully_faithful
    assert len(data.hfix.objects) >= len(data.fixed.objects)


def test_fixed_point_reduction(fixed_setup):
    cx, U, phi, T, data = fixed_setup
    rep = fixed_point_reduction_check(cx, U, phi, T, top=1, d=1, data=data)
    assert rep.last_vertex_ok and rep.slices
    assert all(s.terminal and s.equivalence for s in rep.slices)


def test_nonsaturation_witness():
    U = make_universal_action(cyclic_group(2), 6)
    cx = CX(NerveEM(finite_subsets()), CXBounds(a_max=1, s_max=2, m_max=1, window=6))
    w = nonsaturation_witness(cx, U, ((fs({5}),), ()), (1, 2))
    assert w.cocycle_ok
    assert w.endpoint_trivial[0] is True and w.endpoint_trivial[1] is False
    assert w.holds and not w.isomorphic_fixed
