from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from parsumlab.combinatorics import (DeltaMap, Germ, GroupHom, all_delta_maps, cyclic_group, injections,
                                     make_universal_action, trivial_group)
from parsumlab.em import (EInjSSet, NerveEM, box_product, check_cocycle, corep_roundtrip, diagonal_support_probe,
                          einj, finite_subsets, homotopy_fixed, nerve_box_iso, phi_fixed, restrict_simplex,
                          simplicial_support_report, subcomplex_supported_on, support_calculus_report,
                          supp_k_restriction_holds, einj_restrictions, warning_quotient_report)
from parsumlab.errors import InsufficientGermDomain, TNotStable
from parsumlab.fincat import check_equivalence
from parsumlab.saturation import s_functor, saturate_windowed, saturation_check


def brute_support(C, x, spread=7):
    """Smallest B such that every injection of the footprint fixing B pointwise fixes x."""
    F = sorted(C.footprint(x))
    for k in range(len(F) + 1):
        for B in combinations(F, k):
            if all(C.act(u, x) == x for u in injections(F, range(1, spread + 1))
                   if all(u(b) == b for b in B)):
                return frozenset(B)
    return frozenset(F)


def test_einj_action_example():
    C = einj({1, 2})
    i = Germ({1: 4, 2: 7})
    u = Germ({4: 9, 7: 7})
    assert C.act(u, i) == Germ({1: 9, 2: 7})


def test_identity_on_support_acts_trivially():
    C = einj({1, 2})
    i = Germ({1: 4, 2: 7})
    u = Germ({4: 4, 7: 7, 1: 3})
    assert C.act(u, i) == i and C.structure_iso(u, i) == C.identity(i)


def test_insufficient_domain():
    with pytest.raises(InsufficientGermDomain):
        einj({1, 2}).act(Germ({4: 5}), Germ({1: 4, 2: 7}))


def test_support_example_with_witnesses():
    C = einj({1, 2})
    i = Germ({1: 4, 2: 7})
    r = C.support_report(i)
    assert r.support == {4, 7} and r.consistent
    for a, u in r.witnesses.items():
        assert all(u(b) == b for b in {4, 7} - {a}) and a not in u.image
        assert C.act(u, i) != i


@pytest.mark.parametrize("C,w", [(einj({1}), 4), (einj({1, 2}), 4), (finite_subsets(2), 4)])
def test_support_matches_brute_force(C, w):
    for x in C.objects(w):
        assert C.support(x) == brute_support(C, x)


def test_cocycle_on_samples():
    C = einj({1, 2})
    x = Germ({1: 2, 2: 3})
    perms = [Germ(zip((1, 2, 3, 4), p)) for p in [(2, 1, 3, 4), (4, 3, 2, 1), (1, 3, 4, 2)]]
    for u, v in product(perms, perms):
        assert check_cocycle(C, u, v, x)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(1, 6)), st.sampled_from(injections({1, 2}, range(1, 6))))
def test_support_of_translate(p, x):
    C = einj({1, 2})
    u = Germ(zip(range(1, 6), p))
    assert C.support(C.act(u, x)) == u.apply_set(C.support(x))


def test_support_calculus_reports_pass():
    assert support_calculus_report(einj({1, 2}), 5, maps=einj_restrictions({1, 2})).ok
    assert support_calculus_report(finite_subsets(), 4).ok


def test_supp_k_einj():
    X = EInjSSet({1})
    x = (Germ({1: 2}), Germ({1: 5}), Germ({1: 3}))
    assert [X.supp_k(x, k) for k in range(3)] == [{2}, {5}, {3}]
    assert X.support(x) == {2, 3, 5}


def test_supp_k_degenerate_and_restriction():
    X = EInjSSet({1})
    x = (Germ({1: 2}), Germ({1: 4}))
    s0 = X.degen(1, 0, x)
    assert X.supp_k(s0, 1) <= X.supp_k(x, 0)
    for m in range(3):
        for alpha in all_delta_maps(m, 1):
            assert supp_k_restriction_holds(X, alpha, x)


def test_restrict_simplex_matches_delta_action():
    X = EInjSSet({1})
    x = tuple(Germ({1: a}) for a in (2, 4, 3))
    alpha = DeltaMap(3, 2, (0, 0, 2, 2))
    assert restrict_simplex(X, alpha, x) == (x[0], x[0], x[2], x[2])


def test_simplicial_support_laws():
    assert simplicial_support_report(EInjSSet({1}), 3, 2).ok
    assert simplicial_support_report(NerveEM(finite_subsets(1)), 3, 1).ok


def test_nerve_supp_k_is_vertex_support():
    N = NerveEM(finite_subsets(2))
    for s in N.simplices(2, 3):
        assert all(N.supp_k(s, k) == frozenset(s[0][k]) for k in range(3))
        assert all(N._supp_k_report(s, k)[0] == frozenset(s[0][k]) for k in range(3))


def test_nerve_action_vertexwise():
    C = einj({1})
    N = NerveEM(C)
    s = ((Germ({1: 1}), Germ({1: 2})), ((Germ({1: 2}), Germ({1: 1})),))
    us = (Germ({1: 3}), Germ({2: 5}))
    objs, mors = N.act(us, s)
    assert objs == (Germ({1: 3}), Germ({1: 5}))
    assert mors == ((objs[1], objs[0]),)


def test_warning_quotient():
    assert warning_quotient_report({1}, 3).ok


def test_corep_empty_and_singleton():
    X = EInjSSet({1})
    assert subcomplex_supported_on(X, set(), 3, 1).levels[0] == []
    XA = subcomplex_supported_on(X, {1}, 3, 1)
    assert XA.levels[0] == [(Germ({1: 1}),)]
    for n in (0, 1):
        count, failures = corep_roundtrip(X, {1}, 3, 1, n)
        assert count >= 1 and failures == []


def test_corep_roundtrip_on_nerve():
    _, failures = corep_roundtrip(NerveEM(finite_subsets(1)), {1}, 3, 1, 1)
    assert failures == []


def test_box_product_membership():
    C = box_product(finite_subsets(1), finite_subsets(1))
    objs = set(C.objects(2))
    assert (frozenset({1}), frozenset({2})) in objs
    assert (frozenset({1}), frozenset({1})) not in objs


def test_box_associativity():
    F = finite_subsets(1)
    left = set(box_product(box_product(F, F), F).objects(3))
    right = set(box_product(F, box_product(F, F)).objects(3))
    assoc = {(a, (b, c)) for (a, b), c in left}
    assert assoc == right
    assert all(not (a & b or a & c or b & c) for (a, b), c in left)


def test_nerve_box_iso_is_bijective():
    _, ok = nerve_box_iso(einj({1}), einj({2}), 4, 1)
    assert ok


def test_diagonal_support_probe_agrees():
    probe = diagonal_support_probe(NerveEM(einj({1})), 3, 1)
    assert probe["differ"] == [] and probe["agree"] > 0


def _swap_setup():
    H = cyclic_group(2)
    U = make_universal_action(H, 12)
    return H, U


def test_phi_fixed_trivial_group_keeps_everything():
    U = make_universal_action(trivial_group(), 3)
    phi = GroupHom.trivial(trivial_group())
    F = phi_fixed(einj({1}), U, phi, {1, 2})
    assert len(F.objects) == 2


def test_phi_fixed_free_target_trivial_domain():
    H, U = _swap_setup()
    assert U(1, 1) == 2
    F = phi_fixed(einj({1, 2}), U, GroupHom.trivial(H), {1, 2})
    assert F.objects == []


def test_phi_fixed_matches_brute_force_equivariant_injections():
    H, U = _swap_setup()
    perm = lambda h: Germ({1: U(h, 1), 2: U(h, 2)})
    C = einj({1, 2}, group=H, perm=perm)
    T = {1, 2, 3}
    F = phi_fixed(C, U, GroupHom.identity(H), T)
    expected = [i for i in injections({1, 2}, sorted(T)) if all(U(h, i(a)) == i(perm(h)(a)) for h in H.elements
                                                                 for a in (1, 2))]
    assert sorted(map(repr, F.objects)) == sorted(map(repr, expected))
    assert Germ.identity({1, 2}) in F.objects


def test_phi_fixed_requires_stable_set():
    H, U = _swap_setup()
    with pytest.raises(TNotStable):
        phi_fixed(einj({1}), U, GroupHom.trivial(H), {1})


def test_homotopy_fixed_trivial_group_is_iso():
    U = make_universal_action(trivial_group(), 3)
    fixed, hfix, comp = homotopy_fixed(einj({1}), U, GroupHom.trivial(trivial_group()), {1, 2, 3})
    assert len(fixed.objects) == len(hfix.objects) == 3
    assert check_equivalence(comp)


def test_homotopy_fixed_chaotic_is_essentially_surjective():
    H, U = _swap_setup()
    fixed, hfix, comp = homotopy_fixed(finite_subsets(2), U, GroupHom.trivial(H), {1, 2, 3})
    rep = check_equivalence(comp)
    assert rep.fully_faithful and rep.essentially_surjective


def test_saturation_s_support_and_equivalence():
    C = einj({1})
    sat = saturate_windowed(C, 2, a_max=1)
    for x in C.objects(2):
        assert sat.support(sat.s_object(x)) <= C.support(x)
    assert check_equivalence(s_functor(sat))


def test_saturation_check_c2():
    H = cyclic_group(2)
    U = make_universal_action(H, 4)
    rep = saturation_check(einj({1}), 4, U, GroupHom.trivial(H))
    assert rep.ok and rep.probe_counts["homotopy_fixed"] >= rep.probe_counts["fixed"]


def test_saturation_action_cocycle():
    sat = saturate_windowed(einj({1}), 3, a_max=1)
    o = sat.objects()[0]
    u, v = Germ({a: b for a, b in zip((1, 2, 3), (2, 3, 1))}), Germ({a: b for a, b in zip((1, 2, 3), (3, 1, 2))})
    assert check_cocycle(sat, u, v, o)
