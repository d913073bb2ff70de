from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from parsumlab.combinatorics import (DeltaMap, Germ, GroupHom, Window, all_delta_maps, cyclic_group,
                                     germ_compose, germ_extend, injections, make_universal_action,
                                     symmetric_group, trivial_group, universal_budget)
from parsumlab.errors import BudgetTooSmall, DomainMismatch, InvalidStructure, NoExtension


@st.composite
def germs(draw, n=8, domain=None):
    dom = draw(st.sets(st.integers(1, n), max_size=n)) if domain is None else set(domain)
    img = draw(st.permutations(range(1, n + 1)))[:len(dom)]
    return Germ(zip(sorted(dom), img))


def test_compose_example():
    v = Germ({3: 4, 5: 1})
    u = Germ({1: 3, 2: 5})
    assert germ_compose(v, u) == Germ({1: 4, 2: 1})


def test_compose_identity_restricts():
    v = Germ({1: 7, 2: 3, 5: 5})
    assert germ_compose(v, Germ.identity({1, 2})) == Germ({1: 7, 2: 3})


def test_compose_domain_mismatch():
    with pytest.raises(DomainMismatch):
        germ_compose(Germ({1: 2}), Germ({1: 3}))


@given(st.permutations(range(1, 9)), st.permutations(range(1, 9)), st.permutations(range(1, 9)))
def test_compose_associative(p, q, r):
    u, v, w = (Germ(zip(range(1, 9), x)) for x in (p, q, r))
    assert germ_compose(germ_compose(w, v), u) == germ_compose(w, germ_compose(v, u))


def test_germ_rejects_non_injective():
    with pytest.raises(InvalidStructure):
        Germ({1: 2, 3: 2})


def test_extend_greedy_by_hand():
    e = germ_extend(Germ({4: 9}), Window(10))
    assert e == Germ({1: 1, 2: 2, 3: 3, 4: 9, 5: 4, 6: 5, 7: 6, 8: 7, 9: 8, 10: 10})


def test_extend_identity_and_forced():
    assert germ_extend(Germ.identity({1, 2}), Window(3)) == Germ.identity({1, 2, 3})
    assert germ_extend(Germ({1: 2, 2: 1}), Window(2)) == Germ({1: 2, 2: 1})


def test_extend_too_small():
    with pytest.raises(NoExtension):
        germ_extend(Germ({1: 5}), Window(3))


@given(germs())
def test_extend_then_restrict(u):
    e = germ_extend(u, Window(8))
    assert e.domain == frozenset(range(1, 9))
    assert e.restrict(u.domain) == u


def test_injections_count():
    assert len(injections({1, 2}, {1, 2, 3, 4})) == 12
    assert injections((), {1, 2}) == [Germ()]


def _orbit_sizes(U):
    return sorted(len(o) for o in U.orbits())


def test_universal_c2():
    U = make_universal_action(cyclic_group(2), 12)
    U.validate()
    assert U(1, 1) == 2 and U(1, 2) == 1
    assert U.fixed_points == frozenset(range(3, 13))


def test_universal_trivial():
    U = make_universal_action(trivial_group(), 4)
    assert U.fixed_points == frozenset(range(1, 5))


def test_universal_c3():
    U = make_universal_action(cyclic_group(3), 12)
    assert _orbit_sizes(U) == [1] * 9 + [3]
    assert len(U.fixed_points) == 9


def test_universal_s3_contains_every_transitive_set():
    G = symmetric_group(3)
    U = make_universal_action(G, universal_budget(G))
    U.validate()
    # transitive S3-sets: sizes 1, 2, 3 and 6, plus the extra fixed point
    assert sorted(_orbit_sizes(U)) == [1, 1, 2, 3, 6]


def test_budget_too_small():
    with pytest.raises(BudgetTooSmall):
        make_universal_action(cyclic_group(2), 3)


@pytest.mark.parametrize("G", [trivial_group(), cyclic_group(2), cyclic_group(3), symmetric_group(3)])
def test_group_axioms_and_action_laws(G):
    G.validate()
    U = make_universal_action(G, universal_budget(G) + 2)
    for g, h, p in product(G.elements, G.elements, U.window.points()):
        assert U(G.mul[(g, h)], p) == U(g, U(h, p))
    assert all(U(G.id, p) == p for p in U.window.points())


def test_group_hom_graph():
    C2, S3 = cyclic_group(2), symmetric_group(3)
    phi = GroupHom(C2, S3, {0: (0, 1, 2), 1: (1, 0, 2)})
    phi.validate()
    assert phi.graph() == [(0, (0, 1, 2)), (1, (1, 0, 2))]
    bad = GroupHom(cyclic_group(3), C2, {0: 0, 1: 1, 2: 1})
    with pytest.raises(InvalidStructure):
        bad.validate()


def test_delta_map_monotone():
    with pytest.raises(InvalidStructure) as exc:
        DeltaMap(2, 2, (0, 2, 1))
    assert exc.value.counterexample["position"] == 1


def test_all_delta_maps_count():
    # weakly monotone maps [m] -> [n] number C(m+n+1, m+1)
    from math import comb
    for m, n in [(0, 0), (1, 2), (2, 2), (3, 1)]:
        assert len(all_delta_maps(m, n)) == comb(m + n + 1, m + 1)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_delta_compose_associative(a, b, c, data):
    f = data.draw(st.sampled_from(all_delta_maps(a, b)))
    g = data.draw(st.sampled_from(all_delta_maps(b, c)))
    h = data.draw(st.sampled_from(all_delta_maps(c, 2)))
    assert h.compose(g).compose(f) == h.compose(g.compose(f))


def test_cosimplicial_identity():
    for n in range(1, 4):
        for i, j in product(range(n + 1), repeat=2):
            if i < j:
                left = DeltaMap.coface(n + 1, j).compose(DeltaMap.coface(n, i))
                right = DeltaMap.coface(n + 1, i).compose(DeltaMap.coface(n, j - 1))
                assert left == right


def test_permutation_germs_form_group():
    perms = [Germ(zip((1, 2, 3), p)) for p in permutations((1, 2, 3))]
    for u, v in product(perms, perms):
        assert germ_compose(u, v) in perms
