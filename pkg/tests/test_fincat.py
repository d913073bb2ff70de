from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from parsumlab.combinatorics import GroupHom, cyclic_group, symmetric_group, trivial_group
from parsumlab.errors import ActionsDoNotCommute, InvalidStructure, ObjectNotInTarget
from parsumlab.fincat import (CatGAction, FinCategory, Functor, NatTrans, chaotic_category, check_equivalence,
                              discrete_category, fixed_subcategory, fun_twisted, has_terminal_object,
                              ordinal_category, poset_category, product_category, skeleton_retraction,
                              slice_under_functor, terminal_category, twisted_action)
from parsumlab.sset import homology_equivalence_check, nerve_map


def swap_action(C, pairs):
    G = cyclic_group(2)
    s = dict(pairs)
    s.update({v: k for k, v in pairs})
    move = lambda x: s.get(x, x)
    flip = Functor(C, C, move, lambda f: (move(f[0]), move(f[1])))
    return CatGAction(C, G, {0: Functor.identity(C), 1: flip})


def brute_force_equivariant_functors(C, A):
    """Every functor from the chaotic category on H into C commuting with the actions, by exhaustion."""
    H = A.group
    E = H.elements
    out = []
    for objs in product(C.objects, repeat=len(E)):
        F = dict(zip(E, objs))
        pairs = [(h, k) for h in E for k in E]
        for mors in product(*[C.hom(F[h], F[k]) for h, k in pairs]):
            M = dict(zip(pairs, mors))
            if any(M[(h, h)] != C.identity(F[h]) for h in E):
                continue
            if any(C.compose(M[(k, l)], M[(h, k)]) != M[(h, l)] for h in E for k in E for l in E):
                continue
            if any(F[H.mul[(g, h)]] != A.act(g, F[h]) for g in E for h in E):
                continue
            if any(M[(H.mul[(g, h)], H.mul[(g, k)])] != A.act_mor(g, M[(h, k)]) for g in E for h in E for k in E):
                continue
            out.append((F, M))
    return out


def test_chaotic_examples():
    T = chaotic_category(["a"])
    assert len(T.morphisms()) == 1 and has_terminal_object(T) == "a"
    C = chaotic_category(["a", "b"])
    assert len(C.morphisms()) == 4 and all(C.is_iso(f) for f in C.morphisms())
    C3 = chaotic_category(range(3))
    assert sum(1 for f in C3.morphisms() if f[0] != f[1]) == 6


@pytest.mark.parametrize("C", [chaotic_category(range(3)), discrete_category("ab"), ordinal_category(3),
                               product_category(ordinal_category(1), chaotic_category("xy"))])
def test_category_axioms(C):
    assert C.validate()


def test_bad_composition_rejected():
    hom = {(0, 0): ["i0"], (1, 1): ["i1"], (0, 1): ["f", "g"]}
    comp = lambda g, f: "f" if "f" in (g, f) or "g" in (g, f) else g
    C = FinCategory([0, 1], hom, comp, {0: "i0", 1: "i1"})
    with pytest.raises(InvalidStructure):
        C.validate()


def test_fun_twisted_trivial_group_is_input():
    C = ordinal_category(2)
    hf = fun_twisted(C, CatGAction.trivial(C, trivial_group()))
    assert [P.base for P in hf.objects] == C.objects
    assert all(len(hf.hom(P, Q)) == len(C.hom(P.base, Q.base)) for P in hf.objects for Q in hf.objects)


def test_fun_twisted_chaotic_trivial_action():
    C = chaotic_category(["a", "b"])
    hf = fun_twisted(C, CatGAction.trivial(C, cyclic_group(2)))
    assert len(hf.objects) == 2


@pytest.mark.parametrize("C,pairs", [(chaotic_category(["a", "b"]), [("a", "b")]),
                                     (chaotic_category(["a", "b", "c"]), [("a", "b")]),
                                     (discrete_category(["a", "b", "c"]), [("a", "b")]),
                                     (ordinal_category(1), [])])
def test_fun_twisted_matches_brute_force(C, pairs):
    A = swap_action(C, pairs)
    hf = fun_twisted(C, A)
    assert len(hf.objects) == len(brute_force_equivariant_functors(C, A))


def test_twisted_action_free_swap_identity_phi():
    C = chaotic_category(["a", "b"])
    AG = swap_action(C, [("a", "b")])
    AH = CatGAction.trivial(C, cyclic_group(2))
    tw = twisted_action(AH, AG, GroupHom.identity(cyclic_group(2)))
    tw.validate()
    assert len(fun_twisted(C, tw).objects) == 2
    assert fixed_subcategory(C, tw).objects == []


def test_twisted_action_rejects_noncommuting():
    G = symmetric_group(3)
    C = discrete_category(range(3))
    act = {g: Functor(C, C, lambda x, g=g: g[x], lambda f, g=g: (g[f[0]], g[f[1]])) for g in G.elements}
    A = CatGAction(C, G, act)
    with pytest.raises(ActionsDoNotCommute):
        twisted_action(A, A, GroupHom.identity(G))


def test_fixed_subcategory_examples():
    C = chaotic_category(["a", "b", "c"])
    assert fixed_subcategory(C, CatGAction.trivial(C, cyclic_group(2))).objects == C.objects
    F = fixed_subcategory(C, swap_action(C, [("a", "b")]))
    assert F.objects == ["c"] and F.morphisms() == [("c", "c")]
    assert fixed_subcategory(chaotic_category("ab"), swap_action(chaotic_category("ab"), [("a", "b")])).objects == []


def test_slice_examples():
    C = ordinal_category(2)
    s = slice_under_functor(Functor.identity(C), 0)
    assert len(s.objects) == 1
    T = terminal_category()
    s = slice_under_functor(Functor.constant(C, T, "*"), "*")
    assert len(s.objects) == len(C.objects) and len(s.morphisms()) == len(C.morphisms())
    with pytest.raises(ObjectNotInTarget):
        slice_under_functor(Functor.identity(C), 7)


def test_slice_count_brute_force():
    D = ordinal_category(2)
    F = Functor(ordinal_category(2), product_category(D, D), lambda x: (x, min(x + 1, 2)),
                lambda f: ((f[0], f[1]), (min(f[0] + 1, 2), min(f[1] + 1, 2))))
    F.validate()
    P = F.target
    for b in P.objects:
        expected = sum(len(P.hom(F.obj[a], b)) for a in F.source.objects)
        assert len(slice_under_functor(F, b).objects) == expected


def test_check_equivalence_examples():
    C = chaotic_category(["a", "b"])
    assert check_equivalence(Functor.identity(C))
    S, _ = skeleton_retraction(C)
    assert check_equivalence(Functor.inclusion(S, C))
    D = discrete_category(["a", "b"])
    rep = check_equivalence(Functor.constant(D, D, "a"))
    assert not rep.fully_faithful and not rep.essentially_surjective
    assert rep.counterexample


def test_terminal_objects():
    assert has_terminal_object(discrete_category("ab")) is None
    assert has_terminal_object(ordinal_category(2)) == 2


def test_nat_trans():
    C = ordinal_category(1)
    NatTrans(Functor.constant(C, C, 0), Functor.identity(C), {0: (0, 0), 1: (0, 1)}).validate()
    G = symmetric_group(3)
    B = FinCategory(["*"], {("*", "*"): G.elements}, lambda g, f: G.mul[(g, f)], lambda x: G.id)
    ident = Functor.identity(B)
    NatTrans(ident, ident, {"*": G.id}).validate()
    with pytest.raises(InvalidStructure):
        NatTrans(ident, ident, {"*": (1, 0, 2)}).validate()


def test_action_validation():
    C = chaotic_category("ab")
    swap_action(C, [("a", "b")]).validate()
    G = cyclic_group(2)
    bad = CatGAction(C, G, {0: Functor.identity(C), 1: Functor.constant(C, C, "a")})
    with pytest.raises(InvalidStructure):
        bad.validate()


@st.composite
def posets(draw):
    n = draw(st.integers(1, 5))
    rel = {(i, j) for i in range(n) for j in range(n) if i < j and draw(st.booleans())}
    # transitive closure
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return poset_category(range(n), lambda a, b: a == b or (a, b) in rel)


@settings(max_examples=40, deadline=None)
@given(posets())
def test_posets_are_categories_and_skeleton_is_equivalence(P):
    assert P.validate()
    S, r = skeleton_retraction(P)
    r.validate()
    assert check_equivalence(r)


@settings(max_examples=25, deadline=None)
@given(posets(), st.integers(0, 4))
def test_equivalence_implies_homology_equivalence(P, k):
    C = product_category(P, chaotic_category(range(k % 3 + 1)))
    S, r = skeleton_retraction(C)
    assert check_equivalence(r)
    assert homology_equivalence_check(nerve_map(r, 2), 1)
