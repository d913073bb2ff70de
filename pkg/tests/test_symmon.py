from itertools import permutations

import pytest

from parsumlab.combinatorics import Germ, GroupHom, cyclic_group, symmetric_group, trivial_group
from parsumlab.em import einj
from parsumlab.errors import InsufficientGermDomain, InvalidStructure
from parsumlab.fincat import CatGAction, Functor, chaotic_category, check_equivalence, terminal_category
from parsumlab.sset import homology_equivalence_check, nerve_map
from parsumlab.symmon import (ONE, StrongMonFunctor, all_homomorphisms, antipodal_sphere, capped_finite_sets,
                              default_probe_pairs, forget_labels, functoriality_report, g_global_we_check,
                              is_permutative, relabelled_copy, strictify_report, strictify_unit, terminal_symmon,
                              to_terminal, triv_action_zigzag_check, universal_property_report)


@pytest.mark.parametrize("C", [capped_finite_sets(3), terminal_symmon(), relabelled_copy(capped_finite_sets(1), 2),
                               relabelled_copy(capped_finite_sets(2), 3)])
def test_coherence(C):
    assert C.validate()
    assert strictify_unit(C).C0.validate()


def test_capped_finite_sets_tables():
    C = capped_finite_sets(3)
    assert C.tensor(1, 1) == 2 and C.tensor(2, 2) == 3
    assert C.sym[(1, 1)] == (2, (1, 0))
    assert len(C.base.hom(2, 2)) == 2


def test_permutativity_examples():
    assert is_permutative(capped_finite_sets(3))
    assert is_permutative(terminal_symmon())
    assert not is_permutative(relabelled_copy(capped_finite_sets(1), 2))


def test_relabelled_needs_two_labels():
    with pytest.raises(InvalidStructure):
        relabelled_copy(capped_finite_sets(1), 1)


def test_broken_associator_rejected():
    C = capped_finite_sets(3)
    C.assoc[(1, 1, 0)] = (2, (1, 0))
    assert not C.coherence_report().ok


@pytest.mark.parametrize("C", [capped_finite_sets(2), relabelled_copy(capped_finite_sets(1), 2), terminal_symmon()])
def test_strictification(C):
    st = strictify_unit(C)
    assert len(st.C0.objects) == len(C.objects) + 1
    assert all(st.C0.tensor(ONE, X) == X == st.C0.tensor(X, ONE) for X in st.C0.objects)
    assert st.C0.is_strictly_unital()
    assert check_equivalence(st.pi.functor)
    assert st.eta.then(st.pi).equals(StrongMonFunctor.identity(C))
    st.pi.validate()
    st.eta.validate()


def test_pi_strict_iff_unit_strict():
    strict = strictify_unit(capped_finite_sets(2))
    assert all(m == strict.source.base.identity(strict.source.base.src(m)) for m in strict.pi.mult.values())
    R = relabelled_copy(capped_finite_sets(1), 2)
    loose = strictify_unit(R)
    assert not R.is_strictly_unital()
    assert any(m != R.base.identity(R.base.src(m)) for m in loose.pi.mult.values())


def test_universal_property():
    C1 = capped_finite_sets(1)
    R = relabelled_copy(C1, 2)
    st = strictify_unit(R)
    for f in (StrongMonFunctor.identity(R), to_terminal(R), forget_labels(R, C1)):
        assert universal_property_report(st, f).ok


def test_strictify_report_and_functoriality():
    C3 = capped_finite_sets(3)
    _, rep = strictify_report(C3, [StrongMonFunctor.identity(C3), to_terminal(C3)])
    assert rep.ok
    C1 = capped_finite_sets(1)
    assert functoriality_report(forget_labels(relabelled_copy(C1, 2), C1), to_terminal(C1)).ok


def _swap_to_point():
    C = chaotic_category(["a", "b"])
    G = cyclic_group(2)
    flip = lambda x: "b" if x == "a" else "a"
    A = CatGAction(C, G, {0: Functor.identity(C), 1: Functor(C, C, flip, lambda f: (flip(f[0]), flip(f[1])))})
    T = terminal_category()
    return Functor.constant(C, T, "*"), A, CatGAction.trivial(T, G)


def test_equivalence_passes_all_probes():
    f, A, B = _swap_to_point()
    rep = g_global_we_check(f, A, B, default_probe_pairs(A.group), 1)
    assert rep.ok and len(rep.probes) >= 4


def test_trivial_probe_is_plain_homology():
    for n in (1, 2):
        P, A = antipodal_sphere(n)
        T = terminal_category()
        f = Functor.constant(P, T, "*")
        H = trivial_group()
        rep = g_global_we_check(f, A, CatGAction.trivial(T, A.group), [(H, GroupHom.trivial(H, A.group))], n)
        assert rep.ok == homology_equivalence_check(nerve_map(f, n + 1), n)
    assert not rep.ok


def test_detects_failure_on_fixed_data():
    P, A = antipodal_sphere(2)
    T = terminal_category()
    f = Functor.constant(P, T, "*")
    rep = g_global_we_check(f, A, CatGAction.trivial(T, A.group), default_probe_pairs(A.group, ("trivial", "C2")), 1)
    assert [p.ok for p in rep.probes if p.group == "1"] == [True]
    assert any(p.group == "C2" and p.source_objects == 0 for p in rep.failures())


def test_all_homomorphisms_counts():
    # |Hom(C2, S3)| = 4, |Hom(C3, S3)| = 3, |Hom(S3, C2)| = 2
    S3 = symmetric_group(3)
    assert len(all_homomorphisms(cyclic_group(2), S3)) == 4
    assert len(all_homomorphisms(cyclic_group(3), S3)) == 3
    assert len(all_homomorphisms(S3, cyclic_group(2))) == 2


def test_zigzag():
    U = [Germ(dict(zip((1, 2, 3), p))) for p in permutations((1, 2, 3))]
    rep = triv_action_zigzag_check(einj({1}), U, 3)
    assert rep.ok and rep.objects == 6 * 3
    assert "stand" in rep.caveat


def test_zigzag_needs_covering_germs():
    with pytest.raises(InsufficientGermDomain):
        triv_action_zigzag_check(einj({1}), [Germ({1: 1})], 3)
