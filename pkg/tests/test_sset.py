import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from parsumlab.combinatorics import DeltaMap
from parsumlab.errors import InvalidStructure
from parsumlab.fincat import (Functor, chaotic_category, ordinal_category, poset_category, product_category,
                              terminal_category)
from parsumlab.sset import (SimplicialMap, TruncatedSSet, boundary_simplex, category_of_simplices, collapse,
                            disjoint_union, homology, homology_equivalence_check, invariant_factors,
                            last_vertex_map, nerve, nerve_map, point, simplex_product, smith_normal_form,
                            sset_product, standard_simplex)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def unnormalized_betti(X, top):
    """Betti numbers from the full (unnormalized) chain complex, ranks over Q by sympy."""
    ranks = {}
    for n in range(1, top + 2):
        idx = {x: k for k, x in enumerate(X.simplices(n - 1))}
        M = sympy.zeros(len(X.simplices(n)), len(X.simplices(n - 1)))
        for r, x in enumerate(X.simplices(n)):
            for i, y in enumerate(X.faces(n, x)):
                M[r, idx[y]] += (-1) ** i
        ranks[n] = M.rank()
    return [len(X.simplices(n)) - ranks.get(n, 0) - ranks[n + 1] for n in range(top + 1)]


def circle(d=2):
    return collapse(standard_simplex(1, d), lambda n, x: len(set(x)) == 1, name="S1")


def test_snf_example():
    D, U, V = smith_normal_form([[1, 1], [1, 1]])
    assert D == [[1, 0], [0, 0]]
    assert matmul(matmul(U, [[1, 1], [1, 1]]), V) == D


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_against_sympy(r, c, data):
    M = [[data.draw(st.integers(-4, 4)) for _ in range(c)] for _ in range(r)]
    D, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(r, c))]
    assert all(D[i][j] == 0 for i in range(r) for j in range(c) if i != j)
    nonzero = [a for a in diag if a]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    S = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    expected = sorted(abs(S[i, i]) for i in range(min(r, c)) if S[i, i] != 0)
    assert sorted(nonzero) == expected
    assert sorted(invariant_factors(M)) == expected


def test_nerve_examples():
    assert nerve(terminal_category(), 2).counts() == [1, 1, 1]
    N = nerve(chaotic_category(["a", "b"]), 2)
    assert N.counts() == [2, 4, 8]
    assert len(N.simplices(1)) - len(N.nondegenerate(1)) == 2
    assert nerve(ordinal_category(1), 2).nondegenerate_counts() == standard_simplex(1, 2).nondegenerate_counts()


def test_simplex_product_examples():
    assert simplex_product((), 2).counts() == [1, 1, 1]
    assert simplex_product((1,), 2).counts() == standard_simplex(1, 2).counts()
    X = simplex_product((1, 1), 2)
    assert X.nondegenerate_counts() == [4, 5, 2]
    assert X.tags["top"] == (1, 1)


def test_homology_examples():
    h = homology(standard_simplex(2, 3))
    assert h.betti == [1, 0, 0] and h.torsion == [[], [], []]
    h = homology(circle(2))
    assert h.betti[:2] == [1, 1]
    assert homology(boundary_simplex(2, 2)).betti == [1, 1]
    assert homology(boundary_simplex(3, 3)).betti == [1, 0, 1]


@pytest.mark.parametrize("X", [sset_product(standard_simplex(1, 3), standard_simplex(1, 3)), circle(3),
                               boundary_simplex(2, 3), nerve(chaotic_category("ab"), 3),
                               disjoint_union(point(3), boundary_simplex(2, 3))])
def test_normalized_matches_unnormalized(X):
    assert homology(X).betti == unnormalized_betti(X, X.dim - 1)


def test_category_of_simplices_examples():
    D = category_of_simplices(point(1))
    assert len(D.objects) == 2
    assert len(category_of_simplices(boundary_simplex(1, 0)).objects) == 2
    X = standard_simplex(1, 1)
    D = category_of_simplices(X)
    assert len([o for o in D.objects if not X.is_degenerate(*o)]) == 3
    assert D.validate()


@pytest.mark.parametrize("X", [standard_simplex(0, 2), standard_simplex(1, 2), boundary_simplex(2, 2)])
def test_last_vertex_is_homology_equivalence(X):
    f = last_vertex_map(X)
    assert f.validate()
    assert homology_equivalence_check(f, 1)


def test_last_vertex_on_point_is_constant():
    f = last_vertex_map(point(2))
    assert {f(n, s) for n in range(3) for s in f.source.simplices(n)} == set(point(2).simplices(0)) | set(
        point(2).simplices(1)) | set(point(2).simplices(2))
    assert all(f(0, v) == (0,) for v in f.source.simplices(0))


def test_last_vertex_natural():
    X, Y = boundary_simplex(2, 2), standard_simplex(2, 2)
    inc = SimplicialMap(X, Y, lambda n, x: x)
    eX, eY = last_vertex_map(X), last_vertex_map(Y)
    DX, DY = category_of_simplices(X), category_of_simplices(Y)
    Df = Functor(DX, DY, lambda o: (o[0], inc(*o)), lambda m: ((m[0][0], inc(*m[0])), (m[1][0], inc(*m[1])), m[2]))
    Df.validate()
    Nf = nerve_map(Df, 2)
    for n in range(3):
        for s in eX.source.simplices(n):
            assert eY(n, Nf(n, s)) == inc(n, eX(n, s))


def test_homology_equivalence_examples():
    D1 = standard_simplex(1, 2)
    assert homology_equivalence_check(SimplicialMap.identity(D1), 1)
    vertex0 = SimplicialMap(point(2), D1, lambda n, x: x)
    assert homology_equivalence_check(vertex0, 1)
    two = disjoint_union(point(2), point(2))
    fold = SimplicialMap(two, point(2), lambda n, x: x[1])
    fold.validate()
    assert not homology_equivalence_check(fold, 1)
    inc = SimplicialMap(boundary_simplex(2, 2), standard_simplex(2, 2), lambda n, x: x)
    assert not homology_equivalence_check(inc, 1)


def test_nerve_of_product_is_product_of_nerves():
    C, D = ordinal_category(1), chaotic_category("ab")
    NP = nerve(product_category(C, D), 2)
    NC, ND = nerve(C, 2), nerve(D, 2)
    prod = sset_product(NC, ND)

    def split(n, s):
        objs, mors = s
        return ((tuple(o[0] for o in objs), tuple(f[0] for f in mors)),
                (tuple(o[1] for o in objs), tuple(f[1] for f in mors)))

    iso = SimplicialMap(NP, prod, split)
    iso.validate()
    for n in range(3):
        assert sorted(map(repr, iso.maps[n].values())) == sorted(map(repr, prod.simplices(n)))


@st.composite
def posets(draw):
    n = draw(st.integers(1, 4))
    rel = set()
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                rel.add((i, j))
    closed = set(rel)
    for _ in range(n):
        closed |= {(a, d) for (a, b) in closed for (c, d) in closed if b == c}
    return poset_category(range(n), lambda a, b: a == b or (a, b) in closed)


@settings(max_examples=30, deadline=None)
@given(posets())
def test_nerves_satisfy_simplicial_identities(P):
    N = nerve(P, 3)
    assert N.validate()
    relabel = {n: {x: ("r", k) for k, x in enumerate(N.simplices(n))} for n in range(4)}
    back = {n: {v: k for k, v in relabel[n].items()} for n in range(4)}
    R = TruncatedSSet([list(relabel[n].values()) for n in range(4)],
                      lambda n, i, y: relabel[n - 1][N.face(n, i, back[n][y])],
                      lambda n, j, y: relabel[n + 1][N.degen(n, j, back[n][y])], 3)
    assert homology(R).betti == homology(N).betti


def test_invalid_sset_rejected():
    X = standard_simplex(2, 2)
    # d0 and d1 swapped on edges
    bad = TruncatedSSet(X.levels, lambda n, i, s: (s[i],) if n == 1 else X.face(n, i, s), X.degen, 2)
    with pytest.raises(InvalidStructure):
        bad.validate()


def test_restrict_matches_delta_action():
    X = standard_simplex(2, 3)
    for x in X.simplices(2):
        assert X.restrict(DeltaMap(1, 2, (0, 2)), x) == (x[0], x[2])
        assert X.restrict(DeltaMap(3, 2, (0, 0, 1, 2)), x) == (x[0], x[0], x[1], x[2])
