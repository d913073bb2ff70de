"""The box-monoidal structure on C_X: restrictions rho, the product nabla, the unit iota and the parsummable lift."""

from .combinatorics import Germ, germ_compose
from .cx import CX, CXMorphism, CXObject, core_value, epsilon_simplex, epsilon_tilde_morphism, \
    epsilon_tilde_object, poset
from .em import EInjSSet, NerveEM, ProductEM, ProductSSet, simplex_product_trivial, trivial_point
from .errors import InvalidStructure, SupportsOverlap
from .parsummable import ParsummableCategory, ParsummableReport
from .sset import nerve


# restriction maps rho between E Inj(S) x P_A


def _restrict_vertex(p, A_big, A_small):
    pos = {a: i for i, a in enumerate(A_big)}
    return tuple(p[pos[a]] for a in A_small)


def rho(shape_small, shape_big):
    """rho^{A',S'}_{A,S} on simplices ((u_0..u_n), (p_0..p_n)): restrict germs to S and vertices to A."""
    A, S, _ = shape_small
    A2, S2, _ = shape_big
    if not (set(A) <= set(A2) and set(S) <= set(S2)):
        raise InvalidStructure(f"{shape_small} is not contained in {shape_big}")

    def fn(x):
        us, ps = x
        return tuple(u.restrict(S) for u in us), tuple(_restrict_vertex(p, A2, A) for p in ps)

    return fn


def shape_sset(shape, d):
    A, S, m = shape
    return ProductSSet(EInjSSet(S), simplex_product_trivial(m, d))


def _shape(A, S, m):
    return tuple(sorted(A)), tuple(sorted(S)), tuple(m)


def _subshape(shape, A, S):
    A0, _, m0 = shape
    pos = {a: i for i, a in enumerate(A0)}
    A = tuple(sorted(A))
    return A, tuple(sorted(S)), tuple(m0[pos[a]] for a in A)


def _union_shape(s1, s2):
    A = tuple(sorted(s1[0] + s2[0]))
    m = dict(zip(s1[0], s1[2]))
    m.update(zip(s2[0], s2[2]))
    return A, tuple(sorted(s1[1] + s2[1])), tuple(m[a] for a in A)


def _pullback(u, shape):
    """u* : E Inj(u(S)) x P_{u(A)} -> E Inj(S) x P_A for an injection u defined on A and S."""
    A, S, _ = shape
    uA = tuple(sorted(u(a) for a in A))
    pos = {a: i for i, a in enumerate(uA)}
    uS = u.restrict(S)

    def fn(x):
        vs, ps = x
        return tuple(germ_compose(v, uS) for v in vs), tuple(tuple(p[pos[u(a)]] for a in A) for p in ps)

    return fn


def _image_shape(u, shape):
    A, S, m = shape
    uA = tuple(sorted(u(a) for a in A))
    mm = dict(zip((u(a) for a in A), m))
    return uA, tuple(sorted(u(s) for s in S)), tuple(mm[a] for a in uA)


def verify_rho_laws(shapes, window, d=1, germs=None):
    """Check the five laws of rho on all simplices within the window for the given shapes (A, S, m)."""
    rep = ParsummableReport()
    shapes = [_shape(*s) for s in shapes]
    cells = {s: {n: shape_sset(s, d).simplices(n, window) for n in range(d + 1)} for s in shapes}
    for big in shapes:
        A2, S2, _ = big
        subs = [_subshape(big, a, s) for a in _subsets(A2) for s in _subsets(S2)]
        for small in subs:
            r = rho(small, big)
            X = shape_sset(small, d)
            for n in range(d + 1):
                for x in cells[big][n]:
                    rep.count("equivariance")
                    u = Germ({b: b + window for b in range(1, window + 1)})
                    moved = shape_sset(big, d).act((u,) * (n + 1), x)
                    if r(moved) != X.act((u,) * (n + 1), r(x)):
                        rep.fail("equivariance", small=small, big=big, x=x)
            for mid in subs:
                if set(small[0]) <= set(mid[0]) and set(small[1]) <= set(mid[1]):
                    r1, r2 = rho(small, mid), rho(mid, big)
                    for n in range(d + 1):
                        for x in cells[big][n]:
                            rep.count("composite")
                            if r1(r2(x)) != r(x):
                                rep.fail("composite", small=small, mid=mid, big=big, x=x)
        ident = rho(big, big)
        for n in range(d + 1):
            for x in cells[big][n]:
                rep.count("identity")
                if ident(x) != x:
                    rep.fail("identity", shape=big, x=x)
        _check_box_iso(rep, big, cells[big], window, d)
        _check_pullback(rep, big, cells[big], window, d, germs)
    return rep


def _subsets(xs):
    xs = list(xs)
    return [tuple(x for k, x in enumerate(xs) if mask >> k & 1) for mask in range(1 << len(xs))]


def _check_box_iso(rep, big, cells, window, d):
    A2, S2, _ = big
    for a_part in _subsets(A2):
        for s_part in _subsets(S2):
            left = _subshape(big, a_part, s_part)
            right = _subshape(big, set(A2) - set(a_part), set(S2) - set(s_part))
            if set(left[0]) & set(right[1]) or set(left[1]) & set(right[0]):
                continue
            rl, rr = rho(left, big), rho(right, big)
            XL, XR = shape_sset(left, d), shape_sset(right, d)
            for n in range(d + 1):
                for x in cells[n]:
                    rep.count("box-iso")
                    y, z = rl(x), rr(x)
                    if any(XL.supp_k(y, k) & XR.supp_k(z, k) for k in range(n + 1)):
                        rep.fail("box-iso", reason="image not in box", x=x)
                        continue
                    back = (tuple(u.union(v) for u, v in zip(y[0], z[0])),
                            tuple(_merge_vertex(p, left[0], q, right[0], A2) for p, q in zip(y[1], z[1])))
                    if back != x:
                        rep.fail("box-iso", reason="inverse", x=x)
            for n in range(d + 1):
                for y in XL.simplices(n, window):
                    for z in XR.simplices(n, window):
                        if any(XL.supp_k(y, k) & XR.supp_k(z, k) for k in range(n + 1)):
                            continue
                        rep.count("box-iso")
                        x = (tuple(u.union(v) for u, v in zip(y[0], z[0])),
                             tuple(_merge_vertex(p, left[0], q, right[0], A2) for p, q in zip(y[1], z[1])))
                        if (rl(x), rr(x)) != (y, z):
                            rep.fail("box-iso", reason="section", y=y, z=z)


def _merge_vertex(p, A, q, B, AB):
    val = dict(zip(A, p))
    val.update(zip(B, q))
    return tuple(val[a] for a in AB)


def _check_pullback(rep, big, cells, window, d, germs):
    A2, S2, _ = big
    pts = sorted(set(A2) | set(S2))
    us = germs or [Germ({a: a + 1 for a in pts}), Germ({a: window + len(pts) - k for k, a in enumerate(pts)})]
    for u in us:
        ubig = _image_shape(u, big)
        ucells = {n: shape_sset(ubig, d).simplices(n, window + len(pts) + 1) for n in range(d + 1)}
        for a_part in _subsets(A2):
            for s_part in _subsets(S2):
                small = _subshape(big, a_part, s_part)
                usmall = _image_shape(u, small)
                left = lambda x: rho(small, big)(_pullback(u, big)(x))
                right = lambda x: _pullback(u, small)(rho(usmall, ubig)(x))
                for n in range(d + 1):
                    for x in ucells[n][:200]:
                        rep.count("pullback")
                        if left(x) != right(x):
                            rep.fail("pullback", u=u, small=small, x=x)


# nabla and iota


def _split_chain(c, AB, A, B):
    pa = {a: i for i, a in enumerate(AB)}
    return tuple(tuple(p[pa[a]] for a in A) for p in c), tuple(tuple(p[pa[b]] for b in B) for p in c)


def nabla(cx1, cx2, o1, o2):
    """The product object (A u B, S u T, m u n, f u g) of C_{X box Y}."""
    if o1.support & o2.support:
        raise SupportsOverlap(f"{o1!r} and {o2!r} have overlapping supports")
    shape = _union_shape((o1.A, o1.S, o1.m), (o2.A, o2.S, o2.m))
    AB, S, m = shape
    core = []
    for level in poset(m).chains:
        for c in level:
            c1, c2 = _split_chain(c, AB, o1.A, o2.A)
            core.append((c, (core_value(cx1.X, o1, c1), core_value(cx2.X, o2, c2))))
    return CXObject(AB, S, m, tuple(core))


def nabla_mor(cx1, cx2, f, g):
    """The product of morphisms: p goes to (j_{p|A} u k_{p|B}, q u r)."""
    src = nabla(cx1, cx2, f.src, g.src)
    tgt = nabla(cx1, cx2, f.tgt, g.tgt)
    vmap = []
    for p in poset(src.m).vertices:
        (pa,), (pb,) = _split_chain((p,), src.A, f.src.A, g.src.A)
        j, q = cx1.evaluate(f, pa)
        k, r = cx2.evaluate(g, pb)
        vmap.append((j.union(k), _merge_vertex(q, f.tgt.A, r, g.tgt.A, tgt.A)))
    return CXMorphism(src, tgt, tuple(vmap))


def iota(X=None, zero=None):
    """The unit (empty, empty, empty, zero vertex)."""
    if zero is None:
        zero = (X or trivial_point(8)).simplices(0, 1)[0]
    return CXObject((), (), (), ((((),), zero),))


def map_core(o, phi):
    return CXObject(o.A, o.S, o.m, tuple((c, phi(x)) for c, x in o.core))


def map_mor(f, phi):
    return CXMorphism(map_core(f.src, phi), map_core(f.tgt, phi), f.vmap)


def box_cx(cx1, cx2, bounds=None):
    return CX(ProductSSet(cx1.X, cx2.X, box=True), bounds or cx1.bounds)


def _disjoint_pairs(xs, ys, supp):
    return [(x, y) for x in xs for y in ys if not supp(x) & supp(y)]


def verify_nabla_coherence(cx, objects, morphisms=(), germs=None):
    """Unit, associativity, symmetry, functoriality and equivariance of nabla on the given objects of C_X."""
    rep = ParsummableReport()
    pt = CX(trivial_point(8), cx.bounds)
    unit = iota()
    XX = box_cx(cx, cx)
    supp = lambda o: o.support
    for o in objects:
        rep.count("unit")
        left = map_core(nabla(pt, cx, unit, o), lambda x: x[1])
        right = map_core(nabla(cx, pt, o, unit), lambda x: x[0])
        if left != o or right != o:
            rep.fail("unit", o=o)
    pairs = _disjoint_pairs(objects, objects, supp)
    for o1, o2 in pairs:
        rep.count("symmetry")
        swapped = map_core(nabla(cx, cx, o1, o2), lambda x: (x[1], x[0]))
        if swapped != nabla(cx, cx, o2, o1):
            rep.fail("symmetry", o1=o1, o2=o2)
        n12 = nabla(cx, cx, o1, o2)
        for u in germs or [Germ({a: a + 1 for a in n12.support}),
                           Germ({a: 2 * a + 7 for a in n12.support})]:
            rep.count("equivariance")
            if XX.act(u, n12) != nabla(cx, cx, cx.act(u, o1), cx.act(u, o2)):
                rep.fail("equivariance", o1=o1, o2=o2, u=u)
            rep.count("structure-iso")
            if XX.structure_iso(u, n12) != nabla_mor(cx, cx, cx.structure_iso(u, o1), cx.structure_iso(u, o2)):
                rep.fail("structure-iso", o1=o1, o2=o2, u=u)
        for o3 in objects:
            if o3.support & (o1.support | o2.support):
                continue
            rep.count("associativity")
            lhs = map_core(nabla(XX, cx, n12, o3), lambda x: (x[0][0], (x[0][1], x[1])))
            rhs = nabla(cx, XX, o1, nabla(cx, cx, o2, o3))
            if lhs != rhs:
                rep.fail("associativity", o1=o1, o2=o2, o3=o3)
    for f, g in _disjoint_mor_pairs(morphisms):
        rep.count("morphism-symmetry")
        if map_mor(nabla_mor(cx, cx, f, g), lambda x: (x[1], x[0])) != nabla_mor(cx, cx, g, f):
            rep.fail("morphism-symmetry", f=f, g=g)
        rep.count("morphism-valid")
        if not XX.is_morphism(nabla_mor(cx, cx, f, g)):
            rep.fail("morphism-valid", f=f, g=g)
        rep.count("identity")
        if nabla_mor(cx, cx, cx.identity(f.src), cx.identity(g.src)) != XX.identity(nabla(cx, cx, f.src, g.src)):
            rep.fail("identity", f=f, g=g)
        for f2 in morphisms:
            if f2.src != f.tgt:
                continue
            for g2 in morphisms:
                if g2.src != g.tgt or f2.tgt.support & g2.tgt.support:
                    continue
                rep.count("functoriality")
                lhs = nabla_mor(cx, cx, cx.compose(f2, f), cx.compose(g2, g))
                rhs = XX.compose(nabla_mor(cx, cx, f2, g2), nabla_mor(cx, cx, f, g))
                if lhs != rhs:
                    rep.fail("functoriality", f=f, g=g, f2=f2, g2=g2)
    return rep


def _disjoint_mor_pairs(morphisms):
    out = []
    for f in morphisms:
        for g in morphisms:
            if not (f.src.support & g.src.support) and not (f.tgt.support & g.tgt.support):
                out.append((f, g))
    return out


# last vertex maps are monoidal


def verify_epsilon_monoidal(cx, C, d=1, limit=3000):
    """epsilon(nabla(a, b)) = (epsilon a, epsilon b) for box pairs of simplices of N(C)."""
    rep = ParsummableReport()
    XX = box_cx(cx, cx)
    N = nerve(C, d)
    for n in range(d + 1):
        cells = N.levels[n]
        seen = 0
        for s in cells:
            for t in cells:
                if any(a.support & b.support for a, b in zip(s[0], t[0])):
                    continue
                seen += 1
                if seen > limit:
                    break
                rep.count("epsilon-monoidal")
                objs = tuple(nabla(cx, cx, a, b) for a, b in zip(s[0], t[0]))
                mors = tuple(nabla_mor(cx, cx, f, g) for f, g in zip(s[1], t[1]))
                if epsilon_simplex(XX, (objs, mors)) != (epsilon_simplex(cx, s), epsilon_simplex(cx, t)):
                    rep.fail("epsilon-monoidal", n=n, s=s, t=t)
    return rep


def _nerve_pair_to_product(x):
    (oa, ma), (ob, mb) = x
    return tuple(zip(oa, ob)), tuple(zip(ma, mb))


def verify_epsilon_tilde_monoidal(cx1, cx2, objects1, objects2, morphisms1=(), morphisms2=()):
    """For X = N(C), Y = N(D): epsilon tilde of nabla, read through N(C) box N(D) = N(C box D), is the pair."""
    rep = ParsummableReport()
    C, D = cx1.X.C, cx2.X.C
    target = CX(NerveEM(ProductEM(C, D, box=True)), cx1.bounds)
    for o1 in objects1:
        for o2 in objects2:
            if o1.support & o2.support:
                continue
            rep.count("object")
            o = map_core(nabla(cx1, cx2, o1, o2), _nerve_pair_to_product)
            if epsilon_tilde_object(target, o) != (epsilon_tilde_object(cx1, o1), epsilon_tilde_object(cx2, o2)):
                rep.fail("object", o1=o1, o2=o2)
    for f in morphisms1:
        for g in morphisms2:
            if f.src.support & g.src.support or f.tgt.support & g.tgt.support:
                continue
            rep.count("morphism")
            h = map_mor(nabla_mor(cx1, cx2, f, g), _nerve_pair_to_product)
            if epsilon_tilde_morphism(target, h) != (epsilon_tilde_morphism(cx1, f), epsilon_tilde_morphism(cx2, g)):
                rep.fail("morphism", f=f, g=g)
    return rep


# the parsummable lift


def cx_parsummable_lift(PX, bounds=None):
    """C_X as a parsummable category for a parsummable simplicial set X: f + g = (+)(f u g)."""
    cx = CX(PX.base, bounds) if bounds else CX(PX.base)
    zero = iota(zero=PX.zero)

    def plus(pair):
        x, y = pair
        return PX.add(PX.base.level(x), x, y)

    def add(o1, o2):
        return map_core(nabla(cx, cx, o1, o2), plus)

    def add_mor(f, g):
        return map_mor(nabla_mor(cx, cx, f, g), plus)

    return ParsummableCategory(cx, zero, add, add_mor, cx.bounds.window, name=f"C_({PX.name})")
