"""Fixed points and homotopy fixed points of C_X, weak saturation and the failure of saturation."""

from dataclasses import dataclass, field
from itertools import combinations

from .combinatorics import DeltaMap, Germ, germ_compose, injections
from .cx import CXMorphism, CXObject, epsilon_simplex, poset
from .em import _stable_or_raise, em_group_action, phi_fixed_sset, restrict_simplex
from .errors import BoundsExceeded, PreconditionFailed
from .fincat import (FinCategory, Functor, HFixedObject, _cocycle_ok, check_equivalence, fixed_subcategory,
                     fixed_to_homotopy_fixed, fun_twisted, has_terminal_object, skeleton_retraction,
                     slice_under_functor)
from .sset import category_of_simplices, homology_equivalence_report, last_vertex_sigma, nerve, SimplicialMap


def hact(cx, U, phi, h, o):
    return cx.g_act(phi(h), cx.act(U.germ(h), o))


@dataclass
class FixedPointData:
    category: FinCategory
    action: object
    fixed: FinCategory
    hfix: FinCategory
    comparison: Functor


def cx_fixed_and_homotopy_fixed(cx, U, phi, T, max_objects=5000):
    """The phi-fixed and homotopy phi-fixed categories of the part of C_X supported on the H-subset T."""
    _stable_or_raise(U, T)
    C = cx.category(within=T)
    if len(C.objects) * len(U.group) > max_objects:
        raise BoundsExceeded(f"{len(C.objects)} objects times group order {len(U.group)} exceed {max_objects}")
    A = em_group_action(cx, C, U, phi)
    fixed = fixed_subcategory(C, A)
    hfix = fun_twisted(C, A)
    return FixedPointData(C, A, fixed, hfix, fixed_to_homotopy_fixed(fixed, hfix, U.group))


# preactions and K


def _inverse(C, f):
    x, y = C.src(f), C.tgt(f)
    for g in C.hom(y, x):
        if C.compose(g, f) == C.identity(x):
            return g
    raise PreconditionFailed(f"{f!r} is not invertible")


def preaction(cx, U, Phi, C, action):
    """For a homotopy fixed object: h -> the vertex map of Phi(1, h) after h_o, a self-map of Phi(1)."""
    o = Phi.base
    H = U.group
    out = {}
    for i, h in enumerate(H.elements):
        to_h = cx.structure_iso(U.germ(h), o)
        to_h = CXMorphism(o, action.act(h, o), to_h.vmap)
        back = _inverse(C, Phi.cocycle[i])
        out[h] = cx.compose(back, to_h)
    return out


def fixed_preaction(cx, U, o):
    """The preaction of a fixed object: h -> h_o viewed as a self-map."""
    return {h: CXMorphism(o, o, cx.structure_iso(U.germ(h), o).vmap) for h in U.group.elements}


def induced_set_action(cx, pre):
    """The H-action on S read off at (iota_S, top): h.(iota_S, top) = (iota_S sigma(h)^-1, top)."""
    out = {}
    for h, f in pre.items():
        j, _ = cx.evaluate(f, poset(f.src.m).top)
        out[h] = j.inverse()
    return out


def equivariant_injections(S, sigma, T, U):
    out = []
    for v in injections(S, T):
        if all(germ_compose(U.germ(h).restrict(T), v) == germ_compose(v, sigma[h]) for h in U.group.elements):
            out.append(v)
    return out


def k_fixed_category(cx, U, o, pre, T):
    """K^Delta for K = E Inj(S, T) x prod Delta^{m_a} with the diagonal action, as a poset category."""
    T = tuple(sorted(T))
    P = poset(o.m)
    table = {h: dict(zip(P.vertices, f.vmap)) for h, f in pre.items()}
    fixed = []
    for v in injections(o.S, T):
        for q in P.vertices:
            if all(_k_act(U, h, table[h], v, q, T) == (v, q) for h in U.group.elements):
                fixed.append((v, q))
    hom = {(a, b): [(a, b)] for a in fixed for b in fixed if P.leq(a[1], b[1])}
    return FinCategory(fixed, hom, lambda g, f: (f[0], g[1]), lambda a: (a, a), name="K fixed")


def _k_act(U, h, table, v, q, T):
    j, q2 = table[q]
    return germ_compose(U.germ(h).restrict(T), germ_compose(v, j)), q2


def k_simplex(cx, alpha, n):
    """alpha(iota_T, -) on Delta^n as a simplex of the nerve of K^Delta."""
    objs = tuple(cx.evaluate(alpha, (k,)) for k in range(n + 1))
    return objs, tuple(zip(objs, objs[1:]))


# the functor i and the reductions c, d


def fixed_simplices(cx, U, phi, T, top):
    """Delta / X^phi_[T], truncated at dimension `top`."""
    Xf = phi_fixed_sset(cx.X, U, phi, T, top)
    return Xf, category_of_simplices(Xf, top)


def i_object(cx, t, T, n, x):
    P = poset((n,))
    core = []
    for level in P.chains:
        for c in level:
            core.append((c, restrict_simplex(cx.X, DeltaMap(len(c) - 1, n, tuple(v[0] for v in c)), x)))
    return CXObject((t,), tuple(sorted(T)), (n,), tuple(core))


def i_functor(cx, U, D, target, T):
    """Delta / X^phi_[T] -> (C_X)^phi_[T], sending k: Delta^n -> X to ({t}, T, (n), k~)."""
    fixed_pts = sorted(set(T) & U.fixed_points)
    if not fixed_pts:
        raise PreconditionFailed(f"{sorted(T)} has no H-fixed point")
    t = fixed_pts[0]
    top = max((n for n, _ in D.objects), default=0)
    if top > cx.bounds.m_max or len(T) > cx.bounds.s_max:
        raise BoundsExceeded(f"simplices up to dimension {top} on {sorted(T)} exceed the bounds {cx.bounds}")
    iota = Germ.identity(T)

    def on_obj(ob):
        return i_object(cx, t, T, *ob)

    def on_mor(f):
        a, b, alpha = f
        return CXMorphism(on_obj(a), on_obj(b), tuple((iota, (alpha(k),)) for k in range(a[0] + 1)))

    return Functor(D, target, on_obj, on_mor, name="i")


def reduction_functor(cx, slice_cat, K, top, arrow=lambda a: a):
    """c (or d): (k, alpha) -> alpha(iota_T, -) from a slice over i (or j) to Delta / K^Delta."""
    NK = nerve(K, top)
    DK = category_of_simplices(NK, top)

    def on_obj(ob):
        (n, _), alpha = ob
        return n, k_simplex(cx, arrow(alpha), n)

    def on_mor(f):
        a, b, (_, _, alpha) = f
        return on_obj(a), on_obj(b), alpha

    return Functor(slice_cat, DK, on_obj, on_mor, name="reduction")


@dataclass
class SliceReport:
    object: str
    slice_size: int
    equivalence: bool
    terminal: bool
    counterexample: dict = field(default_factory=dict)


@dataclass
class FixedPointReport:
    last_vertex_ok: bool
    slices: list

    @property
    def ok(self):
        return self.last_vertex_ok and all(s.equivalence and s.terminal for s in self.slices)

    def __bool__(self):
        return self.ok


def fixed_point_reduction_check(cx, U, phi, T, top=1, d=1, data=None):
    """epsilon after N(i) is the last vertex map, and every slice i / o reduces to Delta / K^Delta with K^Delta
    having a terminal object."""
    data = data or cx_fixed_and_homotopy_fixed(cx, U, phi, T)
    Xf, D = fixed_simplices(cx, U, phi, T, top)
    i = i_functor(cx, U, D, data.fixed, T)
    i.validate()
    ND = nerve(D, d)
    lv = True
    for n in range(d + 1):
        for s in ND.levels[n]:
            image = (tuple(i.obj[o] for o in s[0]), tuple(i.mor[f] for f in s[1]))
            if epsilon_simplex(cx, image) != Xf.restrict(last_vertex_sigma(s), s[0][-1][1]):
                lv = False
    slices = []
    for o in data.fixed.objects:
        sl = slice_under_functor(i, o)
        K = k_fixed_category(cx, U, o, fixed_preaction(cx, U, o), T)
        c = reduction_functor(cx, sl, K, top)
        rep = check_equivalence(c)
        slices.append(SliceReport(repr(o), len(sl.objects), bool(rep), has_terminal_object(K) is not None,
                                  rep.counterexample))
    return FixedPointReport(lv, slices)


# weak saturation


@dataclass
class WeakSaturationReport:
    homology: object
    slices: list
    fixed_count: int
    homotopy_fixed_count: int
    angle_count: int

    @property
    def ok(self):
        return bool(self.homology) and all(s.equivalence and s.terminal for s in self.slices)

    def __bool__(self):
        return self.ok


def angle_subcategory(cx, U, data, T):
    """The homotopy fixed objects whose induced H-set S admits an equivariant injection into T."""
    keep = []
    for Phi in data.hfix.objects:
        pre = preaction(cx, U, Phi, data.category, data.action)
        if equivariant_injections(Phi.base.S, induced_set_action(cx, pre), T, U):
            keep.append(Phi)
    return data.hfix.full_subcategory(keep)


def weak_saturation_check(cx, U, phi, T, d=1, top=None, data=None):
    """The comparison from fixed to homotopy fixed points restricted to <T> is a homology equivalence, and each
    slice j / Phi reduces to Delta / K^Delta with a terminal object."""
    top = cx.bounds.m_max if top is None else top
    data = data or cx_fixed_and_homotopy_fixed(cx, U, phi, T)
    angle = angle_subcategory(cx, U, data, T)
    comp = Functor(data.fixed, angle, data.comparison.obj, data.comparison.mor, name="comparison")
    # nerves of equivalent categories are homotopy equivalent, so test against a skeleton of <T>
    skeleton, r = skeleton_retraction(angle)
    Nf, Ns = nerve(data.fixed, d + 1), nerve(skeleton, d + 1)
    Nc = SimplicialMap(Nf, Ns, lambda n, s: (tuple(r.obj[comp.obj[o]] for o in s[0]),
                                             tuple(r.mor[comp.mor[f]] for f in s[1])))
    homology = homology_equivalence_report(Nc, d)
    Xf, D = fixed_simplices(cx, U, phi, T, top)
    i = i_functor(cx, U, D, data.fixed, T)
    j = Functor(D, angle, lambda x: comp.obj[i.obj[x]], lambda f: comp.mor[i.mor[f]], name="j")
    slices = []
    for Phi in angle.objects:
        sl = slice_under_functor(j, Phi)
        pre = preaction(cx, U, Phi, data.category, data.action)
        K = k_fixed_category(cx, U, Phi.base, pre, T)
        red = reduction_functor(cx, sl, K, top, arrow=lambda a: a[2])
        rep = check_equivalence(red)
        slices.append(SliceReport(repr(Phi.base), len(sl.objects), bool(rep), has_terminal_object(K) is not None,
                                  rep.counterexample))
    return WeakSaturationReport(homology, slices, len(data.fixed.objects), len(data.hfix.objects),
                                len(angle.objects))


# failure of saturation


@dataclass
class NonSaturationWitness:
    S: tuple
    T: tuple
    a: int
    object: CXObject
    cocycle_ok: bool
    endpoint_trivial: dict
    candidates_checked: int
    isomorphic_fixed: list

    @property
    def holds(self):
        return (self.cocycle_ok and self.endpoint_trivial[0] != self.endpoint_trivial[1]
                and not self.isomorphic_fixed)

    def to_dict(self):
        return {"S": list(self.S), "T": list(self.T), "a": self.a, "object": repr(self.object),
                "cocycle_ok": self.cocycle_ok,
                "endpoint_trivial": {str(k): v for k, v in self.endpoint_trivial.items()},
                "candidates_checked": self.candidates_checked,
                "isomorphic_fixed": [repr(o) for o in self.isomorphic_fixed]}


def nonsaturation_witness(cx, U, x, T, a=None):
    """A homotopy fixed point of C_X, for the trivial homomorphism out of H, not isomorphic to a fixed point.

    U is a universal action of a group isomorphic to Sigma_T; the isomorphism psi is found by search.
    """
    X = cx.X
    H = U.group
    S = tuple(sorted(X.support(x)))
    T = tuple(sorted(T))
    if X.level(x) != 0:
        raise PreconditionFailed("x must be a vertex")
    if len(T) < 2 or set(T) & set(S):
        raise PreconditionFailed("T must have at least two points and avoid supp(x)")
    psi = _psi(H, T)
    ST = tuple(sorted(S + T))
    if not set(ST) <= set(U.window.points()):
        raise PreconditionFailed(f"S u T = {list(ST)} must lie in the window")
    if a is None:
        free = sorted(U.fixed_points - set(ST))
        if not free:
            raise PreconditionFailed("no H-fixed point outside S u T")
        a = free[0]
    edge = X.degen(0, 0, x)
    base = CXObject((a,), ST, (1,), ((((0,),), x), (((1,),), x), (((0,), (1,)), edge)))

    def tau(h):
        j = Germ.identity(S).union(psi[H.inv[h]]) if S else psi[H.inv[h]]
        return CXMorphism(base, base, ((Germ.identity(ST), (0,)), (j, (1,))))

    for h in H.elements:
        if not cx.is_morphism(tau(h)):
            raise PreconditionFailed("tau is not a self-map of Phi(1)")
    triv = _trivial_hom(X)
    orbit = {hact(cx, U, triv, h, base) for h in H.elements}
    hom = {}
    for p in orbit:
        for q in orbit:
            fs = cx.hom(p, q)
            if fs:
                hom[(p, q)] = fs
    C = FinCategory(sorted(orbit, key=repr), hom, cx.compose, cx.identity, name="orbit")
    action = em_group_action(cx, C, U, triv)
    cocycle = tuple(cx.compose(cx.structure_iso(U.germ(h), base), tau(H.inv[h])) for h in H.elements)
    ok = _cocycle_ok(C, action, base, dict(zip(H.elements, cocycle)))
    Phi = HFixedObject(base, cocycle)
    pre = preaction(cx, U, Phi, C, action)
    endpoint = {}
    for q in (0, 1):
        endpoint[q] = all(cx.evaluate(pre[h], (q,)) == (Germ.identity(ST), (q,)) for h in H.elements)
    checked, iso_fixed = _search_fixed_isomorphic(cx, U, base, pre, ST, a)
    return NonSaturationWitness(S, T, a, base, ok, endpoint, checked, iso_fixed)


def _trivial_hom(X):
    return lambda h: X.group.id if X.group else None


def _psi(H, T):
    """An isomorphism H -> Sigma_T, as germs on T; H must have order |T|! and act faithfully on |T| letters."""
    from itertools import permutations
    perms = [Germ(dict(zip(T, p))) for p in permutations(T)]
    if len(perms) != len(H):
        raise PreconditionFailed(f"group of order {len(H)} is not isomorphic to Sigma_{len(T)}")
    elements = list(H.elements)
    for image in permutations(perms):
        table = dict(zip(elements, image))
        if all(table[H.mul[(g, h)]] == germ_compose(table[g], table[h]) for g in elements for h in elements):
            return table
    raise PreconditionFailed("no isomorphism onto Sigma_T found")


def _search_fixed_isomorphic(cx, U, base, pre, ST, a):
    """Fixed objects on the points of Phi(1) admitting an isomorphism to Phi(1) equivariant in the preactions."""
    pts = sorted(set(ST) | {a})
    H = U.group
    orbits = [o for o in U.orbits() if o <= set(pts)]
    stable = set()
    for k in range(len(orbits) + 1):
        for combo in combinations(orbits, k):
            stable.add(tuple(sorted(set().union(*combo))))
    Ss = [s for s in stable if len(s) == len(ST)]
    As = [s for s in stable if len(s) == 1]
    found, checked = [], 0
    for o in cx.make_objects(As, Ss, m_choices=lambda A: [(1,) * len(A)]):
        if any(hact(cx, U, _trivial_hom(cx.X), h, o) != o for h in H.elements):
            continue
        checked += 1
        fpre = fixed_preaction(cx, U, o)
        for f in cx.hom(o, base):
            if not any(cx.compose(g, f) == cx.identity(o) for g in cx.hom(base, o)):
                continue
            if all(cx.compose(f, fpre[h]).vmap == cx.compose(pre[h], f).vmap for h in H.elements):
                found.append(o)
                break
    return checked, found
