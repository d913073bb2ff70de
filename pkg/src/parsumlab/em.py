"""Tame categories and simplicial sets with an action of the chaotic injection monoid.

Every object is presented by shape plus labeling: a cell carries a finite set
of labels (its footprint) and germs act by relabeling.  Supports are computed
from the footprint with explicit shift witnesses.
"""

from dataclasses import dataclass, field
from itertools import product

from .combinatorics import DeltaMap, Germ, all_delta_maps, germ_compose, germ_extend, injections, shift_witness, subsets
from .errors import (BoundsExceeded, InsufficientGermDomain, InvalidStructure, NotSupported,
                     SupportsOverlap, TNotStable)
from .fincat import CatGAction, FinCategory, Functor, fixed_subcategory, fixed_to_homotopy_fixed, fun_twisted
from .sset import SimplicialMap, TruncatedSSet, subcomplex


@dataclass
class SupportReport:
    cell: object
    declared: frozenset
    support: frozenset
    witnesses: dict = field(default_factory=dict)
    removals: dict = field(default_factory=dict)
    per_vertex: list = field(default_factory=list)

    @property
    def consistent(self):
        return self.declared == self.support


def _probe(footprint, moves):
    """Split the footprint into support points and removable points using shift witnesses.

    `moves(u)` reports whether acting by u changes the cell.
    """
    F = frozenset(footprint)
    support, witnesses, removals = set(), {}, {}
    for a in sorted(F):
        u = shift_witness(F - {a}, {a}, F)
        if moves(u):
            support.add(a)
            witnesses[a] = u
        else:
            removals[a] = u
    return frozenset(support), witnesses, removals


def _ident_on(points):
    return Germ.identity(points)


# categories


class EMCategory:
    """Base class; subclasses implement enumeration, composition and the action."""

    name = "EM-category"
    group = None

    def objects(self, window):
        raise NotImplementedError

    def hom(self, x, y):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def footprint(self, x):
        raise NotImplementedError

    def _act(self, u, x):
        raise NotImplementedError

    def _structure_iso(self, u, x):
        raise NotImplementedError

    def _structure_iso_inverse(self, u, x):
        raise NotImplementedError

    def g_act(self, g, x):
        return x

    def g_act_mor(self, g, f):
        return f

    def _check(self, u, x):
        if not u.covers(self.footprint(x)):
            raise InsufficientGermDomain(f"{u} does not cover the support {sorted(self.footprint(x))} of {x!r}")

    def act(self, u, x):
        self._check(u, x)
        return self._act(u, x)

    def structure_iso(self, u, x):
        """The canonical morphism x -> u.x."""
        self._check(u, x)
        return self._structure_iso(u, x)

    def structure_iso_inverse(self, u, x):
        self._check(u, x)
        return self._structure_iso_inverse(u, x)

    def src(self, f):
        raise NotImplementedError

    def tgt(self, f):
        raise NotImplementedError

    def act_mor(self, u, f):
        x, y = self.src(f), self.tgt(f)
        return self.compose(self.structure_iso(u, y), self.compose(f, self.structure_iso_inverse(u, x)))

    def support(self, x):
        cache = self.__dict__.setdefault("_support_cache", {})
        if x not in cache:
            cache[x] = self.support_report(x).support
        return cache[x]

    def support_report(self, x):
        F = self.footprint(x)
        supp, wit, rem = _probe(F, lambda u: self._act(u, x) != x)
        return SupportReport(x, frozenset(F), supp, wit, rem)

    def supported_on(self, x, A):
        return self.support(x) <= frozenset(A)

    def to_fincat(self, window, keep=None):
        objs = [x for x in self.objects(window) if keep is None or keep(x)]
        hom = {}
        for x in objs:
            for y in objs:
                fs = self.hom(x, y)
                if fs:
                    hom[(x, y)] = fs
        return FinCategory(objs, hom, self.compose, self.identity, name=self.name)


class ChaoticEM(EMCategory):
    """The chaotic category on a tame set with an action of the injection monoid.

    The morphism x -> y is the pair (y, x); the structure isomorphism of u at x
    is the unique morphism x -> u.x.
    """

    def __init__(self, elements, act, footprint, name=None, group=None, g_act=None):
        self._elements = elements
        self._act_fn = act
        self._footprint_fn = footprint
        self.name = name or "E(set)"
        self.group = group
        self._g_act = g_act

    def objects(self, window):
        return list(self._elements(window))

    def hom(self, x, y):
        return [(y, x)]

    def compose(self, g, f):
        return (g[0], f[1])

    def identity(self, x):
        return (x, x)

    def src(self, f):
        return f[1]

    def tgt(self, f):
        return f[0]

    def footprint(self, x):
        return frozenset(self._footprint_fn(x))

    def _act(self, u, x):
        return self._act_fn(u, x)

    def _structure_iso(self, u, x):
        return (self._act_fn(u, x), x)

    def _structure_iso_inverse(self, u, x):
        return (x, self._act_fn(u, x))

    def act_mor(self, u, f):
        return (self.act(u, f[0]), self.act(u, f[1]))

    def g_act(self, g, x):
        return x if self._g_act is None else self._g_act(g, x)

    def g_act_mor(self, g, f):
        return (self.g_act(g, f[0]), self.g_act(g, f[1]))


def einj(A, group=None, perm=None):
    """E Inj(A, omega): objects are injections A -> omega, u.i = u after i, support of i is its image.

    An optional group acts through `perm(g)`, a germ permuting A, by g.i = i after perm(g)^-1.
    """
    A = frozenset(A)
    g_act = None
    if group is not None:
        g_act = lambda g, i: germ_compose(i, perm(g).inverse())
    return ChaoticEM(lambda w: injections(A, range(1, w + 1)), lambda u, i: germ_compose(u, i),
                     lambda i: i.image, name=f"E Inj({sorted(A)})", group=group, g_act=g_act)


def finite_subsets(max_size=None):
    """E of the set of finite subsets of omega, acting by images."""
    return ChaoticEM(lambda w: subsets(range(1, w + 1), max_size), lambda u, s: u.apply_set(s),
                     lambda s: s, name="E(finite subsets)")


class TrivialEM(EMCategory):
    """A finite category with trivial action; every object has empty support."""

    def __init__(self, C, name=None):
        self.C = C
        self.name = name or f"triv({C.name or ''})"

    def objects(self, window):
        return list(self.C.objects)

    def hom(self, x, y):
        return self.C.hom(x, y)

    def compose(self, g, f):
        return self.C.compose(g, f)

    def identity(self, x):
        return self.C.identity(x)

    def src(self, f):
        return self.C.src(f)

    def tgt(self, f):
        return self.C.tgt(f)

    def footprint(self, x):
        return frozenset()

    def _act(self, u, x):
        return x

    def _structure_iso(self, u, x):
        return self.C.identity(x)

    _structure_iso_inverse = _structure_iso

    def act_mor(self, u, f):
        return f


class ProductEM(EMCategory):
    """Cartesian product; with box=True the full subcategory of disjointly supported pairs."""

    def __init__(self, C, D, box=False):
        self.C, self.D, self.box = C, D, box
        self.name = f"{C.name} {'[x]' if box else 'x'} {D.name}"
        self.group = C.group or D.group

    def _ok(self, x):
        return not self.box or not (self.C.support(x[0]) & self.D.support(x[1]))

    def objects(self, window):
        return [(c, d) for c in self.C.objects(window) for d in self.D.objects(window) if self._ok((c, d))]

    def hom(self, x, y):
        return [(f, g) for f in self.C.hom(x[0], y[0]) for g in self.D.hom(x[1], y[1])]

    def compose(self, g, f):
        return (self.C.compose(g[0], f[0]), self.D.compose(g[1], f[1]))

    def identity(self, x):
        return (self.C.identity(x[0]), self.D.identity(x[1]))

    def src(self, f):
        return (self.C.src(f[0]), self.D.src(f[1]))

    def tgt(self, f):
        return (self.C.tgt(f[0]), self.D.tgt(f[1]))

    def footprint(self, x):
        return self.C.footprint(x[0]) | self.D.footprint(x[1])

    def _act(self, u, x):
        return (self.C.act(u, x[0]), self.D.act(u, x[1]))

    def _structure_iso(self, u, x):
        return (self.C.structure_iso(u, x[0]), self.D.structure_iso(u, x[1]))

    def _structure_iso_inverse(self, u, x):
        return (self.C.structure_iso_inverse(u, x[0]), self.D.structure_iso_inverse(u, x[1]))

    def act_mor(self, u, f):
        return (self.C.act_mor(u, f[0]), self.D.act_mor(u, f[1]))

    def support(self, x):
        return self.C.support(x[0]) | self.D.support(x[1])

    def g_act(self, g, x):
        return (self.C.g_act(g, x[0]), self.D.g_act(g, x[1]))

    def g_act_mor(self, g, f):
        return (self.C.g_act_mor(g, f[0]), self.D.g_act_mor(g, f[1]))


def box_product(C, D):
    if isinstance(C, EMSSet):
        return ProductSSet(C, D, box=True)
    return ProductEM(C, D, box=True)


# simplicial sets


class EMSSet:
    """Base class for simplicial sets with an action of the simplicial monoid N(E M).

    An n-simplex is acted on by an (n+1)-tuple of germs, one per vertex slot.
    """

    name = "EM-sset"
    group = None

    def simplices(self, n, window):
        raise NotImplementedError

    def face(self, n, i, x):
        raise NotImplementedError

    def degen(self, n, j, x):
        raise NotImplementedError

    def slot_footprint(self, x, k):
        raise NotImplementedError

    def level(self, x):
        raise NotImplementedError

    def _act(self, us, x):
        raise NotImplementedError

    def g_act(self, g, x):
        return x

    def footprint(self, x):
        out = frozenset()
        for k in range(self.level(x) + 1):
            out |= self.slot_footprint(x, k)
        return out

    def act(self, us, x):
        n = self.level(x)
        if len(us) != n + 1:
            raise InvalidStructure(f"an {n}-simplex needs {n + 1} germs, got {len(us)}")
        for k, u in enumerate(us):
            if not u.covers(self.slot_footprint(x, k)):
                raise InsufficientGermDomain(f"germ {u} in slot {k} does not cover {sorted(self.slot_footprint(x, k))}")
        return self._act(tuple(us), x)

    def act_diag(self, u, x):
        return self.act((u,) * (self.level(x) + 1), x)

    def supp_k(self, x, k):
        cache = self.__dict__.setdefault("_suppk_cache", {})
        if (x, k) not in cache:
            cache[(x, k)] = self._supp_k_report(x, k)[0]
        return cache[(x, k)]

    def _supp_k_report(self, x, k):
        n = self.level(x)
        if not 0 <= k <= n:
            raise InvalidStructure(f"slot {k} out of range for an {n}-simplex")
        F = self.footprint(x)
        ident = _ident_on(F)

        def moves(u):
            us = tuple(u if j == k else ident for j in range(n + 1))
            return self._act(us, x) != x

        return _probe(F, moves)

    def support(self, x):
        out = frozenset()
        for k in range(self.level(x) + 1):
            out |= self.supp_k(x, k)
        return out

    def diagonal_support(self, x):
        """Support for the diagonal action, where one germ acts in every slot."""
        F = self.footprint(x)
        return _probe(F, lambda u: self.act_diag(u, x) != x)[0]

    def support_report(self, x):
        n = self.level(x)
        per = [self._supp_k_report(x, k) for k in range(n + 1)]
        supp = frozenset().union(*[p[0] for p in per])
        wit = {}
        rem = {}
        for k, (_, w, r) in enumerate(per):
            for a, u in w.items():
                wit.setdefault(a, (k, u))
            for a, u in r.items():
                rem.setdefault((k, a), u)
        return SupportReport(x, self.footprint(x), supp, wit, rem, [p[0] for p in per])

    def to_sset(self, window, d, keep=None):
        levels = [[x for x in self.simplices(n, window) if keep is None or keep(n, x)] for n in range(d + 1)]
        return TruncatedSSet(levels, self.face, self.degen, d, name=self.name)


class EInjSSet(EMSSet):
    """E Inj(A, omega) as a simplicial set: n-simplices are (n+1)-tuples of injections A -> omega."""

    def __init__(self, A, group=None, perm=None):
        self.A = frozenset(A)
        self.name = f"E Inj({sorted(self.A)})"
        self.group = group
        self._perm = perm

    def simplices(self, n, window):
        verts = injections(self.A, range(1, window + 1))
        return [tuple(p) for p in product(verts, repeat=n + 1)]

    def level(self, x):
        return len(x) - 1

    def face(self, n, i, x):
        return x[:i] + x[i + 1:]

    def degen(self, n, j, x):
        return x[:j + 1] + x[j:]

    def slot_footprint(self, x, k):
        return x[k].image

    def _act(self, us, x):
        return tuple(germ_compose(u, i) for u, i in zip(us, x))

    def g_act(self, g, x):
        if self.group is None:
            return x
        p = self._perm(g).inverse()
        return tuple(germ_compose(i, p) for i in x)


class TrivialSSet(EMSSet):
    """A truncated simplicial set with trivial action."""

    def __init__(self, X, name=None):
        self.X = X
        self.name = name or X.name or "triv"
        self._level = {x: n for n in range(X.dim + 1) for x in X.levels[n]}

    def simplices(self, n, window):
        return list(self.X.levels[n])

    def level(self, x):
        return self._level[x]

    def face(self, n, i, x):
        return self.X.face(n, i, x)

    def degen(self, n, j, x):
        return self.X.degen(n, j, x)

    def slot_footprint(self, x, k):
        return frozenset()

    def _act(self, us, x):
        return x

    def supp_k(self, x, k):
        return frozenset()


class ProductSSet(EMSSet):
    """Levelwise product; with box=True only pairs with disjoint k-supports for every k."""

    def __init__(self, X, Y, box=False):
        self.X, self.Y, self.box = X, Y, box
        self.name = f"{X.name} {'[x]' if box else 'x'} {Y.name}"
        self.group = X.group or Y.group

    def _ok(self, n, x):
        if not self.box:
            return True
        return all(not (self.X.supp_k(x[0], k) & self.Y.supp_k(x[1], k)) for k in range(n + 1))

    def simplices(self, n, window):
        return [(a, b) for a in self.X.simplices(n, window) for b in self.Y.simplices(n, window)
                if self._ok(n, (a, b))]

    def level(self, x):
        return self.X.level(x[0])

    def face(self, n, i, x):
        return (self.X.face(n, i, x[0]), self.Y.face(n, i, x[1]))

    def degen(self, n, j, x):
        return (self.X.degen(n, j, x[0]), self.Y.degen(n, j, x[1]))

    def slot_footprint(self, x, k):
        return self.X.slot_footprint(x[0], k) | self.Y.slot_footprint(x[1], k)

    def _act(self, us, x):
        return (self.X.act(us, x[0]), self.Y.act(us, x[1]))

    def supp_k(self, x, k):
        return self.X.supp_k(x[0], k) | self.Y.supp_k(x[1], k)

    def g_act(self, g, x):
        return (self.X.g_act(g, x[0]), self.Y.g_act(g, x[1]))


class NerveEM(EMSSet):
    """The nerve of an EM-category with the vertexwise induced action.

    Simplices are ((x_0..x_n), (f_1..f_n)) as in `sset.nerve`; the tuple
    (u_0..u_n) sends f_i to (u_i)_o f_i ((u_{i-1})_o)^-1.
    """

    def __init__(self, C):
        self.C = C
        self.name = f"N({C.name})"
        self.group = C.group
        self._cache = {}

    def simplices(self, n, window):
        if window not in self._cache:
            self._cache[window] = self.C.to_fincat(window)
        D = self._cache[window]
        levels = [[((x,), ()) for x in D.objects]]
        for _ in range(n):
            levels.append([(objs + (y,), mors + (f,)) for objs, mors in levels[-1]
                           for y, f in D.hom_from(objs[-1])])
        return levels[n]

    def level(self, x):
        return len(x[0]) - 1

    def face(self, n, i, s):
        objs, mors = s
        if i == 0:
            return objs[1:], mors[1:]
        if i == n:
            return objs[:-1], mors[:-1]
        return objs[:i] + objs[i + 1:], mors[:i - 1] + (self.C.compose(mors[i], mors[i - 1]),) + mors[i + 1:]

    def degen(self, n, j, s):
        objs, mors = s
        return objs[:j + 1] + objs[j:], mors[:j] + (self.C.identity(objs[j]),) + mors[j:]

    def slot_footprint(self, x, k):
        return self.C.footprint(x[0][k])

    def _act(self, us, s):
        C = self.C
        objs, mors = s
        new_objs = tuple(C.act(u, x) for u, x in zip(us, objs))
        new_mors = tuple(C.compose(C.structure_iso(us[i], objs[i]),
                                   C.compose(f, C.structure_iso_inverse(us[i - 1], objs[i - 1])))
                         for i, f in enumerate(mors, start=1))
        return new_objs, new_mors

    def supp_k(self, x, k):
        return self.C.support(x[0][k])

    def g_act(self, g, s):
        return tuple(self.C.g_act(g, x) for x in s[0]), tuple(self.C.g_act_mor(g, f) for f in s[1])


class QuotientSSet(EMSSet):
    """The quotient of an EMSSet by an invariant subcomplex, collapsed to one point per level."""

    def __init__(self, X, in_sub, name=None):
        self.X = X
        self.in_sub = in_sub
        self.name = name or f"{X.name}/~"
        self.group = X.group

    def _cls(self, n, x):
        return ("*", n) if self.in_sub(n, x) else x

    def simplices(self, n, window):
        out, seen = [], set()
        for x in self.X.simplices(n, window):
            c = self._cls(n, x)
            if c not in seen:
                seen.add(c)
                out.append(c)
        return out

    def _is_base(self, x):
        return isinstance(x, tuple) and len(x) == 2 and x[0] == "*" and isinstance(x[1], int)

    def level(self, x):
        return x[1] if self._is_base(x) else self.X.level(x)

    def face(self, n, i, x):
        return ("*", n - 1) if self._is_base(x) else self._cls(n - 1, self.X.face(n, i, x))

    def degen(self, n, j, x):
        return ("*", n + 1) if self._is_base(x) else self._cls(n + 1, self.X.degen(n, j, x))

    def slot_footprint(self, x, k):
        return frozenset() if self._is_base(x) else self.X.slot_footprint(x, k)

    def _act(self, us, x):
        if self._is_base(x):
            return x
        return self._cls(self.level(x), self.X.act(us, x))


def trivial_point(d=0):
    from .sset import point
    return TrivialSSet(point(d), name="*")


def simplex_product_trivial(ms, d):
    from .sset import simplex_product
    return TrivialSSet(simplex_product(ms, d))


# action audits


def check_cocycle(C, u, v, x):
    """(uv)_o^x = u_o^{v.x} v_o^x."""
    lhs = C.structure_iso(germ_compose(u, v), x)
    rhs = C.compose(C.structure_iso(u, C.act(v, x)), C.structure_iso(v, x))
    return lhs == rhs


def check_equivariant_functor(F_obj, F_mor, C, D, u, x):
    """Ob F is equivariant and F(u_o^x) = u_o^{F(x)}."""
    return F_obj(C.act(u, x)) == D.act(u, F_obj(x)) and F_mor(C.structure_iso(u, x)) == D.structure_iso(u, F_obj(x))


def supp_k_restriction_holds(X, alpha, x):
    """supp_k(alpha^* x) is contained in supp_{alpha(k)}(x) for all k."""
    y = _restrict(X, alpha, x)
    return all(X.supp_k(y, k) <= X.supp_k(x, alpha(k)) for k in range(alpha.m + 1))


def _restrict(X, alpha, x):
    image = sorted(set(alpha.values))
    y, level = x, alpha.n
    for i in reversed(range(alpha.n + 1)):
        if i not in image:
            y = X.face(level, i, y)
            level -= 1
    pos = {v: k for k, v in enumerate(image)}
    s = tuple(pos[v] for v in alpha.values)

    def pull(s, y):
        for j in range(len(s) - 1):
            if s[j] == s[j + 1]:
                return X.degen(len(s) - 2, j, pull(s[:j + 1] + s[j + 2:], y))
        return y

    return pull(s, y)


restrict_simplex = _restrict


# corepresentability


def subcomplex_supported_on(X, A, window, d):
    """The sub-simplicial set X_[A] of simplices supported on A, closure verified."""
    A = frozenset(A)
    full = X.to_sset(window, d)
    return subcomplex(full, lambda n, x: X.support(x) <= A, name=f"{X.name}[{sorted(A)}]")


def greedy_extension(u, points):
    n = max([*points, *u.domain, *u.image, 1])
    return germ_extend(u, n)


def shifted_extension(u, points):
    """Extend u by sending the extra points to fresh points above everything in sight."""
    top = max([*points, *u.domain, *u.image, 0])
    extra = sorted(set(points) - u.domain)
    mapping = dict(u.pairs())
    mapping.update({a: top + 1 + k for k, a in enumerate(extra)})
    return Germ(mapping)


def corep_extend(X, A, alpha, extension=greedy_extension):
    """The equivariant extension of alpha: K -> X_[A] to E Inj(A, -) x K.

    `alpha(n, kappa)` returns an n-simplex of X supported on A.  The result is
    a function of ((u_0..u_n), kappa) computing (u^_0..u^_n).alpha(kappa),
    where u^_i extends u_i over the footprint of alpha(kappa).
    """
    A = frozenset(A)

    def extended(us, kappa):
        n = len(us) - 1
        x = alpha(n, kappa)
        if not X.support(x) <= A:
            raise NotSupported(f"{x!r} is not supported on {sorted(A)}")
        F = X.footprint(x) | A
        hats = tuple(u if u.covers(F) else extension(u, F) for u in us)
        return X.act(hats, x)

    return extended


def corep_roundtrip(X, A, window, d, n, extension_rules=(greedy_extension, shifted_extension)):
    """Round-trip x -> f_x -> f_x(iota_A, id) over every n-simplex of X_[A].

    Also checks, on the windowed domain E Inj(A, W) x Delta^n in levels <= d,
    that f_x commutes with faces, is equivariant under a shift, and does not
    depend on the extension rule.  Returns (simplices checked, failures).
    """
    A = frozenset(A)
    XA = subcomplex_supported_on(X, A, window, d)
    iota = Germ.identity(A)
    E = EInjSSet(A)
    failures = []
    for x in XA.levels[n]:
        alpha = lambda k, phi, x=x: _restrict(X, phi, x)
        exts = [corep_extend(X, A, alpha, rule) for rule in extension_rules]
        f = exts[0]
        if f((iota,) * (n + 1), DeltaMap.identity(n)) != x:
            failures.append({"check": "evaluation", "simplex": repr(x)})
            continue
        for k in range(d + 1):
            for us in E.simplices(k, window):
                for phi in all_delta_maps(k, n):
                    val = f(us, phi)
                    if any(g(us, phi) != val for g in exts[1:]):
                        failures.append({"check": "extension-independence", "simplex": repr(x)})
                    for i in range(k + 1 if k else 0):
                        if X.face(k, i, val) != f(E.face(k, i, us), phi.compose(DeltaMap.coface(k, i))):
                            failures.append({"check": "face", "simplex": repr(x), "i": i})
                    vs = tuple(Germ({a: a + 1 for a in X.slot_footprint(val, j) | us[j].image})
                               for j in range(k + 1))
                    if f(tuple(germ_compose(v, u) for v, u in zip(vs, us)), phi) != X.act(vs, val):
                        failures.append({"check": "equivariance", "simplex": repr(x)})
            if len(failures) > 20:
                return len(XA.levels[n]), failures
    return len(XA.levels[n]), failures


def map_roundtrip(X, A, F, window, d, n):
    """For an equivariant F: E Inj(A, W) x Delta^n -> X, check F equals the extension of F(iota_A, -)."""
    A = frozenset(A)
    iota = Germ.identity(A)
    x = F((iota,) * (n + 1), DeltaMap.identity(n))
    f = corep_extend(X, A, lambda k, phi: _restrict(X, phi, x))
    E = EInjSSet(A)
    for k in range(d + 1):
        for us in E.simplices(k, window):
            for phi in all_delta_maps(k, n):
                if F(us, phi) != f(us, phi):
                    return False
    return True


# box products of nerves


def nerve_box_iso(C, D, window, d):
    """The canonical map N(C) [x] N(D) -> N(C [x] D), checked to be a levelwise bijection."""
    left = box_product(NerveEM(C), NerveEM(D)).to_sset(window, d)
    right = NerveEM(box_product(C, D)).to_sset(window, d)

    def fn(n, s):
        (ox, mx), (oy, my) = s
        return tuple(zip(ox, oy)), tuple(zip(mx, my))

    f = SimplicialMap(left, right, fn, name="nerve box iso")
    f.validate()
    bijective = all(len(set(f.maps[n].values())) == len(right.levels[n]) == len(left.levels[n])
                    for n in range(d + 1))
    return f, bijective


# fixed and homotopy fixed points


def _stable_or_raise(U, T):
    if not set(T) <= set(U.window.points()):
        raise TNotStable(f"{sorted(T)} is not inside the window of the universal action")
    if not U.is_stable(T):
        raise TNotStable(f"{sorted(T)} is not stable under the group")


def supported_part(P, T, window=None):
    """The finite category of objects of P supported on T."""
    T = frozenset(T)
    w = window or max(T, default=1)
    return P.to_fincat(w, keep=lambda x: P.support(x) <= T)


def em_group_action(P, C, U, phi):
    """The action h -> phi(h).(h.-) of the universal group on a finite piece C of P."""
    H = U.group
    action = {}
    for h in H.elements:
        u, g = U.germ(h), phi(h)
        action[h] = Functor(C, C, lambda x, u=u, g=g: P.g_act(g, P.act(u, x)),
                            lambda f, u=u, g=g: P.g_act_mor(g, P.act_mor(u, f)))
    return CatGAction(C, H, action)


def phi_fixed(P, U, phi, T, window=None):
    """The phi-fixed points of the part of P supported on the H-subset T."""
    _stable_or_raise(U, T)
    T = frozenset(T)
    if isinstance(P, EMSSet):
        d = window if isinstance(window, int) else 1
        return phi_fixed_sset(P, U, phi, T, d)
    C = supported_part(P, T, window)
    return fixed_subcategory(C, em_group_action(P, C, U, phi))


def phi_fixed_sset(P, U, phi, T, d):
    T = frozenset(T)
    w = max(T, default=1)
    H = U.group

    def fixed(n, x):
        if not P.support(x) <= T:
            return False
        return all(P.g_act(phi(h), P.act_diag(U.germ(h), x)) == x for h in H.elements)

    return P.to_sset(w, d, keep=fixed)


def homotopy_fixed(P, U, phi, T, window=None, max_objects=5000):
    """(fixed category, homotopy fixed category, comparison functor) for the part supported on T."""
    _stable_or_raise(U, T)
    C = supported_part(P, T, window)
    if len(C.objects) * len(U.group) > max_objects:
        raise BoundsExceeded(f"{len(C.objects)} objects times group order {len(U.group)} exceeds {max_objects}")
    A = em_group_action(P, C, U, phi)
    fixed = fixed_subcategory(C, A)
    hfix = fun_twisted(C, A)
    return fixed, hfix, fixed_to_homotopy_fixed(fixed, hfix, U.group)


def check_support_overlap(X, x, Y, y):
    if X.support(x) & Y.support(y):
        raise SupportsOverlap(f"supports {sorted(X.support(x))} and {sorted(Y.support(y))} meet")


# support law audits


def _fixing_germs(S, F, window):
    """Germs that fix S pointwise and move the rest of the footprint F in a few different ways."""
    rest = sorted(set(F) - set(S))
    base = {a: a for a in S}
    top = max([window, *F])
    out = [Germ(base), Germ({**base, **{a: a + top for a in rest}})]
    if rest:
        out.append(Germ({**base, **{a: top + len(rest) - k for k, a in enumerate(rest)}}))
    return out


def _moving_germs(S, window):
    """All injections of S into the window, which exhausts the action on cells supported on S."""
    return injections(sorted(S), range(1, window + 1))


def support_calculus_report(C, window, maps=()):
    """Support laws on the objects of C within the window.

    Checks declared support against the probe, supp(u.x) = u(supp x) for every injection of the
    support into the window, u_o = id for germs fixing the support, and supp(f(x)) in supp(x) for
    each equivariant map f given as (name, on_objects, target).
    """
    from .parsummable import ParsummableReport
    rep = ParsummableReport()
    objs = C.objects(window)
    for x in objs:
        r = C.support_report(x)
        rep.count("declared support")
        if not r.consistent:
            rep.fail("declared support", x=x, declared=r.declared, probed=r.support)
        s = r.support
        moving = _moving_germs(C.footprint(x), window)
        for u in moving:
            rep.count("support of translate")
            if C.support(C.act(u, x)) != u.apply_set(s):
                rep.fail("support of translate", x=x, u=u)
        for u in _fixing_germs(s, C.footprint(x), window):
            rep.count("fixing germ acts trivially")
            if C.act(u, x) != x or C.structure_iso(u, x) != C.identity(x):
                rep.fail("fixing germ acts trivially", x=x, u=u)
        for name, fn, D in maps:
            rep.count("support shrinks under maps")
            if not D.support(fn(x)) <= s:
                rep.fail("support shrinks under maps", map=name, x=x)
            for u in moving[:4]:
                rep.count("map equivariant")
                if fn(C.act(u, x)) != D.act(u, fn(x)):
                    rep.fail("map equivariant", map=name, x=x, u=u)
    return rep


def einj_restrictions(A):
    """The equivariant maps E Inj(A) -> E Inj(B), i -> i j, for every injection j: B -> A with B a proper subset of A."""
    A = sorted(A)
    out = []
    for k in range(len(A)):
        B = tuple(range(1, k + 1))
        for j in injections(B, A):
            out.append((f"restrict along {j}", lambda i, j=j: germ_compose(i, j), einj(B)))
    return out


def _slot_germ_tuples(X, x, window):
    n = X.level(x)
    F = X.footprint(x)
    top = max([window, *F])
    shift = Germ({a: a + top for a in F})
    flip = Germ({a: 2 * top + 1 - a for a in F})
    ident = Germ.identity(F)
    out = [(shift,) * (n + 1), (flip,) * (n + 1)]
    for k in range(n + 1):
        out.append(tuple(shift if j == k else ident for j in range(n + 1)))
        out.append(tuple(flip if j <= k else shift for j in range(n + 1)))
    return out


def simplicial_support_report(X, window, d):
    """supp_k laws on every simplex of levels <= d within the window.

    Diagonal translation moves each supp_k along the germ, an arbitrary tuple satisfies
    supp_k((u_0..u_n).x) in u_k(supp_k x), and supp_k(alpha^* x) is inside supp_{alpha(k)}(x).
    """
    from .parsummable import ParsummableReport
    rep = ParsummableReport()
    for n in range(d + 1):
        maps = [a for m in range(d + 1) for a in all_delta_maps(m, n)]
        for x in X.simplices(n, window):
            supp = [X.supp_k(x, k) for k in range(n + 1)]
            for us in _slot_germ_tuples(X, x, window):
                y = X.act(us, x)
                diagonal = all(u == us[0] for u in us)
                for k in range(n + 1):
                    law = "translate equivariance" if diagonal else "translate containment"
                    rep.count(law)
                    sk, bound = X.supp_k(y, k), us[k].apply_set(supp[k])
                    if (diagonal and sk != bound) or not sk <= bound:
                        rep.fail(law, x=x, k=k, germs=us)
            for alpha in maps:
                rep.count("restriction containment")
                if not supp_k_restriction_holds(X, alpha, x):
                    rep.fail("restriction containment", x=x, alpha=alpha.values)
    return rep


def warning_quotient_report(A, window, d=1):
    """In E Inj(A) x Delta^1 with both ends collapsed: the unique vertex has empty support, the edge
    over a constant injection i has support i(A), and no two edges are identified."""
    from .parsummable import ParsummableReport, warning_quotient_example
    rep = ParsummableReport()
    Q = warning_quotient_example(A, d)
    for v in Q.simplices(0, window):
        rep.count("vertex support empty")
        if Q.support(v):
            rep.fail("vertex support empty", vertex=v)
    edges = [e for e in Q.simplices(1, window) if not Q._is_base(e)]
    for e in edges:
        us, ps = e
        if us[0] != us[1]:
            continue
        rep.count("edge support is the image")
        if Q.support(e) != us[0].image:
            rep.fail("edge support is the image", edge=e)
    rep.count("edges distinct")
    expected = len(injections(sorted(A), range(1, window + 1))) ** 2
    if len(set(edges)) != expected:
        rep.fail("edges distinct", edges=len(set(edges)), expected=expected)
    return rep


def diagonal_support_probe(X, window, d):
    """Compare the diagonal support with the union of the k-supports; informational only."""
    agree, differ = 0, []
    for n in range(d + 1):
        for x in X.simplices(n, window):
            diag, total = X.diagonal_support(x), X.support(x)
            if diag == total:
                agree += 1
            else:
                differ.append({"level": n, "simplex": repr(x), "diagonal": sorted(diag), "total": sorted(total)})
    return {"agree": agree, "differ": differ}
