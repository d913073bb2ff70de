"""Finite symmetric monoidal categories, the strictly unital replacement and G-global checks."""

from dataclasses import dataclass, field
from itertools import permutations, product

from .combinatorics import FiniteGroup, GroupHom, cyclic_group, symmetric_group, trivial_group
from .errors import InsufficientGermDomain, InvalidStructure, WindowOverflow
from .fincat import (CatGAction, FinCategory, Functor, HFixedObject, chaotic_category, check_equivalence,
                     fun_twisted, product_category, skeleton_retraction)
from .parsummable import ParsummableReport as LawReport
from .sset import homology_equivalence_report, nerve_map


class FinSymMonCat:
    """A symmetric monoidal structure on a finite category, stored as component tables.

    a[x, y, z]: (x y) z -> x (y z),  l[x]: 1 x -> x,  r[x]: x 1 -> x,  s[x, y]: x y -> y x.
    """

    def __init__(self, base, tensor, tensor_mor, unit, assoc, lunit, runit, sym, name=None):
        self.base = base
        self.unit = unit
        self.name = name or base.name
        obs, mors = base.objects, base.morphisms()
        self.tensor_table = {(x, y): _call(tensor, x, y) for x in obs for y in obs}
        self.tensor_mor_table = {(f, g): _call(tensor_mor, f, g) for f in mors for g in mors}
        self.assoc = {(x, y, z): _call(assoc, x, y, z) for x in obs for y in obs for z in obs}
        self.lunit = {x: _call(lunit, x) for x in obs}
        self.runit = {x: _call(runit, x) for x in obs}
        self.sym = {(x, y): _call(sym, x, y) for x in obs for y in obs}

    def __repr__(self):
        return f"FinSymMonCat({self.name or ''}, {len(self.base.objects)} objects)"

    @property
    def objects(self):
        return self.base.objects

    def tensor(self, x, y):
        return self.tensor_table[(x, y)]

    def tensor_mor(self, f, g):
        return self.tensor_mor_table[(f, g)]

    def tid(self, f, y):
        """f tensor id_y."""
        return self.tensor_mor(f, self.base.identity(y))

    def idt(self, x, g):
        """id_x tensor g."""
        return self.tensor_mor(self.base.identity(x), g)

    def coherence_report(self):
        C, B = self, self.base
        rep = LawReport()
        obs, mors = B.objects, B.morphisms()
        T, c = C.tensor, B.compose_chain
        for f, g in product(mors, mors):
            rep.count("tensor endpoints")
            h = C.tensor_mor(f, g)
            if B.src(h) != T(B.src(f), B.src(g)) or B.tgt(h) != T(B.tgt(f), B.tgt(g)):
                rep.fail("tensor endpoints", f=f, g=g)
        for x, y in product(obs, obs):
            rep.count("tensor identity")
            if C.tensor_mor(B.identity(x), B.identity(y)) != B.identity(T(x, y)):
                rep.fail("tensor identity", x=x, y=y)
        composable = [(g, f) for f in mors for _, g in B.hom_from(B.tgt(f))]
        for (g, f), (g2, f2) in product(composable, composable):
            rep.count("tensor composition")
            if C.tensor_mor(B.compose(g, f), B.compose(g2, f2)) != B.compose(C.tensor_mor(g, g2), C.tensor_mor(f, f2)):
                rep.fail("tensor composition", g=g, f=f, g2=g2, f2=f2)
        for name, table in (("associator", self.assoc), ("left unitor", self.lunit),
                            ("right unitor", self.runit), ("symmetry", self.sym)):
            for key, m in table.items():
                rep.count(f"{name} invertible")
                if not B.is_iso(m):
                    rep.fail(f"{name} invertible", at=key)
        for x, y, z in product(obs, obs, obs):
            rep.count("associator endpoints")
            m = self.assoc[(x, y, z)]
            if B.src(m) != T(T(x, y), z) or B.tgt(m) != T(x, T(y, z)):
                rep.fail("associator endpoints", at=(x, y, z))
                return rep
        for x in obs:
            rep.count("unitor endpoints")
            if (B.src(self.lunit[x]), B.tgt(self.lunit[x])) != (T(self.unit, x), x) or \
                    (B.src(self.runit[x]), B.tgt(self.runit[x])) != (T(x, self.unit), x):
                rep.fail("unitor endpoints", at=x)
                return rep
        for x, y in product(obs, obs):
            rep.count("symmetry endpoints")
            if (B.src(self.sym[(x, y)]), B.tgt(self.sym[(x, y)])) != (T(x, y), T(y, x)):
                rep.fail("symmetry endpoints", at=(x, y))
                return rep
        for f, g, h in product(mors, mors, mors):
            rep.count("associator natural")
            x, y, z = B.src(f), B.src(g), B.src(h)
            x2, y2, z2 = B.tgt(f), B.tgt(g), B.tgt(h)
            lhs = B.compose(self.assoc[(x2, y2, z2)], C.tensor_mor(C.tensor_mor(f, g), h))
            rhs = B.compose(C.tensor_mor(f, C.tensor_mor(g, h)), self.assoc[(x, y, z)])
            if lhs != rhs:
                rep.fail("associator natural", f=f, g=g, h=h)
        for f in mors:
            x, y = B.src(f), B.tgt(f)
            rep.count("unitors natural")
            if B.compose(self.lunit[y], C.idt(self.unit, f)) != B.compose(f, self.lunit[x]) or \
                    B.compose(self.runit[y], C.tid(f, self.unit)) != B.compose(f, self.runit[x]):
                rep.fail("unitors natural", f=f)
        for f, g in product(mors, mors):
            rep.count("symmetry natural")
            lhs = B.compose(self.sym[(B.tgt(f), B.tgt(g))], C.tensor_mor(f, g))
            if lhs != B.compose(C.tensor_mor(g, f), self.sym[(B.src(f), B.src(g))]):
                rep.fail("symmetry natural", f=f, g=g)
        a = self.assoc
        for w, x, y, z in product(obs, obs, obs, obs):
            rep.count("pentagon")
            lhs = B.compose(a[(w, x, T(y, z))], a[(T(w, x), y, z)])
            rhs = c(C.idt(w, a[(x, y, z)]), a[(w, T(x, y), z)], C.tid(a[(w, x, y)], z))
            if lhs != rhs:
                rep.fail("pentagon", at=(w, x, y, z))
        for x, y in product(obs, obs):
            rep.count("triangle")
            if B.compose(C.idt(x, self.lunit[y]), a[(x, self.unit, y)]) != C.tid(self.runit[x], y):
                rep.fail("triangle", at=(x, y))
            rep.count("symmetry involutive")
            if B.compose(self.sym[(y, x)], self.sym[(x, y)]) != B.identity(T(x, y)):
                rep.fail("symmetry involutive", at=(x, y))
        s = self.sym
        for x, y, z in product(obs, obs, obs):
            rep.count("hexagon")
            lhs = c(a[(y, z, x)], s[(x, T(y, z))], a[(x, y, z)])
            rhs = c(C.idt(y, s[(x, z)]), a[(y, x, z)], C.tid(s[(x, y)], z))
            if lhs != rhs:
                rep.fail("hexagon", at=(x, y, z))
        return rep

    def validate(self):
        rep = self.coherence_report()
        if not rep:
            v = rep.violations[0]
            raise InvalidStructure(f"{v['law']} fails", counterexample=v)
        return True

    def is_strictly_unital(self):
        B = self.base
        return all(self.tensor(self.unit, x) == x == self.tensor(x, self.unit) for x in B.objects) and \
            all(self.lunit[x] == B.identity(x) == self.runit[x] for x in B.objects)


def _call(fn, *args):
    if isinstance(fn, dict):
        return fn[args[0] if len(args) == 1 else args]
    return fn(*args)


def is_permutative(C):
    B = C.base
    return all(m == B.identity(B.src(m)) and B.src(m) == B.tgt(m)
               for table in (C.assoc, C.lunit, C.runit) for m in table.values())


# examples


def capped_finite_sets(n):
    """Skeletal finite sets under disjoint union, truncated at a cap object n with only its identity.

    Objects 0..n; an automorphism of k < n is a permutation tuple p (i -> p[i]), written (k, p).
    """
    objs = list(range(n + 1))
    cap = (n, None)

    def perms(k):
        return [(k, p) for p in permutations(range(k))]

    hom = {(k, k): perms(k) for k in range(n)}
    hom[(n, n)] = [cap]

    def comp(g, f):
        if f == cap:
            return cap
        k = f[0]
        return k, tuple(g[1][f[1][i]] for i in range(k))

    def ident(k):
        return cap if k == n else (k, tuple(range(k)))

    B = FinCategory(objs, hom, comp, ident, name=f"FinSet<={n}")

    def tensor(k, l):
        return min(k + l, n)

    def tensor_mor(f, g):
        if f == cap or g == cap or f[0] + g[0] >= n:
            return cap
        k = f[0]
        return k + g[0], f[1] + tuple(k + j for j in g[1])

    def sym(k, l):
        if k + l >= n:
            return cap
        return k + l, tuple(l + i for i in range(k)) + tuple(range(l))

    return FinSymMonCat(B, tensor, tensor_mor, 0, lambda x, y, z: ident(tensor(tensor(x, y), z)),
                        ident, ident, sym, name=f"FinSet<={n}")


def terminal_symmon():
    B = chaotic_category(["*"], name="terminal")
    i = B.identity("*")
    return FinSymMonCat(B, lambda x, y: "*", lambda f, g: i, "*", lambda *a: i, lambda x: i, lambda x: i,
                        lambda x, y: i, name="terminal")


def relabelled_copy(C, labels=3):
    """An equivalent copy of C whose objects carry a label combined non-associatively under tensor.

    Objects (x, i); morphisms (X, Y, f) with f a morphism of C; the label of a tensor is 1 when the
    left label is 0 and 2 otherwise (1 when only two labels exist), so associators and unitors between
    different labels are not identities although they lie over the structure maps of C.
    """
    if labels < 2:
        raise InvalidStructure("a relabelled copy needs at least two labels")
    B = C.base
    objs = [(x, i) for x in B.objects for i in range(labels)]
    hom = {(X, Y): [(X, Y, f) for f in B.hom(X[0], Y[0])] for X in objs for Y in objs}
    D = FinCategory(objs, hom, lambda g, f: (f[0], g[1], B.compose(g[2], f[2])),
                    lambda X: (X, X, B.identity(X[0])), name=f"relabelled {C.name or ''}".strip())

    def lab(i, j):
        return 1 if i == 0 else min(2, labels - 1)

    def tensor(X, Y):
        return C.tensor(X[0], Y[0]), lab(X[1], Y[1])

    def lift(src, tgt, f):
        return src, tgt, f

    def tensor_mor(f, g):
        return tensor(f[0], g[0]), tensor(f[1], g[1]), C.tensor_mor(f[2], g[2])

    unit = (C.unit, 0)
    return FinSymMonCat(
        D, tensor, tensor_mor, unit,
        lambda X, Y, Z: lift(tensor(tensor(X, Y), Z), tensor(X, tensor(Y, Z)), C.assoc[(X[0], Y[0], Z[0])]),
        lambda X: lift(tensor(unit, X), X, C.lunit[X[0]]),
        lambda X: lift(tensor(X, unit), X, C.runit[X[0]]),
        lambda X, Y: lift(tensor(X, Y), tensor(Y, X), C.sym[(X[0], Y[0])]),
        name=D.name)


# strong monoidal functors


class StrongMonFunctor:
    """A functor with unit iso 1_D -> F(1_C) and multiplicativity isos F(x) F(y) -> F(x y)."""

    def __init__(self, source, target, functor, unit_iso, mult, name=None):
        self.source = source
        self.target = target
        self.functor = functor
        self.unit_iso = unit_iso
        obs = source.objects
        self.mult = {(x, y): _call(mult, x, y) for x in obs for y in obs}
        self.name = name or functor.name

    def __call__(self, x):
        return self.functor.obj[x]

    def on_mor(self, f):
        return self.functor.mor[f]

    def coherence_report(self):
        C, D, F = self.source, self.target, self.functor
        B, E = C.base, D.base
        m, c = self.mult, E.compose_chain
        rep = LawReport()
        try:
            F.validate()
        except InvalidStructure as exc:
            rep.fail("functor", reason=str(exc))
            return rep
        rep.count("functor")
        rep.count("unit iso")
        if not E.is_iso(self.unit_iso) or E.src(self.unit_iso) != D.unit or E.tgt(self.unit_iso) != F.obj[C.unit]:
            rep.fail("unit iso", iso=self.unit_iso)
            return rep
        for (x, y), n in m.items():
            rep.count("multiplicativity iso")
            if not E.is_iso(n) or E.src(n) != D.tensor(F.obj[x], F.obj[y]) or E.tgt(n) != F.obj[C.tensor(x, y)]:
                rep.fail("multiplicativity iso", at=(x, y))
                return rep
        mors = B.morphisms()
        for f, g in product(mors, mors):
            rep.count("multiplicativity natural")
            lhs = E.compose(F.mor[C.tensor_mor(f, g)], m[(B.src(f), B.src(g))])
            rhs = E.compose(m[(B.tgt(f), B.tgt(g))], D.tensor_mor(F.mor[f], F.mor[g]))
            if lhs != rhs:
                rep.fail("multiplicativity natural", f=f, g=g)
        obs = B.objects
        for x, y, z in product(obs, obs, obs):
            rep.count("associativity")
            Fx, Fy, Fz = F.obj[x], F.obj[y], F.obj[z]
            lhs = c(F.mor[C.assoc[(x, y, z)]], m[(C.tensor(x, y), z)], D.tid(m[(x, y)], Fz))
            rhs = c(m[(x, C.tensor(y, z))], D.idt(Fx, m[(y, z)]), D.assoc[(Fx, Fy, Fz)])
            if lhs != rhs:
                rep.fail("associativity", at=(x, y, z))
        for x in obs:
            Fx = F.obj[x]
            rep.count("unitality")
            left = c(F.mor[C.lunit[x]], m[(C.unit, x)], D.tid(self.unit_iso, Fx))
            right = c(F.mor[C.runit[x]], m[(x, C.unit)], D.idt(Fx, self.unit_iso))
            if left != D.lunit[Fx] or right != D.runit[Fx]:
                rep.fail("unitality", at=x)
        for x, y in product(obs, obs):
            rep.count("symmetry")
            if E.compose(F.mor[C.sym[(x, y)]], m[(x, y)]) != E.compose(m[(y, x)], D.sym[(F.obj[x], F.obj[y])]):
                rep.fail("symmetry", at=(x, y))
        return rep

    def validate(self):
        rep = self.coherence_report()
        if not rep:
            v = rep.violations[0]
            raise InvalidStructure(f"{v['law']} fails", counterexample=v)
        return True

    def then(self, G):
        """G after self."""
        E = G.target.base
        F = self.functor.then(G.functor)
        unit = E.compose(G.functor.mor[self.unit_iso], G.unit_iso)
        mult = {(x, y): E.compose(G.functor.mor[n], G.mult[(self(x), self(y))]) for (x, y), n in self.mult.items()}
        return StrongMonFunctor(self.source, G.target, F, unit, mult)

    def equals(self, G):
        return self.functor.equals(G.functor) and self.unit_iso == G.unit_iso and self.mult == G.mult

    def is_strictly_unital(self):
        return self(self.source.unit) == self.target.unit and \
            self.unit_iso == self.target.base.identity(self.target.unit)

    @classmethod
    def identity(cls, C):
        B = C.base
        return cls(C, C, Functor.identity(B), B.identity(C.unit), lambda x, y: B.identity(C.tensor(x, y)), name="id")


def forget_labels(R, C):
    """The strict monoidal projection relabelled_copy(C) -> C."""
    B = C.base
    F = Functor(R.base, B, lambda X: X[0], lambda f: f[2], name="forget labels")
    return StrongMonFunctor(R, C, F, B.identity(C.unit), lambda X, Y: B.identity(C.tensor(X[0], Y[0])))


def to_terminal(C):
    T = terminal_symmon()
    i = T.base.identity("*")
    return StrongMonFunctor(C, T, Functor.constant(C.base, T.base, "*"), i, lambda x, y: i, name="to terminal")


# strictly unital replacement


@dataclass(frozen=True)
class StrictUnit:
    def __repr__(self):
        return "1'"


ONE = StrictUnit()


@dataclass
class Strictification:
    source: FinSymMonCat
    C0: FinSymMonCat
    pi: StrongMonFunctor
    eta: StrongMonFunctor

    def __iter__(self):
        return iter((self.C0, self.pi, self.eta))

    def proj(self, X):
        return self.source.unit if X == ONE else X

    def kappa(self, X):
        """The iso X -> eta(pi X) in C0: identity on objects of C and (1', 1, id) at 1'."""
        B = self.source.base
        return X, self.proj(X), B.identity(self.proj(X))


def strictify_unit(C):
    """C0 with objects Ob(C) + {1'}, hom-sets Hom_C(pi X, pi Y) and 1' a strict unit.

    The tensor and coherence isos of C0 are transported along pi through its multiplicativity
    isos, which are the unitors of C wherever 1' is involved and identities otherwise.
    """
    B = C.base
    pi = lambda X: C.unit if X == ONE else X
    objs = list(B.objects) + [ONE]
    hom = {(X, Y): [(X, Y, f) for f in B.hom(pi(X), pi(Y))] for X in objs for Y in objs}
    B0 = FinCategory(objs, hom, lambda g, f: (f[0], g[1], B.compose(g[2], f[2])),
                     lambda X: (X, X, B.identity(pi(X))), name=f"{C.name or 'C'}^0")

    def T0(X, Y):
        if X == ONE:
            return Y
        if Y == ONE:
            return X
        return C.tensor(X, Y)

    def nab(X, Y):
        if X == ONE:
            return C.lunit[pi(Y)]
        if Y == ONE:
            return C.runit[pi(X)]
        return B.identity(C.tensor(X, Y))

    inv = B.inverse
    c = B.compose_chain

    def tensor_mor(f, g):
        X, X2, a = f
        Y, Y2, b = g
        return T0(X, Y), T0(X2, Y2), c(nab(X2, Y2), C.tensor_mor(a, b), inv(nab(X, Y)))

    def assoc(X, Y, Z):
        pX, pY, pZ = pi(X), pi(Y), pi(Z)
        m = c(nab(X, T0(Y, Z)), C.idt(pX, nab(Y, Z)), C.assoc[(pX, pY, pZ)],
              inv(C.tid(nab(X, Y), pZ)), inv(nab(T0(X, Y), Z)))
        return T0(T0(X, Y), Z), T0(X, T0(Y, Z)), m

    def lunit(X):
        return X, X, c(C.lunit[pi(X)], inv(nab(ONE, X)))

    def runit(X):
        return X, X, c(C.runit[pi(X)], inv(nab(X, ONE)))

    def sym(X, Y):
        return T0(X, Y), T0(Y, X), c(nab(Y, X), C.sym[(pi(X), pi(Y))], inv(nab(X, Y)))

    C0 = FinSymMonCat(B0, T0, tensor_mor, ONE, assoc, lunit, runit, sym, name=B0.name)
    P = StrongMonFunctor(C0, C, Functor(B0, B, pi, lambda f: f[2], name="pi"), B.identity(C.unit), nab, name="pi")
    E = StrongMonFunctor(C, C0, Functor(B, B0, lambda x: x, lambda f: (B.src(f), B.tgt(f), f), name="eta"),
                         (ONE, C.unit, B.identity(C.unit)),
                         lambda x, y: B0.identity(C.tensor(x, y)), name="eta")
    return Strictification(C, C0, P, E)


def universal_extension(st, f):
    """The strictly unital f~: C0 -> D with f~ after eta = f, for a strong monoidal f: C -> D."""
    C0, D = st.C0, f.target
    E = D.base
    c = E.compose_chain

    def theta(X):
        return f.unit_iso if X == ONE else E.identity(f(X))

    def obj(X):
        return D.unit if X == ONE else f(X)

    def mor(phi):
        X, Y, a = phi
        return c(E.inverse(theta(Y)), f.on_mor(a), theta(X))

    F = Functor(C0.base, E, obj, mor, name=f"{f.name or 'f'}~")

    def mult(X, Y):
        XY = C0.tensor(X, Y)
        return c(E.inverse(theta(XY)), f.on_mor(st.pi.mult[(X, Y)]), f.mult[(st.proj(X), st.proj(Y))],
                 D.tensor_mor(theta(X), theta(Y)))

    return StrongMonFunctor(C0, D, F, E.identity(D.unit), mult, name=F.name)


def strictify_functor(f, st_source, st_target):
    """f^0: C0 -> D0, the extension of eta_D after f."""
    return universal_extension(st_source, f.then(st_target.eta))


def universal_property_report(st, f):
    """Existence and uniqueness of the strictly unital extension of f along eta."""
    rep = LawReport()
    ft = universal_extension(st, f)
    sub = ft.coherence_report()
    rep.checked.update({f"extension {k}": v for k, v in sub.checked.items()})
    rep.violations.extend(sub.violations)
    rep.count("strictly unital")
    if not ft.is_strictly_unital():
        rep.fail("strictly unital", functor=ft.name)
    rep.count("restricts to f")
    if not st.eta.then(ft).equals(f):
        rep.fail("restricts to f", functor=f.name)
    # uniqueness: every morphism of C0 is kappa_Y^-1 eta(pi phi) kappa_X, and any strictly unital
    # extension g has g(kappa_1') equal to the unit iso of f, so g is forced on morphisms
    B0 = st.C0.base
    for phi in B0.morphisms():
        rep.count("morphisms determined")
        X, Y = B0.src(phi), B0.tgt(phi)
        rebuilt = B0.compose_chain(B0.inverse(st.kappa(Y)), st.eta.on_mor(st.pi.on_mor(phi)), st.kappa(X))
        if rebuilt != phi:
            rep.fail("morphisms determined", morphism=phi)
    rep.count("unit image forced")
    if ft.on_mor(st.kappa(ONE)) != f.unit_iso:
        rep.fail("unit image forced")
    return rep


def strictify_report(C, samples=()):
    """Coherence of C0, strict unitality, pi an equivalence, pi eta = Id, and the universal property."""
    st = strictify_unit(C)
    rep = LawReport()
    for name, sub in (("C0", st.C0.coherence_report()), ("pi", st.pi.coherence_report()),
                      ("eta", st.eta.coherence_report())):
        rep.checked.update({f"{name} {k}": v for k, v in sub.checked.items()})
        rep.violations.extend({**v, "law": f"{name} {v['law']}"} for v in sub.violations)
    rep.count("object count")
    if len(st.C0.objects) != len(C.objects) + 1:
        rep.fail("object count")
    rep.count("strict unit")
    if not all(st.C0.tensor(ONE, X) == X == st.C0.tensor(X, ONE) for X in st.C0.objects) \
            or not st.C0.is_strictly_unital():
        rep.fail("strict unit")
    rep.count("pi equivalence")
    eq = check_equivalence(st.pi.functor)
    if not eq:
        rep.fail("pi equivalence", report=eq)
    rep.count("pi eta identity")
    if not st.eta.then(st.pi).equals(StrongMonFunctor.identity(C)):
        rep.fail("pi eta identity")
    for f in samples:
        sub = universal_property_report(st, f)
        rep.checked.update({f"universal {k}": v for k, v in sub.checked.items()})
        rep.violations.extend({**v, "law": f"universal {v['law']}"} for v in sub.violations)
    return st, rep


def functoriality_report(f, g):
    """(g f)^0 = g^0 f^0 and (id)^0 = id for composable strong monoidal f: C -> D, g: D -> E."""
    sC, sD, sE = strictify_unit(f.source), strictify_unit(f.target), strictify_unit(g.target)
    rep = LawReport()
    rep.count("composition")
    if not strictify_functor(f.then(g), sC, sE).equals(strictify_functor(f, sC, sD).then(strictify_functor(g, sD, sE))):
        rep.fail("composition", f=f.name, g=g.name)
    rep.count("identity")
    if not strictify_functor(StrongMonFunctor.identity(f.source), sC, sC).equals(StrongMonFunctor.identity(sC.C0)):
        rep.fail("identity")
    return rep


# G-global weak equivalences of G-categories


def pulled_back_action(A, phi):
    """phi^* A: the source group of phi acting through phi."""
    H = phi.source
    return CatGAction(A.category, H, {h: A(phi(h)) for h in H.elements})


def induced_on_homotopy_fixed(f, hs, ht):
    """Fun^H(EH, f): homotopy fixed objects (x, c) go to (f x, f c)."""
    def obj(P):
        return HFixedObject(f.obj[P.base], tuple(f.mor[c] for c in P.cocycle))

    return Functor(hs, ht, obj, lambda m: (obj(m[0]), obj(m[1]), f.mor[m[2]]), name=f"Fun(EH, {f.name or 'f'})")


@dataclass
class ProbeResult:
    group: str
    phi: dict
    source_objects: int
    target_objects: int
    homology: object

    @property
    def ok(self):
        return bool(self.homology)


@dataclass
class GGlobalReport:
    probes: list = field(default_factory=list)

    @property
    def ok(self):
        return all(p.ok for p in self.probes)

    def __bool__(self):
        return self.ok

    def failures(self):
        return [p for p in self.probes if not p.ok]


def g_global_we_check(f, source_action, target_action, pairs, d=1):
    """For each (H, phi) compare nerves of Fun^H(EH, phi^* -) on source and target up to degree d.

    H may be given as a windowed universal action or as a finite group; the nerves are computed on
    skeleta, which does not change the homotopy type of either side.
    """
    report = GGlobalReport()
    for H, phi in pairs:
        group = H if isinstance(H, FiniteGroup) else H.group
        hs = fun_twisted(f.source, pulled_back_action(source_action, phi))
        ht = fun_twisted(f.target, pulled_back_action(target_action, phi))
        F = induced_on_homotopy_fixed(f, hs, ht)
        ss, _ = skeleton_retraction(hs)
        _, rt = skeleton_retraction(ht)
        G = Functor.inclusion(ss, hs).then(F).then(rt)
        h = homology_equivalence_report(nerve_map(G, d + 1), d)
        report.probes.append(ProbeResult(group.name or str(len(group)), {repr(k): repr(v) for k, v in phi.map.items()},
                                         len(hs.objects), len(ht.objects), h))
    return report


def antipodal_sphere(n):
    """The poset S^0 * ... * S^0 (n+1 factors) modelling S^n, with the antipodal C2-action."""
    objs = [(k, s) for k in range(n + 1) for s in (1, -1)]
    hom = {(x, y): [(x, y)] for x in objs for y in objs if x == y or x[0] < y[0]}
    P = FinCategory(objs, hom, lambda g, f: (f[0], g[1]), lambda x: (x, x), name=f"S^{n}")
    G = cyclic_group(2)
    flip = Functor(P, P, lambda x: (x[0], -x[1]), lambda f: ((f[0][0], -f[0][1]), (f[1][0], -f[1][1])), name="antipode")
    return P, CatGAction(P, G, {0: Functor.identity(P), 1: flip})


def default_probe_pairs(G, groups=("trivial", "C2", "C3", "S3")):
    """Probe pairs (H, phi: H -> G): the trivial map from each probe group and every map to G from
    probe groups small enough to enumerate."""
    make = {"trivial": trivial_group, "C2": lambda: cyclic_group(2), "C3": lambda: cyclic_group(3),
            "S3": lambda: symmetric_group(3)}
    pairs = []
    for name in groups:
        H = make[name]()
        for phi in all_homomorphisms(H, G):
            pairs.append((H, phi))
    return pairs


def all_homomorphisms(H, G):
    gens = _generators(H)
    out = []
    for images in product(G.elements, repeat=len(gens)):
        m = {H.id: G.id}
        frontier = [H.id]
        ok = True
        while frontier and ok:
            h = frontier.pop()
            for s, gs in zip(gens, images):
                k, v = H.mul[(h, s)], G.mul[(m[h], gs)]
                if k in m:
                    if m[k] != v:
                        ok = False
                        break
                else:
                    m[k] = v
                    frontier.append(k)
        if ok and len(m) == len(H.elements):
            phi = GroupHom(H, G, m)
            try:
                phi.validate()
            except InvalidStructure:
                continue
            if not any(p.map == phi.map for p in out):
                out.append(phi)
    return out


def _generators(H):
    gens, reach = [], {H.id}
    for g in H.elements:
        if g in reach:
            continue
        gens.append(g)
        reach = {H.id}
        frontier = [H.id]
        while frontier:
            h = frontier.pop()
            for s in gens:
                k = H.mul[(h, s)]
                if k not in reach:
                    reach.add(k)
                    frontier.append(k)
    return gens


# the zig-zag through E(U) x C^triv


@dataclass
class ZigZagReport:
    objects: int
    action_leg: object
    projection_leg: object
    section_splits_action: bool
    section_splits_projection: bool
    caveat: str = "E(U) is the chaotic category on a finite germ set standing in for EM"

    @property
    def ok(self):
        return bool(self.action_leg) and bool(self.projection_leg) and \
            self.section_splits_action and self.section_splits_projection

    def __bool__(self):
        return self.ok


def triv_action_zigzag_check(C, U, window):
    """Both legs of C <- E(U) x C^triv -> C^triv are equivalences split by (1, -)."""
    B = C.to_fincat(window)
    U = list(U)
    for u, x in product(U, B.objects):
        if not u.covers(C.footprint(x)):
            raise InsufficientGermDomain(f"{u} does not cover the support of {x!r}")
        if C.act(u, x) not in B:
            raise WindowOverflow(f"{u} moves {x!r} outside the window")
    one = next((u for u in U if u.is_identity()), None)
    if one is None:
        raise InsufficientGermDomain("the germ set has no identity")
    EU = chaotic_category(U, name="E(U)")
    M = product_category(EU, B, name="E(U) x C")

    def act_mor(m):
        (v, u), f = m
        x, y = B.src(f), B.tgt(f)
        return B.compose_chain(C.structure_iso(v, y), f, C.structure_iso_inverse(u, x))

    action = Functor(M, B, lambda o: C.act(o[0], o[1]), act_mor, name="action")
    proj = Functor(M, B, lambda o: o[1], lambda m: m[1], name="projection")
    section = Functor(B, M, lambda x: (one, x), lambda f: ((one, one), f), name="(1, -)")
    ident = Functor.identity(B)
    return ZigZagReport(len(M.objects), check_equivalence(action), check_equivalence(proj),
                        section.then(action).equals(ident), section.then(proj).equals(ident))
