"""Finite categories, functors, natural transformations and group actions on them."""

from dataclasses import dataclass, field
from itertools import product

from .errors import ActionsDoNotCommute, DomainMismatch, InvalidStructure, ObjectNotInTarget


class FinCategory:
    """A finite category given by explicit hom-sets.

    Morphisms are hashable values that are unique across hom-sets, so source
    and target can be recovered from the morphism alone.  `compose(g, f)`
    means g after f.
    """

    def __init__(self, objects, hom, compose, identity, name=None):
        self.objects = list(objects)
        self.name = name
        self._obj_set = set(self.objects)
        self._hom = {}
        self._src = {}
        self._tgt = {}
        for (x, y), fs in hom.items():
            if not fs:
                continue
            self._hom[(x, y)] = list(fs)
            for f in fs:
                if f in self._src and (self._src[f], self._tgt[f]) != (x, y):
                    raise InvalidStructure(f"morphism {f!r} appears in two hom-sets")
                self._src[f] = x
                self._tgt[f] = y
        self._compose_fn = compose
        self._identity_fn = identity
        self._comp_cache = {}
        self._out = {x: [] for x in self.objects}
        self._in = {x: [] for x in self.objects}
        for (x, y) in self._hom:
            self._out[x].append(y)
            self._in[y].append(x)

    def __repr__(self):
        return f"FinCategory({self.name or ''}, {len(self.objects)} objects, {len(self._src)} morphisms)"

    def __contains__(self, x):
        return x in self._obj_set

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def hom_from(self, x):
        return [(y, f) for y in self._out.get(x, []) for f in self._hom[(x, y)]]

    def hom_to(self, y):
        return [(x, f) for x in self._in.get(y, []) for f in self._hom[(x, y)]]

    def morphisms(self):
        return [f for fs in self._hom.values() for f in fs]

    def src(self, f):
        return self._src[f]

    def tgt(self, f):
        return self._tgt[f]

    def is_morphism(self, f):
        return f in self._src

    def identity(self, x):
        return self._identity_fn[x] if isinstance(self._identity_fn, dict) else self._identity_fn(x)

    def compose(self, g, f):
        key = (g, f)
        hit = self._comp_cache.get(key)
        if hit is not None:
            return hit
        if self._tgt[f] != self._src[g]:
            raise DomainMismatch(f"cannot compose {g!r} after {f!r}")
        h = self._compose_fn[key] if isinstance(self._compose_fn, dict) else self._compose_fn(g, f)
        self._comp_cache[key] = h
        return h

    def compose_chain(self, *fs):
        """Compose f_n after ... after f_1, given as f_n, ..., f_1."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def validate(self):
        for x in self.objects:
            i = self.identity(x)
            if self._src.get(i) != x or self._tgt.get(i) != x:
                raise InvalidStructure(f"identity of {x!r} is not an endomorphism", counterexample=[repr(x)])
        for f in self.morphisms():
            x, y = self._src[f], self._tgt[f]
            if self.compose(self.identity(y), f) != f or self.compose(f, self.identity(x)) != f:
                raise InvalidStructure("unit law fails", counterexample=[repr(f)])
        for f in self.morphisms():
            y = self._tgt[f]
            for z, g in self.hom_from(y):
                gf = self.compose(g, f)
                if self._src.get(gf) != self._src[f] or self._tgt.get(gf) != z:
                    raise InvalidStructure("composite lands in the wrong hom-set", counterexample=[repr(g), repr(f)])
                for _, h in self.hom_from(z):
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        raise InvalidStructure("composition is not associative",
                                               counterexample=[repr(h), repr(g), repr(f)])
        return True

    def inverse(self, f):
        x, y = self._src[f], self._tgt[f]
        for g in self.hom(y, x):
            if self.compose(g, f) == self.identity(x) and self.compose(f, g) == self.identity(y):
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def isos(self, x, y):
        return [f for f in self.hom(x, y) if self.is_iso(f)]

    def isomorphic(self, x, y):
        return bool(self.isos(x, y))

    def iso_classes(self):
        classes = []
        for x in self.objects:
            for c in classes:
                if self.isomorphic(c[0], x):
                    c.append(x)
                    break
            else:
                classes.append([x])
        return classes

    def full_subcategory(self, objects, name=None):
        objs = [x for x in self.objects if x in set(objects)]
        keep = set(objs)
        hom = {(x, y): fs for (x, y), fs in self._hom.items() if x in keep and y in keep}
        return FinCategory(objs, hom, self.compose, self.identity, name=name)

    def subcategory(self, objects, morphisms, name=None):
        keep_o = set(objects)
        keep_m = set(morphisms)
        objs = [x for x in self.objects if x in keep_o]
        hom = {}
        for (x, y), fs in self._hom.items():
            if x in keep_o and y in keep_o:
                hom[(x, y)] = [f for f in fs if f in keep_m]
        return FinCategory(objs, hom, self.compose, self.identity, name=name)


def chaotic_category(V, name=None):
    V = list(V)
    hom = {(x, y): [(y, x)] for x in V for y in V}
    return FinCategory(V, hom, lambda g, f: (g[0], f[1]), lambda x: (x, x), name=name or "chaotic")


def discrete_category(V, name=None):
    V = list(V)
    return FinCategory(V, {(x, x): [(x, x)] for x in V}, lambda g, f: f, lambda x: (x, x), name=name or "discrete")


def poset_category(elements, leq, name=None):
    """Morphism (x, y) exists iff x <= y."""
    els = list(elements)
    hom = {(x, y): [(x, y)] for x in els for y in els if leq(x, y)}
    return FinCategory(els, hom, lambda g, f: (f[0], g[1]), lambda x: (x, x), name=name or "poset")


def ordinal_category(n):
    return poset_category(range(n + 1), lambda a, b: a <= b, name=f"[{n}]")


def terminal_category():
    return chaotic_category(["*"], name="terminal")


def product_category(C, D, name=None):
    objs = [(x, y) for x in C.objects for y in D.objects]
    hom = {}
    for (x, y) in objs:
        for (x2, y2) in objs:
            fs = [(f, g) for f in C.hom(x, x2) for g in D.hom(y, y2)]
            if fs:
                hom[((x, y), (x2, y2))] = fs
    return FinCategory(objs, hom, lambda b, a: (C.compose(b[0], a[0]), D.compose(b[1], a[1])),
                       lambda o: (C.identity(o[0]), D.identity(o[1])), name=name)


class Functor:
    def __init__(self, source, target, obj_map, mor_map, name=None):
        self.source = source
        self.target = target
        self.name = name
        self.obj = {x: (obj_map[x] if isinstance(obj_map, dict) else obj_map(x)) for x in source.objects}
        self.mor = {f: (mor_map[f] if isinstance(mor_map, dict) else mor_map(f)) for f in source.morphisms()}

    def __call__(self, x):
        return self.obj[x]

    def on_mor(self, f):
        return self.mor[f]

    def validate(self):
        S, T = self.source, self.target
        for x in S.objects:
            if self.obj[x] not in T:
                raise InvalidStructure("object image is not in the target", counterexample=[repr(x)])
            if self.mor[S.identity(x)] != T.identity(self.obj[x]):
                raise InvalidStructure("identity is not preserved", counterexample=[repr(x)])
        for f in S.morphisms():
            Ff = self.mor[f]
            if not T.is_morphism(Ff) or T.src(Ff) != self.obj[S.src(f)] or T.tgt(Ff) != self.obj[S.tgt(f)]:
                raise InvalidStructure("morphism image has wrong endpoints", counterexample=[repr(f)])
        for f in S.morphisms():
            for _, g in S.hom_from(S.tgt(f)):
                if self.mor[S.compose(g, f)] != T.compose(self.mor[g], self.mor[f]):
                    raise InvalidStructure("composition is not preserved", counterexample=[repr(g), repr(f)])
        return True

    def then(self, G):
        """G after self."""
        return Functor(self.source, G.target, {x: G.obj[y] for x, y in self.obj.items()},
                       {f: G.mor[g] for f, g in self.mor.items()})

    def equals(self, G):
        return self.obj == G.obj and self.mor == G.mor

    @classmethod
    def identity(cls, C):
        return cls(C, C, lambda x: x, lambda f: f, name="id")

    @classmethod
    def inclusion(cls, sub, C):
        return cls(sub, C, lambda x: x, lambda f: f, name="inclusion")

    @classmethod
    def constant(cls, C, D, d):
        return cls(C, D, lambda x: d, lambda f: D.identity(d), name="constant")


class NatTrans:
    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = dict(components)

    def validate(self):
        F, G = self.source, self.target
        C, D = F.source, F.target
        for f in C.morphisms():
            x, y = C.src(f), C.tgt(f)
            if D.compose(G.mor[f], self.components[x]) != D.compose(self.components[y], F.mor[f]):
                raise InvalidStructure("naturality square fails", counterexample=[repr(f)])
        return True


class CatGAction:
    """A strict action of a finite group on a finite category by functors."""

    def __init__(self, category, group, action):
        self.category = category
        self.group = group
        self.action = dict(action)

    def __call__(self, g):
        return self.action[g]

    def act(self, g, x):
        return self.action[g].obj[x]

    def act_mor(self, g, f):
        return self.action[g].mor[f]

    def validate(self):
        G, C = self.group, self.category
        if not self.action[G.id].equals(Functor.identity(C)):
            raise InvalidStructure("neutral element does not act as the identity")
        for g, h in product(G.elements, G.elements):
            if not self.action[h].then(self.action[g]).equals(self.action[G.mul[(g, h)]]):
                raise InvalidStructure("action is not multiplicative", counterexample=[G.index(g), G.index(h)])
        return True

    @classmethod
    def trivial(cls, C, group):
        ident = Functor.identity(C)
        return cls(C, group, {g: ident for g in group.elements})


def twisted_action(A_H, A_G, phi):
    """The action h -> (h.-) after (phi(h).-) of the source group of phi."""
    C, H = A_H.category, A_H.group
    for h, g in product(H.elements, A_G.group.elements):
        if not A_G(g).then(A_H(h)).equals(A_H(h).then(A_G(g))):
            raise ActionsDoNotCommute(f"actions of {h!r} and {g!r} do not commute")
    return CatGAction(C, H, {h: A_G(phi(h)).then(A_H(h)) for h in H.elements})


@dataclass(frozen=True)
class HFixedObject:
    """An equivariant functor out of the chaotic category on H, stored as its value at 1 plus the cocycle."""

    base: object
    cocycle: tuple


def _cocycle_ok(C, A, x, c):
    H = A.group
    for g, h in product(H.elements, H.elements):
        lhs = c[g]
        hinv_g = H.mul[(H.inv[h], g)]
        rhs = C.compose(A.act_mor(h, c[hinv_g]), c[h])
        if lhs != rhs:
            return False
    return True


def skeleton_retraction(C):
    """A skeleton of C and the retraction functor f -> theta_y f theta_x^-1 onto it."""
    reps, theta = [], {}
    for cls in C.iso_classes():
        r = cls[0]
        reps.append(r)
        for x in cls:
            theta[x] = C.isos(x, r)[0]
    S = C.full_subcategory(reps, name=f"skeleton {C.name or ''}".strip())

    def on_mor(f):
        x, y = C.src(f), C.tgt(f)
        return C.compose(theta[y], C.compose(f, C.inverse(theta[x])))

    return S, Functor(C, S, lambda x: C.tgt(theta[x]), on_mor, name="retraction")


def fun_twisted(C, action):
    """Category of equivariant functors from the chaotic category on H into C and equivariant transformations."""
    H = action.group
    others = [h for h in H.elements if h != H.id]
    objects = []
    for x in C.objects:
        choices = [C.isos(x, action.act(h, x)) for h in others]
        for pick in product(*choices):
            c = dict(zip(others, pick))
            c[H.id] = C.identity(x)
            if _cocycle_ok(C, action, x, c):
                objects.append(HFixedObject(x, tuple(c[h] for h in H.elements)))
    hom = {}
    for P in objects:
        for Q in objects:
            fs = []
            for t in C.hom(P.base, Q.base):
                if all(C.compose(Q.cocycle[i], t) == C.compose(action.act_mor(h, t), P.cocycle[i])
                       for i, h in enumerate(H.elements)):
                    fs.append((P, Q, t))
            if fs:
                hom[(P, Q)] = fs
    return FinCategory(objects, hom, lambda g, f: (f[0], g[1], C.compose(g[2], f[2])),
                       lambda P: (P, P, C.identity(P.base)), name="homotopy-fixed")


def fixed_subcategory(C, A):
    G = A.group
    objs = [x for x in C.objects if all(A.act(g, x) == x for g in G.elements)]
    keep = set(objs)
    mors = [f for f in C.morphisms() if C.src(f) in keep and C.tgt(f) in keep
            and all(A.act_mor(g, f) == f for g in G.elements)]
    return C.subcategory(objs, mors, name="fixed")


def fixed_to_homotopy_fixed(fixed, hfix, group):
    """The comparison sending a fixed object to the constant cocycle of identities."""
    index = {P.base: P for P in hfix.objects if all(c == fixed.identity(P.base) for c in P.cocycle)}
    missing = [x for x in fixed.objects if x not in index]
    if missing:
        raise InvalidStructure("fixed object has no trivial cocycle", counterexample=[repr(missing[0])])
    return Functor(fixed, hfix, lambda x: index[x], lambda f: (index[fixed.src(f)], index[fixed.tgt(f)], f),
                   name="comparison")


def slice_under_functor(F, b):
    """The comma category F / b of objects (a, alpha: F(a) -> b)."""
    if b not in F.target:
        raise ObjectNotInTarget(f"{b!r} is not an object of the target")
    S, T = F.source, F.target
    objs = [(a, alpha) for a in S.objects for alpha in T.hom(F.obj[a], b)]
    hom = {}
    for o in objs:
        for o2 in objs:
            fs = [(o, o2, f) for f in S.hom(o[0], o2[0]) if T.compose(o2[1], F.mor[f]) == o[1]]
            if fs:
                hom[(o, o2)] = fs
    return FinCategory(objs, hom, lambda g, f: (f[0], g[1], S.compose(g[2], f[2])),
                       lambda o: (o, o, S.identity(o[0])), name="slice")


@dataclass
class EquivalenceReport:
    fully_faithful: bool
    essentially_surjective: bool
    counterexample: dict = field(default_factory=dict)

    def __bool__(self):
        return self.fully_faithful and self.essentially_surjective


def check_equivalence(F):
    S, T = F.source, F.target
    report = EquivalenceReport(True, True)
    for x, y in product(S.objects, S.objects):
        images = [F.mor[f] for f in S.hom(x, y)]
        target = T.hom(F.obj[x], F.obj[y])
        if len(set(images)) != len(images) or set(images) != set(target):
            report.fully_faithful = False
            report.counterexample["hom"] = {"source": repr(x), "target": repr(y),
                                            "source_hom_size": len(images), "target_hom_size": len(target)}
            break
    image_objs = set(F.obj.values())
    for z in T.objects:
        if z in image_objs:
            continue
        if not any(T.isomorphic(w, z) for w in image_objs):
            report.essentially_surjective = False
            report.counterexample["missed_object"] = repr(z)
            break
    return report


def has_terminal_object(C):
    for t in C.objects:
        if all(len(C.hom(x, t)) == 1 for x in C.objects):
            return t
    return None
