"""The category C_X of quadruples (A, S, m, f) over a simplicial set X with action, and its last vertex maps.

An object stores only its core, the map from the nerve of the product poset
P = prod_{a in A} [m_a] to X_[S] obtained by evaluating f at iota_S; the full
equivariant map is recovered through corepresentability.  A morphism stores
its value at iota_S on the vertices of P: a pair (j_p, q_p) with j_p an
injection T -> S and q monotone.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .combinatorics import DeltaMap, Germ, germ_compose, injections
from .em import EMCategory, restrict_simplex
from .errors import BoundsExceeded, InvalidStructure
from .fincat import Functor
from .sset import SimplicialMap, nerve


@dataclass(frozen=True)
class CXObject:
    A: tuple
    S: tuple
    m: tuple
    core: tuple

    def __repr__(self):
        return f"CX(A={list(self.A)}, S={list(self.S)}, m={list(self.m)}, core={len(self.core)} cells)"

    @property
    def support(self):
        return frozenset(self.A) | frozenset(self.S)


@dataclass(frozen=True)
class CXMorphism:
    src: CXObject
    tgt: CXObject
    vmap: tuple

    def __repr__(self):
        pairs = ", ".join(f"{dict(j.pairs())}:{q}" for j, q in self.vmap)
        return f"CXMor({self.src!r} -> {self.tgt!r}; {pairs})"


@dataclass(frozen=True)
class CXBounds:
    a_max: int = 1
    s_max: int = 2
    m_max: int = 1
    window: int = 3
    d: int = 2

    def __post_init__(self):
        if min(self.a_max, self.s_max, self.m_max, self.d) < 0 or self.window < 1:
            raise InvalidStructure(f"bounds must be nonnegative with a positive window: {self}")


class Poset:
    """The product poset prod [m_a] with vertices as tuples, its strict chains and top vertex."""

    def __init__(self, m):
        self.m = tuple(m)
        self.vertices = list(product(*[range(k + 1) for k in self.m]))
        self.index = {p: i for i, p in enumerate(self.vertices)}
        self.top = tuple(self.m)
        self.chains = [[(p,) for p in self.vertices]]
        while True:
            nxt = [c + (q,) for c in self.chains[-1] for q in self.vertices if self.less(c[-1], q)]
            if not nxt:
                break
            self.chains.append(nxt)
        self.ending_at = {p: [] for p in self.vertices}
        for level in self.chains[1:]:
            for c in level:
                self.ending_at[c[-1]].append(c)

    @staticmethod
    def leq(p, q):
        return all(a <= b for a, b in zip(p, q))

    def less(self, p, q):
        return p != q and self.leq(p, q)

    @property
    def dim(self):
        return len(self.chains) - 1


@lru_cache(maxsize=None)
def poset(m):
    return Poset(m)


@lru_cache(maxsize=200000)
def _core_dict(core):
    return dict(core)


def core_value(X, o, chain):
    """The core of o on an arbitrary weakly increasing chain of vertices."""
    strict = [chain[0]]
    positions = [0]
    for p in chain[1:]:
        if p != strict[-1]:
            strict.append(p)
        positions.append(len(strict) - 1)
    x = _core_dict(o.core)[tuple(strict)]
    if len(strict) == len(chain):
        return x
    return restrict_simplex(X, DeltaMap(len(chain) - 1, len(strict) - 1, tuple(positions)), x)


def _push(p, A, A2, u):
    """Relabel a vertex aligned with A to one aligned with A2 = sorted(u(A))."""
    out = [None] * len(A2)
    pos = {a: i for i, a in enumerate(A2)}
    for i, a in enumerate(A):
        out[pos[u(a)]] = p[i]
    return tuple(out)


def _pull(p2, A, A2, u):
    pos = {a: i for i, a in enumerate(A2)}
    return tuple(p2[pos[u(a)]] for a in A)


class CX(EMCategory):
    """C_X within enumeration bounds, as an EM-category."""

    def __init__(self, X, bounds=CXBounds(), name=None):
        self.X = X
        self.bounds = bounds
        self.name = name or f"C_({X.name})"
        self.group = X.group
        self._levels = {}
        self._hom_cache = {}

    # enumeration

    def _supported(self, n, S):
        key = (n, S)
        if key not in self._levels:
            w = max(self.bounds.window, max(S, default=0))
            try:
                level = self.X.simplices(n, w)
            except IndexError:
                raise BoundsExceeded(f"{self.X.name} is truncated below level {n}") from None
            cells = [x for x in level if self.X.support(x) <= frozenset(S)]
            by_faces = {}
            for x in cells:
                faces = tuple(self.X.face(n, i, x) for i in range(n + 1)) if n else ()
                by_faces.setdefault(faces, []).append(x)
            self._levels[key] = (cells, by_faces)
        return self._levels[key]

    def cores(self, S, m):
        """All simplicial maps from the nerve of prod [m_a] to X_[S], as tuples of (strict chain, simplex)."""
        P = poset(m)
        S = tuple(sorted(S))
        order = [c for level in P.chains for c in level]
        out = []
        assign = {}

        def rec(k):
            if k == len(order):
                out.append(tuple((c, assign[c]) for c in order))
                return
            c = order[k]
            n = len(c) - 1
            if n == 0:
                candidates = self._supported(0, S)[0]
            else:
                faces = tuple(assign[c[:i] + c[i + 1:]] for i in range(n + 1))
                candidates = self._supported(n, S)[1].get(faces, [])
            for x in candidates:
                assign[c] = x
                rec(k + 1)
            assign.pop(c, None)

        rec(0)
        return out

    def make_objects(self, As, Ss, m_choices=None):
        out = []
        for A in As:
            A = tuple(sorted(A))
            ms = m_choices(A) if m_choices else product(range(self.bounds.m_max + 1), repeat=len(A))
            for m in ms:
                for S in Ss:
                    S = tuple(sorted(S))
                    for core in self.cores(S, tuple(m)):
                        out.append(CXObject(A, S, tuple(m), core))
        return out

    def objects(self, window, within=None):
        pts = sorted(within) if within is not None else range(1, window + 1)
        b = self.bounds
        As = [c for k in range(b.a_max + 1) for c in combinations(pts, k)]
        Ss = [c for k in range(b.s_max + 1) for c in combinations(pts, k)]
        return self.make_objects(As, Ss)

    def hom(self, o1, o2):
        key = (o1, o2)
        if key not in self._hom_cache:
            self._hom_cache[key] = self._enumerate_hom(o1, o2)
        return self._hom_cache[key]

    def _enumerate_hom(self, o1, o2):
        X = self.X
        P, Q = poset(o1.m), poset(o2.m)
        js = injections(o2.S, o1.S)
        if not js:
            return []
        choice = {}
        out = []
        verts = P.vertices

        def ok_at(p):
            j, q = choice[p]
            if core_value(X, o1, (p,)) != X.act((j,), core_value(X, o2, (q,))):
                return False
            for c in P.ending_at[p]:
                if not all(Q.leq(choice[c[i]][1], choice[c[i + 1]][1]) for i in range(len(c) - 1)):
                    return False
                qs = tuple(choice[v][1] for v in c)
                jv = tuple(choice[v][0] for v in c)
                if core_value(X, o1, c) != X.act(jv, core_value(X, o2, qs)):
                    return False
            return True

        def rec(k):
            if k == len(verts):
                out.append(CXMorphism(o1, o2, tuple(choice[p] for p in verts)))
                return
            p = verts[k]
            for q in Q.vertices:
                if any(P.leq(r, p) and not Q.leq(choice[r][1], q) for r in verts[:k]):
                    continue
                for j in js:
                    choice[p] = (j, q)
                    if ok_at(p):
                        rec(k + 1)
            choice.pop(p, None)

        rec(0)
        return out

    def is_morphism(self, f):
        """Check the triangle g alpha = f on the core and monotonicity of the vertex map."""
        X, o1, o2 = self.X, f.src, f.tgt
        P, Q = poset(o1.m), poset(o2.m)
        table = dict(zip(P.vertices, f.vmap))
        for level in P.chains:
            for c in level:
                qs = tuple(table[p][1] for p in c)
                if any(not Q.leq(qs[i], qs[i + 1]) for i in range(len(qs) - 1)):
                    return False
                if core_value(X, o1, c) != X.act(tuple(table[p][0] for p in c), core_value(X, o2, qs)):
                    return False
        return True

    # category structure

    def compose(self, g, f):
        Q = poset(f.tgt.m)
        out = []
        for j, q in f.vmap:
            k, r = g.vmap[Q.index[q]]
            out.append((germ_compose(j, k), r))
        return CXMorphism(f.src, g.tgt, tuple(out))

    def identity(self, o):
        iota = Germ.identity(o.S)
        return CXMorphism(o, o, tuple((iota, p) for p in poset(o.m).vertices))

    def src(self, f):
        return f.src

    def tgt(self, f):
        return f.tgt

    def evaluate(self, f, p):
        """alpha(iota_S, p) as a pair (injection, vertex)."""
        return f.vmap[poset(f.src.m).index[p]]

    # action

    def footprint(self, o):
        return o.support

    def _act(self, u, o):
        A2 = tuple(sorted(u(a) for a in o.A))
        S2 = tuple(sorted(u(s) for s in o.S))
        m2 = _push(o.m, o.A, A2, u)
        P2 = poset(m2)
        core = []
        for level in P2.chains:
            for c2 in level:
                c = tuple(_pull(p2, o.A, A2, u) for p2 in c2)
                x = _core_dict(o.core)[c]
                core.append((c2, self.X.act((u,) * len(c), x)))
        return CXObject(A2, S2, m2, tuple(core))

    def _structure_iso(self, u, o):
        uo = self._act(u, o)
        back = u.restrict(o.S).inverse()
        return CXMorphism(o, uo, tuple((back, _push(p, o.A, uo.A, u)) for p in poset(o.m).vertices))

    def _structure_iso_inverse(self, u, o):
        uo = self._act(u, o)
        fwd = u.restrict(o.S)
        return CXMorphism(uo, o, tuple((fwd, _pull(p2, o.A, uo.A, u)) for p2 in poset(uo.m).vertices))

    def g_act(self, g, o):
        if self.X.group is None:
            return o
        return CXObject(o.A, o.S, o.m, tuple((c, self.X.g_act(g, x)) for c, x in o.core))

    def g_act_mor(self, g, f):
        if self.X.group is None:
            return f
        return CXMorphism(self.g_act(g, f.src), self.g_act(g, f.tgt), f.vmap)

    def support(self, o):
        cache = self.__dict__.setdefault("_support_cache", {})
        if o not in cache:
            cache[o] = self.support_report(o).support
        return cache[o]

    def category(self, window=None, within=None, keep=None):
        """The finite category of enumerated objects (optionally supported within a set)."""
        w = window or self.bounds.window
        objs = [o for o in self.objects(w, within) if keep is None or keep(o)]
        if len(objs) > 20000:
            raise BoundsExceeded(f"{len(objs)} objects exceed the enumeration budget")
        from .fincat import FinCategory
        hom = {}
        for x in objs:
            for y in objs:
                fs = self.hom(x, y)
                if fs:
                    hom[(x, y)] = fs
        return FinCategory(objs, hom, self.compose, self.identity, name=self.name)


def cx_act(cx, u, o):
    return cx.act(u, o)


def cx_structure_iso(cx, u, o):
    return cx.structure_iso(u, o)


def cx_build(X, bounds=CXBounds(), within=None):
    """(the EM-category C_X, its finite enumerated piece)."""
    cx = CX(X, bounds)
    return cx, cx.category(bounds.window, within)


def cx_functor(phi, cx_source, cx_target, C_source, C_target):
    """The functor induced by an equivariant map phi of simplicial sets (a function on simplices)."""

    def on_obj(o):
        return CXObject(o.A, o.S, o.m, tuple((c, phi(x)) for c, x in o.core))

    return Functor(C_source, C_target, on_obj,
                   lambda f: CXMorphism(on_obj(f.src), on_obj(f.tgt), f.vmap), name="C_phi")


# last vertex maps


def last_vertex_data(cx, simplex):
    """The simplex sigma of E Inj(S_k) x P_k attached to a chain in C_X: (injections, vertices)."""
    objs, mors = simplex
    k = len(objs) - 1
    js, qs = [], []
    for ell in range(k + 1):
        j, q = Germ.identity(objs[ell].S), poset(objs[ell].m).top
        for f in mors[ell:]:
            j2, q2 = cx.evaluate(f, q)
            j, q = germ_compose(j, j2), q2
        js.append(j)
        qs.append(q)
    return tuple(js), tuple(qs)


def epsilon_simplex(cx, simplex):
    js, qs = last_vertex_data(cx, simplex)
    return cx.X.act(js, core_value(cx.X, simplex[0][-1], qs))


def epsilon(cx, C, target, d=None):
    """The last vertex map N(C) -> X for a finite piece C of C_X and a windowed target containing the image."""
    d = target.dim if d is None else d
    N = nerve(C, d)
    return SimplicialMap(N, target, lambda n, s: epsilon_simplex(cx, s), name="epsilon")


def epsilon_tilde_object(cx, o):
    """For X a nerve: the object of the underlying category at the top vertex of the core."""
    vertex = core_value(cx.X, o, (poset(o.m).top,))
    return vertex[0][0]


def epsilon_tilde_morphism(cx, f):
    """The image under g of the edge from alpha(iota_S, *) to (iota_T, *)."""
    X = cx.X
    j, q = cx.evaluate(f, poset(f.src.m).top)
    top = poset(f.tgt.m).top
    edge = core_value(X, f.tgt, (q, top))
    moved = X.act((j, Germ.identity(f.tgt.S)), edge)
    return moved[1][0]


def epsilon_tilde(cx, C, D):
    """The functor C_{N D} -> D on the finite piece C, with D the finite category underlying the nerve."""
    return Functor(C, D, lambda o: epsilon_tilde_object(cx, o), lambda f: epsilon_tilde_morphism(cx, f),
                   name="epsilon tilde")


def nerve_of_functor_matches(cx, F, d):
    """N(epsilon tilde) = epsilon on all simplices up to level d."""
    N = nerve(F.source, d)
    for n in range(d + 1):
        for s in N.levels[n]:
            objs, mors = s
            image = (tuple(F.obj[o] for o in objs), tuple(F.mor[f] for f in mors))
            if image != epsilon_simplex(cx, s):
                return False, s
    return True, None
