"""Windowed saturation: functors E Inj(A, W) -> C as a stand-in for the tame part of Fun(EM, C).

Since E Inj(A, W) is chaotic, a functor is its value x0 at iota_A together with isomorphisms
theta_u: x0 -> Phi(u); a natural transformation is determined by its component at the inclusion,
so morphisms (A, Phi) -> (B, Psi) are the morphisms x0 -> y0 of C.
"""

from dataclasses import dataclass
from itertools import combinations, product

from .combinatorics import Germ, Window, injections
from .em import EMCategory, homotopy_fixed
from .errors import BoundsExceeded, WindowOverflow
from .fincat import Functor, check_equivalence


@dataclass(frozen=True)
class SatObject:
    A: tuple
    x0: object
    values: tuple

    def __repr__(self):
        return f"Sat(A={list(self.A)}, x0={self.x0!r}, {len(self.values)} values)"

    def value(self, u):
        """(Phi(u), theta_u) for u in Inj(A, W); theta at the inclusion is None, meaning the identity."""
        for w, y, theta in self.values:
            if w == u:
                return y, theta
        raise KeyError(u)


class SaturatedWindow(EMCategory):
    def __init__(self, C, window, a_max=1, max_objects=20000):
        self.C = C
        self.W = window if isinstance(window, Window) else Window(int(window))
        self.a_max = a_max
        self.max_objects = max_objects
        self.name = f"{C.name}^sat_{self.W.n}"
        self.group = C.group
        self._base = C.to_fincat(self.W.n)
        for x in self._base.objects:
            if not C.support(x) <= set(self.W.points()):
                raise WindowOverflow(f"{x!r} is not supported within the window")
        self._objects = None
        self._act_cache = {}

    def objects(self, window=None):
        if self._objects is None:
            self._objects = self._enumerate()
        return list(self._objects)

    def _enumerate(self):
        B, pts = self._base, list(self.W.points())
        out = []
        for k in range(self.a_max + 1):
            for A in combinations(pts, k):
                local = [x for x in B.objects if self.C.support(x) <= set(A)]
                iota = Germ.identity(A)
                others = [u for u in injections(A, pts) if u != iota]
                for x0 in local:
                    choices = [[(u, y, t) for y in local for t in B.isos(x0, y)] for u in others]
                    for pick in product(*choices):
                        o = SatObject(A, x0, ((iota, x0, None),) + tuple(pick))
                        if self.support(o) != frozenset(A):
                            continue
                        out.append(o)
                        if len(out) > self.max_objects:
                            raise BoundsExceeded(f"more than {self.max_objects} objects in the windowed saturation")
        return out

    def hom(self, o1, o2):
        return [(o1, o2, t) for t in self._base.hom(o1.x0, o2.x0)]

    def compose(self, g, f):
        return f[0], g[1], self._base.compose(g[2], f[2])

    def identity(self, o):
        return o, o, self._base.identity(o.x0)

    def src(self, f):
        return f[0]

    def tgt(self, f):
        return f[1]

    def footprint(self, o):
        return frozenset(o.A)

    def support(self, o):
        """The smallest A' in A with all values supported on A' and Phi factoring through Inj(A', W)."""
        B = self._base
        for k in range(len(o.A) + 1):
            for A2 in combinations(o.A, k):
                if self._factors_through(o, A2, B):
                    return frozenset(A2)
        return frozenset(o.A)

    def _factors_through(self, o, A2, B):
        if any(not self.C.support(y) <= set(A2) for _, y, _ in o.values):
            return False
        groups = {}
        for u, y, t in o.values:
            groups.setdefault(u.restrict(A2), []).append((y, B.identity(o.x0) if t is None else t))
        for members in groups.values():
            y0, t0 = members[0]
            for y, t in members[1:]:
                if y != y0 or B.compose(t, B.inverse(t0)) != B.identity(y0):
                    return False
        return True

    def _theta(self, o, u):
        y, t = o.value(u)
        return y, (self._base.identity(o.x0) if t is None else t)

    def _check_window(self, v, A):
        if not all(v(a) in self.W for a in A):
            raise WindowOverflow(f"{v!r} moves {sorted(A)} outside the window")

    def _act(self, v, o):
        key = (v.restrict(o.A), o)
        if key not in self._act_cache:
            self._act_cache[key] = self._act_uncached(v, o)
        return self._act_cache[key]

    def _act_uncached(self, v, o):
        self._check_window(v, o.A)
        C, B = self.C, self._base
        vA = v.restrict(o.A)
        A2 = tuple(sorted(vA.image))
        base_y, base_t = self._theta(o, vA)
        x0 = C.act(v, base_y)
        values = []
        for u2 in injections(A2, list(self.W.points())):
            y, t = self._theta(o, Germ({a: u2(vA(a)) for a in o.A}))
            theta = C.act_mor(v, B.compose(t, B.inverse(base_t)))
            values.append((u2, C.act(v, y), None if u2 == Germ.identity(A2) else theta))
        return SatObject(A2, x0, _normalize(A2, values))

    def _structure_iso(self, v, o):
        _, t = self._theta(o, v.restrict(o.A))
        vo = self._act(v, o)
        return o, vo, self._base.compose(self.C.act_mor(v, t), self.C.structure_iso(v, o.x0))

    def _structure_iso_inverse(self, v, o):
        f = self._structure_iso(v, o)
        return f[1], f[0], self._base.inverse(f[2])

    def act_mor(self, v, f):
        o1, o2, t = f
        _, t1 = self._theta(o1, v.restrict(o1.A))
        _, t2 = self._theta(o2, v.restrict(o2.A))
        B = self._base
        return self.act(v, o1), self.act(v, o2), self.C.act_mor(v, B.compose(t2, B.compose(t, B.inverse(t1))))

    def g_act(self, g, o):
        if self.C.group is None:
            return o
        C = self.C
        return SatObject(o.A, C.g_act(g, o.x0),
                         tuple((u, C.g_act(g, y), None if t is None else C.g_act_mor(g, t)) for u, y, t in o.values))

    def g_act_mor(self, g, f):
        if self.C.group is None:
            return f
        return self.g_act(g, f[0]), self.g_act(g, f[1]), self.C.g_act_mor(g, f[2])

    def s_object(self, x):
        """The constant functor at x, on A = supp(x)."""
        A = tuple(sorted(self.C.support(x)))
        if len(A) > self.a_max:
            raise BoundsExceeded(f"support of {x!r} exceeds a_max={self.a_max}")
        iota = Germ.identity(A)
        ident = self._base.identity(x)
        values = [(u, x, None if u == iota else ident) for u in injections(A, list(self.W.points()))]
        return SatObject(A, x, _normalize(A, values))


def _normalize(A, values):
    iota = Germ.identity(A)
    return tuple(sorted(values, key=lambda v: v[0] != iota))


def saturate_windowed(C, W, a_max=1, max_objects=20000):
    return SaturatedWindow(C, W, a_max, max_objects)


def s_functor(sat):
    """s: C -> C^sat_W on the windowed finite pieces."""
    base = sat._base
    target = sat.to_fincat(sat.W.n)
    return Functor(base, target, sat.s_object, lambda f: (sat.s_object(base.src(f)), sat.s_object(base.tgt(f)), f),
                   name="s")


@dataclass
class SaturationReport:
    window: int
    objects: int
    s_equivalence: object
    probe_essentially_surjective: bool
    probe_counts: dict

    @property
    def ok(self):
        return bool(self.s_equivalence) and self.probe_essentially_surjective

    def __bool__(self):
        return self.ok


def saturation_check(C, W, U, phi, a_max=1):
    """s is an equivalence onto the windowed saturation, and its comparison into homotopy fixed points
    is essentially surjective for the probe group."""
    sat = saturate_windowed(C, W, a_max)
    s = s_functor(sat)
    eq = check_equivalence(s)
    T = frozenset(U.window.points())
    fixed, hfix, comp = homotopy_fixed(sat, U, phi, T, sat.W.n, max_objects=10 ** 6)
    image = set(comp.obj.values())
    surj = all(P in image or any(hfix.isomorphic(Q, P) for Q in image) for P in hfix.objects)
    return SaturationReport(sat.W.n, len(sat.objects()), eq, surj,
                            {"fixed": len(fixed.objects), "homotopy_fixed": len(hfix.objects)})
