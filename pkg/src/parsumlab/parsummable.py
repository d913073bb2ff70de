"""Parsummable categories and simplicial sets: partial sums on disjointly supported data."""

from dataclasses import dataclass, field
from itertools import product

from .combinatorics import Germ, shift_witness
from .em import (EInjSSet, NerveEM, ProductSSet, QuotientSSet, TrivialEM, finite_subsets,
                 nerve_box_iso, simplex_product_trivial)
from .errors import InsufficientGermDomain, SupportsOverlap
from .fincat import terminal_category


@dataclass
class ParsummableReport:
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def fail(self, law, **witness):
        self.violations.append({"law": law, **{k: repr(v) for k, v in witness.items()}})

    def count(self, law):
        self.checked[law] = self.checked.get(law, 0) + 1


def _probe_germs(points, window):
    """A small deterministic family of germs covering `points`: identity, a shift and a reversal."""
    pts = sorted(points)
    out = [Germ.identity(pts), Germ({a: a + 1 for a in pts})]
    if pts:
        out.append(Germ({a: window + 1 - k for k, a in enumerate(pts)}) if len(pts) <= window
                   else Germ({a: a + window for a in pts}))
    return out


class ParsummableCategory:
    """An EM-category with a zero object and a sum defined on disjointly supported objects and morphisms."""

    def __init__(self, base, zero, add, add_mor, window, name=None, overrides=None):
        self.base = base
        self.zero = zero
        self._add = add
        self._add_mor = add_mor
        self.window = window
        self.name = name or f"parsummable {base.name}"
        self.overrides = dict(overrides or {})

    def summable(self, x, y):
        return not (self.base.support(x) & self.base.support(y))

    def add(self, x, y):
        if not self.summable(x, y):
            raise SupportsOverlap(f"{x!r} and {y!r} are not disjointly supported")
        if (x, y) in self.overrides:
            return self.overrides[(x, y)]
        return self._add(x, y)

    def add_mor(self, f, g):
        return self._add_mor(f, g)

    def with_overrides(self, overrides):
        merged = dict(self.overrides)
        merged.update(overrides)
        return ParsummableCategory(self.base, self.zero, self._add, self._add_mor, self.window, self.name, merged)

    def objects(self):
        return self.base.objects(self.window)

    def sum_table(self):
        """All defined object sums within the window, as a sparse table."""
        objs = self.objects()
        return {(x, y): self.add(x, y) for x in objs for y in objs if self.summable(x, y)}

    def shift_apart(self, x, y):
        """Replace y by an isomorphic object disjointly supported from x.

        Returns (u, u.y) where u moves the support of y to fresh points.
        """
        sx, sy = self.base.support(x), self.base.support(y)
        u = shift_witness((), sy, sx | sy)
        return u, self.base.act(u, y)


def verify_parsummable(P, germs_per_object=3, morphism_limit=2000):
    """Exhaustive check of the partial commutative monoid axioms on the windowed instance."""
    B = P.base
    rep = ParsummableReport()
    objs = P.objects()
    supp = {x: B.support(x) for x in objs}
    if supp.get(P.zero, B.support(P.zero)):
        rep.fail("zero-support", zero=P.zero)
    table = P.sum_table()
    for x in objs:
        rep.count("unit")
        if P.add(P.zero, x) != x or P.add(x, P.zero) != x:
            rep.fail("unit", x=x)
    for (x, y), s in table.items():
        rep.count("commutativity")
        if table.get((y, x)) != s:
            rep.fail("commutativity", x=x, y=y, xy=s, yx=table.get((y, x)))
        rep.count("support")
        if not B.support(s) <= supp[x] | supp[y]:
            rep.fail("support", x=x, y=y, sum=s)
        rep.count("equivariance")
        points = B.footprint(x) | B.footprint(y) | B.footprint(s)
        for u in _probe_germs(points, P.window)[:germs_per_object]:
            try:
                moved = B.act(u, s)
            except InsufficientGermDomain:
                rep.fail("equivariance", x=x, y=y, sum=s, germ=u)
                continue
            if moved != P.add(B.act(u, x), B.act(u, y)):
                rep.fail("equivariance", x=x, y=y, germ=u)
            iso = B.structure_iso(u, s)
            if iso != P.add_mor(B.structure_iso(u, x), B.structure_iso(u, y)):
                rep.fail("structure-iso", x=x, y=y, germ=u)
        if B.group is not None:
            for g in B.group.elements:
                rep.count("group")
                if B.g_act(g, s) != P.add(B.g_act(g, x), B.g_act(g, y)):
                    rep.fail("group", x=x, y=y, g=g)
    for (x, y), s in table.items():
        for z in objs:
            if (s, z) in table and (y, z) in table and (x, table[(y, z)]) in table:
                rep.count("associativity")
                if table[(s, z)] != table[(x, table[(y, z)])]:
                    rep.fail("associativity", x=x, y=y, z=z)
    pairs = list(table)[:morphism_limit]
    for (x, y) in pairs:
        for (x2, y2) in pairs:
            for f, g in product(B.hom(x, x2), B.hom(y, y2)):
                rep.count("morphism-sum")
                h = P.add_mor(f, g)
                if h not in B.hom(table[(x, y)], table[(x2, y2)]):
                    rep.fail("morphism-sum", f=f, g=g)
    for (x, y) in pairs:
        rep.count("identity-sum")
        if P.add_mor(B.identity(x), B.identity(y)) != B.identity(table[(x, y)]):
            rep.fail("identity-sum", x=x, y=y)
    return rep


def terminal_parsummable():
    T = TrivialEM(terminal_category(), name="terminal")
    x = T.objects(1)[0]
    return ParsummableCategory(T, x, lambda a, b: x, lambda f, g: T.identity(x), 1, name="terminal")


def example_finite_subsets(window, max_size=None):
    """Finite subsets of the window, chaotic morphisms, zero the empty set, sum the disjoint union."""
    B = finite_subsets(max_size)
    return ParsummableCategory(B, frozenset(), lambda a, b: a | b,
                               lambda f, g: (f[0] | g[0], f[1] | g[1]), window, name="finite subsets")


class ParsummableSSet:
    """A simplicial set with action, a zero vertex and a levelwise sum on box pairs."""

    def __init__(self, base, zero, add, window, d, name=None):
        self.base = base
        self.zero = zero
        self._add = add
        self.window = window
        self.d = d
        self.name = name or f"parsummable {base.name}"

    def zero_simplex(self, n):
        z = self.zero
        for k in range(n):
            z = self.base.degen(k, 0, z)
        return z

    def add(self, n, x, y):
        if any(self.base.supp_k(x, k) & self.base.supp_k(y, k) for k in range(n + 1)):
            raise SupportsOverlap(f"{x!r} and {y!r} are not disjointly supported")
        return self._add(n, x, y)


def verify_parsummable_sset(P):
    X = P.base
    rep = ParsummableReport()
    box = ProductSSet(X, X, box=True)
    levels = [X.simplices(n, P.window) for n in range(P.d + 1)]
    for n in range(P.d + 1):
        z = P.zero_simplex(n)
        for x in levels[n]:
            rep.count("unit")
            if P.add(n, z, x) != x or P.add(n, x, z) != x:
                rep.fail("unit", n=n, x=x)
        pairs = box.simplices(n, P.window)
        sums = {}
        for x, y in pairs:
            s = P.add(n, x, y)
            sums[(x, y)] = s
            rep.count("commutativity")
            if P.add(n, y, x) != s:
                rep.fail("commutativity", n=n, x=x, y=y)
            if n > 0:
                for i in range(n + 1):
                    rep.count("simplicial")
                    if X.face(n, i, s) != P.add(n - 1, X.face(n, i, x), X.face(n, i, y)):
                        rep.fail("simplicial", n=n, i=i, x=x, y=y)
        if n <= 1:
            for (x, y), s in sums.items():
                for z in levels[n]:
                    if (s, z) in sums and (y, z) in sums and (x, sums[(y, z)]) in sums:
                        rep.count("associativity")
                        if sums[(s, z)] != sums[(x, sums[(y, z)])]:
                            rep.fail("associativity", n=n, x=x, y=y, z=z)
    return rep


def nerve_parsummable(P, d):
    """The nerve of a parsummable category with the vertexwise sum (x_i + y_i, f_i + g_i)."""
    N = NerveEM(P.base)

    def add(n, s, t):
        (ox, mx), (oy, my) = s, t
        return (tuple(P.add(a, b) for a, b in zip(ox, oy)), tuple(P.add_mor(f, g) for f, g in zip(mx, my)))

    return ParsummableSSet(N, ((P.zero,), ()), add, P.window, d, name=f"N({P.name})")


def nerve_sum_routes_agree(P, d):
    """Compare the vertexwise sum formula with N(+) after the box isomorphism of nerves."""
    NP = nerve_parsummable(P, d)
    iso, bijective = nerve_box_iso(P.base, P.base, P.window, d)
    for n in range(d + 1):
        for pair in iso.source.levels[n]:
            objs, mors = iso(n, pair)
            via_iso = (tuple(P.add(a, b) for a, b in objs), tuple(P.add_mor(f, g) for f, g in mors))
            if via_iso != NP.add(n, pair[0], pair[1]):
                return False
    return bijective


def warning_quotient_example(A, d=1):
    """E Inj(A) x Delta^1 with both ends E Inj(A) x {0} and E Inj(A) x {1} collapsed to one point."""
    base = ProductSSet(EInjSSet(A), simplex_product_trivial((1,), max(d, 1)))
    return QuotientSSet(base, lambda n, x: len(set(x[1])) == 1, name=f"E Inj({sorted(A)}) x D1 / ends")
