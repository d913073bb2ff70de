"""Finite encodings of the injection monoid, finite groups, universal actions and maps in the simplex category."""

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .errors import BudgetTooSmall, DomainMismatch, InvalidStructure, NoExtension


@dataclass(frozen=True)
class Window:
    """The initial segment {1, ..., n} of the positive integers."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidStructure(f"window size must be a positive integer, got {self.n!r}")

    def points(self):
        return tuple(range(1, self.n + 1))

    def __contains__(self, a):
        return 1 <= a <= self.n

    def __len__(self):
        return self.n


class Germ:
    """A finite injective partial map of the positive integers.

    Germs stand in for elements of the injection monoid: an element acts on
    finitely supported data only through its values on the support.
    """

    __slots__ = ("_map", "_pairs", "_hash")

    def __init__(self, mapping=()):
        m = dict(mapping)
        for a, b in m.items():
            if not (isinstance(a, int) and isinstance(b, int)) or a < 1 or b < 1:
                raise InvalidStructure(f"germ entries must be positive integers, got {a!r}->{b!r}")
        if len(set(m.values())) != len(m):
            raise InvalidStructure(f"germ is not injective: {sorted(m.items())}")
        self._map = m
        self._pairs = tuple(sorted(m.items()))
        self._hash = hash(self._pairs)

    @classmethod
    def identity(cls, domain):
        return cls({a: a for a in domain})

    @property
    def domain(self):
        return frozenset(self._map)

    @property
    def image(self):
        return frozenset(self._map.values())

    def pairs(self):
        return self._pairs

    def __call__(self, a):
        try:
            return self._map[a]
        except KeyError:
            raise DomainMismatch(f"{a} is not in the domain of {self}") from None

    def get(self, a, default=None):
        return self._map.get(a, default)

    def __contains__(self, a):
        return a in self._map

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        return isinstance(other, Germ) and self._pairs == other._pairs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ",".join(f"{a}->{b}" for a, b in self._pairs)
        return "Germ{" + inner + "}"

    def apply_set(self, A):
        m = self._map
        try:
            return frozenset([m[a] for a in A])
        except KeyError:
            raise DomainMismatch(f"{sorted(set(A) - m.keys())} not in the domain of {self}") from None

    def restrict(self, A):
        missing = set(A) - self.domain
        if missing:
            raise DomainMismatch(f"cannot restrict {self} to points {sorted(missing)} outside its domain")
        return Germ({a: self._map[a] for a in A})

    def covers(self, A):
        return self._map.keys() >= (A if isinstance(A, (set, frozenset)) else set(A))

    def fixes(self, A):
        return all(self._map.get(a) == a for a in A)

    def inverse(self):
        return Germ({b: a for a, b in self._map.items()})

    def union(self, other):
        merged = dict(self._map)
        for a, b in other._map.items():
            if a in merged and merged[a] != b:
                raise DomainMismatch(f"germs disagree at {a}")
            merged[a] = b
        return Germ(merged)

    def is_identity(self):
        return all(a == b for a, b in self._pairs)


def germ_compose(v, u):
    """Return v after u; defined when the image of u lies in the domain of v."""
    if not u.image <= v.domain:
        raise DomainMismatch(f"image of {u} is not contained in the domain of {v}")
    return Germ({a: v(b) for a, b in u.pairs()})


def germ_extend(u, w):
    """Extend u to an injection of the whole window, sending each free point to the smallest free target."""
    n = w.n if isinstance(w, Window) else int(w)
    points = range(1, n + 1)
    if not u.domain <= set(points):
        raise NoExtension(f"domain of {u} is not inside the window of size {n}")
    if not u.image <= set(points):
        raise NoExtension(f"image of {u} leaves the window of size {n}")
    used = set(u.image)
    out = dict(u.pairs())
    free_targets = (b for b in points if b not in used)
    for a in points:
        if a in out:
            continue
        try:
            out[a] = next(free_targets)
        except StopIteration:
            raise NoExtension(f"window of size {n} is too small to extend {u}") from None
    return Germ(out)


def injections(A, B):
    """All injections from the finite set A into the finite set B, as germs."""
    A = sorted(A)
    return [Germ(zip(A, img)) for img in permutations(sorted(B), len(A))]


def fresh_points(avoid, count, start=1):
    out = []
    a = start
    avoid = set(avoid)
    while len(out) < count:
        if a not in avoid:
            out.append(a)
        a += 1
    return out


def shift_witness(fixed, moved, avoid):
    """A germ fixing `fixed` pointwise and sending each point of `moved` to a fresh point.

    The fresh points avoid `avoid` (and the fixed set), so the moved points are
    not in the image of the witness.
    """
    fixed = sorted(set(fixed))
    moved = sorted(set(moved) - set(fixed))
    targets = fresh_points(set(avoid) | set(fixed) | set(moved), len(moved), start=1)
    mapping = {a: a for a in fixed}
    mapping.update(zip(moved, targets))
    return Germ(mapping)


def subsets(points, max_size=None):
    points = sorted(points)
    top = len(points) if max_size is None else min(max_size, len(points))
    out = []
    for k in range(top + 1):
        out.extend(frozenset(c) for c in combinations(points, k))
    return out


class FiniteGroup:
    """A finite group given by an exhaustive multiplication table."""

    def __init__(self, elements, mul, name=None):
        self.elements = list(elements)
        self.mul = dict(mul)
        self.name = name
        self._index = {g: i for i, g in enumerate(self.elements)}
        ids = [e for e in self.elements if all(self.mul[(e, g)] == g == self.mul[(g, e)] for g in self.elements)]
        if len(ids) != 1:
            raise InvalidStructure("group table has no unique identity")
        self.id = ids[0]
        self.inv = {}
        for g in self.elements:
            inverses = [h for h in self.elements if self.mul[(g, h)] == self.id]
            if len(inverses) != 1:
                raise InvalidStructure(f"element {g!r} has no unique inverse")
            self.inv[g] = inverses[0]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name or len(self.elements)})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.elements == other.elements and self.mul == other.mul

    def __hash__(self):
        return hash(tuple(self.elements))

    def __call__(self, g, h):
        return self.mul[(g, h)]

    def validate(self):
        E = self.elements
        for g, h in product(E, E):
            if self.mul.get((g, h)) not in self._index:
                raise InvalidStructure(f"product {g!r}*{h!r} is not an element", counterexample=[g, h])
        for g, h, k in product(E, E, E):
            if self.mul[(self.mul[(g, h)], k)] != self.mul[(g, self.mul[(h, k)])]:
                raise InvalidStructure("multiplication is not associative", counterexample=[g, h, k])
        return True

    def power(self, g, k):
        out = self.id
        for _ in range(k):
            out = self.mul[(out, g)]
        return out

    def generated(self, gens):
        got = {self.id}
        frontier = [self.id]
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    b = self.mul[(a, g)]
                    if b not in got:
                        got.add(b)
                        new.append(b)
            frontier = new
        return frozenset(got)

    def subgroups(self):
        # groups at desk scale are generated by at most two elements
        found = set()
        for g, h in product(self.elements, self.elements):
            found.add(self.generated([g, h]))
        return sorted(found, key=lambda K: (len(K), sorted(self._index[k] for k in K)))

    def conjugate(self, K, g):
        return frozenset(self.mul[(self.mul[(g, k)], self.inv[g])] for k in K)

    def subgroup_classes(self):
        classes = []
        seen = set()
        for K in self.subgroups():
            if K in seen:
                continue
            orbit = {self.conjugate(K, g) for g in self.elements}
            seen |= orbit
            classes.append(K)
        return classes

    def left_cosets(self, K):
        cosets = []
        seen = set()
        for g in self.elements:
            c = frozenset(self.mul[(g, k)] for k in K)
            if c not in seen:
                seen.add(c)
                cosets.append(c)
        return cosets

    def table(self):
        """Multiplication table as rows of element indices."""
        return [[self._index[self.mul[(g, h)]] for h in self.elements] for g in self.elements]

    def index(self, g):
        return self._index[g]


def trivial_group():
    return FiniteGroup(["e"], {("e", "e"): "e"}, name="1")


def cyclic_group(n):
    els = list(range(n))
    return FiniteGroup(els, {(a, b): (a + b) % n for a in els for b in els}, name=f"C{n}")


def symmetric_group(k):
    els = list(permutations(range(k)))
    mul = {(s, t): tuple(s[t[i]] for i in range(k)) for s in els for t in els}
    return FiniteGroup(els, mul, name=f"S{k}")


def group_from_table(table, name=None):
    n = len(table)
    els = list(range(n))
    mul = {(i, j): table[i][j] for i in els for j in els}
    return FiniteGroup(els, mul, name=name)


class GroupHom:
    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.map = dict(mapping)

    def __call__(self, h):
        return self.map[h]

    def validate(self):
        S, T = self.source, self.target
        for a, b in product(S.elements, S.elements):
            if self.map[S.mul[(a, b)]] != T.mul[(self.map[a], self.map[b])]:
                raise InvalidStructure("map is not multiplicative", counterexample=[a, b])
        return True

    def graph(self):
        """The graph subgroup {(h, phi(h))} of the product."""
        return [(h, self.map[h]) for h in self.source.elements]

    @classmethod
    def trivial(cls, source, target=None):
        target = target or trivial_group()
        return cls(source, target, {h: target.id for h in source.elements})

    @classmethod
    def identity(cls, group):
        return cls(group, group, {h: h for h in group.elements})


class WindowedUniversalAction:
    """An action of a finite group on a window by permutations."""

    def __init__(self, group, window, action, blocks=()):
        self.group = group
        self.window = window
        self.action = dict(action)
        self.blocks = list(blocks)
        self.fixed_points = frozenset(p for p in window.points() if all(self.action[(g, p)] == p for g in group.elements))
        self._germs = {g: Germ({p: self.action[(g, p)] for p in window.points()}) for g in group.elements}

    def __call__(self, g, p):
        return self.action[(g, p)]

    def germ(self, g):
        return self._germs[g]

    def orbit(self, p):
        return frozenset(self.action[(g, p)] for g in self.group.elements)

    def orbits(self):
        seen = set()
        out = []
        for p in self.window.points():
            if p not in seen:
                o = self.orbit(p)
                seen |= o
                out.append(o)
        return out

    def is_stable(self, T):
        T = set(T)
        return all(self.action[(g, t)] in T for g in self.group.elements for t in T)

    def validate(self):
        G, pts = self.group, self.window.points()
        for p in pts:
            if self.action[(G.id, p)] != p:
                raise InvalidStructure("identity does not act trivially", counterexample=[p])
        for g in G.elements:
            if sorted(self.action[(g, p)] for p in pts) != list(pts):
                raise InvalidStructure("element does not act by a bijection", counterexample=[G.index(g)])
        for g, h, p in product(G.elements, G.elements, pts):
            if self.action[(G.mul[(g, h)], p)] != self.action[(g, self.action[(h, p)])]:
                raise InvalidStructure("action is not multiplicative", counterexample=[G.index(g), G.index(h), p])
        if not self.fixed_points:
            raise InvalidStructure("no fixed point")
        return True


def universal_budget(H):
    return sum(len(H) // len(K) for K in H.subgroup_classes()) + 1


def make_universal_action(H, budget):
    """Lay out one copy of each transitive H-set H/K, smallest stabiliser first, then fixed points."""
    n = budget.n if isinstance(budget, Window) else int(budget)
    need = universal_budget(H)
    if n < need:
        raise BudgetTooSmall(f"group of order {len(H)} needs a window of at least {need}, got {n}")
    window = Window(n)
    action = {}
    blocks = []
    offset = 0
    for K in sorted(H.subgroup_classes(), key=len):
        cosets = H.left_cosets(K)
        position = {c: offset + i + 1 for i, c in enumerate(cosets)}
        for g in H.elements:
            for c in cosets:
                moved = frozenset(H.mul[(g, x)] for x in c)
                action[(g, position[c])] = position[moved]
        blocks.append((frozenset(K), tuple(sorted(position.values()))))
        offset += len(cosets)
    for p in range(offset + 1, n + 1):
        for g in H.elements:
            action[(g, p)] = p
    return WindowedUniversalAction(H, window, action, blocks)


@dataclass(frozen=True)
class DeltaMap:
    """A weakly monotone map [m] -> [n] in the simplex category."""

    m: int
    n: int
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if self.m < 0 or self.n < 0 or len(vals) != self.m + 1:
            raise InvalidStructure(f"DeltaMap [{self.m}]->[{self.n}] needs {self.m + 1} values, got {vals}",
                                   counterexample={"m": self.m, "n": self.n, "values": list(vals)})
        if any(v < 0 or v > self.n for v in vals):
            raise InvalidStructure(f"values {vals} leave [0, {self.n}]",
                                   counterexample={"m": self.m, "n": self.n, "values": list(vals)})
        for i in range(self.m):
            if vals[i] > vals[i + 1]:
                raise InvalidStructure(f"values {vals} are not weakly monotone at position {i}",
                                       counterexample={"m": self.m, "n": self.n, "values": list(vals), "position": i})

    def __call__(self, i):
        return self.values[i]

    def compose(self, other):
        """self after other."""
        if other.n != self.m:
            raise DomainMismatch("DeltaMaps are not composable")
        return DeltaMap(other.m, self.n, tuple(self.values[v] for v in other.values))

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def is_surjective(self):
        return set(self.values) == set(range(self.n + 1))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(range(n + 1)))

    @classmethod
    def coface(cls, n, i):
        """delta_i : [n-1] -> [n] skipping i."""
        return cls(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))

    @classmethod
    def codegeneracy(cls, n, j):
        """sigma_j : [n+1] -> [n] hitting j twice."""
        return cls(n + 1, n, tuple(k if k <= j else k - 1 for k in range(n + 2)))


def all_delta_maps(m, n):
    out = []

    def rec(prefix, lo):
        if len(prefix) == m + 1:
            out.append(DeltaMap(m, n, tuple(prefix)))
            return
        for v in range(lo, n + 1):
            rec(prefix + [v], v)

    rec([], 0)
    return out
