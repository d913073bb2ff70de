"""Truncated simplicial sets, nerves, the category of simplices, last vertex maps and integer homology."""

from dataclasses import dataclass, field
from itertools import product

from .combinatorics import DeltaMap, all_delta_maps
from .errors import DomainMismatch, InvalidStructure
from .fincat import FinCategory


class TruncatedSSet:
    """A simplicial set stored in levels 0..dim.

    Simplices are hashable values; faces and degeneracies are tabulated on
    construction from the supplied callables.  `face(n, i, x)` is d_i of the
    n-simplex x and `degen(n, j, x)` is s_j of x (defined for n < dim).
    """

    def __init__(self, levels, face, degen, dim=None, name=None, tags=None):
        self.levels = [list(L) for L in levels]
        self.dim = len(self.levels) - 1 if dim is None else dim
        if len(self.levels) != self.dim + 1:
            raise InvalidStructure("number of levels does not match the truncation")
        self.name = name
        self.tags = dict(tags or {})
        self._index = [{x: k for k, x in enumerate(L)} for L in self.levels]
        for n, L in enumerate(self.levels):
            if len(self._index[n]) != len(L):
                raise InvalidStructure(f"duplicate simplices in level {n}")
        self._faces = [dict() for _ in self.levels]
        self._degens = [dict() for _ in self.levels]
        for n in range(1, self.dim + 1):
            for x in self.levels[n]:
                self._faces[n][x] = tuple(face(n, i, x) for i in range(n + 1))
        for n in range(self.dim):
            for x in self.levels[n]:
                self._degens[n][x] = tuple(degen(n, j, x) for j in range(n + 1))
        self._nondeg = None

    def __repr__(self):
        return f"TruncatedSSet({self.name or ''}, sizes={[len(L) for L in self.levels]})"

    def simplices(self, n):
        return self.levels[n]

    def contains(self, n, x):
        return 0 <= n <= self.dim and x in self._index[n]

    def index(self, n, x):
        return self._index[n][x]

    def face(self, n, i, x):
        return self._faces[n][x][i]

    def faces(self, n, x):
        return self._faces[n][x]

    def degen(self, n, j, x):
        return self._degens[n][x][j]

    def vertex(self, n, x, k):
        """The k-th vertex of an n-simplex."""
        return self.restrict(DeltaMap(0, n, (k,)), x)

    def vertices(self, n, x):
        return tuple(self.vertex(n, x, k) for k in range(n + 1))

    def restrict(self, alpha, x):
        """alpha^* x for a DeltaMap alpha: [m] -> [n] and an n-simplex x."""
        image = sorted(set(alpha.values))
        y, level = x, alpha.n
        for i in reversed(range(alpha.n + 1)):
            if i not in image:
                y = self.face(level, i, y)
                level -= 1
        pos = {v: k for k, v in enumerate(image)}
        surj = tuple(pos[v] for v in alpha.values)
        return self._pull_surjection(surj, y)

    def _pull_surjection(self, s, y):
        m = len(s) - 1
        for j in range(m):
            if s[j] == s[j + 1]:
                rest = s[:j + 1] + s[j + 2:]
                return self.degen(m - 1, j, self._pull_surjection(rest, y))
        return y

    def is_degenerate(self, n, x):
        if n == 0:
            return False
        return any(self.degen(n - 1, j, self.face(n, j, x)) == x for j in range(n))

    def nondegenerate(self, n):
        if self._nondeg is None:
            self._nondeg = [[x for x in L if not self.is_degenerate(k, x)] for k, L in enumerate(self.levels)]
        return self._nondeg[n]

    def counts(self):
        return [len(L) for L in self.levels]

    def nondegenerate_counts(self):
        return [len(self.nondegenerate(n)) for n in range(self.dim + 1)]

    def validate(self):
        d = self.dim
        for n in range(1, d + 1):
            for x in self.levels[n]:
                for i in range(n + 1):
                    if self.face(n, i, x) not in self._index[n - 1]:
                        raise InvalidStructure("face leaves the simplicial set", counterexample=[n, i, repr(x)])
        for n in range(d):
            for x in self.levels[n]:
                for j in range(n + 1):
                    if self.degen(n, j, x) not in self._index[n + 1]:
                        raise InvalidStructure("degeneracy leaves the simplicial set", counterexample=[n, j, repr(x)])
        for n in range(2, d + 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j):
                        a = self.face(n - 1, i, self.face(n, j, x))
                        b = self.face(n - 1, j - 1, self.face(n, i, x))
                        if a != b:
                            raise InvalidStructure("d_i d_j != d_{j-1} d_i", counterexample=[n, i, j, repr(x)])
        for n in range(d):
            for x in self.levels[n]:
                for j in range(n + 1):
                    sx = self.degen(n, j, x)
                    for i in range(n + 2):
                        di = self.face(n + 1, i, sx)
                        if i < j:
                            want = self.degen(n - 1, j - 1, self.face(n, i, x))
                        elif i in (j, j + 1):
                            want = x
                        else:
                            want = self.degen(n - 1, j, self.face(n, i - 1, x))
                        if di != want:
                            raise InvalidStructure("face of degeneracy identity fails", counterexample=[n, i, j, repr(x)])
        for n in range(d - 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j + 1):
                        a = self.degen(n + 1, i, self.degen(n, j, x))
                        b = self.degen(n + 1, j + 1, self.degen(n, i, x))
                        if a != b:
                            raise InvalidStructure("s_i s_j != s_{j+1} s_i", counterexample=[n, i, j, repr(x)])
        return True

    def truncate(self, d):
        if d > self.dim:
            raise DomainMismatch("cannot raise the truncation level")
        return TruncatedSSet(self.levels[:d + 1], self.face, self.degen, d, name=self.name, tags=self.tags)


class SimplicialMap:
    def __init__(self, source, target, fn, name=None):
        self.source = source
        self.target = target
        self.name = name
        self.maps = [{x: (fn[n][x] if isinstance(fn, list) else fn(n, x)) for x in source.levels[n]}
                     for n in range(source.dim + 1)]

    def __call__(self, n, x):
        return self.maps[n][x]

    def validate(self):
        X, Y = self.source, self.target
        for n in range(X.dim + 1):
            for x in X.levels[n]:
                y = self.maps[n][x]
                if not Y.contains(n, y):
                    raise InvalidStructure("image is not a simplex of the target", counterexample=[n, repr(x)])
                if n > 0:
                    for i in range(n + 1):
                        if self.maps[n - 1][X.face(n, i, x)] != Y.face(n, i, y):
                            raise InvalidStructure("map does not commute with a face", counterexample=[n, i, repr(x)])
                if n < X.dim:
                    for j in range(n + 1):
                        if self.maps[n + 1][X.degen(n, j, x)] != Y.degen(n, j, y):
                            raise InvalidStructure("map does not commute with a degeneracy",
                                                   counterexample=[n, j, repr(x)])
        return True

    def then(self, g):
        return SimplicialMap(self.source, g.target, lambda n, x: g.maps[n][self.maps[n][x]])

    def equals(self, g):
        return all(self.maps[n] == g.maps[n] for n in range(min(len(self.maps), len(g.maps))))

    @classmethod
    def identity(cls, X):
        return cls(X, X, lambda n, x: x)


# constructions


def nerve(C, d):
    """Nerve of a finite category; an n-simplex is ((x_0..x_n), (f_1..f_n)) with f_i: x_{i-1} -> x_i."""
    levels = [[((x,), ()) for x in C.objects]]
    for n in range(1, d + 1):
        nxt = []
        for objs, mors in levels[-1]:
            for y, f in C.hom_from(objs[-1]):
                nxt.append((objs + (y,), mors + (f,)))
        levels.append(nxt)

    def face(n, i, s):
        objs, mors = s
        if i == 0:
            return objs[1:], mors[1:]
        if i == n:
            return objs[:-1], mors[:-1]
        return objs[:i] + objs[i + 1:], mors[:i - 1] + (C.compose(mors[i], mors[i - 1]),) + mors[i + 1:]

    def degen(n, j, s):
        objs, mors = s
        return objs[:j + 1] + objs[j:], mors[:j] + (C.identity(objs[j]),) + mors[j:]

    return TruncatedSSet(levels, face, degen, d, name=f"N({C.name or ''})")


def poset_nerve(elements, leq, d, name=None):
    """Nerve of a finite poset; simplices are weakly increasing tuples of elements."""
    els = list(elements)
    levels = [[(x,) for x in els]]
    for _ in range(d):
        levels.append([s + (y,) for s in levels[-1] for y in els if leq(s[-1], y)])
    return TruncatedSSet(levels, lambda n, i, s: s[:i] + s[i + 1:], lambda n, j, s: s[:j + 1] + s[j:], d, name=name)


def standard_simplex(n, d):
    return poset_nerve(range(n + 1), lambda a, b: a <= b, d, name=f"Delta^{n}")


def simplex_product(ms, d):
    """Nerve of the product poset of [m_a]; vertices are tuples aligned with the family, top vertex tagged."""
    ms = tuple(ms)
    verts = list(product(*[range(m + 1) for m in ms]))
    X = poset_nerve(verts, lambda p, q: all(a <= b for a, b in zip(p, q)), d, name=f"prod{ms}")
    X.tags["top"] = ms
    return X


def subcomplex(X, keep, name=None):
    """Sub-simplicial set of simplices satisfying keep(n, x); closure is checked."""
    levels = [[x for x in X.levels[n] if keep(n, x)] for n in range(X.dim + 1)]
    Y = TruncatedSSet(levels, X.face, X.degen, X.dim, name=name, tags=X.tags)
    for n in range(1, Y.dim + 1):
        for x in Y.levels[n]:
            for f in Y.faces(n, x):
                if not keep(n - 1, f):
                    raise InvalidStructure("subcomplex is not closed under faces", counterexample=[n, repr(x)])
    return Y


def boundary_simplex(n, d):
    full = set(range(n + 1))
    return subcomplex(standard_simplex(n, d), lambda k, s: set(s) != full, name=f"boundary Delta^{n}")


def collapse(X, in_sub, name=None):
    """Quotient of X by a subcomplex, which is sent to a single point."""
    base = lambda n: ("*", n)

    def cls(n, x):
        return base(n) if in_sub(n, x) else x

    levels = []
    for n in range(X.dim + 1):
        L = [x for x in X.levels[n] if not in_sub(n, x)]
        if any(in_sub(n, x) for x in X.levels[n]):
            L = [base(n)] + L
        levels.append(L)

    def face(n, i, x):
        return base(n - 1) if x == base(n) else cls(n - 1, X.face(n, i, x))

    def degen(n, j, x):
        return base(n + 1) if x == base(n) else cls(n + 1, X.degen(n, j, x))

    return TruncatedSSet(levels, face, degen, X.dim, name=name)


def disjoint_union(X, Y):
    d = min(X.dim, Y.dim)
    levels = [[(0, x) for x in X.levels[n]] + [(1, y) for y in Y.levels[n]] for n in range(d + 1)]
    side = (X, Y)
    return TruncatedSSet(levels, lambda n, i, s: (s[0], side[s[0]].face(n, i, s[1])),
                         lambda n, j, s: (s[0], side[s[0]].degen(n, j, s[1])), d)


def sset_product(X, Y):
    d = min(X.dim, Y.dim)
    levels = [[(x, y) for x in X.levels[n] for y in Y.levels[n]] for n in range(d + 1)]
    return TruncatedSSet(levels, lambda n, i, s: (X.face(n, i, s[0]), Y.face(n, i, s[1])),
                         lambda n, j, s: (X.degen(n, j, s[0]), Y.degen(n, j, s[1])), d)


def point(d):
    return standard_simplex(0, d)


# category of simplices and the last vertex map


def category_of_simplices(X, top=None):
    """Objects (n, x) for n <= top; a morphism (n,x) -> (k,y) is a DeltaMap alpha with alpha^* y = x."""
    top = X.dim if top is None else top
    objs = [(n, x) for n in range(top + 1) for x in X.levels[n]]
    maps = {(m, n): all_delta_maps(m, n) for m in range(top + 1) for n in range(top + 1)}
    hom = {}
    for k in range(top + 1):
        for y in X.levels[k]:
            for m in range(top + 1):
                for alpha in maps[(m, k)]:
                    x = X.restrict(alpha, y)
                    hom.setdefault(((m, x), (k, y)), []).append(((m, x), (k, y), alpha))
    return FinCategory(objs, hom, lambda g, f: (f[0], g[1], g[2].compose(f[2])),
                       lambda o: (o, o, DeltaMap.identity(o[0])), name="simplices")


def last_vertex_sigma(simplex):
    """The DeltaMap [k] -> [n_k] selecting the last vertices along a chain in the category of simplices."""
    objs, mors = simplex
    k = len(objs) - 1
    nk = objs[-1][0]
    vals = []
    for ell in range(k + 1):
        v = objs[ell][0]
        for f in mors[ell:]:
            v = f[2](v)
        vals.append(v)
    return DeltaMap(k, nk, tuple(vals))


def last_vertex_map(X, top=None, nerve_dim=None):
    """The map from the nerve of the category of simplices to X."""
    D = category_of_simplices(X, top)
    d = X.dim if nerve_dim is None else nerve_dim
    if d > X.dim:
        raise DomainMismatch("nerve truncation exceeds the truncation of X")
    N = nerve(D, d)

    def fn(k, s):
        return X.restrict(last_vertex_sigma(s), s[0][-1][1])

    return SimplicialMap(N, X, fn, name="last vertex")


# homology


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def smith_normal_form(M):
    """Return (D, U, V) with U*M*V = D diagonal, U and V unimodular, diagonal entries nonnegative and dividing."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [list(map(int, r)) for r in M]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for R in A:
            R[a], R[b] = R[b], R[a]
        for R in V:
            R[a], R[b] = R[b], R[a]

    def add_row(dst, src, c):
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for R in A:
            R[dst] += c * R[src]
        for R in V:
            R[dst] += c * R[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def invariant_factors(M):
    """Nonzero invariant factors of an integer matrix, given as a dict-of-dicts sparse matrix or dense rows."""
    if isinstance(M, dict):
        rows = {r: dict(v) for r, v in M.items() if v}
    else:
        rows = {i: {j: int(a) for j, a in enumerate(r) if a} for i, r in enumerate(M)}
        rows = {r: v for r, v in rows.items() if v}
    cols = {}
    for r, v in rows.items():
        for c in v:
            cols.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda r: len(rows[r])):
            row = rows.get(r)
            if row is None:
                continue
            best = None
            for c, a in row.items():
                if a in (1, -1) and (best is None or len(cols[c]) < len(cols[best])):
                    best = c
            if best is None:
                continue
            c = best
            a = row[c]
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                row2 = rows[r2]
                factor = row2[c] * a
                for c2, b in row.items():
                    nv = row2.get(c2, 0) - factor * b
                    if nv:
                        if c2 not in row2:
                            cols[c2].add(r2)
                        row2[c2] = nv
                    elif c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
                if not row2:
                    del rows[r2]
            for c2 in row:
                cols[c2].discard(r)
                if not cols[c2]:
                    del cols[c2]
            del rows[r]
            units += 1
            progress = True
    out = [1] * units
    if rows:
        rlist = sorted(rows)
        clist = sorted({c for v in rows.values() for c in v})
        ci = {c: k for k, c in enumerate(clist)}
        dense = [[0] * len(clist) for _ in rlist]
        for i, r in enumerate(rlist):
            for c, a in rows[r].items():
                dense[i][ci[c]] = a
        D, _, _ = smith_normal_form(dense)
        out += [D[i][i] for i in range(min(len(rlist), len(clist))) if D[i][i]]
    return out


def boundary_matrix(X, n, basis=None):
    """Sparse normalized boundary C_n -> C_{n-1} as {row index: {col index: coeff}} (rows are n-simplices)."""
    src = X.nondegenerate(n)
    tgt_index = {x: k for k, x in enumerate(X.nondegenerate(n - 1))}
    M = {}
    for r, x in enumerate(src):
        row = {}
        for i, y in enumerate(X.faces(n, x)):
            k = tgt_index.get(y)
            if k is not None:
                row[k] = row.get(k, 0) + (-1) ** i
        row = {k: v for k, v in row.items() if v}
        if row:
            M[r] = row
    return M


@dataclass
class HomologyReport:
    betti: list
    torsion: list
    top_unreliable: int
    notes: list = field(default_factory=list)

    def group(self, n):
        return (self.betti[n], tuple(self.torsion[n]))


def _chain_homology(sizes, boundaries, top):
    """Homology of a chain complex with free ranks `sizes` and sparse boundaries d_n: C_n -> C_{n-1}."""
    facts = {n: invariant_factors(boundaries[n]) for n in boundaries}
    betti, torsion = [], []
    for n in range(top + 1):
        r_n = len(facts.get(n, []))
        f_next = facts.get(n + 1, [])
        betti.append(sizes[n] - r_n - len(f_next))
        torsion.append(sorted(a for a in f_next if a > 1))
    return betti, torsion


def homology(X, d=None):
    """Integer homology in degrees below the truncation level (or <= d when d < dim)."""
    top = X.dim - 1 if d is None else min(d, X.dim - 1)
    sizes = [len(X.nondegenerate(n)) for n in range(X.dim + 1)]
    bds = {n: boundary_matrix(X, n) for n in range(1, top + 2)}
    betti, torsion = _chain_homology(sizes, bds, top)
    return HomologyReport(betti, torsion, top_unreliable=X.dim)


def components(X):
    parent = {v: v for v in X.levels[0]}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if X.dim >= 1:
        for e in X.levels[1]:
            a, b = find(X.face(1, 0, e)), find(X.face(1, 1, e))
            if a != b:
                parent[a] = b
    return {v: find(v) for v in X.levels[0]}


def mapping_cone_homology(f, d):
    """Homology of the mapping cone of the normalized chain map of f in degrees 0..d."""
    A, B = f.source, f.target
    if A.dim < d or B.dim < d + 1:
        raise DomainMismatch("mapping cone needs the source truncated at >= d and the target at >= d+1")
    a_idx = [{x: k for k, x in enumerate(A.nondegenerate(n))} for n in range(A.dim + 1)]
    b_idx = [{x: k for k, x in enumerate(B.nondegenerate(n))} for n in range(B.dim + 1)]
    a_size = [len(L) for L in a_idx]
    b_size = [len(L) for L in b_idx]

    def cone_size(n):
        return (a_size[n - 1] if n >= 1 else 0) + b_size[n]

    bds = {}
    for n in range(1, d + 2):
        M = {}
        # cone_n = A_{n-1} (+) B_n, indexed with A first, columns likewise
        off_next = a_size[n - 2] if n >= 2 else 0
        if n - 1 <= A.dim:
            for x, r in a_idx[n - 1].items():
                row = {}
                if n - 1 >= 1:
                    for i, y in enumerate(A.faces(n - 1, x)):
                        k = a_idx[n - 2].get(y)
                        if k is not None:
                            row[k] = row.get(k, 0) - (-1) ** i
                k = b_idx[n - 1].get(f.maps[n - 1][x])
                if k is not None:
                    row[off_next + k] = row.get(off_next + k, 0) + 1
                row = {c: v for c, v in row.items() if v}
                if row:
                    M[r] = row
        off = a_size[n - 1]
        for x, r in b_idx[n].items():
            row = {}
            for i, y in enumerate(B.faces(n, x)):
                k = b_idx[n - 1].get(y)
                if k is not None:
                    row[off_next + k] = row.get(off_next + k, 0) + (-1) ** i
            row = {c: v for c, v in row.items() if v}
            if row:
                M[off + r] = row
        bds[n] = M
    sizes = [cone_size(n) for n in range(d + 2)]
    return _chain_homology(sizes, bds, d)


@dataclass
class HomologyEquivalenceReport:
    pi0_bijective: bool
    cone_acyclic: bool
    top_degree_match: bool
    cone_betti: list
    cone_torsion: list

    def __bool__(self):
        return self.pi0_bijective and self.cone_acyclic and self.top_degree_match


def homology_equivalence_report(f, d):
    A, B = f.source, f.target
    if A.dim < d + 1 or B.dim < d + 1:
        raise DomainMismatch("both sides must be truncated at level >= d+1")
    ca, cb = components(A), components(B)
    image = {}
    ok = True
    for v, c in ca.items():
        t = cb[f.maps[0][v]]
        if image.setdefault(c, t) != t:
            ok = False
    comps_a = set(ca.values())
    targets = [image[c] for c in comps_a]
    if len(set(targets)) != len(targets) or set(targets) != set(cb.values()):
        ok = False
    betti, torsion = mapping_cone_homology(f, d)
    acyclic = all(b == 0 for b in betti) and all(not t for t in torsion)
    ha, hb = homology(A, d), homology(B, d)
    match = ha.group(d) == hb.group(d)
    return HomologyEquivalenceReport(ok, acyclic, match, betti, torsion)


def homology_equivalence_check(f, d):
    """True iff f is a bijection on components and an integer homology isomorphism in degrees <= d."""
    return bool(homology_equivalence_report(f, d))


def nerve_map(F, d):
    """N(F): N(source) -> N(target), truncated at level d."""
    return SimplicialMap(nerve(F.source, d), nerve(F.target, d),
                         lambda n, s: (tuple(F.obj[x] for x in s[0]), tuple(F.mor[f] for f in s[1])),
                         name=f"N({F.name or 'F'})")
