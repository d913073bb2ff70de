"""Named check suites, their configuration and deterministic reports."""

import hashlib
import json
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from itertools import permutations

from .combinatorics import Germ, cyclic_group, make_universal_action, symmetric_group
from .errors import MalformedInput, ParsumlabError, UnknownSuite
from .fincat import CatGAction, Functor, chaotic_category, check_equivalence, discrete_category, ordinal_category, \
    terminal_category

FORMATS = ("json", "text")
PROBE_GROUPS = ("trivial", "C2", "C3", "S3")


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    window: int = None
    truncate: int = None
    bounds: tuple = None
    seed: int = 0
    probe_groups: tuple = PROBE_GROUPS
    format: str = "json"
    jobs: int = 1

    def validated(self):
        if self.suite not in SUITES:
            raise UnknownSuite(f"unknown suite '{self.suite}'; known: {', '.join(sorted(SUITES))}")
        if self.format not in FORMATS:
            raise MalformedInput(f"format must be one of {FORMATS}")
        for name in ("window", "truncate", "jobs"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 1):
                raise MalformedInput(f"{name} must be a positive integer, got {v!r}")
        if self.bounds is not None:
            b = tuple(self.bounds)
            if len(b) != 3 or any(not isinstance(x, int) or isinstance(x, bool) or x < 1 for x in b):
                raise MalformedInput(f"bounds must be three positive integers a,s,m, got {self.bounds!r}")
        if not isinstance(self.seed, int):
            raise MalformedInput(f"seed must be an integer, got {self.seed!r}")
        unknown = set(self.probe_groups) - set(PROBE_GROUPS)
        if unknown:
            raise MalformedInput(f"unknown probe groups {sorted(unknown)}; known: {', '.join(PROBE_GROUPS)}")
        d = DEFAULTS.get(self.suite, {})
        return replace(self, window=self.window or d.get("window"), truncate=self.truncate or d.get("truncate"),
                       bounds=tuple(self.bounds) if self.bounds is not None else d.get("bounds"),
                       probe_groups=tuple(self.probe_groups))


@dataclass
class Record:
    check: str
    anchor: str
    fingerprint: str
    verdict: bool
    witness: dict = field(default_factory=dict)


@dataclass
class Report:
    suite: str
    config: dict
    records: list

    @property
    def ok(self):
        return all(r.verdict for r in self.records)

    def to_dict(self):
        from .io import envelope
        return envelope("report", {"suite": self.suite, "config": self.config, "passed": self.ok,
                                   "checks": [asdict(r) for r in self.records]})

    def to_json(self):
        from .io import dumps
        return dumps(self.to_dict())

    def to_text(self):
        lines = [f"suite {self.suite}"]
        for r in self.records:
            lines.append(f"{'PASS' if r.verdict else 'FAIL'}  {r.check}  ({r.anchor})  [{r.fingerprint}]")
            if not r.verdict:
                lines.append("      " + json.dumps(r.witness, sort_keys=True))
        lines.append(f"{sum(r.verdict for r in self.records)}/{len(self.records)} checks passed")
        return "\n".join(lines)

    def render(self, fmt):
        return self.to_json() if fmt == "json" else self.to_text()


def fingerprint(description):
    return hashlib.sha256(description.encode()).hexdigest()[:16]


def _plain(v):
    """JSON-friendly rendering of witnesses."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return repr(v)


def _law_outcome(rep, instance, laws=None):
    """Verdict and witness from a law report, optionally restricted to some laws."""
    violations = [v for v in rep.violations if laws is None or v["law"] in laws]
    checked = {k: n for k, n in rep.checked.items() if laws is None or k in laws}
    if laws is not None and not checked:
        return False, {"reason": "no instances of the law were checked", "laws": list(laws)}, instance
    witness = {"checked": checked}
    if violations:
        witness["violations"] = violations[:5]
    return not violations, witness, instance


# suite context: expensive instances shared by the checks of one run


class Context:
    """Shared per-run cache; each check gets its own seeded RNG so results do not depend on scheduling."""

    def __init__(self, config, cache=None, locks=None, check=""):
        self.config = config
        self.rng = random.Random(f"{config.seed}:{check}")
        self._cache = {} if cache is None else cache
        self._locks = {} if locks is None else locks
        self._guard = threading.Lock()

    def for_check(self, check):
        ctx = Context(self.config, self._cache, self._locks, check)
        ctx._guard = self._guard
        return ctx

    def get(self, key, build):
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            if key not in self._cache:
                self._cache[key] = build()
        return self._cache[key]

    def cx_bounds(self, window=None, d=2):
        from .cx import CXBounds
        a, s, m = self.config.bounds
        return CXBounds(a_max=a, s_max=s, m_max=m, window=window or self.config.window, d=d)

    def sample(self, items, k):
        items = list(items)
        if len(items) <= k:
            return items
        picks = sorted(self.rng.sample(range(len(items)), k))
        return [items[i] for i in picks]


# support calculus


def _support_check(k):
    def run(ctx):
        from .em import einj, einj_restrictions, support_calculus_report
        A = tuple(range(1, k + 1))
        w = ctx.config.window
        if k > ctx.config.bounds[0]:
            return True, {"skipped": f"|A| = {k} exceeds the bound a = {ctx.config.bounds[0]}"}, f"E Inj({list(A)})"
        rep = support_calculus_report(einj(A), w, einj_restrictions(A))
        if not any(rep.checked.values()):
            return False, {"reason": f"window {w} holds no instances for |A| = {k}"}, f"E Inj({list(A)}) window {w}"
        return _law_outcome(rep, f"E Inj({list(A)}) window {w}")
    return run


# simplicial supports


def _ksupport_instances():
    from .em import EInjSSet, NerveEM, ProductSSet, einj, finite_subsets, simplex_product_trivial
    return {"nerve-einj": lambda d: NerveEM(einj({1})),
            "nerve-subsets": lambda d: NerveEM(finite_subsets(1)),
            "product": lambda d: ProductSSet(EInjSSet({1}), simplex_product_trivial((1,), max(d, 1)))}


def _ksupport_check(name):
    def run(ctx):
        from .em import simplicial_support_report
        X = _ksupport_instances()[name](ctx.config.truncate)
        return _law_outcome(simplicial_support_report(X, ctx.config.window, ctx.config.truncate),
                            f"{X.name} window {ctx.config.window} d {ctx.config.truncate}")
    return run


def _warning_check(ctx):
    from .em import warning_quotient_report
    return _law_outcome(warning_quotient_report({1}, ctx.config.window), f"Warning quotient A=[1] window {ctx.config.window}")


# corepresentability


def _corep_instances():
    from .em import NerveEM, einj, finite_subsets
    from .parsummable import warning_quotient_example
    return {"nerve-einj": (lambda d: NerveEM(einj({1})), {1, 2}),
            "nerve-subsets": (lambda d: NerveEM(finite_subsets()), {1, 2}),
            "warning-quotient": (lambda d: warning_quotient_example({1}, d), {1})}


def _corep_check(name):
    def run(ctx):
        from .em import corep_roundtrip
        make, A = _corep_instances()[name]
        d, w = ctx.config.truncate, ctx.config.window
        X = make(d)
        total, failures = 0, []
        for n in range(min(d, 1) + 1):
            count, fails = corep_roundtrip(X, A, w, d, n)
            total += count
            failures += fails
        witness = {"simplices": total}
        if failures:
            witness["failures"] = failures[:5]
        return not failures and total > 0, witness, f"{X.name} A={sorted(A)} window {w} d {d}"
    return run


# rho laws


RHO_LAWS = ("equivariance", "composite", "identity", "box-iso", "pullback")


def _rho_report(ctx):
    from .cx_monoidal import verify_rho_laws
    a, s, m = ctx.config.bounds
    shapes = [sh for sh in [((1,), (2,), (1,)), ((1, 2), (3,), (1, 1)), ((), (1, 2), ()), ((1,), (2, 3), (0,))]
              if len(sh[0]) <= a and len(sh[1]) <= s and all(v <= m for v in sh[2])]
    return ctx.get("rho", lambda: verify_rho_laws(shapes, ctx.config.window, ctx.config.truncate)), shapes


def _rho_check(law):
    def run(ctx):
        rep, shapes = _rho_report(ctx)
        return _law_outcome(rep, f"rho shapes {shapes} window {ctx.config.window} d {ctx.config.truncate}", [law])
    return run


# monoidal layer


def _point_cx(ctx):
    def build():
        from .cx import CX
        from .em import trivial_point
        cx = CX(trivial_point(4), ctx.cx_bounds(d=ctx.config.truncate + 1))
        return cx, cx.category()
    return ctx.get("point-cx", build)


def _nabla_check(ctx):
    from .cx_monoidal import verify_nabla_coherence
    cx, C = _point_cx(ctx)
    mors = ctx.sample(C.morphisms(), 60)
    return _law_outcome(verify_nabla_coherence(cx, C.objects, mors),
                        f"C_* bounds {cx.bounds} objects {len(C.objects)} morphisms {len(mors)}")


def _nerve_box_check(ctx):
    from .em import einj, finite_subsets, nerve_box_iso
    witness, ok = {}, True
    for C, D in [(einj({1}), einj({2})), (finite_subsets(1), finite_subsets(1))]:
        f, bijective = nerve_box_iso(C, D, ctx.config.window, ctx.config.truncate + 1)
        witness[f"{C.name} [x] {D.name}"] = {"bijective": bijective, "simplices": f.source.counts()}
        ok = ok and bijective
    return ok, witness, f"nerve box iso window {ctx.config.window} d {ctx.config.truncate + 1}"


def _epsilon_monoidal_check(ctx):
    from .cx_monoidal import verify_epsilon_monoidal
    cx, C = _point_cx(ctx)
    return _law_outcome(verify_epsilon_monoidal(cx, C, d=ctx.config.truncate, limit=2000),
                        f"C_* bounds {cx.bounds} d {ctx.config.truncate}")


def _epsilon_tilde_monoidal_check(ctx):
    from .cx import CX, CXBounds
    from .cx_monoidal import verify_epsilon_tilde_monoidal
    from .em import NerveEM, finite_subsets
    a, s, m = ctx.config.bounds
    cx = CX(NerveEM(finite_subsets()), CXBounds(a_max=min(a, 1), s_max=min(s, 1), m_max=min(m, 1), window=2))
    C = cx.category()
    mors = ctx.sample(C.morphisms(), 100)
    return _law_outcome(verify_epsilon_tilde_monoidal(cx, cx, C.objects, C.objects, mors, mors),
                        f"C_N(finite subsets) bounds {cx.bounds} morphisms {len(mors)}")


def _lift_check(ctx):
    from .cx import CXBounds
    from .cx_monoidal import cx_parsummable_lift
    from .parsummable import example_finite_subsets, nerve_parsummable, verify_parsummable
    P = nerve_parsummable(example_finite_subsets(3), 2)
    L = cx_parsummable_lift(P, CXBounds(a_max=1, s_max=1, m_max=1, window=2))
    return _law_outcome(verify_parsummable(L, morphism_limit=40), "C_N(finite subsets) parsummable lift window 2")


# last vertex maps


def _classical_lv_check(name):
    def run(ctx):
        from .sset import boundary_simplex, homology_equivalence_report, last_vertex_map, standard_simplex
        d = ctx.config.truncate
        X = {"D0": lambda: standard_simplex(0, d + 1), "D1": lambda: standard_simplex(1, d + 1),
             "dD2": lambda: boundary_simplex(2, d + 1)}[name]()
        f = last_vertex_map(X)
        f.validate()
        h = homology_equivalence_report(f, d)
        return bool(h), _plain(asdict(h)), f"last vertex {name} d {d}"
    return run


def _cx_epsilon_check(which):
    def run(ctx):
        from .cx import CX, epsilon
        from .em import NerveEM, finite_subsets, trivial_point
        from .sset import homology_equivalence_report
        d, w = ctx.config.truncate, ctx.config.window
        X = trivial_point(d + 3) if which == "point" else NerveEM(finite_subsets())
        cx = CX(X, ctx.cx_bounds(w, d + 1))
        C = cx.category()
        e = epsilon(cx, C, X.to_sset(w, d + 1), d + 1)
        h = homology_equivalence_report(e, d)
        return bool(h), {"objects": len(C.objects), **_plain(asdict(h))}, f"epsilon on C_{X.name} bounds {cx.bounds}"
    return run


# fixed points, weak saturation, non-saturation


def _fixed_setup(ctx):
    def build():
        from .cx import CX
        from .cx_fixed import cx_fixed_and_homotopy_fixed
        from .em import trivial_point
        U = make_universal_action(cyclic_group(2), ctx.config.window)
        T = frozenset({1, 2, 3})
        cx = CX(trivial_point(4), ctx.cx_bounds(3, 2))
        phi = lambda h: None
        return cx, U, phi, T, cx_fixed_and_homotopy_fixed(cx, U, phi, T)
    return ctx.get("fixed", build)


def _fixed_report(ctx):
    from .cx_fixed import fixed_point_reduction_check
    cx, U, phi, T, data = _fixed_setup(ctx)
    return ctx.get("fixed-report", lambda: fixed_point_reduction_check(cx, U, phi, T, top=1, d=ctx.config.truncate,
                                                                        data=data))


def _fixed_instance(ctx):
    cx, U, _, T, data = _fixed_setup(ctx)
    return f"C_* C2 budget {U.window.n} T {sorted(T)} bounds {cx.bounds}"


def _fixed_last_vertex(ctx):
    rep = _fixed_report(ctx)
    return rep.last_vertex_ok, {"fixed_objects": len(rep.slices)}, _fixed_instance(ctx)


def _fixed_slices(ctx):
    rep = _fixed_report(ctx)
    bad = [asdict(s) for s in rep.slices if not s.equivalence]
    return not bad and bool(rep.slices), {"slices": len(rep.slices), "failures": bad[:3]}, _fixed_instance(ctx)


def _fixed_terminal(ctx):
    rep = _fixed_report(ctx)
    bad = [s.object for s in rep.slices if not s.terminal]
    return not bad and bool(rep.slices), {"slices": len(rep.slices), "without_terminal": bad[:3]}, _fixed_instance(ctx)


def _weak_saturation_check(ctx):
    from .cx_fixed import weak_saturation_check
    cx, U, phi, T, data = _fixed_setup(ctx)
    rep = weak_saturation_check(cx, U, phi, T, d=ctx.config.truncate, data=data)
    bad = [asdict(s) for s in rep.slices if not (s.equivalence and s.terminal)]
    return rep.ok, {"homology": _plain(asdict(rep.homology)), "fixed": rep.fixed_count,
                    "homotopy_fixed": rep.homotopy_fixed_count, "angle": rep.angle_count,
                    "slices": len(rep.slices), "slice_failures": bad[:3]}, _fixed_instance(ctx)


def _nonsat_witness(ctx):
    def build():
        from .cx import CX
        from .cx_fixed import nonsaturation_witness
        from .em import NerveEM, finite_subsets
        w = ctx.config.window
        U = make_universal_action(cyclic_group(2), w)
        cx = CX(NerveEM(finite_subsets()), ctx.cx_bounds(w, 2))
        x = ((frozenset({5}),), ())
        return nonsaturation_witness(cx, U, x, (1, 2)), f"C_N(finite subsets) C2 window {w} T [1, 2] x {{5}}"
    return ctx.get("nonsat", build)


def _nonsat_check(part):
    def run(ctx):
        w, instance = _nonsat_witness(ctx)
        verdict = {"homotopy-fixed": w.cocycle_ok,
                   "endpoint-actions": w.endpoint_trivial[0] != w.endpoint_trivial[1],
                   "not-fixed": not w.isomorphic_fixed and w.holds}[part]
        return verdict, w.to_dict(), instance
    return run


# saturation


def _saturation_report(ctx):
    def build():
        from .em import TrivialEM
        from .saturation import saturation_check
        w = ctx.config.window
        C = TrivialEM(chaotic_category(["a", "b"]), name="chaotic on two objects")
        U = make_universal_action(cyclic_group(2), w)
        return saturation_check(C, w, U, lambda h: None, 1), f"chaotic on two objects window {w} C2"
    return ctx.get("sat", build)


def _saturation_check(part):
    def run(ctx):
        rep, instance = _saturation_report(ctx)
        verdict = {"fully-faithful": rep.s_equivalence.fully_faithful,
                   "essentially-surjective": rep.s_equivalence.essentially_surjective,
                   "probe": rep.probe_essentially_surjective}[part]
        return verdict, {"objects": rep.objects, "probe_counts": rep.probe_counts,
                         "counterexample": _plain(rep.s_equivalence.counterexample)}, instance
    return run


# strictification


def _symmon_samples():
    from .symmon import (StrongMonFunctor, capped_finite_sets, forget_labels, relabelled_copy, terminal_symmon,
                         to_terminal)
    C3 = capped_finite_sets(3)
    C1 = capped_finite_sets(1)
    R = relabelled_copy(C1, labels=2)
    T = terminal_symmon()
    return {"finite-sets": (C3, [StrongMonFunctor.identity(C3), to_terminal(C3)]),
            "relabelled": (R, [StrongMonFunctor.identity(R), to_terminal(R), forget_labels(R, C1)]),
            "terminal": (T, [StrongMonFunctor.identity(T)])}


def _strictify_check(name):
    def run(ctx):
        from .symmon import strictify_report
        C, samples = _symmon_samples()[name]
        _, rep = strictify_report(C, samples)
        return _law_outcome(rep, f"{C.name} objects {len(C.objects)} samples {len(samples)}")
    return run


def _strictify_functoriality(ctx):
    from .symmon import capped_finite_sets, forget_labels, functoriality_report, relabelled_copy, to_terminal
    C1 = capped_finite_sets(1)
    R = relabelled_copy(C1, labels=2)
    return _law_outcome(functoriality_report(forget_labels(R, C1), to_terminal(C1)), "forget labels then terminal")


def _permutative_check(ctx):
    from .symmon import capped_finite_sets, is_permutative, relabelled_copy, terminal_symmon
    C = capped_finite_sets(3)
    got = {"finite-sets": is_permutative(C), "terminal": is_permutative(terminal_symmon()),
           "relabelled": is_permutative(relabelled_copy(capped_finite_sets(1), labels=2))}
    want = {"finite-sets": True, "terminal": True, "relabelled": False}
    return got == want, {"got": got, "expected": want}, "permutativity predicate"


# G-global checks


def _probe_pairs(ctx, G):
    from .symmon import default_probe_pairs
    return default_probe_pairs(G, ctx.config.probe_groups)


def _swap_to_point():
    C = chaotic_category(["a", "b"], name="chaotic {a, b}")
    G = cyclic_group(2)
    swap = Functor(C, C, lambda x: "b" if x == "a" else "a", lambda f: tuple("b" if x == "a" else "a" for x in f))
    A = CatGAction(C, G, {0: Functor.identity(C), 1: swap})
    P = terminal_category()
    return Functor.constant(C, P, "*"), A, CatGAction.trivial(P, G)


def _gglobal_equivalence(ctx):
    from .symmon import g_global_we_check
    f, A, B = _swap_to_point()
    rep = g_global_we_check(f, A, B, _probe_pairs(ctx, A.group), ctx.config.truncate)
    return rep.ok, {"probes": [{"group": p.group, "ok": p.ok} for p in rep.probes]}, "chaotic {a, b} with swap -> point"


def _gglobal_trivial(ctx):
    from .combinatorics import GroupHom, trivial_group
    from .sset import homology_equivalence_check, nerve_map
    from .symmon import g_global_we_check
    from .symmon import antipodal_sphere
    out = {}
    for name, (P, A) in {"S1": antipodal_sphere(1), "S2": antipodal_sphere(2)}.items():
        T = terminal_category()
        f = Functor.constant(P, T, "*")
        H = trivial_group()
        rep = g_global_we_check(f, A, CatGAction.trivial(T, A.group), [(H, GroupHom.trivial(H, A.group))],
                                ctx.config.truncate)
        plain = homology_equivalence_check(nerve_map(f, ctx.config.truncate + 1), ctx.config.truncate)
        out[name] = {"trivial_probe": rep.ok, "plain": plain}
    return all(v["trivial_probe"] == v["plain"] for v in out.values()), out, "antipodal spheres -> point, trivial H"


def _gglobal_detects(ctx):
    from .symmon import antipodal_sphere, g_global_we_check
    P, A = antipodal_sphere(2)
    T = terminal_category()
    f = Functor.constant(P, T, "*")
    rep = g_global_we_check(f, A, CatGAction.trivial(T, A.group), _probe_pairs(ctx, A.group), ctx.config.truncate)
    plain = [p.ok for p in rep.probes if p.group == "1"]
    failing = [{"group": p.group, "phi": p.phi, "source_objects": p.source_objects} for p in rep.failures()]
    detected = all(plain) and bool(plain) and bool(failing)
    return detected, {"plain_passes": all(plain), "failing_probes": failing}, "antipodal S^2 -> point"


def _gglobal_conjugation(ctx):
    from .combinatorics import GroupHom
    from .symmon import g_global_we_check
    G = symmetric_group(3)
    out = []
    for C in (chaotic_category(range(3), name="chaotic 3"), discrete_category(range(3), name="discrete 3")):
        def act(g, C=C):
            return Functor(C, C, lambda x: g[x], lambda f: (g[f[0]], g[f[1]]))
        A = CatGAction(C, G, {g: act(g) for g in G.elements})
        T = terminal_category()
        f = Functor.constant(C, T, "*")
        B = CatGAction.trivial(T, G)
        for H, phi in _probe_pairs(ctx, G):
            verdicts = set()
            for c in G.elements:
                ci = G.inv[c]
                conj = GroupHom(H, G, {h: G.mul[(G.mul[(c, phi(h))], ci)] for h in H.elements})
                verdicts.add(g_global_we_check(f, A, B, [(H, conj)], ctx.config.truncate).ok)
            out.append({"category": C.name, "group": H.name, "invariant": len(verdicts) == 1, "verdict": verdicts.pop()})
    return all(r["invariant"] for r in out), {"probes": out}, "S3 permuting 3 objects, all conjugates"


def _zigzag_check(ctx):
    from .em import einj
    from .symmon import triv_action_zigzag_check
    w = ctx.config.window
    U = [Germ(dict(zip(range(1, w + 1), p))) for p in permutations(range(1, w + 1))]
    rep = triv_action_zigzag_check(einj({1}), U, w)
    return rep.ok, _plain(asdict(rep)), f"E Inj([1]) window {w} germs {len(U)}"


# parsummable


def _parsummable_check(which):
    def run(ctx):
        from .parsummable import (example_finite_subsets, nerve_parsummable, nerve_sum_routes_agree,
                                  terminal_parsummable, verify_parsummable, verify_parsummable_sset)
        w, d = ctx.config.window, ctx.config.truncate
        if which == "finite-subsets":
            return _law_outcome(verify_parsummable(example_finite_subsets(w)), f"finite subsets window {w}")
        if which == "terminal":
            return _law_outcome(verify_parsummable(terminal_parsummable()), "terminal")
        if which == "nerve":
            return _law_outcome(verify_parsummable_sset(nerve_parsummable(example_finite_subsets(w), d)),
                                f"N(finite subsets) window {w} d {d}")
        ok = nerve_sum_routes_agree(example_finite_subsets(w), d)
        return ok, {"agree": ok}, f"N(finite subsets) window {w} d {d}"
    return run


def _roundtrip_check(ctx):
    from .io import dumps, load, save, tabulate
    from .parsummable import example_finite_subsets
    T = tabulate(example_finite_subsets(ctx.config.window))
    back = load(dumps(save(T)))
    return back == T, {"objects": len(T.category.objects), "sums": len(T.sums)}, f"tabulated finite subsets window {ctx.config.window}"


# negative controls


def corrupted_sum_document(window=3):
    """The tabulated finite-subsets instance with one sum entry pointing at the wrong object."""
    from .io import save, tabulate
    from .parsummable import example_finite_subsets
    doc = save(tabulate(example_finite_subsets(window)))
    rows = doc["data"]["sums"]
    n = len(doc["data"]["category"]["objects"])
    row = next(r for r in rows if r[0] != doc["data"]["zero"] and r[1] != doc["data"]["zero"])
    row[2] = (row[2] + 1) % n
    return doc


def nonmonotone_delta_document():
    from .io import envelope
    return envelope("delta_map", {"m": 2, "n": 2, "values": [0, 2, 1]})


def non_equivalence_document():
    from .io import save
    return save(Functor.constant(ordinal_category(1), terminal_category(), "*"))


def _negative_check(which):
    def run(ctx):
        from .io import load, validate_document
        if which == "functor":
            doc = non_equivalence_document()
            F = load(doc)
            rep = check_equivalence(F)
            rejected = not rep
            witness = {"counterexample": _plain(rep.counterexample), "instance": doc}
            return rejected and bool(rep.counterexample), witness, "[1] -> point"
        doc = corrupted_sum_document() if which == "sum-table" else nonmonotone_delta_document()
        ok, counterexample = validate_document(doc)
        return (not ok) and bool(counterexample), {"rejected": not ok, "counterexample": _plain(counterexample)}, \
            f"negative control {which}"
    return run


# registry


def _checks(*rows):
    return [(cid, anchor, fn) for cid, anchor, fn in rows]


SUITES = {
    "support-calculus": _checks(
        ("support.einj.A1", "support of an injection is its image; translates and fixing germs", _support_check(1)),
        ("support.einj.A2", "support of an injection is its image; translates and fixing germs", _support_check(2)),
        ("support.einj.A3", "support of an injection is its image; translates and fixing germs", _support_check(3))),
    "simplicial-support": _checks(
        ("ksupport.nerve-einj", "k-supports: translation and restriction laws", _ksupport_check("nerve-einj")),
        ("ksupport.nerve-subsets", "k-supports: translation and restriction laws", _ksupport_check("nerve-subsets")),
        ("ksupport.product", "k-supports: translation and restriction laws", _ksupport_check("product")),
        ("ksupport.warning-quotient", "collapsed ends: empty vertex support, edge support i(A)", _warning_check)),
    "corepresentability": _checks(
        ("corep.nerve-einj", "evaluation at the inclusion is a bijection", _corep_check("nerve-einj")),
        ("corep.nerve-subsets", "evaluation at the inclusion is a bijection", _corep_check("nerve-subsets")),
        ("corep.warning-quotient", "evaluation at the inclusion is a bijection", _corep_check("warning-quotient"))),
    "rho-laws": _checks(*[(f"rho.{law}", f"restriction maps: {law}", _rho_check(law)) for law in RHO_LAWS]),
    "monoidal": _checks(
        ("nabla.coherence", "product of C_X objects: unit, associativity, symmetry, functoriality", _nabla_check),
        ("nerve.box-iso", "nerve takes box products to box products", _nerve_box_check),
        ("epsilon.monoidal", "last vertex map is monoidal", _epsilon_monoidal_check),
        ("epsilon-tilde.monoidal", "last vertex functor is monoidal", _epsilon_tilde_monoidal_check),
        ("parsummable.lift", "C_X of a parsummable simplicial set is parsummable", _lift_check)),
    "last-vertex": _checks(
        ("last-vertex.D0", "classical last vertex map is a weak equivalence", _classical_lv_check("D0")),
        ("last-vertex.D1", "classical last vertex map is a weak equivalence", _classical_lv_check("D1")),
        ("last-vertex.dD2", "classical last vertex map is a weak equivalence", _classical_lv_check("dD2")),
        ("epsilon.point", "last vertex map of C_X is a weak equivalence", _cx_epsilon_check("point")),
        ("epsilon.subsets", "last vertex map of C_X is a weak equivalence", _cx_epsilon_check("subsets"))),
    "fixed-points": _checks(
        ("fixed.last-vertex", "i followed by epsilon is the last vertex map on fixed points", _fixed_last_vertex),
        ("fixed.slices", "slices of i reduce to simplex categories of K", _fixed_slices),
        ("fixed.terminal", "each K has a terminal object", _fixed_terminal)),
    "weak-saturation": _checks(
        ("weak-saturation.point", "C_X is weakly saturated", _weak_saturation_check)),
    "nonsaturation": _checks(
        ("nonsaturation.homotopy-fixed", "the constructed functor is homotopy fixed", _nonsat_check("homotopy-fixed")),
        ("nonsaturation.endpoint-actions", "edge-slice actions differ: one trivial, one not", _nonsat_check("endpoint-actions")),
        ("nonsaturation.not-fixed", "C_X is not saturated", _nonsat_check("not-fixed"))),
    "saturation": _checks(
        ("saturation.s-fully-faithful", "s is fully faithful", _saturation_check("fully-faithful")),
        ("saturation.s-essentially-surjective", "s is essentially surjective", _saturation_check("essentially-surjective")),
        ("saturation.probe", "the saturation is saturated for the probe group", _saturation_check("probe"))),
    "strictification": _checks(
        ("strictify.finite-sets", "strictly unital replacement and its universal property", _strictify_check("finite-sets")),
        ("strictify.relabelled", "strictly unital replacement and its universal property", _strictify_check("relabelled")),
        ("strictify.terminal", "strictly unital replacement and its universal property", _strictify_check("terminal")),
        ("strictify.functoriality", "the replacement is functorial", _strictify_functoriality),
        ("permutative.predicate", "permutative means identity associator and unitors", _permutative_check)),
    "g-global": _checks(
        ("g-global.equivalence", "underlying equivalences are G-global weak equivalences", _gglobal_equivalence),
        ("g-global.trivial-group", "trivial H reduces to the plain nerve", _gglobal_trivial),
        ("g-global.detects", "a plain equivalence failing on fixed data is detected", _gglobal_detects),
        ("g-global.conjugation", "verdict invariant under conjugating phi", _gglobal_conjugation),
        ("zigzag.einj", "trivial-action zig-zag legs are equivalences", _zigzag_check)),
    "parsummable": _checks(
        ("parsummable.finite-subsets", "finite subsets under disjoint union", _parsummable_check("finite-subsets")),
        ("parsummable.terminal", "terminal parsummable category", _parsummable_check("terminal")),
        ("parsummable.nerve", "nerve of a parsummable category", _parsummable_check("nerve")),
        ("parsummable.nerve-routes", "levelwise sum agrees with the box isomorphism", _parsummable_check("routes")),
        ("parsummable.round-trip", "serialization round trip", _roundtrip_check)),
    "negative-controls": _checks(
        ("negative.sum-table", "corrupted sum table is rejected", _negative_check("sum-table")),
        ("negative.delta-map", "non-monotone map is rejected", _negative_check("delta-map")),
        ("negative.functor", "non-equivalence is rejected", _negative_check("functor"))),
}

DEFAULTS = {
    "support-calculus": {"window": 8, "truncate": 1, "bounds": (3, 1, 1)},
    "simplicial-support": {"window": 8, "truncate": 2, "bounds": (1, 1, 1)},
    "corepresentability": {"window": 3, "truncate": 2, "bounds": (2, 1, 1)},
    "rho-laws": {"window": 3, "truncate": 1, "bounds": (2, 2, 1)},
    "monoidal": {"window": 3, "truncate": 1, "bounds": (2, 2, 1)},
    "last-vertex": {"window": 1, "truncate": 1, "bounds": (1, 1, 2)},
    "fixed-points": {"window": 12, "truncate": 1, "bounds": (1, 3, 1)},
    "weak-saturation": {"window": 12, "truncate": 1, "bounds": (1, 3, 1)},
    "nonsaturation": {"window": 10, "truncate": 1, "bounds": (1, 3, 1)},
    "saturation": {"window": 6, "truncate": 1, "bounds": (1, 1, 1)},
    "strictification": {"window": 1, "truncate": 1, "bounds": (1, 1, 1)},
    "g-global": {"window": 3, "truncate": 1, "bounds": (1, 1, 1)},
    "parsummable": {"window": 3, "truncate": 2, "bounds": (1, 1, 1)},
    "negative-controls": {"window": 3, "truncate": 1, "bounds": (1, 1, 1)},
}


def _run_check(ctx, cid, anchor, fn):
    try:
        verdict, witness, instance = fn(ctx.for_check(cid))
    except ParsumlabError as exc:
        verdict, witness, instance = False, {"error": type(exc).__name__, "message": str(exc)}, cid
    witness = _plain(witness)
    if not verdict and not witness:
        witness = {"reason": "check failed without further detail"}
    return Record(cid, anchor, fingerprint(f"{cid}|{instance}"), bool(verdict), witness)


def run_suite(config):
    """Run every check of the configured suite in registry order."""
    if not isinstance(config, SuiteConfig):
        raise MalformedInput("run_suite expects a SuiteConfig")
    config = config.validated()
    ctx = Context(config)
    checks = SUITES[config.suite]
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(lambda row: _run_check(ctx, *row), checks))
    else:
        records = [_run_check(ctx, *row) for row in checks]
    cfg = {"window": config.window, "truncate": config.truncate, "bounds": list(config.bounds),
           "seed": config.seed, "probe_groups": list(config.probe_groups)}
    return Report(config.suite, cfg, records)


def write_corpus(directory):
    """Write the canonical instances, including the negative controls, as JSON documents."""
    import os
    from .io import dumps, save, tabulate
    from .parsummable import example_finite_subsets
    from .sset import boundary_simplex
    from .symmon import capped_finite_sets, relabelled_copy
    os.makedirs(directory, exist_ok=True)
    docs = {
        "finite_subsets_w3.json": save(tabulate(example_finite_subsets(3))),
        "finite_sets_capped_3.json": save(capped_finite_sets(3)),
        "relabelled_finite_sets_1.json": save(relabelled_copy(capped_finite_sets(1), labels=2)),
        "boundary_simplex_2.json": save(boundary_simplex(2, 2)),
        "chaotic_2.json": save(chaotic_category(["a", "b"])),
        "negative_corrupted_sum_table.json": corrupted_sum_document(),
        "negative_nonmonotone_delta_map.json": nonmonotone_delta_document(),
        "negative_non_equivalence_functor.json": non_equivalence_document(),
    }
    for name, doc in docs.items():
        with open(os.path.join(directory, name), "w") as fh:
            fh.write(dumps(doc) + "\n")
    return sorted(docs)
