"""Versioned JSON documents for finite instances and reports."""

import json
from dataclasses import dataclass
from itertools import product

from .combinatorics import DeltaMap, Germ
from .errors import InvalidStructure, MalformedInput, SchemaViolation
from .fincat import FinCategory, Functor
from .parsummable import ParsummableReport as LawReport

SCHEMA = "parsumlab"
VERSION = 1
KINDS = ("category", "functor", "symmon", "sset", "parsummable", "delta_map", "report")


# values


def encode_value(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, Germ):
        return {"germ": [list(p) for p in v.pairs()]}
    if isinstance(v, tuple):
        return {"tuple": [encode_value(x) for x in v]}
    if isinstance(v, frozenset):
        items = [encode_value(x) for x in v]
        return {"set": sorted(items, key=lambda x: json.dumps(x, sort_keys=True))}
    if isinstance(v, list):
        return {"list": [encode_value(x) for x in v]}
    from .symmon import StrictUnit
    if isinstance(v, StrictUnit):
        return {"strict_unit": True}
    raise MalformedInput(f"cannot serialize value of type {type(v).__name__}: {v!r}")


def decode_value(j, path="$"):
    if j is None or isinstance(j, (bool, int, str)):
        return j
    if isinstance(j, dict) and len(j) == 1:
        (tag, body), = j.items()
        if tag == "germ":
            _expect(body, list, path + ".germ")
            try:
                return Germ({a: b for a, b in body})
            except (InvalidStructure, TypeError, ValueError) as exc:
                raise SchemaViolation(f"bad germ: {exc}", path + ".germ") from None
        if tag in ("tuple", "set", "list"):
            _expect(body, list, f"{path}.{tag}")
            items = [decode_value(x, f"{path}.{tag}[{k}]") for k, x in enumerate(body)]
            return {"tuple": tuple, "set": frozenset, "list": list}[tag](items)
        if tag == "strict_unit":
            from .symmon import ONE
            return ONE
    raise SchemaViolation(f"unrecognised value {j!r}", path)


def _expect(v, kind, path):
    if not isinstance(v, kind) or isinstance(v, bool) and kind is int:
        raise SchemaViolation(f"expected {kind.__name__}, got {type(v).__name__}", path)
    return v


def _field(d, key, kind, path):
    if not isinstance(d, dict) or key not in d:
        raise SchemaViolation(f"missing field '{key}'", path)
    return _expect(d[key], kind, f"{path}.{key}")


def _index(v, size, path):
    _expect(v, int, path)
    if not 0 <= v < size:
        raise SchemaViolation(f"index {v} out of range 0..{size - 1}", path)
    return v


# envelope


def envelope(kind, data):
    return {"schema": SCHEMA, "version": VERSION, "kind": kind, "data": data}


def open_envelope(doc, kind=None):
    _expect(doc, dict, "$")
    if doc.get("schema") != SCHEMA:
        raise SchemaViolation(f"schema must be '{SCHEMA}'", "$.schema")
    if doc.get("version") != VERSION:
        raise SchemaViolation(f"unsupported version {doc.get('version')!r}, expected {VERSION}", "$.version")
    k = doc.get("kind")
    if k not in KINDS or (kind is not None and k != kind):
        raise SchemaViolation(f"unexpected kind {k!r}", "$.kind")
    return k, _field(doc, "data", dict, "$")


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2)


def save(obj, path=None):
    """Serialize a supported instance; writes to `path` when given and returns the document."""
    doc = to_document(obj)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(dumps(doc) + "\n")
    return doc


def _read_document(source):
    if isinstance(source, dict):
        return source
    text = source
    if not source.lstrip().startswith("{"):
        with open(source) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"invalid JSON: {exc.msg}", "$") from None


def load(source):
    """Load an instance from a document, a JSON string or a file path."""
    kind, data = open_envelope(_read_document(source))
    return READERS[kind](data, "$.data")


def to_document(obj):
    from .sset import TruncatedSSet
    from .symmon import FinSymMonCat
    if isinstance(obj, FinSymMonCat):
        return envelope("symmon", write_symmon(obj))
    if isinstance(obj, FinCategory):
        return envelope("category", write_category(obj))
    if isinstance(obj, Functor):
        return envelope("functor", write_functor(obj))
    if isinstance(obj, TruncatedSSet):
        return envelope("sset", write_sset(obj))
    if isinstance(obj, TabulatedParsummable):
        return envelope("parsummable", write_parsummable(obj))
    if isinstance(obj, DeltaMap):
        return envelope("delta_map", {"m": obj.m, "n": obj.n, "values": list(obj.values)})
    raise MalformedInput(f"no document kind for {type(obj).__name__}")


# categories


def write_category(C):
    mors = C.morphisms()
    oi = {x: k for k, x in enumerate(C.objects)}
    mi = {f: k for k, f in enumerate(mors)}
    comp = []
    for f in mors:
        for _, g in C.hom_from(C.tgt(f)):
            comp.append([mi[g], mi[f], mi[C.compose(g, f)]])
    return {"name": C.name,
            "objects": [encode_value(x) for x in C.objects],
            "morphisms": [{"id": encode_value(f), "src": oi[C.src(f)], "tgt": oi[C.tgt(f)]} for f in mors],
            "identities": [mi[C.identity(x)] for x in C.objects],
            "composition": comp}


def read_category(d, path):
    objs = [decode_value(x, f"{path}.objects[{k}]") for k, x in enumerate(_field(d, "objects", list, path))]
    if len(set(objs)) != len(objs):
        raise SchemaViolation("duplicate object", f"{path}.objects")
    raw = _field(d, "morphisms", list, path)
    mors, hom = [], {}
    for k, m in enumerate(raw):
        p = f"{path}.morphisms[{k}]"
        f = decode_value(_field(m, "id", object, p), p + ".id")
        x = objs[_index(_field(m, "src", int, p), len(objs), p + ".src")]
        y = objs[_index(_field(m, "tgt", int, p), len(objs), p + ".tgt")]
        mors.append(f)
        hom.setdefault((x, y), []).append(f)
    if len(set(mors)) != len(mors):
        raise SchemaViolation("duplicate morphism", f"{path}.morphisms")
    ids = _field(d, "identities", list, path)
    if len(ids) != len(objs):
        raise SchemaViolation("one identity per object required", f"{path}.identities")
    identity = {x: mors[_index(i, len(mors), f"{path}.identities[{k}]")] for k, (x, i) in enumerate(zip(objs, ids))}
    comp = {}
    for k, row in enumerate(_field(d, "composition", list, path)):
        p = f"{path}.composition[{k}]"
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaViolation("composition rows are [g, f, g after f]", p)
        g, f, h = (mors[_index(v, len(mors), p)] for v in row)
        comp[(g, f)] = h
    C = FinCategory(objs, hom, comp, identity, name=d.get("name"))
    for f in mors:
        for _, g in C.hom_from(C.tgt(f)):
            if (g, f) not in comp:
                raise SchemaViolation(f"composite of {g!r} after {f!r} missing", f"{path}.composition")
    return C


def same_category(C, D):
    if C.objects != D.objects or C._hom != D._hom:
        return False
    return all(C.identity(x) == D.identity(x) for x in C.objects) and all(
        C.compose(g, f) == D.compose(g, f) for f in C.morphisms() for _, g in C.hom_from(C.tgt(f)))


def write_functor(F):
    S, T = F.source, F.target
    so = {x: k for k, x in enumerate(S.objects)}
    to = {x: k for k, x in enumerate(T.objects)}
    sm = {f: k for k, f in enumerate(S.morphisms())}
    tm = {f: k for k, f in enumerate(T.morphisms())}
    return {"name": F.name, "source": write_category(S), "target": write_category(T),
            "objects": [[so[x], to[y]] for x, y in F.obj.items()],
            "morphisms": [[sm[f], tm[g]] for f, g in F.mor.items()]}


def read_functor(d, path):
    S = read_category(_field(d, "source", dict, path), path + ".source")
    T = read_category(_field(d, "target", dict, path), path + ".target")
    sm, tm = S.morphisms(), T.morphisms()
    obj, mor = {}, {}
    for k, row in enumerate(_field(d, "objects", list, path)):
        p = f"{path}.objects[{k}]"
        obj[S.objects[_index(row[0], len(S.objects), p)]] = T.objects[_index(row[1], len(T.objects), p)]
    for k, row in enumerate(_field(d, "morphisms", list, path)):
        p = f"{path}.morphisms[{k}]"
        mor[sm[_index(row[0], len(sm), p)]] = tm[_index(row[1], len(tm), p)]
    if set(obj) != set(S.objects) or set(mor) != set(sm):
        raise SchemaViolation("functor tables must cover the whole source", path)
    return Functor(S, T, obj, mor, name=d.get("name"))


# symmetric monoidal categories


def write_symmon(C):
    B = C.base
    oi = {x: k for k, x in enumerate(B.objects)}
    mi = {f: k for k, f in enumerate(B.morphisms())}
    return {"category": write_category(B), "unit": oi[C.unit],
            "tensor": [[oi[x], oi[y], oi[z]] for (x, y), z in C.tensor_table.items()],
            "tensor_mor": [[mi[f], mi[g], mi[h]] for (f, g), h in C.tensor_mor_table.items()],
            "associator": [[oi[x], oi[y], oi[z], mi[m]] for (x, y, z), m in C.assoc.items()],
            "left_unitor": [[oi[x], mi[m]] for x, m in C.lunit.items()],
            "right_unitor": [[oi[x], mi[m]] for x, m in C.runit.items()],
            "symmetry": [[oi[x], oi[y], mi[m]] for (x, y), m in C.sym.items()]}


def read_symmon(d, path):
    from .symmon import FinSymMonCat
    B = read_category(_field(d, "category", dict, path), path + ".category")
    obs, mors = B.objects, B.morphisms()

    def table(key, nobj, nmor):
        out = {}
        for k, row in enumerate(_field(d, key, list, path)):
            p = f"{path}.{key}[{k}]"
            if not isinstance(row, list) or len(row) != nobj + nmor:
                raise SchemaViolation(f"rows of {key} have {nobj + nmor} entries", p)
            keys = [obs[_index(v, len(obs), p)] for v in row[:nobj]]
            vals = [mors[_index(v, len(mors), p)] for v in row[nobj:]]
            out[keys[0] if len(keys) == 1 else tuple(keys)] = vals[0] if vals else None
        return out

    def obj_table(key):
        out = {}
        for k, row in enumerate(_field(d, key, list, path)):
            p = f"{path}.{key}[{k}]"
            x, y, z = (obs[_index(v, len(obs), p)] for v in row)
            out[(x, y)] = z
        return out

    def mor_table(key):
        out = {}
        for k, row in enumerate(_field(d, key, list, path)):
            p = f"{path}.{key}[{k}]"
            f, g, h = (mors[_index(v, len(mors), p)] for v in row)
            out[(f, g)] = h
        return out

    tensor, tmor = obj_table("tensor"), mor_table("tensor_mor")
    unit = obs[_index(_field(d, "unit", int, path), len(obs), path + ".unit")]
    tables = [table("associator", 3, 1), table("left_unitor", 1, 1), table("right_unitor", 1, 1),
              table("symmetry", 2, 1)]
    for key, t, size in (("tensor", tensor, len(obs) ** 2), ("tensor_mor", tmor, len(mors) ** 2),
                         ("associator", tables[0], len(obs) ** 3), ("left_unitor", tables[1], len(obs)),
                         ("right_unitor", tables[2], len(obs)), ("symmetry", tables[3], len(obs) ** 2)):
        if len(t) != size:
            raise SchemaViolation(f"table has {len(t)} entries, expected {size}", f"{path}.{key}")
    return FinSymMonCat(B, tensor, tmor, unit, *tables)


# simplicial sets


def write_sset(X):
    index = [{x: k for k, x in enumerate(level)} for level in X.levels]
    faces, degens = [], []
    for n, level in enumerate(X.levels):
        faces.append([[index[n - 1][X.face(n, i, x)] for i in range(n + 1)] if n else [] for x in level])
        if n < X.dim:
            degens.append([[index[n + 1][X.degen(n, j, x)] for j in range(n + 1)] for x in level])
    return {"name": X.name, "dim": X.dim, "levels": [[encode_value(x) for x in level] for level in X.levels],
            "faces": faces, "degeneracies": degens}


def read_sset(d, path):
    from .sset import TruncatedSSet
    dim = _field(d, "dim", int, path)
    raw = _field(d, "levels", list, path)
    if len(raw) != dim + 1:
        raise SchemaViolation(f"expected {dim + 1} levels", f"{path}.levels")
    levels = [[decode_value(x, f"{path}.levels[{n}][{k}]") for k, x in enumerate(level)] for n, level in enumerate(raw)]
    faces, degens = _field(d, "faces", list, path), _field(d, "degeneracies", list, path)
    face_t, degen_t = {}, {}
    for n in range(dim + 1):
        for k, x in enumerate(levels[n]):
            p = f"{path}.faces[{n}][{k}]"
            try:
                row = faces[n][k]
            except (IndexError, TypeError):
                raise SchemaViolation("missing face row", p) from None
            for i in range(n + 1 if n else 0):
                face_t[(n, i, x)] = levels[n - 1][_index(row[i], len(levels[n - 1]), p)]
            if n < dim:
                p = f"{path}.degeneracies[{n}][{k}]"
                try:
                    row = degens[n][k]
                except (IndexError, TypeError):
                    raise SchemaViolation("missing degeneracy row", p) from None
                for j in range(n + 1):
                    degen_t[(n, j, x)] = levels[n + 1][_index(row[j], len(levels[n + 1]), p)]
    return TruncatedSSet(levels, lambda n, i, x: face_t[(n, i, x)], lambda n, j, x: degen_t[(n, j, x)], dim,
                         name=d.get("name"))


def same_sset(X, Y):
    if X.dim != Y.dim or X.levels != Y.levels:
        return False
    for n, level in enumerate(X.levels):
        for x in level:
            if n and any(X.face(n, i, x) != Y.face(n, i, x) for i in range(n + 1)):
                return False
            if n < X.dim and any(X.degen(n, j, x) != Y.degen(n, j, x) for j in range(n + 1)):
                return False
    return True


# parsummable categories, tabulated on a window


@dataclass
class TabulatedParsummable:
    """A parsummable category restricted to a window: the category, supports and the sum tables."""

    name: str
    window: int
    category: FinCategory
    supports: dict
    zero: object
    sums: dict
    mor_sums: dict

    def __eq__(self, other):
        return isinstance(other, TabulatedParsummable) and (self.name, self.window, self.supports, self.zero,
                                                            self.sums, self.mor_sums) == \
            (other.name, other.window, other.supports, other.zero, other.sums, other.mor_sums) and \
            same_category(self.category, other.category)


def tabulate(P):
    """Tabulate a ParsummableCategory on its window."""
    B = P.base
    C = B.to_fincat(P.window)
    supports = {x: B.support(x) for x in C.objects}
    sums = {(x, y): P.add(x, y) for x in C.objects for y in C.objects if not supports[x] & supports[y]}
    mor_sums = {}
    for (x, y) in sums:
        for (x2, y2) in sums:
            for f, g in product(C.hom(x, x2), C.hom(y, y2)):
                mor_sums[(f, g)] = P.add_mor(f, g)
    return TabulatedParsummable(P.name, P.window, C, supports, P.zero, sums, mor_sums)


def verify_table(T):
    """Partial commutative monoid laws on a tabulated parsummable category, with counterexamples."""
    rep = LawReport()
    C, supp, sums = T.category, T.supports, T.sums
    rep.count("zero support")
    if supp.get(T.zero):
        rep.fail("zero support", zero=T.zero)
    for x in C.objects:
        for y in C.objects:
            rep.count("defined exactly on disjoint pairs")
            if ((x, y) in sums) == bool(supp[x] & supp[y]):
                rep.fail("defined exactly on disjoint pairs", x=x, y=y)
    for x in C.objects:
        rep.count("unit")
        if sums.get((T.zero, x)) != x or sums.get((x, T.zero)) != x:
            rep.fail("unit", x=x, left=sums.get((T.zero, x)), right=sums.get((x, T.zero)))
    for (x, y), s in sums.items():
        rep.count("sum is an object")
        if s not in C:
            rep.fail("sum is an object", x=x, y=y, sum=s)
            continue
        rep.count("commutativity")
        if sums.get((y, x)) != s:
            rep.fail("commutativity", x=x, y=y, xy=s, yx=sums.get((y, x)))
        rep.count("support")
        if not supp[s] <= supp[x] | supp[y]:
            rep.fail("support", x=x, y=y, sum=s)
        for z in C.objects:
            if (s, z) in sums and (y, z) in sums and (x, sums[(y, z)]) in sums:
                rep.count("associativity")
                if sums[(s, z)] != sums[(x, sums[(y, z)])]:
                    rep.fail("associativity", x=x, y=y, z=z, left=sums[(s, z)], right=sums[(x, sums[(y, z)])])
    for (f, g), h in T.mor_sums.items():
        rep.count("morphism sum endpoints")
        key = (C.src(f), C.src(g)), (C.tgt(f), C.tgt(g))
        if key[0] not in sums or key[1] not in sums or h not in C.hom(sums[key[0]], sums[key[1]]):
            rep.fail("morphism sum endpoints", f=f, g=g)
    for (x, y), s in sums.items():
        rep.count("identity sum")
        if T.mor_sums.get((C.identity(x), C.identity(y))) != C.identity(s):
            rep.fail("identity sum", x=x, y=y)
    return rep


def write_parsummable(T):
    C = T.category
    oi = {x: k for k, x in enumerate(C.objects)}
    mi = {f: k for k, f in enumerate(C.morphisms())}
    return {"name": T.name, "window": T.window, "category": write_category(C), "zero": oi[T.zero],
            "supports": [sorted(T.supports[x]) for x in C.objects],
            "sums": [[oi[x], oi[y], oi.get(s, -1)] for (x, y), s in T.sums.items()],
            "morphism_sums": [[mi[f], mi[g], mi.get(h, -1)] for (f, g), h in T.mor_sums.items()]}


def read_parsummable(d, path):
    C = read_category(_field(d, "category", dict, path), path + ".category")
    obs, mors = C.objects, C.morphisms()
    sp = _field(d, "supports", list, path)
    if len(sp) != len(obs):
        raise SchemaViolation("one support per object required", f"{path}.supports")
    supports = {x: frozenset(_expect(s, list, f"{path}.supports[{k}]")) for k, (x, s) in enumerate(zip(obs, sp))}
    sums, mor_sums = {}, {}
    for k, row in enumerate(_field(d, "sums", list, path)):
        p = f"{path}.sums[{k}]"
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaViolation("sum rows are [x, y, x + y]", p)
        sums[(obs[_index(row[0], len(obs), p)], obs[_index(row[1], len(obs), p)])] = \
            obs[_index(row[2], len(obs), p)]
    for k, row in enumerate(_field(d, "morphism_sums", list, path)):
        p = f"{path}.morphism_sums[{k}]"
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaViolation("morphism sum rows are [f, g, f + g]", p)
        mor_sums[(mors[_index(row[0], len(mors), p)], mors[_index(row[1], len(mors), p)])] = \
            mors[_index(row[2], len(mors), p)]
    zero = obs[_index(_field(d, "zero", int, path), len(obs), path + ".zero")]
    return TabulatedParsummable(d.get("name"), _field(d, "window", int, path), C, supports, zero, sums, mor_sums)


def read_delta_map(d, path):
    m, n = _field(d, "m", int, path), _field(d, "n", int, path)
    return DeltaMap(m, n, tuple(_field(d, "values", list, path)))


READERS = {"category": read_category, "functor": read_functor, "symmon": read_symmon, "sset": read_sset,
           "parsummable": read_parsummable, "delta_map": read_delta_map,
           "report": lambda d, path: d}


# validation of documents


def validate_document(source):
    """Load a document and check the laws of what it describes; returns (ok, counterexample)."""
    try:
        doc = _read_document(source)
        kind, _ = open_envelope(doc)
        obj = load(doc)
    except SchemaViolation as exc:
        return False, {"error": "SchemaViolation", "path": exc.path, "message": str(exc)}
    except InvalidStructure as exc:
        return False, {"error": "InvalidStructure", "message": str(exc), "counterexample": exc.counterexample}
    try:
        if kind == "category":
            obj.validate()
        elif kind == "functor":
            obj.source.validate()
            obj.target.validate()
            obj.validate()
        elif kind == "sset":
            obj.validate()
        elif kind == "symmon":
            obj.base.validate()
            rep = obj.coherence_report()
            if not rep:
                return False, {"error": "InvalidStructure", "violations": rep.violations[:5]}
        elif kind == "parsummable":
            obj.category.validate()
            rep = verify_table(obj)
            if not rep:
                return False, {"error": "InvalidStructure", "violations": rep.violations[:5]}
    except InvalidStructure as exc:
        return False, {"error": "InvalidStructure", "message": str(exc), "counterexample": exc.counterexample}
    return True, {}
