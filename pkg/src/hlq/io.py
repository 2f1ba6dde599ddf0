"""JSON input and output.

Identifiers are JSON scalars or (nested) lists; lists are read as tuples.
Where an identifier has to be a JSON object key it is written as itself if
it is a string and as its compact JSON text otherwise (``[1,2]`` for the
tuple ``(1, 2)``).  References to other files are paths relative to the
referencing file.
"""

import json
import os

from ._util import format_rational, sorted_ids
from .errors import HLQError, LoadError, ValidationError
from .functor import GroupoidFunctor, check_functor
from .groupoid import SkeletalGroupoid, TableGroupoid, TruncatedSpace
from .incidence import FiniteCategory, FinitePoset
from .presheaf import FinitePresheaf
from .span import Span

# -- identifiers --------------------------------------------------------------


def from_json_id(v):
    if isinstance(v, list):
        return tuple(from_json_id(i) for i in v)
    if isinstance(v, dict):
        raise LoadError(f"identifier cannot be an object: {v!r}")
    return v


def label_json(x):
    if isinstance(x, tuple):
        return [label_json(i) for i in x]
    if isinstance(x, frozenset):
        return [label_json(i) for i in sorted_ids(x)]
    return x


def label_key(x):
    if isinstance(x, str):
        return x
    return json.dumps(label_json(x), separators=(",", ":"))


def _key_table(ids, what):
    table = {}
    for i in ids:
        k = label_key(i)
        if k in table and table[k] != i:
            raise LoadError(f"ambiguous {what} key {k!r}")
        table[k] = i
    return table


def _resolve(key, table, what):
    if key in table:
        return table[key]
    raise LoadError(f"unknown {what} {key!r}")


def _pairs(data, table, what, convert=True):
    """Accept ``{key: value}`` or ``[[id, value], ...]``; keys resolved via ``table``."""
    conv = from_json_id if convert else (lambda v: v)
    if isinstance(data, dict):
        return [(_resolve(k, table, what), conv(v)) for k, v in data.items()]
    if isinstance(data, list):
        out = []
        for item in data:
            if not isinstance(item, list) or len(item) != 2:
                raise LoadError(f"{what} map entries must be [key, value] pairs")
            k = from_json_id(item[0])
            if label_key(k) not in table:
                raise LoadError(f"unknown {what} {item[0]!r}")
            out.append((k, conv(item[1])))
        return out
    raise LoadError(f"{what} map must be an object or a list of pairs")


def _need(data, key, what):
    if not isinstance(data, dict) or key not in data:
        raise LoadError(f"{what}: missing field {key!r}")
    return data[key]


# -- loading ------------------------------------------------------------------


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise LoadError(f"cannot read {path}: {e.strerror or e}") from None
    except json.JSONDecodeError as e:
        raise LoadError(f"cannot parse {path}: {e}") from None


def _guarded(parse, data, base_dir):
    # malformed shapes (a list where an object belongs, ...) are parse errors
    try:
        return parse(data, base_dir)
    except HLQError:
        raise
    except (TypeError, AttributeError, ValueError, KeyError) as e:
        raise LoadError(f"malformed input: {e}") from None


class Loader:
    """Resolves file references; each path is parsed once per loader."""

    def __init__(self):
        self._cache = {}

    def _deref(self, ref, base_dir, parse):
        if isinstance(ref, str):
            path = os.path.abspath(os.path.join(base_dir, ref))
            key = (parse.__name__, path)
            if key not in self._cache:
                self._cache[key] = _guarded(parse, read_json(path), os.path.dirname(path))
            return self._cache[key]
        return _guarded(parse, ref, base_dir)

    # groupoids

    def groupoid(self, ref, base_dir="."):
        return self._deref(ref, base_dir, self._parse_groupoid)

    def _parse_groupoid(self, data, base_dir):
        kind = _need(data, "kind", "groupoid")
        if kind == "table":
            return parse_table_groupoid(data)
        if kind == "skeletal":
            return parse_skeletal(data).to_groupoid()
        raise LoadError(f"unknown groupoid kind {kind!r}")

    def skeletal(self, ref, base_dir="."):
        return self._deref(ref, base_dir, lambda d, _: parse_skeletal(d))

    def truncated(self, ref, base_dir="."):
        return self._deref(ref, base_dir, lambda d, _: parse_truncated(d))

    # functors, spans, families

    def functor(self, ref, base_dir="."):
        return self._deref(ref, base_dir, self._parse_functor)

    def _parse_functor(self, data, base_dir):
        X = self.groupoid(_need(data, "source", "functor"), base_dir)
        Y = self.groupoid(_need(data, "target", "functor"), base_dir)
        omap = dict(_pairs(data.get("objects", {}), _key_table(X.objects, "object"), "object"))
        mmap = dict(
            _pairs(data.get("morphisms", {}), _key_table(X.morphisms, "morphism"), "morphism")
        )
        F = GroupoidFunctor(X, Y, omap, mmap)
        bad = check_functor(F)
        if bad:
            raise ValidationError("functor", bad)
        return F

    def span(self, ref, base_dir="."):
        return self._deref(ref, base_dir, self._parse_span)

    def _parse_span(self, data, base_dir):
        left = self.functor(_need(data, "left", "span"), base_dir)
        right = self.functor(_need(data, "right", "span"), base_dir)
        if left.source != right.source:
            raise ValidationError("span", ["legs have different apices"])
        return Span(left, right)

    def family(self, ref, base_dir="."):
        """A family is a functor; its base is the target."""
        return self.functor(ref, base_dir)

    def presheaf(self, ref, base_dir="."):
        return self._deref(ref, base_dir, self._parse_presheaf)

    def _parse_presheaf(self, data, base_dir):
        S = self.groupoid(_need(data, "base", "presheaf"), base_dir)
        table = _key_table(S.objects, "object")
        values = {}
        raw_values = _need(data, "values", "presheaf")
        if not isinstance(raw_values, dict):
            raise LoadError("presheaf values must be an object")
        for k, ref in raw_values.items():
            s = _resolve(k, table, "object")
            values[S.representative(s)] = self.groupoid(ref, base_dir)
        actions = {}
        raw_actions = data.get("action", data.get("actions")) or {}
        for k, acts in raw_actions.items():
            r = _resolve(k, table, "object")
            if r != S.representative(r):
                raise LoadError(f"action given at {k!r}, which is not a component representative")
            V = values.get(r)
            if V is None:
                raise LoadError(f"action given at {k!r} without a value")
            autos = _key_table(S.automorphisms(r), "automorphism")
            per = {}
            for g, spec in _pairs(acts, autos, "automorphism", convert=False):
                raise_if_not_dict(spec, "action functor")
                omap = dict(_pairs(spec.get("objects", {}), _key_table(V.objects, "object"), "object"))
                mmap = dict(
                    _pairs(spec.get("morphisms", {}), _key_table(V.morphisms, "morphism"), "morphism")
                )
                per[g] = GroupoidFunctor(V, V, omap, mmap)
            actions[r] = per
        P = FinitePresheaf(S, values, actions)
        return P.check()

    # incidence inputs

    def incidence_input(self, ref, base_dir="."):
        return self._deref(ref, base_dir, lambda d, _: parse_incidence_input(d))


def raise_if_not_dict(v, what):
    if not isinstance(v, dict):
        raise LoadError(f"{what} must be an object")


# JSON objects arrive with string keys; from_json_id on ``morphisms`` entries
# keeps tuple identifiers hashable.


def parse_table_groupoid(data):
    objs, morphs, ids, comp = _parse_table(data, "groupoid")
    g = TableGroupoid(objs, morphs, ids, comp)
    return g.check()


def _parse_table(data, what):
    objs = [from_json_id(o) for o in _need(data, "objects", what)]
    otable = _key_table(objs, "object")
    morphs = {}
    for m in _need(data, "morphisms", what):
        raise_if_not_dict(m, "morphism entry")
        mid = from_json_id(_need(m, "id", "morphism"))
        if mid in morphs:
            raise ValidationError(what, [f"duplicate morphism {mid!r}"])
        morphs[mid] = (from_json_id(_need(m, "src", "morphism")), from_json_id(_need(m, "tgt", "morphism")))
    ids = dict(_pairs(_need(data, "identities", what), otable, "object"))
    comp = {}
    for row in _need(data, "compose", what):
        if not isinstance(row, list) or len(row) != 3:
            raise LoadError("compose entries must be [g, f, g o f]")
        g, f, gf = (from_json_id(v) for v in row)
        comp[(g, f)] = gf
    return objs, morphs, ids, comp


def parse_skeletal(data):
    comps = []
    for c in _need(data, "components", "skeletal groupoid"):
        raise_if_not_dict(c, "component")
        comps.append((from_json_id(_need(c, "label", "component")), _need(c, "group", "component")))
    sk = SkeletalGroupoid(tuple(comps))
    bad = sk.validate()
    if bad:
        raise ValidationError("skeletal groupoid", bad)
    return sk


def parse_truncated(data):
    comps = []
    for c in _need(data, "components", "truncated space"):
        raise_if_not_dict(c, "component")
        comps.append((from_json_id(_need(c, "label", "component")), _need(c, "orders", "component")))
    t = TruncatedSpace(tuple(comps))
    bad = t.validate()
    if bad:
        raise ValidationError("truncated space", bad)
    return t


def parse_incidence_input(data):
    """A poset (``elements``/``covers``) or a category table."""
    if isinstance(data, dict) and "elements" in data:
        els = [from_json_id(e) for e in data["elements"]]
        covers = []
        for c in data.get("covers", []):
            if not isinstance(c, list) or len(c) != 2:
                raise LoadError("covers must be [a, b] pairs")
            covers.append(tuple(from_json_id(v) for v in c))
        return FinitePoset(els, covers).check()
    objs, morphs, ids, comp = _parse_table(data, "category")
    return FiniteCategory(objs, morphs, ids, comp).check()


def load_groupoid(path):
    return Loader().groupoid(path)


def load_functor(path):
    return Loader().functor(path)


def load_span(path):
    return Loader().span(path)


def load_presheaf(path):
    return Loader().presheaf(path)


# -- dumping ------------------------------------------------------------------


def _map_json(pairs):
    return {label_key(k): label_json(v) for k, v in pairs}


def groupoid_to_json(g):
    """Table form; every morphism is enumerated."""
    morphs = g.morphisms
    objs = sorted_ids(g.objects)
    comp = []
    for f in morphs:
        for h in g.out(g.tgt(f)):
            comp.append((h, f, g.compose(h, f)))
    return {
        "kind": "table",
        "objects": [label_json(x) for x in objs],
        "morphisms": [
            {"id": label_json(m), "src": label_json(g.src(m)), "tgt": label_json(g.tgt(m))}
            for m in morphs
        ],
        "identities": _map_json((x, g.identity(x)) for x in objs),
        "compose": [[label_json(a), label_json(b), label_json(c)] for a, b, c in comp],
    }


def skeletal_to_json(sk):
    return {
        "kind": "skeletal",
        "components": [
            {"label": label_json(lab), "group": [list(row) for row in grp.table]}
            for lab, grp in sk.components
        ],
    }


def functor_to_json(F, source=None, target=None):
    """Inline groupoids unless references are supplied."""
    X = F.source
    return {
        "source": source if source is not None else groupoid_to_json(X),
        "target": target if target is not None else groupoid_to_json(F.target),
        "objects": _map_json((x, F.obj(x)) for x in sorted_ids(X.objects)),
        "morphisms": _map_json((m, F.mor(m)) for m in X.morphisms),
    }


def span_to_json(L):
    S, M, T = groupoid_to_json(L.source), groupoid_to_json(L.apex), groupoid_to_json(L.target)
    return {"left": functor_to_json(L.left, M, S), "right": functor_to_json(L.right, M, T)}


def rational_json(q):
    return format_rational(q)


def _has_dict(v):
    if isinstance(v, dict):
        return True
    return isinstance(v, list) and any(_has_dict(i) for i in v)


def _flat(v):
    # short dict-free values go on one line
    if not isinstance(v, (dict, list)):
        return True
    return not _has_dict(v) and len(json.dumps(v)) <= 100


def _emit(obj, depth):
    pad, inner = "  " * depth, "  " * (depth + 1)
    if _flat(obj):
        return json.dumps(obj, separators=(", ", ": "), ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_emit(obj[k], depth + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    items = [inner + _emit(v, depth + 1) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(obj):
    """Canonical JSON text: sorted keys, one scalar list per line, trailing newline."""
    return _emit(obj, 0) + "\n"
