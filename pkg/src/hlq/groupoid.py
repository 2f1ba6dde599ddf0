"""Finite groupoids: explicit tables, sums, products, components, skeleta.

Every groupoid exposes the same small structural interface (``src``, ``tgt``,
``identity``, ``compose``, ``inverse``, ``out``, ``hom``) and derives the
rest from it.  Subclasses for constructed groupoids (products, pullbacks,
fibres, ...) compute morphisms on demand instead of storing tables.

Components are found by a search along *generating moves*; the
automorphism order of a representative then follows from
``out_degree(rep) == |class| * |Aut(rep)|``, so huge groupoids never need
their morphisms listed.
"""

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import groups
from ._util import sort_key, sorted_ids
from .errors import MismatchError, SizeCapError, ValidationError


class CompositionError(KeyError):
    pass


@dataclass(frozen=True)
class Violation:
    axiom: str
    morphisms: tuple = ()
    detail: str = ""

    def __str__(self):
        where = ", ".join(map(repr, self.morphisms))
        return f"{self.axiom}: {where}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class Component:
    representative: object
    object_class: frozenset
    aut_order: int

    @property
    def cardinality(self):
        return Fraction(1, self.aut_order)


class FiniteGroupoid:
    """Base class.  Subclasses must set ``objects`` and implement the
    structural methods below."""

    objects = ()

    # -- structure --------------------------------------------------------

    def src(self, m):
        raise NotImplementedError

    def tgt(self, m):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        """``g o f``; raises CompositionError when undefined."""
        raise NotImplementedError

    def inverse(self, f):
        raise NotImplementedError

    def out(self, x):
        raise NotImplementedError

    def hom(self, a, b):
        return tuple(m for m in self.out(a) if self.tgt(m) == b)

    def out_degree(self, x):
        return len(self.out(x))

    def move_morphisms(self, x):
        """Morphisms out of ``x`` whose forward composites give every morphism."""
        return self.out(x)

    def has_object(self, x):
        return x in self._object_set

    # -- derived ----------------------------------------------------------

    @cached_property
    def _object_set(self):
        return frozenset(self.objects)

    @cached_property
    def morphisms(self):
        return tuple(m for x in self.objects for m in self.out(x))

    def _component_search(self, moves=None):
        moves = moves or self.move_morphisms
        index = {}
        comps = []
        for x in sorted_ids(self.objects):
            if x in index:
                continue
            i = len(comps)
            index[x] = i
            members = [x]
            queue = deque([x])
            while queue:
                a = queue.popleft()
                for m in moves(a):
                    b = self.tgt(m)
                    if b not in index:
                        index[b] = i
                        members.append(b)
                        queue.append(b)
            deg = self.out_degree(x)
            aut, rem = divmod(deg, len(members))
            assert rem == 0 and aut > 0, (x, deg, len(members))
            comps.append(Component(x, frozenset(members), aut))
        return tuple(comps), index

    @cached_property
    def _components(self):
        return self._component_search()

    @property
    def components(self):
        """Components ordered by least object identifier."""
        return self._components[0]

    def component_index(self, x):
        return self._components[1][x]

    def component_of(self, x):
        return self.components[self.component_index(x)]

    def representative(self, x):
        return self.component_of(x).representative

    def is_connected(self):
        return len(self.components) == 1

    @cached_property
    def _tree(self):
        """Transport morphisms ``rep -> x`` for every object."""
        tree = {}
        for c in self.components:
            r = c.representative
            tree[r] = self.identity(r)
            queue = deque([r])
            while queue:
                a = queue.popleft()
                for m in self.out(a):
                    b = self.tgt(m)
                    if b not in tree:
                        tree[b] = self.compose(m, tree[a])
                        queue.append(b)
        return tree

    def transport(self, x):
        """A fixed morphism from the representative of ``x``'s component to ``x``."""
        return self._tree[x]

    def automorphisms(self, x):
        """Automorphisms of ``x``, identity first, the rest canonically sorted."""
        ident = self.identity(x)
        rest = sorted_ids(m for m in self.hom(x, x) if m != ident)
        return (ident, *rest)

    def validate(self):
        return validate(self)

    def check(self):
        bad = self.validate()
        if bad:
            raise ValidationError("groupoid", bad)
        return self


# -- explicit tables ----------------------------------------------------------


class TableGroupoid(FiniteGroupoid):
    """Groupoid given by explicit identity, composition and (optional) inverse tables."""

    def __init__(self, objects, morphisms, identities, compose, inverses=None):
        self.objects = tuple(objects)
        self._ends = dict(morphisms)
        self._ids = dict(identities)
        self._table = dict(compose)
        self._given_inverses = None if inverses is None else dict(inverses)
        out = defaultdict(list)
        for m, (s, _) in self._ends.items():
            out[s].append(m)
        self._out = {x: tuple(sorted_ids(out.get(x, ()))) for x in self.objects}
        self._valid = None

    def src(self, m):
        return self._ends[m][0]

    def tgt(self, m):
        return self._ends[m][1]

    def identity(self, x):
        return self._ids[x]

    def compose(self, g, f):
        try:
            return self._table[(g, f)]
        except KeyError:
            raise CompositionError((g, f)) from None

    @cached_property
    def _inverses(self):
        if self._given_inverses is not None:
            return self._given_inverses
        inv = {}
        for f in self._ends:
            s, t = self._ends[f]
            for g in self.hom(t, s):
                if self._table.get((g, f)) == self._ids.get(s) and self._table.get(
                    (f, g)
                ) == self._ids.get(t):
                    inv[f] = g
                    break
        return inv

    def inverse(self, f):
        return self._inverses[f]

    def out(self, x):
        return self._out.get(x, ())

    @cached_property
    def _homs(self):
        homs = defaultdict(list)
        for m, (s, t) in self._ends.items():
            homs[(s, t)].append(m)
        return {k: tuple(sorted_ids(v)) for k, v in homs.items()}

    def hom(self, a, b):
        return self._homs.get((a, b), ())

    @cached_property
    def morphisms(self):
        return tuple(sorted_ids(self._ends))

    def _component_search(self):
        self.check()
        return super()._component_search(self.out)

    @cached_property
    def _moves(self):
        # conjugated automorphism generators plus one jump to each other object
        moves = {}
        for c in self.components:
            r = c.representative
            gens = groups.generating_set(self.automorphisms(r), self.compose, self.identity(r))
            for x in c.object_class:
                tx = self.transport(x)
                txi = self.inverse(tx)
                ms = [self.compose(tx, self.compose(g, txi)) for g in gens]
                ms += [self.compose(self.transport(y), txi) for y in sorted_ids(c.object_class) if y != x]
                moves[x] = tuple(ms)
        return moves

    def move_morphisms(self, x):
        return self._moves[x]

    def check(self):
        if self._valid is None:
            self._valid = self.validate()
        if self._valid:
            raise ValidationError("groupoid", self._valid)
        return self

    def _key(self):
        return (self.objects, tuple(sorted(self._ends.items(), key=sort_key)),
                tuple(sorted(self._ids.items(), key=sort_key)),
                tuple(sorted(self._table.items(), key=sort_key)))

    @cached_property
    def _hash(self):
        return hash(self._key())

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, TableGroupoid):
            return NotImplemented
        return self._hash == other._hash and self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TableGroupoid({len(self.objects)} objects, {len(self._ends)} morphisms)"


def validate(g):
    """Check the groupoid axioms; returns a list of Violation (empty iff valid).

    Checks run in stages (identifiers, totality of composition, laws) and the
    report stops at the first failing stage, since later axioms are not
    meaningful on a partial table.
    """
    if isinstance(g, TableGroupoid):
        return _validate_table(g)
    return _validate_laws(g, list(g.objects), list(g.morphisms))


def _validate_table(g, inverses=True):
    out = []
    objs = list(g.objects)
    if len(set(objs)) != len(objs):
        dup = [x for x in set(objs) if objs.count(x) > 1]
        out.append(Violation("duplicate object identifier", tuple(sorted_ids(dup))))
    objset = set(objs)
    for m, ends in g._ends.items():
        if len(ends) != 2 or ends[0] not in objset or ends[1] not in objset:
            out.append(Violation("unknown endpoint", (m,)))
    for x in objs:
        i = g._ids.get(x)
        if i is None:
            out.append(Violation("missing identity", (x,)))
        elif i not in g._ends or g._ends[i] != (x, x):
            out.append(Violation("identity is not an endomorphism", (i,), f"object {x!r}"))
    for x in g._ids:
        if x not in objset:
            out.append(Violation("identity for unknown object", (x,)))
    if out:
        return out
    # totality
    for (gm, fm), h in g._table.items():
        if gm not in g._ends or fm not in g._ends:
            out.append(Violation("composite of unknown morphism", (gm, fm)))
        elif g._ends[fm][1] != g._ends[gm][0]:
            out.append(Violation("composite defined for non-composable pair", (gm, fm)))
        elif h not in g._ends or g._ends[h] != (g._ends[fm][0], g._ends[gm][1]):
            out.append(Violation("composite has wrong endpoints", (gm, fm, h)))
    for fm in g.morphisms:
        for gm in g.out(g.tgt(fm)):
            if (gm, fm) not in g._table:
                out.append(Violation("missing composite", (gm, fm)))
    if out:
        return out
    if getattr(g, "_given_inverses", None) is not None:
        for f in g.morphisms:
            if f not in g._given_inverses:
                out.append(Violation("missing inverse", (f,)))
    if out:
        return out
    return _validate_laws(g, objs, list(g.morphisms), inverses)


def _validate_laws(g, objs, morphs, inverses=True):
    out = []
    for f in morphs:
        s, t = g.src(f), g.tgt(f)
        if g.compose(g.identity(t), f) != f:
            out.append(Violation("left identity law", (f,)))
        if g.compose(f, g.identity(s)) != f:
            out.append(Violation("right identity law", (f,)))
    for f in morphs:
        for gm in g.out(g.tgt(f)):
            gf = g.compose(gm, f)
            for h in g.out(g.tgt(gm)):
                if g.compose(h, gf) != g.compose(g.compose(h, gm), f):
                    out.append(Violation("associativity", (h, gm, f)))
    if not inverses:
        return out
    for f in morphs:
        s, t = g.src(f), g.tgt(f)
        try:
            fi = g.inverse(f)
            ok = (g.src(fi), g.tgt(fi)) == (t, s) and g.compose(fi, f) == g.identity(
                s
            ) and g.compose(f, fi) == g.identity(t)
        except (KeyError, CompositionError):
            ok = False
        if not ok:
            out.append(Violation("inverse law", (f,)))
    return out


# -- constructors -------------------------------------------------------------


def empty():
    return _EMPTY


def terminal():
    """The one-object, one-morphism groupoid (shared instance)."""
    return _TERMINAL


def discrete(objects):
    """Discrete groupoid; ``objects`` is a count or an iterable of identifiers."""
    if isinstance(objects, int):
        objects = range(objects)
    objects = list(objects)
    return TableGroupoid(
        objects,
        {("id", x): (x, x) for x in objects},
        {x: ("id", x) for x in objects},
        {(("id", x), ("id", x)): ("id", x) for x in objects},
    )


def one_object(group, label="*"):
    """The delooping BG of a table group."""
    return skeletal_groupoid([(label, group)])


def connected(group, n_objects, label="c"):
    """Connected groupoid with ``n_objects`` objects, each with automorphism group ``group``.

    Objects ``(label, i)``; morphisms ``(label, i, j, a)`` : i -> j.
    """
    g = group if isinstance(group, groups.FiniteGroup) else groups.FiniteGroup(group)
    objs = [(label, i) for i in range(n_objects)]
    morph = {}
    for i in range(n_objects):
        for j in range(n_objects):
            for a in range(g.order):
                morph[(label, i, j, a)] = ((label, i), (label, j))
    comp = {}
    for i in range(n_objects):
        for j in range(n_objects):
            for k in range(n_objects):
                for a in range(g.order):
                    for b in range(g.order):
                        comp[((label, j, k, b), (label, i, j, a))] = (label, i, k, g.mul(b, a))
    ids = {(label, i): (label, i, i, 0) for i in range(n_objects)}
    return TableGroupoid(objs, morph, ids, comp)



def action_groupoid(group, points, act):
    """Action groupoid of a table group acting on ``points`` via ``act(a, p)``.

    Morphisms ``(a, p) : p -> act(a, p)``.
    """
    points = list(points)
    morph = {}
    comp = {}
    for p in points:
        for a in range(group.order):
            morph[(a, p)] = (p, act(a, p))
    for p in points:
        for a in range(group.order):
            q = act(a, p)
            for b in range(group.order):
                comp[((b, q), (a, p))] = (group.mul(b, a), p)
    return TableGroupoid(points, morph, {p: (0, p) for p in points}, comp)


# -- skeleta ------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletalGroupoid:
    """One entry per component: (label, Cayley table of the automorphism group)."""

    components: tuple

    def __post_init__(self):
        comps = tuple(
            (label, g if isinstance(g, groups.FiniteGroup) else groups.FiniteGroup(g))
            for label, g in self.components
        )
        object.__setattr__(self, "components", comps)

    def group_orders(self):
        return sorted(g.order for _, g in self.components)

    def validate(self):
        out = []
        labels = [lab for lab, _ in self.components]
        if len(set(labels)) != len(labels):
            out.append(Violation("duplicate component label", tuple(labels)))
        for lab, g in self.components:
            for msg in g.validate():
                out.append(Violation("group axiom", (lab,), msg))
        return out

    def to_groupoid(self):
        bad = self.validate()
        if bad:
            raise ValidationError("skeletal groupoid", bad)
        objs, morph, ids, comp = [], {}, {}, {}
        for lab, g in self.components:
            objs.append(lab)
            ids[lab] = (lab, 0)
            for a in range(g.order):
                morph[(lab, a)] = (lab, lab)
                for b in range(g.order):
                    comp[((lab, a), (lab, b))] = (lab, g.mul(a, b))
        return TableGroupoid(objs, morph, ids, comp)


def skeletal_groupoid(components):
    """Expand a skeletal list ``[(label, group_or_table), ...]`` to a table groupoid."""
    return SkeletalGroupoid(tuple(components)).to_groupoid()


def skeletalize(g):
    comps = []
    for c in g.components:
        r = c.representative
        auts = g.automorphisms(r)
        index = {a: i for i, a in enumerate(auts)}
        table = [[index[g.compose(a, b)] for b in auts] for a in auts]
        comps.append((r, groups.FiniteGroup(table)))
    return SkeletalGroupoid(tuple(comps))


def equivalent(a, b, cap=groups.DEFAULT_GROUP_CAP):
    """Decide equivalence of two finite 1-groupoids.

    True iff the components can be matched with isomorphic automorphism
    groups.  Raises SizeCapError rather than answering when a group exceeds ``cap``.
    """
    sa, sb = skeletalize(a), skeletalize(b)
    for _, grp in sa.components + sb.components:
        if grp.order > cap:
            raise SizeCapError(f"undecided: group too large (order {grp.order}; cap {cap})")
    if sa.group_orders() != sb.group_orders():
        return False
    remaining = [grp for _, grp in sb.components]
    for _, grp in sa.components:
        for i, other in enumerate(remaining):
            if other.order == grp.order and groups.is_isomorphic(grp, other, cap):
                del remaining[i]
                break
        else:
            return False
    return True


# -- sums and products --------------------------------------------------------


class SumGroupoid(FiniteGroupoid):
    """Disjoint union; identifiers are tagged ``("L", x)`` / ``("R", y)``."""

    def __init__(self, left, right):
        self.left, self.right = left, right
        self.objects = tuple([("L", x) for x in left.objects] + [("R", y) for y in right.objects])

    def _side(self, tag):
        return self.left if tag == "L" else self.right

    def src(self, m):
        return (m[0], self._side(m[0]).src(m[1]))

    def tgt(self, m):
        return (m[0], self._side(m[0]).tgt(m[1]))

    def identity(self, x):
        return (x[0], self._side(x[0]).identity(x[1]))

    def compose(self, g, f):
        if g[0] != f[0]:
            raise CompositionError((g, f))
        return (g[0], self._side(g[0]).compose(g[1], f[1]))

    def inverse(self, f):
        return (f[0], self._side(f[0]).inverse(f[1]))

    def out(self, x):
        return tuple((x[0], m) for m in self._side(x[0]).out(x[1]))

    def hom(self, a, b):
        if a[0] != b[0]:
            return ()
        return tuple((a[0], m) for m in self._side(a[0]).hom(a[1], b[1]))

    def out_degree(self, x):
        return self._side(x[0]).out_degree(x[1])

    def move_morphisms(self, x):
        return tuple((x[0], m) for m in self._side(x[0]).move_morphisms(x[1]))

    def __eq__(self, other):
        return isinstance(other, SumGroupoid) and (self.left, self.right) == (
            other.left,
            other.right,
        )

    def __hash__(self):
        return hash(("sum", self.left, self.right))


class ProductGroupoid(FiniteGroupoid):
    """Cartesian product; objects and morphisms are pairs."""

    def __init__(self, left, right):
        self.left, self.right = left, right

    @cached_property
    def objects(self):
        return tuple((a, b) for a in self.left.objects for b in self.right.objects)

    def has_object(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.left.has_object(x[0])
            and self.right.has_object(x[1])
        )

    def src(self, m):
        return (self.left.src(m[0]), self.right.src(m[1]))

    def tgt(self, m):
        return (self.left.tgt(m[0]), self.right.tgt(m[1]))

    def identity(self, x):
        return (self.left.identity(x[0]), self.right.identity(x[1]))

    def compose(self, g, f):
        return (self.left.compose(g[0], f[0]), self.right.compose(g[1], f[1]))

    def inverse(self, f):
        return (self.left.inverse(f[0]), self.right.inverse(f[1]))

    def out(self, x):
        return tuple((u, v) for u in self.left.out(x[0]) for v in self.right.out(x[1]))

    def hom(self, a, b):
        return tuple(
            (u, v) for u in self.left.hom(a[0], b[0]) for v in self.right.hom(a[1], b[1])
        )

    def out_degree(self, x):
        return self.left.out_degree(x[0]) * self.right.out_degree(x[1])

    def move_morphisms(self, x):
        a, b = x
        ia, ib = self.left.identity(a), self.right.identity(b)
        return tuple((u, ib) for u in self.left.move_morphisms(a)) + tuple(
            (ia, v) for v in self.right.move_morphisms(b)
        )

    @cached_property
    def _components(self):
        # Least element of a product class is the pair of least elements.
        comps = []
        for ca in self.left.components:
            for cb in self.right.components:
                comps.append(
                    Component(
                        (ca.representative, cb.representative),
                        frozenset((x, y) for x in ca.object_class for y in cb.object_class),
                        ca.aut_order * cb.aut_order,
                    )
                )
        comps.sort(key=lambda c: sort_key(c.representative))
        return tuple(comps), None

    def component_index(self, x):
        return self._comp_lookup[
            (self.left.component_index(x[0]), self.right.component_index(x[1]))
        ]

    @cached_property
    def _comp_lookup(self):
        pos = {c.representative: i for i, c in enumerate(self.components)}
        return {
            (i, j): pos[(ca.representative, cb.representative)]
            for i, ca in enumerate(self.left.components)
            for j, cb in enumerate(self.right.components)
        }

    def __eq__(self, other):
        return isinstance(other, ProductGroupoid) and (self.left, self.right) == (
            other.left,
            other.right,
        )

    def __hash__(self):
        return hash(("product", self.left, self.right))

    def __repr__(self):
        return f"ProductGroupoid({self.left!r}, {self.right!r})"


def sum(a, b):  # noqa: A001 - mirrors the operation name
    return SumGroupoid(a, b)


def product(a, b):
    return ProductGroupoid(a, b)


class FullSubgroupoid(FiniteGroupoid):
    """Full subgroupoid on a set of objects closed under isomorphism."""

    def __init__(self, ambient, objects):
        self.ambient = ambient
        keep = set(objects)
        self.objects = tuple(x for x in ambient.objects if x in keep)
        self._keep = frozenset(keep)

    def src(self, m):
        return self.ambient.src(m)

    def tgt(self, m):
        return self.ambient.tgt(m)

    def identity(self, x):
        return self.ambient.identity(x)

    def compose(self, g, f):
        return self.ambient.compose(g, f)

    def inverse(self, f):
        return self.ambient.inverse(f)

    def out(self, x):
        return self.ambient.out(x)

    def hom(self, a, b):
        return self.ambient.hom(a, b)

    def out_degree(self, x):
        return self.ambient.out_degree(x)

    def move_morphisms(self, x):
        return self.ambient.move_morphisms(x)


class SkeletonSubgroupoid(FiniteGroupoid):
    """Full subgroupoid on one representative per component.

    Equivalent to the ambient groupoid; only automorphism groups of the
    representatives are ever enumerated.
    """

    def __init__(self, ambient):
        self.ambient = ambient
        self.objects = tuple(c.representative for c in ambient.components)
        self._keep = frozenset(self.objects)

    def src(self, m):
        return self.ambient.src(m)

    def tgt(self, m):
        return self.ambient.tgt(m)

    def identity(self, x):
        return self.ambient.identity(x)

    def compose(self, g, f):
        return self.ambient.compose(g, f)

    def inverse(self, f):
        return self.ambient.inverse(f)

    def out(self, x):
        return self.ambient.automorphisms(x)

    def hom(self, a, b):
        return self.ambient.automorphisms(a) if a == b and a in self._keep else ()

    def out_degree(self, x):
        return self.ambient.component_of(x).aut_order

    def move_morphisms(self, x):
        return tuple(
            groups.generating_set(self.ambient.automorphisms(x), self.compose, self.identity(x))
        )


def union_of_components(g, reps):
    """Full subgroupoid spanned by the components of the given objects."""
    keep = set()
    for r in reps:
        keep |= g.component_of(r).object_class
    return FullSubgroupoid(g, keep)


# -- truncated spaces ---------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSpace:
    """Per component, the orders of pi_1, pi_2, ..., pi_n (higher ones trivial)."""

    components: tuple

    def __post_init__(self):
        comps = tuple((lab, tuple(orders)) for lab, orders in self.components)
        object.__setattr__(self, "components", comps)

    def validate(self):
        return [
            Violation("homotopy group order must be >= 1", (lab,), str(orders))
            for lab, orders in self.components
            if any(not isinstance(o, int) or o < 1 for o in orders)
        ]


def truncated_from_groupoid(g):
    return TruncatedSpace(tuple((c.representative, (c.aut_order,)) for c in g.components))


def check_same(a, b, what="groupoid"):
    if a != b:
        raise MismatchError(f"{what} mismatch")


_EMPTY = TableGroupoid([], {}, {}, {})
_TERMINAL = TableGroupoid(["*"], {"1": ("*", "*")}, {"*": "1"}, {("1", "1"): "1"})
