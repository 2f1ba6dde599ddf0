"""Incidence coalgebras of finite categories and posets via the fat nerve.

The nerve is kept to levels 0, 1, 2.  Level k has the k-chains of the
category as objects and ladders of isomorphisms between them as morphisms;
for a poset every level is discrete.
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from . import groups
from ._util import sorted_ids
from .cardinality import span_matrix
from .errors import NotInvertibleError, ValidationError
from .functor import GroupoidFunctor, identity_functor, pairing, to_terminal
from .groupoid import (
    CompositionError,
    FiniteGroupoid,
    ProductGroupoid,
    TableGroupoid,
    Violation,
    _validate_table,
)
from .rational import QFunction, QMatrix, identity_matrix, apply_matrix_pro, solve
from .span import Span, compose_spans, identity_span, tensor_span


class FiniteCategory:
    """Finite category by explicit tables (no invertibility required)."""

    def __init__(self, objects, morphisms, identities, compose):
        self.objects = tuple(objects)
        self._ends = dict(morphisms)
        self._ids = dict(identities)
        self._table = dict(compose)
        out = defaultdict(list)
        for m, (s, _) in self._ends.items():
            out[s].append(m)
        self._out = {x: tuple(sorted_ids(out.get(x, ()))) for x in self.objects}
        homs = defaultdict(list)
        for m, (s, t) in self._ends.items():
            homs[(s, t)].append(m)
        self._homs = {k: tuple(sorted_ids(v)) for k, v in homs.items()}

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

    def out(self, x):
        return self._out.get(x, ())

    def hom(self, a, b):
        return self._homs.get((a, b), ())

    @cached_property
    def morphisms(self):
        return tuple(sorted_ids(self._ends))

    def validate(self):
        return _validate_table(self, inverses=False)

    def check(self):
        bad = self.validate()
        if bad:
            raise ValidationError("category", bad)
        return self

    @cached_property
    def inverses(self):
        inv = {}
        for f in self.morphisms:
            s, t = self._ends[f]
            for g in self.hom(t, s):
                if self._table.get((g, f)) == self._ids[s] and self._table.get((f, g)) == self._ids[t]:
                    inv[f] = g
                    break
        return inv

    @cached_property
    def core(self):
        """Maximal subgroupoid (objects and isomorphisms)."""
        isos = self.inverses
        ends = {f: self._ends[f] for f in isos}
        comp = {(g, f): h for (g, f), h in self._table.items() if g in isos and f in isos}
        g = TableGroupoid(self.objects, ends, self._ids, comp, inverses=isos)
        g._valid = []  # the isos of a valid category form a valid groupoid
        return g

    @cached_property
    def iso_generators(self):
        """Per object, isos out of it whose forward composites give every iso."""
        core = self.core
        gens = {}
        for c in core.components:
            r = c.representative
            auts = core.automorphisms(r)
            ggens = groups.generating_set(auts, core.compose, core.identity(r))
            for x in c.object_class:
                tx = core.transport(x)
                txi = core.inverse(tx)
                moves = [core.compose(tx, core.compose(g, txi)) for g in ggens]
                moves += [core.compose(core.transport(y), txi) for y in c.object_class if y != x]
                gens[x] = tuple(moves)
        return gens

    @cached_property
    def iso_out(self):
        return {x: self.core.out(x) for x in self.objects}


class FinitePoset:
    """Poset from cover relations; ``leq`` is the reflexive-transitive closure."""

    def __init__(self, elements, covers):
        self.elements = tuple(elements)
        self.covers = tuple(tuple(c) for c in covers)

    @cached_property
    def leq(self):
        up = {a: {a} for a in self.elements}
        succ = defaultdict(list)
        for a, b in self.covers:
            succ[a].append(b)
        for a in self.elements:
            stack = [a]
            while stack:
                x = stack.pop()
                for y in succ[x]:
                    if y not in up[a]:
                        up[a].add(y)
                        stack.append(y)
        return frozenset((a, b) for a in self.elements for b in up[a])

    def validate(self):
        out = []
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            out.append(Violation("duplicate element", ()))
        for a, b in self.covers:
            if a not in elems or b not in elems:
                out.append(Violation("cover mentions unknown element", (a, b)))
        if out:
            return out
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                out.append(Violation("antisymmetry", (a, b)))
        return out

    def check(self):
        bad = self.validate()
        if bad:
            raise ValidationError("poset", bad)
        return self

    def interval(self, a, b):
        return [y for y in self.elements if (a, y) in self.leq and (y, b) in self.leq]

    def to_category(self):
        self.check()
        rel = sorted_ids(self.leq)
        comp = {}
        for a, b in rel:
            for c in self.elements:
                if (b, c) in self.leq:
                    comp[((b, c), (a, b))] = (a, c)
        return FiniteCategory(
            self.elements, {r: r for r in rel}, {a: (a, a) for a in self.elements}, comp
        )


def chain_poset(n):
    """``0 < 1 < ... < n-1``."""
    return FinitePoset(range(n), [(i, i + 1) for i in range(n - 1)])


def boolean_lattice(n):
    elems = list(range(2**n))
    covers = [(a, a | (1 << i)) for a in elems for i in range(n) if not a & (1 << i)]
    return FinitePoset(elems, covers)


def divisor_lattice(n):
    elems = [d for d in range(1, n + 1) if n % d == 0]
    covers = [
        (a, b)
        for a in elems
        for b in elems
        if b % a == 0 and b != a and all(not (c % a == 0 and b % c == 0) for c in elems if c not in (a, b))
    ]
    return FinitePoset(elems, covers)


# -- fat nerve ----------------------------------------------------------------


class FatNerveLevel(FiniteGroupoid):
    """Level k >= 1 of the fat nerve of a finite category.

    Objects: k-chains (a morphism for k = 1, a tuple of k morphisms otherwise).
    Morphisms: ``(chain, (a_0, ..., a_k))`` with ``a_i`` an iso out of the i-th
    vertex; it lands at the chain with ``f_i' = a_i o f_i o a_{i-1}^-1``.
    """

    def __init__(self, C, k):
        assert k >= 1
        self.C, self.k = C, k
        if k == 1:
            objs = list(C.morphisms)
        else:
            chains = [(f,) for f in C.morphisms]
            for _ in range(k - 1):
                chains = [ch + (g,) for ch in chains for g in C.out(C.tgt(ch[-1]))]
            objs = chains
        self.objects = tuple(sorted_ids(objs))

    def _chain(self, x):
        return (x,) if self.k == 1 else x

    def _wrap(self, ch):
        return ch[0] if self.k == 1 else tuple(ch)

    def vertices(self, x):
        ch = self._chain(x)
        return (self.C.src(ch[0]),) + tuple(self.C.tgt(f) for f in ch)

    def src(self, m):
        return m[0]

    def tgt(self, m):
        x, alphas = m
        C = self.C
        inv = C.inverses
        ch = self._chain(x)
        return self._wrap(
            [C.compose(alphas[i + 1], C.compose(f, inv[alphas[i]])) for i, f in enumerate(ch)]
        )

    def identity(self, x):
        return (x, tuple(self.C.identity(c) for c in self.vertices(x)))

    def compose(self, g, f):
        if self.tgt(f) != g[0]:
            raise CompositionError((g, f))
        return (f[0], tuple(self.C.compose(b, a) for b, a in zip(g[1], f[1])))

    def inverse(self, f):
        inv = self.C.inverses
        return (self.tgt(f), tuple(inv[a] for a in f[1]))

    def out(self, x):
        return tuple((x, al) for al in iproduct(*[self.C.iso_out[c] for c in self.vertices(x)]))

    def hom(self, a, b):
        pairs = zip(self.vertices(a), self.vertices(b))
        cands = [[i for i in self.C.iso_out[c] if self.C.tgt(i) == d] for c, d in pairs]
        return tuple(m for m in ((a, al) for al in iproduct(*cands)) if self.tgt(m) == b)

    def out_degree(self, x):
        return math.prod(len(self.C.iso_out[c]) for c in self.vertices(x))

    def move_morphisms(self, x):
        verts = self.vertices(x)
        ids = [self.C.identity(c) for c in verts]
        moves = []
        for i, c in enumerate(verts):
            for a in self.C.iso_generators[c]:
                al = list(ids)
                al[i] = a
                moves.append((x, tuple(al)))
        return tuple(moves)


@dataclass(frozen=True, eq=False)
class NerveLevels:
    category: FiniteCategory
    X0: FiniteGroupoid
    X1: FiniteGroupoid
    X2: FiniteGroupoid
    d0: GroupoidFunctor  # X2 -> X1, drops the first arrow
    d1: GroupoidFunctor  # X2 -> X1, composes
    d2: GroupoidFunctor  # X2 -> X1, drops the last arrow
    s0: GroupoidFunctor  # X0 -> X1, identities
    source: GroupoidFunctor  # X1 -> X0
    target: GroupoidFunctor  # X1 -> X0

    @cached_property
    def X1xX1(self):
        return ProductGroupoid(self.X1, self.X1)


def fat_nerve(C, validate=True):
    """Levels 0..2 of the fat nerve.  ``validate=False`` skips the cubic
    associativity check for categories built by trusted code."""
    if isinstance(C, FinitePoset):
        C = C.to_category()
    if validate:
        C.check()
    X0 = C.core
    X1 = FatNerveLevel(C, 1)
    X2 = FatNerveLevel(C, 2)
    d0 = GroupoidFunctor(X2, X1, lambda x: x[1], lambda m: (m[0][1], (m[1][1], m[1][2])))
    d1 = GroupoidFunctor(
        X2, X1, lambda x: C.compose(x[1], x[0]), lambda m: (C.compose(m[0][1], m[0][0]), (m[1][0], m[1][2]))
    )
    d2 = GroupoidFunctor(X2, X1, lambda x: x[0], lambda m: (m[0][0], (m[1][0], m[1][1])))
    s0 = GroupoidFunctor(
        X0, X1, lambda c: C.identity(c), lambda a: (C.identity(C.src(a)), (a, a))
    )
    source = GroupoidFunctor(X1, X0, lambda f: C.src(f), lambda m: m[1][0])
    target = GroupoidFunctor(X1, X0, lambda f: C.tgt(f), lambda m: m[1][1])
    return NerveLevels(C, X0, X1, X2, d0, d1, d2, s0, source, target)


def check_simplicial(n, max_morphisms=20000):
    """Simplicial identities among the stored face/degeneracy maps."""
    out = []
    pairs = [
        ("d0d1=d0d0", n.target, n.d1, n.target, n.d0),
        ("d0d2=d1d0", n.target, n.d2, n.source, n.d0),
        ("d1d2=d1d1", n.source, n.d2, n.source, n.d1),
    ]
    for label, a, b, c, d in pairs:
        for x in n.X2.objects:
            if a.obj(b.obj(x)) != c.obj(d.obj(x)):
                out.append(Violation(label, (x,)))
        for i, x in enumerate(n.X2.objects):
            if i * n.X2.out_degree(x) > max_morphisms:
                break
            for m in n.X2.out(x):
                if a.mor(b.mor(m)) != c.mor(d.mor(m)):
                    out.append(Violation(label, (m,)))
    for c in n.X0.objects:
        if n.source.obj(n.s0.obj(c)) != c or n.target.obj(n.s0.obj(c)) != c:
            out.append(Violation("d s0 = id", (c,)))
        for a in n.X0.out(c):
            if n.source.mor(n.s0.mor(a)) != a or n.target.mor(n.s0.mor(a)) != a:
                out.append(Violation("d s0 = id", (a,)))
    return out


# -- coalgebra spans ----------------------------------------------------------


def comultiplication_span(n):
    """``X1 <-d1- X2 -(d2,d0)-> X1 x X1``."""
    return Span(n.d1, pairing(n.d2, n.d0, n.X1xX1))


def counit_span(n):
    """``X1 <-s0- X0 -> 1``."""
    return Span(n.s0, to_terminal(n.X0))


def zeta_span(n):
    """``X1 <-id- X1 -> 1``."""
    return Span(identity_functor(n.X1), to_terminal(n.X1))


def _row_function(A, index):
    # single-row matrix (row "*") read as a function on its columns
    return QFunction(index, {c: A[("*", c)] for c in index})


def labels(G):
    return tuple(c.representative for c in G.components)


def counit_function(n, method="fibres"):
    return _row_function(span_matrix(counit_span(n), method=method), labels(n.X1))


def zeta_function(n, method="fibres"):
    return _row_function(span_matrix(zeta_span(n), method=method), labels(n.X1))


def comultiplication_matrix(n, method="fibres"):
    return span_matrix(comultiplication_span(n), method=method)


def convolution(f, g, n, comult=None):
    """``(f * g)(a) = sum over (b, c) of Delta[(b, c), a] f(b) g(c)``."""
    A = comult if comult is not None else comultiplication_matrix(n)
    if f.index != A.cols or g.index != A.cols:
        from .errors import MismatchError

        raise MismatchError("convolution: functions must be indexed by the components of X1")
    fg = QFunction(A.rows, {(b, c): f[b] * g[c] for (b, c) in A.rows})
    return apply_matrix_pro(fg, A)


def mobius_numeric(n, comult=None):
    """Convolution inverse of zeta, by exact elimination.

    Solves ``zeta * mu = epsilon`` and checks ``mu * zeta = epsilon`` too.
    """
    A = comult if comult is not None else comultiplication_matrix(n)
    zeta = zeta_function(n)
    eps = counit_function(n)
    K = defaultdict(int)
    for ((b, c), a), v in A.entries.items():
        K[(a, c)] += v * zeta[b]
    try:
        mu = solve(QMatrix(A.cols, A.cols, K), eps)
    except NotInvertibleError:
        raise NotInvertibleError("zeta is not convolution-invertible") from None
    if convolution(mu, zeta, n, A) != eps:
        raise NotInvertibleError("zeta has a right inverse that is not a left inverse")
    return mu


# -- coassociativity and counit laws -----------------------------------------


def coassociativity_matrices(n, method="components", skeletal=True):
    """Matrices of ``(Delta x id) o Delta`` and ``(id x Delta) o Delta``, both
    with rows relabelled to ``(a, b, c)``."""
    D = comultiplication_span(n)
    ident = identity_span(n.X1)
    left = compose_spans(D, tensor_span(D, ident), skeletal)
    right = compose_spans(D, tensor_span(ident, D), skeletal)
    A = span_matrix(left, method=method).relabel(row_map=lambda r: (r[0][0], r[0][1], r[1]))
    B = span_matrix(right, method=method).relabel(row_map=lambda r: (r[0], r[1][0], r[1][1]))
    return A.sorted_bases(), B.sorted_bases()


def counit_law_matrices(n, method="components", skeletal=True):
    """Matrices of ``(eps x id) o Delta`` and ``(id x eps) o Delta`` relabelled onto X1."""
    D = comultiplication_span(n)
    E = counit_span(n)
    ident = identity_span(n.X1)
    left = compose_spans(D, tensor_span(E, ident), skeletal)
    right = compose_spans(D, tensor_span(ident, E), skeletal)
    A = span_matrix(left, method=method).relabel(row_map=lambda r: r[1])
    B = span_matrix(right, method=method).relabel(row_map=lambda r: r[0])
    return A.sorted_bases(), B.sorted_bases()


def identity_on_X1(n):
    return identity_matrix(labels(n.X1)).sorted_bases()


def category_from_groupoid(G):
    """View a finite groupoid as a finite category."""
    morphs = G.morphisms
    ends = {m: (G.src(m), G.tgt(m)) for m in morphs}
    comp = {}
    for f in morphs:
        for g in G.out(G.tgt(f)):
            comp[(g, f)] = G.compose(g, f)
    return FiniteCategory(G.objects, ends, {x: G.identity(x) for x in G.objects}, comp)
