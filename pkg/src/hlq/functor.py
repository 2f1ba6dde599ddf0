"""Functors between finite groupoids and the groupoid of functors."""

import math
from collections.abc import Mapping
from functools import cached_property
from itertools import product as iproduct

from . import groups
from ._util import sorted_ids
from .errors import MismatchError, SizeCapError, ValidationError
from .groupoid import (
    CompositionError,
    FiniteGroupoid,
    ProductGroupoid,
    Violation,
    terminal,
)

DEFAULT_OBJECT_MAP_CAP = 10**6


def _as_callable(m):
    if isinstance(m, Mapping):
        return m.__getitem__
    return m


class GroupoidFunctor:
    """A functor ``source -> target``.

    The object and morphism maps may be mappings (explicit data, checked by
    :func:`check_functor`) or callables (constructed functors, evaluated lazily).
    """

    def __init__(self, source, target, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = object_map
        self.morphism_map = morphism_map
        self._fo = _as_callable(object_map)
        self._fm = _as_callable(morphism_map)

    def obj(self, x):
        return self._fo(x)

    def mor(self, m):
        return self._fm(m)

    def __repr__(self):
        return f"GroupoidFunctor({self.source!r} -> {self.target!r})"

    def materialize(self):
        """Copy with explicit dicts over every object and morphism of the source."""
        return GroupoidFunctor(
            self.source,
            self.target,
            {x: self.obj(x) for x in self.source.objects},
            {m: self.mor(m) for m in self.source.morphisms},
        )

    def check(self):
        bad = check_functor(self)
        if bad:
            raise ValidationError("functor", bad)
        return self


def check_functor(F):
    """Violations of functoriality (empty list iff F is a functor)."""
    X, Y = F.source, F.target
    out = []
    img = {}
    for x in X.objects:
        try:
            y = F.obj(x)
        except KeyError:
            out.append(Violation("undefined on object", (x,)))
            continue
        if not Y.has_object(y):
            out.append(Violation("object image not in target", (x, y)))
            continue
        img[x] = y
    if out:
        return out
    mimg = {}
    for m in X.morphisms:
        try:
            mimg[m] = F.mor(m)
        except KeyError:
            out.append(Violation("undefined on morphism", (m,)))
    if out:
        return out
    for m, fm in mimg.items():
        try:
            ends = (Y.src(fm), Y.tgt(fm))
        except KeyError:
            out.append(Violation("morphism image not in target", (m, fm)))
            continue
        if ends != (img[X.src(m)], img[X.tgt(m)]):
            out.append(Violation("source/target not preserved", (m,)))
    if out:
        return out
    for x in X.objects:
        if mimg[X.identity(x)] != Y.identity(img[x]):
            out.append(Violation("identity not preserved", (x,)))
    for f in X.morphisms:
        for g in X.out(X.tgt(f)):
            if mimg[X.compose(g, f)] != Y.compose(mimg[g], mimg[f]):
                out.append(Violation("composition not preserved", (g, f)))
    return out


# -- standard functors --------------------------------------------------------


def identity_functor(G):
    return GroupoidFunctor(G, G, lambda x: x, lambda m: m)


def compose_functors(G, F):
    """``G o F``."""
    if F.target != G.source:
        raise MismatchError("functors are not composable")
    return GroupoidFunctor(
        F.source, G.target, lambda x: G.obj(F.obj(x)), lambda m: G.mor(F.mor(m))
    )


def to_terminal(G):
    one = terminal()
    return GroupoidFunctor(G, one, lambda x: "*", lambda m: "1")


def name(S, s):
    """The functor ``1 -> S`` picking out ``s``."""
    if not S.has_object(s):
        raise MismatchError(f"{s!r} is not an object")
    ident = S.identity(s)
    return GroupoidFunctor(terminal(), S, {"*": s}, {"1": ident})


def constant(X, Y, y):
    ident = Y.identity(y)
    return GroupoidFunctor(X, Y, lambda x: y, lambda m: ident)


def proj_left(P):
    return GroupoidFunctor(P, P.left, lambda x: x[0], lambda m: m[0])


def proj_right(P):
    return GroupoidFunctor(P, P.right, lambda x: x[1], lambda m: m[1])


def pairing(F, G, target=None):
    """``<F, G> : X -> A x B`` for functors out of a common source."""
    if F.source != G.source:
        raise MismatchError("pairing needs a common source")
    target = target or ProductGroupoid(F.target, G.target)
    return GroupoidFunctor(
        F.source, target, lambda x: (F.obj(x), G.obj(x)), lambda m: (F.mor(m), G.mor(m))
    )


def product_functor(F, G, source=None, target=None):
    """``F x G : A x B -> C x D``."""
    source = source or ProductGroupoid(F.source, G.source)
    target = target or ProductGroupoid(F.target, G.target)
    return GroupoidFunctor(
        source,
        target,
        lambda x: (F.obj(x[0]), G.obj(x[1])),
        lambda m: (F.mor(m[0]), G.mor(m[1])),
    )


# -- functors from per-component data ----------------------------------------


def _aut_data(X, r):
    auts = X.automorphisms(r)
    gens = groups.generating_set(auts, X.compose, X.identity(r))
    return auts, gens


def functor_from_choices(X, Y, choices):
    """Build the functor determined by per-component data.

    ``choices`` maps each representative ``r`` of X to ``(images, transports, phi)``
    where ``images[x]`` is F(x) for x in r's class, ``transports[x]`` is the image
    of the fixed transport ``r -> x`` (a morphism F(r) -> F(x) in Y), and ``phi``
    a homomorphism Aut(r) -> Aut(F r) given as a dict.
    """
    omap, mmap = {}, {}
    for c in X.components:
        images, transports, phi = choices[c.representative]
        omap.update(images)
    for m in X.morphisms:
        x, x2 = X.src(m), X.tgt(m)
        r = X.representative(x)
        images, transports, phi = choices[r]
        loop = X.compose(X.inverse(X.transport(x2)), X.compose(m, X.transport(x)))
        fm = Y.compose(transports[x2], Y.compose(phi[loop], Y.inverse(transports[x])))
        mmap[m] = fm
    return GroupoidFunctor(X, Y, omap, mmap)


def component_choices(X, Y, r):
    """All (images, transports, phi) for the component of ``r``."""
    cls = sorted_ids(X.component_of(r).object_class)
    auts, gens = _aut_data(X, r)
    others = [x for x in cls if x != r]
    for b in Y.objects:
        yauts = Y.automorphisms(b)
        homs = list(
            groups.homomorphisms(auts, X.compose, X.identity(r), yauts, Y.compose,
                                 Y.identity(b), gens)
        )
        cls_b = sorted_ids(Y.component_of(b).object_class)
        for targets in iproduct(cls_b, repeat=len(others)):
            hom_lists = [Y.hom(b, t) for t in targets]
            for trans in iproduct(*hom_lists):
                images = {r: b, **dict(zip(others, targets))}
                transports = {r: Y.identity(b), **dict(zip(others, trans))}
                for phi in homs:
                    yield images, transports, phi


def random_functor(X, Y, rng):
    """A uniformly chosen functor component by component (Y must be non-empty
    whenever X is)."""
    choices = {}
    for c in X.components:
        r = c.representative
        cls = sorted_ids(c.object_class)
        auts, gens = _aut_data(X, r)
        b = rng.choice(list(Y.objects))
        yauts = Y.automorphisms(b)
        homs = list(
            groups.homomorphisms(auts, X.compose, X.identity(r), yauts, Y.compose,
                                 Y.identity(b), gens)
        )
        phi = rng.choice(homs)
        cls_b = sorted_ids(Y.component_of(b).object_class)
        images, transports = {r: b}, {r: Y.identity(b)}
        for x in cls:
            if x == r:
                continue
            t = rng.choice(cls_b)
            images[x] = t
            transports[x] = rng.choice(list(Y.hom(b, t)))
        choices[r] = (images, transports, phi)
    return functor_from_choices(X, Y, choices)


# -- functor groupoid ---------------------------------------------------------


class FunctorGroupoid(FiniteGroupoid):
    """``Map(X, Y)``: functors X -> Y and natural isomorphisms.

    A functor is stored as ``(object images, morphism images)`` aligned with
    ``X.objects`` and ``X.morphisms``; a natural isomorphism as
    ``(F, components)`` with one Y-morphism per object of X.
    """

    def __init__(self, X, Y, cap=DEFAULT_OBJECT_MAP_CAP):
        candidates = len(Y.objects) ** len(X.objects)
        if candidates > cap:
            raise SizeCapError(
                f"too large: {candidates} candidate object maps exceed cap {cap}"
            )
        self.X, self.Y = X, Y
        self._xobjs = tuple(X.objects)
        self._xmors = tuple(X.morphisms)
        self._mpos = {m: i for i, m in enumerate(self._xmors)}

    @cached_property
    def objects(self):
        X, Y = self.X, self.Y
        per_comp = []
        for c in X.components:
            per_comp.append((c.representative, list(component_choices(X, Y, c.representative))))
        found = set()
        for combo in iproduct(*[opts for _, opts in per_comp]):
            choices = {r: data for (r, _), data in zip(per_comp, combo)}
            found.add(self.encode(functor_from_choices(X, Y, choices)))
        return tuple(sorted_ids(found))

    def encode(self, F):
        return (
            tuple(F.obj(x) for x in self._xobjs),
            tuple(F.mor(m) for m in self._xmors),
        )

    def decode(self, code):
        omap = dict(zip(self._xobjs, code[0]))
        mmap = dict(zip(self._xmors, code[1]))
        return GroupoidFunctor(self.X, self.Y, omap, mmap)

    def src(self, m):
        return m[0]

    def tgt(self, m):
        F, eta = m
        X, Y = self.X, self.Y
        fobj, fmor = F
        gobj = tuple(Y.tgt(e) for e in eta)
        opos = {x: i for i, x in enumerate(self._xobjs)}
        gmor = []
        for m_, fm in zip(self._xmors, fmor):
            i, j = opos[X.src(m_)], opos[X.tgt(m_)]
            gmor.append(Y.compose(eta[j], Y.compose(fm, Y.inverse(eta[i]))))
        return (gobj, tuple(gmor))

    def identity(self, F):
        return (F, tuple(self.Y.identity(y) for y in F[0]))

    def compose(self, g, f):
        if g[0] != self.tgt(f):
            raise CompositionError((g, f))
        return (f[0], tuple(self.Y.compose(b, a) for b, a in zip(g[1], f[1])))

    def inverse(self, f):
        return (self.tgt(f), tuple(self.Y.inverse(e) for e in f[1]))

    def out(self, F):
        return tuple((F, eta) for eta in iproduct(*[self.Y.out(y) for y in F[0]]))

    def out_degree(self, F):
        return math.prod(self.Y.out_degree(y) for y in F[0])

    def move_morphisms(self, F):
        ids = [self.Y.identity(y) for y in F[0]]
        moves = []
        for i, y in enumerate(F[0]):
            for e in self.Y.move_morphisms(y):
                eta = list(ids)
                eta[i] = e
                moves.append((F, tuple(eta)))
        return tuple(moves)


def functor_groupoid(X, Y, cap=DEFAULT_OBJECT_MAP_CAP):
    return FunctorGroupoid(X, Y, cap)
