"""Homotopy fibres and homotopy pullbacks (iso-comma constructions)."""

from collections import defaultdict

from ._util import sorted_ids
from .errors import MismatchError
from .functor import GroupoidFunctor, name
from .groupoid import CompositionError, FiniteGroupoid, union_of_components


class FibreGroupoid(FiniteGroupoid):
    """Homotopy fibre of ``F : X -> B`` over ``b``.

    Objects ``(x, beta)`` with ``beta : F(x) -> b``; a morphism ``(u, beta)``
    is ``u : x -> x'`` viewed from the object ``(x, beta)``, landing at
    ``(x', beta o F(u)^-1)``.
    """

    def __init__(self, F, b):
        if not F.target.has_object(b):
            raise MismatchError(f"{b!r} is not an object of the base")
        self.F, self.b = F, b
        X, B = F.source, F.target
        objs = [(x, beta) for x in X.objects for beta in B.hom(F.obj(x), b)]
        self.objects = tuple(sorted_ids(objs))

    def src(self, m):
        u, beta = m
        return (self.F.source.src(u), beta)

    def tgt(self, m):
        u, beta = m
        B = self.F.target
        return (self.F.source.tgt(u), B.compose(beta, B.inverse(self.F.mor(u))))

    def identity(self, x):
        return (self.F.source.identity(x[0]), x[1])

    def compose(self, g, f):
        if self.tgt(f) != self.src(g):
            raise CompositionError((g, f))
        return (self.F.source.compose(g[0], f[0]), f[1])

    def inverse(self, f):
        return (self.F.source.inverse(f[0]), self.tgt(f)[1])

    def out(self, x):
        return tuple((u, x[1]) for u in self.F.source.out(x[0]))

    def hom(self, a, b):
        return tuple(m for m in ((u, a[1]) for u in self.F.source.hom(a[0], b[0]))
                     if self.tgt(m) == b)

    def out_degree(self, x):
        return self.F.source.out_degree(x[0])

    def move_morphisms(self, x):
        return tuple((u, x[1]) for u in self.F.source.move_morphisms(x[0]))

    def projection(self):
        return GroupoidFunctor(self, self.F.source, lambda o: o[0], lambda m: m[0])


class PullbackGroupoid(FiniteGroupoid):
    """Homotopy pullback of ``F : X -> B <- Y : G``.

    Objects ``(x, y, beta)`` with ``beta : F(x) -> G(y)``; a morphism
    ``(u, v, beta)`` starts at ``(x, y, beta)`` and lands at
    ``(x', y', G(v) o beta o F(u)^-1)``.
    """

    def __init__(self, F, G):
        if F.target != G.target:
            raise MismatchError("cospan legs have different targets")
        self.F, self.G = F, G
        X, Y, B = F.source, G.source, F.target
        by_image = defaultdict(list)
        for y in Y.objects:
            by_image[G.obj(y)].append(y)
        objs = []
        for x in X.objects:
            for beta in B.out(F.obj(x)):
                for y in by_image.get(B.tgt(beta), ()):
                    objs.append((x, y, beta))
        self.objects = tuple(sorted_ids(objs))

    def src(self, m):
        u, v, beta = m
        return (self.F.source.src(u), self.G.source.src(v), beta)

    def _transport(self, u, v, beta):
        B = self.F.target
        return B.compose(self.G.mor(v), B.compose(beta, B.inverse(self.F.mor(u))))

    def tgt(self, m):
        u, v, beta = m
        return (self.F.source.tgt(u), self.G.source.tgt(v), self._transport(u, v, beta))

    def identity(self, x):
        return (self.F.source.identity(x[0]), self.G.source.identity(x[1]), x[2])

    def compose(self, g, f):
        if self.tgt(f) != self.src(g):
            raise CompositionError((g, f))
        return (
            self.F.source.compose(g[0], f[0]),
            self.G.source.compose(g[1], f[1]),
            f[2],
        )

    def inverse(self, f):
        return (self.F.source.inverse(f[0]), self.G.source.inverse(f[1]), self.tgt(f)[2])

    def out(self, x):
        X, Y = self.F.source, self.G.source
        return tuple((u, v, x[2]) for u in X.out(x[0]) for v in Y.out(x[1]))

    def hom(self, a, b):
        X, Y = self.F.source, self.G.source
        return tuple(
            (u, v, a[2])
            for u in X.hom(a[0], b[0])
            for v in Y.hom(a[1], b[1])
            if self._transport(u, v, a[2]) == b[2]
        )

    def out_degree(self, x):
        return self.F.source.out_degree(x[0]) * self.G.source.out_degree(x[1])

    def move_morphisms(self, x):
        X, Y = self.F.source, self.G.source
        ix, iy = X.identity(x[0]), Y.identity(x[1])
        return tuple((u, iy, x[2]) for u in X.move_morphisms(x[0])) + tuple(
            (ix, v, x[2]) for v in Y.move_morphisms(x[1])
        )


def homotopy_fibre(F, b):
    return FibreGroupoid(F, b)


def homotopy_pullback(F, G):
    """Returns ``(P, proj_X, proj_Y)``."""
    P = PullbackGroupoid(F, G)
    px = GroupoidFunctor(P, F.source, lambda o: o[0], lambda m: m[0])
    py = GroupoidFunctor(P, G.source, lambda o: o[1], lambda m: m[1])
    return P, px, py


def full_fibre(F, b):
    """Full subgroupoid of the source over the component of ``b``."""
    B = F.target
    cb = B.component_index(b)
    keep = [x for x in F.source.objects if B.component_index(F.obj(x)) == cb]
    return union_of_components(F.source, keep)


def loop_space(S, s):
    """``Omega(S, s)`` as the pullback of the name of ``s`` against itself."""
    n = name(S, s)
    return PullbackGroupoid(n, n)
