"""Finite-groupoid-valued presheaves on a finite groupoid and their
Grothendieck construction."""

from functools import cached_property

from .errors import MismatchError, ValidationError
from .functor import GroupoidFunctor, check_functor, identity_functor
from .groupoid import CompositionError, FiniteGroupoid, Violation, discrete, empty, terminal


class FinitePresheaf:
    """A presheaf on ``base`` given per component.

    ``values[r]`` is the value groupoid at the representative ``r`` (missing
    components take the empty value).  ``actions[r]``, when given, maps each
    automorphism of ``r`` to an automorphism functor of ``values[r]``; an
    absent entry means the trivial action.
    """

    def __init__(self, base, values, actions=None):
        self.base = base
        reps = {c.representative for c in base.components}
        unknown = [k for k in values if k not in reps]
        if unknown:
            raise MismatchError(f"values given for non-representatives {unknown!r}")
        self.values = {r: values.get(r, empty()) for r in reps}
        self.actions = dict(actions or {})

    def value(self, s):
        """The value at any object ``s`` (identified with the value at its representative)."""
        return self.values[self.base.representative(s)]

    def act(self, r, g):
        """Action functor of the automorphism ``g`` of representative ``r``."""
        acts = self.actions.get(r)
        if acts is None:
            return None
        return acts[g]

    def validate(self):
        out = []
        S = self.base
        for r, acts in self.actions.items():
            V = self.values[r]
            auts = S.automorphisms(r)
            for g in auts:
                if g not in acts:
                    out.append(Violation("action undefined", (r, g)))
                    continue
                rho = acts[g]
                if rho.source != V or rho.target != V:
                    out.append(Violation("action is not an endofunctor of the value", (r, g)))
                    continue
                out += check_functor(rho)
            if out:
                return out
            for x in V.objects:
                if acts[S.identity(r)].obj(x) != x:
                    out.append(Violation("identity acts non-trivially", (r, x)))
            for g in auts:
                for h in auts:
                    gh = S.compose(g, h)
                    for x in V.objects:
                        if acts[gh].obj(x) != acts[g].obj(acts[h].obj(x)):
                            out.append(Violation("action not multiplicative", (g, h, x)))
                    for m in V.morphisms:
                        if acts[gh].mor(m) != acts[g].mor(acts[h].mor(m)):
                            out.append(Violation("action not multiplicative", (g, h, m)))
        return out

    def check(self):
        bad = self.validate()
        if bad:
            raise ValidationError("presheaf", bad)
        return self

    @cached_property
    def total(self):
        return GrothendieckGroupoid(self)

    def grothendieck(self):
        """The family ``F -> S`` corresponding to the presheaf."""
        F = self.total
        return GroupoidFunctor(F, self.base, lambda o: o[0], lambda m: m[0])


class GrothendieckGroupoid(FiniteGroupoid):
    """Total space of a presheaf.

    Objects ``(s, v)`` with ``v`` an object of the value at ``s``'s component.
    A morphism ``(m, v, w)`` goes from ``(s, v)`` to ``(s', v')`` where
    ``m : s -> s'`` and ``w : rho(g)(v) -> v'`` with ``g`` the automorphism of
    the representative obtained by transporting ``m``.
    """

    def __init__(self, presheaf):
        self.P = presheaf
        S = presheaf.base
        self.objects = tuple(
            (s, v) for s in S.objects for v in presheaf.value(s).objects
        )

    def _loop(self, m):
        S = self.P.base
        s, s2 = S.src(m), S.tgt(m)
        return S.compose(S.inverse(S.transport(s2)), S.compose(m, S.transport(s)))

    def _rho(self, m):
        r = self.P.base.representative(self.P.base.src(m))
        rho = self.P.act(r, self._loop(m))
        return rho or identity_functor(self.P.values[r])

    def src(self, m):
        return (self.P.base.src(m[0]), m[1])

    def tgt(self, m):
        mm, _, w = m
        V = self.P.value(self.P.base.src(mm))
        return (self.P.base.tgt(mm), V.tgt(w))

    def identity(self, x):
        s, v = x
        return (self.P.base.identity(s), v, self.P.value(s).identity(v))

    def compose(self, g, f):
        if self.tgt(f) != self.src(g):
            raise CompositionError((g, f))
        S = self.P.base
        V = self.P.value(S.src(f[0]))
        w = V.compose(g[2], self._rho(g[0]).mor(f[2]))
        return (S.compose(g[0], f[0]), f[1], w)

    def inverse(self, f):
        S = self.P.base
        m, v, w = f
        V = self.P.value(S.src(m))
        minv = S.inverse(m)
        winv = V.inverse(self._rho(minv).mor(w))
        return (minv, V.tgt(w), winv)

    def out(self, x):
        s, v = x
        S = self.P.base
        V = self.P.value(s)
        return tuple(
            (m, v, w) for m in S.out(s) for w in V.out(self._rho(m).obj(v))
        )

    def out_degree(self, x):
        s, v = x
        return self.P.base.out_degree(s) * self.P.value(s).out_degree(v)

    def move_morphisms(self, x):
        s, v = x
        S = self.P.base
        V = self.P.value(s)
        moves = []
        for m in S.move_morphisms(s):
            v2 = self._rho(m).obj(v)
            moves.append((m, v, V.identity(v2)))
        ids = S.identity(s)
        moves += [(ids, v, w) for w in V.move_morphisms(v)]
        return tuple(moves)


def terminal_presheaf(S):
    return FinitePresheaf(S, {c.representative: terminal() for c in S.components})


def constant_presheaf(S, V):
    return FinitePresheaf(S, {c.representative: V for c in S.components})


def representable(S, t):
    """``h^t = Map(t, -)``: at ``t``'s component the discrete set ``hom(t, r)``,
    acted on by post-composition."""
    r = S.representative(t)
    V = discrete(S.hom(t, r))
    acts = {}
    for g in S.automorphisms(r):
        omap = {a: S.compose(g, a) for a in V.objects}
        mmap = {("id", a): ("id", omap[a]) for a in V.objects}
        acts[g] = GroupoidFunctor(V, V, omap, mmap)
    return FinitePresheaf(S, {r: V}, {r: acts})
