"""Spans ``S <- M -> T`` as linear maps between slices, and families over a base."""

from dataclasses import dataclass

from .errors import MismatchError
from .functor import (
    GroupoidFunctor,
    compose_functors,
    identity_functor,
    name,  # noqa: F401 - re-exported: names are the basis families
    product_functor,
    proj_right,
    to_terminal,
)
from .groupoid import ProductGroupoid, SkeletonSubgroupoid
from .pullback import homotopy_fibre, homotopy_pullback


@dataclass(frozen=True, eq=False)
class Span:
    left: GroupoidFunctor
    right: GroupoidFunctor

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise MismatchError("span legs must share their apex")

    @property
    def apex(self):
        return self.left.source

    @property
    def source(self):
        """Left foot."""
        return self.left.target

    @property
    def target(self):
        """Right foot."""
        return self.right.target

    def __eq__(self, other):
        return isinstance(other, Span) and (self.left, self.right) == (other.left, other.right)

    def __hash__(self):
        return hash((id(self.left), id(self.right)))


def identity_span(S):
    ident = identity_functor(S)
    return Span(ident, ident)


def transpose(L):
    return Span(L.right, L.left)


def skeletal_apex(L):
    """The same span with its apex replaced by an equivalent skeleton."""
    K = SkeletonSubgroupoid(L.apex)
    return Span(
        GroupoidFunctor(K, L.source, L.left.obj, L.left.mor),
        GroupoidFunctor(K, L.target, L.right.obj, L.right.mor),
    )


def compose_spans(L, L2, skeletal=False):
    """``L2 o L`` for ``L : S <- M -> T`` and ``L2 : T <- N -> U``; apex ``M x_T N``.

    With ``skeletal=True`` both apices are first cut down to skeleta, which
    gives an equivalent (much smaller) composite.
    """
    if L.target != L2.source:
        raise MismatchError("spans are not composable: feet differ")
    if skeletal:
        L, L2 = skeletal_apex(L), skeletal_apex(L2)
    _, pm, pn = homotopy_pullback(L.right, L2.left)
    return Span(compose_functors(L.left, pm), compose_functors(L2.right, pn))


def tensor_span(L1, L2):
    apex = ProductGroupoid(L1.apex, L2.apex)
    return Span(
        product_functor(L1.left, L2.left, source=apex),
        product_functor(L1.right, L2.right, source=apex),
    )


def family_span(x):
    """A family ``X -> T`` as the span ``1 <- X -> T``."""
    return Span(to_terminal(x.source), x)


def lowershriek(f, x):
    """``f_!`` : post-compose the family ``x`` (over T) with ``f : T -> S``."""
    if x.target != f.source:
        raise MismatchError("family base differs from the functor's source")
    return compose_functors(f, x)


def upperstar(f, x):
    """``f^*`` : pull the family ``x`` (over S) back along ``f : T -> S``."""
    if x.target != f.target:
        raise MismatchError("family base differs from the functor's target")
    _, _, pt = homotopy_pullback(x, f)
    return pt


def apply_span(L, x):
    """``q_! p^* x`` for ``L = (p, q)``.  The result's source is the raw
    (unskeletalized) total space."""
    if x.target != L.source:
        raise MismatchError("family base differs from the span's left foot")
    return lowershriek(L.right, upperstar(L.left, x))


def homotopy_sum(g):
    """Homotopy sum over B of a family ``g : E -> B x I``; returns ``E -> I``."""
    if not isinstance(g.target, ProductGroupoid):
        raise MismatchError("homotopy_sum needs a family over a product B x I")
    return compose_functors(proj_right(g.target), g)


def scalar_multiply(S, x):
    """``S (x) x`` : the family ``S x X -> X -> I``."""
    P = ProductGroupoid(S, x.source)
    return compose_functors(x, proj_right(P))


@dataclass(frozen=True)
class FinitenessCertificate:
    """Whether every homotopy fibre of a leg is finite, with the fibre
    cardinalities (per component representative of the foot) as evidence."""

    finite: bool
    fibre_cardinalities: tuple

    def __bool__(self):
        return self.finite


def _leg_certificate(leg):
    from .cardinality import groupoid_cardinality

    cards = []
    for c in leg.target.components:
        fib = homotopy_fibre(leg, c.representative)
        cards.append((c.representative, groupoid_cardinality(fib)))
    # every fibre of a map between finite groupoids is a finite groupoid
    return FinitenessCertificate(True, tuple(cards))


def is_finite_type(L):
    return _leg_certificate(L.left)


def is_profinite_type(L):
    return _leg_certificate(L.right)
