"""Homotopy cardinality and the cardinality functor from spans to matrices."""

from collections import defaultdict
from fractions import Fraction

from .errors import MismatchError
from .functor import pairing as pair_functors
from .groupoid import ProductGroupoid
from .pullback import PullbackGroupoid, homotopy_fibre
from .rational import QFunction, QMatrix, QVector

NORMALIZATIONS = ("target", "source")


def groupoid_cardinality(g):
    """Sum over components of 1/|Aut|."""
    return sum((c.cardinality for c in g.components), Fraction(0))


def truncated_cardinality(t):
    """Alternating product of homotopy group orders, summed over components."""
    bad = t.validate()
    if bad:
        from .errors import ValidationError

        raise ValidationError("truncated space", bad)
    total = Fraction(0)
    for _, orders in t.components:
        term = Fraction(1)
        for i, o in enumerate(orders, start=1):
            term *= Fraction(o) ** (-1 if i % 2 else 1)
        total += term
    return total


def _labels(G):
    return tuple(c.representative for c in G.components)


def family_cardinality(x):
    """Vector with entry ``|X_t| / |Aut(t)|`` at each component of the base."""
    T = x.target
    ents = {}
    for c in T.components:
        ents[c.representative] = groupoid_cardinality(homotopy_fibre(x, c.representative)) / c.aut_order
    return QVector(_labels(T), ents)


def presheaf_cardinality(f):
    """Pointwise cardinality of the values."""
    S = f.base
    return QFunction(_labels(S), {r: groupoid_cardinality(f.values[r]) for r in _labels(S)})


def _fibre_cardinalities(L):
    S, T = L.source, L.target
    leg = pair_functors(L.left, L.right, ProductGroupoid(S, T))
    occupied = set()
    for x in L.apex.objects:
        occupied.add((S.representative(L.left.obj(x)), T.representative(L.right.obj(x))))
    return {
        (s, t): groupoid_cardinality(homotopy_fibre(leg, (s, t))) for (s, t) in occupied
    }


def _fibre_cardinalities_by_components(L):
    # |M_{s,t}| = |full fibre| / |(S x T)_[(s,t)]|, full fibre = sum of 1/|Aut(m)|.
    S, T, M = L.source, L.target, L.apex
    acc = defaultdict(Fraction)
    for c in M.components:
        m = c.representative
        cs, ct = S.component_of(L.left.obj(m)), T.component_of(L.right.obj(m))
        acc[(cs.representative, ct.representative)] += Fraction(
            cs.aut_order * ct.aut_order, c.aut_order
        )
    return dict(acc)


def span_matrix(L, convention="target", method="fibres"):
    """Matrix ``A[t, s] = |T_[t]| |M_{s,t}|`` of a span ``S <- M -> T``.

    ``convention="source"`` uses ``|S_[s]|`` instead.  ``method="fibres"``
    builds each homotopy fibre of ``M -> S x T``; ``method="components"``
    reads the same numbers off the components of M, which avoids
    enumerating fibres of large groupoids.
    """
    if convention not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {convention!r}")
    if method == "fibres":
        fib = _fibre_cardinalities(L)
    elif method == "components":
        fib = _fibre_cardinalities_by_components(L)
    else:
        raise ValueError(f"unknown method {method!r}")
    S, T = L.source, L.target
    saut = {c.representative: c.aut_order for c in S.components}
    taut = {c.representative: c.aut_order for c in T.components}
    ents = {}
    for (s, t), v in fib.items():
        factor = taut[t] if convention == "target" else saut[s]
        ents[(t, s)] = v / factor
    return QMatrix(_labels(T), _labels(S), ents)


def pairing(x, f):
    """Cardinality of the pullback of the family ``x`` against the total
    space of the presheaf ``f`` (no normalization)."""
    if x.target != f.base:
        raise MismatchError("family and presheaf live over different bases")
    return groupoid_cardinality(PullbackGroupoid(x, f.grothendieck()))


def kronecker_pairing(x, S, t):
    """``pairing(x, h^t) / |Omega(S, t)|``."""
    from .presheaf import representable

    return pairing(x, representable(S, t)) / S.component_of(t).aut_order
