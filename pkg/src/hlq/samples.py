"""Random instances for property tests and the acceptance suite.

Everything takes a ``random.Random`` so runs are reproducible from a seed.
"""

from . import groups
from .functor import random_functor
from .groupoid import TableGroupoid, connected, empty
from .pullback import homotopy_pullback
from .span import Span

CATALOGUE = groups.small_groups(12)


def union_of_tables(parts):
    """Disjoint union of table groupoids whose identifiers are already disjoint."""
    objs, morph, ids, comp = [], {}, {}, {}
    for g in parts:
        objs += list(g.objects)
        morph.update(g._ends)
        ids.update(g._ids)
        comp.update(g._table)
    u = TableGroupoid(objs, morph, ids, comp)
    if all(g._valid == [] for g in parts):
        u._valid = []  # a disjoint union of valid groupoids is valid
    return u


_CHECKED = set()


def _checked_connected(grp, n, label):
    # validity does not depend on the label, so each (group, n) is checked once
    key = (grp.table, n)
    if key not in _CHECKED:
        connected(grp, n, "probe").check()
        _CHECKED.add(key)
    g = connected(grp, n, label)
    g._valid = []
    return g


def random_groupoid(rng, max_components=6, max_order=12, max_objects=2, min_components=0, prefix="c"):
    """Components ``(prefix + str(i), j)`` with automorphism groups from a fixed catalogue."""
    k = rng.randint(min_components, max_components)
    if k == 0:
        return empty()
    pool = [g for g in CATALOGUE if g.order <= max_order]
    parts = []
    for i in range(k):
        grp = rng.choice(pool)
        parts.append(_checked_connected(grp, rng.randint(1, max_objects), f"{prefix}{i}"))
    return union_of_tables(parts)


def small_groupoid(rng, prefix="c", min_components=1):
    """Smaller sizes for tests that build pullbacks of pullbacks."""
    return random_groupoid(rng, 3, 6, 2, min_components, prefix)


def random_span(rng, S, T, apex=None, prefix="m"):
    M = apex if apex is not None else small_groupoid(rng, prefix)
    return Span(random_functor(M, S, rng), random_functor(M, T, rng))


def random_cospan(rng, B=None, full=False):
    """``X -> B <- Y`` with non-empty B; ``full`` uses the larger sizes."""
    make = (lambda p, k: random_groupoid(rng, prefix=p, min_components=k)) if full else (
        lambda p, k: small_groupoid(rng, p, k)
    )
    B = B if B is not None else make("b", 1)
    X = make("x", 0)
    Y = make("y", 0)
    return random_functor(X, B, rng), random_functor(Y, B, rng)


def random_family(rng, S, prefix="e"):
    X = small_groupoid(rng, prefix, 0)
    return random_functor(X, S, rng)


def random_pullback_square(rng):
    """``(f, g, p, q)`` with ``p : P -> X``, ``q : P -> Y`` the pullback of ``f, g``."""
    f, g = random_cospan(rng)
    _, p, q = homotopy_pullback(f, g)
    return f, g, p, q
