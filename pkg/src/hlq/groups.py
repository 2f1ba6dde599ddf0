"""Finite groups as Cayley tables, plus brute-force homomorphism search.

Tables are tuples of tuples over ``range(n)`` with index 0 the identity.
The search helpers take an element list and a multiplication callable so
they also work on automorphism groups read off a groupoid.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .errors import SizeCapError, ValidationError

DEFAULT_GROUP_CAP = 64


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))

    @property
    def order(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        for b in range(self.order):
            if self.table[a][b] == 0:
                return b
        raise ValueError(f"{a} has no inverse")

    def validate(self):
        return group_table_violations(self.table)


def group_table_violations(table):
    n = len(table)
    out = []
    if n == 0:
        return ["empty table: a group needs an identity"]
    if any(len(row) != n for row in table):
        return ["table is not square"]
    if any(not (isinstance(x, int) and 0 <= x < n) for row in table for x in row):
        return ["entries out of range"]
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            out.append(f"index 0 is not a two-sided identity at {a}")
    for a in range(n):
        if not any(table[a][b] == 0 and table[b][a] == 0 for b in range(n)):
            out.append(f"{a} has no inverse")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    out.append(f"associativity fails at ({a},{b},{c})")
                    break
    return out


def from_elements(elements, mul, identity):
    """Cayley table of the group on ``elements`` (identity moved to index 0)."""
    elements = list(elements)
    elements.remove(identity)
    elements.insert(0, identity)
    index = {e: i for i, e in enumerate(elements)}
    return FiniteGroup([[index[mul(a, b)] for b in elements] for a in elements])


def cyclic(n):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def trivial():
    return cyclic(1)


def direct_product(g, h):
    m = h.order
    elems = [(a, b) for a in range(g.order) for b in range(m)]
    return FiniteGroup(
        [[g.mul(a, c) * m + h.mul(b, d) for (c, d) in elems] for (a, b) in elems]
    )


def _perm_mul(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def symmetric(n):
    ident = tuple(range(n))
    return from_elements(list(permutations(range(n))), _perm_mul, ident)


def alternating(n):
    def even(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2 == 0

    ident = tuple(range(n))
    return from_elements([p for p in permutations(range(n)) if even(p)], _perm_mul, ident)


def dihedral(n):
    """Symmetries of the n-gon, order 2n."""
    elems = [(r, s) for s in (0, 1) for r in range(n)]

    def mul(a, b):
        (r1, s1), (r2, s2) = a, b
        return ((r1 + (-r2 if s1 else r2)) % n, s1 ^ s2)

    return from_elements(elems, mul, (0, 0))


def dicyclic(m):
    """Dicyclic group of order 4m (m=2 gives the quaternions)."""
    elems = [(k, j) for j in (0, 1) for k in range(2 * m)]

    def mul(a, b):
        (k1, j1), (k2, j2) = a, b
        if j1 == 0:
            return ((k1 + k2) % (2 * m), j2)
        if j2 == 0:
            return ((k1 - k2) % (2 * m), 1)
        return ((k1 - k2 + m) % (2 * m), 0)

    return from_elements(elems, mul, (0, 0))


def small_groups(max_order=12):
    """A fixed catalogue of small groups used for sampling."""
    cat = [cyclic(n) for n in range(1, max_order + 1)]
    extra = [
        direct_product(cyclic(2), cyclic(2)),
        symmetric(3),
        dihedral(4),
        dicyclic(2),
        direct_product(cyclic(2), cyclic(4)),
        direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2))),
        direct_product(cyclic(3), cyclic(3)),
        alternating(4),
        dihedral(6),
        dicyclic(3),
        direct_product(cyclic(2), cyclic(6)),
    ]
    return cat + [g for g in extra if g.order <= max_order]


# -- generic search over (elements, mul, identity) ---------------------------


def closure(gens, mul, identity):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = mul(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def generating_set(elements, mul, identity):
    """Greedy small generating set; elements are tried in the given order."""
    gens = []
    span = {identity}
    for e in elements:
        if e not in span:
            gens.append(e)
            span = closure(gens, mul, identity)
    return gens


def element_order(a, mul, identity):
    k, x = 1, a
    while x != identity:
        x = mul(x, a)
        k += 1
    return k


def extend_homomorphism(gens, images, mul_src, id_src, mul_tgt, id_tgt):
    """Extend generator images to a homomorphism, or return None.

    Walks the Cayley graph of the source; the map is a homomorphism iff
    every edge ``a -> a*s`` is respected.
    """
    phi = {id_src: id_tgt}
    frontier = [id_src]
    while frontier:
        nxt = []
        for a in frontier:
            for s, t in zip(gens, images):
                b = mul_src(a, s)
                val = mul_tgt(phi[a], t)
                if b in phi:
                    if phi[b] != val:
                        return None
                else:
                    phi[b] = val
                    nxt.append(b)
        frontier = nxt
    return phi


def homomorphisms(src_elems, mul_src, id_src, tgt_elems, mul_tgt, id_tgt, gens=None):
    """All homomorphisms, as dicts, in a deterministic order."""
    if gens is None:
        gens = generating_set(src_elems, mul_src, id_src)
    if not gens:
        yield {id_src: id_tgt}
        return
    src_orders = [element_order(g, mul_src, id_src) for g in gens]
    tgt_orders = {t: element_order(t, mul_tgt, id_tgt) for t in tgt_elems}
    choices = [[t for t in tgt_elems if o % tgt_orders[t] == 0] for o in src_orders]
    for images in product(*choices):
        phi = extend_homomorphism(gens, images, mul_src, id_src, mul_tgt, id_tgt)
        if phi is not None:
            yield phi


def _order_profile(g):
    counts = {}
    for a in range(g.order):
        o = element_order(a, g.mul, 0)
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def is_isomorphic(g, h, cap=DEFAULT_GROUP_CAP):
    """Brute-force isomorphism test between two table groups.

    Raises SizeCapError instead of deciding when either order exceeds ``cap``.
    """
    if g.order > cap or h.order > cap:
        raise SizeCapError(
            f"undecided: group too large (orders {g.order}, {h.order}; cap {cap})"
        )
    for grp in (g, h):
        bad = grp.validate()
        if bad:
            raise ValidationError("group table", bad)
    if g.order != h.order:
        return False
    if _order_profile(g) != _order_profile(h):
        return False
    gens = generating_set(range(g.order), g.mul, 0)
    orders = [element_order(s, g.mul, 0) for s in gens]
    choices = [
        [t for t in range(h.order) if element_order(t, h.mul, 0) == o] for o in orders
    ]
    for images in product(*choices):
        phi = extend_homomorphism(gens, images, g.mul, 0, h.mul, 0)
        if phi is not None and len(set(phi.values())) == h.order:
            return True
    return False
