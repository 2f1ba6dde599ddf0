"""The q-binomial coalgebra over F_2, checked numerically.

The category has objects ``0..N`` (the spaces F_2^d) and the injective linear
maps between them.  A map ``F_2^a -> F_2^b`` is ``("inj", a, b, cols)`` where
``cols`` holds the images of the basis vectors as ``b``-bit masks.
"""

from fractions import Fraction
from itertools import product as iproduct

from .incidence import FiniteCategory, comultiplication_matrix, fat_nerve


def _span_size(cols):
    """Number of vectors in the span of the given bit masks."""
    span = {0}
    for c in cols:
        span |= {v ^ c for v in span}
    return len(span)


def injections(a, b):
    out = []
    for cols in iproduct(range(1, 2**b), repeat=a):
        if _span_size(cols) == 2**a:
            out.append(("inj", a, b, cols))
    return out


def _apply(cols, v):
    w, i = 0, 0
    while v:
        if v & 1:
            w ^= cols[i]
        v >>= 1
        i += 1
    return w


def f2_injection_category(max_dim):
    dims = range(max_dim + 1)
    homs = {(a, b): injections(a, b) for a in dims for b in dims if a <= b}
    ends = {f: (f[1], f[2]) for fs in homs.values() for f in fs}
    ids = {d: ("inj", d, d, tuple(1 << i for i in range(d))) for d in dims}
    comp = {}
    for (a, b), fs in homs.items():
        for c in dims:
            if c < b:
                continue
            for g in homs[(b, c)]:
                for f in fs:
                    comp[(g, f)] = ("inj", a, c, tuple(_apply(g[3], v) for v in f[3]))
    return FiniteCategory(dims, ends, ids, comp)


def subspace_count(n, k):
    """k-dimensional subspaces of F_2^n by direct enumeration."""
    seen = set()
    for cols in iproduct(range(1, 2**n), repeat=k):
        if _span_size(cols) == 2**k:
            span = {0}
            for c in cols:
                span |= {v ^ c for v in span}
            seen.add(frozenset(span))
    return len(seen) if k else 1


def gaussian_binomial(n, k, q=2):
    """Product formula, used as a second independent reference."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _signature(f):
    # cokernel dimension; the reduction identifies injections with equal value
    return f[2] - f[1]


def reduced_comultiplication(max_dim, method="components"):
    """``{(n, (i, j)): value}`` from pushing the comultiplication matrix
    along the cokernel-dimension reduction, for each column whose signature is n.

    Returns ``(constants, consistent)``; ``consistent`` is False when two
    columns with the same signature give different reduced rows.
    """
    n = fat_nerve(f2_injection_category(max_dim), validate=False)
    A = comultiplication_matrix(n, method=method)
    per_col = {}
    for col in A.cols:
        row = {}
        for (r, c), v in A.entries.items():
            if c == col:
                key = (_signature(r[0]), _signature(r[1]))
                row[key] = row.get(key, Fraction(0)) + v
        per_col[col] = row
    constants, consistent = {}, True
    for col, row in per_col.items():
        sig = _signature(col)
        for key, v in row.items():
            prev = constants.get((sig, key))
            if prev is not None and prev != v:
                consistent = False
            constants[(sig, key)] = v
        for i in range(sig + 1):
            key = (i, sig - i)
            if key not in row:
                prev = constants.get((sig, key))
                if prev not in (None, 0):
                    consistent = False
                constants.setdefault((sig, key), Fraction(0))
    return constants, consistent


def qbinomial_check(max_dim=2, method="components"):
    """Report comparing reduced constants with subspace counts."""
    constants, consistent = reduced_comultiplication(max_dim, method)
    entries = []
    for (sig, (i, j)), v in sorted(constants.items()):
        expected = subspace_count(sig, i) if i + j == sig else 0
        entries.append(
            {"n": sig, "split": (i, j), "value": v, "expected": expected, "pass": v == expected}
        )
    return {
        "field_size": 2,
        "max_dim": max_dim,
        "consistent": consistent,
        "entries": entries,
        "pass": consistent and all(e["pass"] for e in entries),
    }
