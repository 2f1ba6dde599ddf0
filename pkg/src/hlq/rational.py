"""Exact rational vectors, functions and sparse matrices over labelled bases.

Entries are ``fractions.Fraction``; zero entries are never stored.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from ._util import format_rational, sort_key
from .errors import MismatchError, NotInvertibleError


def _clean(entries):
    return {k: Fraction(v) for k, v in entries.items() if v != 0}


@dataclass(frozen=True)
class QVector:
    """Finite linear combination of basis labels."""

    index: tuple
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(self.index))
        ents = _clean(self.entries)
        unknown = set(ents) - set(self.index)
        if unknown:
            raise MismatchError(f"entries outside the index: {sorted(unknown, key=sort_key)!r}")
        object.__setattr__(self, "entries", ents)

    def __getitem__(self, label):
        return self.entries.get(label, Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, QVector)
            and self.index == other.index
            and self.entries == other.entries
        )

    def items(self):
        return [(k, self[k]) for k in self.index]

    def to_json(self):
        from .io import label_key

        return {label_key(k): format_rational(self[k]) for k in self.index}


@dataclass(frozen=True)
class QFunction:
    """A rational-valued function on every label of the index."""

    index: tuple
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(self.index))
        ents = {k: Fraction(self.entries.get(k, 0)) for k in self.index}
        extra = set(self.entries) - set(self.index)
        if extra:
            raise MismatchError(f"values outside the index: {extra!r}")
        object.__setattr__(self, "entries", ents)

    def __getitem__(self, label):
        return self.entries[label]

    def __eq__(self, other):
        return (
            isinstance(other, QFunction)
            and self.index == other.index
            and self.entries == other.entries
        )

    def items(self):
        return [(k, self.entries[k]) for k in self.index]

    def to_json(self):
        from .io import label_key

        return {label_key(k): format_rational(v) for k, v in self.items()}


@dataclass(frozen=True)
class QMatrix:
    """Sparse matrix; ``entries[(row, col)]`` with rows and columns labelled."""

    rows: tuple
    cols: tuple
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        ents = _clean(self.entries)
        rs, cs = set(self.rows), set(self.cols)
        bad = [k for k in ents if k[0] not in rs or k[1] not in cs]
        if bad:
            raise MismatchError(f"entries outside the declared bases: {bad[:5]!r}")
        object.__setattr__(self, "entries", ents)

    def __getitem__(self, key):
        return self.entries.get(key, Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def column(self, col):
        return QVector(self.rows, {r: v for (r, c), v in self.entries.items() if c == col})

    def is_column_finite(self):
        # always true for finite bases; kept as an explicit check
        return all(
            sum(1 for (r, c) in self.entries if c == col) <= len(self.rows) for col in self.cols
        )

    def triples(self):
        return sorted(
            ((r, c, v) for (r, c), v in self.entries.items()),
            key=lambda t: (sort_key(t[0]), sort_key(t[1])),
        )

    def to_json(self):
        from .io import label_json

        return [[label_json(r), label_json(c), format_rational(v)] for r, c, v in self.triples()]

    def relabel(self, row_map=None, col_map=None):
        row_map = row_map or (lambda r: r)
        col_map = col_map or (lambda c: c)
        return QMatrix(
            [row_map(r) for r in self.rows],
            [col_map(c) for c in self.cols],
            {(row_map(r), col_map(c)): v for (r, c), v in self.entries.items()},
        )

    def sorted_bases(self):
        """Same matrix with rows and columns in canonical label order."""
        return QMatrix(
            sorted(self.rows, key=sort_key), sorted(self.cols, key=sort_key), self.entries
        )


def identity_matrix(index):
    return QMatrix(index, index, {(i, i): 1 for i in index})


def matrix_multiply(A, B):
    """``A . B``; the columns of A must be the rows of B."""
    if A.cols != B.rows:
        raise MismatchError("matrix_multiply: index mismatch")
    by_row = {}
    for (k, j), v in B.entries.items():
        by_row.setdefault(k, []).append((j, v))
    out = {}
    for (i, k), a in A.entries.items():
        for j, b in by_row.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + a * b
    return QMatrix(A.rows, B.cols, out)


def apply_matrix(A, v):
    """``A v`` for a vector indexed by the columns of A."""
    if A.cols != v.index:
        raise MismatchError("apply_matrix: index mismatch")
    out = {}
    for (i, j), a in A.entries.items():
        x = v[j]
        if x:
            out[i] = out.get(i, 0) + a * x
    return QVector(A.rows, out)


def apply_matrix_pro(w, A):
    """``w . A`` for a function indexed by the rows of A; result on the columns."""
    if A.rows != w.index:
        raise MismatchError("apply_matrix_pro: index mismatch")
    out = {}
    for (i, j), a in A.entries.items():
        out[j] = out.get(j, 0) + w[i] * a
    return QFunction(A.cols, out)


def kronecker(A, B):
    """Tensor product, with pair labels ``(a, b)``."""
    rows = [(r, s) for r in A.rows for s in B.rows]
    cols = [(c, d) for c in A.cols for d in B.cols]
    ents = {}
    for (r, c), a in A.entries.items():
        for (s, d), b in B.entries.items():
            ents[((r, s), (c, d))] = a * b
    return QMatrix(rows, cols, ents)


def tensor_functions(f, g):
    return QFunction(
        [(a, b) for a in f.index for b in g.index],
        {(a, b): f[a] * g[b] for a in f.index for b in g.index},
    )


def solve(A, b):
    """Exact solution of ``A x = b`` for square invertible A (Gauss-Jordan)."""
    if A.rows != b.index or len(A.rows) != len(A.cols):
        raise MismatchError("solve: shape mismatch")
    n = len(A.rows)
    rpos = {r: i for i, r in enumerate(A.rows)}
    cpos = {c: j for j, c in enumerate(A.cols)}
    M = [[Fraction(0)] * n + [b[r]] for r in A.rows]
    for (r, c), v in A.entries.items():
        M[rpos[r]][cpos[c]] = v
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            raise NotInvertibleError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return QFunction(A.cols, {c: M[cpos[c]][n] for c in A.cols})
