from fractions import Fraction


def sort_key(x):
    """Total order on the identifiers used throughout (ints, strings, tuples)."""
    if isinstance(x, tuple):
        return (3, tuple(sort_key(i) for i in x))
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, frozenset):
        return (4, tuple(sorted(sort_key(i) for i in x)))
    if x is None:
        return (-1,)
    return (5, repr(x))


def sorted_ids(xs):
    return sorted(xs, key=sort_key)


def format_rational(q):
    """Serialize as ``p/q`` (``0`` for zero)."""
    q = Fraction(q)
    if q == 0:
        return "0"
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text):
    return Fraction(text)
