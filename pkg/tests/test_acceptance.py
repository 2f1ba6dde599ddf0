"""The ten acceptance criteria.

Each criterion is a function returning ``(passed, detail)``.  Under pytest
every criterion is one test and a PASS/FAIL line per criterion is printed in
the terminal summary; ``python3 tests/test_acceptance.py`` prints the same
lines and exits non-zero if any criterion fails.
"""

import random
import sys
import time
from pathlib import Path

import pytest

from hlq import groups
from hlq.cardinality import (
    family_cardinality,
    groupoid_cardinality,
    kronecker_pairing,
    pairing,
    span_matrix,
)
from hlq.functor import identity_functor, name
from hlq.groupoid import connected, one_object, product, sum as gsum
from hlq.incidence import (
    boolean_lattice,
    category_from_groupoid,
    chain_poset,
    coassociativity_matrices,
    convolution,
    counit_function,
    counit_law_matrices,
    divisor_lattice,
    fat_nerve,
    identity_on_X1,
    labels,
    mobius_numeric,
    zeta_function,
)
from hlq.io import Loader
from hlq.presheaf import representable
from hlq.pullback import homotopy_fibre, homotopy_pullback, loop_space
from hlq.qbinomial import f2_injection_category, qbinomial_check
from hlq.rational import QMatrix, apply_matrix, identity_matrix, matrix_multiply
from hlq.samples import (
    CATALOGUE,
    random_cospan,
    random_family,
    random_groupoid,
    random_pullback_square,
    random_span,
    small_groupoid,
)
from hlq.span import Span, apply_span, compose_spans, identity_span, lowershriek, upperstar

from oracles import brute_pullback_cardinality, classical_mobius, subspaces

DATA = Path(__file__).parent / "data"
TRIALS = 100


def _fail(what, i):
    return False, f"{what} (instance {i})"


# -- 1 ------------------------------------------------------------------------


def c1_cardinality_axioms():
    rng = random.Random(1)
    for i in range(TRIALS):
        a = random_groupoid(rng, prefix="a")
        b = random_groupoid(rng, prefix="b")
        ca, cb = groupoid_cardinality(a), groupoid_cardinality(b)
        if groupoid_cardinality(gsum(a, b)) != ca + cb:
            return _fail("sum", i)
        if groupoid_cardinality(product(a, b)) != ca * cb:
            return _fail("product", i)
    return True, f"{TRIALS} pairs, <=6 components, orders <=12"


# -- 2 ------------------------------------------------------------------------


def _test_groupoids():
    ld = Loader()
    out = [ld.groupoid(str(DATA / f)) for f in ("s3.json", "z2.json", "pqr.json", "point.json",
                                                "two_points.json")]
    out += [one_object(g) for g in CATALOGUE]
    rng = random.Random(2)
    out += [random_groupoid(rng) for _ in range(30)]
    return out


def c2_identity_span():
    gs = _test_groupoids()
    for i, S in enumerate(gs):
        reps = [c.representative for c in S.components]
        if span_matrix(identity_span(S)) != identity_matrix(reps):
            return _fail("identity matrix", i)
        for c in S.components:
            if groupoid_cardinality(loop_space(S, c.representative)) * c.cardinality != 1:
                return _fail("loop space", i)
    return True, f"{len(gs)} groupoids"


# -- 3 ------------------------------------------------------------------------


def c3_pullback_formula():
    rng = random.Random(3)
    brute = 0
    for i in range(TRIALS):
        f, g = random_cospan(rng, full=True)
        B = f.target
        P, _, _ = homotopy_pullback(f, g)
        formula = sum(
            groupoid_cardinality(homotopy_fibre(f, c.representative))
            * groupoid_cardinality(homotopy_fibre(g, c.representative))
            * c.cardinality
            for c in B.components
        )
        if groupoid_cardinality(P) != formula:
            return _fail("iso-comma vs fibre sum", i)
        if len(P.objects) <= 200:
            brute += 1
            if brute_pullback_cardinality(f, g) != formula:
                return _fail("brute-force oracle", i)
    return True, f"{TRIALS} cospans, {brute} also checked by brute force"


# -- 4 ------------------------------------------------------------------------


def c4_functoriality():
    rng = random.Random(4)
    for i in range(TRIALS):
        S, T, U = (small_groupoid(rng, p) for p in "stu")
        L = random_span(rng, S, T, prefix="m")
        L2 = random_span(rng, T, U, prefix="n")
        lhs = span_matrix(compose_spans(L, L2))
        rhs = matrix_multiply(span_matrix(L2), span_matrix(L))
        if lhs != rhs:
            return _fail("composite matrix", i)
    return True, f"{TRIALS} composable pairs"


# -- 5 ------------------------------------------------------------------------


def c5_naturality():
    rng = random.Random(5)
    for i in range(TRIALS):
        S, T = small_groupoid(rng, "s"), small_groupoid(rng, "t")
        L = random_span(rng, S, T)
        x = random_family(rng, S)
        if family_cardinality(apply_span(L, x)) != apply_matrix(span_matrix(L), family_cardinality(x)):
            return _fail("naturality", i)
    return True, f"{TRIALS} span/family pairs"


# -- 6 ------------------------------------------------------------------------


def c6_perfect_pairing():
    rng = random.Random(6)
    checked = 0
    for i in range(40):
        S = small_groupoid(rng, "s")
        reps = [c.representative for c in S.components]
        K = {}
        for cs in S.components:
            for ct in S.components:
                val = pairing(name(S, cs.representative), representable(S, ct.representative))
                want = groupoid_cardinality(loop_space(S, cs.representative)) if cs is ct else 0
                if val != want:
                    return _fail("pairing", i)
                K[(ct.representative, cs.representative)] = kronecker_pairing(
                    name(S, cs.representative), S, ct.representative
                )
                checked += 1
        if QMatrix(reps, reps, K) != identity_matrix(reps):
            return _fail("Kronecker matrix", i)
    return True, f"40 bases, {checked} pairs"


# -- 7 ------------------------------------------------------------------------

POSETS = {
    "C3": chain_poset(3),
    "B2": boolean_lattice(2),
    "B3": boolean_lattice(3),
    "D12": divisor_lattice(12),
}


def c7_classical_mobius():
    for key, P in POSETS.items():
        n = fat_nerve(P)
        mu = mobius_numeric(n)
        oracle = classical_mobius(P.elements, P.covers)
        if {r: mu[r] for r in labels(n.X1)} != oracle:
            return False, f"{key}: Mobius values differ"
        eps, z = counit_function(n), zeta_function(n)
        if convolution(z, mu, n) != eps or convolution(mu, z, n) != eps:
            return False, f"{key}: zeta * mu is not the unit"
    return True, "C3, B2, B3, D12"


# -- 8 ------------------------------------------------------------------------


def c8_qbinomial():
    for max_dim in (2, 3):
        r = qbinomial_check(max_dim)
        if not r["consistent"]:
            return False, f"dim {max_dim}: reduction is not well defined"
        for e in r["entries"]:
            i, j = e["split"]
            want = subspaces(e["n"], i) if i + j == e["n"] else 0
            if e["value"] != want:
                return False, f"dim {max_dim}: entry {e['n']} {e['split']}"
        named = {(e["n"], e["split"]): e["value"] for e in r["entries"]}
        if named[(2, (1, 1))] != 3 or (max_dim == 3 and named[(3, (1, 2))] != 7):
            return False, f"dim {max_dim}: named constants"
    return True, "dims <= 2 and <= 3, C(2,1)_2 = 3, C(3,1)_2 = 7"


# -- 9 ------------------------------------------------------------------------


def _incidence_inputs():
    ld = Loader()
    return {
        "C3": chain_poset(3),
        "B2": boolean_lattice(2),
        "B3": boolean_lattice(3),
        "D12": divisor_lattice(12),
        "b2.json": ld.incidence_input(str(DATA / "b2.json")),
        "chain3.json": ld.incidence_input(str(DATA / "chain3.json")),
        "F2 dim<=2": f2_injection_category(2),
        "BZ2": category_from_groupoid(one_object(groups.cyclic(2))),
        "BS3": category_from_groupoid(one_object(groups.symmetric(3))),
        "Z2 pair": category_from_groupoid(connected(groups.cyclic(2), 2)),
    }


def c9_coalgebra_laws():
    inputs = _incidence_inputs()
    for key, C in inputs.items():
        n = fat_nerve(C, validate=key != "F2 dim<=2")
        A, B = coassociativity_matrices(n)
        if A != B:
            return False, f"{key}: coassociativity"
        left, right = counit_law_matrices(n)
        ident = identity_on_X1(n)
        if left != ident or right != ident:
            return False, f"{key}: counit"
    return True, ", ".join(inputs)


# -- 10 -----------------------------------------------------------------------


def c10_beck_chevalley():
    rng = random.Random(10)
    for i in range(TRIALS):
        f, g, p, q = random_pullback_square(rng)
        X, Y = f.source, g.source
        f_shriek = Span(identity_functor(X), f)
        g_star = Span(g, identity_functor(Y))
        lhs = matrix_multiply(span_matrix(g_star), span_matrix(f_shriek))
        if lhs != span_matrix(Span(p, q)):
            return _fail("matrices", i)
        if X.objects:
            x = random_family(rng, X, "e")
            a = family_cardinality(upperstar(g, lowershriek(f, x)))
            b = family_cardinality(lowershriek(q, upperstar(p, x)))
            if a != b:
                return _fail("families", i)
    return True, f"{TRIALS} squares"


CRITERIA = [
    (1, "cardinality axioms", c1_cardinality_axioms),
    (2, "identity span / loop spaces", c2_identity_span),
    (3, "pullback formula", c3_pullback_formula),
    (4, "functoriality of meta cardinality", c4_functoriality),
    (5, "naturality", c5_naturality),
    (6, "perfect pairing", c6_perfect_pairing),
    (7, "classical Mobius", c7_classical_mobius),
    (8, "q-binomial", c8_qbinomial),
    (9, "coassociativity and counit", c9_coalgebra_laws),
    (10, "Beck-Chevalley", c10_beck_chevalley),
]

RESULTS = {}


def evaluate(number, title, fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    dt = time.perf_counter() - t0
    line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail} [{dt:.2f}s]"
    RESULTS[number] = line
    return passed, line


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    passed, line = evaluate(number, title, fn)
    print(line)
    assert passed, line


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        passed, line = evaluate(number, title, fn)
        print(line, flush=True)
        failed += not passed
    sys.exit(1 if failed else 0)
