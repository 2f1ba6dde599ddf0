from fractions import Fraction

import pytest

from hlq import groups
from hlq.errors import MismatchError, NotInvertibleError, ValidationError
from hlq.functor import name
from hlq.groupoid import connected, one_object, sum as gsum
from hlq.incidence import (
    FiniteCategory,
    FinitePoset,
    boolean_lattice,
    category_from_groupoid,
    chain_poset,
    check_simplicial,
    coassociativity_matrices,
    comultiplication_matrix,
    comultiplication_span,
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
from hlq.qbinomial import (
    f2_injection_category,
    gaussian_binomial,
    injections,
    qbinomial_check,
    reduced_comultiplication,
    subspace_count,
)
from hlq.rational import QMatrix
from hlq.span import apply_span

from oracles import arrow_orbits, chains, classical_mobius, leq_closure, subspaces

POSETS = {
    "chain3": chain_poset(3),
    "b2": boolean_lattice(2),
    "b3": boolean_lattice(3),
    "div12": divisor_lattice(12),
}


def one_object_monoid(table):
    """Category with one object whose endomorphisms form the given monoid (0 = unit)."""
    n = len(table)
    return FiniteCategory(
        ["*"],
        {i: ("*", "*") for i in range(n)},
        {"*": 0},
        {(a, b): table[a][b] for a in range(n) for b in range(n)},
    )


# -- posets and categories ----------------------------------------------------


def test_poset_closure_matches_oracle():
    for P in POSETS.values():
        assert set(P.leq) == leq_closure(P.elements, P.covers)


def test_poset_antisymmetry_violation():
    bad = FinitePoset([0, 1], [(0, 1), (1, 0)]).validate()
    assert "antisymmetry" in {v.axiom for v in bad}


def test_poset_unknown_element():
    bad = FinitePoset([0], [(0, 7)]).validate()
    assert bad[0].axiom == "cover mentions unknown element"


def test_divisor_lattice_covers():
    P = divisor_lattice(12)
    assert set(P.covers) == {(1, 2), (1, 3), (2, 4), (2, 6), (3, 6), (4, 12), (6, 12)}


def test_interval():
    assert chain_poset(4).interval(1, 3) == [1, 2, 3]


def test_non_associative_category_rejected():
    # a unital table that fails associativity
    table = [[0, 1, 2], [1, 1, 1], [2, 2, 1]]
    with pytest.raises(ValidationError):
        fat_nerve(one_object_monoid(table))


def test_monoid_has_no_inverses_but_core_is_units():
    # {1, e} with e e = e
    C = one_object_monoid([[0, 1], [1, 1]])
    assert C.validate() == []
    assert len(C.core.morphisms) == 1


# -- fat nerve ----------------------------------------------------------------


def test_chain_nerve_levels():
    P = chain_poset(3)
    n = fat_nerve(P)
    assert len(n.X1.objects) == 6 == len(chains(P.elements, P.covers, 1))
    assert len(n.X2.objects) == 10 == len(chains(P.elements, P.covers, 2))
    assert all(c.aut_order == 1 for c in n.X1.components)
    assert all(c.aut_order == 1 for c in n.X2.components)


def test_trivial_monoid_nerve():
    n = fat_nerve(one_object_monoid([[0]]))
    assert len(n.X1.objects) == len(n.X2.objects) == 1
    assert [c.aut_order for c in n.X1.components] == [1]


def test_groupoid_input_matches_orbit_oracle():
    for G in (
        one_object(groups.cyclic(3)),
        one_object(groups.symmetric(3)),
        gsum(connected(groups.cyclic(2), 2, "a"), one_object(groups.trivial(), "b")),
    ):
        n = fat_nerve(category_from_groupoid(G))
        orbits = arrow_orbits(G)
        assert len(n.X1.components) == len(orbits)
        assert sorted(c.aut_order for c in n.X1.components) == sorted(s for _, _, s in orbits)
        assert sorted(len(c.object_class) for c in n.X1.components) == sorted(
            k for _, k, _ in orbits
        )


def test_simplicial_identities():
    for C in (
        chain_poset(3),
        boolean_lattice(2),
        category_from_groupoid(one_object(groups.symmetric(3))),
        f2_injection_category(2),
    ):
        assert check_simplicial(fat_nerve(C)) == []


# -- comultiplication, counit, zeta -------------------------------------------


def test_two_chain_comultiplication():
    A = comultiplication_matrix(fat_nerve(chain_poset(2)))
    col = {r: v for (r, c), v in A.entries.items() if c == (0, 1)}
    assert col == {((0, 0), (0, 1)): 1, ((0, 1), (1, 1)): 1}


def test_terminal_category_comultiplication():
    A = comultiplication_matrix(fat_nerve(chain_poset(1)))
    assert A.entries == {(((0, 0), (0, 0)), (0, 0)): 1}


def test_poset_comultiplication_is_chain_indicator():
    for P in (chain_poset(3), boolean_lattice(2), divisor_lattice(12)):
        A = comultiplication_matrix(fat_nerve(P))
        expected = {
            (((x, y), (y, z)), (x, z)): 1 for (x, y, z) in chains(P.elements, P.covers, 2)
        }
        assert A.entries == expected


def test_fibre_and_component_methods_agree():
    for C in (boolean_lattice(2), category_from_groupoid(one_object(groups.cyclic(2)))):
        n = fat_nerve(C)
        assert comultiplication_matrix(n, "fibres") == comultiplication_matrix(n, "components")


def test_zeta_is_constant_one():
    for C in (
        boolean_lattice(2),
        category_from_groupoid(one_object(groups.symmetric(3))),
        f2_injection_category(1),
    ):
        n = fat_nerve(C)
        assert all(v == 1 for _, v in zeta_function(n).items())


def test_counit_on_chain():
    eps = counit_function(fat_nerve(chain_poset(3)))
    for (a, b), v in eps.items():
        assert v == (1 if a == b else 0)


def test_apply_comultiplication_to_long_relation():
    n = fat_nerve(chain_poset(3))
    y = apply_span(comultiplication_span(n), name(n.X1, (0, 2)))
    assert len(y.source.components) == 3


# -- convolution and Mobius ---------------------------------------------------


def test_zeta_squared_counts_chains():
    P = chain_poset(2)
    n = fat_nerve(P)
    z = zeta_function(n)
    zz = convolution(z, z, n)
    assert zz[(0, 1)] == 2
    assert zz[(0, 0)] == 1


def test_counit_is_convolution_unit():
    n = fat_nerve(boolean_lattice(2))
    eps = counit_function(n)
    z = zeta_function(n)
    assert convolution(eps, z, n) == z
    assert convolution(z, eps, n) == z


def test_convolution_index_mismatch():
    n = fat_nerve(chain_poset(2))
    other = zeta_function(fat_nerve(chain_poset(3)))
    with pytest.raises(MismatchError):
        convolution(other, other, n)


@pytest.mark.parametrize("key", sorted(POSETS))
def test_mobius_matches_classical(key):
    P = POSETS[key]
    n = fat_nerve(P)
    mu = mobius_numeric(n)
    oracle = classical_mobius(P.elements, P.covers)
    assert {r: mu[r] for r in labels(n.X1)} == oracle
    eps, z = counit_function(n), zeta_function(n)
    assert convolution(z, mu, n) == eps
    assert convolution(mu, z, n) == eps


def test_mobius_examples():
    mu = mobius_numeric(fat_nerve(boolean_lattice(2)))
    assert mu[(0, 3)] == 1
    assert mu[(0, 1)] == mu[(0, 2)] == mu[(1, 3)] == mu[(2, 3)] == -1
    assert mobius_numeric(fat_nerve(chain_poset(3)))[(0, 2)] == 0
    assert mobius_numeric(fat_nerve(chain_poset(1)))[(0, 0)] == 1


def test_mobius_of_group():
    # X1 of BG is one component whose counit and zeta both equal 1
    n = fat_nerve(category_from_groupoid(one_object(groups.cyclic(2))))
    assert mobius_numeric(n) == counit_function(n)


def test_mobius_of_idempotent_monoid():
    # {1, e} with e e = e: Delta(e) = 1 x e + e x 1 + e x e, so 2 mu(e) + 1 = 0
    n = fat_nerve(one_object_monoid([[0, 1], [1, 1]]))
    mu = mobius_numeric(n)
    assert mu[0] == 1 and mu[1] == Fraction(-1, 2)
    assert convolution(mu, zeta_function(n), n) == counit_function(n)


def test_mobius_not_invertible():
    n = fat_nerve(chain_poset(1))
    A = comultiplication_matrix(n)
    zero = QMatrix(A.rows, A.cols, {})
    with pytest.raises(NotInvertibleError):
        mobius_numeric(n, comult=zero)


# -- laws ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "C",
    [
        chain_poset(3),
        boolean_lattice(2),
        category_from_groupoid(one_object(groups.cyclic(2))),
        category_from_groupoid(connected(groups.cyclic(2), 2)),
    ],
    ids=["chain3", "b2", "bz2", "pair_z2"],
)
def test_coassociativity_and_counit(C):
    n = fat_nerve(C)
    A, B = coassociativity_matrices(n)
    assert A == B
    left, right = counit_law_matrices(n)
    assert left == identity_on_X1(n) == right


def test_skeletal_and_raw_composition_agree():
    n = fat_nerve(chain_poset(3))
    raw = coassociativity_matrices(n, method="fibres", skeletal=False)
    assert raw == coassociativity_matrices(n)


# -- q-binomials --------------------------------------------------------------


def test_injection_counts():
    # |GL_2(F_2)| = 6; a line in F_2^2 has one nonzero vector, so 3 injections
    assert len(injections(2, 2)) == 6
    assert len(injections(1, 2)) == 3
    assert len(injections(0, 3)) == 1


def test_subspace_counts_agree():
    for n in range(4):
        for k in range(n + 1):
            assert subspace_count(n, k) == subspaces(n, k) == gaussian_binomial(n, k)
    assert subspaces(2, 1) == 3


def test_f2_category_is_valid():
    assert f2_injection_category(2).validate() == []


@pytest.mark.parametrize("max_dim", [1, 2])
def test_qbinomial_report(max_dim):
    r = qbinomial_check(max_dim)
    assert r["pass"] and r["consistent"]
    for e in r["entries"]:
        i, j = e["split"]
        assert e["value"] == (subspaces(e["n"], i) if i + j == e["n"] else 0)


def test_qbinomial_named_constants():
    constants, consistent = reduced_comultiplication(2)
    assert consistent
    assert constants[(2, (1, 1))] == 3
    assert constants[(2, (0, 2))] == constants[(2, (2, 0))] == 1
    assert constants[(1, (0, 1))] == constants[(1, (1, 0))] == 1


def test_qbinomial_methods_agree():
    assert reduced_comultiplication(2, "fibres") == reduced_comultiplication(2, "components")


def test_qbinomial_dim3():
    constants, consistent = reduced_comultiplication(3)
    assert consistent
    assert constants[(3, (1, 2))] == constants[(3, (2, 1))] == subspaces(3, 1) == 7
    assert all(v == Fraction(subspaces(n, i)) for (n, (i, _)), v in constants.items())
