from fractions import Fraction

import pytest

from hlq import groups
from hlq.cardinality import family_cardinality, groupoid_cardinality, span_matrix
from hlq.errors import MismatchError, SizeCapError
from hlq.functor import (
    GroupoidFunctor,
    check_functor,
    compose_functors,
    constant,
    functor_groupoid,
    identity_functor,
    name,
    pairing,
    to_terminal,
)
from hlq.groupoid import (
    ProductGroupoid,
    connected,
    discrete,
    empty,
    equivalent,
    one_object,
    product,
    terminal,
)
from hlq.incidence import chain_poset, comultiplication_span, fat_nerve
from hlq.pullback import homotopy_fibre, homotopy_pullback
from hlq.span import (
    Span,
    apply_span,
    compose_spans,
    family_span,
    homotopy_sum,
    identity_span,
    is_finite_type,
    is_profinite_type,
    lowershriek,
    scalar_multiply,
    skeletal_apex,
    tensor_span,
    transpose,
    upperstar,
)

from oracles import brute_fibre_cardinality, brute_pullback_cardinality

S3 = groups.symmetric(3)
BS3 = one_object(S3)
BZ2 = one_object(groups.cyclic(2))


def point_into(B, b):
    return name(B, b)


# -- check_functor ------------------------------------------------------------


def test_identity_functor_is_functorial():
    assert check_functor(identity_functor(connected(S3, 2))) == []


def test_dropped_identity_detected():
    X = BZ2
    F = GroupoidFunctor(X, X, {"*": "*"}, {("*", 0): ("*", 1), ("*", 1): ("*", 1)})
    assert "identity not preserved" in {v.axiom for v in check_functor(F)}


def test_constant_to_one_object_is_functorial():
    assert check_functor(constant(connected(S3, 2), BZ2, "*")) == []


def test_non_homomorphism_detected():
    # Z/3 -> Z/2 sending the generator to the generator is not a homomorphism
    X = one_object(groups.cyclic(3))
    F = GroupoidFunctor(
        X, BZ2, {"*": "*"}, {("*", 0): ("*", 0), ("*", 1): ("*", 1), ("*", 2): ("*", 0)}
    )
    assert "composition not preserved" in {v.axiom for v in check_functor(F)}


def test_missing_object_image_detected():
    F = GroupoidFunctor(discrete(2), discrete(1), {0: 0}, {("id", 0): ("id", 0)})
    assert check_functor(F)


# -- fibres -------------------------------------------------------------------


def test_fibre_of_point_into_bg():
    fib = homotopy_fibre(point_into(BS3, "*"), "*")
    assert len(fib.objects) == 6
    assert [c.aut_order for c in fib.components] == [1] * 6
    assert equivalent(fib, discrete(6))


def test_fibre_of_identity_is_contractible():
    X = connected(S3, 3)
    for x in X.objects:
        assert equivalent(homotopy_fibre(identity_functor(X), x), terminal())


def test_fibre_over_missed_component_is_empty():
    B = discrete(2)
    F = constant(BZ2, B, 0)
    fib = homotopy_fibre(F, 1)
    assert fib.objects == ()
    assert groupoid_cardinality(fib) == 0


def test_fibre_rejects_foreign_point():
    with pytest.raises(MismatchError):
        homotopy_fibre(identity_functor(BZ2), "nope")


def test_fibre_matches_oracle():
    X = connected(groups.cyclic(4), 2, "x")
    F = compose_functors(
        GroupoidFunctor(
            one_object(groups.cyclic(4)),
            BZ2,
            {"*": "*"},
            {("*", i): ("*", i % 2) for i in range(4)},
        ),
        GroupoidFunctor(
            X, one_object(groups.cyclic(4)), lambda x: "*", lambda m: ("*", m[3])
        ),
    )
    assert check_functor(F) == []
    assert groupoid_cardinality(homotopy_fibre(F, "*")) == brute_fibre_cardinality(F, "*")


# -- pullbacks ----------------------------------------------------------------


def test_pullback_of_points_over_bg():
    n = point_into(BS3, "*")
    P, px, py = homotopy_pullback(n, n)
    assert groupoid_cardinality(P) == 6
    assert brute_pullback_cardinality(n, n) == 6
    assert equivalent(P, discrete(6))
    assert check_functor(px) == [] and check_functor(py) == []


def test_pullback_over_point_is_product():
    X, Y = connected(groups.cyclic(3), 2, "x"), BZ2
    P, _, _ = homotopy_pullback(to_terminal(X), to_terminal(Y))
    assert equivalent(P, product(X, Y))


def test_pullback_along_identity():
    X = connected(S3, 2, "x")
    B = BS3
    F = GroupoidFunctor(X, B, lambda x: "*", lambda m: ("*", m[3]))
    P, _, _ = homotopy_pullback(F, identity_functor(B))
    assert equivalent(P, X)


def test_pullback_rejects_different_targets():
    with pytest.raises(MismatchError):
        homotopy_pullback(identity_functor(BZ2), identity_functor(BS3))


def test_pullback_identifiers_are_sorted_triples():
    n = point_into(BZ2, "*")
    P, _, _ = homotopy_pullback(n, n)
    assert list(P.objects) == [("*", "*", ("*", 0)), ("*", "*", ("*", 1))]


# -- spans --------------------------------------------------------------------


def bg_span(G):
    B = one_object(G)
    return Span(to_terminal(B), to_terminal(B))


def test_compose_with_identity_keeps_matrix():
    L = Span(to_terminal(BS3), name(BS3, "*").__class__(BS3, BZ2, lambda x: "*", lambda m: ("*", 0)))
    for M in (compose_spans(identity_span(L.source), L), compose_spans(L, identity_span(L.target))):
        assert equivalent(M.apex, L.apex)
        assert span_matrix(M) == span_matrix(L)


def test_compose_bg_spans():
    L = bg_span(groups.cyclic(2))
    C = compose_spans(L, L)
    assert groupoid_cardinality(C.apex) == Fraction(1, 4)


def test_compose_rejects_foot_mismatch():
    with pytest.raises(MismatchError):
        compose_spans(identity_span(BZ2), identity_span(BS3))


def test_transpose_involution():
    L = Span(to_terminal(BS3), constant(BS3, BZ2, "*"))
    assert transpose(transpose(L)) == L
    assert transpose(L).source == L.target


def test_identity_span_of_empty():
    L = identity_span(empty())
    assert L.apex.objects == ()
    assert span_matrix(L).entries == {}


def test_tensor_of_point_spans():
    X, Y = BZ2, connected(groups.cyclic(3), 2)
    T = tensor_span(family_span(to_terminal(X)), family_span(to_terminal(Y)))
    assert equivalent(T.apex, product(X, Y))
    assert span_matrix(T).entries == {
        (("*", "*"), ("*", "*")): groupoid_cardinality(X) * groupoid_cardinality(Y)
    }


def test_skeletal_apex_is_equivalent():
    X = connected(S3, 3)
    L = Span(to_terminal(X), to_terminal(X))
    K = skeletal_apex(L)
    assert len(K.apex.objects) == 1
    assert span_matrix(K) == span_matrix(L)


# -- lowershriek / upperstar / apply ------------------------------------------


def test_lowershriek_identity():
    x = name(BS3, "*")
    assert lowershriek(identity_functor(BS3), x) is not None
    assert family_cardinality(lowershriek(identity_functor(BS3), x)) == family_cardinality(x)


def test_lowershriek_to_point():
    X = connected(groups.cyclic(3), 2)
    x = identity_functor(X)
    y = lowershriek(to_terminal(X), x)
    assert y.source == X and y.target == terminal()


def test_name_pushed_to_point_is_terminal_family():
    y = lowershriek(to_terminal(BS3), name(BS3, "*"))
    assert equivalent(y.source, terminal())


def test_upperstar_identity():
    x = name(BS3, "*")
    y = upperstar(identity_functor(BS3), x)
    assert equivalent(y.source, x.source)


def test_upperstar_of_terminal_family():
    X = connected(groups.cyclic(2), 2)
    y = upperstar(to_terminal(X), identity_functor(terminal()))
    assert equivalent(y.source, X)


def test_upperstar_point_along_point():
    n = name(BS3, "*")
    y = upperstar(n, n)
    assert equivalent(y.source, discrete(6))
    assert y.target == terminal()


def test_upperstar_rejects_mismatch():
    with pytest.raises(MismatchError):
        upperstar(identity_functor(BZ2), name(BS3, "*"))


def test_apply_identity_span():
    x = GroupoidFunctor(BS3, BZ2, {"*": "*"}, lambda m: ("*", 0))
    y = apply_span(identity_span(BZ2), x)
    assert equivalent(y.source, x.source)
    assert family_cardinality(y) == family_cardinality(x)


def test_apply_point_span_to_terminal_family():
    M = connected(groups.cyclic(3), 2)
    L = Span(to_terminal(M), to_terminal(M))
    y = apply_span(L, identity_functor(terminal()))
    assert equivalent(y.source, M)


def test_apply_comultiplication_to_long_relation():
    n = fat_nerve(chain_poset(3))
    D = comultiplication_span(n)
    y = apply_span(D, name(n.X1, (0, 2)))
    # intermediate elements 0, 1, 2
    assert len(y.source.components) == 3


def test_apply_rejects_mismatch():
    with pytest.raises(MismatchError):
        apply_span(identity_span(BZ2), name(BS3, "*"))


# -- names, sums, scalars -----------------------------------------------------


def test_homotopy_sum_of_fibres_recovers_total_space():
    X = connected(groups.cyclic(4), 2, "x")
    B = BZ2
    F = GroupoidFunctor(X, B, lambda x: "*", lambda m: ("*", m[3] % 2))
    # family of fibres over B x 1, summed over B
    g = pairing(F, to_terminal(X), ProductGroupoid(B, terminal()))
    total = homotopy_sum(g)
    assert equivalent(total.source, X)
    assert groupoid_cardinality(total.source) == sum(
        groupoid_cardinality(homotopy_fibre(F, c.representative)) / c.aut_order
        for c in B.components
    )


def test_scalar_multiply_by_point():
    x = name(BS3, "*")
    y = scalar_multiply(terminal(), x)
    assert equivalent(y.source, x.source)
    assert family_cardinality(y) == family_cardinality(x)


def test_names_basis_decomposition():
    # a family is the sum over components of |X_s| / |Aut s| times the name of s
    S = connected(groups.cyclic(2), 2, "s")
    X = connected(S3, 1, "x")
    x = GroupoidFunctor(X, S, lambda o: ("s", 0), lambda m: ("s", 0, 0, 0))
    v = family_cardinality(x)
    recombined = sum(
        groupoid_cardinality(homotopy_fibre(x, c.representative))
        / c.aut_order
        * family_cardinality(name(S, c.representative))[c.representative]
        for c in S.components
    )
    assert v[("s", 0)] == recombined


def test_homotopy_sum_needs_product_base():
    with pytest.raises(MismatchError):
        homotopy_sum(identity_functor(BZ2))


# -- functor groupoids --------------------------------------------------------


def test_map_into_point():
    M = functor_groupoid(connected(S3, 2), terminal())
    assert len(M.objects) == 1
    assert equivalent(M, terminal())


def test_map_out_of_point():
    Y = connected(groups.cyclic(2), 2)
    assert equivalent(functor_groupoid(terminal(), Y), Y)


def test_map_bz2_bz2():
    M = functor_groupoid(BZ2, BZ2)
    assert [c.aut_order for c in M.components] == [2, 2]
    assert groupoid_cardinality(M) == 1


def test_functor_groupoid_size_cap():
    with pytest.raises(SizeCapError, match="too large"):
        functor_groupoid(discrete(8), discrete(8), cap=1000)


def test_exponential_law_instance():
    X, Y, Z = BZ2, one_object(groups.cyclic(3)), BZ2
    lhs = functor_groupoid(X, product(Y, Z))
    rhs = product(functor_groupoid(X, Y), functor_groupoid(X, Z))
    assert groupoid_cardinality(lhs) == groupoid_cardinality(rhs)
    assert sorted(c.aut_order for c in lhs.components) == sorted(
        c.aut_order for c in rhs.components
    )


# -- finiteness ---------------------------------------------------------------


def test_identity_span_is_finite_both_ways():
    L = identity_span(connected(S3, 2))
    fin, pro = is_finite_type(L), is_profinite_type(L)
    assert fin and pro
    assert all(card == 1 for _, card in fin.fibre_cardinalities)


def test_point_span_is_finite():
    M = connected(groups.cyclic(3), 2)
    L = Span(to_terminal(M), to_terminal(M))
    assert is_finite_type(L) and is_profinite_type(L)
    assert is_finite_type(L).fibre_cardinalities == (("*", Fraction(1, 3)),)
