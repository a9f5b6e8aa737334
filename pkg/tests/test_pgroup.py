"""The finite 2-group engine: collection, subgroups, transfers, invariants."""

import pytest

from quadtower.errors import (
    ElementOutsideK,
    GroupMismatch,
    IndexNotTwo,
    InvalidParams,
    NonAbelianQuotient,
    NotNormal,
)
from quadtower.pgroup import (
    GroupParams,
    abelian_type_of,
    abelianization,
    centre,
    closure,
    derived_subgroup,
    distinguish,
    element_order,
    fingerprint,
    frattini_subgroup,
    gamma,
    gamma4r,
    lower_central_series,
    maximal_subgroups,
    quotient_group,
    standard_maximal_subgroups,
    subgroup,
    subgroups_of_index4,
    transfer,
    transfer_kernel,
    verify_presentation,
    whole_group,
)
from quadtower.quadforms import AbelianType


def test_params_validation():
    with pytest.raises(InvalidParams):
        GroupParams(0, 1, 0)
    with pytest.raises(InvalidParams):
        GroupParams(2, 2, 2)
    with pytest.raises(InvalidParams):
        GroupParams(2, 2, 1, family="Gamma5")
    with pytest.raises(InvalidParams):
        GroupParams(2, 2, 1, family="Gamma4r")


def test_orders():
    assert gamma(2, 2, 1).order == 128
    assert gamma(1, 1, 0).order == 32
    assert gamma(3, 2, 0).order == 256
    assert gamma4r(2).order == 64
    assert gamma4r(3).order == 128


def test_defining_relations():
    for n, m, eps in ((2, 2, 0), (2, 2, 1), (3, 2, 1), (2, 3, 0)):
        g = gamma(n, m, eps)
        a1, a2, a3 = g.a1, g.a2, g.a3
        assert g.comm(a1, a2) == g.c12
        assert g.comm(a1, a3) == g.c13
        assert g.comm(a2, a3) == g.identity
        assert g.pow(a1, 2) == g.inv(g.c13)
        assert g.pow(a2, 2) == g.pow(g.c13, (1 << (m - 1)) * eps)
        assert g.pow(a3, 1 << n) == g.mul(g.c12, g.pow(g.c13, 1 << (m - 1)))
        assert g.pow(g.c12, 2) == g.identity
        assert g.pow(g.c13, 1 << m) == g.identity


def test_gamma4r_relations():
    for n in (2, 3):
        g = gamma4r(n)
        assert g.pow(g.a1, 2) == g.c12
        assert g.pow(g.a2, 2) == g.c12
        assert g.pow(g.a3, 1 << n) == g.c13
        assert g.pow(g.c12, 2) == g.identity
        assert g.pow(g.c13, 2) == g.identity


def test_word_parser():
    g = gamma(2, 2, 1)
    assert g.word("a1 a3^2 c13^-1") == g.mul(
        g.mul(g.a1, g.pow(g.a3, 2)), g.inv(g.c13)
    )
    assert g.word("") == g.identity


def test_mul_range_guard():
    g = gamma(2, 2, 1)
    with pytest.raises(GroupMismatch):
        g.mul((0, 0, 7, 0, 0), g.identity)


def test_element_orders_and_centre():
    g = gamma(2, 2, 1)
    assert element_order(g, g.identity) == 1
    assert element_order(g, g.c12) == 2
    assert element_order(g, g.a3) == 8
    z = centre(g)
    for x in z.elements:
        assert all(g.mul(x, y) == g.mul(y, x) for y in g.gens())


def test_abelianization_and_derived():
    for n, m, eps in ((2, 2, 0), (2, 2, 1), (3, 3, 1)):
        g = gamma(n, m, eps)
        assert abelianization(g) == AbelianType.of(1 << n, 2, 2)
        der = derived_subgroup(whole_group(g))
        assert abelian_type_of(der) == AbelianType.of(1 << m, 2)
        assert der.elements == closure(g, [g.c12, g.c13])


def test_frattini_index_is_8():
    g = gamma(2, 2, 1)
    assert whole_group(g).order // frattini_subgroup(whole_group(g)).order == 8


def test_lower_central_series_terms():
    g = gamma(2, 3, 0)
    series = lower_central_series(g)
    assert series[0].order == g.order
    assert series[1].elements == closure(g, [g.c12, g.c13])
    assert series[2].elements == closure(g, [g.pow(g.c13, 2)])
    assert series[3].elements == closure(g, [g.pow(g.c13, 4)])
    assert series[-1].order == 1


def test_abelian_type_errors():
    g = gamma(2, 2, 1)
    with pytest.raises(NonAbelianQuotient):
        abelian_type_of(whole_group(g))
    h = subgroup(g, [g.a1])  # not normal in G
    with pytest.raises(NotNormal):
        quotient_group(g, h)


def test_generic_vs_standard_maximal_subgroups():
    for n, m, eps in ((2, 2, 0), (2, 2, 1)):
        g = gamma(n, m, eps)
        generic = {s.elements for s in maximal_subgroups(whole_group(g))}
        labeled = {s.elements for s in standard_maximal_subgroups(g)}
        assert generic == labeled
        assert len(generic) == 7


def test_subgroups_of_index4_counts():
    g = gamma(2, 2, 1)
    subs = subgroups_of_index4(g)
    assert all(4 * s.order == g.order for s, _ in subs)
    nonnormal = [s for s, normal in subs if not normal]
    assert len(nonnormal) == 8


def test_transfer_errors():
    g = gamma(2, 2, 1)
    top = whole_group(g)
    h = subgroup(g, standard_maximal_subgroups(g)[0].generators)
    quarter = subgroup(g, [g.a2, g.c12, g.c13])
    with pytest.raises(IndexNotTwo):
        transfer(top, quarter, g.a2)
    with pytest.raises(ElementOutsideK):
        transfer(h, subgroup(g, [g.a2, g.pow(g.a3, 2), g.c12, g.c13]), g.a3)


def test_transfer_kernel_orders():
    g = gamma(2, 2, 1)
    top = whole_group(g)
    subs = standard_maximal_subgroups(g)
    orders = [transfer_kernel(top, s)[0] for s in subs]
    assert orders == [4, 2, 4, 4, 4, 4, 4]


def test_quotient_group():
    g = gamma(1, 2, 0)
    series = lower_central_series(g)
    q = quotient_group(g, series[3])
    assert q.order == 64
    der = derived_subgroup(whole_group(g))
    qab = quotient_group(g, der)
    assert qab.order == 8


def test_distinguish_small_groups():
    assert distinguish(gamma(1, 1, 0), gamma(1, 1, 1)) == "Distinct"
    assert distinguish(gamma(2, 2, 0), gamma(2, 2, 1)) == "Distinct"
    # The real-family group coincides with Gamma_{n,1,1}.
    for n in (2, 3):
        assert distinguish(gamma4r(n), gamma(n, 1, 1)) == "NotDistinguished"
        assert fingerprint(gamma4r(n)) == fingerprint(gamma(n, 1, 1))


def test_verify_presentation_clean():
    for g in (gamma(2, 2, 0), gamma(2, 2, 1), gamma4r(2)):
        report = verify_presentation(g, seed=1)
        assert report["failures"] == [], report
        assert report["seed"] == 1
