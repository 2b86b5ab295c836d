import random

import pytest

from hodgering.criteria import load_catalog
from hodgering.localinv import (
    LocalGerm,
    NonIsolated,
    NotSingular,
    local_membership,
    milnor_basis,
    milnor_number,
    random_linear_change,
    standard_basis,
    tau_min_search,
    tjurina_number,
    truncated_quotient_dim,
)
from hodgering.polycore import MonomialOrder, Polynomial, gradient, linear_change, parse_polynomial
from hodgering.spectrum import find_weights, milnor_orlik

V2 = ["x", "y"]
V3 = ["x", "y", "z"]


def germ(s, names=V3):
    return LocalGerm(parse_polynomial(s, names))


def P(s, names=V2):
    return parse_polynomial(s, names)


CATALOG = load_catalog()
SMALL = [e for e in CATALOG if e.mu <= 40]


def test_standard_basis_examples():
    sb = standard_basis([P("x^2"), P("y^2")])
    assert sorted(sb.leading_ideal()) == [(0, 2), (2, 0)]
    assert sb.dimension() == 4
    sb = standard_basis([P("x^2+y^3"), P("y^2+x^3")])
    assert sb.dimension() == 4
    # brute-force oracle: truncate beyond degree 6
    assert truncated_quotient_dim([P("x^2+y^3"), P("y^2+x^3")], 7) == 4
    assert standard_basis([P("1+x")]).unit


def test_unit_is_not_unit_globally():
    # 1 + x is a unit only in the local ring; the quotient is zero
    sb = standard_basis([P("x+x^2"), P("y")])
    assert sb.dimension() == 1


def test_standard_basis_generators_reduce_to_zero():
    gens = [P("x^3+x*y^2"), P("x^2*y+y^4")]
    sb = standard_basis(gens)
    for g in gens:
        assert not sb.weak_normal_form(g)


def test_milnor_examples():
    assert milnor_number(germ("x^2+y^2+z^2")) == 1
    assert milnor_number(germ("x^7+x^4*y^2+x^2*y^4+y^7+z^2")) == 27
    assert milnor_number(germ("x^3+y^10+z^19")) == 324


def test_tjurina_examples():
    assert tjurina_number(germ("x^7+x^4*y^2+x^2*y^4+y^7+z^2")) == 23
    assert tjurina_number(germ("x^3+y^10+z^19")) == 324
    g = germ("x^2+y^3+z^7+x*y*z")
    assert milnor_number(g) - tjurina_number(g) == 1


def test_milnor_basis_examples():
    assert milnor_basis(germ("x^2+y^2", V2)).monomials == [(0, 0)]
    assert sorted(milnor_basis(germ("x^2+y^3", V2)).monomials) == [(0, 0), (0, 1)]
    assert sorted(milnor_basis(germ("x^3+y^3", V2)).monomials) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_errors():
    with pytest.raises(NonIsolated):
        milnor_number(germ("x^2", V2))
    with pytest.raises(NonIsolated):
        milnor_number(germ("x^2*y^2", V2))
    with pytest.raises(NotSingular):
        milnor_number(germ("x+y^2", V2))
    with pytest.raises(NotSingular):
        milnor_number(germ("1+x^2", V2))


def test_germ_at_point():
    # (x-1)^2 + (y+2)^3 expanded
    f = P("x^2-2*x+1+y^3+6*y^2+12*y+8")
    g = LocalGerm.at(f, [1, -2])
    assert g.f == P("x^2+y^3")
    assert milnor_number(g) == 2
    with pytest.raises(ValueError):
        LocalGerm(P("x^2"), (0,))


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_catalog_mu_tau(entry):
    g = entry.germ()
    mu, tau = milnor_number(g), tjurina_number(g)
    assert (mu, tau) == (entry.mu, entry.tau)
    assert mu >= tau >= 1


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_mu_equals_tau_iff_weights(entry):
    g = entry.germ()
    assert (find_weights(g) is not None) == (entry.mu == entry.tau)


@pytest.mark.parametrize("entry", [e for e in CATALOG if e.mu == e.tau], ids=lambda e: e.name)
def test_milnor_orlik(entry):
    g = entry.germ()
    assert milnor_orlik(find_weights(g)) == milnor_number(g)


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_invariance_under_linear_changes(entry):
    g = entry.germ()
    rng = random.Random(entry.name)
    for _ in range(5):
        M = random_linear_change(g.nvars, rng)
        h = LocalGerm(linear_change(g.f, M))
        assert milnor_number(h) == entry.mu
        assert tjurina_number(h) == entry.tau


@pytest.mark.parametrize("entry", [e for e in CATALOG if e.mu <= 12], ids=lambda e: e.name)
def test_brute_force_quotient_dimension(entry):
    g = entry.germ()
    N = 2 * entry.mu
    assert truncated_quotient_dim(gradient(g.f), N) == entry.mu
    assert truncated_quotient_dim([g.f] + gradient(g.f), N) == entry.tau


def test_translated_germ_keeps_invariants():
    g = germ("x^2+y^3+z^7+x*y*z")
    pt = (1, -2, 3)
    shifted = g.f.substitute([Polynomial.variable(i, 3) - c for i, c in enumerate(pt)])
    h = LocalGerm.at(shifted, pt)
    assert (milnor_number(h), tjurina_number(h)) == (11, 10)


def test_weighted_order_gives_same_counts():
    g = germ("x^5+y^11+z^2")
    w = find_weights(g)
    assert milnor_number(g, w) == milnor_number(g) == 40


def test_local_membership():
    f = P("x^5+y^11")
    wx, wy = find_weights(LocalGerm(f))
    comb = P("x") * f.diff(0) * wx + P("y") * f.diff(1) * wy
    assert local_membership(f, [comb])
    assert not local_membership(P("x"), [P("x^2")])
    assert local_membership(P("x^2+x*y^2"), [P("x")])
    # (1 + x) is a unit locally, so x lies in (x + x^2)
    assert local_membership(P("x"), [P("x+x^2")])


def test_tau_min_search_small():
    g = germ("z^2+x^5+y^6")
    res = tau_min_search(g, samples=8, seed=0)
    assert res.mu == 20
    assert res.tau_min == 18
    assert len(res.taus) == 8 and min(res.taus) == 18
    again = tau_min_search(g, samples=8, seed=0)
    assert again.taus == res.taus


def test_tau_min_search_without_uppers_returns_tau():
    res = tau_min_search(germ("x^2+y^3+z^2"), samples=4)
    assert res.tau_min == 2


def test_tau_min_needs_weights():
    with pytest.raises(ValueError):
        tau_min_search(germ("x^2+y^3+z^7+x*y*z"), samples=2)


def test_local_order_properties():
    o = MonomialOrder.local(3)
    assert o.is_local
    assert not MonomialOrder.grevlex(3).is_local
