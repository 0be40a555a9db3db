"""Oracles driven by links that are themselves stratified, plus the
field-coefficient pathway of the verification harness."""

import pytest

from strathom.complexes import sphere, suspension
from strathom.harness import (
    cone_oracle,
    join_oracle,
    suspension_oracle,
    verify_coarsening,
    verify_refinement,
)
from strathom.perversity import INF, NINF, Perversity, zero_perversity
from strathom.strat import strata_from_levels
from strathom import blowup, fixtures
from strathom.chains import field


def marked_circle():
    """Suspension of S^0: a 4-cycle with two point strata (the poles)."""
    cx, lev = suspension(sphere(0))
    st = strata_from_levels(cx, lev)
    poles = [st.stratum_of(cx.index((0,))), st.stratum_of(cx.index((1,)))]
    return st, poles


@pytest.mark.parametrize("pole_vals", [(0, 0), (1, -1), (-1, -1)])
@pytest.mark.parametrize("apex", [-1, 0, 1, 2])
def test_cone_over_stratified_link(pole_vals, apex):
    st, poles = marked_circle()
    p = Perversity(st, {poles[0]: pole_vals[0], poles[1]: pole_vals[1]})
    rep = cone_oracle(st, p, apex, primes=(2,))
    assert rep.ok, [e for e in rep.entries if e["verdict"] != "PASS"][:4]


@pytest.mark.parametrize("apex", [-2, 0, 3])
def test_suspension_over_stratified_link(apex):
    st, poles = marked_circle()
    p = Perversity(st, {poles[0]: 0, poles[1]: 0})
    rep = suspension_oracle(st, p, (apex, apex))
    assert rep.ok, [e for e in rep.entries if e["verdict"] != "PASS"][:4]


@pytest.mark.parametrize("sphere_val", [-1, 0, 1])
def test_join_over_stratified_link(sphere_val):
    st, poles = marked_circle()
    p = Perversity(st, {poles[0]: 0, poles[1]: 0})
    rep = join_oracle(st, p, 1, sphere_val, primes=(2,))
    assert rep.ok, [e for e in rep.entries if e["verdict"] != "PASS"][:4]


def test_cone_oracle_infinite_apex_values():
    st, poles = marked_circle()
    p = Perversity(st, {poles[0]: 0, poles[1]: 0})
    for apex in (INF, NINF):
        rep = cone_oracle(st, p, apex, primes=(2,))
        assert rep.ok, [e for e in rep.entries if e["verdict"] != "PASS"][:4]


def test_blowup_minus_infinity_is_zero():
    from strathom.complexes import cone

    cx, lev = cone(sphere(1))
    st = strata_from_levels(cx, lev)
    apex = st.stratum_of(cx.index((3,)))
    h = blowup.blowup_cohomology(st, Perversity(st, {apex: NINF}), 2)
    assert h.betti_vector(st.n) == (0, 0, 0)


@pytest.mark.parametrize("name", ["ejemplo-K", "join"])
@pytest.mark.parametrize("prime", [2, 5])
def test_coarsening_over_field_coefficients(name, prime):
    fx = fixtures.load_fixture(name)
    rep = verify_coarsening(fx["pair"], fx["perversities"]["t"], ring=field(prime))
    assert rep.all_asserted_pass, rep.to_table()
    # every clause ran over the requested field
    assert all(c.ring == field(prime) for c in rep.clauses)


def test_refinement_over_field_coefficients():
    fx = fixtures.load_fixture("cone-s1-point")
    pair = fx["pair"]
    rep = verify_refinement(pair, zero_perversity(pair.coarse), ring=field(2))
    assert rep.all_asserted_pass, rep.to_table()
