import math

import pytest
from hypothesis import given, settings, strategies as st

from frey13.cyclotomic import ALPHA, BETA, GAMMA, CycPoly, val_P13
from frey13.frey import (
    PRINTED_A4,
    PRINTED_A6,
    PRINTED_A6_EXTRA_B6,
    galois_coherence,
    instantiate,
    phi1_descended,
    verify_printed_polynomials,
)
from frey13.quadfield import PRIMES, QuadElt, val_at

pairs = st.tuples(st.integers(-10**3, 10**3), st.integers(-10**3, 10**3)).filter(
    lambda p: p != (0, 0) and math.gcd(*p) == 1
)


def ab(a, b):
    return QuadElt.from_ab(a, b)


def test_leading_coefficients(family):
    assert family.a4.coeff(4, 0) == ab(-2808, 216)
    assert family.a4.coeff(3, 1) == ab(5616, -1728)
    assert family.gauss_sign == 1


def test_null_relation_on_family(family):
    assert (family.A + family.B + family.C).is_zero()
    A, B, C = (p.evaluate(1, -1) for p in (family.A, family.B, family.C))
    assert (A + B + C).is_zero()


def test_printed_polynomials(family):
    chk = verify_printed_polynomials(family)
    assert chk.ok
    assert all(chk.a4_matches.values())
    assert all(v for k, v in chk.a6_matches.items())
    assert chk.b6_derived == ab(44928, -8640) == PRINTED_A6[(0, 6)]
    assert chk.b6_printed == (PRINTED_A6[(0, 6)], PRINTED_A6_EXTRA_B6)
    assert "extraneous" in chk.b6_note
    assert not chk.c4_forms_agree
    assert set(family.a4.monomials()) == set(PRINTED_A4)
    assert set(family.a6.monomials()) == set(PRINTED_A6)


def test_invariant_identities(family):
    A, B, C = family.A, family.B, family.C
    assert family.c4 * family.c4 * family.c4 - family.c6 * family.c6 == family.delta * 1728
    assert family.delta == (A * B * C) * (A * B * C) * 16
    # j (ABC)^2 = 2^8 (A^2 + AB + B^2)^3, i.e. c4^3 = j * Delta
    s = A * A + A * B + B * B
    assert family.c4 * family.c4 * family.c4 == s * s * s * 4096


def test_galois_coherence(family):
    rep = galois_coherence(family)
    assert rep.ok
    assert all(rep.sigma2_fixed.values())
    assert rep.cyclic_as_printed()
    assert rep.sigma12_identity


def test_alpha_beta_gamma_ideal():
    assert val_P13(ALPHA * BETA * GAMMA, 6) == 3


def test_instantiate_examples(family):
    E = instantiate(family, 1, 0)
    assert E.a4 == ab(-2808, 216)
    assert E.disc0 == E.delta * 6**12
    L13 = PRIMES["L13"]
    # valuation 2 in Q(sqrt 13) is valuation 6 in K, where w has valuation 3
    assert val_at(L13, E.delta) == 2
    assert val_at(L13, instantiate(family, 4, -3).delta) == 2
    assert val_at(L13, instantiate(family, 14, -1).delta) == 4


def test_instantiate_rejects_bad_pairs(family):
    with pytest.raises(ValueError):
        instantiate(family, 0, 0)
    with pytest.raises(ValueError):
        instantiate(family, 2, 4)
    # the trivial solution still gives a nonsingular curve
    assert not instantiate(family, 1, -1).disc0.is_zero()


@settings(max_examples=100, deadline=None)
@given(pairs)
def test_discriminant_valuation_at_2(family, pair):
    E = instantiate(family, *pair)
    assert val_at(PRIMES["L2"], E.delta) == 4
    assert val_at(PRIMES["L2"], E.disc0) == 16


@settings(max_examples=100, deadline=None)
@given(pairs)
def test_discriminant_factors_through_phi1(family, pair):
    # Delta(E) = 16 (alpha beta gamma)^2 phi1(a, b)^2 with (alpha beta gamma)^2 = 13
    E = instantiate(family, *pair)
    phi1 = phi1_descended(family).evaluate(*pair)
    assert E.delta == phi1 * phi1 * 16 * 13


@settings(max_examples=200, deadline=None)
@given(pairs)
def test_phi1_phi2_coprime_away_from_13(family, pair):
    from frey13.frey import phi2_descended
    from frey13.quadfield import primes_above

    p1 = phi1_descended(family).evaluate(*pair)
    p2 = phi2_descended(family).evaluate(*pair)
    phi = (p1 * p2).u // 2
    assert (p1 * p2) == QuadElt.coerce(phi)
    for l in (53, 79, 131, 157, 313, 443, 521, 547, 599):
        if phi % l:
            continue
        for L in primes_above(l):
            assert min(val_at(L, p1), val_at(L, p2)) == 0
