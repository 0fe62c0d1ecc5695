import math

import pytest
from hypothesis import given, settings, strategies as st

from frey13.cyclotomic import (
    ALPHA,
    BETA,
    GAMMA,
    CycElt,
    CycPoly,
    PHI1_EXPONENTS,
    build_phi_factors,
    check_null_relation,
    galois,
    is_fixed,
    norm,
    phi_int,
    val_P13,
    zeta,
)
from frey13.exactalg import is_prime

elts = st.lists(st.integers(-20, 20), min_size=12, max_size=12).map(CycElt)
pairs = st.tuples(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4)).filter(
    lambda p: p != (0, 0) and math.gcd(*p) == 1
)
SMALL_PRIMES = [l for l in range(2, 10**4) if is_prime(l)]


def test_basic_multiplication():
    assert zeta(1) * zeta(12) == CycElt.from_int(1)
    z = zeta(1) + zeta(12)
    assert z * z == zeta(2) + zeta(11) + 2
    assert (ALPHA + BETA + GAMMA).is_zero()


def test_galois_examples():
    assert galois(zeta(1), 0) == zeta(1)
    e = zeta(1) + zeta(12)
    assert galois(e, 6) == e
    assert galois(ALPHA, 4) == BETA
    assert galois(BETA, 4) == GAMMA


def test_phi_factors():
    F = build_phi_factors()
    assert F.phi == phi_int()
    assert F.phi.evaluate(1, 1) == CycElt.from_int(1)
    assert F.phi.evaluate(2, 1) == CycElt.from_int(2731)
    assert F.phi.evaluate(1, 0) == CycElt.from_int(1)
    assert F.phi1 * F.phi2 == F.phi
    assert F.f1 * F.f2 * F.f3 == F.phi1
    assert F.phi.is_homogeneous()


def test_null_relation_pairing():
    rel = check_null_relation()
    assert not rel.printed_pairing_holds
    assert dict(rel.pairing) == {"alpha": "f1", "beta": "f3", "gamma": "f2"}
    F = build_phi_factors()
    total = F.f1 * ALPHA + F.f3 * BETA + F.f2 * GAMMA
    assert total.is_zero()
    # weights sum to zero, which is what kills the x^2 and y^2 coefficients
    printed = F.f1 * ALPHA + F.f2 * BETA + F.f3 * GAMMA
    assert printed.coeff(2, 0).is_zero() and printed.coeff(0, 2).is_zero()
    assert not printed.is_zero()


def test_val_p13():
    assert val_P13(1 - zeta(1)) == 1
    assert val_P13(CycElt.from_int(13)) == 12
    # alpha generates the square of the prime above 13 in Q(zeta), its first power in K
    assert val_P13(ALPHA) == 2
    assert [val_P13(e, 6) for e in (ALPHA, BETA, GAMMA)] == [1, 1, 1]
    assert val_P13(ALPHA * BETA * GAMMA, 6) == 3
    with pytest.raises(ValueError):
        val_P13(CycElt())
    with pytest.raises(ValueError):
        val_P13(zeta(1), 6)


def test_norm_of_zero_is_zero():
    assert norm(CycElt()) == 0
    assert norm(1 - zeta(1)) == 13


@settings(max_examples=100, deadline=None)
@given(elts, elts, st.integers(0, 11))
def test_galois_is_ring_homomorphism(a, b, k):
    assert galois(a * b, k) == galois(a, k) * galois(b, k)
    assert galois(a + b, k) == galois(a, k) + galois(b, k)


@settings(max_examples=50, deadline=None)
@given(elts)
def test_sigma_has_order_12(e):
    x = e
    for _ in range(12):
        x = galois(x, 1)
    assert x == e


def _root_of_unity(l):
    """A primitive 13th root of unity mod l (l = 1 mod 13)."""
    for g in range(2, l):
        r = pow(g, (l - 1) // 13, l)
        if r != 1:
            return r


@settings(max_examples=200, deadline=None)
@given(pairs)
def test_linear_factors_coprime_away_from_13(pair):
    # A prime above l | phi(a, b) divides a + z^i b for a single i: with z -> r mod l,
    # exactly one exponent i has a + r^i b = 0 mod l.
    a, b = pair
    phi = phi_int().evaluate(a, b).c[0]
    for l in SMALL_PRIMES:
        if l == 13 or phi % l:
            continue
        assert l % 13 == 1
        r = _root_of_unity(l)
        hits = [i for i in range(1, 13) if (a + pow(r, i, l) * b) % l == 0]
        assert len(hits) == 1


@settings(max_examples=200, deadline=None)
@given(pairs)
def test_gcd_of_sum_and_phi(pair):
    a, b = pair
    phi = phi_int().evaluate(a, b).c[0]
    assert math.gcd(a + b, phi) in (1, 13)
    if (a + b) % 13 == 0:
        assert phi % 13 == 0 and phi % 169 != 0


@settings(max_examples=200, deadline=None)
@given(pairs)
def test_prime_divisors_of_sum_of_13th_powers(pair):
    a, b = pair
    s = a**13 + b**13
    for l in SMALL_PRIMES:
        if s % l == 0 and l % 13 != 1:
            assert (a + b) % l == 0


@pytest.mark.parametrize("r", [5, 7, 13])
def test_sum_and_cofactor_small_exponents(r):
    for a in range(-12, 13):
        for b in range(-12, 13):
            if (a, b) == (0, 0) or math.gcd(a, b) != 1 or a + b == 0:
                continue
            phi = (a**r + b**r) // (a + b)
            assert math.gcd(a + b, phi) in (1, r)
            if (a + b) % r == 0:
                assert phi % r == 0 and phi % (r * r) != 0


def test_phi1_exponents_are_quadratic_residues():
    assert sorted(PHI1_EXPONENTS) == sorted({i * i % 13 for i in range(1, 13)})
    F = build_phi_factors()
    # phi1 and phi2 are defined over Q(sqrt 13); the quadratics only over K
    assert all(is_fixed(c, 2) for c in F.phi1.terms.values())
    assert all(is_fixed(c, 2) for c in F.phi2.terms.values())
    assert all(is_fixed(c, 6) for c in F.f1.terms.values())
    assert not all(is_fixed(c, 2) for c in F.f1.terms.values())
