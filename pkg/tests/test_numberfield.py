"""Exact cyclotomic arithmetic: axioms, Galois action, numeric embedding."""

import math
import random
from fractions import Fraction

import mpmath
import pytest

from autorec.numberfield import (
    GaloisMap,
    RatPoly,
    complex_embed,
    coset_reps,
    cyclo_field,
    cyclotomic_int,
    cyclotomic_poly,
    divisors,
    euler_phi,
    factorize,
    galois_apply,
    gaussian_period,
    is_prime_power,
    multiplicative_order,
    nullspace,
    rationality,
    solve_exact,
)
from conftest import random_element

CONDUCTORS = (3, 5, 7, 9, 15, 21, 33)
EMBED_TOL = mpmath.mpf("1e-9")


# ----------------------------------------------------------------------
# integer utilities


def test_factorize_small():
    assert factorize(1) == []
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(97) == [(97, 1)]
    assert factorize(2 * 3 * 5 * 7 * 11) == [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1)]


def test_euler_phi_multiplicative():
    rng = random.Random(11)
    for _ in range(50):
        a = rng.randint(1, 200)
        b = rng.randint(1, 200)
        if math.gcd(a, b) == 1:
            assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_divisors_and_prime_powers():
    assert divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert is_prime_power(27) == (3, 3)
    assert is_prime_power(1) is None
    assert is_prime_power(45) is None
    assert is_prime_power(5) == (5, 1)


def test_multiplicative_order_matches_definition():
    for n in (3, 5, 7, 9, 15, 21, 33, 63, 65):
        d = multiplicative_order(2, n)
        assert pow(2, d, n) == 1
        for t in range(1, d):
            assert pow(2, t, n) != 1


def test_coset_reps_partition_units():
    for n in CONDUCTORS:
        reps = coset_reps(2, n)
        s0 = multiplicative_order(2, n)
        units = {u for u in range(1, n) if math.gcd(u, n) == 1}
        seen = set()
        for u in reps:
            orbit = {u * pow(2, i, n) % n for i in range(s0)}
            assert not orbit & seen
            seen |= orbit
        assert seen == units
        assert reps[0] == 1
        assert reps == sorted(reps)


# ----------------------------------------------------------------------
# cyclotomic polynomials


def test_cyclotomic_poly_known_values():
    assert list(cyclotomic_int(1)) == [-1, 1]
    assert list(cyclotomic_int(2)) == [1, 1]
    assert list(cyclotomic_int(3)) == [1, 1, 1]
    assert list(cyclotomic_int(9)) == [1, 0, 0, 1, 0, 0, 1]
    assert list(cyclotomic_int(15)) == [1, -1, 0, 1, -1, 1, 0, -1, 1]
    # 105 is the first conductor with a coefficient of magnitude 2
    assert min(cyclotomic_int(105)) == -2


def test_cyclotomic_product_formula():
    # prod over d | n of Phi_d(x) = x^n - 1, exactly, for n <= 200
    for n in range(1, 201):
        prod = RatPoly([1])
        for d in divisors(n):
            prod = prod * cyclotomic_poly(d)
        expected = RatPoly.monomial(n) - RatPoly([1])
        assert prod == expected, n


def test_cyclotomic_poly_monic_of_degree_phi():
    for n in (1, 2, 6, 12, 30, 128, 200):
        p = cyclotomic_poly(n)
        assert p.degree == euler_phi(n)
        assert p.coefficient(p.degree) == 1


# ----------------------------------------------------------------------
# field axioms (randomized, exact)


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_field_axioms_randomized(conductor):
    field = cyclo_field(conductor)
    rng = random.Random(1000 + conductor)
    for _ in range(100):
        a = random_element(field, rng)
        b = random_element(field, rng)
        c = random_element(field, rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + field.zero() == a
        assert a * field.one() == a
        assert (a - a).is_zero()


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_inverse_randomized(conductor):
    field = cyclo_field(conductor)
    rng = random.Random(2000 + conductor)
    done = 0
    while done < 100:
        a = random_element(field, rng)
        if a.is_zero():
            continue
        assert (a.inverse() * a) == field.one()
        done += 1


def test_inverse_of_zero_rejected():
    field = cyclo_field(7)
    with pytest.raises(ZeroDivisionError):
        field.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        field.one() / field.zero()


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_omega_has_exact_order(conductor):
    field = cyclo_field(conductor)
    w = field.omega()
    p = field.one()
    for j in range(1, conductor):
        p = p * w
        assert not p == field.one(), (conductor, j)
    assert p * w == field.one()


# ----------------------------------------------------------------------
# numeric embedding (the only approximate check in the suite)


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_embed_is_a_ring_homomorphism(conductor):
    field = cyclo_field(conductor)
    rng = random.Random(3000 + conductor)
    for _ in range(100):
        a = random_element(field, rng)
        b = random_element(field, rng)
        ea, eb = complex_embed(a), complex_embed(b)
        assert abs(complex_embed(a + b) - (ea + eb)) < EMBED_TOL
        assert abs(complex_embed(a * b) - ea * eb) < EMBED_TOL


def test_embed_of_omega_is_primitive_root():
    for conductor in CONDUCTORS:
        w = complex_embed(cyclo_field(conductor).omega())
        target = mpmath.exp(2j * mpmath.pi / conductor)
        assert abs(w - target) < EMBED_TOL


# ----------------------------------------------------------------------
# Galois action


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_galois_homomorphism_randomized(conductor):
    field = cyclo_field(conductor)
    rng = random.Random(4000 + conductor)
    units = [m for m in range(1, conductor) if math.gcd(m, conductor) == 1]
    for _ in range(100):
        m = rng.choice(units)
        a = random_element(field, rng)
        b = random_element(field, rng)
        assert galois_apply(a + b, m) == galois_apply(a, m) + galois_apply(b, m)
        assert galois_apply(a * b, m) == galois_apply(a, m) * galois_apply(b, m)
        q = field.from_rational(Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
        assert galois_apply(q, m) == q


def test_galois_composition_law():
    field = cyclo_field(15)
    rng = random.Random(77)
    units = [m for m in range(1, 15) if math.gcd(m, 15) == 1]
    for _ in range(60):
        a_m, b_m = rng.choice(units), rng.choice(units)
        x = random_element(field, rng)
        lhs = galois_apply(galois_apply(x, b_m), a_m)
        assert lhs == galois_apply(x, a_m * b_m % 15)


def test_galois_conjugate_is_inverse_exponent():
    field = cyclo_field(9)
    w = field.omega()
    assert w.conjugate() == galois_apply(w, -1)
    assert (w * w.conjugate()).rational_value() == 1


def test_galois_requires_unit_exponent():
    field = cyclo_field(9)
    with pytest.raises(ValueError):
        GaloisMap(field, 3)


def test_rationality_stable_under_galois():
    field = cyclo_field(21)
    rng = random.Random(5)
    for _ in range(100):
        a = random_element(field, rng)
        img = galois_apply(a, 2)
        if img == a:
            assert rationality(img) == rationality(a)


# ----------------------------------------------------------------------
# rationality, periods, conversions


def test_rationality_kinds():
    field = cyclo_field(7)
    assert rationality(field.from_rational(5)).kind == "integer"
    assert rationality(field.from_rational(Fraction(1, 2))).kind == "rational"
    assert rationality(field.omega()).kind == "irrational"
    z = field.omega() - field.omega()
    assert rationality(z) == rationality(field.zero())


def test_gaussian_periods_conductor_seven():
    # eta_0 = w + w^2 + w^4 and eta_1 = w^3 + w^5 + w^6 satisfy
    # eta_0 + eta_1 = -1 and eta_0 * eta_1 = 2, so both are roots of
    # y^2 + y + 2; this pins the pair down exactly.
    field = cyclo_field(7)
    e0 = gaussian_period(field, 2, 1)
    e1 = gaussian_period(field, 2, 3)
    assert (e0 + e1).rational_value() == -1
    assert (e0 * e1).rational_value() == 2
    assert galois_apply(e0, 2) == e0
    assert galois_apply(e0, 3) == e1


def test_gaussian_periods_are_galois_orbit_sums():
    field = cyclo_field(15)
    w = field.omega()
    e = gaussian_period(field, 2, 1)
    s0 = multiplicative_order(2, 15)
    acc = field.zero()
    p = Fraction(1)
    exp = 1
    for _ in range(s0):
        acc = acc + field.omega_power(exp)
        exp = exp * 2 % 15
    assert e == acc


def test_element_pretty_round_trip_examples():
    field = cyclo_field(3)
    w = field.omega()
    assert (w * w).pretty() == "-1 - w"
    assert field.from_rational(Fraction(-3, 2)).pretty() == "-3/2"
    assert field.zero().pretty() == "0"


def test_conductor_one_is_plain_rationals():
    field = cyclo_field(1)
    a = field.from_rational(Fraction(3, 4))
    assert a.rational_value() == Fraction(3, 4)
    assert (a * field.from_rational(2)).rational_value() == Fraction(3, 2)
    assert abs(complex_embed(a) - mpmath.mpf(3) / 4) < EMBED_TOL


# ----------------------------------------------------------------------
# exact linear algebra


def test_solve_exact_small_system():
    field = cyclo_field(1)
    rows = [
        [field.from_rational(2), field.from_rational(1)],
        [field.from_rational(1), field.from_rational(3)],
    ]
    rhs = [field.from_rational(5), field.from_rational(10)]
    sol = solve_exact(rows, rhs)
    assert [c.rational_value() for c in sol] == [1, 3]


def test_solve_exact_over_extension():
    field = cyclo_field(5)
    w = field.omega()
    rows = [[w, field.one()], [field.one(), w]]
    rhs = [w * w + field.one(), w + w]
    sol = solve_exact(rows, rhs)
    assert sol is not None
    for row, b in zip(rows, rhs):
        acc = field.zero()
        for c, x in zip(row, sol):
            acc = acc + c * x
        assert acc == b


def test_solve_exact_reports_unsolvable():
    field = cyclo_field(1)
    one = field.one()
    rows = [[one, one], [one, one]]
    rhs = [field.from_rational(1), field.from_rational(2)]
    assert solve_exact(rows, rhs) is None


def test_nullspace_matches_rank():
    field = cyclo_field(3)
    w = field.omega()
    rows = [[field.one(), w], [w, w * w]]
    # second row is w times the first, so rank 1, nullity 1
    basis = nullspace(rows)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        acc = field.zero()
        for c, x in zip(row, v):
            acc = acc + c * x
        assert acc.is_zero()


# ----------------------------------------------------------------------
# RatPoly basics used throughout


def test_rat_poly_arithmetic_and_canonical_form():
    p = RatPoly([1, 2, 1])
    q = RatPoly([-1, 1])
    assert (p * q).coeffs == (-1, -1, 1, 1)
    assert (p - p).is_zero()
    assert RatPoly([0, 0]).degree == -1
    assert p(Fraction(1, 2)) == Fraction(9, 4)
    assert p.substitute_power(2) == RatPoly([1, 0, 2, 0, 1])
    assert p.truncate(2) == RatPoly([1, 2])


def test_rat_poly_pretty():
    assert RatPoly([1, -1, 0, 2]).pretty() == "1 - x + 2*x^3"
    assert RatPoly([]).pretty() == "0"
