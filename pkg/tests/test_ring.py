import random

import pytest

from vfan import (
    NEG_INF,
    RingSignature,
    SignatureMismatchError,
    ZeroOperandError,
    gen_dt,
    gen_dx,
    gen_t,
    gen_x,
    gen_z,
    homogenize,
    monomial,
    multiply,
    one,
    ord_L,
    exponent,
    specialize_z1,
    symbol_L,
    v_form,
    v_j,
)
from conftest import random_dop, random_v_form

SIG11 = RingSignature(1, 1)
SIG11Z = RingSignature(1, 1, homogenized=True)
SIG12Z = RingSignature(1, 2, homogenized=True)


def test_commutation_relation():
    # dx1 * x1 = x1 dx1 + z in D<z>, and + 1 in D
    x, dx = gen_x(SIG11Z, 0), gen_dx(SIG11Z, 0)
    assert multiply(dx, x) == multiply(x, dx) + gen_z(SIG11Z)
    xd, dxd = gen_x(SIG11, 0), gen_dx(SIG11, 0)
    assert multiply(dxd, xd) == multiply(xd, dxd) + one(SIG11)


def test_leibniz_square():
    x, dx, z = gen_x(SIG11Z, 0), gen_dx(SIG11Z, 0), gen_z(SIG11Z)
    x2 = multiply(x, x)
    expected = multiply(x2, dx) + multiply(x, z).scale(2)
    assert multiply(dx, x2) == expected
    # agrees with expanding (x1 dx1 + z) * x1
    assert multiply(multiply(dx, x), x) == expected


def test_multiply_identity():
    rng = random.Random(101)
    for sig in (SIG11, SIG11Z, RingSignature(2, 2)):
        for _ in range(20):
            a = random_dop(rng, sig, max_terms=4, max_z=2 if sig.homogenized else 0)
            assert multiply(a, one(sig)) == a
            assert multiply(one(sig), a) == a


def test_dt_squared_times_t():
    # two single commutation steps by hand: dt^2 t = t dt^2 + 2 z dt
    t, dt, z = gen_t(SIG11Z, 0), gen_dt(SIG11Z, 0), gen_z(SIG11Z)
    lhs = multiply(multiply(dt, dt), t)
    rhs = multiply(t, multiply(dt, dt)) + multiply(z, dt).scale(2)
    assert lhs == rhs


def test_multiply_signature_mismatch():
    with pytest.raises(SignatureMismatchError):
        multiply(one(SIG11), one(RingSignature(2, 1)))


def test_homogenize_examples():
    x, dx = gen_x(SIG11, 0), gen_dx(SIG11, 0)
    h = homogenize(x + multiply(dx, dx))
    xz, dxz, zz = gen_x(SIG11Z, 0), gen_dx(SIG11Z, 0), gen_z(SIG11Z)
    assert h == multiply(xz, multiply(zz, zz)) + multiply(dxz, dxz)

    sig12 = RingSignature(1, 2)
    d1, d2 = gen_dt(sig12, 0), gen_dt(sig12, 1)
    h2 = homogenize(d1 + d2)
    assert h2 == gen_dt(SIG12Z, 0) + gen_dt(SIG12Z, 1)

    h3 = homogenize(gen_t(SIG11, 0) - gen_x(SIG11, 0))
    assert h3 == gen_t(SIG11Z, 0) - gen_x(SIG11Z, 0)


def test_homogenize_zero_rejected():
    with pytest.raises(ZeroOperandError):
        homogenize(one(SIG11) - one(SIG11))


def test_homogenize_output_homogeneous():
    rng = random.Random(7)
    for _ in range(50):
        p = random_dop(rng, SIG11, max_terms=4)
        assert homogenize(p).is_homogeneous()


def test_specialize_examples():
    xz, dxz = gen_x(SIG11Z, 0), gen_dx(SIG11Z, 0)
    z = gen_z(SIG11Z)
    p = multiply(xz, multiply(z, z)) + multiply(dxz, dxz)
    assert specialize_z1(p) == gen_x(SIG11, 0) + multiply(gen_dx(SIG11, 0), gen_dx(SIG11, 0))
    for m in range(6):
        zm = monomial(SIG11Z, exponent(SIG11Z, k=m))
        assert specialize_z1(zm) == one(SIG11)


def test_specialize_round_trip():
    rng = random.Random(11)
    for sig in (SIG11, RingSignature(2, 2)):
        for _ in range(50):
            p = random_dop(rng, sig, max_terms=4)
            assert specialize_z1(homogenize(p)) == p


def test_specialize_is_morphism():
    rng = random.Random(13)
    for _ in range(40):
        a = random_dop(rng, SIG11Z, max_terms=3, max_z=2)
        b = random_dop(rng, SIG11Z, max_terms=3, max_z=2)
        assert specialize_z1(multiply(a, b)) == multiply(specialize_z1(a), specialize_z1(b))


def test_ord_examples():
    V1 = v_j(1, 2, 0)
    V2 = v_j(1, 2, 1)
    t1, dt1, z = gen_t(SIG12Z, 0), gen_dt(SIG12Z, 0), gen_z(SIG12Z)
    p = multiply(t1, multiply(dt1, dt1)) + multiply(z, dt1)
    assert ord_L(p, V1) == 1  # max(2 - 1, 1 - 0)
    q = multiply(gen_t(SIG12Z, 0), multiply(dt1, dt1))
    assert ord_L(q, V2) == 0
    assert ord_L(p - p, V1) == NEG_INF


def test_symbol_examples():
    sig = SIG12Z
    V1, V2 = v_j(1, 2, 0), v_j(1, 2, 1)
    t1, dt1, dt2, x1 = gen_t(sig, 0), gen_dt(sig, 0), gen_dt(sig, 1), gen_x(sig, 0)
    p = multiply(t1, multiply(dt1, dt1)) + multiply(x1, dt1)
    assert symbol_L(p, V1) == p  # both terms have V1-value 1
    q = dt1 + dt2
    assert symbol_L(q, V2) == dt2
    assert symbol_L(symbol_L(q, V2), V1) == dt2  # nesting
    assert symbol_L(symbol_L(p, V1), V1) == symbol_L(p, V1)  # idempotent
    assert symbol_L(p - p, V1).is_zero()


def test_associativity_random():
    rng = random.Random(17)
    count = 0
    for sig in (SIG11, RingSignature(2, 2), SIG11Z):
        for _ in range(70):
            a = random_dop(rng, sig, max_terms=2, max_exp=2, max_z=1 if sig.homogenized else 0)
            b = random_dop(rng, sig, max_terms=2, max_exp=2, max_z=1 if sig.homogenized else 0)
            c = random_dop(rng, sig, max_terms=2, max_exp=2, max_z=1 if sig.homogenized else 0)
            assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
            count += 1
    assert count >= 200


def test_degree_additivity_homogeneous():
    rng = random.Random(19)
    sig = RingSignature(1, 2)
    for _ in range(50):
        a = homogenize(random_dop(rng, sig, max_terms=3))
        b = homogenize(random_dop(rng, sig, max_terms=3))
        ab = multiply(a, b)
        assert ab.is_homogeneous()
        assert ab.is_zero() or ab.degree() == a.degree() + b.degree()


def test_ord_and_symbol_multiplicative_for_v_forms():
    rng = random.Random(23)
    sig = RingSignature(1, 2, homogenized=True)
    for _ in range(60):
        L = random_v_form(rng, 1, 2)
        a = random_dop(rng, sig, max_terms=3, max_z=1)
        b = random_dop(rng, sig, max_terms=3, max_z=1)
        ab = multiply(a, b)
        assert ord_L(ab, L) == ord_L(a, L) + ord_L(b, L)
        assert symbol_L(ab, L) == multiply(symbol_L(a, L), symbol_L(b, L))
