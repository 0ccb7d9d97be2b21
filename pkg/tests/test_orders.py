import random
from itertools import product

import pytest

from vfan import (
    RingSignature,
    ZeroOperandError,
    compare_L,
    compare_Lh,
    compare_tri,
    exponent,
    gen_dt,
    gen_t,
    gen_z,
    lh_order,
    monomial,
    multiply,
    privileged_exponent,
    tri_order,
    v_form,
    v_j,
)
from vfan.orders import LT, EQ, GT, cmp_base0
from conftest import random_dop, random_exponent, random_v_form

SIG12 = RingSignature(1, 2)
SIG12Z = RingSignature(1, 2, homogenized=True)
SIG22 = RingSignature(2, 2)


def exp12(**kw):
    return exponent(SIG12, **kw)


def test_compare_L_examples():
    V1 = v_j(1, 2, 0)
    t1 = exp12(mu=(1, 0))
    dt1 = exp12(nu=(1, 0))
    assert compare_L(V1, t1, dt1) == LT  # values -1 < 1
    assert compare_L(V1, t1, t1) == EQ

    # equal L-values and derivative degrees: decided by the reversed base order
    sig = SIG22
    x1 = exponent(sig, alpha=(1, 0))
    x2 = exponent(sig, alpha=(0, 1))
    V1_22 = v_j(2, 2, 0)
    assert cmp_base0(x1, x2) == LT  # x1 precedes x2
    assert compare_L(V1_22, x1, x2) == GT  # reversed


def test_compare_Lh_examples():
    sigz = SIG12Z
    V1 = v_j(1, 2, 0)
    z = exponent(sigz, k=1)
    sig22z = RingSignature(2, 2, homogenized=True)
    dx1dx2 = exponent(sig22z, beta=(1, 1))
    z22 = exponent(sig22z, k=1)
    assert compare_Lh(v_j(2, 2, 0), z22, dx1dx2) == LT  # degrees 1 < 2
    dt1 = exponent(sigz, nu=(1, 0))
    assert compare_Lh(V1, z, dt1) == LT  # degree tie, values 0 < 1


def test_Lh_refines_L_on_equal_degree():
    rng = random.Random(3)
    V = v_form(1, 2, (2, 1))
    for _ in range(100):
        u = random_exponent(rng, SIG12)
        v = random_exponent(rng, SIG12)
        if u.hdeg == v.hdeg:
            assert compare_Lh(V, u, v) == compare_L(V, u, v)


def test_compare_tri_example():
    L = v_form(1, 2, (1, 1))
    Ls = v_form(1, 2, (1, 2))
    dt1 = exp12(nu=(1, 0))
    dt2 = exp12(nu=(0, 1))
    # degree tie, L-values tie (1 = 1), L_sigma values 1 < 2
    assert compare_tri(L, Ls, dt1, dt2) == LT


def test_tri_collapses_to_Lh():
    rng = random.Random(5)
    L = v_form(1, 2, (1, 1))
    for _ in range(100):
        u = random_exponent(rng, SIG12)
        v = random_exponent(rng, SIG12)
        assert compare_tri(L, L, u, v) == compare_Lh(L, u, v)


def _comparators():
    L = v_form(1, 2, (2, 1))
    Ls = v_form(1, 2, (1, 1))
    return [
        lambda u, v: cmp_base0(u, v),
        lambda u, v: compare_L(L, u, v),
        lambda u, v: compare_Lh(L, u, v),
        lambda u, v: compare_tri(L, Ls, u, v),
    ]


def test_strict_total_orders():
    rng = random.Random(7)
    sigz = SIG12Z
    for cmp in _comparators():
        for _ in range(60):
            u = random_exponent(rng, sigz, max_z=1)
            v = random_exponent(rng, sigz, max_z=1)
            w = random_exponent(rng, sigz, max_z=1)
            # antisymmetry (comparing z-free projections may tie distinct exponents
            # only when they are equal), totality
            assert cmp(u, v) == -cmp(v, u)
            if u == v:
                assert cmp(u, v) == EQ
            # transitivity
            if cmp(u, v) <= 0 and cmp(v, w) <= 0:
                assert cmp(u, w) <= 0


def test_compatibility_with_addition():
    rng = random.Random(9)
    L = v_form(1, 2, (1, 2))
    for _ in range(100):
        u = random_exponent(rng, SIG12)
        v = random_exponent(rng, SIG12)
        w = random_exponent(rng, SIG12)
        for cmp in (lambda a, b: compare_L(L, a, b), lambda a, b: compare_Lh(L, a, b)):
            if cmp(u, v) == LT:
                assert cmp(u + w, v + w) == LT


def test_base0_is_well_founded_within_degree_bound():
    # any strictly decreasing chain below a fixed total degree stays within
    # the (finite) number of exponents of that degree bound
    rng = random.Random(11)
    bound = 3
    pool = [
        exponent(SIG12, alpha=(a,), mu=(m1, m2), beta=(b,), nu=(n1, n2))
        for a, m1, m2, b, n1, n2 in product(range(bound), repeat=6)
        if a + m1 + m2 + b + n1 + n2 <= bound
    ]
    limit = len(pool)
    for _ in range(20):
        current = rng.choice(pool)
        chain = 1
        while True:
            smaller = [e for e in pool if cmp_base0(e, current) == LT]
            if not smaller:
                break
            current = rng.choice(smaller)
            chain += 1
            assert chain <= limit


def test_privileged_exponent_degree_dominates():
    # t1 dt1 + z^2: graded degrees 1 < 2, so the z^2 term is privileged
    sigz = SIG12Z
    p = multiply(gen_t(sigz, 0), gen_dt(sigz, 0)) + multiply(gen_z(sigz), gen_z(sigz))
    e = privileged_exponent(p, lh_order(v_j(1, 2, 0)))
    assert e == exponent(sigz, k=2)


def test_privileged_exponent_monomial_and_zero():
    sigz = SIG12Z
    e = exponent(sigz, mu=(1, 0), nu=(2, 0), k=1)
    assert privileged_exponent(monomial(sigz, e, 5), lh_order(v_j(1, 2, 0))) == e
    with pytest.raises(ZeroOperandError):
        privileged_exponent(monomial(sigz, e, 0), lh_order(v_j(1, 2, 0)))


def test_privileged_exponent_multiplicative():
    rng = random.Random(13)
    for _ in range(100):
        L = random_v_form(rng, 1, 2)
        order = lh_order(L)
        a = random_dop(rng, SIG12Z, max_terms=3, max_z=1)
        b = random_dop(rng, SIG12Z, max_terms=3, max_z=1)
        ab = multiply(a, b)
        assert privileged_exponent(ab, order) == privileged_exponent(a, order) + privileged_exponent(b, order)


def test_privileged_exponent_stable_under_interior_perturbation():
    # inside a 2-dimensional cone a small change of the form keeps the apex
    rng = random.Random(15)
    for _ in range(30):
        p = random_dop(rng, SIG12Z, max_terms=4, max_z=1)
        L = v_form(1, 2, (3, 2))
        Leps = v_form(1, 2, (31, 20))  # nearby slope
        e1 = privileged_exponent(p, lh_order(L))
        vals = {e.vweights() for e in p.terms}
        # only assert when no tie is being crossed between the two forms
        crossing = any(
            (3 * g1 + 2 * g2 - 3 * h1 - 2 * h2 == 0) != (31 * g1 + 20 * g2 - 31 * h1 - 20 * h2 == 0)
            for (g1, g2) in vals
            for (h1, h2) in vals
        )
        if not crossing:
            assert privileged_exponent(p, lh_order(Leps)) == e1


def test_tri_needs_interior_form():
    with pytest.raises(ValueError):
        tri_order(v_form(1, 2, (1, 0)), None)
