import random
from itertools import product

import pytest

from vfan import (
    BudgetExceededError,
    RingSignature,
    ZeroOperandError,
    build_partition,
    divide,
    gen_dx,
    gen_t,
    gen_x,
    gen_z,
    l_order,
    lh_order,
    monomial,
    multiply,
    normal_form,
    one,
    ord_L,
    exponent,
    privileged_exponent,
    standard_basis,
    tri_order,
    v_form,
    v_j,
)
from vfan.ring import NEG_INF
from conftest import random_dop, random_homogeneous_dop, random_v_form

SIG11 = RingSignature(1, 1)
SIG11Z = RingSignature(1, 1, homogenized=True)
SIG12 = RingSignature(1, 2)


def test_partition_single_divisor():
    order = lh_order(v_j(1, 1, 0))
    dx = gen_dx(SIG11Z, 0)
    part = build_partition([dx], order)
    e_dx = exponent(SIG11Z, beta=(1,))
    assert part.cell_of(e_dx) == 0
    assert part.cell_of(e_dx + e_dx) == 0
    assert part.cell_of(exponent(SIG11Z, alpha=(2,))) is None


def test_partition_two_divisors_carving():
    order = lh_order(v_j(1, 1, 0))
    x, dx = gen_x(SIG11Z, 0), gen_dx(SIG11Z, 0)
    part = build_partition([x, dx], order)
    # the overlap x*dx belongs to the first cell only
    both = exponent(SIG11Z, alpha=(1,), beta=(1,))
    assert part.cell_of(both) == 0
    assert part.in_cell(both, 0) and not part.in_cell(both, 1)
    assert part.cell_of(exponent(SIG11Z, beta=(2,))) == 1


def test_partition_against_brute_force():
    rng = random.Random(21)
    order = lh_order(v_form(1, 1, (2,)))
    divisors = [random_dop(rng, SIG11Z, max_terms=3, max_z=1) for _ in range(3)]
    part = build_partition(divisors, order)
    apexes = part.apexes

    def brute_cell(e):
        # direct set computation: first orthant containing e, minus earlier cells
        for j, a in enumerate(apexes):
            if all(
                ea >= aa
                for ea, aa in zip(
                    e.alpha + e.mu + e.beta + e.nu + (e.k,),
                    a.alpha + a.mu + a.beta + a.nu + (a.k,),
                )
            ):
                return j
        return None

    checked = 0
    for _ in range(1000):
        e = exponent(
            SIG11Z,
            alpha=(rng.randint(0, 4),),
            mu=(rng.randint(0, 4),),
            beta=(rng.randint(0, 4),),
            nu=(rng.randint(0, 4),),
            k=rng.randint(0, 3),
        )
        assert part.cell_of(e) == brute_cell(e)
        checked += 1
    assert checked == 1000


def test_zero_divisor_rejected():
    order = lh_order(v_j(1, 1, 0))
    with pytest.raises(ZeroOperandError):
        build_partition([one(SIG11Z) - one(SIG11Z)], order)


def test_divide_basic_example():
    order = lh_order(v_j(1, 1, 0))
    x, dx = gen_x(SIG11Z, 0), gen_dx(SIG11Z, 0)
    p = multiply(dx, x)  # x dx + z
    res = divide(p, [dx], order)
    assert not res.truncated
    assert res.quotients[0] == x
    assert res.remainder == gen_z(SIG11Z)
    assert res.reconstruct([dx]) == p


def test_divide_by_one():
    rng = random.Random(23)
    order = lh_order(v_j(1, 1, 0))
    for _ in range(10):
        p = random_dop(rng, SIG11Z, max_terms=4, max_z=1)
        res = divide(p, [one(SIG11Z)], order)
        assert res.quotients[0] == p and res.remainder.is_zero()


def test_remainder_is_irreducible():
    rng = random.Random(25)
    order = lh_order(v_form(1, 1, (1,)))
    for _ in range(20):
        p = random_homogeneous_dop(rng, SIG11, max_terms=3)
        divisors = [random_homogeneous_dop(rng, SIG11, max_terms=2) for _ in range(2)]
        res = divide(p, divisors, order, budget=4000)
        if res.truncated:
            continue
        again = divide(res.remainder, divisors, order, budget=4000)
        assert not again.truncated
        assert all(q.is_zero() for q in again.quotients)
        assert again.remainder == res.remainder


def _division_instances(rng, count):
    """Mixed instance stream where the order corollary applies:
    plain-ring divisions under L-orders, homogeneous divisions under Lh/tri."""
    made = 0
    while made < count:
        homogeneous = rng.random() < 0.5
        if homogeneous:
            sig = SIG11 if rng.random() < 0.5 else SIG12
            pad = rng.randint(0, 1)
            p = random_homogeneous_dop(rng, sig, max_terms=3, pad=pad)
            divisors = [random_homogeneous_dop(rng, sig, max_terms=2) for _ in range(rng.randint(1, 3))]
            L = random_v_form(rng, sig.n, sig.p)
            if rng.random() < 0.3:
                order = tri_order(L, random_v_form(rng, sig.n, sig.p))
            else:
                order = lh_order(L)
        else:
            sig = SIG11 if rng.random() < 0.5 else SIG12
            p = random_dop(rng, sig, max_terms=3)
            divisors = [random_dop(rng, sig, max_terms=2) for _ in range(rng.randint(1, 3))]
            order = l_order(random_v_form(rng, sig.n, sig.p))
        yield p, divisors, order
        made += 1


def test_division_contract_on_random_instances():
    rng = random.Random(27)
    done = 0
    attempts = 0
    for p, divisors, order in _division_instances(rng, 2000):
        attempts += 1
        res = divide(p, divisors, order, budget=300)
        if res.truncated:
            continue
        # (1) exact reconstruction
        assert res.reconstruct(divisors) == p
        # (2)(3) support constraints
        part = build_partition(divisors, order)
        for j, q in enumerate(res.quotients):
            for e in q.terms:
                assert part.cell_of(e + part.apexes[j]) == j
        for e in res.remainder.terms:
            assert part.cell_of(e) is None
        # uniqueness: re-dividing p - R gives the same quotients, zero remainder
        res2 = divide(p - res.remainder, divisors, order, budget=3000)
        assert not res2.truncated
        assert res2.remainder.is_zero()
        assert res2.quotients == res.quotients
        # order corollary
        if order.kind != "tri":
            L = order.form
            vals = [ord_L(multiply(q, d), L) for q, d in zip(res.quotients, divisors)]
            vals.append(ord_L(res.remainder, L))
            expected = max(vals)
            got = ord_L(p, L)
            if p.is_zero():
                assert got == NEG_INF
            else:
                assert got == expected
        # privileged-exponent corollary (any order)
        if not p.is_zero():
            candidates = [
                privileged_exponent(multiply(q, d), order)
                for q, d in zip(res.quotients, divisors)
                if not q.is_zero()
            ]
            if not res.remainder.is_zero():
                candidates.append(privileged_exponent(res.remainder, order))
            top = max(candidates, key=order.key())
            assert privileged_exponent(p, order) == top
        done += 1
        if done >= 200:
            break
    assert done >= 200, f"only {done} non-truncated instances out of {attempts}"


def test_normal_form_of_ideal_member_is_zero():
    sig = SIG11
    gens = [gen_t(sig, 0) - gen_x(sig, 0), gen_dx(sig, 0) + gen_t(sig, 0) * 0 + gen_dx(sig, 0) * 0 + gen_dx(sig, 0)]
    gens = [gen_t(sig, 0) - gen_x(sig, 0), gen_dx(sig, 0)]
    order = l_order(v_form(1, 1, (1,)))
    basis = standard_basis(gens, order)
    rng = random.Random(29)
    for _ in range(20):
        combo = one(sig) - one(sig)
        for g in basis.elements:
            combo = combo + multiply(random_dop(rng, sig, max_terms=2), g)
        assert normal_form(combo, basis).is_zero()


def test_normal_form_fixes_complement_supported_input():
    order = lh_order(v_j(1, 1, 0))
    dx = gen_dx(SIG11Z, 0)
    p = gen_x(SIG11Z, 0) + gen_t(SIG11Z, 0)
    res = divide(p, [dx], order)
    assert res.remainder == p and all(q.is_zero() for q in res.quotients)


def test_normal_form_additivity():
    rng = random.Random(31)
    sig = SIG11
    order = l_order(v_form(1, 1, (1,)))
    basis = standard_basis([gen_t(sig, 0) - gen_x(sig, 0), gen_dx(sig, 0) + gen_t(sig, 0)], order)
    for _ in range(100):
        a = random_dop(rng, sig, max_terms=3)
        b = random_dop(rng, sig, max_terms=3)
        lhs = normal_form(a + b, basis)
        rhs = normal_form(normal_form(a, basis) + normal_form(b, basis), basis)
        assert lhs == rhs


def test_budget_exhaustion_is_flagged_never_silent():
    # t = (t - t^2) * (1 + t + t^2 + ...) has no finite quotient
    sig = SIG11
    t = gen_t(sig, 0)
    divisor = t - multiply(t, t)
    order = l_order(v_form(1, 1, (1,)))
    res = divide(t, [divisor], order, budget=50)
    assert res.truncated and res.step_count == 50
    with pytest.raises(BudgetExceededError):
        normal_form(t, [divisor], order, budget=50)
