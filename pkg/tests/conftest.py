import random
from fractions import Fraction

import pytest

from vfan import (
    IdealPresentation,
    MalgrangeInput,
    RingSignature,
    annihilator_ideal,
    compute_fan,
    dop,
    exponent,
    gen_dt,
    gen_x,
    homogenize,
    homogenize_ideal,
    monomial,
    multiply,
    v_form,
)
from vfan.ring import Exponent


def random_exponent(rng, sig, max_exp=2, max_z=0):
    def block(length):
        return tuple(rng.randint(0, max_exp) for _ in range(length))

    return exponent(
        sig,
        alpha=block(sig.n),
        mu=block(sig.p),
        beta=block(sig.n),
        nu=block(sig.p),
        k=rng.randint(0, max_z) if sig.homogenized else 0,
    )


def random_coeff(rng):
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(num, den)


def random_dop(rng, sig, max_terms=3, max_exp=2, max_z=0, nonzero=True):
    n_terms = rng.randint(1 if nonzero else 0, max_terms)
    items = [(random_exponent(rng, sig, max_exp, max_z), random_coeff(rng)) for _ in range(n_terms)]
    p = dop(sig, items)
    if nonzero and p.is_zero():
        return monomial(sig, random_exponent(rng, sig, max_exp, max_z), 1)
    return p


def random_homogeneous_dop(rng, sig_plain, max_terms=3, max_exp=2, pad=0):
    """Random homogeneous element of D<z>: homogenize a plain operator, pad with z."""
    p = random_dop(rng, sig_plain, max_terms, max_exp, nonzero=True)
    h = homogenize(p)
    if pad:
        sigz = h.signature
        h = multiply(monomial(sigz, exponent(sigz, k=pad)), h)
    return h


def random_v_form(rng, n, p):
    while True:
        ls = tuple(rng.randint(0, 3) for _ in range(p))
        if any(ls):
            return v_form(n, p, ls)


@pytest.fixture(scope="session")
def nc():
    """Normal crossings f = (x1, x2) in n = p = 2, with its fan."""
    sig = RingSignature(2, 2)
    inp = MalgrangeInput((gen_x(sig, 0), gen_x(sig, 1)), (1, 1))
    ideal = annihilator_ideal(inp)
    h_ideal = homogenize_ideal(ideal)
    fan = compute_fan(h_ideal)
    return {"sig": sig, "input": inp, "ideal": ideal, "hI": h_ideal, "fan": fan}


@pytest.fixture(scope="session")
def dt_model():
    """The ideal generated by dt1 + dt2 in n = 1, p = 2, with its fan."""
    sig = RingSignature(1, 2)
    gen = gen_dt(sig, 0) + gen_dt(sig, 1)
    ideal = IdealPresentation((gen,))
    h_ideal = homogenize_ideal(ideal)
    fan = compute_fan(h_ideal)
    return {"sig": sig, "gen": gen, "ideal": ideal, "hI": h_ideal, "fan": fan}
