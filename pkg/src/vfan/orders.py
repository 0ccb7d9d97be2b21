"""Linear forms on exponents and the term orders they induce.

The admissible forms assign weight e_i to a variable and f_i to its
derivative with e_i <= 0 and e_i + f_i >= 0; z is ignored.  The V-forms
are the nonnegative combinations of V_j = (weight -1 on t_j, +1 on dt_j).

Three comparator families are provided, each a strict total order on
exponents:

* ``L``   : L-value, then derivative degree, then *reversed* base order;
* ``Lh``  : graded degree k + |beta| + |nu| first, then the L chain;
* ``tri`` : graded degree, then L-value, then the full L_sigma chain
            (the order attached to a boundary form of a cone, with
            L_sigma an interior form).

The base order is fixed once and for all as graded lex with variable
precedence x1 < .. < xn < t1 < .. < tp < dx1 < .. < dxn < dt1 < .. < dtp,
which makes every output reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import NamedTuple, Optional

from .errors import ZeroOperandError
from .ring import DOp, Exponent

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class LinearForm:
    """A form e.(alpha,mu) + f.(beta,nu) with e_i <= 0 and e_i + f_i >= 0."""

    n: int
    p: int
    e: tuple  # length n + p, weights of x then t
    f: tuple  # length n + p, weights of dx then dt

    def __post_init__(self):
        m = self.n + self.p
        if len(self.e) != m or len(self.f) != m:
            raise ValueError("weight vectors must have length n + p")
        for ei, fi in zip(self.e, self.f):
            if ei > 0 or ei + fi < 0:
                raise ValueError(f"weights (e={ei}, f={fi}) are not admissible")

    def value(self, exp: Exponent) -> Fraction:
        n = self.n
        v = Fraction(0)
        for w, a in zip(self.e[:n], exp.alpha):
            v += w * a
        for w, a in zip(self.e[n:], exp.mu):
            v += w * a
        for w, a in zip(self.f[:n], exp.beta):
            v += w * a
        for w, a in zip(self.f[n:], exp.nu):
            v += w * a
        return v

    def v_coefficients(self) -> Optional[tuple]:
        """(l_1..l_p) if the form is sum l_j V_j, else None."""
        n = self.n
        if any(self.e[:n]) or any(self.f[:n]):
            return None
        ls = tuple(self.f[n:])
        if any(l < 0 for l in ls):
            return None
        if tuple(-l for l in ls) != tuple(self.e[n:]):
            return None
        return ls

    def is_v_form(self) -> bool:
        return self.v_coefficients() is not None

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError("forms over different signatures")
        return LinearForm(
            self.n,
            self.p,
            tuple(a + b for a, b in zip(self.e, other.e)),
            tuple(a + b for a, b in zip(self.f, other.f)),
        )


def v_form(n: int, p: int, ls) -> LinearForm:
    """The form sum l_j V_j for nonnegative l."""
    ls = tuple(Fraction(l) for l in ls)
    if len(ls) != p:
        raise ValueError(f"expected {p} coefficients")
    zeros = (Fraction(0),) * n
    return LinearForm(n, p, zeros + tuple(-l for l in ls), zeros + ls)


def v_j(n: int, p: int, j: int) -> LinearForm:
    """The Kashiwara-Malgrange weight form for t_j (0-based)."""
    return v_form(n, p, tuple(1 if i == j else 0 for i in range(p)))


def degree_form(n: int, p: int) -> LinearForm:
    """Total derivative degree as a form (e = 0, f = 1); admissible, not a V-form."""
    m = n + p
    return LinearForm(n, p, (Fraction(0),) * m, (Fraction(1),) * m)


class SlopeDirection(NamedTuple):
    """Primitive (a, b) with gcd 1, representing the form a V1 + b V2.

    Ordered by slope b/a with b/0 = +infinity (so (0,1) = V2 is largest).
    Only meaningful for p = 2.
    """

    a: int
    b: int

    @staticmethod
    def make(a: int, b: int) -> "SlopeDirection":
        if a < 0 or b < 0 or (a == 0 and b == 0):
            raise ValueError(f"({a}, {b}) is not a direction of the nonnegative quadrant")
        g = math.gcd(a, b)
        return SlopeDirection(a // g, b // g)

    def slope_cmp(self, other: "SlopeDirection") -> int:
        lhs, rhs = self.b * other.a, other.b * self.a
        return (lhs > rhs) - (lhs < rhs)

    def form(self, n: int) -> LinearForm:
        return v_form(n, 2, (self.a, self.b))

    @staticmethod
    def mediant(u: "SlopeDirection", v: "SlopeDirection") -> "SlopeDirection":
        return SlopeDirection.make(u.a + v.a, u.b + v.b)


V1_DIR = SlopeDirection(1, 0)
V2_DIR = SlopeDirection(0, 1)


def cmp_base0(u: Exponent, v: Exponent) -> int:
    """Graded lex on (alpha, mu, beta, nu); z is ignored."""
    du = sum(u.alpha) + sum(u.mu) + u.ddeg
    dv = sum(v.alpha) + sum(v.mu) + v.ddeg
    if du != dv:
        return LT if du < dv else GT
    # scan from the highest-precedence variable (dtp) downwards
    for ue, ve in (
        (u.nu[::-1], v.nu[::-1]),
        (u.beta[::-1], v.beta[::-1]),
        (u.mu[::-1], v.mu[::-1]),
        (u.alpha[::-1], v.alpha[::-1]),
    ):
        if ue != ve:
            return LT if ue < ve else GT
    return EQ


def cmp_L(form: LinearForm, u: Exponent, v: Exponent) -> int:
    """L-value, then derivative degree, then reversed base order; z ignored."""
    lu, lv = form.value(u), form.value(v)
    if lu != lv:
        return LT if lu < lv else GT
    if u.ddeg != v.ddeg:
        return LT if u.ddeg < v.ddeg else GT
    return -cmp_base0(u, v)


def cmp_Lh(form: LinearForm, u: Exponent, v: Exponent) -> int:
    """Graded degree k + |beta| + |nu| first, then the L chain, then z."""
    if u.hdeg != v.hdeg:
        return LT if u.hdeg < v.hdeg else GT
    c = cmp_L(form, u, v)
    if c:
        return c
    # same projection to D; the z-exponent separates them (hdeg ties force
    # equal k once beta, nu agree, but beta+nu may differ within the chain)
    return (u.k > v.k) - (u.k < v.k)


def cmp_tri(form: LinearForm, form_sigma: LinearForm, u: Exponent, v: Exponent) -> int:
    """Graded degree, then the boundary form L, then the full L_sigma chain."""
    if u.hdeg != v.hdeg:
        return LT if u.hdeg < v.hdeg else GT
    lu, lv = form.value(u), form.value(v)
    if lu != lv:
        return LT if lu < lv else GT
    c = cmp_L(form_sigma, u, v)
    if c:
        return c
    return (u.k > v.k) - (u.k < v.k)


@dataclass(frozen=True)
class OrderDescriptor:
    """A named comparator: one of base0, L, Lh, tri(L, L_sigma)."""

    kind: str
    form: Optional[LinearForm] = None
    form_sigma: Optional[LinearForm] = None

    def __post_init__(self):
        if self.kind not in ("base0", "L", "Lh", "tri"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind != "base0" and self.form is None:
            raise ValueError(f"order kind {self.kind!r} needs a form")
        if self.kind == "tri" and self.form_sigma is None:
            raise ValueError("tri order needs an interior form")

    def compare(self, u: Exponent, v: Exponent) -> int:
        if self.kind == "base0":
            c = cmp_base0(u, v)
            return c if c else (u.k > v.k) - (u.k < v.k)
        if self.kind == "L":
            c = cmp_L(self.form, u, v)
            return c if c else (u.k > v.k) - (u.k < v.k)
        if self.kind == "Lh":
            return cmp_Lh(self.form, u, v)
        return cmp_tri(self.form, self.form_sigma, u, v)

    def key(self):
        """Sort key for exponents (ascending in this order)."""
        return cmp_to_key(self.compare)

    def max_exponent(self, diagram) -> Exponent:
        return max(diagram, key=self.key())


def base0_order() -> OrderDescriptor:
    return OrderDescriptor("base0")


def l_order(form: LinearForm) -> OrderDescriptor:
    return OrderDescriptor("L", form)


def lh_order(form: LinearForm) -> OrderDescriptor:
    return OrderDescriptor("Lh", form)


def tri_order(form: LinearForm, form_sigma: LinearForm) -> OrderDescriptor:
    return OrderDescriptor("tri", form, form_sigma)


def compare_L(form: LinearForm, u: Exponent, v: Exponent) -> int:
    return cmp_L(form, u, v)


def compare_Lh(form: LinearForm, u: Exponent, v: Exponent) -> int:
    return cmp_Lh(form, u, v)


def compare_tri(form: LinearForm, form_sigma: LinearForm, u: Exponent, v: Exponent) -> int:
    return cmp_tri(form, form_sigma, u, v)


def privileged_exponent(p: DOp, order: OrderDescriptor) -> Exponent:
    """The maximum of the Newton diagram under the order.

    Multiplicative: the privileged exponent of a product is the sum of the
    privileged exponents of the factors.
    """
    if p.is_zero():
        raise ZeroOperandError("the zero operator has no privileged exponent")
    return order.max_exponent(p.terms)


def leading_coefficient(p: DOp, order: OrderDescriptor) -> Fraction:
    return p.terms[privileged_exponent(p, order)]
