"""Exact arithmetic in rings of differential operators.

Two rings are supported over the rationals, both with polynomial
coefficients in the variables x1..xn, t1..tp:

* ``D`` -- the ring generated by x, t, dx, dt with ``[dxi, c] = dc/dxi``;
* ``D<z>`` -- its homogenization, with an extra central variable z and
  the commutation rule ``[dxi, c] = (dc/dxi) * z``; it is graded by the
  total degree in (dx, dt, z).

Operators are stored in normal order ``x^alpha t^mu dx^beta dt^nu z^k``
as a finite map from exponents to nonzero rationals, so equality of the
term maps is equality of operators.  All values here are immutable and
every function is pure; nothing needs synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, NamedTuple

from .errors import SignatureMismatchError, ZeroOperandError

NEG_INF = float("-inf")


@dataclass(frozen=True)
class RingSignature:
    """Number of x-variables, number of t-variables, and which ring.

    ``homogenized`` selects D<z>; commutators then produce z instead of 1.
    """

    n: int
    p: int
    homogenized: bool = False

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise ValueError(f"signature needs n >= 1 and p >= 1, got ({self.n}, {self.p})")

    def homogeneous(self) -> "RingSignature":
        return RingSignature(self.n, self.p, True)

    def plain(self) -> "RingSignature":
        return RingSignature(self.n, self.p, False)


class Exponent(NamedTuple):
    """Multi-index (alpha, mu, beta, nu, k) of a normal-ordered monomial."""

    alpha: tuple[int, ...]
    mu: tuple[int, ...]
    beta: tuple[int, ...]
    nu: tuple[int, ...]
    k: int = 0

    def __add__(self, other):  # type: ignore[override]
        return Exponent(
            _vadd(self.alpha, other.alpha),
            _vadd(self.mu, other.mu),
            _vadd(self.beta, other.beta),
            _vadd(self.nu, other.nu),
            self.k + other.k,
        )

    def minus(self, other: "Exponent") -> "Exponent":
        """Componentwise difference; requires ``other`` to divide ``self``."""
        if not self.dominates(other):
            raise ValueError(f"{other} does not divide {self}")
        return Exponent(
            _vsub(self.alpha, other.alpha),
            _vsub(self.mu, other.mu),
            _vsub(self.beta, other.beta),
            _vsub(self.nu, other.nu),
            self.k - other.k,
        )

    def dominates(self, other: "Exponent") -> bool:
        """True iff self - other is componentwise nonnegative."""
        return (
            all(a >= b for a, b in zip(self.alpha, other.alpha))
            and all(a >= b for a, b in zip(self.mu, other.mu))
            and all(a >= b for a, b in zip(self.beta, other.beta))
            and all(a >= b for a, b in zip(self.nu, other.nu))
            and self.k >= other.k
        )

    def join(self, other: "Exponent") -> "Exponent":
        """Componentwise max (the lcm of the two monomials)."""
        return Exponent(
            tuple(map(max, self.alpha, other.alpha)),
            tuple(map(max, self.mu, other.mu)),
            tuple(map(max, self.beta, other.beta)),
            tuple(map(max, self.nu, other.nu)),
            max(self.k, other.k),
        )

    @property
    def ddeg(self) -> int:
        """Total derivative degree |beta| + |nu|."""
        return sum(self.beta) + sum(self.nu)

    @property
    def hdeg(self) -> int:
        """Graded degree k + |beta| + |nu| of the homogenized ring."""
        return self.k + self.ddeg

    @property
    def total_degree(self) -> int:
        return sum(self.alpha) + sum(self.mu) + self.ddeg + self.k

    def vweight(self, j: int) -> int:
        """nu_j - mu_j, the V-weight for the j-th t variable (0-based)."""
        return self.nu[j] - self.mu[j]

    def vweights(self) -> tuple[int, ...]:
        return tuple(n - m for n, m in zip(self.nu, self.mu))

    def is_unit(self) -> bool:
        return self.total_degree == 0


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exponent(sig: RingSignature, alpha=None, mu=None, beta=None, nu=None, k=0) -> Exponent:
    """Build an Exponent for ``sig``, zero-filling omitted blocks."""
    zn, zp = (0,) * sig.n, (0,) * sig.p
    e = Exponent(
        tuple(alpha) if alpha is not None else zn,
        tuple(mu) if mu is not None else zp,
        tuple(beta) if beta is not None else zn,
        tuple(nu) if nu is not None else zp,
        k,
    )
    _check_exponent(sig, e)
    return e


def _check_exponent(sig: RingSignature, e: Exponent):
    if len(e.alpha) != sig.n or len(e.beta) != sig.n or len(e.mu) != sig.p or len(e.nu) != sig.p:
        raise ValueError(f"exponent {e} does not fit signature (n={sig.n}, p={sig.p})")
    if min(e.alpha + e.mu + e.beta + e.nu + (e.k,)) < 0:
        raise ValueError(f"negative entry in exponent {e}")
    if e.k and not sig.homogenized:
        raise ValueError("z-exponent must be 0 outside the homogenized ring")


@dataclass(frozen=True, eq=True)
class DOp:
    """A differential operator: finite map Exponent -> nonzero Fraction.

    The map is canonical (no zero coefficients), so ``==`` on DOps is
    equality in the ring.  Treat instances as immutable.
    """

    signature: RingSignature
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for e in self.terms:
            _check_exponent(self.signature, e)

    def is_zero(self) -> bool:
        return not self.terms

    def newton_diagram(self) -> frozenset:
        return frozenset(self.terms)

    def degree(self):
        """Total derivative degree (and z, if present); -inf for 0."""
        if not self.terms:
            return NEG_INF
        return max(e.hdeg for e in self.terms)

    def is_homogeneous(self) -> bool:
        """Every term has the same graded degree k + |beta| + |nu|."""
        degs = {e.hdeg for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, e: Exponent) -> Fraction:
        return self.terms.get(e, Fraction(0))

    def __add__(self, other: "DOp") -> "DOp":
        _same_signature(self, other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return DOp(self.signature, acc)

    def __sub__(self, other: "DOp") -> "DOp":
        return self + (-other)

    def __neg__(self) -> "DOp":
        return DOp(self.signature, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DOp):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, DOp):  # pragma: no cover - DOp * DOp goes through __mul__
            return multiply(other, self)
        return self.scale(other)

    def scale(self, c) -> "DOp":
        c = Fraction(c)
        if not c:
            return DOp(self.signature, {})
        return DOp(self.signature, {e: c * v for e, v in self.terms.items()})

    def map_signature(self, sig: RingSignature) -> "DOp":
        return DOp(sig, dict(self.terms))

    def __repr__(self):  # pragma: no cover - debugging aid
        from .printer import operator_to_str

        return f"DOp({operator_to_str(self)!r})"


def _same_signature(a: DOp, b: DOp):
    if a.signature != b.signature:
        raise SignatureMismatchError(f"{a.signature} != {b.signature}")


def dop(sig: RingSignature, items: Iterable[tuple[Exponent, object]]) -> DOp:
    """Assemble an operator, merging duplicate exponents and dropping zeros."""
    acc: dict[Exponent, Fraction] = {}
    for e, c in items:
        c = Fraction(c)
        v = acc.get(e, 0) + c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return DOp(sig, acc)


def zero(sig: RingSignature) -> DOp:
    return DOp(sig, {})


def one(sig: RingSignature) -> DOp:
    return monomial(sig, exponent(sig))


def monomial(sig: RingSignature, e: Exponent, c=1) -> DOp:
    c = Fraction(c)
    return DOp(sig, {e: c} if c else {})


def gen_x(sig: RingSignature, i: int) -> DOp:
    return monomial(sig, exponent(sig, alpha=_unit(sig.n, i)))


def gen_t(sig: RingSignature, j: int) -> DOp:
    return monomial(sig, exponent(sig, mu=_unit(sig.p, j)))


def gen_dx(sig: RingSignature, i: int) -> DOp:
    return monomial(sig, exponent(sig, beta=_unit(sig.n, i)))


def gen_dt(sig: RingSignature, j: int) -> DOp:
    return monomial(sig, exponent(sig, nu=_unit(sig.p, j)))


def gen_z(sig: RingSignature) -> DOp:
    return monomial(sig, exponent(sig, k=1))


def _unit(length: int, i: int) -> tuple[int, ...]:
    if not 0 <= i < length:
        raise ValueError(f"variable index {i} out of range 0..{length - 1}")
    return tuple(1 if j == i else 0 for j in range(length))


def _falling(a: int, c: int) -> int:
    """a (a-1) ... (a-c+1)."""
    out = 1
    for i in range(c):
        out *= a - i
    return out


def _commutes(db: tuple[int, ...], xa: tuple[int, ...]) -> Iterator[tuple[tuple, tuple, int, int]]:
    """Normal-order d^db * x^xa inside one block of like-named variables.

    Yields (x-part, d-part, z-shift, integer coefficient) over all choices
    c <= min(db, xa):  the closed Leibniz expansion

        d^b x^a = sum_c  prod_i  C(b_i, c_i) a_i!/(a_i-c_i)!
                   x^(a-c) d^(b-c) z^{|c|}.
    """
    ranges = [range(min(b, a) + 1) for b, a in zip(db, xa)]
    for c in product(*ranges):
        coeff = 1
        for bi, ai, ci in zip(db, xa, c):
            coeff *= math.comb(bi, ci) * _falling(ai, ci)
        yield (_vsub(xa, c), _vsub(db, c), sum(c), coeff)


def multiply(a: DOp, b: DOp) -> DOp:
    """Normal-ordered product in D or D<z> depending on the signature.

    Bilinear, associative; the product of homogeneous operators of graded
    degrees d1, d2 is homogeneous of degree d1 + d2.
    """
    _same_signature(a, b)
    sig = a.signature
    acc: dict[Exponent, Fraction] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            base = c1 * c2
            for xa, xb, zx, fx in _commutes(e1.beta, e2.alpha):
                cx = base * fx
                if not cx:
                    continue
                for ta, tb, zt, ft in _commutes(e1.nu, e2.mu):
                    coeff = cx * ft
                    if not coeff:
                        continue
                    kk = e1.k + e2.k + (zx + zt if sig.homogenized else 0)
                    e = Exponent(
                        _vadd(e1.alpha, xa),
                        _vadd(e1.mu, ta),
                        _vadd(xb, e2.beta),
                        _vadd(tb, e2.nu),
                        kk,
                    )
                    v = acc.get(e, 0) + coeff
                    if v:
                        acc[e] = v
                    else:
                        del acc[e]
    return DOp(sig, acc)


def homogenize(p: DOp) -> DOp:
    """Pad each term with z up to the top derivative degree of ``p``.

    The result is homogeneous of graded degree deg(p) in D<z> and
    specializes back to ``p`` at z = 1.
    """
    if p.is_zero():
        raise ZeroOperandError("cannot homogenize the zero operator")
    if p.signature.homogenized or any(e.k for e in p.terms):
        raise ValueError("homogenize expects an operator of D (all z-exponents 0)")
    d = max(e.ddeg for e in p.terms)
    sig = p.signature.homogeneous()
    return DOp(sig, {Exponent(e.alpha, e.mu, e.beta, e.nu, d - e.ddeg): c for e, c in p.terms.items()})


def specialize_z1(h: DOp) -> DOp:
    """The algebra morphism D<z> -> D sending z to 1."""
    sig = h.signature.plain()
    acc: dict[Exponent, Fraction] = {}
    for e, c in h.terms.items():
        e0 = Exponent(e.alpha, e.mu, e.beta, e.nu, 0)
        v = acc.get(e0, 0) + c
        if v:
            acc[e0] = v
        else:
            acc.pop(e0, None)
    return DOp(sig, acc)


def h_lift(p: DOp, pad: int = 0) -> DOp:
    """z^pad * homogenize(p); homogeneous of degree deg(p) + pad."""
    h = homogenize(p)
    if pad:
        h = multiply(monomial(h.signature, exponent(h.signature, k=pad)), h)
    return h


def common_lift(a: DOp, b: DOp) -> tuple[DOp, DOp, int]:
    """Homogeneous lifts of a and b padded with z to a shared degree.

    The shared degree also covers deg(a - b), so the difference of the two
    lifts is the corresponding lift of a - b.
    """
    if a.is_zero() or b.is_zero():
        raise ZeroOperandError("common_lift needs nonzero operators")
    da = max(e.ddeg for e in a.terms)
    db = max(e.ddeg for e in b.terms)
    d = max(da, db)
    return h_lift(a, d - da), h_lift(b, d - db), d


def ord_L(p: DOp, form) -> object:
    """max of the linear form over the Newton diagram; -inf iff p = 0."""
    if p.is_zero():
        return NEG_INF
    return max(form.value(e) for e in p.terms)


def symbol_L(p: DOp, form) -> DOp:
    """Sum of the terms attaining ord_L; the principal symbol for the form."""
    if p.is_zero():
        return p
    top = ord_L(p, form)
    return DOp(p.signature, {e: c for e, c in p.terms.items() if form.value(e) == top})
