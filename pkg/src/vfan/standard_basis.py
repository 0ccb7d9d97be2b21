"""Completion to a standard basis and extraction of the reduced minimal one.

Completion is a Buchberger-style loop: for each pair of basis elements
form the overlap relation at the join of their privileged exponents and
reduce it; a nonzero remainder joins the basis.  Pairs are processed by
increasing join degree.  All divisions draw on one shared step budget;
if it runs out the returned basis is flagged and callers must not use it
as if it were complete.

The reduced minimal basis keeps one element per corner of the staircase,
scales it monic and replaces its tail by the tail's normal form, which
depends only on the ideal and the staircase; it is therefore canonical,
independent of the generators that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .division import DEFAULT_DIVISION_BUDGET, divide
from .errors import BudgetExceededError, PreconditionError, ZeroOperandError
from .orders import OrderDescriptor, l_order, degree_form, privileged_exponent
from .ring import DOp, Exponent, homogenize, monomial, multiply

DEFAULT_COMPLETION_BUDGET = 10**6


@dataclass(frozen=True)
class IdealPresentation:
    """A left ideal given by generators; ``homogenized`` marks h(I) data."""

    generators: tuple[DOp, ...]
    homogenized: bool = False

    def __post_init__(self):
        if not self.generators:
            raise ValueError("empty generator list")
        for g in self.generators:
            if g.is_zero():
                raise ZeroOperandError("zero generator")

    @property
    def signature(self):
        return self.generators[0].signature


@dataclass(frozen=True)
class StandardBasis:
    elements: tuple[DOp, ...]
    order: OrderDescriptor
    apexes: tuple[Exponent, ...]
    reduced_minimal: bool
    truncated: bool = False

    @property
    def signature(self):
        return self.elements[0].signature

    def exp_membership(self, e: Exponent) -> bool:
        return any(e.dominates(a) for a in self.apexes)

    def with_order(self, order: OrderDescriptor) -> "StandardBasis":
        """Re-read the same elements under another order (apexes recomputed)."""
        apexes = tuple(privileged_exponent(q, order) for q in self.elements)
        return replace(self, order=order, apexes=apexes)


def exp_set_membership(e: Exponent, basis: StandardBasis) -> bool:
    """True iff e lies in the staircase generated by the basis apexes."""
    return basis.exp_membership(e)


def _monic(q: DOp, order: OrderDescriptor) -> DOp:
    lead = q.terms[privileged_exponent(q, order)]
    return q if lead == 1 else q.scale(1 / lead)


def spair(a: DOp, b: DOp, order: OrderDescriptor) -> DOp:
    """Overlap relation at the join of the privileged exponents (monic inputs)."""
    sig = a.signature
    ea, eb = privileged_exponent(a, order), privileged_exponent(b, order)
    w = ea.join(eb)
    left = multiply(monomial(sig, w.minus(ea)), _monic(a, order))
    right = multiply(monomial(sig, w.minus(eb)), _monic(b, order))
    s = left - right
    assert w not in s.terms, "join term failed to cancel in the overlap relation"
    return s


def _pair_key(ea: Exponent, eb: Exponent):
    w = ea.join(eb)
    return (w.total_degree, w)


def complete(
    gens: IdealPresentation | Sequence[DOp],
    order: OrderDescriptor,
    budget: int = DEFAULT_COMPLETION_BUDGET,
) -> StandardBasis:
    """Close the generators under overlap reduction for the given order."""
    if isinstance(gens, IdealPresentation):
        gen_list = list(gens.generators)
    else:
        gen_list = list(gens)
        if not gen_list:
            raise ValueError("empty generator list")
    for g in gen_list:
        if g.is_zero():
            raise ZeroOperandError("zero generator")

    elems = []
    for g in gen_list:
        g = _monic(g, order)
        if g not in elems:
            elems.append(g)

    apexes = [privileged_exponent(q, order) for q in elems]
    pairs = sorted(
        ((i, j) for i in range(len(elems)) for j in range(i + 1, len(elems))),
        key=lambda ij: _pair_key(apexes[ij[0]], apexes[ij[1]]),
    )
    remaining = budget
    truncated = False
    while pairs:
        i, j = pairs.pop(0)
        s = spair(elems[i], elems[j], order)
        if s.is_zero():
            continue
        res = divide(s, elems, order, budget=remaining)
        remaining -= res.step_count
        if res.truncated or remaining <= 0:
            truncated = True
            break
        r = res.remainder
        if r.is_zero():
            continue
        r = _monic(r, order)
        elems.append(r)
        apexes.append(privileged_exponent(r, order))
        new = len(elems) - 1
        pairs.extend((i2, new) for i2 in range(new))
        pairs.sort(key=lambda ij: _pair_key(apexes[ij[0]], apexes[ij[1]]))

    return StandardBasis(tuple(elems), order, tuple(apexes), reduced_minimal=False, truncated=truncated)


def _assert_closed(basis: StandardBasis, budget: int):
    elems = basis.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            s = spair(elems[i], elems[j], basis.order)
            if s.is_zero():
                continue
            res = divide(s, elems, basis.order, budget=budget)
            if res.truncated:
                raise BudgetExceededError("closure check did not finish", partial=basis)
            if not res.remainder.is_zero():
                raise PreconditionError("input is not closed under overlap reduction")


def reduce_minimal(
    basis: StandardBasis,
    budget: int = DEFAULT_COMPLETION_BUDGET,
    check: bool = True,
) -> StandardBasis:
    """The unique reduced minimal standard basis of the same ideal.

    Minimal: apexes form the corner antichain of the staircase.  Reduced:
    elements are monic and no tail exponent lies in the staircase.
    Idempotent, and independent of the presentation that produced the
    input (the tail normal form is canonical per coset).
    """
    if basis.truncated:
        raise PreconditionError("refusing to reduce a truncated basis")
    if check:
        _assert_closed(basis, budget)
    order = basis.order
    sig = basis.signature

    # minimal corner set: drop any element whose apex dominates another's
    order_key = sorted(range(len(basis.elements)), key=lambda i: (basis.apexes[i].total_degree, basis.apexes[i]))
    kept: list[int] = []
    kept_apexes: list[Exponent] = []
    for i in order_key:
        a = basis.apexes[i]
        if any(a.dominates(b) for b in kept_apexes):
            continue
        kept.append(i)
        kept_apexes.append(a)

    divisors = [basis.elements[i] for i in kept]
    reduced = []
    remaining = budget
    for i in kept:
        q = _monic(basis.elements[i], order)
        apex = privileged_exponent(q, order)
        tail = q - monomial(sig, apex)
        if tail.is_zero():
            reduced.append(q)
            continue
        res = divide(tail, divisors, order, budget=remaining)
        remaining -= res.step_count
        if res.truncated or remaining <= 0:
            raise BudgetExceededError("tail reduction did not finish", partial=basis)
        reduced.append(monomial(sig, apex) + res.remainder)

    pairs = sorted(zip(reduced, (privileged_exponent(q, order) for q in reduced)), key=lambda t: (t[1].total_degree, t[1]))
    elements = tuple(q for q, _ in pairs)
    apexes = tuple(a for _, a in pairs)
    return StandardBasis(elements, order, apexes, reduced_minimal=True, truncated=False)


def standard_basis(
    gens: IdealPresentation | Sequence[DOp],
    order: OrderDescriptor,
    budget: int = DEFAULT_COMPLETION_BUDGET,
) -> StandardBasis:
    """complete + reduce_minimal in one call."""
    b = complete(gens, order, budget)
    if b.truncated:
        raise BudgetExceededError("completion did not finish", partial=b)
    return reduce_minimal(b, budget=budget, check=False)


def homogenize_ideal(
    gens: IdealPresentation | Sequence[DOp],
    budget: int = DEFAULT_COMPLETION_BUDGET,
) -> IdealPresentation:
    """Generators of h(I) from generators of I.

    Homogenizing the input generators alone can miss elements of h(I), so
    the ideal is first completed for a derivative-degree-first order in D;
    homogenizing that basis presents all of h(I) (the degree-first
    division corollary keeps quotient degrees controlled).
    """
    if isinstance(gens, IdealPresentation):
        if gens.homogenized:
            raise ValueError("input is already a homogenized presentation")
        gen_list = gens.generators
    else:
        gen_list = tuple(gens)
    sig = gen_list[0].signature
    if sig.homogenized:
        raise ValueError("expected generators of D, not D<z>")
    order = l_order(degree_form(sig.n, sig.p))
    basis = standard_basis(gen_list, order, budget)
    return IdealPresentation(tuple(homogenize(q) for q in basis.elements), homogenized=True)
