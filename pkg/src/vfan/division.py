"""Division with remainder by a list of operators.

The exponent lattice is partitioned by the divisors' privileged
exponents: cell j is the translated orthant of divisor j minus the
earlier cells, and the remainder cell is what is left.  Division rewrites
the order-maximal term of the dividend at each step: a term whose
exponent lies in cell j is cleared with a left multiple of divisor j, a
term in the remainder cell moves to the remainder.  Every replacement
term is strictly smaller in the order, so the processed exponents
strictly decrease and each position is written at most once; when a
finite quotient/remainder pair exists at all, this strategy reaches it.

The V-adapted orders are not well-orders (t-weights are negative and the
x-block ties are broken in reverse), so a division may genuinely have no
finite answer; a mandatory step budget makes that observable: the result
is flagged ``truncated``, the unprocessed tail is parked in the remainder
(so the sum identity still holds) and the support guarantees are void.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BudgetExceededError, ZeroOperandError
from .orders import OrderDescriptor, privileged_exponent
from .ring import DOp, Exponent, dop, monomial, multiply

DEFAULT_DIVISION_BUDGET = 10**6


@dataclass(frozen=True)
class StaircasePartition:
    """Cells carved from translated orthants, in divisor order."""

    apexes: tuple[Exponent, ...]

    def cell_of(self, e: Exponent) -> Optional[int]:
        """Index of the cell containing e, or None for the remainder cell."""
        for j, apex in enumerate(self.apexes):
            if e.dominates(apex):
                return j
        return None

    def in_cell(self, e: Exponent, j: int) -> bool:
        return self.cell_of(e) == j

    def in_complement(self, e: Exponent) -> bool:
        return self.cell_of(e) is None


def build_partition(divisors: Sequence[DOp], order: OrderDescriptor) -> StaircasePartition:
    apexes = []
    for q in divisors:
        if q.is_zero():
            raise ZeroOperandError("zero divisor")
        apexes.append(privileged_exponent(q, order))
    return StaircasePartition(tuple(apexes))


@dataclass
class DivisionResult:
    quotients: tuple[DOp, ...]
    remainder: DOp
    step_count: int
    truncated: bool

    def reconstruct(self, divisors: Sequence[DOp]) -> DOp:
        """sum quotient_j * divisor_j + remainder; equals the dividend iff not truncated."""
        acc = self.remainder
        for q, d in zip(self.quotients, divisors):
            acc = acc + multiply(q, d)
        return acc


def divide(
    p: DOp,
    divisors: Sequence[DOp],
    order: OrderDescriptor,
    budget: int = DEFAULT_DIVISION_BUDGET,
) -> DivisionResult:
    """Divide p by the listed operators relative to the order.

    When not truncated the result is the unique tuple with
    p = sum q_j Q_j + R, supp(q_j) + apex_j inside cell j and supp(R)
    inside the remainder cell; identical inputs give identical outputs.
    """
    sig = p.signature
    partition = build_partition(divisors, order)
    lead_coeffs = [q.terms[a] for q, a in zip(divisors, partition.apexes)]
    key = order.key()

    cur: dict[Exponent, Fraction] = dict(p.terms)
    quots: list[dict[Exponent, Fraction]] = [{} for _ in divisors]
    rem: dict[Exponent, Fraction] = {}
    steps = 0
    truncated = False

    while cur:
        if steps >= budget:
            truncated = True
            break
        e = max(cur, key=key)
        c = cur[e]
        j = partition.cell_of(e)
        if j is None:
            rem[e] = rem.get(e, 0) + c
            del cur[e]
        else:
            u = e.minus(partition.apexes[j])
            factor = c / lead_coeffs[j]
            quots[j][u] = quots[j].get(u, 0) + factor
            sub = multiply(monomial(sig, u, factor), divisors[j])
            for e2, c2 in sub.terms.items():
                v = cur.get(e2, 0) - c2
                if v:
                    cur[e2] = v
                else:
                    cur.pop(e2, None)
            assert e not in cur, "leading term failed to cancel"
        steps += 1

    quotients = tuple(dop(sig, q.items()) for q in quots)
    remainder = dop(sig, rem.items())
    if truncated:
        # park the unprocessed tail in the remainder so the result is inspectable
        remainder = remainder + DOp(sig, cur)
    return DivisionResult(quotients, remainder, steps, truncated)


def normal_form(
    p: DOp,
    basis,
    order: OrderDescriptor | None = None,
    budget: int = DEFAULT_DIVISION_BUDGET,
) -> DOp:
    """Remainder of the division of p by a standard basis (or divisor list).

    Raises BudgetExceededError instead of returning a silently wrong
    remainder when the budget runs out.
    """
    if hasattr(basis, "elements"):
        divisors = basis.elements
        order = order or basis.order
    else:
        divisors = tuple(basis)
        if order is None:
            raise ValueError("normal_form over a raw divisor list needs an order")
    res = divide(p, divisors, order, budget)
    if res.truncated:
        raise BudgetExceededError(f"normal form did not finish within {budget} steps", partial=res)
    return res.remainder
