"""Constructive membership in the V-filtrations of M = D/I.

Given p polynomials f_1..f_p in x, the module M is presented through the
graph embedding: t_j acts as multiplication by f_j on the formal powers
f^s, and I is the left ideal generated by t_j - f_j and
dx_i + sum_j (df_j/dx_i) dt_j.  An element of M is a class of operators;
membership in a filtration piece is certified by exhibiting a
representative whose orders meet the required bounds.

The workhorse is order lowering: if two representatives of the same
class exist and one has smaller order for a boundary form of a fan cone,
one homogeneous division against the cone's basis strictly lowers the
order for that form without raising it for the other cone generators.
Iterating this yields single representatives for cone filtrations, the
controlled raise (whose V1-order overshoot is bounded by the cone's
kappa), and the chain construction that converts an
all-skeleton-forms certificate into a plain V_w certificate shifted by
(kappa1, 0).

Every certificate emitted here is re-verified with ord/normal-form
primitives before being returned; failures raise instead of producing
an unchecked answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .division import DEFAULT_DIVISION_BUDGET, divide, normal_form
from .errors import BudgetExceededError, PreconditionError, ZeroOperandError
from .fan import Cone2, VFan, _cone_kappa, kappa1
from .orders import LinearForm, SlopeDirection, V1_DIR, lh_order, tri_order, v_form
from .poly import MPoly, eval_univariate
from .ring import (
    DOp,
    NEG_INF,
    RingSignature,
    dop,
    exponent,
    gen_dt,
    gen_dx,
    gen_t,
    h_lift,
    monomial,
    multiply,
    one,
    ord_L,
    specialize_z1,
    symbol_L,
    zero,
)
from .standard_basis import IdealPresentation, StandardBasis

DEFAULT_LOWERING_BUDGET = 10**4


@dataclass(frozen=True)
class MalgrangeInput:
    """The p polynomials (as x-only operators of D) and the shift vector."""

    f: tuple[DOp, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        if not self.f:
            raise ValueError("need at least one polynomial")
        sig = self.f[0].signature
        if sig.homogenized:
            raise ValueError("polynomials must live in D, not D<z>")
        if len(self.f) != sig.p:
            raise ValueError(f"expected p = {sig.p} polynomials, got {len(self.f)}")
        if len(self.v) != sig.p:
            raise ValueError("shift vector length must equal p")
        for q in self.f:
            if q.is_zero():
                raise ZeroOperandError("zero polynomial")
            for e in q.terms:
                if any(e.mu) or any(e.beta) or any(e.nu) or e.k:
                    raise ValueError("f_j must be a polynomial in the x variables only")

    @property
    def signature(self) -> RingSignature:
        return self.f[0].signature


def _x_partial(q: DOp, i: int) -> DOp:
    """d/dx_i of an x-polynomial."""
    sig = q.signature
    items = []
    for e, c in q.terms.items():
        a = e.alpha[i]
        if a:
            alpha = tuple(v - (1 if j == i else 0) for j, v in enumerate(e.alpha))
            items.append((exponent(sig, alpha=alpha), c * a))
    return dop(sig, items)


def annihilator_ideal(inp: MalgrangeInput) -> IdealPresentation:
    """Generators t_j - f_j and dx_i + sum_j (df_j/dx_i) dt_j of the annihilator.

    Each generator kills f^s formally: substituting f_j for t_j annihilates
    the first block, and the chain rule the second.
    """
    sig = inp.signature
    gens = [gen_t(sig, j) - inp.f[j] for j in range(sig.p)]
    for i in range(sig.n):
        g = gen_dx(sig, i)
        for j in range(sig.p):
            g = g + multiply(_x_partial(inp.f[j], i), gen_dt(sig, j))
        gens.append(g)
    return IdealPresentation(tuple(gens), homogenized=False)


@dataclass(frozen=True)
class ModuleElement:
    """An element of M = D/I, held as one representative operator (z-free)."""

    representative: DOp

    def __post_init__(self):
        if self.representative.signature.homogenized:
            raise ValueError("representatives live in D")


@dataclass(frozen=True)
class FiltrationQuery:
    """kind in {V, VL, sigmaV, Vbar} with the parameters that kind needs."""

    kind: str
    w: Optional[tuple[int, ...]] = None
    form: Optional[LinearForm] = None
    bound: Optional[Fraction] = None
    cone_index: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("V", "VL", "sigmaV", "Vbar"):
            raise ValueError(f"unknown filtration kind {self.kind!r}")
        if self.kind == "VL":
            if self.form is None or self.bound is None:
                raise ValueError("VL query needs a form and a bound")
        elif self.w is None:
            raise ValueError(f"{self.kind} query needs a weight vector")
        if self.kind == "sigmaV" and self.cone_index is None:
            raise ValueError("sigmaV query needs a cone index")


@dataclass(frozen=True)
class BFactors:
    """User-supplied one-variable factors, one per skeleton direction."""

    factors: dict  # tuple[int, ...] -> tuple of Fraction coefficients, ascending
    note: str = ""

    def __post_init__(self):
        for key, coeffs in self.factors.items():
            if not any(Fraction(c) for c in coeffs):
                raise ValueError(f"zero factor polynomial for direction {key}")


def form_on_weights(form: LinearForm, w: Sequence[int]) -> Fraction:
    """L(w) = sum l_j w_j for a V-form."""
    ls = form.v_coefficients()
    if ls is None:
        raise PreconditionError("weight evaluation needs a V-form")
    return sum((l * Fraction(x) for l, x in zip(ls, w)), Fraction(0))


def _lifts(a: DOp, b: DOp) -> tuple[DOp, DOp]:
    """Homogeneous lifts of a, b padded with z to one shared degree."""
    sigz = a.signature.homogeneous()
    da = max((e.ddeg for e in a.terms), default=0)
    db = max((e.ddeg for e in b.terms), default=0)
    d = max(da, db)
    ha = zero(sigz) if a.is_zero() else h_lift(a, d - da)
    hb = zero(sigz) if b.is_zero() else h_lift(b, d - db)
    return ha, hb


def _default_interior(target: LinearForm, others: Sequence[LinearForm]) -> LinearForm:
    acc = target
    for f in others:
        acc = acc + f
    return acc


def lower_order_step(
    p: DOp,
    target: LinearForm,
    others: Sequence[LinearForm],
    basis: StandardBasis,
    witness: DOp,
    budget: int = DEFAULT_DIVISION_BUDGET,
    interior: Optional[LinearForm] = None,
) -> DOp:
    """One strict lowering of ord at ``target`` that never raises the others.

    ``witness`` must represent the same class with strictly smaller
    target-order.  The homogenized difference is divided against the
    cone basis for the boundary order at ``target``; subtracting the
    target-symbol part of that combination strips the top.  The three
    exit properties (same class, strict drop at target, no raise at the
    other forms) are checked before returning.
    """
    if basis.truncated or not basis.reduced_minimal:
        raise PreconditionError("need a complete reduced minimal cone basis")
    o_p = ord_L(p, target)
    o_w = ord_L(witness, target)
    if not o_w < o_p:
        raise PreconditionError("witness does not have strictly smaller target order")
    before = [ord_L(p, f) for f in others]

    h, h1 = _lifts(p, witness)
    h0 = h - h1
    order = tri_order(target, interior if interior is not None else _default_interior(target, others))
    res = divide(h0, basis.elements, order, budget)
    if res.truncated:
        raise BudgetExceededError("lowering division ran out of budget", partial=res)
    if not res.remainder.is_zero():
        raise PreconditionError("difference of the representatives is not in the ideal")

    m_top = ord_L(h0, target)
    w_op = zero(h0.signature)
    for q, elem in zip(res.quotients, basis.elements):
        if q.is_zero():
            continue
        if ord_L(q, target) + ord_L(elem, target) == m_top:
            w_op = w_op + multiply(symbol_L(q, target), elem)
    hp = h - w_op
    out = specialize_z1(hp)

    if not ord_L(out, target) < o_p:
        raise PreconditionError("lowering failed to decrease the target order")
    for f, b in zip(others, before):
        if ord_L(out, f) > b:
            raise PreconditionError("lowering raised the order at another generator")
    diff = p - out
    if not diff.is_zero():
        if not normal_form(h_lift(diff), basis.elements, order, budget).is_zero():
            raise PreconditionError("lowered representative left the class")
    return out


def cone_witness(
    m: ModuleElement,
    cone: Cone2,
    basis: StandardBasis,
    witnesses: Sequence[DOp],
    w: Sequence[int],
    budget: int = DEFAULT_DIVISION_BUDGET,
    iteration_budget: int = DEFAULT_LOWERING_BUDGET,
    trace: Optional[list] = None,
) -> DOp:
    """A single representative meeting every generator bound of the cone.

    ``witnesses[i]`` must represent ``m`` with ord at the i-th closure
    generator at most that generator's value on ``w``.  Orders are
    lowered one generator at a time; earlier bounds are never lost.
    """
    n = basis.signature.n
    gens = cone.generators()
    forms = [g.form(n) for g in gens]
    if len(witnesses) != len(gens):
        raise PreconditionError(f"need one witness per cone generator ({len(gens)})")
    bounds = [form_on_weights(f, w) for f in forms]
    for f, b, wit in zip(forms, bounds, witnesses):
        if ord_L(wit, f) > b:
            raise PreconditionError("witness does not satisfy its own generator bound")
    _check_same_class(m.representative, witnesses, basis, cone)

    cur = witnesses[0]
    for i in range(1, len(gens)):
        others = [forms[j] for j in range(len(gens)) if j != i]
        iters = 0
        while ord_L(cur, forms[i]) > bounds[i]:
            if iters >= iteration_budget:
                raise BudgetExceededError("order lowering iteration budget exhausted")
            cur = lower_order_step(
                cur, forms[i], others, basis, witnesses[i], budget, interior=cone.interior_witness
            )
            iters += 1
        if trace is not None:
            trace.append({"generator": tuple(gens[i]), "iterations": iters})
    for f, b in zip(forms, bounds):
        assert ord_L(cur, f) <= b, "cone witness failed a generator bound"
    return cur


def _check_same_class(rep: DOp, witnesses: Sequence[DOp], basis: StandardBasis, cone: Cone2):
    n = basis.signature.n
    order = lh_order(cone.interior_witness)
    for wit in witnesses:
        diff = rep - wit
        if diff.is_zero():
            continue
        if not normal_form(h_lift(diff), basis.elements, order).is_zero():
            raise PreconditionError("witnesses do not all represent the same class")


def controlled_raise(
    p: DOp,
    cone: Cone2,
    basis: StandardBasis,
    w: Sequence[int],
    witness2: DOp,
    budget: int = DEFAULT_DIVISION_BUDGET,
    iteration_budget: int = DEFAULT_LOWERING_BUDGET,
    trace: Optional[list] = None,
) -> DOp:
    """Meet the upper-generator bound of a 2-dimensional cone.

    Precondition: ord at the lower generator already satisfies its bound
    and ``witness2`` certifies the upper bound for the same class.  The
    output satisfies both generator bounds, stays in the class, and its
    V1-order is at most max(ord_V1(input), w_1 + kappa_sigma); all three
    are verified on every invocation.
    """
    if cone.is_ray():
        raise PreconditionError("controlled raise needs a 2-dimensional cone")
    n = basis.signature.n
    f1, f2 = (g.form(n) for g in cone.generators())
    b1, b2 = form_on_weights(f1, w), form_on_weights(f2, w)
    if ord_L(p, f1) > b1:
        raise PreconditionError("lower-generator bound does not hold for the input")
    if ord_L(witness2, f2) > b2:
        raise PreconditionError("witness does not satisfy the upper-generator bound")
    ks = _cone_kappa(cone, basis)
    v1f = v_form(n, 2, (1, 0))
    cap = max(ord_L(p, v1f), Fraction(w[0]) + ks)

    cur = p
    iters = 0
    while ord_L(cur, f2) > b2:
        if iters >= iteration_budget:
            raise BudgetExceededError("controlled raise iteration budget exhausted")
        nxt = lower_order_step(cur, f2, (f1,), basis, witness2, budget, interior=cone.interior_witness)
        if ord_L(nxt, v1f) > max(ord_L(cur, v1f), Fraction(w[0]) + ks):
            raise PreconditionError("V1-order rose beyond the kappa control")
        cur = nxt
        iters += 1
    if trace is not None:
        trace.append({"cone": (tuple(cone.lower), tuple(cone.upper)), "iterations": iters, "kappa_sigma": ks})

    assert ord_L(cur, f1) <= b1 and ord_L(cur, f2) <= b2
    assert ord_L(cur, v1f) <= cap, "controlled raise exceeded the V1 cap"
    return cur


def vbar_representative(
    m: ModuleElement,
    w: Sequence[int],
    fan: VFan,
    witnesses: dict,
    budget: int = DEFAULT_DIVISION_BUDGET,
    iteration_budget: int = DEFAULT_LOWERING_BUDGET,
    trace: Optional[list] = None,
) -> DOp:
    """From one witness per skeleton direction to a V_{w + (kappa1, 0)} witness.

    Walks the skeleton from V1 to V2, raising through each intermediate
    cone; after step i the representative satisfies the i-th skeleton
    bound and its V1-order never exceeds w_1 + kappa1.
    """
    if fan.p != 2:
        raise PreconditionError("the chain construction is for p = 2")
    if fan.partial:
        raise PreconditionError("refusing to walk a partial fan")
    skel = fan.skeleton
    for s in skel:
        if s not in witnesses:
            raise PreconditionError(f"missing witness for skeleton direction {tuple(s)}")
    n = fan.n
    k1 = kappa1(fan).kappa1
    v1f = v_form(n, 2, (1, 0))

    t_cur = witnesses[skel[0]]
    if ord_L(t_cur, v1f) > Fraction(w[0]):
        raise PreconditionError("the V1 witness does not satisfy its bound")
    for i in range(1, len(skel)):
        cone, basis = fan.cone_between(skel[i - 1], skel[i])
        t_cur = controlled_raise(t_cur, cone, basis, w, witnesses[skel[i]], budget, iteration_budget, trace)
        assert ord_L(t_cur, skel[i].form(n)) <= form_on_weights(skel[i].form(n), w)
        assert ord_L(t_cur, v1f) <= Fraction(w[0]) + k1, "chain exceeded w1 + kappa1"
    v2f = v_form(n, 2, (0, 1))
    assert ord_L(t_cur, v2f) <= Fraction(w[1])
    return t_cur


@dataclass
class MembershipReport:
    member: bool
    status: str  # "certified" | "no_certificate_within_budget"
    certificate: object = None
    detail: dict = field(default_factory=dict)


def _direction_of_form(form: LinearForm) -> SlopeDirection:
    ls = form.v_coefficients()
    if ls is None or len(ls) != 2:
        raise PreconditionError("expected a V-form with p = 2")
    from math import lcm

    den = lcm(*(l.denominator for l in ls)) if any(ls) else 1
    a, b = int(ls[0] * den), int(ls[1] * den)
    return SlopeDirection.make(a, b)


def _basis_for_form(fan: VFan, form: LinearForm) -> tuple[Cone2, StandardBasis]:
    if fan.p == 1:
        return fan.cones[0]
    return fan.cone_at(_direction_of_form(form))


def vl_search(
    rep: DOp,
    form: LinearForm,
    bound: Fraction,
    fan: VFan,
    budget: int = DEFAULT_DIVISION_BUDGET,
    max_pad: int = 6,
) -> Optional[DOp]:
    """A representative of the class of ``rep`` with ord at ``form`` <= bound.

    Normal forms of the z-padded homogenizations have non-increasing
    order as the pad grows, and reach the minimum over the class for
    some finite pad; the search stops at ``max_pad`` and returns None
    (unknown) if the bound was not met by then.
    """
    if ord_L(rep, form) <= bound:
        return rep
    cone, basis = _basis_for_form(fan, form)
    order = tri_order(form, cone.interior_witness)
    best = None
    for pad in range(max_pad + 1):
        h = h_lift(rep, pad)
        r = normal_form(h, basis.elements, order, budget)
        cand = specialize_z1(r)
        o = ord_L(cand, form)
        if o <= bound:
            return cand
        if best is None or o < best[0]:
            best = (o, cand)
    return None


def filtration_member(
    m: ModuleElement,
    query: FiltrationQuery,
    fan: VFan,
    budget: int = DEFAULT_DIVISION_BUDGET,
    iteration_budget: int = DEFAULT_LOWERING_BUDGET,
    max_pad: int = 6,
) -> MembershipReport:
    """Semi-decision of filtration membership with verifiable certificates.

    A positive answer carries a representative (or, for the intersection
    filtration, one per skeleton direction) that the caller can re-check
    with ord/normal-form.  A negative answer only reports that no
    certificate was found within the budget.
    """
    rep = m.representative
    sig = rep.signature
    n, p = sig.n, sig.p
    if query.kind in ("sigmaV", "Vbar") and p > 2:
        raise PreconditionError("sigmaV/Vbar queries require p <= 2")

    if query.kind == "VL":
        cand = vl_search(rep, query.form, Fraction(query.bound), fan, budget, max_pad)
        if cand is not None:
            return MembershipReport(True, "certified", cand, {"ord": str(ord_L(cand, query.form))})
        return MembershipReport(False, "no_certificate_within_budget")

    if query.kind == "Vbar":
        certs = {}
        for s in fan.skeleton:
            f = s.form(n)
            cand = vl_search(rep, f, form_on_weights(f, query.w), fan, budget, max_pad)
            if cand is None:
                return MembershipReport(False, "no_certificate_within_budget", detail={"failed_at": tuple(s)})
            certs[tuple(s)] = cand
        return MembershipReport(True, "certified", certs)

    if query.kind == "sigmaV":
        cone, basis = fan.cones[query.cone_index]
        gens = cone.generators()
        wits = []
        for s in gens:
            f = s.form(n)
            cand = vl_search(rep, f, form_on_weights(f, query.w), fan, budget, max_pad)
            if cand is None:
                return MembershipReport(False, "no_certificate_within_budget", detail={"failed_at": tuple(s)})
            wits.append(cand)
        cert = cone_witness(m, cone, basis, wits, query.w, budget, iteration_budget)
        return MembershipReport(True, "certified", cert)

    # kind == "V"
    w = query.w
    v_forms = [v_form(n, p, tuple(1 if i == j else 0 for i in range(p))) for j in range(p)]
    if all(ord_L(rep, f) <= Fraction(wi) for f, wi in zip(v_forms, w)):
        return MembershipReport(True, "certified", rep)
    if p == 1:
        cand = vl_search(rep, v_forms[0], Fraction(w[0]), fan, budget, max_pad)
        if cand is not None:
            return MembershipReport(True, "certified", cand)
        return MembershipReport(False, "no_certificate_within_budget")

    wits = {}
    for s in fan.skeleton:
        f = s.form(n)
        cand = vl_search(rep, f, form_on_weights(f, w), fan, budget, max_pad)
        if cand is None:
            return MembershipReport(False, "no_certificate_within_budget", detail={"failed_at": tuple(s)})
        wits[s] = cand
    t_final = vbar_representative(m, w, fan, wits, budget, iteration_budget)
    if all(ord_L(t_final, f) <= Fraction(wi) for f, wi in zip(v_forms, w)):
        return MembershipReport(True, "certified", t_final)
    k1 = kappa1(fan).kappa1
    return MembershipReport(
        False,
        "no_certificate_within_budget",
        detail={
            "note": f"found a V_(w1+{k1},w2) certificate but not V_w itself",
            "shifted_certificate_ord_v1": str(ord_L(t_final, v_forms[0])),
        },
    )


def assemble_b(
    factors: BFactors,
    kappa: Sequence[int],
    v: Sequence[int],
    skeleton: Sequence,
) -> tuple[MPoly, list[MPoly]]:
    """The candidate product polynomial b(s) and its individual factors.

    For each skeleton direction L the factor polynomial is evaluated at
    L(s) - j for every integer j with -L(v + kappa) < j <= 0; the result
    has total degree sum_L L(v + kappa) * deg(b_L).
    """
    p = len(v)
    if len(kappa) != p:
        raise ValueError("kappa and v must have the same length")
    shifted = [Fraction(vi) + Fraction(ki) for vi, ki in zip(v, kappa)]
    prod = MPoly.const(1, p)
    factor_list: list[MPoly] = []
    for direction in skeleton:
        key = tuple(direction)
        if key not in factors.factors:
            raise PreconditionError(f"missing factor polynomial for skeleton direction {key}")
        coeffs = factors.factors[key]
        bound = sum((Fraction(l) * s for l, s in zip(key, shifted)), Fraction(0))
        if bound != int(bound) or bound < 0:
            raise PreconditionError(f"L(v + kappa) must be a nonnegative integer, got {bound}")
        arg_base = MPoly(p, {})
        for i, l in enumerate(key):
            arg_base = arg_base + MPoly.variable(i, p).scale(l)
        for k_off in range(int(bound)):
            f = eval_univariate(coeffs, arg_base + MPoly.const(k_off, p))
            factor_list.append(f)
            prod = prod * f
    return prod, factor_list
