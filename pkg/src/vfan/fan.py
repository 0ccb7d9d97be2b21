"""The V-Groebner fan of a homogenized ideal, for p <= 2.

For p = 2 the V-forms are identified with the closed quadrant; a ray is
a primitive direction (a, b) ordered by slope b/a.  On the open cone
between two breakpoints the reduced minimal standard basis, its
privileged exponents and its principal symbols are all constant; the
exact region where that data is unchanged around a given form is an
intersection of half-plane constraints read off the basis elements:
a tail monomial strictly below the symbol contributes a strict
constraint, a tail monomial inside the symbol pins the region to a ray.

The fan is swept by increasing slope.  Breakpoint rays in the open
quadrant carry their own basis and are emitted as one-dimensional cones
(the bases of the two flanking cones differ there).  The two boundary
rays V1 and V2 have no second neighbour and are absorbed into the
adjacent two-dimensional cone, so the emitted cones partition the
quadrant and every ray lies in exactly one of them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .errors import BudgetExceededError, PreconditionError
from .orders import (
    LinearForm,
    SlopeDirection,
    V1_DIR,
    V2_DIR,
    lh_order,
    v_form,
)
from .ring import DOp, NEG_INF, ord_L, symbol_L
from .standard_basis import (
    DEFAULT_COMPLETION_BUDGET,
    IdealPresentation,
    StandardBasis,
    standard_basis,
)

_PROBE_LIMIT = 512
_DESCENT_LIMIT = 128


@dataclass(frozen=True)
class Cone2:
    """A slope interval of the quadrant, possibly degenerate (a ray)."""

    lower: SlopeDirection
    upper: SlopeDirection
    lower_closed: bool
    upper_closed: bool
    interior_witness: LinearForm

    def __post_init__(self):
        c = self.lower.slope_cmp(self.upper)
        if c > 0:
            raise ValueError("cone endpoints out of order")
        if c == 0 and not (self.lower_closed and self.upper_closed):
            raise ValueError("a degenerate cone must be closed on both sides")

    def is_ray(self) -> bool:
        return self.lower == self.upper

    def generators(self) -> tuple[SlopeDirection, ...]:
        """Primitive generators of the closure (the 1-skeleton of the cone)."""
        if self.is_ray():
            return (self.lower,)
        return (self.lower, self.upper)

    def contains(self, s: SlopeDirection) -> bool:
        lo = s.slope_cmp(self.lower)
        hi = s.slope_cmp(self.upper)
        if lo < 0 or hi > 0:
            return False
        if lo == 0 and not self.lower_closed:
            return False
        if hi == 0 and not self.upper_closed:
            return False
        return True


@dataclass
class _Interval:
    lo: SlopeDirection
    lo_closed: bool
    hi: SlopeDirection
    hi_closed: bool

    def is_point(self) -> bool:
        return self.lo == self.hi

    def clip_upper_strict(self, s: SlopeDirection):
        c = s.slope_cmp(self.hi)
        if c < 0 or (c == 0 and self.hi_closed):
            self.hi, self.hi_closed = s, False

    def clip_lower_strict(self, s: SlopeDirection):
        c = s.slope_cmp(self.lo)
        if c > 0 or (c == 0 and self.lo_closed):
            self.lo, self.lo_closed = s, False

    def pin(self, s: SlopeDirection):
        self.lo = self.hi = s
        self.lo_closed = self.hi_closed = True

    def sane(self) -> bool:
        c = self.lo.slope_cmp(self.hi)
        if c > 0:
            return False
        if c == 0 and not (self.lo_closed and self.hi_closed):
            return False
        return True


def _zero_ray(d1: int, d2: int) -> Optional[SlopeDirection]:
    """The quadrant ray on which a*d1 + b*d2 = 0, if any."""
    if d1 == 0 and d2 == 0:
        return None
    if d1 == 0:
        return V1_DIR
    if d2 == 0:
        return V2_DIR
    if (d1 > 0) == (d2 > 0):
        return None
    return SlopeDirection.make(abs(d2), abs(d1))


def stability_cone(basis: StandardBasis, form: LinearForm) -> Cone2:
    """Largest slope interval around ``form`` with unchanged symbols and exponents.

    The basis must be reduced-minimal for the order adapted to ``form``
    (its stored apexes are used as the privileged exponents).
    """
    if form.p != 2:
        raise PreconditionError("stability cones require p = 2")
    if not basis.reduced_minimal:
        raise PreconditionError("stability_cone expects a reduced minimal basis")
    if form.v_coefficients() is None:
        raise PreconditionError("stability cones are computed over V-forms only")

    iv = _Interval(V1_DIR, True, V2_DIR, True)
    for q, apex in zip(basis.elements, basis.apexes):
        ga = apex.vweights()
        aval = form.value(apex)
        for e in q.terms:
            if e == apex:
                continue
            d1, d2 = ga[0] - e.vweight(0), ga[1] - e.vweight(1)
            if d1 == 0 and d2 == 0:
                continue
            gap = aval - form.value(e)
            if gap < 0:
                raise PreconditionError("basis is not adapted to the given form")
            ray = _zero_ray(d1, d2)
            if gap == 0:
                # the monomial sits in the symbol: it must stay tied
                if ray is None:
                    raise PreconditionError("inconsistent symbol tie")
                iv.pin(ray)
            else:
                if d1 >= 0 and d2 >= 0:
                    continue  # holds on the whole quadrant
                if d1 <= 0 and d2 <= 0:
                    raise PreconditionError("constraint violated at its own base form")
                assert ray is not None
                if d2 < 0:
                    iv.clip_upper_strict(ray)
                else:
                    iv.clip_lower_strict(ray)
            if not iv.sane():
                raise PreconditionError("stability constraints are inconsistent")

    witness = _witness_form(iv.lo, iv.hi, form.n)
    return Cone2(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed, witness)


def _witness_form(lo: SlopeDirection, hi: SlopeDirection, n: int) -> LinearForm:
    if lo == hi:
        return lo.form(n)
    return SlopeDirection.mediant(lo, hi).form(n)


@dataclass
class VFan:
    """Ordered cones sweeping slope 0 to infinity, each with its basis."""

    n: int
    p: int
    cones: tuple[tuple[Cone2, StandardBasis], ...]
    skeleton: tuple[SlopeDirection, ...]
    per_cone_kappa: tuple[int, ...]
    partial: bool = False

    def cone_index_at(self, s: SlopeDirection) -> int:
        hits = [i for i, (c, _) in enumerate(self.cones) if c.contains(s)]
        if len(hits) != 1:
            raise ValueError(f"ray {s} lies in {len(hits)} cones; fan is not a partition")
        return hits[0]

    def cone_at(self, s: SlopeDirection) -> tuple[Cone2, StandardBasis]:
        return self.cones[self.cone_index_at(s)]

    def cone_between(self, s1: SlopeDirection, s2: SlopeDirection) -> tuple[Cone2, StandardBasis]:
        """The cone containing the open interval between two adjacent skeleton rays."""
        return self.cone_at(SlopeDirection.mediant(s1, s2))


@dataclass
class KappaResult:
    kappa1: int
    per_cone: tuple[tuple[Cone2, int], ...]
    shift_vector: tuple[int, ...]


def _cone_kappa(cone: Cone2, basis: StandardBasis) -> int:
    """max over elements of ord_V1(Q) - ord_V1(symbol at the upper generator)."""
    n = basis.signature.n
    vv1 = v_form(n, 2, (1, 0))
    up = cone.upper.form(n)
    best = 0
    for q in basis.elements:
        drop = ord_L(q, vv1) - ord_L(symbol_L(q, up), vv1)
        best = max(best, int(drop))
    return best


def kappa1(fan: VFan) -> KappaResult:
    """The bound controlling the V1-order raise, from the fan's bases."""
    if fan.partial:
        raise PreconditionError("kappa of a partial fan is not defined")
    per = tuple((cone, _cone_kappa(cone, basis)) for cone, basis in fan.cones)
    two_dim = [k for (cone, k) in per if not cone.is_ray()]
    k1 = max(two_dim, default=0)
    return KappaResult(k1, per, (k1, 0) if fan.p == 2 else (0,) * fan.p)


def _sorted_skeleton(dirs) -> tuple[SlopeDirection, ...]:
    import functools

    return tuple(sorted(set(dirs), key=functools.cmp_to_key(SlopeDirection.slope_cmp)))


def compute_fan(
    hI: IdealPresentation,
    budget: int = DEFAULT_COMPLETION_BUDGET,
) -> VFan:
    """Sweep the quadrant and return the fan of the homogenized ideal.

    Each probe completes the presentation at one slope; exhaustion of any
    completion budget yields a fan flagged ``partial`` (never silently
    shortened).  p >= 3 is rejected.
    """
    sig = hI.signature
    if not sig.homogenized or not hI.homogenized:
        raise PreconditionError("compute_fan expects a homogenized presentation")
    if sig.p > 2:
        raise PreconditionError("fan computation supports p <= 2 only")

    if sig.p == 1:
        form = v_form(sig.n, 1, (1,))
        basis = standard_basis(hI, lh_order(form), budget)
        cone = Cone2(V1_DIR, V1_DIR, True, True, form)
        cones = ((cone, basis),)
        return VFan(sig.n, 1, cones, (V1_DIR,), (0,), partial=False)

    n = sig.n
    memo: dict[SlopeDirection, tuple[Cone2, StandardBasis]] = {}
    probes = 0

    def probe(s: SlopeDirection) -> tuple[Cone2, StandardBasis]:
        nonlocal probes
        if s in memo:
            return memo[s]
        probes += 1
        if probes > _PROBE_LIMIT:
            raise BudgetExceededError("fan sweep exceeded its probe limit")
        form = s.form(n)
        basis = standard_basis(hI, lh_order(form), budget)
        cone = stability_cone(basis, form)
        memo[s] = (cone, basis)
        return cone, basis

    def piece_above(u: SlopeDirection) -> tuple[Cone2, StandardBasis]:
        """The cone whose closure starts at u from above (open at u)."""
        ub = V2_DIR
        for _ in range(_DESCENT_LIMIT):
            pr = SlopeDirection.mediant(u, ub)
            c, b = probe(pr)
            rel = c.lower.slope_cmp(u)
            if rel <= 0:
                clipped = Cone2(u, c.upper, False, c.upper_closed, _witness_form(u, c.upper, n))
                return clipped, b
            ub = c.lower
        raise BudgetExceededError(f"could not isolate the cone above {u}")

    pieces: list[tuple[Cone2, StandardBasis]] = []
    pos, pos_covered = V1_DIR, False
    partial = False
    try:
        for _ in range(_PROBE_LIMIT):
            if not pos_covered:
                c, b = probe(pos)
                if c.is_ray():
                    if not pieces:
                        above, ab = piece_above(pos)  # V1's own class is the ray: absorb upward
                        emitted = Cone2(pos, above.upper, True, above.upper_closed,
                                        _witness_form(pos, above.upper, n))
                        pieces.append((emitted, ab))
                    else:
                        pieces.append((c, b))
                else:
                    emitted = Cone2(pos, c.upper, True, c.upper_closed, _witness_form(pos, c.upper, n))
                    pieces.append((emitted, b))
            else:
                above, ab = piece_above(pos)
                pieces.append((above, ab))

            last, last_b = pieces[-1]
            if last.upper == V2_DIR:
                if not last.upper_closed:
                    # V2 has no neighbour above: absorb it into the last cone
                    pieces[-1] = (replace(last, upper_closed=True), last_b)
                break
            pos, pos_covered = last.upper, last.upper_closed
        else:
            raise BudgetExceededError("fan sweep did not converge")
    except BudgetExceededError:
        partial = True

    cones = tuple(pieces)
    skel = _sorted_skeleton([g for cone, _ in cones for g in cone.generators()])
    kappas = tuple(_cone_kappa(cone, basis) for cone, basis in cones)
    return VFan(n, 2, cones, skel, kappas, partial=partial)


def skeleton(fan: VFan) -> list[SlopeDirection]:
    """Primitive 1-skeleton of the fan: deduplicated, slope-sorted."""
    return list(_sorted_skeleton([g for cone, _ in fan.cones for g in cone.generators()]))


def fan_to_json_dict(fan: VFan) -> dict:
    from .printer import operator_to_str

    if fan.partial:
        kappa_total = None
    else:
        kappa_total = kappa1(fan).kappa1
    cones = []
    for (cone, basis), ks in zip(fan.cones, fan.per_cone_kappa):
        cones.append(
            {
                "lower": [cone.lower.a, cone.lower.b],
                "upper": [cone.upper.a, cone.upper.b],
                "lower_closed": cone.lower_closed,
                "upper_closed": cone.upper_closed,
                "basis": [operator_to_str(q, basis.order) for q in basis.elements],
                "kappa_sigma": ks,
            }
        )
    out = {
        "n": fan.n,
        "p": fan.p,
        "cones": cones,
        "skeleton": [[s.a, s.b] for s in fan.skeleton],
        "kappa1": kappa_total,
    }
    if fan.partial:
        out["truncated"] = True
    return out


def _angle(s: SlopeDirection) -> float:
    import math

    return math.atan2(float(s.b), float(s.a))


def fan_to_svg(fan: VFan) -> str:
    """A static picture of the quadrant partition: sectors, skeleton rays, labels."""
    import math

    size, margin, radius = 420, 40, 340
    ox, oy = margin, size - margin
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    palette = ["#cfe8ff", "#ffe3c2", "#d8f5d0", "#f2d7f7", "#fff3b0", "#d0f0f5"]
    for idx, ((cone, basis), ks) in enumerate(zip(fan.cones, fan.per_cone_kappa)):
        a0, a1 = _angle(cone.lower), _angle(cone.upper)
        if cone.is_ray():
            x, y = ox + radius * math.cos(a0), oy - radius * math.sin(a0)
            parts.append(
                f'<line x1="{ox}" y1="{oy}" x2="{x:.2f}" y2="{y:.2f}" '
                f'stroke="#c0392b" stroke-width="4"/>'
            )
        else:
            x0, y0 = ox + radius * math.cos(a0), oy - radius * math.sin(a0)
            x1, y1 = ox + radius * math.cos(a1), oy - radius * math.sin(a1)
            color = palette[idx % len(palette)]
            parts.append(
                f'<path d="M {ox} {oy} L {x0:.2f} {y0:.2f} '
                f'A {radius} {radius} 0 0 0 {x1:.2f} {y1:.2f} Z" '
                f'fill="{color}" stroke="none"/>'
            )
        mid = 0.5 * (a0 + a1)
        lx, ly = ox + 0.6 * radius * math.cos(mid), oy - 0.6 * radius * math.sin(mid)
        parts.append(
            f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="13" font-family="monospace">'
            f"r={len(basis.elements)} k={ks}</text>"
        )
    for s in fan.skeleton:
        a = _angle(s)
        x, y = ox + radius * math.cos(a), oy - radius * math.sin(a)
        parts.append(
            f'<line x1="{ox}" y1="{oy}" x2="{x:.2f}" y2="{y:.2f}" '
            f'stroke="#2c3e50" stroke-width="1.5"/>'
        )
        tx, ty = ox + (radius + 16) * math.cos(a), oy - (radius + 16) * math.sin(a)
        parts.append(
            f'<text x="{tx - 12:.2f}" y="{ty:.2f}" font-size="12" font-family="monospace">'
            f"({s.a},{s.b})</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts)
