"""Sparse multivariate polynomials over the rationals (for b(s) assembly)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True, eq=True)
class MPoly:
    """Polynomial in s1..sp: finite map exponent tuple -> nonzero Fraction."""

    nvars: int
    terms: dict = field(default_factory=dict)

    @staticmethod
    def const(c, nvars: int) -> "MPoly":
        c = Fraction(c)
        return MPoly(nvars, {(0,) * nvars: c} if c else {})

    @staticmethod
    def variable(i: int, nvars: int) -> "MPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return MPoly(nvars, {e: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MPoly") -> "MPoly":
        acc = dict(self.terms)
        for e, c in other.terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return MPoly(self.nvars, acc)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        acc: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = acc.get(e, 0) + c1 * c2
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return MPoly(self.nvars, acc)

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        if not c:
            return MPoly(self.nvars, {})
        return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        """Compact expanded form, e.g. ``s1*s2+s1+s2+1``."""
        if not self.terms:
            return "0"
        names = names or [f"s{i + 1}" for i in range(self.nvars)]
        ordered = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        out = []
        for e, first in zip(ordered, [True] + [False] * len(ordered)):
            c = self.terms[e]
            vars_part = "*".join(
                f"{names[i]}^{pw}" if pw > 1 else names[i] for i, pw in enumerate(e) if pw
            )
            mag = abs(c)
            if vars_part and mag == 1:
                body = vars_part
            elif vars_part:
                body = f"{mag}*{vars_part}"
            else:
                body = str(mag)
            if first:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(out)


def eval_univariate(coeffs: Sequence, at: MPoly) -> MPoly:
    """Evaluate sum coeffs[i] * X^i at a polynomial argument (Horner)."""
    acc = MPoly.const(0, at.nvars)
    for c in reversed(list(coeffs)):
        acc = acc * at + MPoly.const(c, at.nvars)
    return acc
