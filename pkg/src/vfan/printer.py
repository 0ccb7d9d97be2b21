"""Canonical text form of operators.

Terms are printed in descending order (the session's active order, base
order by default), coefficients in lowest terms, variables as
x1, t2, dx1, dt2, z with explicit '*' and '^'.  Printing then parsing is
the identity on canonical forms.
"""

from __future__ import annotations

from fractions import Fraction

from .orders import OrderDescriptor, base0_order
from .ring import DOp, Exponent


def _monomial_str(e: Exponent) -> str:
    parts = []
    for name, block in (("x", e.alpha), ("t", e.mu), ("dx", e.beta), ("dt", e.nu)):
        for i, pw in enumerate(block):
            if pw == 1:
                parts.append(f"{name}{i + 1}")
            elif pw > 1:
                parts.append(f"{name}{i + 1}^{pw}")
    if e.k == 1:
        parts.append("z")
    elif e.k > 1:
        parts.append(f"z^{e.k}")
    return "*".join(parts)


def _coeff_str(c: Fraction) -> str:
    return str(c)


def operator_to_str(p: DOp, order: OrderDescriptor | None = None) -> str:
    if p.is_zero():
        return "0"
    order = order or base0_order()
    exps = sorted(p.terms, key=order.key(), reverse=True)
    pieces = []
    for idx, e in enumerate(exps):
        c = p.terms[e]
        mono = _monomial_str(e)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_coeff_str(mag)}*{mono}"
        else:
            body = _coeff_str(mag)
        if idx == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)
