"""Command-line front end.

Commands: sb, fan, kappa, divide, nf, lower, member, assemble-b.
Exit codes: 0 ok, 2 parse error, 3 budget exhausted, 4 precondition
violated.  Budget exhaustion always surfaces as a nonzero exit and a
"truncated" marker, never as a silently partial answer.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .division import divide
from .errors import BudgetExceededError, ParseError, PreconditionError, ZeroOperandError
from .fan import VFan, compute_fan, fan_to_json_dict, fan_to_svg, kappa1
from .filtration import (
    BFactors,
    FiltrationQuery,
    MalgrangeInput,
    ModuleElement,
    annihilator_ideal,
    assemble_b,
    filtration_member,
    form_on_weights,
    lower_order_step,
)
from .orders import OrderDescriptor, SlopeDirection, base0_order, l_order, lh_order, tri_order, v_form
from .parser import parse_operator
from .poly import MPoly
from .printer import operator_to_str
from .ring import RingSignature, ord_L
from .standard_basis import complete, homogenize_ideal, reduce_minimal


@dataclass
class SessionConfig:
    signature: RingSignature
    budget_div: int
    budget_sb: int
    budget_lower: int
    out_format: str
    out_path: str | None

    def __post_init__(self):
        if min(self.budget_div, self.budget_sb, self.budget_lower) <= 0:
            raise PreconditionError("budgets must be positive")


def _parse_fractions(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(part) for part in text.split(","))


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def parse_order(text: str, sig: RingSignature) -> OrderDescriptor:
    """Grammar: base0 | L:l1,..,lp | Vh:l1,..,lp | tri:l1,..,lp@l1',..,lp'."""
    if text == "base0":
        return base0_order()
    if ":" not in text:
        raise ParseError(f"bad order spec {text!r}", 0)
    kind, _, rest = text.partition(":")
    n, p = sig.n, sig.p
    if kind == "L":
        return l_order(v_form(n, p, _parse_fractions(rest)))
    if kind == "Vh":
        return lh_order(v_form(n, p, _parse_fractions(rest)))
    if kind == "tri":
        main_part, _, sigma_part = rest.partition("@")
        if not sigma_part:
            raise ParseError("tri order needs L@L_sigma", 0)
        return tri_order(
            v_form(n, p, _parse_fractions(main_part)),
            v_form(n, p, _parse_fractions(sigma_part)),
        )
    raise ParseError(f"unknown order kind {kind!r}", 0)


def _parse_lambda_poly(text: str) -> tuple[Fraction, ...]:
    """A univariate polynomial in l, e.g. 'l+1' or 'l^2+3*l+1/2' -> ascending coeffs."""
    import re

    token = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>l)|(?P<op>[-+*^()/]))")
    pos, toks = 0, []
    while pos < len(text):
        m = token.match(text, pos)
        if not m or m.end() == m.start():
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        toks.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()

    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None, len(text))

    def advance():
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def atom() -> MPoly:
        kind, val, pos = advance()
        if kind == "num":
            num = int(val)
            k2, v2, _ = peek()
            if k2 == "op" and v2 == "/":
                advance()
                k3, v3, p3 = advance()
                if k3 != "num":
                    raise ParseError("denominator must be an integer", p3)
                return MPoly.const(Fraction(num, int(v3)), 1)
            return MPoly.const(num, 1)
        if kind == "var":
            return MPoly.variable(0, 1)
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, p2 = advance()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", p2)
            return inner
        raise ParseError("unexpected token in factor polynomial", pos)

    def factor() -> MPoly:
        kind, val, _ = peek()
        if kind == "op" and val == "-":
            advance()
            return factor().scale(-1)
        base = atom()
        kind, val, _ = peek()
        if kind == "op" and val == "^":
            advance()
            k2, v2, p2 = advance()
            if k2 != "num":
                raise ParseError("exponent must be an integer", p2)
            out = MPoly.const(1, 1)
            for _ in range(int(v2)):
                out = out * base
            return out
        return base

    def term() -> MPoly:
        acc = factor()
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                advance()
                acc = acc * factor()
            else:
                return acc

    def expr() -> MPoly:
        acc = term()
        while True:
            kind, val, _ = peek()
            if kind == "op" and val in "+-":
                advance()
                nxt = term()
                acc = acc + nxt if val == "+" else acc - nxt
            else:
                return acc

    poly = expr()
    if i < len(toks):
        raise ParseError("trailing input in factor polynomial", toks[i][2])
    deg = poly.total_degree()
    return tuple(poly.terms.get((d,), Fraction(0)) for d in range(deg + 1))


def _emit(text: str, cfg: SessionConfig) -> None:
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, cfg: SessionConfig) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", cfg)


def _config(args) -> SessionConfig:
    sig = RingSignature(args.n, args.p, homogenized=(args.ring == "dz"))
    return SessionConfig(
        signature=sig,
        budget_div=args.budget_div,
        budget_sb=args.budget_sb,
        budget_lower=args.budget_lower,
        out_format=args.format,
        out_path=args.out,
    )


def _malgrange(args, cfg: SessionConfig) -> MalgrangeInput:
    if not args.f:
        raise PreconditionError("this command needs at least one -f polynomial")
    sig_d = cfg.signature.plain()
    polys = tuple(parse_operator(text, sig_d) for text in args.f)
    shift = _parse_ints(args.shift) if getattr(args, "shift", None) else (0,) * sig_d.p
    return MalgrangeInput(polys, shift)


def _fan_for(args, cfg: SessionConfig) -> VFan:
    inp = _malgrange(args, cfg)
    ideal = annihilator_ideal(inp)
    h_ideal = homogenize_ideal(ideal, budget=cfg.budget_sb)
    return compute_fan(h_ideal, budget=cfg.budget_sb)


def _basis_json(basis) -> dict:
    return {
        "elements": [operator_to_str(q, basis.order) for q in basis.elements],
        "apexes": [list(a.alpha + a.mu + a.beta + a.nu + (a.k,)) for a in basis.apexes],
        "reduced_minimal": basis.reduced_minimal,
        "truncated": basis.truncated,
    }


def cmd_sb(args, cfg: SessionConfig) -> int:
    sig = cfg.signature
    gens = [parse_operator(text, sig) for text in args.gen]
    order = parse_order(args.order, sig)
    basis = complete(gens, order, budget=cfg.budget_sb)
    truncated = basis.truncated
    if not truncated:
        basis = reduce_minimal(basis, budget=cfg.budget_sb, check=False)
    if cfg.out_format == "json":
        payload = _basis_json(basis)
        payload["order"] = args.order
        _emit_json(payload, cfg)
    else:
        lines = [f"{operator_to_str(q, basis.order)}" for q in basis.elements]
        head = "reduced minimal standard basis" if basis.reduced_minimal else "standard basis (TRUNCATED)"
        _emit(head + "\n" + "\n".join(f"  {line}" for line in lines) + "\n", cfg)
    return 3 if truncated else 0


def cmd_fan(args, cfg: SessionConfig) -> int:
    fan = _fan_for(args, cfg)
    if cfg.out_format == "svg":
        _emit(fan_to_svg(fan) + "\n", cfg)
    elif cfg.out_format == "json":
        _emit_json(fan_to_json_dict(fan), cfg)
    else:
        d = fan_to_json_dict(fan)
        lines = [f"fan with {len(d['cones'])} cone(s); skeleton {d['skeleton']}; kappa1 = {d['kappa1']}"]
        for c in d["cones"]:
            lo = "[" if c["lower_closed"] else "("
            hi = "]" if c["upper_closed"] else ")"
            lines.append(
                f"  {lo}{tuple(c['lower'])}, {tuple(c['upper'])}{hi}  "
                f"kappa_sigma={c['kappa_sigma']}  basis: {'; '.join(c['basis'])}"
            )
        _emit("\n".join(lines) + "\n", cfg)
    return 3 if fan.partial else 0


def cmd_kappa(args, cfg: SessionConfig) -> int:
    fan = _fan_for(args, cfg)
    if fan.partial:
        _emit("fan truncated; kappa unavailable\n", cfg)
        return 3
    res = kappa1(fan)
    if cfg.out_format == "json":
        _emit_json(
            {
                "kappa1": res.kappa1,
                "shift_vector": list(res.shift_vector),
                "per_cone": [
                    {"lower": list(c.lower), "upper": list(c.upper), "kappa_sigma": k}
                    for c, k in res.per_cone
                ],
            },
            cfg,
        )
    else:
        lines = [f"kappa1 = {res.kappa1}; shift vector {res.shift_vector}"]
        lines += [f"  cone {tuple(c.lower)}..{tuple(c.upper)}: kappa_sigma = {k}" for c, k in res.per_cone]
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_divide(args, cfg: SessionConfig) -> int:
    sig = cfg.signature
    dividend = parse_operator(args.dividend, sig)
    divisors = [parse_operator(text, sig) for text in args.divisors]
    order = parse_order(args.order, sig)
    res = divide(dividend, divisors, order, budget=cfg.budget_div)
    payload = {
        "quotients": [operator_to_str(q, order) for q in res.quotients],
        "remainder": operator_to_str(res.remainder, order),
        "steps": res.step_count,
        "truncated": res.truncated,
    }
    if cfg.out_format == "json":
        _emit_json(payload, cfg)
    else:
        lines = [f"q{i + 1} = {s}" for i, s in enumerate(payload["quotients"])]
        lines.append(f"R = {payload['remainder']}")
        if res.truncated:
            lines.append("TRUNCATED: step budget exhausted")
        _emit("\n".join(lines) + "\n", cfg)
    return 3 if res.truncated else 0


def cmd_nf(args, cfg: SessionConfig) -> int:
    sig = cfg.signature
    operand = parse_operator(args.operand, sig)
    divisors = [parse_operator(text, sig) for text in args.gen]
    order = parse_order(args.order, sig)
    if args.raw:
        res = divide(operand, divisors, order, budget=cfg.budget_div)
        if res.truncated:
            _emit("TRUNCATED\n", cfg)
            return 3
        remainder = res.remainder
    else:
        basis = complete(divisors, order, budget=cfg.budget_sb)
        if basis.truncated:
            _emit("TRUNCATED: completion budget exhausted\n", cfg)
            return 3
        res = divide(operand, basis.elements, order, budget=cfg.budget_div)
        if res.truncated:
            _emit("TRUNCATED\n", cfg)
            return 3
        remainder = res.remainder
    if cfg.out_format == "json":
        _emit_json({"normal_form": operator_to_str(remainder, order)}, cfg)
    else:
        _emit(operator_to_str(remainder, order) + "\n", cfg)
    return 0


def cmd_lower(args, cfg: SessionConfig) -> int:
    fan = _fan_for(args, cfg)
    if fan.partial:
        _emit("fan truncated\n", cfg)
        return 3
    sig = cfg.signature.plain()
    target_dir = SlopeDirection.make(*_parse_ints(args.target))
    hits = [
        (cone, basis)
        for cone, basis in fan.cones
        if target_dir in cone.generators() and (args.cone is None or fan.cones.index((cone, basis)) == args.cone)
    ]
    if args.cone is not None:
        hits = [fan.cones[args.cone]] if target_dir in fan.cones[args.cone][0].generators() else []
    if not hits:
        raise PreconditionError(f"{tuple(target_dir)} is not a closure generator of any selected cone")
    cone, basis = hits[0]
    target_form = target_dir.form(fan.n)
    others = [g.form(fan.n) for g in cone.generators() if g != target_dir]
    p_op = parse_operator(args.operand, sig)
    witness = parse_operator(args.witness, sig)
    out = lower_order_step(
        p_op, target_form, others, basis, witness, budget=cfg.budget_div, interior=cone.interior_witness
    )
    if cfg.out_format == "json":
        _emit_json(
            {
                "lowered": operator_to_str(out),
                "ord_target_before": str(ord_L(p_op, target_form)),
                "ord_target_after": str(ord_L(out, target_form)),
            },
            cfg,
        )
    else:
        _emit(operator_to_str(out) + "\n", cfg)
    return 0


def _parse_query(text: str, sig: RingSignature) -> FiltrationQuery:
    kind, _, rest = text.partition(":")
    if kind == "V":
        return FiltrationQuery("V", w=_parse_ints(rest))
    if kind == "VL":
        coeffs, _, bound = rest.partition("@")
        if not bound:
            raise ParseError("VL query needs l1,..,lp@k", 0)
        return FiltrationQuery(
            "VL", form=v_form(sig.n, sig.p, _parse_fractions(coeffs)), bound=Fraction(bound)
        )
    if kind == "sigmaV":
        w_text, _, idx = rest.partition("@")
        if not idx:
            raise ParseError("sigmaV query needs w1,w2@cone_index", 0)
        return FiltrationQuery("sigmaV", w=_parse_ints(w_text), cone_index=int(idx))
    if kind == "Vbar":
        return FiltrationQuery("Vbar", w=_parse_ints(rest))
    raise ParseError(f"unknown filtration kind {kind!r}", 0)


def cmd_member(args, cfg: SessionConfig) -> int:
    fan = _fan_for(args, cfg)
    if fan.partial:
        _emit("fan truncated\n", cfg)
        return 3
    sig = cfg.signature.plain()
    element = ModuleElement(parse_operator(args.element, sig))
    query = _parse_query(args.query, sig)
    report = filtration_member(
        element, query, fan, budget=cfg.budget_div, iteration_budget=cfg.budget_lower
    )
    if isinstance(report.certificate, dict):
        cert = {str(k): operator_to_str(v) for k, v in report.certificate.items()}
    elif report.certificate is not None:
        cert = operator_to_str(report.certificate)
    else:
        cert = None
    payload = {
        "member": report.member,
        "status": report.status,
        "certificate": cert,
        "detail": report.detail,
    }
    if cfg.out_format == "json":
        _emit_json(payload, cfg)
    else:
        lines = [f"member: {report.member} ({report.status})"]
        if cert is not None:
            lines.append(f"certificate: {cert}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_assemble_b(args, cfg: SessionConfig) -> int:
    p = cfg.signature.p
    if args.f:
        fan = _fan_for(args, cfg)
        if fan.partial:
            _emit("fan truncated\n", cfg)
            return 3
        skeleton = [tuple(s) for s in fan.skeleton]
        kappa = list(kappa1(fan).shift_vector)
    else:
        if not args.skeleton:
            raise PreconditionError("assemble-b needs -f polynomials or an explicit --skeleton")
        skeleton = [tuple(_parse_ints(part)) for part in args.skeleton.split(";")]
        kappa = list(_parse_ints(args.kappa)) if args.kappa else [0] * p
    shift = _parse_ints(args.shift) if args.shift else (0,) * p
    factors = {}
    for spec_text in args.factor or []:
        key_text, _, poly_text = spec_text.partition("=")
        if not poly_text:
            raise ParseError("factor spec must look like a,b=l+1", 0)
        factors[tuple(_parse_ints(key_text))] = _parse_lambda_poly(poly_text)
    bf = BFactors(factors)
    product, parts = assemble_b(bf, tuple(kappa), tuple(shift), skeleton)
    factored = "*".join(f"({f.to_str()})" for f in parts) if parts else "1"
    if cfg.out_format == "json":
        _emit_json(
            {
                "b": factored,
                "expanded": product.to_str(),
                "degree": product.total_degree(),
                "skeleton": [list(s) for s in skeleton],
                "kappa": list(kappa),
                "v": list(shift),
            },
            cfg,
        )
    else:
        _emit(factored + "\n", cfg)
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vfan", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, with_f=False):
        sp.add_argument("-n", type=int, required=True, help="number of x variables")
        sp.add_argument("-p", type=int, required=True, help="number of t variables")
        sp.add_argument("--ring", choices=("d", "dz"), default="d", help="plain or homogenized ring")
        sp.add_argument("--budget-div", type=int, default=10**6)
        sp.add_argument("--budget-sb", type=int, default=10**6)
        sp.add_argument("--budget-lower", type=int, default=10**4)
        sp.add_argument("--format", choices=("text", "json", "svg"), default="text")
        sp.add_argument("--out", default=None, help="write output to a file instead of stdout")
        if with_f:
            sp.add_argument("-f", action="append", default=[], help="input polynomial in x (repeatable)")
            sp.add_argument("--shift", default=None, help="shift vector v1,..,vp")

    sp = sub.add_parser("sb", help="reduced minimal standard basis of generators")
    common(sp)
    sp.add_argument("-g", "--gen", action="append", required=True, help="generator (repeatable)")
    sp.add_argument("--order", required=True, help="base0 | L:.. | Vh:.. | tri:..@..")
    sp.set_defaults(func=cmd_sb)

    sp = sub.add_parser("fan", help="V-Groebner fan of the homogenized annihilator")
    common(sp, with_f=True)
    sp.set_defaults(func=cmd_fan)

    sp = sub.add_parser("kappa", help="kappa bound of the fan")
    common(sp, with_f=True)
    sp.set_defaults(func=cmd_kappa)

    sp = sub.add_parser("divide", help="division with remainder")
    common(sp)
    sp.add_argument("dividend")
    sp.add_argument("divisors", nargs="+")
    sp.add_argument("--order", required=True)
    sp.set_defaults(func=cmd_divide)

    sp = sub.add_parser("nf", help="normal form against (the completion of) generators")
    common(sp)
    sp.add_argument("operand")
    sp.add_argument("-g", "--gen", action="append", required=True)
    sp.add_argument("--order", required=True)
    sp.add_argument("--raw", action="store_true", help="divide by the generators as given")
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("lower", help="one order-lowering step on a representative")
    common(sp, with_f=True)
    sp.add_argument("--target", required=True, help="skeleton direction a,b")
    sp.add_argument("--cone", type=int, default=None, help="cone index (optional)")
    sp.add_argument("-P", "--operand", required=True)
    sp.add_argument("--witness", required=True)
    sp.set_defaults(func=cmd_lower)

    sp = sub.add_parser("member", help="filtration membership with certificate")
    common(sp, with_f=True)
    sp.add_argument("-m", "--element", required=True)
    sp.add_argument("--query", required=True, help="V:w | VL:l@k | sigmaV:w@i | Vbar:w")
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("assemble-b", help="assemble the candidate product polynomial")
    common(sp, with_f=True)
    sp.add_argument("--factor", action="append", help="a,b=poly in l (repeatable)")
    sp.add_argument("--skeleton", default=None, help="explicit skeleton a,b;a,b;..")
    sp.add_argument("--kappa", default=None, help="explicit kappa k1,..,kp")
    sp.set_defaults(func=cmd_assemble_b)

    return ap


def main(argv=None) -> int:
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (PreconditionError, ZeroOperandError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
