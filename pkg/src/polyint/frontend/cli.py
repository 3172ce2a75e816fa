"""Command-line driver: polyint <integrate|derive|verify|descend|tensor-check>."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from ..errors import DomainError, ParseError, PreconditionError
from ..logsym import as_logpoly
from .parser import parse
from .render import SCHEMA, integral_payload, integral_text

EXIT_OK, EXIT_NONE, EXIT_ERROR = 0, 1, 2


@dataclass
class CliResult:
    status: str
    payload: dict = field(default_factory=dict)
    text: str = ""

    @property
    def exit_code(self):
        if self.status in ("ParseError", "DomainError"):
            return EXIT_ERROR
        if self.status in ("NoIntegralFound", "NotVerified"):
            return EXIT_NONE
        return EXIT_OK

    def json(self):
        return json.dumps({"schema": SCHEMA, "status": self.status, **self.payload})


def _integrated(expr):
    return CliResult("Integrated", integral_payload(expr), integral_text(expr))


def _integrand(args):
    p = parse(args.expr[0], var=args.var)
    if p.is_integral:
        raise DomainError("the integrand may not contain polylog terms")
    return p.tower, as_logpoly(p.tower, p.value)


def cmd_integrate(args):
    from ..engine.dilog import integrate_dilog

    tower, f = _integrand(args)
    res = integrate_dilog(tower, f)
    if not res:
        return CliResult("NoIntegralFound", {"message": res.reason}, res.reason)
    return _integrated(res)


def cmd_derive(args):
    p = parse(args.expr[0], var=args.var)
    d = p.value.derive() if p.is_integral else as_logpoly(p.tower, p.value).derive()
    text = d.text()
    return CliResult("Derived", {"value": text}, text)


def cmd_verify(args):
    from ..engine.terms import IntegralExpr, verify

    if args.claim is None:
        raise DomainError("verify needs --claim")
    tower, f = _integrand(args)
    c = parse(args.claim, tower=tower)
    claim = c.value if c.is_integral else IntegralExpr(c.tower, as_logpoly(c.tower, c.value))
    ok = verify(claim, as_logpoly(c.tower, f))
    status = "Verified" if ok else "NotVerified"
    return CliResult(status, {"message": status}, status)


def cmd_descend(args):
    from ..engine.descent import descend_exp, descend_prim
    from ..engine.terms import IntegralExpr

    p = parse(args.expr[0], var=args.var)
    expr = p.value if p.is_integral else IntegralExpr(p.tower, as_logpoly(p.tower, p.value))
    t = expr.tower
    lv = max((t.level_of(tm.h) for tm in expr.terms), default=-1)
    if lv < 1:
        res = expr
    elif t.monomials[lv].kind == "exp":
        res = descend_exp(expr)
    else:
        res = descend_prim(expr)
    if not res:
        return CliResult("NoIntegralFound", {"message": res.reason}, res.reason)
    return _integrated(res)


def cmd_tensor_check(args):
    from ..engine.prepext import prep_ext
    from ..places import place_text
    from ..tensor2 import is_symmetric

    tower = None
    hs = []
    for text in args.expr:
        p = parse(text, var=args.var, tower=tower)
        if p.is_integral or not isinstance(p.value, type(p.tower.field.one)):
            raise DomainError(f"{text!r} is not a field element")
        tower = p.tower
        hs.append(p.value)
    data = prep_ext(tower, [tower(h) for h in hs])
    sym = [is_symmetric(data.bridge_residual(i)) for i in range(len(hs))]
    t = data.tower
    payload = {
        "place": place_text(t, data.place),
        "psi": [t.text(g) for g in data.psi],
        "u": [t.text(t(u)) for u in data.u],
        "v": [t.text(t(v)) for v in data.v],
        "tags": data.tags,
        "checks": data.checks(),
        "symmetric": sym,
    }
    lines = [f"{k}: {v}" for k, v in payload.items()]
    status = "Symmetric" if all(sym) else "NotSymmetric"
    return CliResult(status, payload, "\n".join(lines))


COMMANDS = {
    "integrate": cmd_integrate,
    "derive": cmd_derive,
    "verify": cmd_verify,
    "descend": cmd_descend,
    "tensor-check": cmd_tensor_check,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="polyint", description="Integration with dilogarithmic terms.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("expr", nargs="+", help="expression (tensor-check accepts several h)")
    ap.add_argument("--var", default="x", help="name of the base variable")
    ap.add_argument("--json", action="store_true", help="emit polyint-1 JSON")
    ap.add_argument("--claim", help="claimed antiderivative for verify")
    return ap


_VALUED = ("--var", "--claim")
_FLAGS = ("--json", "-h", "--help")


def _arrange(argv):
    """Move options first so that expressions such as '-log(x)' stay positional."""
    opts, pos = [], []
    it = iter(argv)
    for a in it:
        if a == "--":
            pos.extend(it)
        elif a in _VALUED:
            opts += [a, next(it, "")]
        elif a.split("=", 1)[0] in _VALUED or a in _FLAGS or a[:2] == "--" and a[2:3].isalpha():
            opts.append(a)
        else:
            pos.append(a)
    return opts + ["--"] + pos


def cli_run(argv) -> CliResult:
    """Parse argv and run; argparse errors exit with status 2."""
    args = build_parser().parse_args(_arrange(list(argv)))
    if args.command != "tensor-check" and len(args.expr) != 1:
        return CliResult("ParseError", {"message": "expected exactly one expression"}, "expected exactly one expression")
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        return CliResult("ParseError", {"message": str(exc)}, str(exc))
    except (DomainError, PreconditionError) as exc:
        return CliResult("DomainError", {"message": str(exc)}, str(exc))


def main(argv=None):
    res = cli_run(sys.argv[1:] if argv is None else argv)
    args_json = "--json" in (sys.argv[1:] if argv is None else argv)
    out = sys.stdout if res.exit_code == EXIT_OK else sys.stderr
    if args_json:
        print(res.json())
    else:
        print(res.text if res.exit_code != EXIT_ERROR else f"error: {res.text}", file=out)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
