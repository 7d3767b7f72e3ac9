"""``cocovex`` command line.

Output is line-oriented ``key=value`` with exact rational strings (or one JSON
object with ``--format json``).  Exit codes: 0 pass, 1 fail, 2 inconclusive,
3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import io
from .config import RunConfig, caps
from .errors import BodyValidationError, CapabilityError, ContractError, ParseError

EXIT = {"pass": 0, "fail": 1, "inconclusive": 2}
USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class CliReport:
    """Result of one command: ordered fields plus an overall status."""

    status: str = "pass"
    fields: list[tuple[str, object]] = field(default_factory=list)
    # plain text lines that replace the key=value rendering in text mode
    text: list[str] | None = None

    def add(self, key: str, value) -> "CliReport":
        self.fields.append((key, value))
        return self

    def merge(self, status: str):
        order = ["pass", "inconclusive", "fail"]
        if order.index(status) > order.index(self.status):
            self.status = status

    def render(self, fmt: str) -> str:
        if fmt == "json":
            keys = [k for k, _ in self.fields]
            obj: dict = {}
            for k, v in self.fields:
                if keys.count(k) > 1:  # repeated keys (chain terms) become a list
                    obj.setdefault(k, []).append(_jsonable(v))
                else:
                    obj[k] = _jsonable(v)
            obj["status"] = self.status
            return json.dumps(obj, indent=2) + "\n"
        if self.text is not None:
            return "".join(line + "\n" for line in self.text)
        lines = [f"{k}={_text(v)}" for k, v in self.fields]
        lines.append(f"status={self.status}")
        return "\n".join(lines) + "\n"


def _text(v) -> str:
    if isinstance(v, dict):
        return " ".join(f"{k}:{_text(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        if all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in v):
            return io.fmt_vec(v)
        if all(isinstance(x, str) for x in v):
            return "; ".join(v)
        return " ".join(_text(x) for x in v)
    if isinstance(v, Fraction):
        return io.fmt(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, Fraction):
        return io.fmt(v)
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


def _report_fields(out: CliReport, rep, prefix: str = ""):
    """Copy a library ``Report`` into the CLI report."""
    out.add(f"{prefix}{rep.name}", rep.status)
    out.merge(rep.status)
    for k, v in rep.details.items():
        out.add(f"{prefix}{rep.name}.{k}", v)
    if rep.witness is not None:
        out.add(f"{prefix}{rep.name}.witness", _witness(rep.witness))


def _witness(w):
    if isinstance(w, (list, tuple)):
        return [_witness(x) for x in w]
    if isinstance(w, (int, Fraction)):
        return w
    return str(w)


def _step_denominator(cfg: RunConfig) -> int | None:
    return None if cfg.grid_step is None else cfg.grid_step.denominator


# ---------------------------------------------------------------------------
# commands


def cmd_body_validate(cfg: RunConfig, args) -> CliReport:
    from .coconvex import covolume

    out = CliReport()
    try:
        a = io.load_body(args.file)
    except BodyValidationError as e:
        out.status = "fail"
        return out.add("valid", "false").add("error", type(e).__name__).add("reason", str(e))
    out.add("valid", "true").add("dim", a.dim)
    out.add("basePoints", [list(p) for p in a.base_points])
    out.add("tstar", a.tstar).add("covolume", covolume(a))
    return out


def cmd_covolume(cfg: RunConfig, args) -> CliReport:
    from .coconvex import covolume

    v = covolume(io.load_body(args.file))
    out = CliReport().add("covolume", v)
    out.text = [io.fmt(v)]
    return out


def cmd_oplus(cfg: RunConfig, args) -> CliReport:
    from .coconvex import covolume, oplus

    a, b = io.load_body(args.a), io.load_body(args.b)
    c = oplus(a, b)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(io.dumps(io.body_to_obj(c)))
    out = CliReport()
    out.add("basePoints", [list(p) for p in c.base_points])
    out.add("tstar", c.tstar).add("covolume", covolume(c))
    return out


def cmd_af_check(cfg: RunConfig, args) -> CliReport:
    from .mixed import (
        LinearFamilyCoconvex,
        af_form,
        check_af_convex,
        check_reversed_inequalities,
        check_theorem_a,
        volume_polynomial_coconvex,
        volume_polynomial_convex,
    )

    fam = io.load_family(args.family)
    rng = random.Random(cfg.seed)
    out = CliReport()
    if isinstance(fam, LinearFamilyCoconvex):
        vp = volume_polynomial_coconvex(fam, cfg.seed)
        form = af_form(fam, vp)
        out.add("kind", "coconvex").add("matrix", [list(r) for r in form.matrix])
        _report_fields(out, check_theorem_a(fam, rng))
        n = len(fam.bodies)
        u = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n))
        v = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n))
        out.add("u", u).add("v", v)
        _report_fields(out, check_reversed_inequalities(fam, u, v, vp, cfg.precision_cap))
    elif hasattr(fam, "bodies"):
        vp = volume_polynomial_convex(fam, cfg.seed)
        form = af_form(fam, vp)
        out.add("kind", "convex").add("matrix", [list(r) for r in form.matrix])
        _report_fields(out, check_af_convex(fam))
    else:
        raise UsageError("af check needs a coconvex or convex family")
    return out


def cmd_polygon2d_sos(cfg: RunConfig, args) -> CliReport:
    from .mixed import inertia
    from .polygon2d import WedgeFamily, sos_decomposition, verify_sos

    fam = io.load_family(args.family)
    if not isinstance(fam, WedgeFamily):
        raise UsageError("polygon2d sos needs a wedge family")
    dec = sos_decomposition(fam)
    out = CliReport()
    for k, (c, row) in enumerate(zip(dec.coeffs, dec.forms), 1):
        out.add(f"c_{k}", c).add(f"lambda_{k}", row)
    out.add("inertia", inertia(dec.quadratic_form().quadratic_matrix()).as_tuple())
    rep = verify_sos(fam, cfg.seed)
    rep.details.pop("c", None)
    _report_fields(out, rep)
    return out


def cmd_chains_verify_b(cfg: RunConfig, args) -> CliReport:
    from .chains import verify_theoremB

    a, b = io.load_body(args.a), io.load_body(args.b)
    out = CliReport()
    _report_fields(out, verify_theoremB(a, b, _step_denominator(cfg)))
    return out


def cmd_chains_verify_inverse(cfg: RunConfig, args) -> CliReport:
    from .chains import inverse_chain, verify_inverse_formula

    a = io.load_body(args.file)
    out = CliReport()
    if args.dump:
        for c, p in inverse_chain(a).terms:
            out.add("term", f"{c:+d} conv " + " ".join(io.fmt_vec(v) for v in p.vertices))
    _report_fields(out, verify_inverse_formula(a, _step_denominator(cfg)))
    return out


def _genfun_text(out: CliReport, g, extra: list[str]):
    out.add("terms", str(g).splitlines())
    out.text = str(g).splitlines() + extra


def cmd_genfun_coconvex(cfg: RunConfig, args) -> CliReport:
    from .genfun import genfun_coconvex, genfun_coconvex_truncated, genfun_enumeration, genfun_equal

    a = io.load_body(args.file)
    g = genfun_coconvex(a, cfg.seed)
    out = CliReport()
    extra = []
    if args.check:
        other = genfun_enumeration(a) if args.check == "enumeration" else genfun_coconvex_truncated(a, seed=cfg.seed)
        ok = genfun_equal(g, other, cfg.seed)
        out.status = "pass" if ok else "fail"
        out.add(f"check.{args.check}", out.status)
        extra = [f"check.{args.check}={out.status}"]
    _genfun_text(out, g, extra)
    return out


def cmd_genfun_brion(cfg: RunConfig, args) -> CliReport:
    from .genfun import brion_convex, genfun_enumeration, genfun_equal

    p = io.load_polytope(args.file)
    g = brion_convex(p, cfg.seed)
    out = CliReport()
    extra = []
    if args.check:
        ok = genfun_equal(g, genfun_enumeration(p), cfg.seed)
        out.status = "pass" if ok else "fail"
        out.add("check.enumeration", out.status)
        extra = [f"check.enumeration={out.status}"]
    _genfun_text(out, g, extra)
    return out


def cmd_ehrhart(cfg: RunConfig, args) -> CliReport:
    from .ehrhart import check_reciprocity, ehrhart_interpolate
    from .mixed import LinearFamilyCoconvex

    fam = io.load_family(args.family)
    if not isinstance(fam, LinearFamilyCoconvex):
        raise UsageError("ehrhart needs a coconvex family")
    e = ehrhart_interpolate(fam.bodies, cfg.seed)
    out = CliReport()
    text = [f"E(m) = {e.poly}"]
    for mono, c in e.poly.coeffs:
        key = "coeff" + io.fmt_vec(mono)
        out.add(key, c)
        text.append(f"{key}={io.fmt(c)}")
    if args.reciprocity:
        r = check_reciprocity(fam.bodies, e, cfg.seed)
        out.add("E(-1)", r.e_minus_one).add("RHS", r.rhs_chain)
        if r.rhs_direct is not None:
            out.add("RHS.direct", r.rhs_direct)
        out.status = "pass" if r.ok else "fail"
        text.append(f"E(-1) = {io.fmt(r.e_minus_one)}; RHS = {r.rhs_chain}")
    text.append(f"status={out.status}")
    out.text = text
    return out


def cmd_suite(cfg: RunConfig, args) -> CliReport:
    from .acceptance import run_suite

    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError(f"--only expects comma separated criterion numbers, got {args.only!r}") from None
        if any(n not in range(1, 11) for n in only):
            raise UsageError("criterion numbers run from 1 to 10")
    results = run_suite(cfg.seed, only, enforce_budget=not args.no_budget, jobs=args.jobs)
    out = CliReport()
    for r in results:
        out.add(f"criterion.{r.number}", r.status)
        out.add(f"criterion.{r.number}.detail", r.detail)
        out.add(f"criterion.{r.number}.seconds", f"{r.seconds:.2f}")
        out.merge(r.status)
    out.text = [r.line() for r in results] + [f"status={out.status}"]
    return out


# ---------------------------------------------------------------------------


def _rational_arg(s: str) -> Fraction:
    try:
        return io.rational(s, "argument")
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")
    common.add_argument("--grid-step", type=_rational_arg, default=None, help="verification grid step 1/q")
    common.add_argument("--bbox-cap", type=int, default=None, help="max lattice points in a grid")
    common.add_argument("--precision-cap", type=int, default=None, help="max bits for root comparisons")
    common.add_argument("--expansion-cap", type=int, default=None, help="max terms in a chain product")

    p = _Parser(prog="cocovex", description="Exact computations with coconvex bodies.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    body = sub.add_parser("body", help="body files").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = body.add_parser("validate", parents=[common], help="validate a body, print tstar and covolume")
    s.add_argument("file")
    s.set_defaults(func=cmd_body_validate)

    s = sub.add_parser("covolume", parents=[common], help="print the covolume of a body")
    s.add_argument("file")
    s.set_defaults(func=cmd_covolume)

    s = sub.add_parser("oplus", parents=[common], help="coconvex sum of two bodies")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--out", help="write the resulting body file here")
    s.set_defaults(func=cmd_oplus)

    af = sub.add_parser("af", help="Aleksandrov-Fenchel forms").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = af.add_parser("check", parents=[common], help="inertia and inequalities for a family")
    s.add_argument("--family", required=True)
    s.set_defaults(func=cmd_af_check)

    pg = sub.add_parser("polygon2d", help="planar wedge families").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = pg.add_parser("sos", parents=[common], help="sum of squares decomposition")
    s.add_argument("--family", required=True)
    s.set_defaults(func=cmd_polygon2d_sos)

    ch = sub.add_parser("chains", help="convex chain identities").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = ch.add_parser("verify-b", parents=[common], help="product rule for a pair of bodies")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_chains_verify_b)
    s = ch.add_parser("verify-inverse", parents=[common], help="inverse formula for one body")
    s.add_argument("file")
    s.add_argument("--dump", action="store_true", help="print the inverse chain terms")
    s.set_defaults(func=cmd_chains_verify_inverse)

    gf = sub.add_parser("genfun", help="generating functions").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = gf.add_parser("coconvex", parents=[common], help="G(A) by the vertex formula")
    s.add_argument("file")
    s.add_argument("--check", choices=("enumeration", "truncation"))
    s.set_defaults(func=cmd_genfun_coconvex)
    s = gf.add_parser("brion", parents=[common], help="G(P) of a convex polytope by Brion")
    s.add_argument("file")
    s.add_argument("--check", choices=("enumeration",))
    s.set_defaults(func=cmd_genfun_brion)

    s = sub.add_parser("ehrhart", parents=[common], help="Ehrhart polynomial of a family")
    s.add_argument("--family", required=True)
    s.add_argument("--reciprocity", action="store_true")
    s.set_defaults(func=cmd_ehrhart)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance criteria")
    s.add_argument("--only", help="comma separated criterion numbers")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--no-budget", action="store_true", help="do not fail criteria on time budgets")
    s.set_defaults(func=cmd_suite)
    return p


def make_config(args) -> RunConfig:
    from . import chains, geometry, mixed

    return RunConfig(
        command=args.command + (f" {args.sub}" if getattr(args, "sub", None) else ""),
        inputs=[getattr(args, k) for k in ("file", "a", "b", "family") if getattr(args, k, None)],
        seed=args.seed,
        grid_step=args.grid_step,
        bbox_cap=args.bbox_cap or geometry.LATTICE_CAP,
        precision_cap=args.precision_cap or mixed.ROOT_PRECISION_CAP,
        expansion_cap=args.expansion_cap or chains.EXPANSION_CAP,
        output_format=args.output_format,
    )


def run(cfg: RunConfig, args) -> CliReport:
    with caps(cfg):
        return args.func(cfg, args)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors (3) and --help (0)
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    try:
        cfg = make_config(args)
    except ValueError as e:
        print(f"cocovex: error: {e}", file=sys.stderr)
        return USAGE_ERROR
    try:
        out = run(cfg, args)
    except (ParseError, UsageError) as e:
        print(f"cocovex: error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except CapabilityError as e:
        print(f"cocovex: capability limit: {e}", file=sys.stderr)
        return EXIT["inconclusive"]
    except ContractError as e:
        print(f"cocovex: error: {type(e).__name__}: {e}", file=sys.stderr)
        return USAGE_ERROR
    sys.stdout.write(out.render(cfg.output_format))
    return EXIT[out.status]


if __name__ == "__main__":
    sys.exit(main())
