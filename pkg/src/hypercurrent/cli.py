"""Command-line front end.

Exit status is 0 on success, 1 when a verification fails and 2 for usage,
parse or curve errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .curve import CurveError, CurveSpec, curve_validate, parse_curve
from .current import bracket, parse_loop_element, structure_table, table_to_csv
from .exact import parse_rational
from .kaehler import (
    KaehlerOracle,
    WindowError,
    default_window,
    parse_one_form,
    reduce_form,
    ReductionWindow,
)
from .lie import LieAlgebraError, algebra_from_selector
from .parsing import ParseError
from .series import CoefficientTables, QFamilyError, default_order, integral_p_series, integral_q_series, p_series, q_series
from .verify import SUITES, reproduce_check, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    curve: str | None
    algebra: str = "sl2"
    order: int | None = None
    window: int | None = None
    trials: int = 200
    seed: int = 0
    format: str = "text"
    out: str | None = None
    both_routes: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if self.order is not None and self.order < 1:
            raise UsageError("--order must be at least 1")
        if self.window is not None and self.window < 1:
            raise UsageError("--window must be at least 1")

    def spec(self) -> CurveSpec:
        if not self.curve:
            raise UsageError("--curve is required for this command")
        return curve_validate(parse_curve(self.curve))


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--curve", help='p(t), for example "t^6 - 2*b*t^3 + 1"')
    p.add_argument("--algebra", default="sl2", help="sl2, slN:k or file:path (CSV rows a,b,c,value)")
    p.add_argument("--order", type=int, help="series truncation order (exclusive)")
    p.add_argument("--window", type=int, help="exponent window for random trials and the oracle")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--both-routes", action="store_true", help="compute series by recursion and by integration")
    return p


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(s) for s in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from exc
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="hypercurrent",
        description="Exact central extensions of hyperelliptic current algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("basis", parents=[common], help="list the central basis ω0..ωn")

    s = sub.add_parser("series", parents=[common], help="generating series P_i or Q_i")
    s.add_argument("family", choices=("p", "q"))
    s.add_argument("i", type=int)

    s = sub.add_parser("coeffs", parents=[common], help="coefficient table as k, i, polynomial")
    s.add_argument("family", choices=("p", "q"))
    s.add_argument("--index", type=int, help="only this i (default: all -n..-1)")
    s.add_argument("--range", type=_range, dest="krange", help="k (or m) range lo:hi")

    s = sub.add_parser("bracket", parents=[common], help="bracket of two loop elements")
    s.add_argument("left")
    s.add_argument("right")

    s = sub.add_parser("reduce", parents=[common], help="class of a 1-form in the central basis")
    s.add_argument("form", help='for example "t^3*u dt"')
    s.add_argument("--oracle", action="store_true", help="also reduce by exact elimination")
    s.add_argument("--at", action="append", default=[], metavar="NAME=VALUE",
                   help="rational parameter value for the oracle (repeatable)")

    s = sub.add_parser("structure", parents=[common], help="structure table over basis monomials")
    s.add_argument("--range", type=_range, dest="erange", default=(-1, 1))
    s.add_argument("--parity", choices=("even", "odd", "both"), default="both")

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("suite", choices=(*SUITES, "all"))

    s = sub.add_parser("reproduce", aliases=["paper"], parents=[common], help="recompute the reference examples and diff")
    s.add_argument("example", choices=("quartic", "hexic"))
    return parser


def _emit(text: str, cfg: RunConfig, stdout):
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def cmd_basis(cfg: RunConfig):
    spec = cfg.spec()
    names = [("ω0", "t^-1 dt")] + [(f"ω{k}", f"t^-{k}*u dt") for k in range(1, spec.n + 1)]
    if cfg.format == "json":
        return _dump_json({"curve": str(spec), "basis": [{"name": a, "form": b} for a, b in names]}), EXIT_OK
    if cfg.format == "csv":
        return "name,form\n" + "\n".join(f"{a},{b}" for a, b in names), EXIT_OK
    return "\n".join(f"{a} = {b}" for a, b in names), EXIT_OK


def cmd_series(cfg: RunConfig, family: str, i: int):
    spec = cfg.spec()
    if not -spec.n <= i <= -1:
        raise UsageError(f"i must lie in [-{spec.n}, -1], got {i}")
    order = cfg.order or default_order(spec)
    tables = CoefficientTables(spec)
    rec_fn, int_fn = (p_series, integral_p_series) if family == "p" else (q_series, integral_q_series)
    rec = rec_fn(i, order, spec, tables)
    other = int_fn(i, order, spec, tables) if cfg.both_routes else None
    status = EXIT_OK if other is None or other == rec else EXIT_FAIL
    label = f"{family.upper()}_{i}"
    if cfg.format == "json":
        if other is None:
            return _dump_json(rec.to_json()), status
        return _dump_json({"recursion": rec.to_json(), "integral": other.to_json(), "equal": other == rec}), status
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "recursion"] + (["integral"] if other is not None else []))
        for item in rec.to_json():
            row = [item["exponent"], item["coefficient"]]
            if other is not None:
                row.append(str(other.coeff(Fraction(item["exponent"]))))
            w.writerow(row)
        return buf.getvalue(), status
    lines = [f"{label}(z) = {rec}"]
    if other is not None:
        lines.append(f"{label}(z) by integration = {other}")
        lines.append("routes agree" if other == rec else f"routes differ at z^{other.difference_terms(rec)}")
    return "\n".join(lines), status


def cmd_coeffs(cfg: RunConfig, family: str, index: int | None, krange):
    spec = cfg.spec()
    n = spec.n
    tables = CoefficientTables(spec)
    indices = [index] if index is not None else list(range(-n, 0))
    for i in indices:
        if not -n <= i <= -1:
            raise UsageError(f"i must lie in [-{n}, -1], got {i}")
    if family == "p":
        lo, hi = krange or (-n, 3 * n)
        table = tables.p
    else:
        lo, hi = krange or (1, 4 * n)
        if lo < 1:
            raise UsageError("Q coefficients are indexed by m >= 1")
        table = tables.q
    rows = [(k, i, table(k, i)) for i in indices for k in range(lo, hi + 1)]
    if cfg.format == "json":
        return _dump_json([{"k": k, "i": i, "poly": str(v)} for k, i, v in rows]), EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k" if family == "p" else "m", "i", "poly"])
    for k, i, v in rows:
        w.writerow([k, i, str(v)])
    return buf.getvalue(), EXIT_OK


def cmd_bracket(cfg: RunConfig, left: str, right: str):
    spec = cfg.spec()
    alg = algebra_from_selector(cfg.algebra)
    A = parse_loop_element(left, alg, spec)
    B = parse_loop_element(right, alg, spec)
    res = bracket(A, B, alg, spec, CoefficientTables(spec))
    if cfg.format == "json":
        return _dump_json(res.to_json()), EXIT_OK
    if cfg.format == "csv":
        data = res.to_json()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "exp", "parity", "coefficient"])
        for t in data["terms"]:
            w.writerow([t["x"], t["exp"], t["parity"], t["coefficient"]])
        c = data["central"]
        for k, v in enumerate([c["omega0"], *c["omega"]]):
            if v != "0":
                w.writerow([f"omega{k}", "", "", v])
        return buf.getvalue(), EXIT_OK
    return f"[{A}, {B}] = {res}", EXIT_OK


def _parse_point(items) -> dict[str, Fraction]:
    point = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        try:
            point[name.strip()] = parse_rational(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational value in {item!r}") from exc
    return point


def cmd_reduce(cfg: RunConfig, form_text: str, use_oracle: bool, at):
    spec = cfg.spec()
    form = parse_one_form(form_text, spec)
    vec = reduce_form(form, spec, CoefficientTables(spec))
    point = _parse_point(at)
    status = EXIT_OK
    brute = None
    if use_oracle:
        missing = [p for p in spec.params if p not in point]
        if missing:
            raise UsageError(f"--oracle needs values for {', '.join(missing)} (use --at NAME=VALUE)")
        curve_validate(spec.instantiate(point))
        exps = [e for part in (form.dt, form.udt) for e in part.coeffs] or [0]
        span = max(abs(e) for e in exps)
        window = ReductionWindow(cfg.window, point) if cfg.window else default_window(spec, span, point)
        brute = KaehlerOracle(spec, window).reduce(form)
        if brute != vec.substitute(point):
            status = EXIT_FAIL
    if cfg.format == "json":
        out = {"form": form_text, "class": vec.to_json()}
        if brute is not None:
            out["oracle"] = {"point": {k: str(v) for k, v in point.items()}, "class": brute.to_json(),
                             "equal": status == EXIT_OK}
        return _dump_json(out), status
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["basis", "closed_form"] + (["oracle"] if brute is not None else []))
        for k, c in enumerate(vec.coords):
            w.writerow([f"omega{k}", str(c)] + ([str(brute.coords[k])] if brute is not None else []))
        return buf.getvalue(), status
    lines = [f"{form_text} = {vec}"]
    if brute is not None:
        shown = ", ".join(f"{k}={v}" for k, v in point.items()) or "numeric curve"
        lines.append(f"at {shown}: closed form {vec.substitute(point)}, elimination {brute}")
        lines.append("agree" if status == EXIT_OK else "DISAGREE")
    return "\n".join(lines), status


def cmd_structure(cfg: RunConfig, erange, parity: str):
    spec = cfg.spec()
    alg = algebra_from_selector(cfg.algebra)
    lo, hi = erange
    parities = ("even", "odd") if parity == "both" else (parity,)
    rows = structure_table(spec, alg, range(lo, hi + 1), parities)
    if cfg.format == "json":
        return _dump_json(rows), EXIT_OK
    if cfg.format == "csv":
        return table_to_csv(rows), EXIT_OK
    lines = []
    for r in rows:
        L, R = r["left"], r["right"]
        lhs = f"[{L['x']}⊗{_mono(L)}, {R['x']}⊗{_mono(R)}]"
        terms = " + ".join(f"{_coef(t['coefficient'])}{t['x']}⊗{_mono(t)}" for t in r["result"]["terms"])
        c = r["result"]["central"]
        cent = " + ".join(f"{_coef(v)}ω{k}" for k, v in enumerate([c["omega0"], *c["omega"]]) if v != "0")
        lines.append(f"{lhs} = {' + '.join(s for s in (terms, cent) if s) or '0'}")
    return "\n".join(lines), EXIT_OK


def _coef(c: str) -> str:
    if c == "1":
        return ""
    return f"({c})*" if " " in c or c.startswith("-") else f"{c}*"


def _mono(d) -> str:
    e = int(d["exp"])
    base = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
    if d["parity"] == "odd":
        return "u" if e == 0 else f"{base}*u"
    return base


def cmd_verify(cfg: RunConfig, suite: str):
    spec = cfg.spec()
    alg = algebra_from_selector(cfg.algebra)
    results = run_suites([suite], spec, alg, cfg.trials, cfg.seed, cfg.order, cfg.window)
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        data = [{"suite": r.name, "passed": r.passed, "checks": r.checks, "failures": r.failures,
                 "notes": [l.strip() for l in r.lines]} for r in results]
        return _dump_json({"passed": ok, "seed": cfg.seed, "suites": data}), EXIT_OK if ok else EXIT_FAIL
    if cfg.format == "csv":
        lines = ["suite,passed,checks,failures"] + [f"{r.name},{r.passed},{r.checks},{r.failures}" for r in results]
        return "\n".join(lines), EXIT_OK if ok else EXIT_FAIL
    text = "\n".join(r.report() for r in results)
    return text + f"\n{'all suites passed' if ok else 'verification FAILED'} (seed {cfg.seed})", EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(cfg: RunConfig, example: str):
    res = reproduce_check(example)
    status = EXIT_OK if res.passed else EXIT_FAIL
    if cfg.format == "json":
        return _dump_json({"example": example, "passed": res.passed, "checks": res.checks,
                           "failures": res.failures, "lines": [l.strip() for l in res.lines]}), status
    return res.report(), status


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.curve, args.algebra, args.order, args.window, args.trials, args.seed,
                        args.format, args.out, args.both_routes)
        cmd = args.command
        if cmd == "basis":
            text, status = cmd_basis(cfg)
        elif cmd == "series":
            text, status = cmd_series(cfg, args.family, args.i)
        elif cmd == "coeffs":
            text, status = cmd_coeffs(cfg, args.family, args.index, args.krange)
        elif cmd == "bracket":
            text, status = cmd_bracket(cfg, args.left, args.right)
        elif cmd == "reduce":
            text, status = cmd_reduce(cfg, args.form, args.oracle, args.at)
        elif cmd == "structure":
            text, status = cmd_structure(cfg, args.erange, args.parity)
        elif cmd == "verify":
            text, status = cmd_verify(cfg, args.suite)
        else:
            text, status = cmd_reproduce(cfg, args.example)
    except ParseError as exc:
        stderr.write(f"error: {exc.render()}\n")
        return EXIT_USAGE
    except (UsageError, CurveError, LieAlgebraError, QFamilyError, WindowError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    _emit(text, cfg, stdout)
    return status


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
