"""Command line front end: ``coxsp analyze|reduce|gamma|hecke|schatten|dot <file>``."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .coxeter import (
    BallCapExceeded,
    CoxeterError,
    CoxeterSystem,
    GroupElement,
    ParseError,
    default_max_elements,
    m_reduce,
)
from .diagram import (
    Verdict,
    decide_gradient_sp,
    has_cyclic_parity_path,
    hecke_interface_set,
    is_hyperbolic_right_angled,
    is_small_at_infinity,
    to_dot,
)
from .gamma import gamma_lp_norm, gamma_table, tilde_gamma_table
from .hecke import HeckeElement, HeckeParams, InvalidHeckeParams, hecke_multiply, hecke_s2_norm, psi_hecke
from .lengths import InvalidLengthSpec, LengthSpec, odd_components, parse_weights
from .spectral import psi_group_matrix, schatten_norm, spectral_gap_check

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class VerdictLine:
    name: str
    status: Verdict
    rationale: str
    provenance: str = ""


@dataclass
class AnalysisReport:
    summary: list[tuple[str, str]]
    verdicts: list[VerdictLine]
    numeric: list[tuple[str, str]] = field(default_factory=list)

    def to_text(self) -> str:
        out = ["system"]
        out += [f"  {k}: {v}" for k, v in self.summary]
        out.append("verdicts")
        for v in self.verdicts:
            out.append(f"  {v.name}: {v.status}")
            out.append(f"    why: {v.rationale}")
            if v.provenance:
                out.append(f"    basis: {v.provenance}")
        if self.numeric:
            out.append("numbers")
            out += [f"  {k}: {v}" for k, v in self.numeric]
        return "\n".join(out) + "\n"

    def to_tsv(self) -> str:
        out = [f"system\t{k}\t{v}" for k, v in self.summary]
        out += [f"verdict\t{v.name}\t{v.status}\t{v.rationale}\t{v.provenance}" for v in self.verdicts]
        out += [f"number\t{k}\t{v}" for k, v in self.numeric]
        return "\n".join(out) + "\n"


# argument helpers -------------------------------------------------------------


def _load(path: str) -> CoxeterSystem:
    from .coxeter import parse_system

    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    return parse_system(text)


def _parse_word(system: CoxeterSystem, tokens: Sequence[str] | str) -> tuple[int, ...]:
    if isinstance(tokens, str):
        tokens = [tokens]
    flat = [t for tok in tokens for t in tok.replace(",", " ").split()]
    names = {system.name(i): i for i in range(system.rank)}
    word = []
    for t in flat:
        if t == "e":
            continue
        if t in names:
            word.append(names[t])
            continue
        try:
            i = int(t)
        except ValueError:
            raise UsageError(f"unknown generator {t!r}") from None
        if not 1 <= i <= system.rank:
            raise UsageError(f"generator {i} not in 1..{system.rank}")
        word.append(i - 1)
    return tuple(word)


def _parse_generator(system: CoxeterSystem, token: str, flag: str) -> int:
    word = _parse_word(system, token)
    if len(word) != 1:
        raise UsageError(f"{flag} expects a single generator")
    return word[0]


def _parse_p(token: str) -> float:
    if token.lower() in ("inf", "infinity"):
        return math.inf
    try:
        p = float(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad exponent {token!r}") from None
    if p < 1:
        raise UsageError("exponents must lie in [1, inf]")
    return p


def _spec(system: CoxeterSystem, weights: str | None) -> LengthSpec:
    spec = LengthSpec.standard(system.rank) if weights is None else parse_weights(weights)
    return spec.validate(system)


def _fmt_word(system: CoxeterSystem, w: GroupElement | Sequence[int]) -> str:
    word = w.word if isinstance(w, GroupElement) else tuple(w)
    return " ".join(str(i + 1) for i in word) if word else "e"


def _fmt_p(p: float) -> str:
    return "inf" if p == math.inf else f"{p:g}"


def _summary(system: CoxeterSystem) -> list[tuple[str, str]]:
    labels = ", ".join(f"m({i + 1},{j + 1})={system.label(i, j)}" for i, j in system.pairs())
    comps = " ".join("{" + ",".join(system.name(i) for i in sorted(c)) + "}" for c in odd_components(system))
    out = [
        ("rank", str(system.rank)),
        ("generators", " ".join(system.name(i) for i in range(system.rank))),
        ("labels", labels or "none"),
        ("right-angled", "yes" if system.is_right_angled else "no"),
        ("odd components", comps),
    ]
    if system.defaulted:
        out.append(("defaulted to inf", " ".join(f"({i + 1},{j + 1})" for i, j in system.defaulted)))
    return out


# commands -------------------------------------------------------------------


def cmd_analyze(system: CoxeterSystem, args) -> AnalysisReport:
    verdicts = []
    grad = decide_gradient_sp(system)
    verdicts.append(VerdictLine("gradient-S_p", grad.verdict, grad.rationale, grad.provenance))
    small = is_small_at_infinity(system)
    verdicts.append(VerdictLine("small-at-infinity", small.verdict, small.rationale, small.provenance))
    cyc = has_cyclic_parity_path(system)
    why = cyc.reason + (f"; witness {cyc.witness.format(system)}" if cyc.witness else "")
    verdicts.append(
        VerdictLine("cyclic-parity-path", Verdict.YES if cyc.exists else Verdict.NO, why, "forest characterization")
    )
    if system.is_right_angled:
        hyp, quad = is_hyperbolic_right_angled(system)
        why = (
            "no two free pairs commute with each other"
            if hyp
            else "free pairs {%s,%s} and {%s,%s} commute crosswise" % tuple(system.name(i) for i in quad)
        )
        verdicts.append(
            VerdictLine("hyperbolic", Verdict.YES if hyp else Verdict.NO, why, "commuting free pairs criterion")
        )
        iface, clique = hecke_interface_set(system)
        names = "{" + ",".join(system.name(i) for i in sorted(iface)) + "}"
        why = f"interface set {names} " + ("pairwise commutes" if clique else "does not pairwise commute")
        verdicts.append(
            VerdictLine("hecke-clique-hypothesis", Verdict.YES if clique else Verdict.NO, why, "interface set")
        )
    else:
        verdicts.append(VerdictLine("hyperbolic", Verdict.NA, "criterion needs a right-angled system"))
        verdicts.append(VerdictLine("hecke-clique-hypothesis", Verdict.NA, "criterion needs a right-angled system"))

    numeric: list[tuple[str, str]] = []
    if args.radius is not None:
        spec = _spec(system, args.weights)
        numeric.append(("length", spec.describe(system)))
        for u in range(system.rank):
            for w in range(system.rank):
                table = gamma_table(system, spec, u, w, args.radius, args.max_elements)
                if not table.entries:
                    continue
                flag = "complete" if table.support_complete else "truncated"
                numeric.append(
                    (
                        f"gamma l2 ({system.name(u)},{system.name(w)})",
                        f"{gamma_lp_norm(table, 2):.12g} support {len(table)} {flag}",
                    )
                )
        gap = spectral_gap_check(system, spec, args.radius)
        numeric.append(("spectral gap bound", f"{gap.max_weight} {'ok' if gap.passed else 'violated'}"))
        numeric.append(("distinct length values", str(len(gap.values))))
        if args.q is not None:
            params = HeckeParams.parse(system, args.q)
            for u in range(system.rank):
                res = hecke_s2_norm(params, spec, u, u, args.radius)
                numeric.append(
                    (
                        f"hecke S2^2 ({system.name(u)},{system.name(u)})",
                        f"{res.exact_sum} <= {res.bound} ({float(res.exact_sum):.12g} <= {float(res.bound):.12g})",
                    )
                )
    return AnalysisReport(_summary(system), verdicts, numeric)


def cmd_reduce(system: CoxeterSystem, args) -> str:
    word = _parse_word(system, args.word)
    nf = m_reduce(system, word)
    rows = [("normal form", _fmt_word(system, nf)), ("names", system.format_word(nf.word)), ("length", str(nf.length))]
    return _emit(rows, args.format)


def _emit(rows: list[tuple[str, str]], fmt: str) -> str:
    if fmt == "tsv":
        return "".join(f"{k}\t{v}\n" for k, v in rows)
    return "".join(f"{k}: {v}\n" for k, v in rows)


def cmd_gamma(system: CoxeterSystem, args) -> str:
    u = _parse_word(system, args.u)
    w = _parse_word(system, args.w)
    if args.clique_product:
        table = tilde_gamma_table(system, u, w, args.radius, args.max_elements)
    else:
        if len(u) != 1 or len(w) != 1:
            raise UsageError("--u and --w must be single generators (use --clique-product for words)")
        table = gamma_table(system, _spec(system, args.weights), u[0], w[0], args.radius, args.max_elements)
    sep = "\t" if args.format == "tsv" else " "
    lines = []
    for v, val in table.entries.items():
        lines.append(f"{_fmt_word(system, v).replace(' ', '.')}{sep}{val}")
    rows = [("support", str(len(table))), ("support-complete", "yes" if table.support_complete else "no")]
    for p in args.p or []:
        rows.append((f"l_{_fmt_p(p)} norm", f"{gamma_lp_norm(table, p):.12g}"))
    return "\n".join(lines) + ("\n" if lines else "") + _emit(rows, args.format)


def cmd_hecke(system: CoxeterSystem, args) -> str:
    params = HeckeParams.parse(system, args.q) if args.q else HeckeParams.trivial(system)
    spec = _spec(system, args.weights)
    rows = [("q", ",".join(str(x) for x in params.q))]
    if args.product:
        a, b = (HeckeElement.basis(system, _parse_word(system, x)) for x in args.product)
        rows.append(("product", hecke_multiply(params, a, b).format()))
    if args.v is not None or args.radius is not None:
        if args.u is None or args.w is None:
            raise UsageError("--u and --w are required for Psi values and S2 sums")
        u = _parse_generator(system, args.u, "--u")
        w = _parse_generator(system, args.w, "--w")
        if args.v is not None:
            val = psi_hecke(params, spec, u, w, _parse_word(system, args.v))
            rows.append(("psi", val.format()))
        if args.radius is not None:
            res = hecke_s2_norm(params, spec, u, w, args.radius)
            rows.append(("S2^2 exact sum", f"{res.exact_sum} ({float(res.exact_sum):.12g})"))
            rows.append(("S2^2 bound", f"{res.bound} ({float(res.bound):.12g})"))
            rows.append(("support-complete", "yes" if res.support_complete else "no"))
    if len(rows) == 1:
        raise UsageError("nothing to do: give --product, --v or --radius")
    return _emit(rows, args.format)


def cmd_schatten(system: CoxeterSystem, args) -> str:
    u = _parse_generator(system, args.u, "--u")
    w = _parse_generator(system, args.w, "--w")
    spec = _spec(system, args.weights)
    op = psi_group_matrix(system, spec, u, w, args.radius, args.max_elements)
    table = gamma_table(system, spec, u, w, op.interior_radius, args.max_elements)
    rows = [
        ("dimension", str(op.dimension)),
        ("interior radius", str(op.interior_radius)),
        ("support-complete", "yes" if table.support_complete else "no"),
    ]
    for p in args.p or [2.0]:
        sp = schatten_norm(op, p, interior=True)
        lp = gamma_lp_norm(table, p)
        rows.append((f"S_{_fmt_p(p)} interior", f"{sp:.12g}"))
        rows.append((f"l_{_fmt_p(p)} gamma", f"{lp:.12g}"))
    out = _emit(rows, args.format)
    if args.triplets:
        out += op.to_triplets()
    return out


def cmd_dot(system: CoxeterSystem, args) -> str:
    return to_dot(system)


def build_parser() -> argparse.ArgumentParser:
    cap = default_max_elements()
    parser = _Parser(prog="coxsp", description="Coxeter group diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, radius_required=False):
        p.add_argument("file", help="coxdef file ('-' for stdin)")
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        p.add_argument(
            "--max-elements", type=int, default=None, help=f"ball element cap (default {cap}, env COXSP_MAX_ELEMENTS)"
        )
        p.add_argument("--weights", help="comma-separated generator weights, e.g. 1,0,1/2")
        p.add_argument("--radius", type=int, required=radius_required)

    p = sub.add_parser("analyze", help="verdicts and optional numbers")
    common(p)
    p.add_argument("--q", help="Hecke parameters per generator, e.g. 1,4,1/4")

    p = sub.add_parser("reduce", help="normal form of a word")
    common(p)
    p.add_argument("word", nargs="*", help="1-based generator indices or names")

    p = sub.add_parser("gamma", help="gamma table and l_p norms")
    common(p, radius_required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--p", type=str, action="append")
    p.add_argument("--clique-product", action="store_true", help="product over cliques (right-angled only)")

    p = sub.add_parser("hecke", help="Hecke products, Psi values and S2 sums")
    common(p)
    p.add_argument("--q")
    p.add_argument("--u")
    p.add_argument("--w")
    p.add_argument("--v")
    p.add_argument("--product", nargs=2, metavar=("A", "B"))

    p = sub.add_parser("schatten", help="truncated Schatten norms of Psi")
    common(p, radius_required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--p", type=str, action="append")
    p.add_argument("--triplets", action="store_true", help="append the matrix as row col value lines")

    p = sub.add_parser("dot", help="Graphviz rendering of the diagram")
    common(p)
    return parser


_COMMANDS = {
    "reduce": cmd_reduce,
    "gamma": cmd_gamma,
    "hecke": cmd_hecke,
    "schatten": cmd_schatten,
    "dot": cmd_dot,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "p", None):
            args.p = [_parse_p(x) for x in args.p]
        if args.radius is not None and args.radius < 0:
            raise UsageError("--radius must be nonnegative")
        try:
            system = _load(args.file)
        except ParseError as exc:
            print(f"{args.file}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
            return EXIT_PARSE
        except CoxeterError as exc:
            print(f"{args.file}: {exc}", file=sys.stderr)
            return EXIT_PARSE
        except OSError as exc:
            print(f"coxsp: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if args.command == "analyze":
            report = cmd_analyze(system, args)
            out = report.to_tsv() if args.format == "tsv" else report.to_text()
        else:
            out = _COMMANDS[args.command](system, args)
    except BallCapExceeded as exc:
        print(f"coxsp: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, InvalidLengthSpec, InvalidHeckeParams, CoxeterError, ValueError) as exc:
        print(f"coxsp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
