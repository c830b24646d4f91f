"""Command-line interface: ``exphuff {code,bounds,verify,gen}``.

Exit status is 0 on success, 1 when a verification check fails and 2 for
usage, validation or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import List, Optional

import numpy as np

from . import bounds as B
from .checks import DEFAULT_DS, run_verification
from .coder import canonical_codewords, optimal_code
from .core import ExpParam, escort, exp_length, make_distribution, renyi_entropy

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2
SWEEP_DS = "-0.5,0,1,2,4,16,inf"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- generators


def benford() -> List[float]:
    return [math.log10(i + 1) - math.log10(i) for i in range(1, 10)]


def generate(kind: str, n: Optional[int] = None, seed: Optional[int] = None, depths: Optional[str] = None) -> List[float]:
    if kind == "benford":
        return benford()
    if kind == "uniform":
        if not n or n < 1:
            raise UsageError("uniform needs --n >= 1")
        return [1.0 / n] * n
    if kind == "dyadic":
        if not depths:
            raise UsageError("dyadic needs --depths, e.g. 1,2,3,3")
        ls = [int(x) for x in depths.split(",")]
        if any(l < 1 for l in ls) or math.fsum(2.0 ** -l for l in ls) != 1.0:
            raise UsageError("dyadic depths must be positive with Kraft sum exactly 1")
        return [2.0 ** -l for l in ls]
    if kind == "dirichlet":
        if not n or n < 1:
            raise UsageError("dirichlet needs --n >= 1")
        rng = np.random.default_rng(seed)
        return [float(x) for x in rng.dirichlet(np.ones(n))]
    raise UsageError("unknown distribution kind %r" % kind)


def read_distribution_file(path: str) -> List[float]:
    vals = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                vals.append(float(line))
    return vals


def _load_probs(args) -> List[float]:
    sources = [s for s in (args.probs, args.file, args.gen) if s]
    if len(sources) != 1:
        raise UsageError("give exactly one of --probs, --file, --gen")
    if args.probs:
        return [float(x) for x in args.probs.split(",") if x.strip()]
    if args.file:
        return read_distribution_file(args.file)
    return generate(args.gen, args.n, args.seed, args.depths)


def parse_d_list(text: str) -> List[str]:
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    for t in tokens:
        ExpParam.parse(t)
    return tokens


# ---------------------------------------------------------------- commands


def cmd_code(args, out) -> int:
    probs = _load_probs(args)
    p = make_distribution(probs)
    if args.d is not None and args.a is not None:
        raise UsageError("give --d or --a, not both")
    if args.a is not None:
        param = ExpParam.from_a(args.a)
    else:
        param = ExpParam.parse(args.d if args.d is not None else "1")

    f6 = "%.6f"
    if args.objective == "length":
        if param.is_inf:
            raise UsageError("exponential length needs a finite base a")
        if param.is_linear:
            res = optimal_code(p, 0.0)
            value = exp_length(p, res.lengths, 1.0)
        else:
            res = optimal_code(escort(p, param.alpha), param)
            value = res.objective + renyi_entropy(p, param.alpha)
    else:
        res = optimal_code(p, param)
        value = res.objective

    lengths = p.to_original_order(list(res.lengths))
    user_probs = p.to_original_order(list(p.probs))
    words = canonical_codewords(lengths)

    print("symbols: %d" % p.n, file=out)
    print("sorted probabilities: " + " ".join(f6 % x for x in p.probs), file=out)
    if param.is_inf:
        print("d: inf (minimax pointwise redundancy)", file=out)
    else:
        print("d: %s  a: %s  alpha: %s" % (param, f6 % param.a, f6 % param.alpha), file=out)
    if args.objective == "length":
        print("objective: exponential-average length L_a", file=out)
        print("L_a: " + f6 % value, file=out)
        if not param.is_linear:
            print("a^L_a: " + f6 % (param.a ** value), file=out)
    else:
        print("objective: exponential redundancy R^d", file=out)
        print("R^d: " + f6 % value, file=out)
    print("root weight: " + f6 % res.root_weight, file=out)
    print("complete: %s" % ("yes" if res.complete else "no"), file=out)
    print("symbol,probability,length,codeword", file=out)
    for i, (x, l, w) in enumerate(zip(user_probs, lengths, words)):
        print("%d,%s,%d,%s" % (i + 1, f6 % x, l, w), file=out)
    return EXIT_OK


def _p_grid(args) -> List[float]:
    if bool(args.p) == bool(args.sweep):
        raise UsageError("give exactly one of --p or --sweep")
    if args.p:
        ps = [float(x) for x in args.p.split(",") if x.strip()]
    else:
        try:
            start, stop, num = args.sweep.split(":")
            ps = [float(x) for x in np.linspace(float(start), float(stop), int(num))]
        except ValueError:
            raise UsageError("--sweep expects START:STOP:NUM, got %r" % args.sweep)
    for x in ps:
        if not 0.0 < x < 1.0:
            raise UsageError("p_j values must lie in (0, 1), got %r" % x)
    return ps


def bound_rows(ps, d_tokens, most_probable=False):
    """(p_j, d_token, lower, upper, branch) rows sorted by p_j then d."""
    rows = []
    for pj in ps:
        for tok in d_tokens:
            d = ExpParam.parse(tok)
            lo = B.lower_bound(pj, d)
            up = B.upper_bound(pj, d, most_probable=most_probable)
            rows.append((pj, d, lo.value, up.value, up.branch))
    rows.sort(key=lambda r: (r[0], r[1].d))
    return rows


def cmd_bounds(args, out) -> int:
    ps = _p_grid(args)
    tokens = parse_d_list(args.d)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["p_j", "d", "lower", "upper", "upper_branch"])
    for pj, d, lo, up, branch in bound_rows(ps, tokens, args.most_probable):
        writer.writerow(["%.12g" % pj, str(d), "%.12f" % lo, "%.12f" % up, branch])
    return EXIT_OK


def cmd_verify(args, out) -> int:
    tokens = parse_d_list(args.d)
    if args.n_max > 14:
        raise UsageError("oracle range exceeded: --n-max must be at most 14")
    report = run_verification(args.n_max, args.trials, args.seed, tokens)
    print("verify: n = 2..%d, %d trials each, seed %d, d = %s"
          % (args.n_max, args.trials, args.seed, ",".join(tokens)), file=out)
    for name in report.names():
        ok, bad = report.passed[name], report.failed[name]
        print("%-28s %s  passed %d  failed %d" % (name, "PASS" if not bad else "FAIL", ok, bad), file=out)
    for line in report.failures:
        print("  " + line, file=out)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_gen(args, out) -> int:
    vals = generate(args.kind, args.n, args.seed, args.depths)
    text = "".join("%.17g\n" % v for v in vals)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exphuff", description="Optimal prefix codes and bounds for exponential objectives."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    code = sub.add_parser("code", help="compute an optimal code")
    src = code.add_argument_group("distribution source")
    src.add_argument("--probs", help="comma-separated probabilities")
    src.add_argument("--file", help="file with one probability per line ('#' comments)")
    src.add_argument("--gen", choices=["benford", "uniform", "dyadic", "dirichlet"])
    src.add_argument("--n", type=int)
    src.add_argument("--seed", type=int)
    src.add_argument("--depths")
    code.add_argument("--d", help="exponent d (real, '0' or 'inf'); default 1")
    code.add_argument("--a", type=float, help="base a = 2**d")
    code.add_argument("--objective", choices=["redundancy", "length"], default="redundancy")
    code.set_defaults(func=cmd_code)

    bnd = sub.add_parser("bounds", help="lower/upper redundancy bounds as CSV")
    bnd.add_argument("--p", help="comma-separated p_j values")
    bnd.add_argument("--sweep", help="p_j grid START:STOP:NUM")
    bnd.add_argument("--d", default=SWEEP_DS, help="comma-separated d values (default %(default)s)")
    bnd.add_argument("--most-probable", action="store_true", help="p_j is the largest probability")
    bnd.add_argument("--out", help="write CSV here instead of stdout")
    bnd.set_defaults(func=cmd_bounds)

    ver = sub.add_parser("verify", help="certify coder and bounds against the brute-force oracle")
    ver.add_argument("--n-max", type=int, default=8)
    ver.add_argument("--trials", type=int, default=200)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--d", default=",".join(DEFAULT_DS))
    ver.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="write a distribution file")
    gen.add_argument("kind", choices=["benford", "uniform", "dyadic", "dirichlet"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--depths")
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)
    return parser


_VALUE_FLAGS = ("--d", "--p", "--probs", "--a")


def _attach_negative_values(argv: List[str]) -> List[str]:
    """Rewrite ``--d -0.5,1`` as ``--d=-0.5,1`` so argparse keeps the value."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok in _VALUE_FLAGS and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append("%s=%s" % (tok, nxt))
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        if args.func is cmd_bounds and args.out:
            with open(args.out, "w", newline="") as fh:
                return cmd_bounds(args, fh)
        return args.func(args, out)
    except (UsageError, ValueError, OSError) as exc:
        print("exphuff: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
