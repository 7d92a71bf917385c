"""Command-line front end: compress, decompress, stats, generators, verification."""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from typing import Sequence

from . import analysis, codec, generators
from .core import SizeMetric, grammar_stats
from .mrrepair import mr_repair_compress, naive_mr_compress
from .repair import TieBreak, repair_compress, repair_enumerate, repair_following_trace

_METRICS = {
    "with-terminals": SizeMetric.WITH_TERMINAL_RULES,
    "without": SizeMetric.WITHOUT_TERMINAL_RULES,
}
_TIEBREAKS = {
    "first": TieBreak.first_occurrence,
    "lex": TieBreak.lexicographic,
}


class CliError(Exception):
    pass


def read_input(path: str) -> tuple[int, ...]:
    """Load a text: .sym files via the symbol container, anything else as raw bytes."""
    if not os.path.exists(path):
        raise CliError(f"no such file: {path}")
    with open(path, "rb") as fh:
        data = fh.read()
    if path.endswith(".sym"):
        try:
            return codec.sym_decode(data)
        except codec.CodecError as exc:
            raise CliError(f"{path}: {exc}") from exc
    return tuple(data)


def _read_nonempty(path: str) -> tuple[int, ...]:
    text = read_input(path)
    if not text:
        raise CliError(f"{path}: refusing to compress an empty input")
    return text


def _compress_one(text, algo: str, tiebreak: str, trim: str):
    tb = _TIEBREAKS[tiebreak]()
    t0 = time.perf_counter()
    if algo == "repair":
        g, _ = repair_compress(text, tb)
    elif algo == "mr":
        g, _ = mr_repair_compress(text, tb, trim=trim)
    else:
        g = naive_mr_compress(text, tb)
    return g, time.perf_counter() - t0


def _print_stats(g, metric: SizeMetric, elapsed: float | None = None) -> None:
    s = grammar_stats(g, metric)
    print(f"rules              {s.rule_count_excl_terminals}")
    print(f"rhs-total          {s.rhs_total_excl_start_excl_terminals}")
    print(f"start-length       {s.start_len}")
    print(f"total-size         {s.total_size}")
    if elapsed is not None:
        print(f"seconds            {elapsed:.3f}")


def _cmd_compress(args) -> int:
    text = _read_nonempty(args.input)
    g, elapsed = _compress_one(text, args.algo, args.tiebreak, args.trim)
    with open(args.output, "wb") as fh:
        fh.write(codec.encode(g))
    _print_stats(g, _METRICS[args.metric], elapsed)
    return 0


def _cmd_decompress(args) -> int:
    with open(args.input, "rb") as fh:
        data = fh.read()
    symbols = codec.decompress(data)
    if args.output.endswith(".sym"):
        payload = codec.sym_encode(symbols)
    else:
        if any(s > 255 for s in symbols):
            raise CliError("symbols exceed one byte; write to a .sym output instead")
        payload = bytes(symbols)
    with open(args.output, "wb") as fh:
        fh.write(payload)
    print(f"wrote {len(symbols)} symbols to {args.output}")
    return 0


def _cmd_stats(args) -> int:
    with open(args.input, "rb") as fh:
        data = fh.read()
    t0 = time.perf_counter()
    g = codec.decode(data)
    metric = _METRICS[args.metric]
    _print_stats(g, metric, time.perf_counter() - t0)
    return 0


def _cmd_gen(args) -> int:
    if args.generator == "gsdrp":
        text = generators.gen_gsdrp(args.f)
    elif args.generator == "power":
        u = tuple(args.u.encode())
        w = tuple(args.w.encode())
        text = generators.gen_power(u, w, args.m)
    elif args.generator == "fib":
        text = generators.gen_fibonacci(args.k)
    else:
        text = generators.gen_repetitive(args.copies, args.patterns, args.patlen, args.sigma, args.seed)
    with open(args.output, "wb") as fh:
        fh.write(codec.sym_encode(text))
    print(f"wrote {len(text)} symbols to {args.output}")
    return 0


def _cmd_enumerate(args) -> int:
    text = _read_nonempty(args.input)
    grammars = repair_enumerate(text, branch_limit=args.max_branches)
    metric = _METRICS[args.metric]
    sizes: dict[int, int] = {}
    from .core import grammar_size

    for g in grammars:
        s = grammar_size(g, metric)
        sizes[s] = sizes.get(s, 0) + 1
    print(f"grammars           {len(grammars)}")
    for s in sorted(sizes):
        print(f"size {s:<6} x {sizes[s]}")
    return 0


def _cmd_bench(args) -> int:
    algos = ["repair", "mr", "naive-mr"] if args.algo == "all" else [args.algo] if args.algo != "default" else ["repair", "mr"]
    metric = _METRICS[args.metric]
    print(f"{'file':<28} {'algo':<9} {'rules':>8} {'rhs':>10} {'start':>10} {'total':>10} {'seconds':>9}")
    for path in args.inputs:
        text = _read_nonempty(path)
        for algo in algos:
            g, elapsed = _compress_one(text, algo, "first", "prefix")
            s = grammar_stats(g, metric)
            print(
                f"{os.path.basename(path):<28} {algo:<9} {s.rule_count_excl_terminals:>8} "
                f"{s.rhs_total_excl_start_excl_terminals:>10} {s.start_len:>10} "
                f"{s.total_size:>10} {elapsed:>9.3f}"
            )
    return 0


def _random_texts(trials: int, n: int, sigma: int, seed: int):
    rng = random.Random(seed)
    for _ in range(trials):
        length = rng.randint(2, max(2, n))
        yield tuple(rng.randrange(sigma) for _ in range(length))


def _cmd_verify(args) -> int:
    ok = True

    def report(name: str, passed: bool, detail: str = "") -> None:
        nonlocal ok
        ok &= passed
        suffix = f"  ({detail})" if detail else ""
        print(f"{'PASS' if passed else 'FAIL'}  {name}{suffix}")

    check = args.check
    if check in ("bijection", "overlap"):
        fn = analysis.check_pair_mr_bijection if check == "bijection" else analysis.check_overlap_bound
        failures = 0
        for text in _random_texts(args.trials, args.n, args.sigma, args.seed):
            res = fn(text)
            if not res.ok:
                failures += 1
                print(f"  counterexample: {text!r}: {res.detail}")
        report(check, failures == 0, f"{args.trials} random texts, sigma {args.sigma}")
    elif check == "isomorphism":
        failures = checked = 0
        for text in _random_texts(args.trials, args.n, args.sigma, args.seed):
            res = analysis.check_phase_isomorphism(text)
            if res.status == "failed":
                failures += 1
                print(f"  counterexample: {text!r}: {res.detail}")
            elif res.status == "ok":
                checked += 1
        report(check, failures == 0, f"{checked} of {args.trials} texts met the hypothesis")
    elif check == "gsdrp":
        try:
            rep = analysis.gsdrp_measure(args.f)
            report("gsdrp", True, f"n {rep.n}, diff {rep.diff}, bound {rep.lower_bound_at_n:.6f}")
        except analysis.AnalysisError as exc:
            report("gsdrp", False, str(exc))
    elif check == "theorem4":
        w = tuple(range(1, args.wlen + 1))
        text = generators.gen_power((0,), w, args.m)
        g_rp, _ = repair_compress(text)
        g_nmr = naive_mr_compress(text)
        from .core import grammar_size

        gap = grammar_size(g_nmr) - grammar_size(g_rp)
        want = (args.m - 1) * (args.wlen - 1) - 1
        report("theorem4", gap == want, f"gap {gap}, expected {want}")
    elif check == "theorem5":
        from .core import grammar_size

        violations = 0
        for text in _random_texts(args.trials, args.n, args.sigma, args.seed):
            g_mr, trace = mr_repair_compress(text)
            g_rp, _ = repair_following_trace(text, trace)
            s_mr, s_rp = grammar_size(g_mr), grammar_size(g_rp)
            if not (s_rp / 2 < s_mr <= s_rp):
                violations += 1
                print(f"  violation: {text!r}: mr {s_mr}, repair {s_rp}")
        report("theorem5", violations == 0, f"{args.trials} random texts")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="repairkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compress", help="compress a file into a .grc grammar container")
    c.add_argument("--algo", choices=["repair", "mr", "naive-mr"], default="repair")
    c.add_argument("--tiebreak", choices=["first", "lex"], default="first")
    c.add_argument("--trim", choices=["prefix", "suffix"], default="prefix")
    c.add_argument("--metric", choices=_METRICS, default="with-terminals")
    c.add_argument("-o", "--output", required=True)
    c.add_argument("input")
    c.set_defaults(func=_cmd_compress)

    d = sub.add_parser("decompress", help="expand a .grc container back to its text")
    d.add_argument("-o", "--output", required=True)
    d.add_argument("input")
    d.set_defaults(func=_cmd_decompress)

    s = sub.add_parser("stats", help="print the four size numbers for a .grc container")
    s.add_argument("--metric", choices=_METRICS, default="with-terminals")
    s.add_argument("input")
    s.set_defaults(func=_cmd_stats)

    g = sub.add_parser("gen", help="write a generated text as a .sym container")
    gsub = g.add_subparsers(dest="generator", required=True)
    gg = gsub.add_parser("gsdrp")
    gg.add_argument("--f", type=int, required=True)
    gp = gsub.add_parser("power")
    gp.add_argument("--u", required=True)
    gp.add_argument("--w", required=True)
    gp.add_argument("--m", type=int, required=True)
    gf = gsub.add_parser("fib")
    gf.add_argument("--k", type=int, required=True)
    gr = gsub.add_parser("repetitive")
    gr.add_argument("--copies", type=int, required=True)
    gr.add_argument("--patterns", type=int, required=True)
    gr.add_argument("--patlen", type=int, required=True)
    gr.add_argument("--sigma", type=int, required=True)
    gr.add_argument("--seed", type=int, required=True)
    for sp in (gg, gp, gf, gr):
        sp.add_argument("-o", "--output", required=True)
        sp.set_defaults(func=_cmd_gen)

    v = sub.add_parser("verify", help="run a verification check; exit 0 only on pass")
    v.add_argument("check", choices=["bijection", "overlap", "isomorphism", "gsdrp", "theorem4", "theorem5"])
    v.add_argument("--f", type=int, default=4)
    v.add_argument("--m", type=int, default=2)
    v.add_argument("--wlen", type=int, default=3)
    v.add_argument("--random", action="store_true")
    v.add_argument("--n", type=int, default=200)
    v.add_argument("--sigma", type=int, default=4)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=1)
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("enumerate", help="count all tie-break outcomes for a small input")
    e.add_argument("--max-branches", type=int, default=10_000)
    e.add_argument("--metric", choices=_METRICS, default="with-terminals")
    e.add_argument("input")
    e.set_defaults(func=_cmd_enumerate)

    b = sub.add_parser("bench", help="per-file size and timing rows (timing excludes I/O)")
    b.add_argument("--algo", choices=["repair", "mr", "naive-mr", "all", "default"], default="default")
    b.add_argument("--metric", choices=_METRICS, default="with-terminals")
    b.add_argument("inputs", nargs="+")
    b.set_defaults(func=_cmd_bench)

    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, codec.CodecError, analysis.AnalysisCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())
