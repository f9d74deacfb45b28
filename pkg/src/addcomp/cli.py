"""Command-line entry point: ``addcomp VERB ...``.

Exit codes: 0 success, 1 verification failure, 2 input/parse error, 3 prefix cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import catalog
from .automata import Dfao, compare_with_oracle
from .complexity import KINDS, complexity_profile, detect_eventual_period
from .errors import AddCompError, CapExceeded, DidNotHalt, ParseError
from .linrep import LinearRep, minimize, semigroup_trick
from .numeration import PositionalSystem
from .plots import step_svg
from .powers import (balance_report, balanced_additive_bound, equalizing_valuation,
                     fibonacci_abelian_criterion, find_power, first_add_ab_mismatch, power_orders)
from .words import Morphism, PrefixBuffer, Valuation, parse_coding, word_str

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path_or_text: str) -> str:
    p = Path(path_or_text)
    if p.exists():
        return p.read_text()
    raise InputError(f"no such file: {path_or_text}")


def _source(args) -> PrefixBuffer:
    if getattr(args, "word", None):
        try:
            m = catalog.morphism(args.word)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        name = args.word
    elif getattr(args, "morphism", None):
        m = Morphism.parse(args.morphism)
        name = m.format()
    else:
        raise InputError("give a morphism with -m or a catalog word with -w")
    code = parse_coding(args.coding) if getattr(args, "coding", None) else None
    if code is not None:
        missing = [a for a in m.alphabet if a not in code]
        if missing:
            raise InputError(f"coding does not cover letters {missing}")
    return PrefixBuffer.from_morphism(m, args.seed, code, name=name)


def _valuation(args) -> Valuation | None:
    return Valuation.parse(args.weights) if getattr(args, "weights", None) else None


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _add_word_args(p: argparse.ArgumentParser, weights: bool = False):
    g = p.add_mutually_exclusive_group()
    g.add_argument("-m", "--morphism", help='rules such as "0->012 1->02 2->1"')
    g.add_argument("-w", "--word", help="catalog name, e.g. vtm, tribonacci, tm:1,3, vtm:4")
    p.add_argument("-c", "--coding", help='letter map applied after generation, e.g. "0->0 1->1 2->0"')
    p.add_argument("-a", "--seed", type=int, default=0, help="letter the fixed point starts with")
    if weights:
        p.add_argument("--weights", help='valuation such as "0=0,1=1,2=3"')


# ---------------------------------------------------------------- verbs


def cmd_generate(args) -> int:
    src = _source(args)
    letters = src.prefix(args.n).tolist() if args.n else []
    sep = args.sep if args.sep is not None else ("" if max(src.alphabet, default=0) < 10 else " ")
    _write(args.output, sep.join(map(str, letters)) + "\n")
    return EXIT_OK


def cmd_profile(args) -> int:
    src = _source(args)
    v = _valuation(args)
    kinds = args.kinds.split(",")
    for k in kinds:
        if k not in KINDS:
            raise InputError(f"unknown kind {k!r}; choose from {', '.join(KINDS)}")
    profiles = {k: complexity_profile(src, args.n_max, k, v, prefix_len=args.prefix) for k in kinds}
    series = {k: p.values for k, p in profiles.items()}
    if args.diff:
        if not {"additive", "abelian"} <= set(kinds):
            raise InputError("--diff needs both additive and abelian kinds")
        series["abelian-additive"] = [b - a for a, b in zip(series["additive"], series["abelian"])]

    stable = min(p.stabilized_upto for p in profiles.values())
    prefix = max(p.prefix_len for p in profiles.values())
    buf = io.StringIO()
    buf.write(f"# word={src.name} prefix={prefix}" + (f" valuation={v.format()}" if v else "") + "\n")
    if stable < args.n_max:
        buf.write(f"# warning: values for n>{stable} did not stabilize\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", *series])
    for n in range(args.n_max + 1):
        w.writerow([n, *(s[n] for s in series.values())])
    if args.csv:
        _write(args.csv, buf.getvalue())
    if args.svg:
        Path(args.svg).write_text(step_svg(series, title=src.name))

    for k, p in profiles.items():
        ep = detect_eventual_period(p)
        print(f"{k}: {ep}" if ep else f"{k}: no eventual period found up to n={p.stabilized_upto}")
    if args.diff:
        d = series["abelian-additive"]
        first = next((n for n in range(stable + 1) if d[n]), None)
        print(f"first difference: {first if first is not None else 'none up to n=' + str(stable)}")
    if stable < args.n_max:
        print(f"warning: values for n>{stable} did not stabilize (prefix {prefix})", file=sys.stderr)
    return EXIT_OK


def _system(text: str) -> PositionalSystem:
    try:
        return PositionalSystem.parse(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def cmd_dfao(args) -> int:
    d = Dfao.parse(_read(args.file))
    sys_ = _system(args.system)
    if args.action == "run":
        for n in args.n:
            print(f"{n}\t{sys_.rep(n)}\t{d.sequence_term(sys_, n)}")
        return EXIT_OK
    src = _source(args)
    kind = args.kind
    p = complexity_profile(src, args.n_max, kind, _valuation(args), prefix_len=args.prefix)
    mismatch = compare_with_oracle(d, sys_, p.values, p.stabilized_upto)
    if mismatch is not None:
        print(f"mismatch at n={mismatch}: dfao {d.sequence_term(sys_, mismatch)}, "
              f"{kind} {p[mismatch]}")
        return EXIT_FAIL
    print(f"agree for n<={p.stabilized_upto}")
    return EXIT_OK if p.stabilized_upto == args.n_max else EXIT_CAP


def cmd_linrep(args) -> int:
    r = LinearRep.parse(_read(args.file))
    if args.action == "eval":
        sys_ = _system(args.system)
        for n in args.n:
            print(f"{n}\t{sys_.rep(n)}\t{r.term(sys_, n)}")
        return EXIT_OK
    if args.action == "minimize":
        _write(args.output, minimize(r).serialize())
        return EXIT_OK
    src = minimize(r) if args.minimize else r
    _write(args.output, semigroup_trick(src, args.max_states).serialize())
    return EXIT_OK


def cmd_powers(args) -> int:
    if args.action == "fib-criterion":
        print("n,holds")
        for n in range(1, args.n_max + 1):
            print(f"{n},{int(fibonacci_abelian_criterion(args.k, n))}")
        return EXIT_OK
    src = _source(args)
    v = _valuation(args)
    if args.action == "find":
        hit = find_power(src, args.kind, args.k, args.order, args.window, v)
        if hit is None:
            print(f"not found up to window {args.window}")
        else:
            blocks = hit.blocks(src.prefix(hit.position + hit.k * hit.order).tolist())
            print(f"position {hit.position}: " + " | ".join(word_str(b) for b in blocks))
        return EXIT_OK
    rows = power_orders(src, args.kind, args.k, args.max_order, args.window, v)
    out = io.StringIO()
    out.write(f"# {args.kind} {args.k}-powers, window {args.window}; not_found means none inside the window\n")
    out.write("order,status,position\n")
    for order, hit in rows.items():
        out.write(f"{order},found,{hit.position}\n" if hit else f"{order},not_found,\n")
    _write(args.output, out.getvalue())
    return EXIT_OK


def cmd_balance(args) -> int:
    src = _source(args)
    rep = balance_report(src, args.n_max, args.window)
    print(f"C_observed={rep.C_observed} lengths<={rep.n_scanned} window={args.window}")
    if rep.witness:
        a, lo, hi, n = rep.witness
        print(f"witness: letter {a}, length {n}, positions {lo} and {hi}")
    print(f"additive bound if {rep.C_observed}-balanced: {balanced_additive_bound(src.alphabet, rep.C_observed)}")
    return EXIT_OK


def cmd_valuation(args) -> int:
    if args.action == "equalize":
        print(equalizing_valuation(args.k, args.C).format())
        return EXIT_OK
    src = _source(args)
    n = first_add_ab_mismatch(src, _valuation(args), args.n_max, prefix_len=args.prefix)
    print(f"first mismatch: {n}" if n is not None else f"no mismatch for n<={args.n_max}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_checks

    try:
        results = run_checks(args.checks, Path(args.fixtures) if args.fixtures else None)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    for r in results:
        print(r.to_json(), flush=True)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="addcomp", description="Additive and abelian complexity of morphic words.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("generate", help="print a prefix of a fixed point")
    _add_word_args(p)
    p.add_argument("-n", type=int, required=True, help="number of letters")
    p.add_argument("-o", "--output")
    p.add_argument("--sep", help="letter separator (default: none for single-digit letters)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("profile", help="complexity profiles with CSV/SVG output")
    _add_word_args(p, weights=True)
    p.add_argument("--kinds", default="additive,abelian")
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--prefix", type=int, help="pin the prefix length instead of doubling")
    p.add_argument("--csv", help="CSV path ('-' for stdout)")
    p.add_argument("--svg", help="SVG path")
    p.add_argument("--diff", action="store_true", help="add the abelian minus additive series")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("dfao", help="run a DFAO or compare it with a profile")
    p.add_argument("action", choices=["run", "compare"])
    p.add_argument("file")
    p.add_argument("-s", "--system", default="base:2", help="base:K, fib, trib or rec:a0,..;c1,..")
    p.add_argument("-n", type=int, nargs="*", default=list(range(16)))
    _add_word_args(p, weights=True)
    p.add_argument("--kind", default="additive", choices=KINDS)
    p.add_argument("--n-max", type=int, default=243)
    p.add_argument("--prefix", type=int)
    p.set_defaults(func=cmd_dfao)

    p = sub.add_parser("linrep", help="linear representations")
    p.add_argument("action", choices=["eval", "minimize", "semigroup"])
    p.add_argument("file")
    p.add_argument("-s", "--system", default="base:2")
    p.add_argument("-n", type=int, nargs="*", default=list(range(16)))
    p.add_argument("-o", "--output")
    p.add_argument("--no-minimize", dest="minimize", action="store_false")
    p.add_argument("--max-states", type=int, default=10_000)
    p.set_defaults(func=cmd_linrep)

    p = sub.add_parser("powers", help="abelian/additive powers")
    p.add_argument("action", choices=["find", "orders", "fib-criterion"])
    _add_word_args(p, weights=True)
    p.add_argument("--kind", default="additive", choices=["additive", "abelian"])
    p.add_argument("-k", type=int, default=2)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--max-order", type=int, default=30)
    p.add_argument("--window", type=int, default=10_000)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_powers)

    p = sub.add_parser("balance", help="observed balance constant")
    _add_word_args(p)
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--window", type=int, default=20_000)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("valuation", help="equalizing valuations and additive/abelian mismatch")
    p.add_argument("action", choices=["equalize", "mismatch"])
    _add_word_args(p, weights=True)
    p.add_argument("-k", type=int, default=3)
    p.add_argument("-C", type=int, default=1)
    p.add_argument("--n-max", type=int, default=300)
    p.add_argument("--prefix", type=int)
    p.set_defaults(func=cmd_valuation)

    p = sub.add_parser("verify", help="run reproduction checks (JSON lines)")
    p.add_argument("checks", nargs="*", default=["all"])
    p.add_argument("--fixtures", help="directory overriding the bundled fixtures")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("n", "n_max", "window", "prefix", "max_order", "max_states", "k"):
        val = getattr(args, name, None)
        if isinstance(val, int) and val < 0:
            print(f"error: --{name.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (CapExceeded, DidNotHalt) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (AddCompError, InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

if __name__ == "__main__":
    sys.exit(main())
