"""Command-line entry point: ``dvsearch {simulate,expand,table,bench}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench, traceio
from .dv import expand_backward, expand_forward, type_i_table
from .errors import CapacityError, OracleFileError, OracleRangeError
from .grover import RunConfig, amplified_controls, run_search, sample_measurements, verify_complexity
from .statevector import RegisterLayout, probability

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE = 3
EXIT_CAPACITY = 4


class UsageError(Exception):
    pass


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _pos_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _oracle_spec(text):
    if text in ("toy", "table") or (text.startswith("file:") and len(text) > 5):
        return text
    raise argparse.ArgumentTypeError(f"oracle must be toy, table or file:PATH, got {text!r}")


def _hex_word(text):
    text = text.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    if not text or len(text) > 8 or any(ch not in "0123456789abcdef" for ch in text):
        raise UsageError(f"malformed 32-bit hex word {text!r}")
    return int(text, 16)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dvsearch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the entangle/oracle/amplify pipeline")
    sim.add_argument("--n", type=_pos_int, required=True, help="qubits per register")
    sim.add_argument("--oracle", type=_oracle_spec, required=True, help="toy | table | file:PATH")
    sim.add_argument("--m", type=_nonneg_int, help="entangling rounds (default floor(2^(n/2)))")
    sim.add_argument("--t", type=_nonneg_int, help="amplification rounds (default floor(2^(n/2)))")
    sim.add_argument("--trace", help="write the per-step trace here")
    sim.add_argument("--format", choices=("csv", "json"), help="trace format (default from suffix, else csv)")
    sim.add_argument("--full-dist", action="store_true", help="also record full distributions")
    sim.add_argument("--shots", type=_pos_int, help="sample this many measurements of the final state")
    sim.add_argument("--seed", type=int, default=0, help="sampling seed")

    exp = sub.add_parser("expand", help="SHA-1 message expansion of a 16-word seed")
    src = exp.add_mutually_exclusive_group(required=True)
    src.add_argument("--seed", nargs="+", metavar="WORD", help="sixteen hex words")
    src.add_argument("--file", help="file with sixteen whitespace-separated hex words")
    exp.add_argument("--backward", action="store_true", help="recover words preceding the window")
    exp.add_argument("--steps", type=_nonneg_int, default=16, help="words to recover with --backward")

    tab = sub.add_parser("table", help="print the Type-I starting-point table as CSV")
    tab.add_argument("--output", help="write to this file instead of stdout")

    ben = sub.add_parser("bench", help="time each gate and the full pipeline")
    ben.add_argument("--n", type=_pos_int, required=True)
    ben.add_argument("--reps", type=_pos_int, default=3)
    ben.add_argument("--format", choices=("table", "json"), default="table")

    for p in (sim, exp, tab, ben):
        p.add_argument("--config", help="file of 'key = value' lines; explicit flags win")
    return parser


def _config_args(parser: argparse.ArgumentParser, command: str, path: str) -> list:
    """Turn a ``key = value`` file into flag tokens for ``command``."""
    subparser = parser._subparsers._group_actions[0].choices[command]
    actions = {a.dest: a for a in subparser._actions if a.option_strings}
    tokens = []
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        dest = key.replace("-", "_")
        if dest in ("config", "help") or dest not in actions:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r} for {command}")
        action = actions[dest]
        flag = action.option_strings[-1]
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append(flag)
            elif value.lower() not in ("0", "false", "no", "off"):
                raise UsageError(f"{path}:{lineno}: {key} expects a boolean")
        elif action.nargs == "+":
            tokens += [flag, *value.replace(",", " ").split()]
        else:
            tokens += [flag, value]
    return tokens


def parse_args(argv):
    parser = build_parser()
    argv = list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config and argv and argv[0] in COMMANDS:
        # Config values go first so later explicit flags override them.
        extra = _config_args(parser, argv[0], known.config)
        argv = argv[:1] + extra + argv[1:]
    return parser.parse_args(argv)


def _summary(result, config, oracle_name) -> str:
    state, trace, ledger = result
    lines = [f"n={config.n} oracle={oracle_name} m={config.m} t={config.t} steps={len(trace)}"]
    peak_t, peak_p = trace.peak()
    lines.append(f"peak: t={peak_t} p_valid={peak_p:.6f}")
    last = trace.records[-1]
    lines.append(
        f"final: p_valid={last.p_valid:.6f} p_regular={last.p_regular:.6f} p_tail={last.p_tail:.6e}"
    )
    if last.best_valid_index >= 0:
        c = last.best_valid_index
        lines.append(f"P(|{c},0>)={probability(state, c, 0):.6f}")
    amp = amplified_controls(state)
    lines.append("amplified: {" + ", ".join(str(c) for c in amp) + "}")
    lines.append("ledger: " + " ".join(f"{k}={v}" for k, v in ledger.as_dict().items()))
    lines.append("complexity: " + str(verify_complexity(ledger, config.n)))
    return "\n".join(lines)


def cmd_simulate(args) -> int:
    config = RunConfig(n=args.n, oracle=args.oracle, m=args.m, t=args.t, full_distribution=args.full_dist)
    RegisterLayout.symmetric(args.n)  # fail on capacity before any oracle I/O
    result = run_search(config)
    if args.trace:
        fmt = args.format or ("json" if args.trace.endswith(".json") else "csv")
        if fmt == "json":
            meta = {"n": config.n, "oracle": args.oracle, "m": config.m, "t": config.t}
            traceio.atomic_write(args.trace, traceio.trace_to_json(result.trace, meta))
        else:
            traceio.atomic_write(args.trace, traceio.trace_to_csv(result.trace))
            if args.full_dist:
                traceio.atomic_write(
                    args.trace + ".dist.csv", traceio.distribution_to_csv(result.trace, config.n)
                )
    print(_summary(result, config, args.oracle))
    if args.shots:
        hist = sample_measurements(result.state, args.shots, args.seed)
        top = sorted(hist.items(), key=lambda kv: (-kv[1], kv[0]))[:10]
        print(f"shots={args.shots} seed={args.seed} distinct={len(hist)}")
        for (c, w), count in top:
            print(f"  |{c},{w}>: {count}")
    return EXIT_OK


def _read_words(args) -> list:
    if args.file:
        try:
            tokens = Path(args.file).read_text().split()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from exc
    else:
        tokens = " ".join(args.seed).replace(",", " ").split()
    words = [_hex_word(tok) for tok in tokens]
    if len(words) != 16:
        raise UsageError(f"expected 16 words, got {len(words)}")
    return words


def cmd_expand(args) -> int:
    words = _read_words(args)
    out = expand_backward(words, args.steps) if args.backward else expand_forward(words).words
    sys.stdout.write("".join(f"{w:08x}\n" for w in out))
    return EXIT_OK


def cmd_table(args) -> int:
    text = type_i_table().to_csv()
    if args.output:
        traceio.atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    RegisterLayout.symmetric(args.n)
    report = bench.run_bench(args.n, args.reps)
    if args.format == "json":
        print(json.dumps(report, indent=1))
        return EXIT_OK
    print(f"n={report['n']} amplitudes={report['amplitudes']} reps={args.reps}")
    print(f"{'gate':<10}{'min [ms]':>12}{'median [ms]':>14}")
    rows = list(report["gates"].items()) + [("pipeline", report["pipeline"])]
    for name, s in rows:
        print(f"{name:<10}{s['min'] * 1e3:>12.3f}{s['median'] * 1e3:>14.3f}")
    return EXIT_OK


COMMANDS = {"simulate": cmd_simulate, "expand": cmd_expand, "table": cmd_table, "bench": cmd_bench}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleFileError, OracleRangeError) as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
