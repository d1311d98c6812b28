"""Command-line front end.

Exit codes: 0 positive verdict or output written, 1 negative verdict,
2 usage/parse/validation error, 3 state limit exceeded, 4 write failure,
130 interrupted.
"""
from __future__ import annotations

import argparse
import os
import signal
import sys
import time
from pathlib import Path

from .automaton import (DEFAULT_STATE_LIMIT, CancelToken, as_deterministic,
                        determinize, parallel, render_state,
                        uncontrollable_augment)
from .autfile import format_aut, format_report, read_aut, to_dot, write_aut
from .errors import (AlphabetConflict, AlphabetMismatch, Cancelled,
                     NondeterministicSpec, ParseError, StateLimitExceeded)
from .relations import bisimilar, greatest_simulation
from .supremal import f_syn, supremal
from .synthesis import check_existence, verify_closed_loop

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_LIMIT, EXIT_WRITE = 0, 1, 2, 3, 4
EXIT_INTERRUPTED = 130


class WriteFailure(Exception):
    pass


def _state_limit(args) -> int:
    if args.state_limit is not None:
        return args.state_limit
    env = os.environ.get("DESCS_STATE_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"DESCS_STATE_LIMIT is not an integer: {env!r}")
    return DEFAULT_STATE_LIMIT


def _load_spec(path):
    spec = read_aut(path)
    try:
        return as_deterministic(spec)
    except NondeterministicSpec as exc:
        raise ParseError(f"specification must be deterministic: {exc}",
                         path=path) from None


def _write(a, path):
    try:
        write_aut(a, path)
    except OSError as exc:
        raise WriteFailure(f"cannot write {path}: {exc.strerror}")


def _emit_automaton(a, out):
    if out is None:
        text, _ = format_aut(a)
        sys.stdout.write(text)
    else:
        _write(a, out)


def _check_into_report(spec, plant, ctx):
    report = check_existence(spec, plant, state_limit=ctx["limit"],
                             cancel=ctx["cancel"])
    ctx["report"].update(
        result="controllable" if report.controllable else "not-controllable",
        plant_states=len(plant), spec_states=len(spec),
        product_states=report.product_states,
        failed=",".join(report.failures) or None,
        dead_witness=report.dead_witness,
        unctrl_witness=report.unctrl_witness,
    )
    if report.marking_witness is not None:
        string, pair = report.marking_witness
        ctx["report"].update(marking_witness=string,
                             marking_state=render_state(pair))
    return report.controllable


def cmd_check(args, ctx):
    plant, spec = read_aut(args.plant), _load_spec(args.spec)
    ok = _check_into_report(spec, plant, ctx)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_synthesize(args, ctx):
    plant, spec = read_aut(args.plant), _load_spec(args.spec)
    if not _check_into_report(spec, plant, ctx):
        return EXIT_NEGATIVE
    # existence already established, so the augmented spec is the supervisor
    supervisor = uncontrollable_augment(spec)
    _write(supervisor, args.output)
    ctx["report"].update(supervisor_states=len(supervisor),
                         output=str(args.output))
    return EXIT_OK


def cmd_supremal(args, ctx):
    plant, spec = read_aut(args.plant), _load_spec(args.spec)
    res = supremal(spec, plant, method=args.method, state_limit=ctx["limit"],
                   cancel=ctx["cancel"])
    ctx["report"].update(result=res.outcome, method=res.method,
                         iterations=res.iterations)
    if res.empty:
        return EXIT_NEGATIVE
    ctx["report"].update(states=len(res.sub_spec), output=str(args.output))
    _write(res.sub_spec, args.output)
    return EXIT_OK


def cmd_verify(args, ctx):
    plant = read_aut(args.plant)
    supervisor = read_aut(args.supervisor)
    spec = _load_spec(args.spec)
    verdict = verify_closed_loop(plant, supervisor, spec,
                                 state_limit=ctx["limit"])
    rep = ctx["report"]
    rep["result"] = "bisimilar" if verdict.ok else "not-bisimilar"
    if not verdict.ok:
        rep["failed"] = verdict.condition
        if verdict.condition == "uncontrollable-disabled":
            state, event = verdict.witness
            rep.update(state=render_state(state), event=event)
        else:
            pair, string = verdict.witness
            rep.update(state_pair=render_state(pair), witness=string)
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def cmd_bisim(args, ctx):
    a, b = read_aut(args.first), read_aut(args.second)
    ok, _ = bisimilar(a, b)
    ctx["report"]["result"] = "bisimilar" if ok else "not-bisimilar"
    if not ok:
        ctx["report"]["state_pair"] = render_state((a.initial, b.initial))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_sim(args, ctx):
    a, b = read_aut(args.first), read_aut(args.second)
    ok = greatest_simulation(a, b).relates_initials
    ctx["report"]["result"] = "simulated" if ok else "not-simulated"
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_compose(args, ctx):
    a, b = read_aut(args.first), read_aut(args.second)
    out = parallel(a, b, state_limit=ctx["limit"])
    _emit_automaton(out, args.output)
    if args.dot:
        try:
            Path(args.dot).write_text(to_dot(out), encoding="utf-8")
        except OSError as exc:
            raise WriteFailure(f"cannot write {args.dot}: {exc.strerror}")
    ctx["report"].update(result="written", states=len(out))
    return EXIT_OK


def cmd_det(args, ctx):
    out = determinize(read_aut(args.input), state_limit=ctx["limit"])
    _emit_automaton(out, args.output)
    ctx["report"].update(result="written", states=len(out))
    return EXIT_OK


def cmd_fsyn(args, ctx):
    out = f_syn(read_aut(args.input), state_limit=ctx["limit"])
    _emit_automaton(out, args.output)
    ctx["report"].update(result="written", states=len(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--state-limit", type=int, metavar="N",
                        help=f"state budget (default {DEFAULT_STATE_LIMIT}, "
                             "or $DESCS_STATE_LIMIT)")
    common.add_argument("--report", metavar="PATH",
                        help="also write the report to PATH")
    common.add_argument("--machine", action="store_true",
                        help="emit the report as a single JSON object")
    common.add_argument("--seed", type=int, metavar="N",
                        help="recorded in the report; the tool is deterministic")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock time to the report")

    parser = argparse.ArgumentParser(
        prog="descs",
        description="Bisimilarity enforcing supervisory control of "
                    "nondeterministic discrete event systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "test whether a bisimilarity enforcing "
                                "supervisor exists")
    p.add_argument("plant")
    p.add_argument("spec")

    p = add("synthesize", cmd_synthesize, "write a supervisor for PLANT/SPEC")
    p.add_argument("plant")
    p.add_argument("spec")
    p.add_argument("-o", "--output", required=True)

    p = add("supremal", cmd_supremal, "supremal controllable sub-specification")
    p.add_argument("plant")
    p.add_argument("spec")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--method", choices=("fixpoint", "formula"),
                   default="fixpoint")

    p = add("verify", cmd_verify, "check a supervisor against plant and spec")
    p.add_argument("plant")
    p.add_argument("supervisor")
    p.add_argument("spec")

    p = add("bisim", cmd_bisim, "bisimilarity of two automata")
    p.add_argument("first")
    p.add_argument("second")

    p = add("sim", cmd_sim, "is FIRST simulated by SECOND")
    p.add_argument("first")
    p.add_argument("second")

    p = add("compose", cmd_compose, "parallel composition")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output")
    p.add_argument("--dot", metavar="PATH", help="also write a DOT digraph")

    p = add("det", cmd_det, "minimal deterministic automaton")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = add("fsyn", cmd_fsyn, "synchronous state merger")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    return parser


def _error(msg):
    print(f"descs: error: {msg}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cancel = CancelToken()
    previous = None
    try:
        previous = signal.signal(signal.SIGINT,
                                 lambda *_: cancel.cancel())
    except ValueError:
        pass  # not in the main thread

    report = {"command": args.command}
    ctx = {"report": report, "cancel": cancel}
    start = time.perf_counter()
    try:
        ctx["limit"] = _state_limit(args)
        code = args.func(args, ctx)
    except (ParseError, NondeterministicSpec, AlphabetMismatch,
            AlphabetConflict) as exc:
        _error(exc)
        return EXIT_USAGE
    except StateLimitExceeded as exc:
        _error(exc)
        report.update(result="state-limit-exceeded", state_limit=exc.limit)
        code = EXIT_LIMIT
    except WriteFailure as exc:
        _error(exc)
        return EXIT_WRITE
    except Cancelled:
        _error("interrupted")
        return EXIT_INTERRUPTED
    finally:
        if previous is not None:
            signal.signal(signal.SIGINT, previous)

    if args.seed is not None:
        report["seed"] = args.seed
    if args.timing:
        report["elapsed_s"] = time.perf_counter() - start
    text = format_report(report, machine=args.machine)
    if args.report:
        try:
            Path(args.report).write_text(text, encoding="utf-8")
        except OSError as exc:
            _error(f"cannot write report {args.report}: {exc.strerror}")
            return EXIT_WRITE
    emits_automaton = args.command in ("compose", "det", "fsyn") and \
        getattr(args, "output", None) is None
    if not emits_automaton:
        sys.stdout.write(text)
    return code
