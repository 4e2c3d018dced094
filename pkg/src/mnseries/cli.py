"""Command-line surface: run the verifiers, expand series files, classify the
built-in groups, and emit machine-readable reports.

Exit codes: 0 verified/ok, 2 counterexample found, 3 inconclusive at the
given truncation, 64 usage error, 65 guard-limit violation, 70 internal
invariant failure. Reports are deterministic for a fixed seed; the
elapsed_ms field is the only part that may vary between runs and it is
excluded from the content digest.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time

from . import registry
from .crossed import check_crossed_system
from .freeness import (
    GuardLimitError,
    digit_sum_check,
    free_monoid_check,
    group_algebra_independence,
    pingpong_check,
    type1_unit_generators,
)
from .groups import SemidirectGroup, classify_order_type
from .magnus import FreeWord, magnus_image, parse_word
from .scalars import field_from_spec, parse_rational
from .series import from_text, to_text

SCHEMA = "mnseries-report/1"
GUARDS = {"L": 16, "D": 12, "N": 20}

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_GUARD = 65
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mnseries", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report to a file instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--unsafe-bounds", action="store_true",
                       help="lift the default guard limits (L<=16, D<=12, N<=20)")

    p = sub.add_parser("verify-monoid", help="collision-check generator words in a built-in group")
    p.add_argument("--group", required=True, choices=registry.group_ids())
    p.add_argument("--gens", required=True, help='comma-separated element strings, e.g. "B(1/1,1),B(0/1,1)"')
    p.add_argument("--L", type=int, required=True)
    common(p)

    p = sub.add_parser("verify-group-algebra",
                       help="certify linear independence of reduced words in the units 1+c*x, 1+d*y")
    p.add_argument("--group", default="heis", choices=("heis",))
    p.add_argument("--c", required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--field", default="Q", help='"Q", "Fp:<p>" or "Qsqrt:<m>"')
    common(p)

    p = sub.add_parser("digit-sum", help="subset sums of powers of r must be pairwise distinct")
    p.add_argument("--r", required=True, help="positive rational, e.g. 5/2")
    p.add_argument("--N", type=int, required=True)
    common(p)

    p = sub.add_parser("magnus", help="truncated images of free-group words under letter -> 1+letter")
    p.add_argument("--words", required=True, help='comma-separated words, e.g. "ab,ba"; apostrophe marks inverses')
    p.add_argument("--D", type=int, required=True)
    common(p)

    p = sub.add_parser("expand", help="read a series file, optionally invert it, print it back")
    p.add_argument("--series-file", required=True)
    p.add_argument("--invert", action="store_true")
    common(p)

    p = sub.add_parser("check-crossed", help="verify the crossed-system validity identities")
    p.add_argument("--system", required=True, choices=("trivial",) + registry.CROSSED_IDS[1:])
    p.add_argument("--group", default="heis", choices=registry.group_ids(),
                   help="home group for the trivial system")
    p.add_argument("--samples", type=int, default=200)
    common(p)

    p = sub.add_parser("pingpong", help="ping-pong certificate on the Baumslag-Solitar-style group")
    p.add_argument("--r", required=True, help="integer ratio >= 2")
    p.add_argument("--t", required=True, help="nonzero rational translation")
    p.add_argument("--L", type=int, required=True)
    common(p)

    p = sub.add_parser("classify", help="convex-jump order type of a built-in group")
    p.add_argument("--group", required=True, choices=registry.group_ids())
    common(p)

    return parser


def _check_guards(args):
    if getattr(args, "unsafe_bounds", False):
        return
    for name in ("L", "D", "N"):
        value = getattr(args, name, None)
        if value is not None and value > GUARDS[name]:
            raise GuardLimitError(
                f"{name}={value} exceeds the guard limit {GUARDS[name]} (pass --unsafe-bounds to override)"
            )


def _digest(payload: dict) -> str:
    scrubbed = {k: v for k, v in payload.items() if k not in ("elapsed_ms", "digest")}
    blob = json.dumps(scrubbed, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _render_text(payload: dict) -> str:
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                emit(f"{prefix}.{k}" if prefix else k, value[k])
        elif isinstance(value, list):
            lines.append(f"{prefix}: {json.dumps(value)}")
        else:
            lines.append(f"{prefix}: {value}")

    emit("", payload)
    return "\n".join(lines) + "\n"


def _write_output(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mnseries-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _finish(args, payload: dict, exit_code: int, started: float) -> int:
    payload["schema"] = SCHEMA
    payload["elapsed_ms"] = int((time.perf_counter() - started) * 1000)
    payload["digest"] = _digest(payload)
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_text(payload)
    _write_output(text, args.out)
    return exit_code


def _split_elements(spec: str):
    """Split a comma-separated list of element strings, ignoring the commas
    inside parentheses or braces."""
    parts = []
    depth = 0
    current = []
    for ch in spec:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return parts


def _run_verify_monoid(args) -> int:
    started = time.perf_counter()
    group = registry.resolve_group(args.group)
    gens = [group.parse_element(s) for s in _split_elements(args.gens)]
    report = free_monoid_check(group, gens, args.L)
    payload = {"command": "verify-monoid", "params": {"group": args.group, "gens": args.gens,
                                                      "L": args.L, "seed": args.seed}}
    payload.update(report.to_json())
    return _finish(args, payload, report.exit_code, started)


def _run_verify_group_algebra(args) -> int:
    started = time.perf_counter()
    group = registry.resolve_group(args.group)
    fld = field_from_spec(args.field)
    c = fld.parse(args.c)
    d = fld.parse(args.d)
    units = type1_unit_generators(group, c, d, args.D)
    report = group_algebra_independence(list(units), args.L)
    payload = {"command": "verify-group-algebra",
               "params": {"group": args.group, "c": args.c, "d": args.d, "L": args.L,
                          "D": args.D, "field": args.field, "seed": args.seed}}
    payload.update(report.to_json())
    return _finish(args, payload, report.exit_code, started)


def _run_digit_sum(args) -> int:
    started = time.perf_counter()
    r = parse_rational(args.r)
    report = digit_sum_check(r, args.N)
    payload = {"command": "digit-sum", "params": {"r": args.r, "N": args.N, "seed": args.seed}}
    payload.update(report.to_json())
    return _finish(args, payload, report.exit_code, started)


def _run_magnus(args) -> int:
    started = time.perf_counter()
    words = [parse_word(w.strip()) for w in args.words.split(",")]
    size = max(w.size for w in words)
    words = [FreeWord(size, w.letters) for w in words]
    images = []
    seen = {}
    collision = None
    for w in words:
        img = magnus_image(w, args.D)
        key = img.key()
        if key in seen and collision is None:
            collision = [str(seen[key]), str(w)]
        seen.setdefault(key, w)
        images.append({
            "word": str(w),
            "terms": [
                [img.context.weight(g), img.context.format_element(g), img.field.format(coeff)]
                for g, coeff in img.sorted_terms()
            ],
        })
    payload = {
        "command": "magnus",
        "params": {"words": args.words, "D": args.D, "seed": args.seed},
        "kind": "magnus",
        "bounds": {"L": max((len(w.letters) for w in words), default=0), "D": args.D, "N": None},
        "distinct": collision is None,
        "collision": collision,
        "images": images,
    }
    return _finish(args, payload, EXIT_OK if collision is None else EXIT_COUNTEREXAMPLE, started)


def _run_expand(args) -> int:
    started = time.perf_counter()
    with open(args.series_file) as handle:
        text = handle.read()
    series = from_text(text, registry.resolve_monoid, registry.resolve_crossed)
    if args.invert:
        series = series.invert()
    rendered = to_text(series)
    if args.format == "text":
        _write_output(rendered, args.out)
        return EXIT_OK
    payload = {
        "command": "expand",
        "params": {"series_file": os.path.basename(args.series_file),
                   "invert": args.invert, "seed": args.seed},
        "series": rendered,
    }
    return _finish(args, payload, EXIT_OK, started)


def _run_check_crossed(args) -> int:
    started = time.perf_counter()
    if args.system == "trivial":
        system = registry.trivial_on(args.group)
    else:
        system = registry.builtin_system(args.system)
    report = check_crossed_system(system, args.samples, args.seed)
    payload = {
        "command": "check-crossed",
        "params": {"system": args.system, "group": system.group.id,
                   "samples": args.samples, "seed": args.seed},
        "kind": "crossed-validity",
    }
    payload.update(report.to_json())
    return _finish(args, payload, EXIT_OK if report.valid else EXIT_COUNTEREXAMPLE, started)


def _run_pingpong(args) -> int:
    started = time.perf_counter()
    r = parse_rational(args.r)
    t = parse_rational(args.t)
    group = SemidirectGroup(r, t)
    report = pingpong_check(group, t, args.L)
    payload = {"command": "pingpong",
               "params": {"r": args.r, "t": args.t, "L": args.L, "seed": args.seed}}
    payload.update(report.to_json())
    return _finish(args, payload, report.exit_code, started)


def _run_classify(args) -> int:
    started = time.perf_counter()
    group = registry.resolve_group(args.group)
    result = classify_order_type(group, seed=args.seed)
    payload = {"command": "classify",
               "params": {"group": args.group, "seed": args.seed},
               "kind": "order-type"}
    payload.update(result.to_json())
    return _finish(args, payload, EXIT_OK, started)


_RUNNERS = {
    "verify-monoid": _run_verify_monoid,
    "verify-group-algebra": _run_verify_group_algebra,
    "digit-sum": _run_digit_sum,
    "magnus": _run_magnus,
    "expand": _run_expand,
    "check-crossed": _run_check_crossed,
    "pingpong": _run_pingpong,
    "classify": _run_classify,
}


def run_command(argv) -> int:
    """Parse and dispatch; never writes partial output on failure."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        _check_guards(args)
        return _RUNNERS[args.command](args)
    except GuardLimitError as exc:
        print(f"mnseries: guard limit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError) as exc:
        print(f"mnseries: error: {exc}", file=sys.stderr)
        print(f"run 'mnseries {args.command} --help' for usage", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # internal invariant failure
        print(f"mnseries: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main(argv=None) -> int:
    code = run_command(sys.argv[1:] if argv is None else argv)
    raise SystemExit(code)


if __name__ == "__main__":
    main()
