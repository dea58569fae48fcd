"""Command-line surface: blockability decisions, midpoint and coset-spread
reports (CSV plus rendered figure), torus blocking sets, SL(2) square roots
and the seeded selftest.

Exit codes: 0 success, 2 malformed input or usage error, 3 rejected field
specification (e.g. reducible minimal polynomial).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import reporting
from .blockability import (PointPair, WindowCapError, decide_pair,
                           enumerate_midpoints)
from .exactnum import FieldSpecError, NumberField, parse_rational
from .heisenberg import HeisPoint, LatticeSpec, reduce
from .selftest import run_selftest
from .sl2 import Sl2Matrix, SquarefreeLimitError, coset_spread, sl2_sqrt
from .torus import TorusPoint, torus_block_set, torus_verify


class InputError(ValueError):
    """Malformed or inconsistent command input (exit code 2)."""


DEFAULT_WINDOWS = {"midpoints": {1: 8, 2: 4}, "spread": 10}
WINDOW_CAPS = {"midpoints": {1: 16, 2: 6}, "spread": 10}


@dataclass(frozen=True)
class SessionConfig:
    """Resolved per-invocation configuration; a fixed seed and identical
    inputs produce byte-identical reports."""

    field_path: str | None = None
    lattice_path: str | None = None
    window: int | None = None
    max_window: int | None = None
    output_format: str = "json"
    out_path: str | None = None
    seed: int = 42
    render_figures: bool = True

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "SessionConfig":
        fmt = args.format if args.format is not None else getattr(args, "default_format", "json")
        return cls(field_path=args.field, lattice_path=args.lattice,
                   window=args.window, max_window=args.max_window,
                   output_format=fmt, out_path=args.out, seed=args.seed,
                   render_figures=not args.no_figure)

    # -- input loading -------------------------------------------------------

    def load_field(self) -> NumberField:
        if not self.field_path:
            return NumberField.rational()
        obj = _load_json(self.field_path)
        try:
            return NumberField.from_json(obj)
        except FieldSpecError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed field spec: {exc}") from exc

    def load_lattice(self, n: int) -> LatticeSpec:
        if not self.lattice_path:
            return LatticeSpec.standard(n)
        obj = _load_json(self.lattice_path)
        try:
            spec = LatticeSpec.from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed lattice spec: {exc}") from exc
        if spec.n != n:
            raise InputError(f"lattice dimension {spec.n} disagrees with points ({n})")
        return spec

    def resolve_window(self, default: int, cap: int, what: str) -> int:
        window = self.window if self.window is not None else default
        cap = self.max_window if self.max_window is not None else cap
        if window < 1:
            raise InputError("window must be >= 1")
        if window > cap:
            raise InputError(f"window {window} exceeds the {what} cap {cap} "
                             "(raise it with --max-window)")
        return window

    # -- output --------------------------------------------------------------

    def emit(self, text: str) -> None:
        if self.out_path:
            Path(self.out_path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)

    def emit_json(self, payload) -> None:
        self.emit(json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def emit_report(self, header, rows, *, title: str, ylabel: str) -> None:
        """CSV report; when writing to a file, a figure lands next to it."""
        text = reporting.csv_text(header, rows)
        if self.out_path:
            Path(self.out_path).write_text(text, encoding="utf-8")
            if self.render_figures:
                reporting.render_count_figure(
                    rows, reporting.figure_path_for(self.out_path),
                    title=title, xlabel=header[0], ylabel=ylabel)
        else:
            sys.stdout.write(text)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _load_pair(config: SessionConfig, path: str, field: NumberField) -> PointPair:
    obj = _load_json(path)
    try:
        g1 = HeisPoint.from_json(field, obj["m1"])
        g2 = HeisPoint.from_json(field, obj["m2"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed pair: {exc}") from exc
    if g1.n != g2.n:
        raise InputError("pair members have different dimensions")
    lattice = config.load_lattice(g1.n)
    m1, _ = reduce(g1, lattice)
    m2, _ = reduce(g2, lattice)
    return PointPair(lattice, m1, m2)


def _load_sl2(path: str) -> Sl2Matrix:
    obj = _load_json(path)
    try:
        rows = obj["entries"]
        return Sl2Matrix.from_rational_rows(
            [[parse_rational(rows[0][0]), parse_rational(rows[0][1])],
             [parse_rational(rows[1][0]), parse_rational(rows[1][1])]])
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise InputError(f"malformed SL(2) matrix: {exc}") from exc


def cmd_decide(config: SessionConfig, pair_path: str) -> int:
    field = config.load_field()
    pair = _load_pair(config, pair_path, field)
    verdict = decide_pair(pair)
    config.emit_json(verdict.to_json())
    return 0


def cmd_midpoints(config: SessionConfig, pair_path: str) -> int:
    field = config.load_field()
    pair = _load_pair(config, pair_path, field)
    n = pair.lattice.n
    window = config.resolve_window(DEFAULT_WINDOWS["midpoints"].get(n, 2),
                                   WINDOW_CAPS["midpoints"].get(n, 2), "midpoints")
    report = enumerate_midpoints(pair, window)
    if config.output_format == "json":
        config.emit_json({"windows": list(report.windows),
                          "class_counts": list(report.class_counts),
                          "saturated": report.saturated})
    else:
        config.emit_report(("window_radius", "class_count"), report.csv_rows(),
                           title="midpoint classes by window",
                           ylabel="distinct classes")
    return 0


def cmd_torus(config: SessionConfig, points_path: str) -> int:
    obj = _load_json(points_path)
    try:
        n = int(obj["n"])
        p = TorusPoint([parse_rational(c) for c in obj["p"]])
        q = TorusPoint([parse_rational(c) for c in obj["q"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed torus input: {exc}") from exc
    if p.n != n or q.n != n:
        raise InputError("coordinate count disagrees with n")
    window = config.window if config.window is not None else 8
    if window < 1:
        raise InputError("window must be >= 1")
    result = torus_block_set(p, q)
    payload = result.to_json()
    payload["verified_window"] = window
    payload["verified"] = torus_verify(p, q, result.points, window)
    config.emit_json(payload)
    return 0


def cmd_sl2_sqrt(config: SessionConfig, matrix_path: str) -> int:
    g = _load_sl2(matrix_path)
    config.emit_json(sl2_sqrt(g).to_json())
    return 0


def cmd_sl2_spread(config: SessionConfig, matrix_path: str | None) -> int:
    g = Sl2Matrix.identity() if matrix_path is None else _load_sl2(matrix_path)
    window = config.resolve_window(DEFAULT_WINDOWS["spread"],
                                   WINDOW_CAPS["spread"], "spread")
    report = coset_spread(g, window)
    if config.output_format == "json":
        config.emit_json({"window": report.window,
                          "radical_set": list(report.radical_set),
                          "coset_lower_bound": report.coset_lower_bound,
                          "counts_by_window": list(report.counts_by_window)})
    else:
        config.emit_report(("N", "radical_count"), report.csv_rows(),
                           title="distinct radicals by window",
                           ylabel="distinct radicals")
    return 0


def cmd_selftest(config: SessionConfig) -> int:
    report, ok = run_selftest(config.seed)
    config.emit(report)
    return 0 if ok else 1


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--field", help="number field JSON path (default: rationals)")
    sub.add_argument("--lattice", help="lattice spec JSON path (default: delta = 1)")
    sub.add_argument("--window", type=int, help="enumeration window")
    sub.add_argument("--max-window", type=int, default=None,
                     help="override the default window cap")
    sub.add_argument("--format", choices=("json", "csv"), default=None)
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--seed", type=int, default=42, help="seed for sampled suites")
    sub.add_argument("--no-figure", action="store_true",
                     help="skip the PNG rendered next to CSV reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilblock",
        description="Exact connection-blocking computations on Heisenberg "
                    "nilmanifolds, flat tori and SL(2) quotients.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("decide", help="blockability verdict for a point pair")
    p.add_argument("pair", help="pair JSON path ('-' for stdin)")
    _add_common(p)
    p.set_defaults(run=lambda cfg, a: cmd_decide(cfg, a.pair), default_format="json")

    p = subs.add_parser("midpoints", help="midpoint class counts per window")
    p.add_argument("pair", help="pair JSON path ('-' for stdin)")
    _add_common(p)
    p.set_defaults(run=lambda cfg, a: cmd_midpoints(cfg, a.pair), default_format="csv")

    p = subs.add_parser("torus", help="flat-torus blocking set and verification")
    p.add_argument("points", help="JSON path with n, p, q ('-' for stdin)")
    _add_common(p)
    p.set_defaults(run=lambda cfg, a: cmd_torus(cfg, a.points), default_format="json")

    sl2_parser = subs.add_parser("sl2", help="SL(2) square roots and coset spread")
    sl2_subs = sl2_parser.add_subparsers(dest="sl2_command", required=True)

    p = sl2_subs.add_parser("sqrt", help="square roots of a rational SL(2) matrix")
    p.add_argument("matrix", help="matrix JSON path ('-' for stdin)")
    _add_common(p)
    p.set_defaults(run=lambda cfg, a: cmd_sl2_sqrt(cfg, a.matrix), default_format="json")

    p = sl2_subs.add_parser("spread", help="distinct square-root radicals per window")
    p.add_argument("matrix", nargs="?", default=None,
                   help="matrix JSON path (default: identity)")
    _add_common(p)
    p.set_defaults(run=lambda cfg, a: cmd_sl2_spread(cfg, a.matrix), default_format="csv")

    p = subs.add_parser("selftest", help="run the seeded invariant suites")
    _add_common(p)
    p.set_defaults(run=lambda cfg, a: cmd_selftest(cfg), default_format="text")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = SessionConfig.from_args(args)
    try:
        return args.run(config, args)
    except FieldSpecError as exc:
        print(f"error: field specification rejected: {exc}", file=sys.stderr)
        return 3
    except (InputError, WindowCapError, SquarefreeLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
