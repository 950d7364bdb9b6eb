"""Command-line front end.

Subcommands::

    quasipack generate [options]   flood-fill the strip and write the pattern
    quasipack cluster  [options]   print the 21 points of the two-shell cluster
    quasipack verify   [options]   compare the determinant test with the oracle

A bare ``quasipack generate`` runs the default configuration: seeds (1, 0)
and (0.9, 1.1), translation 3.7 in every coordinate, 10000 analysed points.

Exit codes: 0 success, 1 verification disagreement, 2 usage error,
3 degenerate basis, 4 start point outside the strip, 5 infinite strip,
6 coordinate overflows the Mathematica F10.5 field, 7 empty pattern,
8 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .cluster import cluster_points
from .errors import QuasipackError
from .generator import (DEFAULT_BUDGET, DEFAULT_SEED1, DEFAULT_SEED2, DEFAULT_TRANSLATION, GenConfig,
                        check_cluster_adjacency, generate)
from .render import OutputFormat, write_format
from .strip import oracle_sweep

EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_IO = 8

# config-file keys map onto argparse destinations
_FILE_KEYS = {
    "seed1": "seed1", "seed2": "seed2", "translation": "translation", "budget": "budget",
    "eps": "eps", "dedup-tol": "dedup_tol", "start": "start", "format": "formats",
    "output": "output", "debug-preimages": "debug_preimages",
    "keep-partial-layer": "keep_partial_layer", "samples": "samples", "rng-seed": "rng_seed",
}
_SUFFIX_FORMATS = {f.suffix: f for f in OutputFormat}


@dataclass
class CliInvocation:
    subcommand: str
    config: GenConfig
    formats: list[OutputFormat] = field(default_factory=list)
    output: Path | None = None
    samples: int = 10_000
    rng_seed: int = 0


def _floats(text: str, n: int | None = None) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in str(text).split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if n is not None and len(values) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return values


def _vec2(text: str) -> tuple[float, float]:
    return _floats(text, 2)


def _translation(text: str) -> tuple[float, ...]:
    values = _floats(text)
    if len(values) == 1:
        return values * 10
    if len(values) != 10:
        raise argparse.ArgumentTypeError("translation takes 1 value (broadcast) or 10 values")
    return values


def _lattice(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in str(text).split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 10 comma-separated integers, got {text!r}")
    if len(values) != 10:
        raise argparse.ArgumentTypeError(f"expected 10 comma-separated integers, got {text!r}")
    return values


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return value


def _truthy(text: str) -> bool:
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


_CONVERTERS = {
    "seed1": _vec2, "seed2": _vec2, "translation": _translation, "budget": _positive_int,
    "eps": _non_negative, "dedup_tol": _non_negative, "start": _lattice,
    "formats": lambda s: [OutputFormat(f.strip()) for f in s.split(",")],
    "output": Path, "debug_preimages": _truthy, "keep_partial_layer": _truthy,
    "samples": _positive_int, "rng_seed": int,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed1", type=_vec2, metavar="X,Y",
                        help="vertex of the first shell (default 1,0)")
    common.add_argument("--seed2", type=_vec2, metavar="X,Y",
                        help="vertex of the second shell (default 0.9,1.1)")
    common.add_argument("--translation", type=_translation, metavar="T[,...]",
                        help="strip translation: one value broadcast to 10, or 10 values (default 3.7)")
    common.add_argument("--budget", type=_positive_int, metavar="N",
                        help="maximum number of analysed lattice points (default 10000)")
    common.add_argument("--eps", type=_non_negative, metavar="E",
                        help="boundary band of the strip test (default 1e-9 * norm^2)")
    common.add_argument("--dedup-tol", type=_non_negative, metavar="D",
                        help="squared distance below which projected points coincide "
                             "(default 1e-9 * (1 + norm^2))")
    common.add_argument("--start", type=_lattice, metavar="N1,...,N10",
                        help="start lattice point instead of the rounded translation")
    common.add_argument("--format", dest="formats", action="append",
                        choices=[f.value for f in OutputFormat],
                        help="output format; repeat for several")
    common.add_argument("--output", type=Path, metavar="PATH",
                        help="output file; with several formats the suffix is replaced per format")
    common.add_argument("--config", type=Path, metavar="FILE",
                        help="key = value file using the long option names; flags win")
    common.add_argument("--debug-preimages", action="store_true", default=None,
                        help="retain lattice preimages and check cluster adjacency")
    common.add_argument("--keep-partial-layer", action="store_true", default=None,
                        help="also emit points of the unfinished last BFS layer")
    common.add_argument("--samples", type=_positive_int, help="verify: number of random points")
    common.add_argument("--rng-seed", type=int, help="verify: random seed")

    parser = argparse.ArgumentParser(
        prog="quasipack",
        description="Quasiperiodic packings of two-shell decagonal clusters by strip projection.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("generate", parents=[common], help="generate a pattern")
    sub.add_parser("cluster", parents=[common], help="print the two-shell cluster")
    sub.add_parser("verify", parents=[common], help="oracle-equivalence sweep")
    return parser


def read_config_file(path: Path) -> dict[str, object]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-").replace("_", "-")
        if not sep or key not in _FILE_KEYS:
            raise ValueError(f"{path}:{lineno}: cannot parse {raw!r}")
        dest = _FILE_KEYS[key]
        values[dest] = _CONVERTERS[dest](value.strip())
    return values


def parse_args(argv: Sequence[str] | None = None) -> CliInvocation:
    parser = build_parser()
    ns = parser.parse_args(argv)
    merged = {}
    if ns.config is not None:
        try:
            merged = read_config_file(ns.config)
        except (OSError, ValueError, argparse.ArgumentTypeError) as exc:
            parser.error(f"--config: {exc}")
    for dest in _FILE_KEYS.values():
        value = getattr(ns, dest)
        if value is not None:
            merged[dest] = [OutputFormat(f) for f in value] if dest == "formats" else value

    try:
        config = GenConfig(
            seed1=merged.get("seed1", DEFAULT_SEED1),
            seed2=merged.get("seed2", DEFAULT_SEED2),
            translation=merged.get("translation", DEFAULT_TRANSLATION),
            budget=merged.get("budget", DEFAULT_BUDGET),
            eps_boundary=merged.get("eps"),
            dedup_tol=merged.get("dedup_tol"),
            start_override=merged.get("start"),
            debug_preimages=bool(merged.get("debug_preimages", False)),
            keep_partial_layer=bool(merged.get("keep_partial_layer", False)),
        )
    except ValueError as exc:
        parser.error(str(exc))

    output = merged.get("output")
    formats = list(dict.fromkeys(merged.get("formats", [])))
    if output is not None and not formats:
        formats = [_SUFFIX_FORMATS.get(output.suffix, OutputFormat.MATHEMATICA)]
    return CliInvocation(subcommand=ns.subcommand, config=config, formats=formats, output=output,
                         samples=merged.get("samples", 10_000), rng_seed=merged.get("rng_seed", 0))


def config_to_argv(config: GenConfig) -> list[str]:
    """Flags that :func:`parse_args` turns back into ``config``.

    Values are attached with ``=`` so negative numbers are not read as options.
    """
    argv = [f"--seed1={','.join(map(repr, config.seed1))}",
            f"--seed2={','.join(map(repr, config.seed2))}",
            f"--translation={','.join(map(repr, config.translation))}",
            f"--budget={config.budget}"]
    if config.eps_boundary is not None:
        argv.append(f"--eps={config.eps_boundary!r}")
    if config.dedup_tol is not None:
        argv.append(f"--dedup-tol={config.dedup_tol!r}")
    if config.start_override is not None:
        argv.append(f"--start={','.join(map(str, config.start_override))}")
    if config.debug_preimages:
        argv.append("--debug-preimages")
    if config.keep_partial_layer:
        argv.append("--keep-partial-layer")
    return argv


def output_paths(invocation: CliInvocation) -> list[tuple[OutputFormat, Path]]:
    base = invocation.output if invocation.output is not None else Path("pattern")
    if len(invocation.formats) == 1 and invocation.output is not None:
        return [(invocation.formats[0], base)]
    return [(fmt, base.with_suffix(fmt.suffix)) for fmt in invocation.formats]


def _run_generate(inv: CliInvocation, out) -> int:
    config = inv.config
    basis = config.basis()
    cluster = cluster_points(basis)
    pattern = generate(config, basis=basis)
    for fmt, path in output_paths(inv):
        with open(path, "w", newline="\n") as sink:
            write_format(fmt, cluster, pattern, config, sink)
    print(f"analysed: {pattern.analysed}", file=out)
    print(f"obtained: {pattern.obtained}", file=out)
    print(f"boundary: {pattern.boundary}", file=out)
    print(f"truncated: {str(pattern.truncated).lower()}", file=out)
    if config.debug_preimages:
        report = check_cluster_adjacency(basis, pattern)
        print(f"adjacent pairs: {report.pairs}", file=out)
        print(f"pairs on cluster: {report.on_cluster}", file=out)
        print(f"max displacement error: {report.max_error:.3e}", file=out)
    return 0


def _run_cluster(inv: CliInvocation, out) -> int:
    cluster = cluster_points(inv.config.basis())
    print("x,y", file=out)
    for p in cluster.vertices():
        print(f"{p.x:.8f},{p.y:.8f}", file=out)
    return 0


def _run_verify(inv: CliInvocation, out) -> int:
    sweep = oracle_sweep(inv.config.basis(), samples=inv.samples, seed=inv.rng_seed,
                         eps=inv.config.eps_boundary)
    print(f"samples: {sweep.samples}", file=out)
    print(f"abstained: {sweep.abstained}", file=out)
    print(f"compared: {sweep.compared}", file=out)
    print(f"agreed: {sweep.agreed}", file=out)
    print(f"agreement: {100.0 * sweep.agreement:g}%", file=out)
    return 0 if not sweep.disagreements else EXIT_DISAGREEMENT


_COMMANDS = {"generate": _run_generate, "cluster": _run_cluster, "verify": _run_verify}


def run(invocation: CliInvocation, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        return _COMMANDS[invocation.subcommand](invocation, out)
    except QuasipackError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
