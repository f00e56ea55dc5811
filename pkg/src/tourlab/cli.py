"""Command-line front end: analyze, embed, density, inversions, optimize.

Output is deterministic for deterministic inputs: identical invocations
produce byte-identical output.  Every command ends its report with one
machine-readable line prefixed '#RESULT '; failures print a single
'#ERROR <code>: <message>' line to stderr and exit with status 2.  Exit
status 1 is reserved for verdict-level disagreement under --expect.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .analysis import classify_unavoidability
from .core import (
    presented_from_name,
    read_graph_file,
    read_injection_file,
    tournament_from_name,
)
from .density import (
    BLOCK_PATTERNS,
    density_profile,
    inversion_density_profile,
    make_block_scheme,
    optimize_scheme,
)
from .embedding import AlwaysInfiniteOracle, spanning_embed
from .errors import (
    BudgetExhaustedError,
    CycleFoundError,
    GraphFormatError,
    MalformedInjectionError,
    OracleInconsistencyError,
    PinIncompatibilityError,
    PoolTooSmallError,
    SchemeError,
    TourlabError,
)

DEFAULT_BUDGET = 10_000

_ERROR_CODES = [
    (GraphFormatError, "graph-format"),
    (BudgetExhaustedError, "budget-exhausted"),
    (CycleFoundError, "cycle-found"),
    (MalformedInjectionError, "malformed-injection"),
    (OracleInconsistencyError, "oracle-inconsistency"),
    (PinIncompatibilityError, "pin-incompatibility"),
    (PoolTooSmallError, "pool-too-small"),
    (SchemeError, "scheme"),
    (TourlabError, "library"),
    (ValueError, "invalid-argument"),
    (OSError, "io"),
]


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation.  Exactly one input source per run; numeric
    parameters positive (the library re-checks its own bounds)."""

    subcommand: str
    source: Optional[str] = None
    graph: Optional[str] = None
    tournament: Optional[str] = None
    injection: Optional[str] = None
    horizon: Optional[int] = None
    nmax: Optional[int] = None
    stride: int = 1
    window: Optional[tuple[int, int]] = None
    patterns: Optional[tuple[str, ...]] = None
    budget: int = DEFAULT_BUDGET
    expect: Optional[str] = None
    oracle: str = "auto"


def _default_budget() -> int:
    raw = os.environ.get("TOURLAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"TOURLAB_BUDGET must be an integer, got {raw!r}") from e
    if value < 1:
        raise ValueError("TOURLAB_BUDGET must be positive")
    return value


def _load_graph(source: str):
    if os.path.exists(source):
        return read_graph_file(source)
    return presented_from_name(source)


def _parse_scheme_arg(text: str):
    """A scheme argument: 'factorial', or 'nested-dip:r=2,q=0.9,L0=64'."""
    name, _, rest = text.partition(":")
    kwargs = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise SchemeError(f"bad scheme parameter {item!r}; expected key=value")
            key = key.strip()
            if key in ("L0", "W0"):
                kwargs[key] = int(value)
            elif key in ("r", "q"):
                kwargs[key] = float(value)
            else:
                raise SchemeError(f"unknown scheme parameter {key!r}")
    return make_block_scheme(name, **kwargs)


def _resolve_injection(arg: str):
    if os.path.exists(arg):
        return read_injection_file(arg)
    return _parse_scheme_arg(arg).injection


def _print_csv(profile) -> None:
    print("n,forward_pairs,total_pairs,density")
    for n, fwd, total, dens in profile.entries:
        print(f"{n},{fwd},{total},{dens}")


def _render_witness(classification) -> str:
    w = classification.witness
    if w is None:
        return ""
    kind, payload = w
    if kind == "cycle":
        # rotate so the smallest label leads; the edge order is unchanged
        cyc = list(payload)
        k = cyc.index(min(cyc))
        cyc = cyc[k:] + cyc[:k]
        return "cycle:" + ",".join(str(v + 1) for v in cyc)
    return f"{kind}:{payload}"


def _run_analyze(cfg: RunConfig) -> int:
    G = _load_graph(cfg.source)
    result = classify_unavoidability(G, budget=cfg.budget)
    witness = _render_witness(result)
    line = f"verdict={result.verdict}"
    if witness:
        line += f" witness={witness}"
    if result.reason:
        line += f" reason={result.reason}"
    print(f"graph={G.name}")
    print(line)
    print(f"#RESULT {result.verdict},{witness}")
    if cfg.expect is not None and result.verdict != cfg.expect:
        return 1
    return 0


def _run_embed(cfg: RunConfig) -> int:
    G = _load_graph(cfg.graph)
    K = tournament_from_name(cfg.tournament)
    oracle = AlwaysInfiniteOracle(K) if cfg.oracle == "always-infinite" else None
    result = spanning_embed(
        G, K, oracle=oracle, horizon=cfg.horizon, budget=cfg.budget
    )
    offset = 1 if G.is_finite else 0  # finite graphs come from 1-based files
    for g in sorted(result.phi.mapping):
        print(f"{g + offset} {result.phi[g]}")
    covered = sum(1 for k in range(cfg.horizon) if result.phi.has_target(k))
    valid = "true" if result.phi.is_valid(G) else "false"
    cells = ";".join(
        f"{m.id}:{m.frontier}{m.cells.cell_type(m.frontier)}" for m in result.machines
    )
    print(f"covered={covered} valid={valid} cells={cells}")
    print(f"#RESULT covered={covered},valid={valid},cells={cells}")
    return 0


def _run_density(cfg: RunConfig) -> int:
    K = tournament_from_name(cfg.tournament)
    profile = density_profile(K, cfg.nmax, stride=cfg.stride)
    _print_csv(profile)
    low = min(d for _, d in profile.samples)
    print(f"#RESULT rows={len(profile)},min_density={low}")
    return 0


def _run_inversions(cfg: RunConfig) -> int:
    f = _resolve_injection(cfg.injection)
    profile = inversion_density_profile(f, cfg.nmax, stride=cfg.stride)
    _print_csv(profile)
    low = min(d for _, d in profile.samples)
    print(f"#RESULT rows={len(profile)},min_density={low}")
    return 0


def _run_optimize(cfg: RunConfig) -> int:
    patterns = cfg.patterns or BLOCK_PATTERNS
    scheme, report = optimize_scheme(patterns, cfg.horizon, window=cfg.window)
    print(f"pattern={scheme.pattern}")
    for key, value in sorted(scheme.params.items()):
        print(f"{key}={value:g}" if isinstance(value, float) else f"{key}={value}")
    print(f"window={report.window[0]}:{report.window[1]}")
    print(f"attained_at={report.attained_at}")
    print(f"min_density={report.min_window_density}")
    print(
        f"#RESULT scheme={scheme.describe()},"
        f"min_density={report.min_window_density},at={report.attained_at}"
    )
    return 0


_RUNNERS = {
    "analyze": _run_analyze,
    "embed": _run_embed,
    "density": _run_density,
    "inversions": _run_inversions,
    "optimize": _run_optimize,
}


def run(cfg: RunConfig) -> int:
    """Execute one configured invocation; returns the exit status."""
    try:
        return _RUNNERS[cfg.subcommand](cfg)
    except tuple(cls for cls, _ in _ERROR_CODES) as e:
        for cls, code in _ERROR_CODES:
            if isinstance(e, cls):
                print(f"#ERROR {code}: {e}", file=sys.stderr)
                return 2
        raise  # unreachable: the except clause matched one of the classes


def _window_pair(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("window must look like LO:HI")
    try:
        return (int(lo), int(hi))
    except ValueError as e:
        raise argparse.ArgumentTypeError("window bounds must be integers") from e


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tourlab",
        description="Oriented-graph embeddings and tournament densities.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="classify a graph as avoidable or not")
    p.add_argument("source", help="graph file or presented-family name")
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--expect", choices=["unavoidable", "avoidable", "inconclusive"])

    p = sub.add_parser("embed", help="span a tournament prefix with a graph")
    p.add_argument("--graph", required=True, help="graph file or family name")
    p.add_argument("--tournament", required=True, help="tournament family")
    p.add_argument("--horizon", type=_positive, required=True)
    p.add_argument("--oracle", choices=["auto", "always-infinite"], default="auto")
    p.add_argument("--budget", type=_positive, default=None)

    p = sub.add_parser("density", help="prefix density CSV for a tournament")
    p.add_argument("--tournament", required=True)
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--stride", type=_positive, default=1)

    p = sub.add_parser("inversions", help="prefix inversion-density CSV")
    p.add_argument("--injection", required=True, help="scheme name[:params] or file path")
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--stride", type=_positive, default=1)

    p = sub.add_parser("optimize", help="search block schemes for high density")
    p.add_argument("--horizon", type=_positive, required=True)
    p.add_argument("--window", type=_window_pair, default=None)
    p.add_argument(
        "--patterns",
        default=None,
        help="comma-separated catalogue subset (default: all patterns)",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = _default_budget()
    patterns = None
    if getattr(args, "patterns", None):
        patterns = tuple(s.strip() for s in args.patterns.split(",") if s.strip())
    return RunConfig(
        subcommand=args.subcommand,
        source=getattr(args, "source", None),
        graph=getattr(args, "graph", None),
        tournament=getattr(args, "tournament", None),
        injection=getattr(args, "injection", None),
        horizon=getattr(args, "horizon", None),
        nmax=getattr(args, "nmax", None),
        stride=getattr(args, "stride", 1),
        window=getattr(args, "window", None),
        patterns=patterns,
        budget=budget,
        expect=getattr(args, "expect", None),
        oracle=getattr(args, "oracle", "auto"),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as e:
        print(f"#ERROR invalid-argument: {e}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
