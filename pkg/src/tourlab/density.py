"""Forward-pair density profiles, rank decompositions, and block schemes.

The through-line of the module: a tournament induced by an ordinal
injection has its forward pairs exactly at the injection's inversions, so
prefix densities of injection tournaments reduce to inversion counting.
Rank decomposition runs the reduction the other way: it extracts an
injection from an arbitrary finite prefix whose induced tournament
dominates the prefix pairwise.  Block schemes are parametric injections
built from precommitted disjoint value intervals; the optimizer searches
that catalogue for a high minimum prefix density over a window.

Densities are exact rationals end to end.  Only window minima are ever
reported; no limiting claim is attached to them.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .core import (
    FactorialBlock,
    InjectionSpec,
    OrdinalInjectionTournament,
    OrdinalValue,
    TournamentOracle,
    identity_injection,
)
from .counting import (
    inversion_prefix,
    inversions_upto,
    prior_greater_counts,
)
from .errors import SchemeError

__all__ = [
    "DensityProfile",
    "forward_pair_count",
    "density_profile",
    "inversion_count",
    "inversion_density_profile",
    "RankDecomposition",
    "rank_decompose",
    "dominance_check",
    "BlockScheme",
    "BLOCK_PATTERNS",
    "make_block_scheme",
    "factorial_scheme",
    "window_min_density",
    "DensityBoundsReport",
    "optimize_scheme",
]


# ---------------------------------------------------------------------------
# density profiles


@dataclass(frozen=True)
class DensityProfile:
    """Exact forward-pair densities of one tournament at sampled prefixes.

    Each entry is (n, forward_pairs, total_pairs, density) with the density
    a Fraction equal to forward_pairs / C(n, 2).
    """

    name: str
    entries: tuple[tuple[int, int, int, Fraction], ...]

    @property
    def samples(self) -> list[tuple[int, Fraction]]:
        return [(n, d) for n, _, _, d in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def _entry(n: int, forward: int) -> tuple[int, int, int, Fraction]:
    total = n * (n - 1) // 2
    return (n, forward, total, Fraction(forward, total))


def _sample_points(n_max: int, stride: int) -> list[int]:
    if n_max < 2:
        raise ValueError("a density needs at least two vertices")
    if stride < 1:
        raise ValueError("stride must be positive")
    pts = [m for m in range(stride, n_max + 1, stride) if m >= 2]
    if not pts or pts[-1] != n_max:
        pts.append(n_max)
    return pts


def forward_pair_count(K: TournamentOracle, n: int) -> int:
    """Number of forward pairs (i, j), i < j < n, of K.

    Uses the family's closed form when there is one, the inversion kernel
    for injection-induced tournaments, and a row accumulation otherwise.
    """
    if n < 2:
        raise ValueError("a pair count needs at least two vertices")
    closed = K.forward_pairs_upto(n)
    if closed is not None:
        return int(closed)
    if isinstance(K, OrdinalInjectionTournament):
        return inversions_upto(K.injection, n)
    return sum(int(K.forward_row(j).sum()) for j in range(1, n))


def density_profile(K: TournamentOracle, n_max: int, stride: int = 1) -> DensityProfile:
    """Densities of K at every stride multiple in [2, n_max], plus n_max."""
    pts = _sample_points(n_max, stride)
    if K.forward_pairs_upto(2) is not None:
        entries = [_entry(m, int(K.forward_pairs_upto(m))) for m in pts]
        return DensityProfile(K.name, tuple(entries))
    if isinstance(K, OrdinalInjectionTournament):
        cum = inversion_prefix(K.injection, n_max)
        entries = [_entry(m, int(cum[m - 2])) for m in pts]
        return DensityProfile(K.name, tuple(entries))
    entries = []
    total = 0
    want = iter(pts)
    nxt = next(want)
    for j in range(1, n_max):
        total += int(K.forward_row(j).sum())
        if j + 1 == nxt:
            entries.append(_entry(j + 1, total))
            nxt = next(want, None)
            if nxt is None:
                break
    return DensityProfile(K.name, tuple(entries))


def inversion_count(f: InjectionSpec, n: int) -> int:
    """Number of pairs i < j < n with f(i) > f(j).

    Injectivity violations inside the prefix surface as
    MalformedInjectionError from the injection itself.
    """
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    return inversions_upto(f, n)


def inversion_density_profile(
    f: InjectionSpec, n_max: int, stride: int = 1
) -> DensityProfile:
    """Inversion densities of f at stride multiples up to n_max.

    Equals the density profile of the tournament induced by f, entry by
    entry, as exact rationals.
    """
    pts = _sample_points(n_max, stride)
    cum = inversion_prefix(f, n_max)
    name = f"injection:{f.description or 'anonymous'}"
    return DensityProfile(name, tuple(_entry(m, int(cum[m - 2])) for m in pts))


# ---------------------------------------------------------------------------
# rank decomposition


@dataclass
class RankDecomposition:
    """Level structure of a finite tournament prefix.

    Levels peel from the bottom: level 0 holds the vertices with no
    forward out-neighbor inside the prefix, and level a+1 holds the
    vertices all of whose forward out-neighbors sit at levels <= a.
    `levels` is the number of distinct levels.  The induced injection
    sends i to the ordinal value (level(i), i), so every forward pair of
    the source prefix is an inversion of the injection.
    """

    n: int
    alpha: np.ndarray
    levels: int
    source: str
    induced_injection: InjectionSpec = field(repr=False)

    def level_sizes(self) -> list[int]:
        counts = np.bincount(self.alpha, minlength=self.levels)
        return [int(c) for c in counts]


def _forward_matrix(K: TournamentOracle, n: int) -> np.ndarray:
    F = np.zeros((n, n), dtype=bool)
    for j in range(1, n):
        F[:j, j] = K.forward_row(j)
    return F


def rank_decompose(K: TournamentOracle, n: int) -> RankDecomposition:
    """Decompose the prefix [n] of K into forward-out-neighbor levels.

    Forward out-neighbors of i are the j > i with the pair (i, j)
    oriented i -> j; edges pointing down the index order play no role, so
    the recursion is well founded on every tournament.  The decomposition
    of a prefix is a property of that prefix alone; it need not agree
    with the decomposition of any longer prefix.
    """
    if n < 1:
        raise ValueError("cannot decompose an empty prefix")
    F = _forward_matrix(K, n)
    alpha = np.zeros(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        row = F[i, i + 1 :]
        if row.any():
            alpha[i] = int(alpha[i + 1 :][row].max()) + 1
    levels = int(alpha.max()) + 1
    frozen = alpha.copy()
    frozen.setflags(write=False)

    def f(i: int) -> OrdinalValue:
        if i < n:
            return OrdinalValue(int(frozen[i]), i)
        # beyond the prefix the map continues at level zero, which keeps
        # it total and injective without disturbing pairs inside [n]
        return OrdinalValue(0, i)

    inj = InjectionSpec(
        f,
        description=f"rank-decomposition[{K.name}:{n}]",
        finite_below=(levels == 1),
    )
    return RankDecomposition(
        n=n, alpha=frozen, levels=levels, source=K.name, induced_injection=inj
    )


def dominance_check(K: TournamentOracle, d: RankDecomposition, n: int) -> bool:
    """True when every forward pair of K inside [n] is also a forward pair
    of the tournament induced by d's injection.

    For i < j that induced tournament has i -> j exactly when
    level(i) > level(j), so the check reduces to a level comparison on
    each forward pair.
    """
    if d.n != n or d.alpha.shape[0] != n:
        raise ValueError(
            f"decomposition was computed for prefix {d.n}, not {n}"
        )
    alpha = d.alpha
    for j in range(1, n):
        row = K.forward_row(j)
        if row.any() and not bool(np.all(alpha[:j][row] > alpha[j])):
            return False
    return True


# ---------------------------------------------------------------------------
# block schemes

BLOCK_PATTERNS = (
    "identity",
    "factorial",
    "single-high",
    "paired-high-low",
    "nested-dip",
)

_MIN_RATIO = 1.1
_DEFAULT_W0 = 1 << 1500


@dataclass
class BlockScheme:
    """A parametric injection assembled from disjoint value intervals.

    `injection` is the total InjectionSpec; `block_sizes()` streams the
    committed interval widths; `prefix_ranks(n)` returns the dense value
    ranks of the first n arguments without materializing ordinal values,
    which is what the counting kernel wants at large n.
    """

    pattern: str
    params: dict
    injection: InjectionSpec
    _sizes_fn: Callable[[], Iterator[int]] = field(repr=False)
    _ranks_fn: Callable[[int], np.ndarray] = field(repr=False)

    def block_sizes(self) -> Iterator[int]:
        return self._sizes_fn()

    def prefix_ranks(self, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        return self._ranks_fn(n)

    def describe(self) -> str:
        if not self.params:
            return self.pattern
        inner = ",".join(f"{k}={_fmt_param(v)}" for k, v in sorted(self.params.items()))
        return f"{self.pattern}({inner})"

    def order_key(self) -> tuple:
        return (self.pattern, tuple(sorted(self.params.items())))


def _fmt_param(v) -> str:
    if isinstance(v, float):
        return f"{v:g}"
    return str(v)


def _ranks_from_int_values(vals: np.ndarray) -> np.ndarray:
    order = np.argsort(vals, kind="stable")
    ranks = np.empty(vals.size, dtype=np.int64)
    ranks[order] = np.arange(vals.size, dtype=np.int64)
    return ranks


def _geometric_sizes(r: float, L0: int) -> Callable[[], Iterator[int]]:
    def gen() -> Iterator[int]:
        prev = 0
        cur = float(L0)
        while True:
            if prev > (1 << 512) or math.isinf(cur):
                size = prev * 2
            else:
                size = max(prev, int(round(cur)), 1)
            prev = size
            yield size
            cur = cur * r
    return gen


class _Boundaries:
    """Lazily extended prefix sums of a block-size stream."""

    def __init__(self, sizes_fn: Callable[[], Iterator[int]]):
        self._it = sizes_fn()
        self.B = [0]

    def cover(self, i: int) -> None:
        while self.B[-1] <= i:
            self.B.append(self.B[-1] + next(self._it))

    def locate(self, i: int) -> int:
        self.cover(i)
        return bisect.bisect_right(self.B, i) - 1


def _interval_scheme(
    pattern: str, r: float, L0: int, splitter: Callable[[int, int, int], int]
) -> BlockScheme:
    """Schemes whose block c occupies the value interval [B_c, B_{c+1}).

    `splitter(base, width, t)` places offset t of a block within its own
    interval; single-high and paired-high-low differ only there.
    """
    sizes_fn = _geometric_sizes(r, L0)
    bounds = _Boundaries(sizes_fn)

    def f(i: int) -> OrdinalValue:
        c = bounds.locate(i)
        base, width = bounds.B[c], bounds.B[c + 1] - bounds.B[c]
        return OrdinalValue(0, splitter(base, width, i - base))

    def ranks(n: int) -> np.ndarray:
        if n == 0:
            return np.zeros(0, dtype=np.int64)
        bounds.cover(n - 1)
        vals = np.empty(n, dtype=np.int64)
        B = bounds.B
        for c in range(len(B) - 1):
            lo, hi = B[c], min(B[c + 1], n)
            if lo >= n:
                break
            width = B[c + 1] - B[c]
            t = np.arange(0, hi - lo, dtype=np.int64)
            vals[lo:hi] = _split_vec(splitter, lo, width, t)
        return _ranks_from_int_values(vals)

    inj = InjectionSpec(
        f, description=f"{pattern}(r={r:g},L0={L0})", finite_below=True
    )
    return BlockScheme(
        pattern=pattern,
        params={"r": float(r), "L0": int(L0)},
        injection=inj,
        _sizes_fn=sizes_fn,
        _ranks_fn=ranks,
    )


def _split_vec(splitter, base: int, width: int, t: np.ndarray) -> np.ndarray:
    # vectorized twins of the two scalar splitters
    if splitter is _place_single_high:
        return base + width - 1 - t
    u = (width + 1) // 2
    out = np.empty(t.size, dtype=np.int64)
    hi = t < u
    out[hi] = base + width - 1 - t[hi]
    out[~hi] = base + (width - u) - 1 - (t[~hi] - u)
    return out


def _place_single_high(base: int, width: int, t: int) -> int:
    return base + width - 1 - t


def _place_paired(base: int, width: int, t: int) -> int:
    # upper half first (descending), then the lower half (descending):
    # the low block lands under the block just placed but over everything
    # older
    u = (width + 1) // 2
    if t < u:
        return base + width - 1 - t
    return base + (width - u) - 1 - (t - u)


class _NestedDipTable:
    """Cycle bookkeeping for the multi-phase interleaving scheme.

    Cycle c is a descending arithmetic progression of length L_c and step
    W_c.  Cycle c+1 nests into the gap under the dip position p_c of cycle
    c with a strictly smaller step, so its whole run stays inside that gap.
    Steps shrink by a factor L+1 per cycle and therefore hit zero after
    finitely many cycles no matter how large W0 is; from that point every
    later cycle is placed as a plain block above all earlier values, which
    keeps the map total and keeps every down-set finite.
    """

    def __init__(self, r: float, q: float, L0: int, W0: int):
        self.q = q
        self._sizes = _geometric_sizes(r, L0)()
        self.L: list[int] = []
        self.P: list[int] = [0]
        self.W: list[int] = []
        self.TOP: list[int] = []
        self.p: list[int] = []
        self.W0 = W0
        self.exhaust: Optional[int] = None  # first plain-block cycle
        self._ceiling = 0  # running max value once exhausted

    def cover(self, i: int) -> None:
        while self.P[-1] <= i:
            self._extend()

    def _extend(self) -> None:
        c = len(self.L)
        Lc = next(self._sizes)
        self.L.append(Lc)
        self.P.append(self.P[-1] + Lc)
        self.p.append(min(max(1, math.ceil(self.q * Lc)), Lc - 1))
        if self.exhaust is not None:
            self.W.append(0)
            self.TOP.append(self._ceiling + Lc)
            self._ceiling += Lc
            return
        if c == 0:
            self.W.append(self.W0)
            self.TOP.append(Lc * self.W0)
            return
        Wn = self.W[c - 1] // (Lc + 1)
        if Wn == 0:
            self.exhaust = c
            self._ceiling = self.TOP[0] + 1  # strictly above every nested value
            self.W.append(0)
            self.TOP.append(self._ceiling + Lc)
            self._ceiling += Lc
            return
        gap_hi = self.TOP[c - 1] - (self.p[c - 1] - 1) * self.W[c - 1]
        gap_lo = gap_hi - self.W[c - 1]
        top = gap_lo + Lc * Wn
        if not (gap_lo < top - (Lc - 1) * Wn and top < gap_hi):
            raise SchemeError(
                f"cycle {c} does not fit its gap; the intervals would overlap"
            )
        self.W.append(Wn)
        self.TOP.append(top)

    def value(self, i: int) -> int:
        self.cover(i)
        c = bisect.bisect_right(self.P, i) - 1
        t = i - self.P[c]
        if self.exhaust is not None and c >= self.exhaust:
            return self.TOP[c] - t
        return self.TOP[c] - t * self.W[c]

    def prefix_ranks(self, n: int) -> np.ndarray:
        if n == 0:
            return np.zeros(0, dtype=np.int64)
        self.cover(n - 1)
        last = bisect.bisect_right(self.P, n - 1) - 1
        ex = self.exhaust if self.exhaust is not None else last + 1
        segs: list[np.ndarray] = []
        # plain blocks sit above everything nested, newest on top
        for c in range(last, ex - 1, -1):
            cnt = min(self.L[c], n - self.P[c])
            segs.append(np.arange(self.P[c], self.P[c] + cnt, dtype=np.int64))
        # nested cycles: top run, then everything deeper, then the suffix
        def walk(c: int) -> None:
            if c >= ex or self.P[c] >= n:
                return
            cnt = min(self.L[c], n - self.P[c])
            head = min(self.p[c], cnt)
            segs.append(np.arange(self.P[c], self.P[c] + head, dtype=np.int64))
            walk(c + 1)
            if cnt > self.p[c]:
                segs.append(
                    np.arange(self.P[c] + self.p[c], self.P[c] + cnt, dtype=np.int64)
                )

        walk(0)
        pos = np.concatenate(segs)
        ranks = np.empty(n, dtype=np.int64)
        ranks[pos] = np.arange(n - 1, -1, -1, dtype=np.int64)
        return ranks


def _nested_dip_scheme(r: float, q: float, L0: int, W0: int) -> BlockScheme:
    table = _NestedDipTable(r, q, L0, W0)

    def f(i: int) -> OrdinalValue:
        return OrdinalValue(0, table.value(i))

    params = {"r": float(r), "q": float(q), "L0": int(L0)}
    if W0 != _DEFAULT_W0:
        params["W0"] = W0
    inj = InjectionSpec(
        f,
        description=f"nested-dip(r={r:g},q={q:g},L0={L0})",
        finite_below=True,
    )
    return BlockScheme(
        pattern="nested-dip",
        params=params,
        injection=inj,
        _sizes_fn=_geometric_sizes(r, L0),
        _ranks_fn=table.prefix_ranks,
    )


def factorial_scheme() -> BlockScheme:
    """The block scheme with factorial boundaries: block k covers the
    indices in [(k-1)!, k!), values descending inside the block and
    blocks stacked upward."""

    def sizes() -> Iterator[int]:
        prev = 0
        k = 1
        while True:
            cur = math.factorial(k)
            yield cur - prev
            prev, k = cur, k + 1

    def ranks(n: int) -> np.ndarray:
        if n == 0:
            return np.zeros(0, dtype=np.int64)
        bounds = [0, 1]
        while bounds[-1] < n:
            bounds.append(math.factorial(len(bounds)))
        vals = np.empty(n, dtype=np.int64)
        for k in range(1, len(bounds)):
            lo, hi = bounds[k - 1], bounds[k]
            if lo >= n:
                break
            cut = min(hi, n)
            vals[lo:cut] = lo + hi - 1 - np.arange(lo, cut, dtype=np.int64)
        return _ranks_from_int_values(vals)

    return BlockScheme(
        pattern="factorial",
        params={},
        injection=FactorialBlock().equivalent_injection(),
        _sizes_fn=sizes,
        _ranks_fn=ranks,
    )


def _identity_scheme() -> BlockScheme:
    def sizes() -> Iterator[int]:
        while True:
            yield 1

    def ranks(n: int) -> np.ndarray:
        return np.arange(n, dtype=np.int64)

    return BlockScheme(
        pattern="identity",
        params={},
        injection=identity_injection(),
        _sizes_fn=sizes,
        _ranks_fn=ranks,
    )


def make_block_scheme(
    pattern: str,
    *,
    r: float = 2.0,
    q: float = 0.9,
    L0: int = 64,
    W0: int = _DEFAULT_W0,
) -> BlockScheme:
    """Build a catalogue scheme.

    r is the growth ratio of the committed interval widths (only ratios
    comfortably above 1 are accepted: blocks must outgrow their past);
    L0 is the first width; q places the dip inside each nested-dip cycle.
    identity and factorial take no parameters.
    """
    if pattern not in BLOCK_PATTERNS:
        known = ", ".join(BLOCK_PATTERNS)
        raise SchemeError(f"unknown pattern {pattern!r}; catalogue: {known}")
    if pattern == "identity":
        return _identity_scheme()
    if pattern == "factorial":
        return factorial_scheme()
    if not (r > _MIN_RATIO):
        raise SchemeError(
            f"growth ratio r={r:g} is below the minimum block growth {_MIN_RATIO}"
        )
    if not isinstance(L0, int) or L0 < 2:
        raise SchemeError("initial width L0 must be an integer of at least 2")
    if pattern == "single-high":
        return _interval_scheme(pattern, r, L0, _place_single_high)
    if pattern == "paired-high-low":
        return _interval_scheme(pattern, r, L0, _place_paired)
    if not (0.0 < q < 1.0):
        raise SchemeError("dip position q must lie strictly between 0 and 1")
    if W0 < 1:
        raise SchemeError("initial step W0 must be positive")
    return _nested_dip_scheme(r, q, L0, W0)


# ---------------------------------------------------------------------------
# window minima and the scheme search


@dataclass(frozen=True)
class DensityBoundsReport:
    """Exact minimum prefix inversion density over one window.

    Reports observed window minima only; nothing here claims a limit.
    `attained_at` is the smallest prefix length realizing the minimum.
    """

    identifier: str
    min_window_density: Fraction
    window: tuple[int, int]
    target: Fraction
    attained_at: int


def window_min_density(
    scheme: BlockScheme, n_lo: int, n_hi: int
) -> tuple[Fraction, int]:
    """Exact min over n in [n_lo, n_hi] of the scheme's inversion density
    at prefix n, with the smallest minimizing n.

    A float scan locates the near-minimal band; exact integer comparison
    settles the winner, so the result carries no rounding.
    """
    if not (2 <= n_lo < n_hi):
        raise ValueError("window must satisfy 2 <= n_lo < n_hi")
    ranks = scheme.prefix_ranks(n_hi)
    inv = np.cumsum(prior_greater_counts(ranks))  # inv[m-1] = inversions among [m]
    ns = np.arange(n_lo, n_hi + 1, dtype=np.float64)
    dens = inv[n_lo - 1 : n_hi].astype(np.float64) / (ns * (ns - 1) / 2.0)
    floor = float(dens.min())
    band = np.nonzero(dens <= floor * (1.0 + 1e-9) + 1e-15)[0]
    best_num = best_den = None
    best_n = -1
    for k in band:
        n = n_lo + int(k)
        num = int(inv[n - 1])
        den = n * (n - 1) // 2
        if best_num is None or num * best_den < best_num * den:
            best_num, best_den, best_n = num, den, n
    return Fraction(best_num, best_den), best_n


_R_GRID = (1.5, 2.0, 3.0, 4.0, 6.0, 8.0)
_Q_GRID = (0.5, 0.75, 0.9, 0.97)
_L0_GRID = (64, 256)


def _grid_params(pattern: str) -> list[dict]:
    if pattern in ("identity", "factorial"):
        return [{}]
    if pattern == "nested-dip":
        return [
            {"r": r, "q": q, "L0": l0}
            for r in _R_GRID
            for q in _Q_GRID
            for l0 in _L0_GRID
        ]
    return [{"r": r, "L0": l0} for r in _R_GRID for l0 in _L0_GRID]


def _neighbor_params(params: dict) -> list[dict]:
    out = []
    if "r" in params:
        for fac in (0.8, 1.25):
            r2 = round(params["r"] * fac, 6)
            if r2 > _MIN_RATIO:
                out.append({**params, "r": r2})
    if "q" in params:
        for dq in (-0.03, 0.03):
            q2 = round(params["q"] + dq, 6)
            if 0.02 <= q2 <= 0.98:
                out.append({**params, "q": q2})
    if "L0" in params:
        for l2 in (params["L0"] // 2, params["L0"] * 2):
            if 2 <= l2 <= 4096:
                out.append({**params, "L0": l2})
    return out


def optimize_scheme(
    pattern_space: Iterable[str],
    horizon: int,
    window: Optional[tuple[int, int]] = None,
    target: Fraction = Fraction(3, 4),
) -> tuple[BlockScheme, DensityBoundsReport]:
    """Search the catalogue for the scheme maximizing the window minimum.

    A fixed parameter grid per pattern is scanned first, then coordinate
    refinement walks from the grid optimum.  Ties break to the
    lexicographically first (pattern, params) pair, so identical calls
    return identical schemes.
    """
    patterns = list(dict.fromkeys(pattern_space))
    if not patterns:
        raise SchemeError("pattern space is empty")
    for p in patterns:
        if p not in BLOCK_PATTERNS:
            known = ", ".join(BLOCK_PATTERNS)
            raise SchemeError(f"unknown pattern {p!r}; catalogue: {known}")
    if window is None:
        window = (1000, horizon)
    n_lo, n_hi = window
    if not (2 <= n_lo < n_hi <= horizon):
        raise ValueError("window must satisfy 2 <= n_lo < n_hi <= horizon")

    best: Optional[tuple[Fraction, tuple, BlockScheme, int]] = None

    def consider(pattern: str, params: dict) -> bool:
        nonlocal best
        scheme = make_block_scheme(pattern, **params)
        dens, at = window_min_density(scheme, n_lo, n_hi)
        key = scheme.order_key()
        if best is None or dens > best[0] or (dens == best[0] and key < best[1]):
            improved = best is not None and dens > best[0]
            best = (dens, key, scheme, at)
            return improved
        return False

    for pattern in sorted(patterns):
        for params in _grid_params(pattern):
            consider(pattern, params)

    assert best is not None
    for _ in range(2):
        improved = False
        for params in _neighbor_params(best[2].params):
            clean = {k: v for k, v in params.items() if k in ("r", "q", "L0", "W0")}
            if consider(best[2].pattern, clean):
                improved = True
        if not improved:
            break

    dens, _, scheme, at = best
    report = DensityBoundsReport(
        identifier=scheme.describe(),
        min_window_density=dens,
        window=(n_lo, n_hi),
        target=target,
        attained_at=at,
    )
    return scheme, report
