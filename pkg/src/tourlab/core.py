"""Core types: tournament oracles, ordinal values, and oriented graphs.

Vertices are 0-based integers internally; command-line interfaces translate
to and from 1-based labels at the boundary.  A tournament on the naturals is
presented as a pure orientation oracle over vertex pairs, so uncountable
structures never need to be materialized.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    GraphFormatError,
    LoopQueryError,
    MalformedInjectionError,
)

VertexId = int

_MASK64 = (1 << 64) - 1
_PHI64 = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_MUR_A = 0xFF51AFD7ED558CCD
_MUR_B = 0xC4CEB9FE1A85EC53


class Direction(Enum):
    """Orientation of an index pair i < j: FORWARD means the edge i -> j."""

    FORWARD = "forward"
    BACKWARD = "backward"

    def reversed(self) -> "Direction":
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


@dataclass(frozen=True, order=True)
class OrdinalValue:
    """A value below omega*omega, encoded as a (major, minor) pair.

    Comparison is lexicographic with the major component dominating:
    (1, 0) > (0, k) for every k.

    >>> OrdinalValue(0, 5) < OrdinalValue(1, 0)
    True
    >>> OrdinalValue(2, 3) > OrdinalValue(2, 1)
    True
    """

    major: int
    minor: int

    def __post_init__(self):
        if self.major < 0 or self.minor < 0:
            raise ValueError("ordinal components must be non-negative")


def ordinal_compare(a: OrdinalValue, b: OrdinalValue) -> int:
    """Three-way comparison of ordinal values: -1, 0, or +1."""
    if a == b:
        return 0
    return -1 if a < b else 1


class InjectionSpec:
    """An injection from the naturals into ordinal values below omega*omega.

    `eval` must be a pure total function.  Injectivity cannot be certified
    up front for a lazily given map, so it is checked on demand: whenever two
    distinct indices are observed to share a value, MalformedInjectionError
    is raised.

    finite_below=True asserts that every value has only finitely many
    indices mapped strictly below it (true for schemes whose value intervals
    march upward); the infiniteness oracle for the induced tournament relies
    on this flag.
    """

    def __init__(
        self,
        eval_fn: Callable[[int], OrdinalValue],
        description: str = "",
        finite_below: bool = False,
    ):
        self._eval_fn = eval_fn
        self.description = description
        self.finite_below = finite_below
        self._cache: dict[int, OrdinalValue] = {}
        self._seen: dict[OrdinalValue, int] = {}

    def eval(self, i: int) -> OrdinalValue:
        if i < 0:
            raise ValueError("indices are non-negative")
        v = self._cache.get(i)
        if v is None:
            v = self._eval_fn(i)
            prev = self._seen.get(v)
            if prev is not None and prev != i:
                raise MalformedInjectionError(
                    f"indices {prev} and {i} share the value {v}"
                )
            self._cache[i] = v
            self._seen[v] = i
        return v

    def values(self, n: int) -> list[OrdinalValue]:
        return [self.eval(i) for i in range(n)]

    def __repr__(self):
        return f"InjectionSpec({self.description or 'anonymous'})"


def identity_injection() -> InjectionSpec:
    """f(i) = (0, i); the induced tournament is a copy of the reverse chain."""
    return InjectionSpec(
        lambda i: OrdinalValue(0, i), description="identity", finite_below=True
    )


# ---------------------------------------------------------------------------
# seeded pair mixing


def _mix64(x: int) -> int:
    x &= _MASK64
    x ^= x >> 33
    x = (x * _MUR_A) & _MASK64
    x ^= x >> 33
    x = (x * _MUR_B) & _MASK64
    x ^= x >> 33
    return x


def pair_hash(seed: int, i: int, j: int) -> int:
    """Deterministic 64-bit hash of an unordered index pair under a seed."""
    h = _mix64((seed & _MASK64) ^ _PHI64)
    h = _mix64(h ^ (((i + 1) * _MIX_A) & _MASK64))
    h = _mix64(h ^ (((j + 1) * _MIX_B) & _MASK64))
    return h


def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        x ^= x >> np.uint64(33)
        x *= np.uint64(_MUR_A)
        x ^= x >> np.uint64(33)
        x *= np.uint64(_MUR_B)
        x ^= x >> np.uint64(33)
    return x


def pair_hash_np(seed: int, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Vectorized pair_hash; must agree with the scalar form exactly."""
    with np.errstate(over="ignore"):
        h0 = _mix64(seed ^ _PHI64)
        a = (i.astype(np.uint64) + np.uint64(1)) * np.uint64(_MIX_A)
        h = _mix64_np(np.uint64(h0) ^ a)
        b = (j.astype(np.uint64) + np.uint64(1)) * np.uint64(_MIX_B)
        h = _mix64_np(h ^ b)
    return h


# ---------------------------------------------------------------------------
# tournament oracles


class TournamentOracle:
    """A tournament on the naturals, given by a pure orientation oracle.

    Subclasses implement `_orient_lt(i, j)` for i < j only; `orient`
    normalizes argument order and rejects loops.
    """

    name = "tournament"

    def _orient_lt(self, i: int, j: int) -> Direction:
        raise NotImplementedError

    def orient(self, i: int, j: int) -> Direction:
        if i == j:
            raise LoopQueryError(f"pair ({i}, {i}) has no orientation")
        if i < 0 or j < 0:
            raise ValueError("vertices are non-negative")
        if i < j:
            return self._orient_lt(i, j)
        return self._orient_lt(j, i).reversed()

    def has_edge(self, a: int, b: int) -> bool:
        """True when the edge a -> b is present."""
        if a < b:
            return self.orient(a, b) is Direction.FORWARD
        return self.orient(b, a) is Direction.BACKWARD

    def forward_row(self, j: int) -> np.ndarray:
        """Boolean array over i < j: True where (i, j) is FORWARD.

        Generic loop; families with arithmetic structure override it.
        """
        return np.fromiter(
            (self._orient_lt(i, j) is Direction.FORWARD for i in range(j)),
            dtype=bool,
            count=j,
        )

    def forward_pairs_upto(self, n: int) -> Optional[int]:
        """Closed-form count of forward pairs inside the first n vertices.

        Returns None when no closed form is available; callers then count
        pair by pair.
        """
        return None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class TransitiveOmega(TournamentOracle):
    """The transitive tournament on the naturals, edges pointing up."""

    name = "transitive-omega"

    def _orient_lt(self, i, j):
        return Direction.FORWARD

    def forward_row(self, j):
        return np.ones(j, dtype=bool)

    def forward_pairs_upto(self, n):
        return n * (n - 1) // 2


class TransitiveOmegaStar(TournamentOracle):
    """The transitive tournament on the naturals, edges pointing down."""

    name = "transitive-omega-star"

    def _orient_lt(self, i, j):
        return Direction.BACKWARD

    def forward_row(self, j):
        return np.zeros(j, dtype=bool)

    def forward_pairs_upto(self, n):
        return 0


class SplitTransitive(TournamentOracle):
    """Two interleaved transitive halves: even vertices ascend among
    themselves, odd vertices descend among themselves, and every even
    vertex beats every odd one.

    Forward neighborhoods of even vertices and backward neighborhoods of
    odd vertices are infinite, so the two sign classes split the vertex
    set into two infinite parts.
    """

    name = "split-transitive"

    def _orient_lt(self, i, j):
        if i % 2 == 0 and j % 2 == 0:
            return Direction.FORWARD
        if i % 2 == 1 and j % 2 == 1:
            return Direction.BACKWARD
        # mixed parity: the even endpoint wins
        return Direction.FORWARD if i % 2 == 0 else Direction.BACKWARD

    def forward_row(self, j):
        i = np.arange(j)
        if j % 2 == 0:
            return i % 2 == 0
        return np.zeros(j, dtype=bool)

    def forward_pairs_upto(self, n):
        evens = (n + 1) // 2
        # even-even pairs ascend; a cross pair is forward exactly when the
        # even index is the smaller one: for i = 2t there are n//2 - t odds
        # above it
        ee = evens * (evens - 1) // 2
        cf = evens * (n // 2) - evens * (evens - 1) // 2
        return ee + cf


_FACTORIAL_BOUNDS = [0, 1, 2]  # boundary list: 0, then m! for m >= 1


def _extend_factorials(limit: int) -> None:
    while _FACTORIAL_BOUNDS[-1] <= limit:
        m = len(_FACTORIAL_BOUNDS) - 1
        _FACTORIAL_BOUNDS.append(math.factorial(m + 1))


def factorial_block_interval(v: int) -> tuple[int, int]:
    """Half-open 0-based index interval [lo, hi) of the block containing v.

    Blocks are [0,1), [1,2), [2,6), [6,24), ...: consecutive runs whose
    right endpoints are the factorials.
    """
    _extend_factorials(v)
    bounds = _FACTORIAL_BOUNDS
    k = bisect.bisect_right(bounds, v)
    return bounds[k - 1], bounds[k]


class FactorialBlock(TournamentOracle):
    """Blocks of factorial width; forward inside a block, backward across."""

    name = "factorial-block"

    def _orient_lt(self, i, j):
        lo, hi = factorial_block_interval(i)
        return Direction.FORWARD if lo <= j < hi else Direction.BACKWARD

    def forward_row(self, j):
        lo, hi = factorial_block_interval(j)
        row = np.zeros(j, dtype=bool)
        row[lo:j] = True
        return row

    def forward_pairs_upto(self, n):
        # whole blocks below n contribute C(width, 2); the block cut by n
        # contributes C(n - lo, 2)
        total = 0
        _extend_factorials(n)
        bounds = _FACTORIAL_BOUNDS
        for k in range(1, len(bounds)):
            lo, hi = bounds[k - 1], bounds[k]
            if lo >= n:
                break
            w = min(hi, n) - lo
            total += w * (w - 1) // 2
        return total

    def equivalent_injection(self) -> InjectionSpec:
        """Value map realizing the same tournament: descending inside each
        block, block values ascending with the block."""

        def f(v: int) -> OrdinalValue:
            lo, hi = factorial_block_interval(v)
            return OrdinalValue(0, lo + (hi - 1) - v)

        return InjectionSpec(
            f, description="factorial-block reversal", finite_below=True
        )


class ExponentialThreshold(TournamentOracle):
    """Forward pairs (i, j) with j + 1 <= 2**(i + 1); density tends to one
    while every vertex keeps a finite out-neighborhood."""

    name = "exp-threshold"

    def _orient_lt(self, i, j):
        return Direction.FORWARD if (j + 1) <= (1 << (i + 1)) else Direction.BACKWARD

    def forward_row(self, j):
        row = np.ones(j, dtype=bool)
        # backward exactly for i with 2**(i+1) <= j; there are bit_length(j)-1 such i
        k = j.bit_length() - 1 if j >= 1 else 0
        if k > 0:
            row[:k] = False
        return row

    def forward_pairs_upto(self, n):
        total = n * (n - 1) // 2
        backward = 0
        i = 0
        while True:
            t = 1 << (i + 1)
            if t >= n:
                break
            # pairs (i, j) with i < j < n and j + 1 > 2**(i+1), i.e. j >= t
            backward += n - max(t, i + 1)
            i += 1
        return total - backward


class SeededRandom(TournamentOracle):
    """A random-looking tournament: each pair is an independent fair coin
    keyed by (seed, min, max), so orientations are pure and replayable."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.name = f"random:{self.seed}"

    def _orient_lt(self, i, j):
        return (
            Direction.FORWARD
            if pair_hash(self.seed, i, j) & 1
            else Direction.BACKWARD
        )

    def forward_row(self, j):
        if j == 0:
            return np.zeros(0, dtype=bool)
        i = np.arange(j, dtype=np.uint64)
        h = pair_hash_np(self.seed, i, np.full(j, j, dtype=np.uint64))
        return (h & np.uint64(1)).astype(bool)


class OrdinalInjectionTournament(TournamentOracle):
    """Tournament induced by an ordinal injection: for i < j the pair is
    FORWARD exactly when f(i) > f(j), so forward pairs are the inversions."""

    def __init__(self, injection: InjectionSpec):
        self.injection = injection
        self.name = f"injection:{injection.description or 'anonymous'}"

    def _orient_lt(self, i, j):
        fi, fj = self.injection.eval(i), self.injection.eval(j)
        return Direction.FORWARD if fi > fj else Direction.BACKWARD


def make_ordinal_injection_tournament(f: InjectionSpec) -> OrdinalInjectionTournament:
    """Wrap an injection as a tournament oracle (injectivity checked lazily)."""
    return OrdinalInjectionTournament(f)


class TabulatedTournament(TournamentOracle):
    """A finite tournament given explicitly; useful for exhaustive tests.

    `forward` holds the pairs (i, j) with i < j that are FORWARD.
    """

    def __init__(self, n: int, forward: Iterable[tuple[int, int]], name: str = ""):
        self.n = n
        self._forward = frozenset(forward)
        for (i, j) in self._forward:
            if not (0 <= i < j < n):
                raise ValueError(f"pair ({i}, {j}) out of range")
        self.name = name or f"tabulated-{n}"

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "TabulatedTournament":
        """Decode the C(n,2) pair orientations from an integer bitmask,
        pairs enumerated in lexicographic order."""
        fwd = []
        idx = 0
        for i in range(n):
            for j in range(i + 1, n):
                if (bits >> idx) & 1:
                    fwd.append((i, j))
                idx += 1
        return cls(n, fwd, name=f"tabulated-{n}-{bits}")

    def _orient_lt(self, i, j):
        if j >= self.n:
            raise ValueError(f"vertex {j} outside tabulated range {self.n}")
        return Direction.FORWARD if (i, j) in self._forward else Direction.BACKWARD


def orient(K: TournamentOracle, i: int, j: int) -> Direction:
    """Orientation of the pair {i, j} in K; errors on i == j."""
    return K.orient(i, j)


def tournament_from_name(
    name: str, injection_loader: Optional[Callable[[str], InjectionSpec]] = None
) -> TournamentOracle:
    """Resolve a family name such as 'transitive-omega' or 'random:42'."""
    if name == "transitive-omega":
        return TransitiveOmega()
    if name == "transitive-omega-star":
        return TransitiveOmegaStar()
    if name == "factorial-block":
        return FactorialBlock()
    if name == "split-transitive":
        return SplitTransitive()
    if name == "exp-threshold":
        return ExponentialThreshold()
    if name.startswith("random:"):
        try:
            seed = int(name.split(":", 1)[1])
        except ValueError as e:
            raise GraphFormatError(f"bad seed in {name!r}") from e
        return SeededRandom(seed)
    if name.startswith("injection:"):
        path = name.split(":", 1)[1]
        loader = injection_loader or read_injection_file
        return make_ordinal_injection_tournament(loader(path))
    raise GraphFormatError(f"unknown tournament family {name!r}")


# ---------------------------------------------------------------------------
# graphs


class FiniteOrientedGraph:
    """A finite oriented graph: no loops, at most one edge per vertex pair."""

    is_finite = True

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], name: str = ""):
        self.n = n
        self.edges = frozenset((int(u), int(v)) for u, v in edges)
        self.name = name or f"graph-{n}"
        outs: list[list[int]] = [[] for _ in range(n)]
        ins: list[list[int]] = [[] for _ in range(n)]
        for (u, v) in self.edges:
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range")
            if (v, u) in self.edges:
                raise GraphFormatError(f"both orientations of {{{u}, {v}}} present")
            outs[u].append(v)
            ins[v].append(u)
        self._out = [tuple(sorted(s)) for s in outs]
        self._in = [tuple(sorted(s)) for s in ins]

    @property
    def vertices(self) -> range:
        return range(self.n)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def __repr__(self):
        return f"<FiniteOrientedGraph {self.name}: n={self.n}, m={len(self.edges)}>"


class PresentedGraph:
    """A countably infinite oriented graph given by a neighbor generator.

    `adjacency(v)` returns the pair (in_neighbors, out_neighbors) as finite
    tuples and must be a pure total function; results are cached.  Claimed
    properties are taken on trust by analyses that say so.  A generator that
    knows it contains an infinite directed path can certify that, making the
    avoidability of the graph decidable without exploration.
    """

    is_finite = False

    def __init__(
        self,
        adjacency: Callable[[int], tuple[Sequence[int], Sequence[int]]],
        name: str = "presented",
        claimed: Iterable[str] = (),
        certified_infinite_path: bool = False,
        component_roots: Optional[Callable[[], Iterator[int]]] = None,
    ):
        self._adjacency = adjacency
        self.name = name
        self.claimed = frozenset(claimed)
        self.certified_infinite_path = certified_infinite_path
        self.component_roots = component_roots
        self._cache: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}

    def _entry(self, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        e = self._cache.get(v)
        if e is None:
            ins, outs = self._adjacency(v)
            e = (tuple(ins), tuple(outs))
            self._cache[v] = e
        return e

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._entry(v)[0]

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._entry(v)[1]

    def __repr__(self):
        return f"<PresentedGraph {self.name}>"


def forward_path() -> PresentedGraph:
    """The infinite directed path 0 -> 1 -> 2 -> ...; avoidable, and the
    generator says so via an infinite-path certificate."""

    def adj(v: int):
        return ((v - 1,) if v > 0 else (), (v + 1,))

    return PresentedGraph(
        adj,
        name="forward-path",
        claimed={"acyclic"},
        certified_infinite_path=True,
    )


def anti_path() -> PresentedGraph:
    """The infinite anti-directed path 0 -> 1 <- 2 -> 3 <- 4 ...; acyclic,
    locally finite, and free of infinite directed paths."""

    def adj(v: int):
        if v % 2 == 0:
            outs = (v + 1,) if v == 0 else (v - 1, v + 1)
            return ((), outs)
        return ((v - 1, v + 1), ())

    return PresentedGraph(
        adj,
        name="anti-path",
        claimed={"acyclic", "no-infinite-directed-path"},
    )


def out_stars() -> PresentedGraph:
    """Infinitely many disjoint out-stars: 3k -> 3k+1 and 3k -> 3k+2."""

    def adj(v: int):
        r = v % 3
        if r == 0:
            return ((), (v + 1, v + 2))
        return ((v - r,), ())

    def roots():
        k = 0
        while True:
            yield 3 * k
            k += 1

    return PresentedGraph(
        adj,
        name="out-stars",
        claimed={"acyclic", "no-infinite-directed-path"},
        component_roots=roots,
    )


class _DiagonalLayout:
    """Interleaved enumeration of component-local vertices.

    Component k has size 1 + (k % 4); ids are dealt along diagonals
    (k + t constant), so consecutive ids hop between components.
    """

    def __init__(self):
        self._id_of: dict[tuple[int, int], int] = {}
        self._pair_of: list[tuple[int, int]] = []
        self._next_diag = 0

    @staticmethod
    def size(k: int) -> int:
        return 1 + (k % 4)

    def _extend(self):
        d = self._next_diag
        for k in range(d + 1):
            t = d - k
            if t < self.size(k):
                self._id_of[(k, t)] = len(self._pair_of)
                self._pair_of.append((k, t))
        self._next_diag += 1

    def pair(self, v: int) -> tuple[int, int]:
        while v >= len(self._pair_of):
            self._extend()
        return self._pair_of[v]

    def ident(self, k: int, t: int) -> int:
        while (k, t) not in self._id_of:
            self._extend()
        return self._id_of[(k, t)]


def interleaved_forest() -> PresentedGraph:
    """An infinite forest of small components whose vertex ids interleave.

    Even components are short forward chains, odd components alternate
    orientation, so the forest mixes sources and sinks.
    """
    layout = _DiagonalLayout()

    def points_forward(k: int, t: int) -> bool:
        # edge between local t and t+1
        return (k % 2 == 0) or (t % 2 == 0)

    def adj(v: int):
        k, t = layout.pair(v)
        size = layout.size(k)
        ins, outs = [], []
        if t + 1 < size:
            w = layout.ident(k, t + 1)
            (outs if points_forward(k, t) else ins).append(w)
        if t > 0:
            w = layout.ident(k, t - 1)
            (ins if points_forward(k, t - 1) else outs).append(w)
        return (tuple(ins), tuple(outs))

    def roots():
        k = 0
        while True:
            yield layout.ident(k, 0)
            k += 1

    return PresentedGraph(
        adj,
        name="interleaved-forest",
        claimed={"acyclic", "no-infinite-directed-path"},
        component_roots=roots,
    )


class _RandomBlockChain:
    """Seeded acyclic presented graph: random DAG blocks joined by
    alternating connectors, so directed paths never cross two connectors."""

    def __init__(self, seed: int, max_block: int = 6):
        self.seed = seed
        self.max_block = max_block
        self._starts = [0]  # block g occupies [starts[g], starts[g+1])

    def _block_size(self, g: int) -> int:
        return 1 + pair_hash(self.seed, g, 0) % self.max_block

    def _ensure_block(self, g: int):
        while len(self._starts) <= g + 1:
            h = len(self._starts) - 1
            self._starts.append(self._starts[-1] + self._block_size(h))

    def block_of(self, v: int) -> int:
        while self._starts[-1] <= v:
            self._ensure_block(len(self._starts))
        return bisect.bisect_right(self._starts, v) - 1

    def _pair_present(self, g: int, a: int, b: int) -> bool:
        # a < b are block-local offsets; edges always point low -> high
        return bool(pair_hash(self.seed, g, 1 + a * self.max_block + b) & 1)

    def adjacency(self, v: int):
        g = self.block_of(v)
        self._ensure_block(g + 1)
        lo, hi = self._starts[g], self._starts[g + 1]
        off = v - lo
        ins = [lo + a for a in range(off) if self._pair_present(g, a, off)]
        outs = [
            lo + b
            for b in range(off + 1, hi - lo)
            if self._pair_present(g, off, b)
        ]
        # connector between g and g+1: even g points right, odd g points left
        if v == hi - 1:
            if g % 2 == 0:
                outs.append(hi)
            else:
                ins.append(hi)
        if v == lo and g > 0:
            if (g - 1) % 2 == 0:
                ins.append(lo - 1)
            else:
                outs.append(lo - 1)
        return (tuple(sorted(ins)), tuple(sorted(outs)))


def random_presented(seed: int, max_block: int = 6) -> PresentedGraph:
    """A seeded, weakly connected, acyclic presented graph with bounded
    degrees and no infinite directed path."""
    chain = _RandomBlockChain(seed, max_block)
    return PresentedGraph(
        chain.adjacency,
        name=f"random-graph:{seed}",
        claimed={"acyclic", "no-infinite-directed-path"},
    )


_GRAPH_FAMILIES = {
    "forward-path": forward_path,
    "anti-path": anti_path,
    "out-stars": out_stars,
    "interleaved-forest": interleaved_forest,
}


def presented_from_name(name: str) -> PresentedGraph:
    """Resolve a presented-graph family name."""
    if name in _GRAPH_FAMILIES:
        return _GRAPH_FAMILIES[name]()
    if name.startswith("random-graph:"):
        try:
            seed = int(name.split(":", 1)[1])
        except ValueError as e:
            raise GraphFormatError(f"bad seed in {name!r}") from e
        return random_presented(seed)
    raise GraphFormatError(f"unknown graph family {name!r}")


def read_graph_file(path: str) -> FiniteOrientedGraph:
    """Parse the edge-list format: a header 'n m', then m lines 'u v' with
    1-based vertex labels."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise GraphFormatError(f"{path}: missing 'n m' header")
    try:
        n, m = int(tokens[0]), int(tokens[1])
    except ValueError as e:
        raise GraphFormatError(f"{path}: bad header") from e
    body = tokens[2:]
    if len(body) != 2 * m:
        raise GraphFormatError(f"{path}: expected {2 * m} endpoints, got {len(body)}")
    edges = []
    for t in range(m):
        try:
            u, v = int(body[2 * t]), int(body[2 * t + 1])
        except ValueError as e:
            raise GraphFormatError(f"{path}: bad edge line {t + 1}") from e
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"{path}: edge ({u}, {v}) outside 1..{n}")
        edges.append((u - 1, v - 1))
    return FiniteOrientedGraph(n, edges, name=path)


def read_injection_file(path: str) -> InjectionSpec:
    """Parse an injection file: lines 'i major minor' (1-based i) overriding
    a named tail scheme given by a line 'tail identity|factorial'."""
    overrides: dict[int, OrdinalValue] = {}
    tail_name = "identity"
    with open(path, "r", encoding="utf-8") as fh:
        for ln, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "tail":
                if len(parts) != 2:
                    raise GraphFormatError(f"{path}:{ln}: bad tail line")
                tail_name = parts[1]
                continue
            if len(parts) != 3:
                raise GraphFormatError(f"{path}:{ln}: expected 'i major minor'")
            try:
                i, major, minor = (int(p) for p in parts)
            except ValueError as e:
                raise GraphFormatError(f"{path}:{ln}: bad integers") from e
            if i < 1:
                raise GraphFormatError(f"{path}:{ln}: index must be >= 1")
            overrides[i - 1] = OrdinalValue(major, minor)
    if tail_name == "identity":
        tail = identity_injection()
    elif tail_name == "factorial":
        tail = FactorialBlock().equivalent_injection()
    else:
        raise GraphFormatError(f"{path}: unknown tail scheme {tail_name!r}")

    def f(i: int) -> OrdinalValue:
        got = overrides.get(i)
        return got if got is not None else tail.eval(i)

    return InjectionSpec(
        f, description=f"file:{path}", finite_below=tail.finite_below and not overrides
    )


def binomial2(n: int) -> int:
    """C(n, 2) as an exact integer."""
    return n * (n - 1) // 2


def exact_density(forward: int, n: int) -> Fraction:
    """forward / C(n, 2) as an exact fraction; requires n >= 2."""
    if n < 2:
        raise ValueError("density needs at least two vertices")
    return Fraction(forward, binomial2(n))
