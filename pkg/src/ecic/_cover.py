"""Backtracking search for column multisets meeting per-target hit quotas.

Shared kernel behind the existence searches: a candidate matrix is a
multiset of N column classes (columns identified up to nonzero scaling),
and a set of "targets" must each be hit -- have a nonzero inner product --
by at least `threshold` of the chosen columns.  Columns are enumerated in
non-decreasing class order, so every multiset is visited exactly once.

Per-target hit counts are packed eight bits per target into one big
integer; the prune test ("some target cannot reach its quota even if every
remaining pick hits it, counting only classes still allowed") is a single
SWAR comparison.  Counts and prune bounds never exceed the multiset size,
so that size is capped at 120 to keep every packed byte below 128, where
the byte-wise less-than trick is valid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded, CapExceeded
from .field_linalg import Field

_WIDTH = 8
_MAX_SIZE = 120


@dataclass(frozen=True)
class CoverResult:
    found: bool
    classes: tuple[int, ...] | None  # multiset of class indices, non-decreasing
    nodes: int


def projective_classes(field: Field, n: int) -> list[tuple[int, ...]]:
    """Representatives of the nonzero vectors of F_q^n up to scaling: first
    nonzero coordinate normalized to 1, ordered lexicographically."""
    reps = []
    for lead in range(n):
        for tail in itertools.product(field.elements(), repeat=n - lead - 1):
            reps.append((0,) * lead + (1,) + tail)
    return reps


def canonical_class(vec: Sequence[int], field: Field) -> tuple[int, ...]:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    lead = next(x for x in vec if x)
    if lead == 1:
        return tuple(vec)
    c = field.inv(lead)
    mul = field._mul
    return tuple(mul[c][x] for x in vec)


def _packed(indices: Iterable[int]) -> int:
    acc = 0
    for i in indices:
        acc |= 1 << (_WIDTH * i)
    return acc


class _Kernel:
    """Packed tables plus the depth-first search over one class range."""

    def __init__(self, hit_sets: Sequence, num_targets: int, size: int, threshold: int):
        # visit high-coverage classes first; ties by original index
        self.order = sorted(range(len(hit_sets)), key=lambda c: (-len(hit_sets[c]), c))
        self.adds = [_packed(sorted(hit_sets[c])) for c in self.order]
        self.size = size
        low = _packed(range(num_targets))
        self.high = low << (_WIDTH - 1)
        self.thresh_low = threshold * low
        # live_low[s]: packed 1 per target hit by some class with index >= s
        self.live_low = [0] * (len(self.order) + 1)
        alive: set[int] = set()
        for s in range(len(self.order) - 1, -1, -1):
            alive |= set(hit_sets[self.order[s]])
            self.live_low[s] = _packed(sorted(alive))

    def scan(self, first_lo: int, first_hi: int, node_budget: int) -> tuple[bool, list[int], int]:
        """Exhaust all multisets whose smallest class index (in visit order)
        lies in [first_lo, first_hi)."""
        adds, live_low = self.adds, self.live_low
        high, thresh_low = self.high, self.thresh_low
        nodes = 0
        path: list[int] = []

        def dfs(start: int, rem: int, cnt: int) -> bool:
            nonlocal nodes
            if not ((cnt - thresh_low) & ~cnt & high):
                path.extend([path[-1]] * rem)
                return True
            if rem == 0:
                return False
            # bound: every remaining pick hits each still-coverable target
            ub = cnt + rem * live_low[start]
            if (ub - thresh_low) & ~ub & high:
                return False
            for c in range(start, len(adds)):
                nodes += 1
                if nodes > node_budget:
                    raise BudgetExceeded("cover search node budget exhausted", nodes=nodes)
                path.append(c)
                if dfs(c, rem - 1, cnt + adds[c]):
                    return True
                path.pop()
            return False

        for c0 in range(first_lo, min(first_hi, len(adds))):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("cover search node budget exhausted", nodes=nodes)
            path.append(c0)
            if dfs(c0, self.size - 1, adds[c0]):
                return True, path, nodes
            path.pop()
        return False, [], nodes


_WORKER_ARGS: dict = {}


def _init_worker(hit_sets, num_targets, size, threshold, node_budget):
    _WORKER_ARGS["kernel"] = _Kernel(hit_sets, num_targets, size, threshold)
    _WORKER_ARGS["budget"] = node_budget


def _run_chunk(bounds: tuple[int, int]):
    kernel: _Kernel = _WORKER_ARGS["kernel"]
    try:
        return kernel.scan(bounds[0], bounds[1], _WORKER_ARGS["budget"]) + (None,)
    except BudgetExceeded as exc:
        return False, [], exc.nodes or 0, "budget"


def multiset_cover_search(
    hit_sets: Sequence[frozenset[int] | set[int]],
    num_targets: int,
    size: int,
    threshold: int,
    node_budget: int,
    jobs: int = 1,
) -> CoverResult:
    """Decide whether some size-`size` multiset of classes hits every
    target at least `threshold` times.

    hit_sets[c] lists the target indices class c hits.  Exhaustive unless
    the node budget trips (then BudgetExceeded carries the node count); a
    returned found=False is a proof of infeasibility.  With jobs > 1 the
    first-class subtrees are split into contiguous chunks searched in
    parallel (each chunk gets the full node budget); the outcome and the
    witness are identical to the serial scan.
    """
    if num_targets == 0 or threshold <= 0:
        return CoverResult(True, _trivial_fill(hit_sets, size), 0)
    if size > _MAX_SIZE:
        raise CapExceeded(f"multiset size {size} exceeds packed-count cap {_MAX_SIZE}")
    if threshold > size:
        return CoverResult(False, None, 0)  # each target gets at most one hit per pick

    num_classes = len(hit_sets)
    if jobs > 1 and num_classes > 1:
        found, path, nodes = _scan_parallel(
            hit_sets, num_targets, size, threshold, node_budget, jobs
        )
    else:
        kernel = _Kernel(hit_sets, num_targets, size, threshold)
        found, path, nodes = kernel.scan(0, num_classes, node_budget)
    if not found:
        return CoverResult(False, None, nodes)
    order = sorted(range(num_classes), key=lambda c: (-len(hit_sets[c]), c))
    return CoverResult(True, tuple(sorted(order[c] for c in path)), nodes)


def _scan_parallel(hit_sets, num_targets, size, threshold, node_budget, jobs):
    import multiprocessing

    num_classes = len(hit_sets)
    chunks = []
    per = max(1, num_classes // (jobs * 4))
    lo = 0
    while lo < num_classes:
        chunks.append((lo, min(lo + per, num_classes)))
        lo += per
    ctx = multiprocessing.get_context()
    with ctx.Pool(
        jobs,
        initializer=_init_worker,
        initargs=(tuple(map(frozenset, hit_sets)), num_targets, size, threshold, node_budget),
    ) as pool:
        nodes = 0
        for found, path, chunk_nodes, err in pool.imap(_run_chunk, chunks):
            nodes += chunk_nodes
            if err == "budget":
                pool.terminate()
                raise BudgetExceeded("cover search node budget exhausted", nodes=nodes)
            if found:
                pool.terminate()
                return True, path, nodes
    return False, [], nodes


def _trivial_fill(hit_sets: Sequence, size: int) -> tuple[int, ...] | None:
    if size == 0:
        return ()
    if not hit_sets:
        return None
    return (0,) * size
