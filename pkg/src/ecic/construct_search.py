"""Constructions of error-correcting index codes and the exact
optimal-length search.

Three constructions: concatenating an optimal plain index code with a
distance-(2*delta+1) outer code, extended Reed-Solomon generators for the
MDS regime, and seeded random sampling.  The exact search reduces the
candidate space to multisets of projective column classes -- the
verification predicate only sees columns up to order and nonzero scaling
-- and exhausts them with quota pruning, walking candidate lengths upward
from the best lower bound until the first feasible length.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from typing import Optional

from ._cover import canonical_class, multiset_cover_search, projective_classes
from .bounds import DEFAULT_NODE_BUDGET, alpha_bound, kappa_bound, singleton_bound
from .errors import (
    BudgetExceeded,
    InternalContradiction,
    InvalidInnerIC,
    LengthMismatch,
    OutOfRegime,
    OuterDistanceTooSmall,
)
from .field_linalg import (
    DEFAULT_ENUM_BUDGET,
    Field,
    FMatrix,
    all_vectors,
    row_basis,
)
from .index_codes import (
    DEFAULT_MIN_RANK_BUDGET_EXPONENT,
    LinearIndexCode,
    min_rank,
    verify_ecic,
    verify_ic,
)
from .instance import IcsiInstance, enumerate_error_vectors


def mds_generator(field: Field, k: int, length: int) -> FMatrix:
    """Generator of an MDS [length, k, length - k + 1] code.

    Regimes: length == k (identity), k == 1 (repetition, any length), and
    k <= length <= q + 1 (extended Reed-Solomon on the fixed evaluation
    sequence 0, 1, g, g^2, ... with g the smallest primitive element, plus
    the point at infinity when length == q + 1).
    """
    if k < 1 or length < k:
        raise OutOfRegime(f"need 1 <= k <= length, got k={k}, length={length}")
    if length == k:
        return FMatrix.identity(field, k)
    if k == 1:
        return FMatrix(field, ((1,) * length,), length)
    if length > field.q + 1:
        raise OutOfRegime(
            f"length {length} exceeds q + 1 = {field.q + 1} for dimension {k}"
        )
    g = _smallest_primitive(field)
    points = [0, 1]
    x = g
    while len(points) < field.q:
        points.append(x)
        x = field.mul(x, g)
    rows = []
    for r in range(k):
        row = [field.pow(pt, r) for pt in points[: min(length, field.q)]]
        if length == field.q + 1:
            row.append(1 if r == k - 1 else 0)
        rows.append(tuple(row))
    return FMatrix(field, tuple(rows), length)


def _smallest_primitive(field: Field) -> int:
    for g in field.nonzero():
        x = g
        order = 1
        while x != 1:
            x = field.mul(x, g)
            order += 1
        if order == field.q - 1:
            return g
    raise AssertionError("no primitive element found")


def optimal_ic_matrix(
    inst: IcsiInstance,
    field: Field,
    budget_exponent: int = DEFAULT_MIN_RANK_BUDGET_EXPONENT,
) -> FMatrix:
    """An n x kappa matrix that is a shortest plain index code: the
    transposed row basis of a min-rank witness, so that every witness row
    lies in its column space."""
    result = min_rank(inst, field, budget_exponent)
    return row_basis(result.witness).transpose()


def concatenate_construction(
    inst: IcsiInstance,
    field: Field,
    delta: int,
    ic_matrix: FMatrix,
    outer: FMatrix,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> LinearIndexCode:
    """Index code correcting delta errors as inner-times-outer product.

    `ic_matrix` (n x kappa) must be a valid plain index code for the
    instance; `outer` (kappa x N') must generate a code of dimension kappa
    and minimum distance >= 2*delta + 1 (checked over all q^kappa nonzero
    messages, which also rejects rank-deficient outers).  The product is
    re-verified before being returned.
    """
    if ic_matrix.ncols != outer.nrows:
        raise LengthMismatch("inner columns must match outer rows")
    inner_code = LinearIndexCode(inst, field, ic_matrix)
    if not verify_ic(inner_code):
        raise InvalidInnerIC("inner matrix is not an index code for this instance")
    need = 2 * delta + 1
    k = outer.nrows
    if k:
        if field.q**k > enum_budget:
            raise BudgetExceeded(f"outer check needs {field.q}^{k} messages")
        for msg in all_vectors(field, k):
            if msg.is_zero():
                continue
            if outer.left_mul(msg).weight() < need:
                raise OuterDistanceTooSmall(
                    f"outer code has a nonzero word of weight < {need}"
                )
    product = ic_matrix.matmul(outer)
    code = LinearIndexCode(inst, field, product)
    verdict = verify_ecic(code, delta, enum_budget)
    if not verdict.ok:
        raise InternalContradiction("concatenated code failed verification")
    return code


def _hash_stream_matrix(field: Field, nrows: int, ncols: int, seed: int, trial: int) -> FMatrix:
    """Matrix with entries drawn from a counter-mode SHA-256 stream keyed by
    (seed, trial); bytes are rejection-sampled to stay uniform mod q."""
    q = field.q
    limit = (256 // q) * q
    entries = []
    counter = 0
    while len(entries) < nrows * ncols:
        block = hashlib.sha256(f"ecic:{seed}:{trial}:{counter}".encode()).digest()
        counter += 1
        for byte in block:
            if byte < limit:
                entries.append(byte % q)
                if len(entries) == nrows * ncols:
                    break
    rows = tuple(
        tuple(entries[r * ncols : (r + 1) * ncols]) for r in range(nrows)
    )
    return FMatrix(field, rows, ncols)


def random_construct(
    inst: IcsiInstance,
    field: Field,
    delta: int,
    length: int,
    trials: int,
    seed: int,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    first_trial_matrix: Optional[FMatrix] = None,
) -> Optional[LinearIndexCode]:
    """First verifying code among `trials` seeded random n x length
    matrices, or None.  Fully determined by (seed, trials, length);
    `first_trial_matrix` substitutes trial 0 for debugging."""
    if length < 1:
        raise LengthMismatch("length must be positive")
    n = inst.num_messages
    for trial in range(trials):
        if trial == 0 and first_trial_matrix is not None:
            matrix = first_trial_matrix
        else:
            matrix = _hash_stream_matrix(field, n, length, seed, trial)
        code = LinearIndexCode(inst, field, matrix)
        if verify_ecic(code, delta, enum_budget).ok:
            return code
    return None


# ---------------------------------------------------------------------------
# exact existence and optimal length


@dataclass(frozen=True)
class ExistsResult:
    feasible: bool
    witness: Optional[LinearIndexCode]
    nodes: int


def _confusable_classes(inst: IcsiInstance, field: Field, enum_budget: int) -> list[tuple[int, ...]]:
    """The instance's confusable vectors reduced to projective classes,
    sorted for determinism."""
    seen = set()
    for z in enumerate_error_vectors(inst, field, enum_budget):
        seen.add(canonical_class(z.entries, field))
    return sorted(seen)


def exists_ecic(
    inst: IcsiInstance,
    field: Field,
    delta: int,
    length: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    jobs: int = 1,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> ExistsResult:
    """Exhaustively decide whether any n x length matrix corrects delta
    errors for the instance.

    The verification predicate counts, per confusable vector z, the columns
    c with <z, c> != 0; it is invariant under column order and nonzero
    column scaling, so the search ranges over multisets of projective
    column classes with quota-based pruning.  An infeasible answer is a
    proof by exhaustion; BudgetExceeded means unknown, never infeasible.
    A returned witness has been re-verified through the margin route.
    """
    if length < 0:
        raise LengthMismatch("length must be nonnegative")
    n = inst.num_messages
    zs = _confusable_classes(inst, field, enum_budget)
    if not zs:
        witness = LinearIndexCode(inst, field, FMatrix.zero(field, n, length))
        return ExistsResult(True, witness, 0)
    columns = projective_classes(field, n)
    add, mul = field._add, field._mul

    def dot(u, v):
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        return acc

    hit_sets = [
        frozenset(zi for zi, z in enumerate(zs) if dot(z, col)) for col in columns
    ]
    res = multiset_cover_search(
        hit_sets, len(zs), length, 2 * delta + 1, node_budget, jobs
    )
    if not res.found:
        return ExistsResult(False, None, res.nodes)
    cols = [columns[c] for c in res.classes]
    rows = tuple(tuple(col[r] for col in cols) for r in range(n))
    code = LinearIndexCode(inst, field, FMatrix(field, rows, length))
    if not verify_ecic(code, delta, enum_budget).ok:
        raise InternalContradiction("search witness failed margin verification")
    return ExistsResult(True, code, res.nodes)


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    wall_seconds: float
    node_budget: int


@dataclass(frozen=True)
class SearchOutcome:
    """Result of the exact optimal-length search.

    `infeasible_below` is optimal_length - 1: every shorter length is ruled
    out either by the lower bounds or by exhaustion."""

    optimal_length: int
    witness: LinearIndexCode
    infeasible_below: int
    stats: SearchStats


def optimal_length_search(
    inst: IcsiInstance,
    field: Field,
    delta: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    jobs: int = 1,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    budget_exponent: int = DEFAULT_MIN_RANK_BUDGET_EXPONENT,
) -> SearchOutcome:
    """Exact optimal code length for (instance, field, delta).

    Scans lengths upward from the best lower bound, exhausting each until
    the first feasible one; the concatenation bound caps the scan, so
    termination is guaranteed.  On budget exhaustion the raised error
    carries the bracket explored so far.
    """
    started = time.perf_counter()
    lower = max(
        alpha_bound(inst, field, delta, node_budget=node_budget),
        singleton_bound(inst, field, delta, budget_exponent=budget_exponent),
    )
    upper = kappa_bound(
        inst, field, delta, budget_exponent=budget_exponent, node_budget=node_budget
    )
    nodes = 0
    for length in range(lower, upper + 1):
        try:
            res = exists_ecic(
                inst, field, delta, length,
                node_budget=node_budget, jobs=jobs, enum_budget=enum_budget,
            )
        except BudgetExceeded as exc:
            raise BudgetExceeded(
                f"budget exhausted at length {length}; infeasible below {length}, "
                f"feasible at {upper}",
                nodes=nodes + (exc.nodes or 0),
            ) from exc
        nodes += res.nodes
        if res.feasible:
            return SearchOutcome(
                optimal_length=length,
                witness=res.witness,
                infeasible_below=length - 1,
                stats=SearchStats(nodes, time.perf_counter() - started, node_budget),
            )
    raise InternalContradiction(
        "no feasible length up to the concatenation bound; this cannot happen"
    )
