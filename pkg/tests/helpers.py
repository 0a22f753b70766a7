"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own elimination and
search kernels: spans and duals are enumerated element by element so that
the fast paths have something independent to be checked against.
"""

from __future__ import annotations

import itertools
import random

from ecic import FMatrix, LinearIndexCode, make_field, pentagon, example1

F2 = make_field(2)
F3 = make_field(3)


def example1_matrix() -> FMatrix:
    return FMatrix(F2, ((1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1)), 4)


def example1_code() -> LinearIndexCode:
    return LinearIndexCode(example1(), F2, example1_matrix())


def pentagon_matrix() -> FMatrix:
    return FMatrix(
        F2,
        (
            (1, 1, 1, 1, 1, 0, 0, 0, 0),
            (0, 1, 0, 1, 1, 0, 1, 1, 0),
            (1, 1, 0, 0, 0, 1, 1, 1, 0),
            (0, 1, 1, 0, 0, 1, 0, 1, 1),
            (1, 0, 1, 0, 1, 0, 0, 1, 1),
        ),
        9,
    )


def pentagon_code() -> LinearIndexCode:
    return LinearIndexCode(pentagon(), F2, pentagon_matrix())


# ---------------------------------------------------------------------------
# oracles


def span_elements(field, rows):
    """Every vector in the span of `rows`, by plain coefficient enumeration."""
    n = len(rows[0]) if rows else 0
    out = set()
    for coeffs in itertools.product(field.elements(), repeat=len(rows)):
        acc = [0] * n
        for c, row in zip(coeffs, rows):
            for j in range(n):
                acc[j] = field.add(acc[j], field.mul(c, row[j]))
        out.add(tuple(acc))
    return out


def brute_rank(field, rows, n):
    """log_q of the span size."""
    size = len(span_elements(field, rows)) if rows else 1
    r = 0
    while field.q**r < size:
        r += 1
    assert field.q**r == size
    return r


def brute_dual(field, rows, n):
    """All vectors orthogonal to every row, by full enumeration of F_q^n."""
    out = set()
    for cand in itertools.product(field.elements(), repeat=n):
        if all(
            not _dot(field, row, cand)
            for row in rows
        ):
            out.add(cand)
    return out


def _dot(field, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def brute_min_distance(field, rows, n):
    """Minimum weight over the nonzero span, from the span oracle."""
    weights = [
        sum(1 for x in vec if x)
        for vec in span_elements(field, rows)
        if any(vec)
    ]
    return min(weights)


def brute_coset_min_weight(field, h_rows, n, syndrome):
    """Minimum weight solution of H e^T = s by enumerating all of F_q^n."""
    best = None
    for cand in itertools.product(field.elements(), repeat=n):
        if tuple(_dot(field, row, cand) for row in h_rows) == syndrome:
            w = sum(1 for x in cand if x)
            best = w if best is None else min(best, w)
    return best


def random_matrix(field, nrows, ncols, rng: random.Random) -> FMatrix:
    rows = tuple(
        tuple(rng.randrange(field.q) for _ in range(ncols)) for _ in range(nrows)
    )
    return FMatrix(field, rows, ncols)


def random_full_rank_matrix(field, nrows, ncols, rng: random.Random) -> FMatrix:
    from ecic import mat_rank

    while True:
        m = random_matrix(field, nrows, ncols, rng)
        if mat_rank(m) == nrows:
            return m


def random_instance(rng: random.Random, max_receivers=5, max_messages=5):
    """A random valid instance with at least one receiver."""
    from ecic import IcsiInstance

    n = rng.randint(1, max_messages)
    m = rng.randint(1, max_receivers)
    demands = tuple(rng.randrange(n) for _ in range(m))
    side = []
    for i in range(m):
        pool = [j for j in range(n) if j != demands[i]]
        k = rng.randint(0, len(pool))
        side.append(frozenset(rng.sample(pool, k)))
    return IcsiInstance(m, n, demands, tuple(side))
