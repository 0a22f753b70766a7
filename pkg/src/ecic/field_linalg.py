"""Finite-field scalar, vector, and matrix arithmetic.

Elements of GF(q), q = p^e, are integers in [0, q).  Prime fields use
integers mod p.  Extension-field elements encode polynomial coefficients in
base p: the integer sum(c_i * p**i) stands for the residue class of
sum(c_i * x**i).  Reduction is modulo a fixed monic irreducible polynomial
per (p, e) -- the one whose own base-p integer encoding (leading term
included) is smallest -- so that integer encodings are portable across
runs and machines.

Vectors and matrices are immutable; all operations are pure functions.
GF(2) data additionally runs on packed machine words inside `mat_rank` and
`code_min_distance`; the packed and generic paths are interchangeable and
are compared against each other in the test suite.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    CapExceeded,
    LengthMismatch,
    MalformedDocument,
    NoSolution,
    NotPrimePower,
    WeightCapExceeded,
)

DEFAULT_FIELD_CAP = 256
DEFAULT_ENUM_BUDGET = 1 << 26


# ---------------------------------------------------------------------------
# field construction


def _prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            return (q, 1)  # q itself is prime
        if q % p:
            continue
        e = 0
        rest = q
        while rest % p == 0:
            rest //= p
            e += 1
        return (p, e) if rest == 1 else None
    return None


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial mod, coefficients low-first."""
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return a[:dm]


def _poly_is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = _poly_mod(list(poly), div, p)
            if not any(rem):
                return False
    return True


def _lowest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e over GF(p) with smallest integer encoding."""
    for tail in itertools.product(range(p), repeat=e):
        # tail ordered so that sum(tail[i] * p**i) ascends with high powers
        # most significant: iterate coefficients high-to-low outermost.
        coeffs = tuple(reversed(tail)) + (1,)
        if _poly_is_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError(f"no irreducible polynomial of degree {e} over GF({p})")


class Field:
    """Arithmetic tables for GF(q), q = p^e <= cap.

    Elements are integers 0..q-1.  For e > 1, the integer is the base-p
    encoding of the polynomial coefficients; `modulus` holds the reduction
    polynomial's coefficients (low-first, monic).
    """

    __slots__ = ("q", "p", "e", "modulus", "_add", "_mul", "_neg", "_inv")

    def __init__(self, q: int, cap: int = DEFAULT_FIELD_CAP):
        if q > cap:
            raise CapExceeded(f"field order {q} exceeds cap {cap}")
        pe = _prime_power(q)
        if pe is None:
            raise NotPrimePower(f"{q} is not a prime power")
        p, e = pe
        self.q, self.p, self.e = q, p, e
        self.modulus = (0,) * 0 if e == 1 else _lowest_irreducible(p, e)

        if e == 1:
            self._add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
            self._mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
        else:
            digits = [self._digits(a) for a in range(q)]
            self._add = tuple(
                tuple(self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                      for b in range(q))
                for a in range(q)
            )
            mul_rows = []
            for a in range(q):
                row = []
                for b in range(q):
                    prod = _poly_mod(_poly_mul(digits[a], digits[b], p), self.modulus, p)
                    row.append(self._undigits(prod))
                mul_rows.append(tuple(row))
            self._mul = tuple(mul_rows)

        neg = [0] * q
        for a in range(q):
            for b in range(q):
                if self._add[a][b] == 0:
                    neg[a] = b
                    break
        self._neg = tuple(neg)

        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    inv[a] = b
                    break
            else:
                raise RuntimeError(f"element {a} of GF({q}) has no inverse; bad modulus")
        self._inv = tuple(inv)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, digits: Iterable[int]) -> int:
        out = 0
        for c in reversed(list(digits)):
            out = out * self.p + c
        return out

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self._mul[out][a]
        return out

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.q == other.q

    def __hash__(self) -> int:
        return hash(("Field", self.q))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"Field(q={self.q})"
        return f"Field(q={self.q}, p={self.p}, e={self.e}, modulus={self.modulus})"


@functools.lru_cache(maxsize=None)
def make_field(q: int, cap: int = DEFAULT_FIELD_CAP) -> Field:
    """Build (and cache) the GF(q) arithmetic tables.

    Raises NotPrimePower if q is not a prime power, CapExceeded if q > cap.
    Table construction verifies that every nonzero element has an inverse.
    """
    return Field(q, cap)


# ---------------------------------------------------------------------------
# vectors and matrices


@dataclass(frozen=True)
class FVector:
    """Immutable vector over a Field; entries are integers in [0, q)."""

    field: Field
    entries: tuple[int, ...]

    def __post_init__(self):
        q = self.field.q
        if any(not (0 <= x < q) for x in self.entries):
            raise ValueError("vector entry outside field range")

    def __len__(self) -> int:
        return len(self.entries)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.entries) if x)

    def weight(self) -> int:
        return sum(1 for x in self.entries if x)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def add(self, other: FVector) -> FVector:
        self._check(other)
        add = self.field._add
        return FVector(self.field, tuple(add[a][b] for a, b in zip(self.entries, other.entries)))

    def sub(self, other: FVector) -> FVector:
        self._check(other)
        f = self.field
        return FVector(f, tuple(f.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def scale(self, c: int) -> FVector:
        mul = self.field._mul
        return FVector(self.field, tuple(mul[c][a] for a in self.entries))

    def dot(self, other: FVector) -> int:
        self._check(other)
        f = self.field
        acc = 0
        for a, b in zip(self.entries, other.entries):
            acc = f._add[acc][f._mul[a][b]]
        return acc

    def take(self, positions: Sequence[int]) -> FVector:
        return FVector(self.field, tuple(self.entries[i] for i in positions))

    def supported_on(self, positions: Iterable[int]) -> bool:
        allowed = set(positions)
        return all(i in allowed for i in self.support())

    def _check(self, other: FVector) -> None:
        if self.field != other.field or len(self) != len(other):
            raise LengthMismatch("vector field/length mismatch")

    @staticmethod
    def zero(field: Field, n: int) -> FVector:
        return FVector(field, (0,) * n)

    @staticmethod
    def unit(field: Field, n: int, i: int) -> FVector:
        return FVector(field, tuple(1 if j == i else 0 for j in range(n)))


@dataclass(frozen=True)
class FMatrix:
    """Immutable row-major matrix over a Field."""

    field: Field
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        q = self.field.q
        for r in self.rows:
            if len(r) != self.ncols:
                raise LengthMismatch("ragged matrix rows")
            if any(not (0 <= x < q) for x in r):
                raise ValueError("matrix entry outside field range")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> FVector:
        return FVector(self.field, self.rows[i])

    def rows_at(self, indices: Sequence[int]) -> FMatrix:
        return FMatrix(self.field, tuple(self.rows[i] for i in indices), self.ncols)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> FMatrix:
        return FMatrix(
            self.field,
            tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)),
            self.nrows,
        )

    def left_mul(self, x: FVector) -> FVector:
        """Row vector times matrix: x @ self."""
        if len(x) != self.nrows or x.field != self.field:
            raise LengthMismatch(f"expected row vector of length {self.nrows}")
        f = self.field
        add, mul = f._add, f._mul
        acc = [0] * self.ncols
        for coef, row in zip(x.entries, self.rows):
            if coef:
                for j, v in enumerate(row):
                    if v:
                        acc[j] = add[acc[j]][mul[coef][v]]
        return FVector(f, tuple(acc))

    def matmul(self, other: FMatrix) -> FMatrix:
        if other.nrows != self.ncols or other.field != self.field:
            raise LengthMismatch("matrix product dimension mismatch")
        f = self.field
        add, mul = f._add, f._mul
        out = []
        for row in self.rows:
            acc = [0] * other.ncols
            for coef, orow in zip(row, other.rows):
                if coef:
                    for j, v in enumerate(orow):
                        if v:
                            acc[j] = add[acc[j]][mul[coef][v]]
            out.append(tuple(acc))
        return FMatrix(f, tuple(out), other.ncols)

    def mul_col(self, v: FVector) -> FVector:
        """Matrix times column vector: self @ v^T, returned as a vector."""
        if len(v) != self.ncols or v.field != self.field:
            raise LengthMismatch(f"expected column vector of length {self.ncols}")
        f = self.field
        add, mul = f._add, f._mul
        out = []
        for row in self.rows:
            acc = 0
            for a, b in zip(row, v.entries):
                acc = add[acc][mul[a][b]]
            out.append(acc)
        return FVector(f, tuple(out))

    @staticmethod
    def from_rows(field: Field, rows: Iterable[Sequence[int]], ncols: int | None = None) -> FMatrix:
        tup = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not tup:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(tup[0])
        return FMatrix(field, tup, ncols)

    @staticmethod
    def identity(field: Field, n: int) -> FMatrix:
        return FMatrix(field, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @staticmethod
    def zero(field: Field, nrows: int, ncols: int) -> FMatrix:
        return FMatrix(field, tuple((0,) * ncols for _ in range(nrows)), ncols)


def hamming_weight(u: FVector) -> int:
    return u.weight()


def hamming_distance(u: FVector, v: FVector) -> int:
    return u.sub(v).weight()


# ---------------------------------------------------------------------------
# elimination kernels


def _rref(rows: Sequence[Sequence[int]], ncols: int, field: Field) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns).

    Pivot rule: scan columns left to right, pick the first unused row with a
    nonzero entry.  Output is deterministic for a given input.
    """
    work = [list(r) for r in rows]
    add, mul, neg = field._add, field._mul, field._neg
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = None
        for r in range(rank, len(work)):
            if work[r][col]:
                sel = r
                break
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        inv = field._inv[work[rank][col]]
        if inv != 1:
            work[rank] = [mul[inv][x] for x in work[rank]]
        prow = work[rank]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                c = neg[work[r][col]]
                row = work[r]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = add[row[j]][mul[c][prow[j]]]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def _pack_bits(entries: Sequence[int]) -> int:
    mask = 0
    for i, x in enumerate(entries):
        if x:
            mask |= 1 << i
    return mask


def _rank_gf2(masks: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for m in masks:
        while m:
            top = m.bit_length() - 1
            if top in basis:
                m ^= basis[top]
            else:
                basis[top] = m
                break
    return len(basis)


def _rank_generic(M: FMatrix) -> int:
    return len(_rref(M.rows, M.ncols, M.field)[0])


def mat_rank(M: FMatrix) -> int:
    """Rank of M over its field."""
    if M.field.q == 2:
        return _rank_gf2(_pack_bits(r) for r in M.rows)
    return _rank_generic(M)


def row_basis(M: FMatrix) -> FMatrix:
    """Reduced-echelon basis of the row space (deterministic)."""
    rows, _ = _rref(M.rows, M.ncols, M.field)
    return FMatrix(M.field, tuple(tuple(r) for r in rows), M.ncols)


def parity_check_matrix(G: FMatrix) -> FMatrix:
    """A full-rank matrix H with G @ H^T = 0 spanning the dual of G's row space.

    With k = rank(G) and N columns, H is (N-k) x N; its rows are the standard
    kernel basis read off the reduced echelon form of G (one row per
    non-pivot column, unit entry on that column), so the output is
    deterministic.  k = N yields a 0 x N matrix; a 0 x N input yields the
    identity.
    """
    field = G.field
    N = G.ncols
    reduced, pivots = _rref(G.rows, N, field)
    pivot_set = set(pivots)
    free = [j for j in range(N) if j not in pivot_set]
    neg = field._neg
    rows = []
    for j in free:
        h = [0] * N
        h[j] = 1
        for r, p in enumerate(pivots):
            h[p] = neg[reduced[r][j]]
        rows.append(tuple(h))
    return FMatrix(field, tuple(rows), N)


def solve_linear(A: FMatrix, b: FVector) -> tuple[FVector, list[FVector]] | None:
    """Solve A x = b (x a column vector of length A.ncols).

    Returns (particular solution, kernel basis) or None if inconsistent.
    The particular solution sets all free variables to zero; the kernel
    basis has one vector per free column.  Deterministic.
    """
    if len(b) != A.nrows or b.field != A.field:
        raise LengthMismatch("right-hand side length mismatch")
    field = A.field
    N = A.ncols
    aug = [list(r) + [bv] for r, bv in zip(A.rows, b.entries)]
    reduced, pivots = _rref(aug, N + 1, field)
    if N in pivots:
        return None
    pivot_set = set(pivots)
    free = [j for j in range(N) if j not in pivot_set]
    x = [0] * N
    for r, p in enumerate(pivots):
        x[p] = reduced[r][N]
    neg = field._neg
    kernel = []
    for j in free:
        v = [0] * N
        v[j] = 1
        for r, p in enumerate(pivots):
            v[p] = neg[reduced[r][j]]
        kernel.append(FVector(field, tuple(v)))
    return FVector(field, tuple(x)), kernel


def solve_row_combination(M: FMatrix, target: FVector) -> tuple[FVector, list[FVector]] | None:
    """Solve a @ M = target for the coefficient row vector a."""
    return solve_linear(M.transpose(), target)


def in_row_space(M: FMatrix, target: FVector) -> bool:
    return solve_row_combination(M, target) is not None


# ---------------------------------------------------------------------------
# coset leaders and minimum distance


def coset_leader(H: FMatrix, s: FVector, weight_cap: int) -> FVector:
    """Minimum-weight e with H e^T = s, searching weights 0, 1, 2, ...

    Candidates of equal weight are ordered by lexicographic support and then
    lexicographic nonzero values, so the result is reproducible.  Raises
    NoSolution if H e^T = s has no solution at any weight, WeightCapExceeded
    if every solution needs weight > weight_cap.
    """
    if len(s) != H.nrows or s.field != H.field:
        raise LengthMismatch("syndrome length must equal the parity row count")
    field = H.field
    N = H.ncols
    if s.is_zero():
        return FVector.zero(field, N)
    if solve_linear(H, s) is None:
        raise NoSolution("inconsistent syndrome")
    add, mul = field._add, field._mul
    cols = [H.column(j) for j in range(N)]
    nonzero = list(field.nonzero())
    target = s.entries
    for w in range(1, min(weight_cap, N) + 1):
        for supp in itertools.combinations(range(N), w):
            chosen = [cols[j] for j in supp]
            for values in itertools.product(nonzero, repeat=w):
                acc = [0] * H.nrows
                for val, col in zip(values, chosen):
                    for r, cv in enumerate(col):
                        if cv:
                            acc[r] = add[acc[r]][mul[val][cv]]
                if tuple(acc) == target:
                    e = [0] * N
                    for j, val in zip(supp, values):
                        e[j] = val
                    return FVector(field, tuple(e))
    raise WeightCapExceeded(f"no solution of weight <= {weight_cap}")


def _min_distance_gf2(basis_masks: list[int]) -> int:
    """Minimum weight over the nonzero GF(2) span, by Gray-code enumeration."""
    k = len(basis_masks)
    word = 0
    best = None
    gray_prev = 0
    for i in range(1, 1 << k):
        gray = i ^ (i >> 1)
        word ^= basis_masks[(gray ^ gray_prev).bit_length() - 1]
        gray_prev = gray
        w = word.bit_count()
        if best is None or w < best:
            best = w
            if best == 1:
                break
    return best


def code_min_distance(G: FMatrix, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Minimum weight of a nonzero codeword in the row space of G.

    Enumerates the q^rank(G) codewords; requires rank >= 1 and raises
    BudgetExceeded when the enumeration would exceed `budget` vectors.
    """
    field = G.field
    basis = row_basis(G)
    k = basis.nrows
    if k == 0:
        raise ValueError("zero code has no minimum distance")
    if field.q ** k > budget:
        raise BudgetExceeded(f"{field.q}^{k} codewords exceed enumeration budget {budget}")
    if field.q == 2:
        return _min_distance_gf2([_pack_bits(r) for r in basis.rows])
    add, mul = field._add, field._mul
    N = basis.ncols
    best = None
    for coeffs in itertools.product(field.elements(), repeat=k):
        if not any(coeffs):
            continue
        acc = [0] * N
        for c, row in zip(coeffs, basis.rows):
            if c:
                for j, v in enumerate(row):
                    if v:
                        acc[j] = add[acc[j]][mul[c][v]]
        w = sum(1 for x in acc if x)
        if best is None or w < best:
            best = w
            if best == 1:
                break
    return best


# ---------------------------------------------------------------------------
# matrix text format: first line "q n N", then n rows of N integers


def format_matrix(M: FMatrix) -> str:
    lines = [f"{M.field.q} {M.nrows} {M.ncols}"]
    for r in M.rows:
        lines.append(" ".join(str(x) for x in r))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, cap: int = DEFAULT_FIELD_CAP) -> FMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedDocument("empty matrix document")
    head = lines[0].split()
    if len(head) != 3:
        raise MalformedDocument("matrix header must be 'q n N'")
    try:
        q, n, N = (int(t) for t in head)
    except ValueError as exc:
        raise MalformedDocument("matrix header must contain integers") from exc
    if len(lines) - 1 != n:
        raise MalformedDocument(f"expected {n} matrix rows, found {len(lines) - 1}")
    field = make_field(q, cap)
    rows = []
    for ln in lines[1:]:
        try:
            row = tuple(int(t) for t in ln.split())
        except ValueError as exc:
            raise MalformedDocument("matrix entries must be integers") from exc
        if len(row) != N:
            raise MalformedDocument(f"expected {N} entries per row")
        if any(not (0 <= x < q) for x in row):
            raise MalformedDocument("matrix entry outside field range")
        rows.append(row)
    return FMatrix(field, tuple(rows), N)


def all_vectors(field: Field, n: int) -> Iterator[FVector]:
    """Every vector of F_q^n in lexicographic entry order."""
    for entries in itertools.product(field.elements(), repeat=n):
        yield FVector(field, entries)


def vectors_of_weight_at_most(field: Field, n: int, w: int) -> Iterator[FVector]:
    """Vectors of weight <= w, ascending weight, lexicographic support/values."""
    yield FVector.zero(field, n)
    nonzero = list(field.nonzero())
    for weight in range(1, min(w, n) + 1):
        for supp in itertools.combinations(range(n), weight):
            for values in itertools.product(nonzero, repeat=weight):
                e = [0] * n
                for j, val in zip(supp, values):
                    e[j] = val
                yield FVector(field, tuple(e))
