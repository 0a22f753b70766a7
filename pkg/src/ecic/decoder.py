"""Syndrome decoding for linear index codes, with exhaustive checking.

Each receiver precomputes the span of the rows it cannot cancel (its
demanded row plus the rows it neither holds nor demands) and a parity
check of that span.  Decoding subtracts the known side-information
contribution, reads off the syndrome, takes a minimum-weight error
estimate from the coset, and solves for the demanded symbol.  The estimate
need not equal the true error; it only has to land in the true error's
translate of the unwanted-row span, and then the demanded symbol comes out
right whenever the true error weight is within the code's radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .bounds import sphere_volume
from .errors import BudgetExceeded, IndexOutOfRange, InternalContradiction, LengthMismatch
from .field_linalg import (
    DEFAULT_ENUM_BUDGET,
    FMatrix,
    FVector,
    all_vectors,
    coset_leader,
    parity_check_matrix,
    row_basis,
    solve_row_combination,
    vectors_of_weight_at_most,
)
from .index_codes import LinearIndexCode, encode
from .instance import ReceiverFrame, receiver_frame


@dataclass(frozen=True)
class ReceiverDecoder:
    """Precomputed decoding state for one receiver.

    code_space: basis of the span of the demanded row and the complement
    rows; parity: its parity-check matrix; side_rows: the rows the receiver
    can cancel, ordered by ascending message index.
    """

    code: LinearIndexCode
    frame: ReceiverFrame
    code_space: FMatrix
    parity: FMatrix
    side_rows: FMatrix
    unknown_rows: FMatrix  # demanded row first, then sorted complement rows


def build_receiver_decoder(code: LinearIndexCode, i: int) -> ReceiverDecoder:
    if not (0 <= i < code.inst.num_receivers):
        raise IndexOutOfRange(f"receiver index {i} out of range")
    frame = receiver_frame(code.inst, i)
    unknown_idx = [frame.demand] + sorted(frame.complement)
    unknown_rows = code.matrix.rows_at(unknown_idx)
    basis = row_basis(unknown_rows)
    parity = parity_check_matrix(unknown_rows)
    for r in range(basis.nrows):
        if not parity.mul_col(basis.row(r)).is_zero():
            raise InternalContradiction("parity check does not annihilate the code space")
    side_rows = code.matrix.rows_at(sorted(frame.side_info))
    return ReceiverDecoder(code, frame, basis, parity, side_rows, unknown_rows)


@dataclass(frozen=True)
class DecodeOutcome:
    recovered: int
    error_estimate: FVector
    estimate_weight: int
    success: Optional[bool]  # None when ground truth was not supplied


def _side_contribution(dec: ReceiverDecoder, side_values: Sequence[int]) -> FVector:
    field = dec.code.field
    if len(side_values) != dec.side_rows.nrows:
        raise LengthMismatch("side-information values must match the side set size")
    return dec.side_rows.left_mul(FVector(field, tuple(side_values)))


def recover_demand(
    dec: ReceiverDecoder, received: FVector, side_values: Sequence[int], error_estimate: FVector
) -> int:
    """Final solving step alone: given any error estimate in the right
    coset, subtract it and the side contribution and solve for the demanded
    symbol.  The demanded coordinate of the solution is required to be
    unique (its alternatives differ only across the complement rows)."""
    adjusted = received.sub(error_estimate).sub(_side_contribution(dec, side_values))
    sol = solve_row_combination(dec.unknown_rows, adjusted)
    if sol is None:
        raise InternalContradiction("residual left the receiver's code space")
    particular, kernel = sol
    if any(v.entries[0] for v in kernel):
        raise InternalContradiction("demanded symbol is not uniquely determined")
    return particular.entries[0]


def decode(
    dec: ReceiverDecoder,
    received: FVector,
    side_values: Sequence[int],
    weight_cap: int,
    truth: Optional[int] = None,
) -> DecodeOutcome:
    """Syndrome-decode one received word.

    Subtract the side contribution, compute the parity syndrome, take the
    minimum-weight coset solution under `weight_cap`, then solve for the
    demanded symbol.  Raises WeightCapExceeded when even the lightest coset
    member is heavier than the cap (more channel errors than allowed for).
    """
    if len(received) != dec.code.length:
        raise LengthMismatch("received word length mismatch")
    adjusted = received.sub(_side_contribution(dec, side_values))
    syndrome = dec.parity.mul_col(adjusted)
    estimate = coset_leader(dec.parity, syndrome, weight_cap)
    if not dec.parity.mul_col(estimate).sub(syndrome).is_zero():
        raise InternalContradiction("coset leader does not reproduce the syndrome")
    recovered = recover_demand(dec, received, side_values, estimate)
    return DecodeOutcome(
        recovered=recovered,
        error_estimate=estimate,
        estimate_weight=estimate.weight(),
        success=None if truth is None else recovered == truth,
    )


def in_relevant_error_set(
    dec: ReceiverDecoder, candidate: FVector, reference_error: FVector
) -> bool:
    """Whether candidate differs from the reference error only by a
    combination of the receiver's complement rows."""
    diff = candidate.sub(reference_error)
    complement_rows = dec.code.matrix.rows_at(sorted(dec.frame.complement))
    return solve_row_combination(complement_rows, diff) is not None


def simulate_round(
    code: LinearIndexCode,
    x: FVector,
    error: FVector | Sequence[FVector],
    delta: int,
    weight_cap: Optional[int] = None,
) -> list[DecodeOutcome]:
    """Broadcast x, corrupt it, and decode at every receiver.

    `error` is either one vector applied to all receivers or a per-receiver
    sequence.  The weight cap defaults to delta; success flags compare
    against the true demanded symbols.
    """
    inst = code.inst
    y = encode(code, x)
    if isinstance(error, FVector):
        errors = [error] * inst.num_receivers
    else:
        errors = list(error)
        if len(errors) != inst.num_receivers:
            raise LengthMismatch("need one error vector per receiver")
    cap = delta if weight_cap is None else weight_cap
    outcomes = []
    for i in range(inst.num_receivers):
        dec = build_receiver_decoder(code, i)
        side = [x.entries[j] for j in sorted(inst.side_info[i])]
        outcomes.append(
            decode(dec, y.add(errors[i]), side, cap, truth=x.entries[inst.demands[i]])
        )
    return outcomes


@dataclass(frozen=True)
class Counterexample:
    kind: str  # "wrong-output" or "estimate-outside-relevant-set"
    x: FVector
    error: FVector
    receiver: int
    outcome: DecodeOutcome


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    decodes: int
    counterexample: Optional[Counterexample]


def exhaustive_correctness_check(
    code: LinearIndexCode, delta: int, enum_budget: int = DEFAULT_ENUM_BUDGET
) -> CheckReport:
    """Decode every (message vector, error of weight <= delta, receiver)
    combination and confirm the demanded symbol always comes back right and
    the error estimate always lands in the true error's relevant set."""
    inst, field = code.inst, code.field
    n, N, m = inst.num_messages, code.length, inst.num_receivers
    total = field.q**n * sphere_volume(field.q, N, delta) * m
    if total > enum_budget:
        raise BudgetExceeded(f"{total} decodes exceed enumeration budget {enum_budget}")
    decoders = [build_receiver_decoder(code, i) for i in range(m)]
    sides = [sorted(inst.side_info[i]) for i in range(m)]
    decodes = 0
    for x in all_vectors(field, n):
        y = encode(code, x)
        for err in vectors_of_weight_at_most(field, N, delta):
            received = y.add(err)
            for i in range(m):
                side_values = [x.entries[j] for j in sides[i]]
                outcome = decode(
                    decoders[i], received, side_values, delta,
                    truth=x.entries[inst.demands[i]],
                )
                decodes += 1
                if not outcome.success:
                    return CheckReport(
                        False, decodes, Counterexample("wrong-output", x, err, i, outcome)
                    )
                if not in_relevant_error_set(decoders[i], outcome.error_estimate, err):
                    return CheckReport(
                        False,
                        decodes,
                        Counterexample("estimate-outside-relevant-set", x, err, i, outcome),
                    )
    return CheckReport(True, decodes, None)
