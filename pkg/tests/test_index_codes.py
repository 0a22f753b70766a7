import itertools
import random

import pytest

from ecic import (
    FMatrix,
    FVector,
    LinearIndexCode,
    code_min_distance,
    correction_radius,
    encode,
    generalized_independence_number,
    instance_params,
    make_field,
    margins,
    mat_rank,
    min_rank,
    no_side_info,
    odd_cycle_complement,
    pentagon,
    example1,
    receiver_margin,
    verify_ecic,
    verify_ecic_direct,
    verify_ic,
)
from ecic.errors import BudgetExceeded, CapExceeded, LengthMismatch

from helpers import (
    F2,
    F3,
    example1_code,
    pentagon_code,
    random_full_rank_matrix,
    random_instance,
    random_matrix,
)


# ---------------------------------------------------------------------------
# encoding


def test_encode_example1():
    out = encode(example1_code(), FVector(F2, (1, 0, 1)))
    assert out.entries == (0, 1, 0, 1)


def test_encode_zero_and_identity():
    code = pentagon_code()
    assert encode(code, FVector.zero(F2, 5)).is_zero()
    ident = LinearIndexCode(no_side_info(4), F2, FMatrix.identity(F2, 4))
    x = FVector(F2, (1, 0, 1, 1))
    assert encode(ident, x).entries == x.entries


def test_encode_length_mismatch():
    with pytest.raises(LengthMismatch):
        encode(example1_code(), FVector(F2, (1, 0)))


# ---------------------------------------------------------------------------
# margins / verification


def test_example1_margins_and_radius():
    code = example1_code()
    assert margins(code) == (3, 3, 3)
    assert receiver_margin(code, 0) == 3
    assert correction_radius(code) == 1


def test_pentagon_margins_and_radius():
    code = pentagon_code()
    assert receiver_margin(code, 0) >= 5
    assert margins(code) == (5, 5, 5, 5, 5)
    assert correction_radius(code) == 2


def test_identity_margins_no_side_info():
    code = LinearIndexCode(no_side_info(4), F2, FMatrix.identity(F2, 4))
    assert margins(code) == (1, 1, 1, 1)


def test_verify_examples():
    assert verify_ecic(example1_code(), 1).ok
    assert verify_ecic(pentagon_code(), 2).ok
    verdict = verify_ecic(example1_code(), 2)
    assert not verdict.ok
    assert verdict.certificate.entries == (1, 0, 0)
    assert encode(example1_code(), verdict.certificate).weight() <= 4


def test_radius_of_zero_matrix_is_none():
    code = LinearIndexCode(example1(), F2, FMatrix.zero(F2, 3, 4))
    assert correction_radius(code) is None


def test_verify_ic_examples():
    ident = LinearIndexCode(pentagon(), F2, FMatrix.identity(F2, 5))
    assert verify_ic(ident)
    ones_col = FMatrix(F2, tuple((1,) for _ in range(5)), 1)
    assert not verify_ic(LinearIndexCode(pentagon(), F2, ones_col))
    ones_col3 = FMatrix(F2, tuple((1,) for _ in range(3)), 1)
    assert verify_ic(LinearIndexCode(example1(), F2, ones_col3))


def test_verify_ic_is_delta_zero_verification():
    rng = random.Random(31)
    for _ in range(60):
        inst = random_instance(rng, max_messages=4)
        field = F2 if rng.random() < 0.5 else F3
        L = random_matrix(field, inst.num_messages, rng.randint(1, 5), rng)
        code = LinearIndexCode(inst, field, L)
        assert verify_ic(code) == verify_ecic(code, 0).ok


def test_direct_and_margin_routes_agree():
    rng = random.Random(37)
    for _ in range(60):
        inst = random_instance(rng, max_messages=4)
        field = F2 if rng.random() < 0.5 else F3
        L = random_matrix(field, inst.num_messages, rng.randint(1, 5), rng)
        code = LinearIndexCode(inst, field, L)
        for delta in (0, 1, 2):
            assert verify_ecic(code, delta).ok == verify_ecic_direct(code, delta).ok


def test_radius_consistent_with_verify():
    rng = random.Random(41)
    for _ in range(40):
        inst = random_instance(rng, max_messages=4)
        L = random_matrix(F2, inst.num_messages, rng.randint(1, 6), rng)
        code = LinearIndexCode(inst, F2, L)
        radius = correction_radius(code)
        for delta in (0, 1, 2, 3):
            expected = radius is not None and radius >= delta
            assert verify_ecic(code, delta).ok == expected


def test_classical_reduction_full_rank_no_side_info():
    rng = random.Random(43)
    for _ in range(60):
        n = rng.randint(1, 4)
        N = rng.randint(n, 7)
        L = random_full_rank_matrix(F2, n, N, rng)
        code = LinearIndexCode(no_side_info(n), F2, L)
        d = code_min_distance(L)
        for delta in (0, 1, 2):
            assert verify_ecic(code, delta).ok == (d >= 2 * delta + 1)


def test_margin_budget():
    code = LinearIndexCode(no_side_info(5), F2, FMatrix.identity(F2, 5))
    with pytest.raises(BudgetExceeded):
        receiver_margin(code, 0, enum_budget=3)


# ---------------------------------------------------------------------------
# alpha


def test_alpha_examples():
    alpha, witness = generalized_independence_number(pentagon())
    assert alpha == 2
    assert witness == (0, 2)  # 1-based {1, 3}
    assert generalized_independence_number(no_side_info(4))[0] == 4
    assert generalized_independence_number(example1())[0] == 1


def test_alpha_witness_is_generalized_independent():
    from ecic import in_support_family

    for inst in (pentagon(), example1(), odd_cycle_complement(2)):
        _, witness = generalized_independence_number(inst)
        for r in range(1, len(witness) + 1):
            for sub in itertools.combinations(witness, r):
                assert in_support_family(inst, sub)


def test_alpha_cap():
    with pytest.raises(CapExceeded):
        generalized_independence_number(no_side_info(30))


# ---------------------------------------------------------------------------
# min-rank


def test_min_rank_examples():
    assert min_rank(pentagon(), F2).kappa == 3
    assert min_rank(no_side_info(4), F2).kappa == 4
    res = min_rank(example1(), F2)
    assert res.kappa == 1
    assert all(all(v == 1 for v in row) for row in res.witness.rows)


def test_min_rank_witness_validates():
    rng = random.Random(47)
    insts = [pentagon(), example1(), odd_cycle_complement(2)] + [
        random_instance(rng, max_messages=4) for _ in range(15)
    ]
    for inst in insts:
        for field in (F2, F3):
            res = min_rank(inst, field)
            assert mat_rank(res.witness) == res.kappa
            for i in range(inst.num_receivers):
                row = res.witness.row(i)
                assert row.entries[inst.demands[i]] == 1
                allowed = set(inst.side_info[i]) | {inst.demands[i]}
                assert row.supported_on(allowed)


def _brute_min_rank(inst, field):
    """Independent oracle: enumerate every completion outright."""
    best = None
    spaces = [sorted(inst.side_info[i]) for i in range(inst.num_receivers)]
    for choice in itertools.product(
        *(itertools.product(field.elements(), repeat=len(s)) for s in spaces)
    ):
        rows = []
        for i, vals in enumerate(choice):
            row = [0] * inst.num_messages
            row[inst.demands[i]] = 1
            for pos, v in zip(spaces[i], vals):
                row[pos] = v
            rows.append(tuple(row))
        r = mat_rank(FMatrix(field, tuple(rows), inst.num_messages))
        best = r if best is None else min(best, r)
    return best


def test_min_rank_is_minimum_by_exhaustion():
    rng = random.Random(53)
    for _ in range(8):
        inst = random_instance(rng, max_receivers=3, max_messages=3)
        for field in (F2, F3):
            assert min_rank(inst, field).kappa == _brute_min_rank(inst, field)
    for _ in range(6):
        inst = random_instance(rng, max_receivers=4, max_messages=4)
        assert min_rank(inst, F2).kappa == _brute_min_rank(inst, F2)


def test_min_rank_gf7_witness_validates():
    f7 = make_field(7)
    inst = odd_cycle_complement(2)
    res = min_rank(inst, f7)
    assert res.kappa == 3
    assert mat_rank(res.witness) == 3
    for i in range(inst.num_receivers):
        row = res.witness.row(i)
        assert row.entries[inst.demands[i]] == 1
        assert row.supported_on(set(inst.side_info[i]) | {inst.demands[i]})


def test_min_rank_budget():
    inst = odd_cycle_complement(4)  # 9 messages, 6 side infos each
    with pytest.raises(BudgetExceeded):
        min_rank(inst, make_field(8), budget_exponent=30)


def test_min_rank_degenerate_no_receivers():
    from ecic import IcsiInstance

    inst = IcsiInstance(0, 3, (), ())
    res = min_rank(inst, F2)
    assert res.kappa == 0 and res.witness.nrows == 0
    assert generalized_independence_number(inst) == (0, ())


def test_alpha_never_exceeds_kappa():
    rng = random.Random(59)
    insts = [pentagon(), example1(), odd_cycle_complement(2), no_side_info(3)] + [
        random_instance(rng, max_messages=4) for _ in range(15)
    ]
    for inst in insts:
        alpha, _ = generalized_independence_number(inst)
        for field in (F2, F3):
            assert alpha <= min_rank(inst, field).kappa <= inst.num_messages


def test_instance_params_bundle():
    params = instance_params(pentagon(), F2)
    assert (params.alpha, params.kappa) == (2, 3)
    assert params.alpha_witness == (0, 2)
    assert mat_rank(params.kappa_witness) == 3
