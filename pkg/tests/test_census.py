"""Closed-form counts against their brute-force enumeration oracles."""

import json

import pytest

from unicayley import (
    BudgetExceededError,
    CensusRecord,
    derangements_formula,
    derangements_oracle,
    gl_order,
    intersection_count_formula,
    intersection_count_oracle,
    make_field,
    rank1_intersection_formula,
    rank2_case_decomposition_oracle,
    rank2_case_formulas,
    rank2_intersection_formula,
    srg_parameters_n2,
)

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9]

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)


def test_gl_order_examples():
    assert gl_order(1, 2) == 1
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48
    assert gl_order(3, 2) == 168


def test_gl_order_matches_enumeration():
    # the rank-0 shift degenerates to a plain invertibility census
    assert intersection_count_oracle(0, 2, F2) == 6
    assert intersection_count_oracle(0, 2, F3) == 48
    assert intersection_count_oracle(0, 2, F4) == gl_order(2, 4)


def test_gl_order_rejects_bad_arguments():
    with pytest.raises(ValueError):
        gl_order(0, 2)
    with pytest.raises(ValueError):
        gl_order(2, 6)
    with pytest.raises(ValueError):
        gl_order(2, 1)


def test_derangements_formula_base_cases():
    # e_0 = 1 is forced: it makes e_1 = q - 2, the number of field elements
    # distinct from both 0 and 1, which the oracle confirms below.
    for q in PRIME_POWERS:
        assert derangements_formula(0, q) == 1
        assert derangements_formula(1, q) == q - 2
    assert derangements_formula(1, 3) == 1
    assert derangements_formula(2, 2) == 2


@pytest.mark.parametrize(
    "n,field",
    [(1, F2), (1, F3), (2, F2), (2, F3), (2, F4), (3, F2)],
)
def test_derangements_formula_matches_oracle(n, field):
    assert derangements_formula(n, field.q) == derangements_oracle(n, field)


def test_derangements_formula_rejects_negative_n():
    with pytest.raises(ValueError):
        derangements_formula(-1, 2)


def test_rank1_formula_examples():
    for q in PRIME_POWERS:
        assert rank1_intersection_formula(1, q) == q - 2
    assert rank1_intersection_formula(2, 2) == 2
    assert rank1_intersection_formula(3, 2) == 72
    assert rank1_intersection_formula(3, 3) == 17 * 24 * 18


@pytest.mark.parametrize("n,field", [(1, F3), (2, F2), (2, F3), (3, F2)])
def test_rank1_formula_matches_oracle(n, field):
    assert rank1_intersection_formula(n, field.q) == intersection_count_oracle(
        1, n, field
    )


def test_rank2_formula_examples():
    assert rank2_intersection_formula(3, 2) == 56
    assert rank2_intersection_formula(3, 3) == 6534
    with pytest.raises(ValueError):
        rank2_intersection_formula(1, 2)


def test_rank2_collapses_to_derangements_at_n2():
    # at n = 2 the rank-2 shift is the identity matrix
    for q in PRIME_POWERS:
        assert rank2_intersection_formula(2, q) == derangements_formula(2, q)


@pytest.mark.parametrize("n,field", [(2, F2), (2, F3), (3, F2), (3, F3)])
def test_rank2_formula_matches_oracle(n, field):
    assert rank2_intersection_formula(n, field.q) == intersection_count_oracle(
        2, n, field
    )


def test_case_formulas_example():
    assert rank2_case_formulas(3, 2) == (32, 0, 24)
    with pytest.raises(ValueError):
        rank2_case_formulas(2, 2)


@pytest.mark.parametrize("field", [F2, F3])
def test_case_decomposition_matches_formulas_and_total(field):
    cases = rank2_case_decomposition_oracle(3, field)
    assert cases == rank2_case_formulas(3, field.q)
    assert sum(cases) == intersection_count_oracle(2, 3, field)


def test_case_decomposition_rejects_small_n():
    with pytest.raises(ValueError):
        rank2_case_decomposition_oracle(2, F2)


def test_intersection_formula_dispatch():
    assert intersection_count_formula(0, 3, 2) == gl_order(3, 2)
    assert intersection_count_formula(3, 3, 2) == derangements_formula(3, 2)
    assert intersection_count_formula(1, 3, 2) == 72
    assert intersection_count_formula(2, 3, 2) == 56
    with pytest.raises(ValueError, match="closed form"):
        intersection_count_formula(3, 4, 2)
    with pytest.raises(ValueError):
        intersection_count_formula(5, 4, 2)


def test_intersection_oracle_full_rank_is_derangement_count():
    assert intersection_count_oracle(2, 2, F3) == derangements_oracle(2, F3)


def test_derangement_oracle_agrees_with_matrix_predicate():
    from unicayley import enumerate_matrices

    count = sum(m.is_linear_derangement() for m in enumerate_matrices(2, F3))
    assert count == derangements_oracle(2, F3) == derangements_formula(2, 3)


@pytest.mark.parametrize("q,field_args", [(5, (5,)), (7, (7,)), (8, (2, 3)), (9, (3, 2))])
def test_wider_field_sweep_n2(q, field_args):
    field = make_field(*field_args)
    assert rank1_intersection_formula(2, q) == intersection_count_oracle(1, 2, field)
    assert derangements_formula(2, q) == derangements_oracle(2, field)
    assert gl_order(2, q) == intersection_count_oracle(0, 2, field)


def test_intersection_oracle_rejects_bad_rank():
    with pytest.raises(ValueError):
        intersection_count_oracle(3, 2, F2)


def test_srg_parameters_examples():
    assert srg_parameters_n2(2) == (16, 6, 2, 2)
    # oracle arbitration of the q = 3 tuple: lambda is the derangement count,
    # mu the rank-1 intersection count
    assert srg_parameters_n2(3) == (81, 48, derangements_oracle(2, F3),
                                    intersection_count_oracle(1, 2, F3))
    assert srg_parameters_n2(3) == (81, 48, 27, 30)


def test_srg_parameter_k_is_gl_order():
    for q in PRIME_POWERS:
        assert srg_parameters_n2(q)[1] == gl_order(2, q)


def test_rank1_rank2_counts_never_coincide_above_n2():
    # exact integer comparison across the whole grid
    for n in range(3, 7):
        for q in PRIME_POWERS:
            assert rank1_intersection_formula(n, q) != rank2_intersection_formula(n, q)


def test_recurrence_regression():
    for q in PRIME_POWERS:
        for n in range(1, 7):
            expected = (
                derangements_formula(n - 1, q) * (q ** n - 1) * q ** (n - 1)
                + (-1) ** n * q ** (n * (n - 1) // 2)
            )
            assert derangements_formula(n, q) == expected


def test_counts_are_exact_big_integers():
    # far beyond 64-bit range; exactness is the point
    big = gl_order(6, 9)
    assert big % (9 ** 6 - 1) == 0
    assert big > 2 ** 64


def test_oracle_budget_refusal():
    with pytest.raises(BudgetExceededError) as err:
        derangements_oracle(2, F3, budget=10)
    assert err.value.required == 81
    with pytest.raises(BudgetExceededError):
        intersection_count_oracle(1, 3, F3, budget=100)


def test_oracle_thread_count_does_not_change_counts():
    assert intersection_count_oracle(1, 2, F3, threads=1) == intersection_count_oracle(
        1, 2, F3, threads=4
    )
    assert rank2_case_decomposition_oracle(3, F2, threads=1) == (
        rank2_case_decomposition_oracle(3, F2, threads=3)
    )


def test_census_record_json():
    rec = CensusRecord(2, 3, 1, "formula", 30)
    doc = rec.to_json_dict()
    assert doc == {"n": 2, "q": 3, "rank": 1, "method": "formula", "count": "30"}
    assert json.loads(json.dumps(doc)) == doc
