from collections import Counter

import pytest

from gl2ext.series import (
    BigradedSeries,
    InsufficientBoundsError,
    TrigradedSeries,
    apply_operator,
    coupling_support_bound,
    f_series,
    fz_series,
    lambda_q_series,
    lambda_series,
)
from gl2ext.tower import enumerate_weight_zero


def test_lambda_series_level_zero_slice_p2():
    s = lambda_series(2, i_max=0, k_max=4)
    assert s.value(0, 0, 0) == 2
    assert s.value(0, 1, 1) == 2
    assert s.value(0, 2, 2) == 1
    assert sum(v for (i, _, _), v in s.dims.items() if i == 0) == 5


def test_lambda_series_level_one_p2():
    s = lambda_series(2, i_max=1, k_max=4)
    # the lone open-strip element sits at coupling 1, homological degree 0
    assert s.value(1, 1, 0) == 1
    # closed-strip elements with one central power land at coupling 2 + |b|
    assert s.value(1, 2, 1) == 2
    assert s.j_support(1) == coupling_support_bound(2, 1)


def test_fz_series_rule():
    fz = fz_series()
    assert fz.value(0, 0) == 1
    assert fz.value(17, 0) == 1
    assert fz.value(3, 2) == 0


def test_apply_field_series_picks_degree_zero_slice():
    delta = BigradedSeries(dims={(0, 0): 3, (0, 2): 4, (1, 1): 5}, j_bound=1, k_bound=3)
    out = apply_operator(f_series(), delta)
    assert out.value(0, 0) == 3
    assert out.value(0, 2) == 4
    assert out.value(0, 1) == 0


def test_apply_with_fz_sums_over_coupling():
    s = lambda_series(2, i_max=0, k_max=4)
    out = apply_operator(s, fz_series(), k_max=4)
    assert [out.value(0, k) for k in range(3)] == [2, 2, 1]


def test_apply_with_flat_operand_sums_rows():
    # an operand that is 1 at every (j, 0) within bounds behaves like the
    # polynomial series: the output row sums the operator over coupling
    gamma = lambda_series(3, i_max=2, k_max=6)
    flat = BigradedSeries(
        dims={(j, 0): 1 for j in range(0, coupling_support_bound(3, 2) + 1)},
        j_bound=coupling_support_bound(3, 2),
        k_bound=6,
    )
    via_rule = apply_operator(gamma, fz_series(), k_max=6)
    via_dims = apply_operator(gamma, flat, k_max=6)
    assert via_rule.support() == via_dims.support()


def test_field_cut_idempotent():
    base = apply_operator(lambda_series(2, i_max=2, k_max=6), fz_series(), k_max=6)
    once = apply_operator(f_series(), base)
    twice = apply_operator(f_series(), once)
    assert once.support() == twice.support()


def test_lambda_q_series_examples():
    assert lambda_q_series(2, 1) == {0: 2, 1: 2, 2: 1}
    assert lambda_q_series(2, 0) == {0: 1}
    assert lambda_q_series(3, 1) == {0: 3, 1: 4, 2: 4, 3: 2, 4: 1}


def test_lambda_q_series_matches_enumeration():
    for p, q in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2)):
        got = lambda_q_series(p, q)
        want = dict(Counter(m.z for m in enumerate_weight_zero(p, q)))
        assert got == want


def test_lambda_q_series_total_consistency():
    assert sum(lambda_q_series(3, 2).values()) == len(enumerate_weight_zero(3, 2))


def test_monotone_stability_under_bigger_bounds():
    small = lambda_q_series(2, 2, k_max=3)
    full = lambda_q_series(2, 2)
    assert small == {k: v for k, v in full.items() if k <= 3}
    # enlarging the operator bounds never changes existing entries
    a = apply_operator(lambda_series(2, i_max=1, k_max=4), fz_series(), k_max=4)
    b = apply_operator(lambda_series(2, i_max=3, k_max=8), fz_series(), k_max=8)
    for (i, k), v in a.support().items():
        assert b.value(i, k) == v


def test_insufficient_bounds_errors():
    gamma = lambda_series(2, i_max=1, k_max=4)
    narrow = BigradedSeries(dims={(0, 0): 1}, j_bound=0, k_bound=4)
    with pytest.raises(InsufficientBoundsError):
        apply_operator(gamma, narrow, k_max=4)
    truncated = lambda_series(2, i_max=1, j_max=1, k_max=4)
    assert not truncated.j_complete
    with pytest.raises(InsufficientBoundsError):
        apply_operator(truncated, fz_series(), k_max=4)
    with pytest.raises(InsufficientBoundsError):
        apply_operator(f_series(), fz_series())  # unbounded rule needs k_max
    with pytest.raises(InsufficientBoundsError):
        BigradedSeries(dims={}, j_bound=2, k_bound=2).value(3, 0)


def test_trigraded_series_drops_zero_entries():
    s = TrigradedSeries({(0, 0, 0): 1, (1, 1, 1): 0}, 1, 1, 1)
    assert (1, 1, 1) not in s.dims


def test_printed_variant_changes_the_series():
    assert lambda_q_series(3, 2, variant="printed") != lambda_q_series(3, 2)
