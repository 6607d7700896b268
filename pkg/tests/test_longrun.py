"""Deep-block reproduction jobs: hours of solver time and tens of
gigabytes at the far end, so everything here hides behind --run-long.

The quick gate in test_acceptance.py only checks that these jobs exist;
their values repeat the frozen desk-scale references at full depth.
"""

import pytest

from delcap import (CoefficientTable, alpha_tilde, bound_c4, f_value,
                    limit_large_d_c2, limit_small_d_c3, lower_bound,
                    populate_table)

from reference_values import (ALPHA_TILDE_DIAGONAL, C4_L17_D050,
                              LARGE_D_RATIO_R8_L17, LOWER_L17,
                              SMALL_D_SLOPE_L22)

pytestmark = pytest.mark.longrun

DEEP_L_CAP = 22
DEEP_BUDGET = 1 << 31


@pytest.fixture(scope="module")
def deep_table():
    table = CoefficientTable(l_max=12, l_cap=DEEP_L_CAP,
                             entry_budget=DEEP_BUDGET)
    return populate_table(table, diagonal_l_max=22)


def test_single_deletion_gap_row_deep(deep_table):
    for L in range(15, 23):
        reference = ALPHA_TILDE_DIAGONAL[L]
        lo = alpha_tilde(L, 1, deep_table, "lower")
        hi = alpha_tilde(L, 1, deep_table, "upper")
        assert lo <= reference + 0.01
        assert hi >= reference - 0.01


def test_small_d_slope_deep(deep_table):
    lo = alpha_tilde(22, 1, deep_table, "lower") + 1.0
    hi = alpha_tilde(22, 1, deep_table, "upper") + 1.0
    assert lo <= SMALL_D_SLOPE_L22 + 0.01
    assert hi >= SMALL_D_SLOPE_L22 - 0.01
    assert limit_small_d_c3(22, deep_table) == lo


def test_c4_reproduction_at_midpoint():
    value = bound_c4(17, 0.5, l_cap=DEEP_L_CAP, entry_budget=DEEP_BUDGET)
    assert value == pytest.approx(C4_L17_D050, abs=1.5e-3)


def test_lower_bound_reproduction():
    iud = lower_bound(17, 0.10, "iud", l_cap=DEEP_L_CAP,
                      entry_budget=DEEP_BUDGET)
    assert iud == pytest.approx(LOWER_L17[(0.10, "iud")], abs=5e-3)
    optimized = lower_bound(17, 0.01, "optimized", l_cap=DEEP_L_CAP,
                            entry_budget=DEEP_BUDGET)
    assert optimized == pytest.approx(LOWER_L17[(0.01, "optimized")], abs=5e-3)


def test_large_d_ratio_deep():
    # one off-diagonal deep cell; solved on demand rather than via the
    # full level-17 grid, which would dwarf everything else here
    table = CoefficientTable(l_max=17, l_cap=DEEP_L_CAP,
                             entry_budget=DEEP_BUDGET)
    f_value(17, 8, table, "lower")
    ratio = limit_large_d_c2(8, 17, table)
    assert ratio == pytest.approx(LARGE_D_RATIO_R8_L17, abs=0.01)
