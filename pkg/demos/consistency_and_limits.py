#!/usr/bin/env python3
"""Run the consistency checks and compare limiting slopes to probes.

The lemma suite compares bracketed quantities at their conservative
ends, so every reported violation would be real. The two conjecture
reports are observational trends, printed for inspection only. The
limits section checks the closed-form slopes at d -> 0 and d -> 1
against finite differences of the actual bounds.
"""

from delcap import (bound_c2_star, bound_c3, build_default_table,
                    conjecture1_report, conjecture2_report, limit_large_d_c2,
                    limit_small_d_c2, limit_small_d_c3, verify_lemma_suite)


def main():
    table = build_default_table()

    print("== lemma suite ==")
    for report in verify_lemma_suite(table):
        print(report.summary())

    print()
    print("== observed trends (not certified) ==")
    print(conjecture2_report(table).summary())
    for report in conjecture1_report(0.5, table, max_c4_level=5):
        print(report.summary())

    print()
    print("== limiting slopes vs finite differences ==")
    h = 1e-4
    slope = limit_small_d_c3(10, table)
    probe = (1.0 - bound_c3(10, h, table)) / h
    print(f"c3 small-d slope, L=10:   {slope:.6f}  probe {probe:.6f}")

    slope = limit_small_d_c2(4, table)
    probe = (1.0 - bound_c2_star(4, table.l_max, h, table)) / h
    print(f"c2* small-d slope, R=4:   {slope:.6f}  probe {probe:.6f}")

    ratio = limit_large_d_c2(8, table.l_max, table)
    d = 0.9999
    probe = bound_c2_star(8, table.l_max, d, table) / (1.0 - d)
    print(f"c2* large-d ratio, R=8:   {ratio:.6f}  probe {probe:.6f}")


if __name__ == "__main__":
    main()
