import re

import pytest

from delcap import (CoefficientTable, LemmaReport, ParameterError, TableEntry,
                    binary_entropy, conjecture2_report, populate_table,
                    verify_lemma, verify_lemma_suite)
from delcap.lemmas import LEMMA_IDS
from delcap.tables import SOURCE_BAA


def small_table(l_max=5, **kwargs):
    return populate_table(CoefficientTable(l_max=l_max), **kwargs)


class TestBinaryEntropy:
    def test_known_values(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.11) == pytest.approx(0.5, abs=5e-4)
        assert binary_entropy(0.3) == binary_entropy(0.7)

    def test_rejections(self):
        with pytest.raises(ParameterError):
            binary_entropy(-0.01)
        with pytest.raises(ParameterError):
            binary_entropy(1.01)


class TestSuite:
    def test_clean_on_small_grid(self):
        reports = verify_lemma_suite(small_table())
        assert [r.lemma_id for r in reports] == list(LEMMA_IDS)
        for report in reports:
            assert report.violations == []
            assert report.checked_instances
            assert report.min_slack >= -1e-9

    def test_clean_on_default_table(self, default_table):
        reports = verify_lemma_suite(default_table)
        assert all(not r.violations for r in reports)
        by_id = {r.lemma_id: r for r in reports}
        # full grid to 12 plus the single-deletion diagonal to 14
        assert len(by_id["L1"].checked_instances) == 84
        assert by_id["L1"].skipped == 21
        assert by_id["L5"].skipped == 0

    def test_diagonal_extension_skips_unresolved_cells(self):
        table = populate_table(CoefficientTable(l_max=4), diagonal_l_max=6)
        reports = {r.lemma_id: r for r in verify_lemma_suite(table)}
        assert reports["L1"].skipped > 0
        assert reports["L3"].skipped > 0
        assert all(not r.violations for r in reports.values())

    def test_two_part_checks_label_their_parts(self, default_table):
        for lemma_id, parts in (("L8", {"ratio_lower", "additive_upper"}),
                                ("L9", {"step_lower", "step_upper"})):
            report = verify_lemma(lemma_id, default_table)
            seen = {inst.parameters["part"]
                    for inst in report.checked_instances}
            assert seen == parts


class TestViolationDetection:
    def tampered(self):
        # a gap that shrinks with block length breaks the monotonicity
        # checks; certified sides make the measurement unambiguous
        table = small_table()
        table.entries[(5, 2)] = TableEntry(2.0, 2.0, 0.0, SOURCE_BAA)
        return table

    def test_flagged(self):
        report = verify_lemma("L2", self.tampered())
        assert report.violations
        worst = min(report.violations, key=lambda inst: inst.slack)
        assert worst.parameters == {"L": 4, "R": 2}
        assert worst.slack < 0.0
        assert report.min_slack == worst.slack

    def test_tolerance_gates_the_alarm(self):
        table = self.tampered()
        assert verify_lemma("L2", table, combined_tolerance=10.0).violations == []
        assert verify_lemma("L2", table, combined_tolerance=0.0).violations

    def test_rejections(self):
        table = small_table(l_max=2)
        with pytest.raises(ParameterError):
            verify_lemma("L10", table)
        with pytest.raises(ParameterError):
            verify_lemma("L1", table, combined_tolerance=-1.0)


class TestReports:
    def test_summary_line(self):
        report = verify_lemma("L7", small_table())
        assert re.fullmatch(
            r"lemma=L7 instances=\d+ violations=0 min_slack=-?\d.*",
            report.summary())

    def test_empty_report_has_no_min_slack(self):
        report = LemmaReport("L1")
        assert report.min_slack is None
        assert "min_slack=None" in report.summary()

    def test_slack_is_right_minus_left(self):
        report = verify_lemma("L1", small_table(l_max=3))
        inst = report.checked_instances[0]
        assert inst.slack == inst.right_side - inst.left_side


class TestConjecture2:
    def test_observed_on_default_table(self, default_table):
        report = conjecture2_report(default_table)
        assert report.lemma_id == "conjecture2"
        assert report.checked_instances
        assert report.violations == []
        mids = [inst.left_side for inst in report.checked_instances]
        assert mids == sorted(mids)

    def test_midpoints(self):
        table = small_table()
        report = conjecture2_report(table)
        inst = report.checked_instances[-1]
        L = inst.parameters["L"]
        entry = table.entries[(L, L - 1)]
        mid = (L - 1) - (entry.f_lower + entry.f_upper) / 2.0
        assert inst.left_side == pytest.approx(mid, abs=1e-12)
