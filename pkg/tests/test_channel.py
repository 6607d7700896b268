import math
from fractions import Fraction

import numpy as np
import pytest

from delcap import (BitString, ParameterError, ResourceLimitError,
                    binomial_weight, build_binomial_deletion_channel,
                    build_fixed_deletion_channel, dump_channel,
                    embedding_count)
from delcap.channel import _subsequence_counts

from reference_values import FIXED_3_2_FRACTIONS


def exact_row_by_bits(channel, input_bits):
    i = int(input_bits, 2) if input_bits else 0
    return {channel.output_label(j).bits(): fr
            for j, fr in channel.row_exact(i)}


class TestFixedChannel:
    def test_3_2_matches_published_fractions(self):
        channel = build_fixed_deletion_channel(3, 2)
        channel.validate()
        seen = {}
        for bits in ("000", "001", "010", "011", "100", "101", "110", "111"):
            for out_bits, fr in exact_row_by_bits(channel, bits).items():
                seen[(bits, out_bits)] = fr
        assert seen == FIXED_3_2_FRACTIONS

    def test_rows_are_exact_embedding_ratios(self):
        L, R = 5, 3
        channel = build_fixed_deletion_channel(L, R)
        den = math.comb(L, L - R)
        for i in range(1 << L):
            a = BitString(i, L)
            row = dict(channel.row_exact(i))
            for j in range(1 << R):
                count = embedding_count(a, BitString(j, R))
                if count:
                    assert row[j] == Fraction(count, den)
                else:
                    assert j not in row

    def test_dense_and_pattern_builders_agree(self):
        for L, R in ((4, 2), (6, 3), (7, 1), (5, 5), (6, 0)):
            dense = _subsequence_counts(L, R, method="dense")
            patterns = _subsequence_counts(L, R, method="patterns")
            for a, b in zip(dense, patterns):
                assert np.array_equal(a, b)

    def test_every_survivor_length_matches_r(self):
        L = 6
        for R in range(L + 1):
            channel = build_fixed_deletion_channel(L, R)
            channel.validate()
            assert channel.output_count == 1 << R
            assert all(int(x) == R for x in channel.output_lengths)

    def test_complement_commutes(self):
        channel = build_fixed_deletion_channel(5, 2)
        for i in range(32):
            row = {channel.output_label(j).bits(): fr
                   for j, fr in channel.row_exact(i)}
            comp = BitString(i, 5).complement()
            comp_row = {channel.output_label(j).complement().bits(): fr
                        for j, fr in channel.row_exact(comp.value)}
            assert row == comp_row

    def test_validate_passes_across_sizes(self):
        for L, R in ((1, 0), (1, 1), (3, 2), (8, 4), (9, 8)):
            build_fixed_deletion_channel(L, R).validate()

    def test_resource_refusals(self):
        with pytest.raises(ResourceLimitError):
            build_fixed_deletion_channel(23, 11)
        with pytest.raises(ResourceLimitError):
            build_fixed_deletion_channel(12, 6, entry_budget=1000)
        with pytest.raises(ParameterError):
            build_fixed_deletion_channel(3, 4)


class TestBinomialChannel:
    def test_l2_closed_form_rows(self):
        d = 0.3
        channel = build_binomial_deletion_channel(2, d)
        channel.validate()

        def row(bits):
            return {channel.output_label(j).bits(): p
                    for j, p in channel.row(int(bits, 2))}

        assert row("00") == pytest.approx(
            {"": d * d, "0": 2 * d * (1 - d), "00": (1 - d) ** 2})
        assert row("01") == pytest.approx(
            {"": d * d, "0": d * (1 - d), "1": d * (1 - d),
             "01": (1 - d) ** 2})

    def test_transition_form(self):
        # P(y|x) = embedding_count(x, y) d^(L-|y|) (1-d)^|y|
        L, d = 4, 0.37
        channel = build_binomial_deletion_channel(L, d)
        for i in range(1 << L):
            a = BitString(i, L)
            row = {j: p for j, p in channel.row(i)}
            assert sum(row.values()) == pytest.approx(1.0, abs=1e-12)
            for j, p in row.items():
                b = channel.output_label(j)
                expected = (embedding_count(a, b)
                            * d ** (L - b.length) * (1 - d) ** b.length)
                assert p == pytest.approx(expected, rel=1e-12)

    def test_length_marginal(self):
        L, d = 5, 0.21
        channel = build_binomial_deletion_channel(L, d)
        marginal = np.zeros(L + 1)
        for j, p in channel.row(9):
            marginal[int(channel.output_lengths[j])] += p
        for R in range(L + 1):
            assert marginal[R] == pytest.approx(
                binomial_weight(L, R, d).value, abs=1e-12)

    def test_skeleton_reused_across_d(self):
        a = build_binomial_deletion_channel(3, 0.2)
        b = build_binomial_deletion_channel(3, 0.7)
        assert a.indices is b.indices
        assert np.array_equal(a.indptr, b.indptr)
        assert not np.array_equal(a.probs, b.probs)

    def test_rejections(self):
        with pytest.raises(ParameterError):
            build_binomial_deletion_channel(0, 0.5)
        with pytest.raises(ParameterError):
            build_binomial_deletion_channel(3, 0.0)
        with pytest.raises(ParameterError):
            build_binomial_deletion_channel(3, 1.0)
        with pytest.raises(ResourceLimitError):
            build_binomial_deletion_channel(23, 0.5)
        with pytest.raises(ResourceLimitError):
            build_binomial_deletion_channel(10, 0.5, entry_budget=100)


class TestDump:
    def test_fixed_dump_format(self, tmp_path):
        path = tmp_path / "fixed.txt"
        dump_channel(build_fixed_deletion_channel(2, 1), path)
        lines = path.read_text().splitlines()
        assert "00 0 2 2" in lines
        assert "01 0 1 2" in lines and "01 1 1 2" in lines

    def test_binomial_dump_uses_dash_for_empty(self, tmp_path):
        path = tmp_path / "binom.txt"
        dump_channel(build_binomial_deletion_channel(1, 0.25), path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("0 - ")
        assert any(line.startswith("1 - ") for line in lines)
