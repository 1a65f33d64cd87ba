"""Montgomery multiplication against modular-arithmetic oracles."""

import random

import pytest

import revalu.montgomery as mg
from revalu import (
    MontParams,
    build_mont_datapath,
    from_mont,
    mont_exp,
    mont_mult_trace,
    mont_mult_word,
    run_mont_datapath,
    to_mont,
)


def oracle_product(x, y, m, n):
    # Direct definition: x * y * R^-1 mod m with R = 2^n.
    return (x * y * pow(1 << n, -1, m)) % m


class TestParams:
    def test_even_modulus_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            MontParams(6, 3)

    def test_modulus_must_fit(self):
        with pytest.raises(ValueError, match="fit"):
            MontParams(9, 3)

    def test_minimal_scan_length(self):
        assert MontParams.for_modulus(7).n == 3
        assert MontParams.for_modulus(9).n == 4

    def test_register_width(self):
        assert MontParams(7, 3).register_width == 5

    def test_operand_range_enforced(self):
        with pytest.raises(ValueError, match="out of range"):
            mont_mult_word(7, 1, MontParams(7, 3))


class TestWordLevel:
    def test_three_times_five_mod_seven(self):
        assert mont_mult_word(3, 5, MontParams(7, 3)) == 1

    def test_documented_running_totals(self):
        trace = mont_mult_trace(3, 5, MontParams(7, 3))
        observed = [
            (c.total_after_multiplicand, c.total_after_parity_clear, c.s + c.c)
            for c in trace.cycles
        ]
        assert observed == [(5, 12, 6), (11, 18, 9), (9, 16, 8)]
        assert trace.product == 1

    def test_zero_annihilates(self):
        params = MontParams(11, 4)
        for y in range(11):
            assert mont_mult_word(0, y, params) == 0

    def test_four_times_six_mod_nine(self):
        assert mont_mult_word(4, 6, MontParams(9, 4)) == 6

    @pytest.mark.parametrize("modulus", [5, 7, 9, 11, 13, 15])
    def test_exhaustive_small_moduli(self, modulus):
        params = MontParams.for_modulus(modulus)
        for x in range(modulus):
            for y in range(modulus):
                assert mont_mult_word(x, y, params) == oracle_product(
                    x, y, modulus, params.n
                )

    def test_result_always_reduced(self):
        params = MontParams.for_modulus(13)
        for x in range(13):
            for y in range(13):
                assert 0 <= mont_mult_word(x, y, params) < 13


class TestLoopInvariants:
    def test_running_sum_stays_below_twice_modulus(self):
        params = MontParams.for_modulus(13)
        for x in range(13):
            for y in range(13):
                for record in mont_mult_trace(x, y, params).cycles:
                    assert record.s + record.c < 2 * 13

    def test_parity_cleared_before_every_halving(self):
        params = MontParams.for_modulus(15)
        rng = random.Random(3)
        for _ in range(100):
            x, y = rng.randrange(15), rng.randrange(15)
            for record in mont_mult_trace(x, y, params).cycles:
                assert record.total_after_parity_clear % 2 == 0

    def test_partial_product_congruence(self):
        # After iteration i the scaled running sum is congruent to the
        # partial product over the low i+1 multiplier bits.
        params = MontParams.for_modulus(11)
        for x in range(11):
            for y in range(11):
                for record in mont_mult_trace(x, y, params).cycles:
                    shift = record.index + 1
                    lhs = (record.s + record.c) << shift
                    rhs = (x % (1 << shift)) * y
                    assert (lhs - rhs) % 11 == 0


class TestDomainConversion:
    def test_to_mont_of_one(self):
        assert to_mont(1, MontParams(7, 3)) == 1  # 8 mod 7

    def test_to_mont_of_zero(self):
        assert to_mont(0, MontParams(7, 3)) == 0

    def test_round_trip_all_residues(self):
        params = MontParams(7, 3)
        for x in range(7):
            assert from_mont(to_mont(x, params), params) == x

    def test_round_trip_wider(self):
        params = MontParams.for_modulus(1023)
        for x in (0, 1, 511, 1022):
            assert from_mont(to_mont(x, params), params) == x


class TestDatapath:
    def test_cores_validate(self):
        datapath = build_mont_datapath(MontParams.for_modulus(11))
        assert datapath.stage1.validate().ok
        assert datapath.stage2.validate().ok
        assert datapath.final_adder.validate().ok

    def test_matches_word_level_exhaustively_m7(self):
        params = MontParams(7, 3)
        datapath = build_mont_datapath(params)
        for x in range(7):
            for y in range(7):
                assert run_mont_datapath(datapath, x, y) == mont_mult_word(
                    x, y, params
                )

    def test_cycle_by_cycle_trace_match(self):
        params = MontParams(7, 3)
        datapath = build_mont_datapath(params)
        datapath.run(3, 5)
        word = mont_mult_trace(3, 5, params)
        for gate_cycle, word_cycle in zip(datapath.last_run.cycles, word.cycles):
            assert gate_cycle == word_cycle

    def test_zero_operand(self):
        datapath = build_mont_datapath(MontParams(7, 3))
        assert datapath.run(0, 6) == 0

    def test_random_wide_cases(self):
        params = MontParams.for_modulus(0xB00B)  # odd 16-bit modulus
        datapath = build_mont_datapath(params)
        rng = random.Random(9)
        for _ in range(10):
            x = rng.randrange(params.modulus)
            y = rng.randrange(params.modulus)
            assert datapath.run(x, y) == mont_mult_word(x, y, params)

    def test_snapshot_count_is_cycles_plus_one(self):
        datapath = build_mont_datapath(MontParams(7, 3))
        datapath.run(3, 5)
        assert len(datapath.last_run.snapshots) == 4

    def test_cost_is_sum_of_component_reports(self):
        datapath = build_mont_datapath(MontParams.for_modulus(13))
        components = datapath.component_costs()
        total = datapath.cost_report()
        assert total.gate_count == sum(r.gate_count for r in components.values())
        assert total.garbage_count == sum(r.garbage_count for r in components.values())
        assert total.constant_input_count == sum(
            r.constant_input_count for r in components.values()
        )
        assert total.unit_delay == sum(r.unit_delay for r in components.values())

    def test_operand_range_enforced(self):
        datapath = build_mont_datapath(MontParams(7, 3))
        with pytest.raises(ValueError, match="out of range"):
            datapath.run(7, 0)

    def test_run_record_metadata(self):
        datapath = build_mont_datapath(MontParams(7, 3))
        datapath.run(2, 4)
        assert datapath.last_run.metadata == {"x": 2, "y": 4, "m": 7, "n": 3}


class TestExponentiation:
    def test_five_cubed_mod_seven(self):
        assert mont_exp(5, 3, 7) == 6

    def test_zero_exponent(self):
        assert mont_exp(5, 0, 7) == 1

    def test_exhaustive_small(self):
        for modulus in range(3, 32, 2):
            for a in range(modulus):
                for b in range(8):
                    assert mont_exp(a, b, modulus) == pow(a, b, modulus)

    def test_random_32_bit(self):
        rng = random.Random(17)
        for _ in range(50):
            modulus = rng.randrange(3, 1 << 32) | 1
            a = rng.randrange(modulus)
            b = rng.randrange(1 << 32)
            assert mont_exp(a, b, modulus) == pow(a, b, modulus)

    def test_even_modulus_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            mont_exp(2, 3, 8)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            mont_exp(2, -1, 7)

    def test_product_call_pattern(self, monkeypatch):
        # One unconditional product per exponent bit, one extra per set
        # bit, and one for the final domain exit.
        calls = []
        real = mg.mont_mult_word

        def counting(x, y, params):
            calls.append((x, y))
            return real(x, y, params)

        monkeypatch.setattr(mg, "mont_mult_word", counting)
        b = 0b1011
        mg.mont_exp(5, b, 13)
        assert len(calls) == b.bit_length() + bin(b).count("1") + 1
