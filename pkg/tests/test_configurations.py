"""Configuration-space primitives and model parameter validation."""

import math

import pytest

from pspinlab import (
    INFINITE_ORDER,
    ModelKind,
    ModelParameters,
    SpinConfiguration,
    enumerate_configurations,
    flip,
    hamming_distance,
    overlap,
)


def spins_of(bits, n):
    return [1 if (bits >> j) & 1 else -1 for j in range(n)]


class TestSpinConfiguration:
    def test_spin_values_match_bits(self):
        c = SpinConfiguration(bits=0b0110, n=4)
        assert [c.spin(j) for j in range(4)] == spins_of(0b0110, 4)

    def test_flip_toggles_one_bit(self):
        c = SpinConfiguration(bits=0b0110, n=4)
        d = c.flip(0)
        assert d.bits == 0b0111
        assert d.flip(0) == c

    def test_str_uses_plus_minus(self):
        assert str(SpinConfiguration(bits=0b01, n=2)) == "+-"

    def test_spins_round_trip(self):
        for n in range(1, 9):
            for bits in (0, (1 << n) - 1, 0b1010101 & ((1 << n) - 1)):
                c = SpinConfiguration(bits=bits, n=n)
                assert SpinConfiguration.from_spins(c.to_spins()) == c

    def test_rejects_out_of_range_bits(self):
        with pytest.raises(ValueError):
            SpinConfiguration(bits=4, n=2)
        with pytest.raises(ValueError):
            SpinConfiguration(bits=-1, n=2)

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            SpinConfiguration(bits=0, n=0)
        with pytest.raises(ValueError):
            SpinConfiguration(bits=0, n=31)


class TestHammingGeometry:
    def test_distance_counts_differing_bits(self):
        a = SpinConfiguration(bits=0b1100, n=4)
        b = SpinConfiguration(bits=0b1010, n=4)
        assert hamming_distance(a, b) == 2
        assert hamming_distance(a, a) == 0

    def test_overlap_matches_spin_dot_product(self):
        for abits in range(16):
            for bbits in range(16):
                a = SpinConfiguration(bits=abits, n=4)
                b = SpinConfiguration(bits=bbits, n=4)
                dot = sum(x * y for x, y in zip(a.to_spins(), b.to_spins()))
                assert overlap(a, b) == pytest.approx(dot / 4)

    def test_overlap_distance_relation(self):
        a = SpinConfiguration(bits=0b00111, n=5)
        b = SpinConfiguration(bits=0b10110, n=5)
        d = hamming_distance(a, b)
        assert overlap(a, b) == pytest.approx(1 - 2 * d / 5)

    def test_flip_function_matches_method(self):
        a = SpinConfiguration(bits=0b0101, n=4)
        assert flip(a, 3) == a.flip(3)

    def test_mixed_dimension_rejected(self):
        a = SpinConfiguration(bits=0, n=3)
        b = SpinConfiguration(bits=0, n=4)
        with pytest.raises(ValueError):
            hamming_distance(a, b)


def test_enumerate_configurations_order_and_count():
    out = list(enumerate_configurations(3))
    assert len(out) == 8
    assert [c.bits for c in out] == list(range(8))
    assert all(c.n == 3 for c in out)


class TestModelParameters:
    def test_sk_constructor(self):
        params = ModelParameters.sk(8, 3, gamma=0.5, beta=1.0)
        assert params.kind is ModelKind.SK
        assert params.order == 3

    def test_rem_requires_infinite_order(self):
        params = ModelParameters.rem(8)
        assert params.p == INFINITE_ORDER
        with pytest.raises(ValueError):
            ModelParameters(n=8, p=3, kind=ModelKind.REM)
        with pytest.raises(ValueError):
            ModelParameters(n=8, p=INFINITE_ORDER, kind=ModelKind.SK)

    def test_rem_order_property_raises(self):
        with pytest.raises(ValueError):
            ModelParameters.rem(8).order

    def test_spherical_needs_p_at_most_n(self):
        ModelParameters.spherical(6, 6)
        with pytest.raises(ValueError):
            ModelParameters.spherical(6, 7)

    def test_rejects_non_integer_order(self):
        with pytest.raises(ValueError):
            ModelParameters(n=8, p=2.5, kind=ModelKind.SK)
        with pytest.raises(ValueError):
            ModelParameters(n=8, p=0, kind=ModelKind.SK)

    def test_rejects_negative_weights(self):
        with pytest.raises(ValueError):
            ModelParameters.sk(8, 2, gamma=-1.0)
        with pytest.raises(ValueError):
            ModelParameters.sk(8, 2, beta=-0.1)

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            ModelParameters.sk(0, 2)
        with pytest.raises(ValueError):
            ModelParameters.sk(31, 2)

    def test_infinite_order_constant(self):
        assert INFINITE_ORDER == math.inf
