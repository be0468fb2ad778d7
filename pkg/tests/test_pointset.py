"""
Tests for point-set enumeration, sampling and the generator stream.
"""

import logging
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from pcg_uniformity.config import Limits
from pcg_uniformity.errors import CapacityError, UsageError
from pcg_uniformity.functions import build_collection, parse_collection
from pcg_uniformity.mring import reduce
from pcg_uniformity.parallel import map_reduce, partition_range
from pcg_uniformity.pointset import (
    SplitMix64,
    coordinate_matrix,
    domain_values,
    enumerate_points,
    enumerate_with_x,
    pcg_stream,
    phi_n,
)
from pcg_uniformity.types import (
    EXHAUSTIVE,
    EnumerationMode,
    IntPolynomial,
    RingSpec,
    SuffixCondition,
)


def fractions(points):
    return sorted(p.as_fractions() for p in points)


class TestPhi:
    """The map x -> (f_1(x), ..., f_s(x)) / m^n."""

    def test_identity(self):
        p = phi_n(reduce(5, RingSpec(2, 3)), build_collection("monomials", s=1))
        assert p.as_fractions() == (Fraction(5, 8),)

    def test_square(self):
        p = phi_n(reduce(3, RingSpec(2, 3)), build_collection("monomials", s=2))
        assert p.as_fractions() == (Fraction(3, 8), Fraction(1, 8))

    def test_explicit(self):
        p = phi_n(reduce(3, RingSpec(2, 4)), parse_collection("0,1;1,0,1"))
        assert p.numerators() == (3, 10)

    def test_representation_equivalence(self):
        spec = RingSpec(3, 4)
        f = IntPolynomial((7, -2, 5))
        c = parse_collection("7,-2,5")
        for x in range(spec.modulus):
            p = phi_n(reduce(x, spec), c)
            assert p.as_fractions()[0] == Fraction(f(x) % spec.modulus, spec.modulus)


class TestEnumerate:
    """Exhaustive and sampled enumeration."""

    def test_full_residue_set(self):
        pts = list(enumerate_points(RingSpec(2, 2), build_collection("monomials", s=1)))
        assert fractions(pts) == [(Fraction(i, 4),) for i in range(4)]

    def test_odd_residues(self):
        pts = list(enumerate_points(
            RingSpec(2, 2), build_collection("monomials", s=1), SuffixCondition(1, 1)))
        assert fractions(pts) == [(Fraction(1, 4),), (Fraction(3, 4),)]

    @pytest.mark.parametrize("m,n,d", [(2, 6, 1), (3, 4, 2), (5, 3, 3)])
    def test_conditioned_cardinality(self, m, n, d):
        spec = RingSpec(m, n)
        c = build_collection("monomials", s=1)
        for beta in range(m ** d):
            xs = [x for x, _ in enumerate_with_x(spec, c, SuffixCondition(d, beta))]
            assert len(xs) == m ** (n - d)
            assert all(x % m ** d == beta for x in xs)
            assert xs == sorted(xs)

    def test_sampled_count_and_denominators(self):
        spec = RingSpec(2, 12)
        pts = list(enumerate_points(spec, build_collection("monomials", s=2),
                                    mode=EnumerationMode.sampled(1000, 42)))
        assert len(pts) == 1000
        assert all(p.spec == spec for p in pts)

    def test_sampled_replay(self):
        spec = RingSpec(3, 9)
        mode = EnumerationMode.sampled(200, 7)
        a = domain_values(spec, SuffixCondition(2, 4), mode, 0, 200)
        b = domain_values(spec, SuffixCondition(2, 4), mode, 0, 200)
        assert a == b
        assert all(x % 9 == 4 for x in a)

    def test_sampled_ranges_are_independent(self):
        spec = RingSpec(2, 20)
        mode = EnumerationMode.sampled(100, 3)
        whole = domain_values(spec, None, mode, 0, 100)
        assert domain_values(spec, None, mode, 40, 100) == whole[40:]

    def test_different_seeds_differ(self):
        spec = RingSpec(2, 30)
        a = domain_values(spec, None, EnumerationMode.sampled(50, 1), 0, 50)
        b = domain_values(spec, None, EnumerationMode.sampled(50, 2), 0, 50)
        assert a != b

    def test_sampled_mode_needs_count(self):
        with pytest.raises(UsageError):
            EnumerationMode.sampled(0, 1)

    def test_suffix_longer_than_n(self):
        with pytest.raises(UsageError):
            enumerate_points(RingSpec(2, 3), build_collection("monomials", s=1), SuffixCondition(4, 0))

    def test_capacity_refused(self):
        limits = Limits(exhaustive_warn_log2=8, exhaustive_max_log2=10)
        with pytest.raises(CapacityError):
            enumerate_points(RingSpec(2, 11), build_collection("monomials", s=1), limits=limits)

    def test_capacity_warning(self, caplog):
        limits = Limits(exhaustive_warn_log2=4, exhaustive_max_log2=10)
        with caplog.at_level(logging.WARNING, logger="pcg_uniformity.pointset"):
            enumerate_points(RingSpec(2, 6), build_collection("monomials", s=1), limits=limits)
        assert "above 2^4" in caplog.text

    def test_suffix_lifts_capacity(self):
        limits = Limits(exhaustive_warn_log2=8, exhaustive_max_log2=10)
        pts = enumerate_points(RingSpec(2, 12), build_collection("monomials", s=1),
                               SuffixCondition(2, 1), limits=limits)
        assert sum(1 for _ in pts) == 1024

    def test_coordinate_matrix(self):
        mat = coordinate_matrix(RingSpec(2, 3), build_collection("monomials", s=2))
        assert mat.shape == (8, 2)
        assert [tuple(int(v) for v in row) for row in mat][3] == (3, 1)

    def test_large_modulus_uses_exact_integers(self):
        spec = RingSpec(10, 30)
        mode = EnumerationMode.sampled(20, 5)
        mat = coordinate_matrix(spec, build_collection("monomials", s=2), mode=mode)
        xs = domain_values(spec, None, mode, 0, 20)
        assert [int(v) for v in mat[:, 1]] == [x * x % spec.modulus for x in xs]


class TestSplitMix64:
    """The sampling mixer."""

    def test_reference_outputs(self):
        # SplitMix64 seeded with 0
        g = SplitMix64(0)
        assert g.word(0) == 0xE220A8397B1DCDAF
        assert g.word(1) == 0x6E789E6AA1B965F4

    def test_below_range(self):
        g = SplitMix64(99)
        for i in range(500):
            assert 0 <= g.below(i, 37) < 37

    def test_below_wide_bound(self):
        g = SplitMix64(1)
        bound = 3 ** 100
        values = {g.below(i, bound) for i in range(50)}
        assert all(0 <= v < bound for v in values)
        assert len(values) == 50

    def test_bound_one(self):
        assert SplitMix64(5).below(0, 1) == 0


class TestPcgStream:
    """Forward generator stream."""

    def test_quadratic(self):
        spec = RingSpec(2, 3)
        out = pcg_stream(IntPolynomial((1, 1, 1)), reduce(0, spec), 4)
        assert [p.as_fraction() for p in out] == [Fraction(0), Fraction(1, 8), Fraction(3, 8), Fraction(5, 8)]

    def test_empty(self):
        assert pcg_stream(IntPolynomial((1, 1, 1)), reduce(0, RingSpec(2, 3)), 0) == []

    def test_fixed_point(self):
        spec = RingSpec(2, 5)
        out = pcg_stream(IntPolynomial((0, 1)), reduce(2, spec), 3)
        assert [str(p) for p in out] == ["2/32"] * 3

    def test_negative_count(self):
        with pytest.raises(UsageError):
            pcg_stream(IntPolynomial((0, 1)), reduce(2, RingSpec(2, 5)), -1)


class TestParallel:
    """Range partitioning and fan-out."""

    def test_partition_covers(self):
        parts = partition_range(3, 20, 4)
        assert parts[0][0] == 3 and parts[-1][1] == 20
        assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))
        sizes = [hi - lo for lo, hi in parts]
        assert max(sizes) - min(sizes) <= 1

    def test_partition_more_parts_than_items(self):
        assert partition_range(0, 2, 5) == [(0, 1), (1, 2)]

    def test_partition_empty(self):
        assert partition_range(5, 5, 3) == []

    def test_map_reduce_serial(self):
        assert map_reduce(abs, [-1, -2, 3], 1) == [1, 2, 3]
        assert map_reduce(abs, [-1, -2, 3], 1, combine=lambda a, b: a + b) == 6

    def test_map_reduce_rejects_zero_threads(self):
        with pytest.raises(UsageError):
            map_reduce(abs, [1], 0)
