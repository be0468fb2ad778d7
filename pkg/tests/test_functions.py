"""
Tests for polynomials, collections and matrix transforms.
"""

import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from pcg_uniformity.errors import DimensionError, ParseError, UsageError
from pcg_uniformity.functions import (
    build_collection,
    coefficient_matrix,
    compose,
    determinant,
    eval_int,
    eval_mod,
    evaluate_collection,
    evaluate_collection_array,
    expand_iterate,
    format_collection,
    format_polynomial,
    is_nondegenerate,
    iterate_mod,
    parse_collection,
    parse_matrix,
    parse_polynomial,
    subcollection,
    to_polynomial,
    transform_affine,
    triangular_completion,
)
from pcg_uniformity.mring import reduce, truncate
from pcg_uniformity.types import (
    Collection,
    Explicit,
    IntMatrix,
    IntPolynomial,
    Iterate,
    Monomial,
    RingSpec,
)


def P(*coeffs):
    return IntPolynomial(coeffs)


class TestIntPolynomial:
    """Normalization and text format."""

    def test_trailing_zeros_stripped(self):
        f = P(1, 2, 0, 0)
        assert f.coeffs == (1, 2)
        assert f.degree == 1

    def test_zero_polynomial(self):
        assert P(0, 0).coeffs == (0,)
        assert P(0).degree == 0

    def test_parse_and_format(self):
        f = parse_polynomial("1,-1,0,3")
        assert f.coeffs == (1, -1, 0, 3)
        assert format_polynomial(f) == "1,-1,0,3"

    @pytest.mark.parametrize("text", ["", "1,,2", "1,x", " "])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            parse_polynomial(text)


class TestEvaluation:
    """Horner evaluation inside [m^n]."""

    def test_eval_x2_plus_1(self):
        spec = RingSpec(2, 4)
        assert eval_mod(P(1, 0, 1), reduce(3, spec)).value == 10

    def test_identity(self):
        spec = RingSpec(7, 3)
        x = reduce(200, spec)
        assert eval_mod(P(0, 1), x) == x

    def test_base_three(self):
        assert eval_mod(P(1, 1, 1), reduce(2, RingSpec(3, 2))).value == 7

    def test_iterate_twice(self):
        assert iterate_mod(P(1, 0, 1), reduce(3, RingSpec(2, 4)), 2).value == 5

    def test_iterate_zero_is_identity(self):
        x = reduce(9, RingSpec(2, 4))
        assert iterate_mod(P(1, 0, 1), x, 0) == x

    def test_iterate_one_is_eval(self):
        x = reduce(9, RingSpec(3, 4))
        f = P(2, 5, 1)
        assert iterate_mod(f, x, 1) == eval_mod(f, x)

    def test_negative_iteration_rejected(self):
        with pytest.raises(UsageError):
            iterate_mod(P(1, 1), reduce(1, RingSpec(2, 2)), -1)

    def test_oracle_random(self):
        rng = random.Random(5)
        for _ in range(1000):
            m = rng.choice([2, 3, 10])
            n = rng.randint(1, 30)
            spec = RingSpec(m, n)
            f = IntPolynomial(tuple(rng.randint(-50, 50) for _ in range(rng.randint(1, 6))))
            x = rng.randrange(spec.modulus)
            assert eval_mod(f, reduce(x, spec)).value == f(x) % spec.modulus

    def test_compatibility(self):
        rng = random.Random(6)
        for _ in range(300):
            m = rng.choice([2, 3, 5])
            n = rng.randint(2, 12)
            n2 = rng.randint(1, n)
            f = IntPolynomial(tuple(rng.randint(-9, 9) for _ in range(4)))
            x = reduce(rng.randrange(m ** n), RingSpec(m, n))
            assert truncate(eval_mod(f, x), n2) == eval_mod(f, truncate(x, n2))

    def test_iteration_composes(self):
        f = P(1, 1, 1)
        x = reduce(5, RingSpec(2, 10))
        assert iterate_mod(f, x, 5) == iterate_mod(f, iterate_mod(f, x, 2), 3)

    def test_symbolic_iterate_agrees(self):
        f = P(1, 1, 1)
        spec = RingSpec(2, 12)
        f3 = expand_iterate(f, 3)
        assert f3.degree == 8
        for x in range(0, spec.modulus, 97):
            assert eval_mod(f3, reduce(x, spec)) == iterate_mod(f, reduce(x, spec), 3)

    def test_compose(self):
        assert compose(P(0, 0, 1), P(1, 1)).coeffs == (1, 2, 1)


class TestCollectionEvaluation:
    """Scalar and vectorized collection evaluation agree."""

    def test_scalar(self):
        c = build_collection("iterations", s=3, base=P(1, 1, 1))
        # 0 -> 1 -> 3
        assert evaluate_collection(c, 0, 8) == (0, 1, 3)

    def test_out_of_order_iterates(self):
        f = P(1, 1, 1)
        c = Collection((Iterate(f, 2), Iterate(f, 0), Iterate(f, 1)))
        assert evaluate_collection(c, 0, 8) == (3, 0, 1)

    def test_array_matches_scalar(self):
        c = Collection((Monomial(3), Iterate(P(1, 1, 1), 2), Explicit(P(-3, 0, 2))))
        modulus = 2 ** 10
        xs = np.arange(modulus, dtype=np.int64)
        cols = evaluate_collection_array(c, xs, modulus)
        for x in range(0, modulus, 31):
            assert tuple(int(col[x]) for col in cols) == evaluate_collection(c, x, modulus)

    def test_object_array_for_large_modulus(self):
        c = build_collection("monomials", s=2)
        modulus = 3 ** 50
        xs = np.array([modulus - 1, 12345678901234567890], dtype=object)
        cols = evaluate_collection_array(c, xs, modulus)
        assert cols[1][0] == pow(modulus - 1, 2, modulus)
        assert cols[1][1] == pow(12345678901234567890, 2, modulus)


class TestBuildCollection:
    """Standard collections and their text format."""

    def test_monomials(self):
        c = build_collection("monomials", s=3)
        assert c.entries == (Monomial(1), Monomial(2), Monomial(3))

    def test_derivative(self):
        c = build_collection("derivative", s=3)
        assert [to_polynomial(e).coeffs for e in c] == [(0, 2), (0, 0, 3)]

    def test_derivative_needs_two(self):
        with pytest.raises(UsageError):
            build_collection("derivative", s=1)

    def test_iterations(self):
        f = P(1, 0, 1)
        c = build_collection("iterations", s=3, base=f)
        assert c.entries == (Iterate(f, 0), Iterate(f, 1), Iterate(f, 2))

    def test_parse_forms(self):
        assert parse_collection("monomials:2").s == 2
        assert parse_collection("derivative:4").s == 3
        c = parse_collection("iterations:1,1,1:2")
        assert c.entries[1] == Iterate(P(1, 1, 1), 1)
        e = parse_collection("0,1;1,0,1")
        assert [to_polynomial(x).coeffs for x in e] == [(0, 1), (1, 0, 1)]

    @pytest.mark.parametrize("text", ["", "monomials:x", "iterations:2", "derivative:1", "1;;2"])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            parse_collection(text)

    def test_format_collection(self):
        c = build_collection("iterations", s=2, base=P(1, 1, 1))
        assert format_collection(c) == "0,1;1,1,1"

    def test_subcollection(self):
        c = build_collection("monomials", s=4)
        assert subcollection(c, [1, 3]).entries == (Monomial(2), Monomial(4))
        with pytest.raises(DimensionError):
            subcollection(c, [2, 4])
        with pytest.raises(UsageError):
            subcollection(c, [2, 1])

    def test_triangular_completion(self):
        completed, positions = triangular_completion(P(1, 1, 1), 3)
        # degrees of x, f, f^(2) are 1, 2, 4; x^3 fills the gap
        assert completed.s == 4
        assert positions == (0, 1, 3)
        assert completed.entries[2] == Monomial(3)
        A, _ = coefficient_matrix(completed, 4)
        assert all(A.rows[i][j] == 0 for i in range(4) for j in range(i + 1, 4))
        assert is_nondegenerate(A)


class TestMatrices:
    """Determinants and affine transforms."""

    def test_identity_nondegenerate(self):
        assert is_nondegenerate(IntMatrix.identity(3))

    def test_proportional_rows(self):
        assert not is_nondegenerate(IntMatrix(((1, 2), (2, 4))))

    def test_unimodular(self):
        assert determinant(IntMatrix(((2, 3), (1, 2)))) == 1

    def test_determinant_needs_pivoting(self):
        assert determinant(IntMatrix(((0, 1, 2), (1, 0, 3), (4, -3, 8)))) == -2

    def test_determinant_random(self):
        rng = random.Random(9)
        for _ in range(100):
            rows = tuple(tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3))
            (a, b, c), (d, e, f), (g, h, i) = rows
            expected = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
            assert determinant(IntMatrix(rows)) == expected

    def test_transform_identity(self):
        c = build_collection("monomials", s=2)
        out = transform_affine(IntMatrix.identity(2), (0, 0), c)
        assert [to_polynomial(e) for e in out] == [to_polynomial(e) for e in c]

    def test_transform_mix(self):
        c = build_collection("monomials", s=2)
        out = transform_affine(IntMatrix(((1, 0), (1, 1))), (0, 0), c)
        assert [to_polynomial(e).coeffs for e in out] == [(0, 1), (0, 1, 1)]

    def test_transform_shift(self):
        out = transform_affine(IntMatrix.identity(1), (5,), build_collection("monomials", s=1))
        assert to_polynomial(out.entries[0]).coeffs == (5, 1)

    def test_transform_evaluates_consistently(self):
        rng = random.Random(10)
        c = build_collection("iterations", s=3, base=P(1, 1, 1))
        A = IntMatrix(((1, -2, 0), (3, 1, 1), (0, 0, -1)))
        z = (4, -1, 7)
        out = transform_affine(A, z, c)
        modulus = 2 ** 16
        for _ in range(50):
            x = rng.randrange(modulus)
            base = evaluate_collection(c, x, modulus)
            expected = tuple((v + zi) % modulus for v, zi in zip(A.apply(base), z))
            assert evaluate_collection(out, x, modulus) == expected

    def test_transform_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            transform_affine(IntMatrix.identity(2), (0, 0), build_collection("monomials", s=3))

    def test_parse_matrix(self):
        assert parse_matrix("1,0;1,1").rows == ((1, 0), (1, 1))
        with pytest.raises(ParseError):
            parse_matrix("1,0;1")
