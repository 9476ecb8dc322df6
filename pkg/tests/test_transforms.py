"""Kernel construction and multiplex/demultiplex round trips."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ftnlab.exceptions import ParameterError, ShapeError
from ftnlab.icimodel import correlation_matrix
from ftnlab.transforms import TransformKind, demultiplex, make_plan, multiplex


class TestMakePlan:
    def test_orthonormal_dct_case(self):
        plan = make_plan(TransformKind.FRCT, 4, 1.0)
        assert_allclose(plan.kernel.T @ plan.kernel, np.eye(4), atol=1e-12)

    def test_cosine_kernel_entry_n2(self):
        # Direct scalar evaluation of the kernel formula at n=0, k=1:
        # sqrt(2/2) * W_1 * cos(0.8*pi*1 / 4)
        plan = make_plan(TransformKind.FRCT, 2, 0.8)
        expected = math.sqrt(2.0 / 2.0) * 1.0 * math.cos(0.8 * math.pi * 1.0 / 4.0)
        assert plan.kernel[0, 1] == pytest.approx(expected, abs=1e-15)
        assert plan.kernel[0, 1] == pytest.approx(0.8090169943749475, abs=1e-12)
        # k=0 column carries the 1/sqrt(2) weight.
        assert plan.kernel[0, 0] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-15)

    @pytest.mark.parametrize("n,alpha", [(0, 0.8), (1, 0.8), (-3, 0.8)])
    def test_bad_size(self, n, alpha):
        with pytest.raises(ParameterError, match="n"):
            make_plan(TransformKind.FRCT, n, alpha)

    @pytest.mark.parametrize("alpha", [0.0, -0.1, 1.3])
    def test_bad_alpha(self, alpha):
        with pytest.raises(ParameterError, match="alpha"):
            make_plan(TransformKind.FRCT, 8, alpha)

    def test_deterministic(self):
        a = make_plan(TransformKind.FRHT, 64, 0.45).kernel
        b = make_plan(TransformKind.FRHT, 64, 0.45).kernel
        assert np.array_equal(a, b)

    def test_kernel_is_readonly(self):
        plan = make_plan(TransformKind.FRCT, 8, 0.9)
        with pytest.raises(ValueError):
            plan.kernel[0, 0] = 0.0


class TestMultiplex:
    def test_dc_subcarrier_is_constant(self):
        n = 16
        plan = make_plan(TransformKind.FRCT, n, 1.0)
        e0 = np.zeros(n)
        e0[0] = 1.0
        assert_allclose(multiplex(plan, e0), np.full(n, 1.0 / math.sqrt(n)), atol=1e-14)

    def test_orthogonal_round_trip(self):
        plan = make_plan(TransformKind.FRCT, 4, 1.0)
        v = np.array([0.3, -1.2, 0.7, 2.5])
        assert_allclose(demultiplex(plan, multiplex(plan, v)), v, atol=1e-12)

    def test_matches_naive_double_loop(self):
        n, alpha = 8, 0.8
        plan = make_plan(TransformKind.FRCT, n, alpha)
        v = np.ones(n)
        naive = np.zeros(n)
        for samp in range(n):
            acc = 0.0
            for k in range(n):
                w = 1.0 / math.sqrt(2.0) if k == 0 else 1.0
                acc += w * v[k] * math.cos(math.pi * alpha * (2 * samp + 1) * k / (2 * n))
            naive[samp] = math.sqrt(2.0 / n) * acc
        assert_allclose(multiplex(plan, v), naive, atol=1e-13)

    def test_shape_mismatch(self):
        plan = make_plan(TransformKind.FRCT, 8, 0.9)
        with pytest.raises(ShapeError):
            multiplex(plan, np.zeros(7))
        with pytest.raises(ShapeError):
            demultiplex(plan, np.zeros(9))

    def test_zero_input(self):
        plan = make_plan(TransformKind.FRHT, 8, 0.4)
        assert np.all(demultiplex(plan, np.zeros(8)) == 0.0)

    def test_linearity(self):
        plan = make_plan(TransformKind.FRCT, 16, 0.7)
        rng = np.random.default_rng(3)
        u, v = rng.normal(size=16), rng.normal(size=16)
        a, b = 1.7, -0.4
        assert_allclose(
            multiplex(plan, a * u + b * v),
            a * multiplex(plan, u) + b * multiplex(plan, v),
            atol=1e-12,
        )

    def test_batch_rows_match_single(self):
        plan = make_plan(TransformKind.FRCT, 8, 0.8)
        rng = np.random.default_rng(4)
        rows = rng.normal(size=(5, 8))
        batch = multiplex(plan, rows)
        for i in range(5):
            assert_allclose(batch[i], multiplex(plan, rows[i]), atol=0)


class TestInvariants:
    @pytest.mark.parametrize("kind", [TransformKind.FRCT, TransformKind.FRHT])
    @pytest.mark.parametrize("n", [2, 4, 8, 16, 32, 64, 128, 256])
    def test_orthogonality_at_alpha_one(self, kind, n):
        plan = make_plan(kind, n, 1.0)
        dev = np.max(np.abs(plan.kernel.T @ plan.kernel - np.eye(n)))
        assert dev < 1e-10

    def test_parseval_at_alpha_one(self):
        rng = np.random.default_rng(5)
        for kind in TransformKind:
            plan = make_plan(kind, 64, 1.0)
            v = rng.normal(size=64)
            x = multiplex(plan, v)
            assert np.sum(x * x) == pytest.approx(np.sum(v * v), rel=1e-10)

    @pytest.mark.parametrize("kind", [TransformKind.FRCT, TransformKind.FRHT])
    @pytest.mark.parametrize("alpha", [1.0, 0.9, 0.8, 0.7])
    def test_round_trip_composes_to_correlation_matrix(self, kind, alpha):
        n = 32
        plan = make_plan(kind, n, alpha)
        c = correlation_matrix(kind, n, alpha)
        rng = np.random.default_rng(6)
        v = rng.normal(size=n)
        assert_allclose(
            demultiplex(plan, multiplex(plan, v)), c.entries @ v, atol=1e-10
        )

    def test_determinism_bit_identical(self):
        plan = make_plan(TransformKind.FRCT, 32, 0.8)
        v = np.linspace(-1, 1, 32)
        assert np.array_equal(multiplex(plan, v), multiplex(plan, v))
