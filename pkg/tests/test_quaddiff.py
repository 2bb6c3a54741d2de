import cmath
import math

import numpy as np
import pytest

from freepoles.errors import PoleEvaluation, SeedAtSingularity
from freepoles.geometry import INF
from freepoles.quaddiff import QuadDiff, critical_points, eval_q, sample_trajectories

SQRT2 = math.sqrt(2)


def test_eval_examples():
    q1 = QuadDiff(1, 2, 1.0)
    assert abs(eval_q(q1, 1j / math.sqrt(3))) < 1e-14
    with pytest.raises(PoleEvaluation):
        eval_q(q1, 1.0)
    with pytest.raises(PoleEvaluation):
        eval_q(q1, 0.0)
    q2 = QuadDiff(2, 2)
    assert abs(eval_q(q2, 1j * (SQRT2 - 1))) < 1e-13


def test_eval_matches_polynomial_oracle(rng):
    """Compare against numpy polynomial evaluation of numerator and denominator."""
    for kind, n, g in ((1, 3, 0.5), (2, 4, 1.0), (1, 5, 1.0)):
        q = QuadDiff(kind, n, g)
        num = np.zeros(2 * n + 1)
        if kind == 1:
            num[n], num[0] = n * n - g, g
        else:
            num[2 * n], num[n], num[0] = 1, 2 * n * n - 2, 1
        den = np.polynomial.polynomial.polymul([0, 0, 1], np.polynomial.polynomial.polypow(
            np.r_[-1, np.zeros(n - 1), 1], 2))
        for w in rng.normal(size=20) + 1j * rng.normal(size=20):
            ref = -np.polynomial.polynomial.polyval(w, num) / np.polynomial.polynomial.polyval(w, den)
            assert eval_q(q, w) == pytest.approx(ref, rel=1e-12)


def test_critical_points_examples():
    z = sorted(critical_points(QuadDiff(1, 2, 1.0)).finite_zeros(), key=lambda c: c.imag)
    assert abs(z[0] + 1j / math.sqrt(3)) < 1e-12 and abs(z[1] - 1j / math.sqrt(3)) < 1e-12
    z = sorted(critical_points(QuadDiff(2, 2)).finite_zeros(), key=lambda c: c.imag)
    expected = [-1j * (SQRT2 + 1), -1j * (SQRT2 - 1), 1j * (SQRT2 - 1), 1j * (SQRT2 + 1)]
    for a, b in zip(z, expected):
        assert abs(a - b) < 1e-12
    z = critical_points(QuadDiff(1, 3, 0.5)).finite_zeros()
    assert np.allclose(np.abs(z), (0.5 / 8.5) ** (1 / 3), rtol=1e-14)
    args = sorted(np.mod(np.angle(z), 2 * math.pi))
    assert args == pytest.approx([math.pi / 3, math.pi, 5 * math.pi / 3], abs=1e-12)


def test_zeros_match_numpy_roots():
    for n in (2, 3, 5):
        num = np.zeros(2 * n + 1)
        num[2 * n], num[n], num[0] = 1, 2 * n * n - 2, 1
        ref = np.roots(num[::-1])
        got = critical_points(QuadDiff(2, n)).finite_zeros()
        ref = ref[np.lexsort((np.round(ref.real, 6), np.round(ref.imag, 6)))]
        got = got[np.lexsort((np.round(got.real, 6), np.round(got.imag, 6)))]
        assert np.allclose(got, ref, atol=1e-8)


@pytest.mark.parametrize("kind,n,g", [(1, 2, 1.0), (1, 3, 0.5), (1, 6, 0.25), (2, 2, 1.0), (2, 5, 1.0)])
def test_degree_relation_and_resubstitution(kind, n, g):
    q = QuadDiff(kind, n, g)
    cs = critical_points(q)
    assert cs.degree() == -4
    assert sum(m for _, m in cs.zeros if _ is not INF) == (n if kind == 1 else 2 * n)
    for z in cs.finite_zeros():
        scale = q.numerator_scale(z) / abs(q.denominator(z))
        assert abs(eval_q(q, z)) < 1e-10 * scale


@pytest.mark.parametrize("kind,n,g", [(1, 2, 1.0), (1, 4, 0.3), (2, 3, 1.0)])
def test_rotation_invariance(kind, n, g, rng):
    q = QuadDiff(kind, n, g)
    eps = cmath.exp(2j * math.pi / n)
    for w in rng.normal(size=50) + 1j * rng.normal(size=50):
        assert eval_q(q, eps * w) * eps ** 2 == pytest.approx(eval_q(q, w), rel=1e-12)


def test_seed_at_zero_rejected():
    q = QuadDiff(1, 2, 1.0)
    with pytest.raises(SeedAtSingularity):
        sample_trajectories(q, [1j / math.sqrt(3)], 1e-2, 1.0)


def test_trajectory_is_horizontal():
    q = QuadDiff(1, 3, 0.5)
    (line,) = sample_trajectories(q, [0.5 + 0.3j], 1e-3, 0.5)
    dw = np.diff(line)
    mid = 0.5 * (line[1:] + line[:-1])
    vals = np.array([eval_q(q, w) for w in mid]) * dw ** 2
    assert np.all(np.abs(vals.imag) < 1e-4 * np.abs(vals))
    assert np.all(vals.real > 0)


def test_conjugation_symmetry():
    for q in (QuadDiff(1, 2, 1.0), QuadDiff(2, 3), QuadDiff(1, 4, 0.5)):
        seeds = [0.4 + 0.7j, 1.3 + 0.2j, -0.6 + 0.25j]
        fwd = sample_trajectories(q, seeds, 1e-2, 3.0)
        back = sample_trajectories(q, [s.conjugate() for s in seeds], 1e-2, 3.0)
        for a, b in zip(fwd, back):
            assert len(a) == len(b)
            assert np.max(np.abs(np.conj(a) - b)) < 1e-8


def test_trajectory_around_origin_stays_near_circle():
    # near the double pole at 0, Q ~ -g/w^2 so trajectories are small circles
    q = QuadDiff(1, 3, 1.0)
    (line,) = sample_trajectories(q, [0.05], 1e-4, 0.3)
    assert np.max(np.abs(np.abs(line) - 0.05)) < 2e-3
