"""Hinge-blend calculators: pinned examples, bounds, and verification sweeps."""

import math

import numpy as np
import pytest

from alexkit.comparison import (
    AlternatingConfig,
    HingeConfig,
    alexandrov_lemma_check,
    kappa_bar_alternating,
    kappa_bar_multi,
    kappa_bar_two,
    kappa_star_extension,
    verify_alexandrov,
    verify_alternating,
    verify_extension,
    verify_weighted_multi,
    verify_weighted_pair,
)
from alexkit.errors import GeometryError, InverseRangeError
from alexkit.trig import angle_from_sides, f, f_inverse, model_side


# ---------------------------------------------------------------------------
# two-curvature blend


def test_kappa_bar_two_degenerate_far_segment():
    assert kappa_bar_two(1.0, 0.3, 0.0, 2.0, -5.0) == pytest.approx(2.0, abs=1e-9)


def test_kappa_bar_two_equal_curvatures():
    assert kappa_bar_two(1.0, 0.2, 0.4, 0.7, 0.7) == 0.7


def test_kappa_bar_two_bisection_oracle():
    # f_1(kbar) = (3 f_1(1) + f_1(-1)) / 4 for b = d
    y = (3.0 * f(1.0, 1.0) + f(1.0, -1.0)) / 4.0
    expected = f_inverse(1.0, y)
    got = kappa_bar_two(1.0, 0.005, 0.005, 1.0, -1.0)
    assert got == pytest.approx(expected, abs=1e-10)


def test_kappa_bar_two_remark_bounds():
    rng = np.random.default_rng(0)
    for _ in range(400):
        a = rng.uniform(0.5, 2.0)
        k1, k2 = rng.uniform(-2.0, 2.0, 2)
        b, d = rng.uniform(1e-4, 0.5, 2)
        kbar = kappa_bar_two(a, b, d, k1, k2)
        s = b + d
        weighted = ((b * b + 2 * b * d) * k1 + d * d * k2) / (s * s)
        floor = min(k1, (b * b * k1 + d * d * k2) / (b * b + d * d))
        assert kbar >= weighted - 1e-9
        assert weighted >= floor - 1e-12


def test_kappa_bar_two_monotone_in_each_curvature():
    grid = np.linspace(-2.0, 2.0, 9)
    for k2 in (-1.0, 0.5):
        vals = [kappa_bar_two(1.0, 0.2, 0.3, k1, k2) for k1 in grid]
        assert all(b >= a - 1e-10 for a, b in zip(vals, vals[1:]))
    for k1 in (-1.0, 0.5):
        vals = [kappa_bar_two(1.0, 0.2, 0.3, k1, k2) for k2 in grid]
        assert all(b >= a - 1e-10 for a, b in zip(vals, vals[1:]))


def test_kappa_bar_two_rejects_bad_lengths():
    with pytest.raises(GeometryError):
        kappa_bar_two(1.0, 0.0, 0.0, 1.0, 0.0)
    with pytest.raises(GeometryError):
        kappa_bar_two(1.0, -0.1, 0.2, 1.0, 0.0)


# ---------------------------------------------------------------------------
# multi-segment blend


def test_kappa_bar_multi_single_segment():
    kf, kl = kappa_bar_multi(HingeConfig(base=1.0, segments=((0.5, 0.8),)))
    assert kf == 0.8
    assert kl == pytest.approx(0.8, abs=1e-15)


def test_kappa_bar_multi_equal_curvatures():
    cfg = HingeConfig(base=1.0, segments=((0.1, -0.4), (0.2, -0.4), (0.05, -0.4)))
    kf, kl = kappa_bar_multi(cfg)
    assert kf == -0.4
    assert kl == pytest.approx(-0.4, abs=1e-12)


def test_kappa_bar_multi_three_segment_oracle():
    lengths = (0.01, 0.02, 0.01)
    kappas = (1.0, 0.0, -1.0)
    cfg = HingeConfig(base=1.0, segments=tuple(zip(lengths, kappas)))
    kf, kl = kappa_bar_multi(cfg)
    # independent restatement of both published forms
    c1, c2, c3 = lengths
    total = c1 + c2 + c3
    w1 = c1 * c1 + 2 * c1 * (c2 + c3)
    w2 = c2 * c2 + 2 * c2 * c3
    w3 = c3 * c3
    lower = (w1 * kappas[0] + w2 * kappas[1] + w3 * kappas[2]) / total ** 2
    y = (w1 * f(1.0, 1.0) + w2 * f(1.0, 0.0) + w3 * f(1.0, -1.0)) / total ** 2
    assert kl == pytest.approx(lower, abs=1e-13)
    assert kf == pytest.approx(f_inverse(1.0, y), abs=1e-10)
    assert kf >= kl - 1e-9


def test_kappa_bar_multi_two_segments_match_pair_form():
    rng = np.random.default_rng(1)
    for _ in range(100):
        a = rng.uniform(0.5, 2.0)
        b, d = rng.uniform(1e-3, 0.3, 2)
        k1, k2 = rng.uniform(-2.0, 2.0, 2)
        cfg = HingeConfig(base=a, segments=((b, k1), (d, k2)))
        kf, _ = kappa_bar_multi(cfg)
        assert kf == pytest.approx(kappa_bar_two(a, b, d, k1, k2), abs=1e-10)


# ---------------------------------------------------------------------------
# alternating blend


def test_alternating_direct_substitution():
    cfg = AlternatingConfig(base=1.0, blocks=((0.1, 0.1),), kappa=0.0, kappa_star=-4.0)
    assert kappa_bar_alternating(cfg) == pytest.approx(-3.0, abs=1e-12)
    cfg = AlternatingConfig(base=1.0, blocks=((0.2, 0.3),), kappa=2.0, kappa_star=2.0)
    assert kappa_bar_alternating(cfg) == pytest.approx(2.0, abs=1e-12)
    # good fraction 0.9 of the total
    cfg = AlternatingConfig(
        base=1.0, blocks=((0.45, 0.05), (0.45, 0.05)), kappa=1.0, kappa_star=-1.0
    )
    assert kappa_bar_alternating(cfg) == pytest.approx(0.81 * 2.0 - 1.0, abs=1e-12)


def test_alternating_matches_squared_fraction_form():
    rng = np.random.default_rng(2)
    for _ in range(100):
        nb = int(rng.integers(1, 4))
        blocks = tuple((float(b), float(d)) for b, d in rng.uniform(0.0, 0.3, (nb, 2)))
        if sum(b + d for b, d in blocks) <= 0:
            continue
        kappa = rng.uniform(-2, 2)
        kstar = kappa - rng.uniform(0, 3)
        cfg = AlternatingConfig(base=1.0, blocks=blocks, kappa=kappa, kappa_star=kstar)
        got = kappa_bar_alternating(cfg)
        lam = sum(b for b, _ in blocks) / sum(b + d for b, d in blocks)
        assert got == pytest.approx(lam * lam * (kappa - kstar) + kstar, abs=1e-14)
        assert kstar - 1e-12 <= got <= kappa + 1e-12


def test_alternating_never_exceeds_relaxed_multi_blend():
    # the closed form relaxes the mixed cross terms down to kappa_star, so it
    # sits at or below the plain weighted average of the same chain
    rng = np.random.default_rng(3)
    for _ in range(100):
        nb = int(rng.integers(1, 4))
        kappa = rng.uniform(-2, 2)
        kstar = kappa - rng.uniform(0, 3)
        lengths = rng.uniform(0.01, 0.3, 2 * nb)
        blocks = tuple(
            (float(lengths[2 * j]), float(lengths[2 * j + 1])) for j in range(nb)
        )
        segs = []
        for b, d in blocks:
            segs.append((b, kappa))
            segs.append((d, kstar))
        _, lower = kappa_bar_multi(HingeConfig(base=1.0, segments=tuple(segs)))
        alt = kappa_bar_alternating(
            AlternatingConfig(base=1.0, blocks=blocks, kappa=kappa, kappa_star=kstar)
        )
        assert alt <= lower + 1e-9


def test_alternating_requires_dominance():
    with pytest.raises(GeometryError):
        AlternatingConfig(base=1.0, blocks=((0.1, 0.1),), kappa=-1.0, kappa_star=0.0)


# ---------------------------------------------------------------------------
# extension curvature


def test_extension_identity_at_equal_lengths():
    assert kappa_star_extension(1.0, 1.0, 0.5) == 0.5


def test_extension_sign_forced():
    # f_2(0) = 0.5 < 1 = f_1(0), and f decreases, so the root is negative
    ks = kappa_star_extension(2.0, 1.0, 0.0)
    assert ks < 0.0
    assert f(2.0, ks) == pytest.approx(1.0, abs=1e-10)


def test_extension_decreasing_in_a():
    vals = [kappa_star_extension(a, 0.5, 1.0) for a in (1.0, 1.5, 2.0)]
    assert vals[0] > vals[1] > vals[2]
    grid = np.linspace(0.5001, 2.0, 50)
    stars = [kappa_star_extension(float(a), 0.5, 1.0) for a in grid]
    assert all(b <= a + 1e-12 for a, b in zip(stars, stars[1:]))


def test_extension_limit_toward_base():
    for r, kappa in ((0.5, 1.0), (1.0, -2.0), (0.8, 0.3)):
        assert abs(kappa_star_extension(r + 1e-6, r, kappa) - kappa) <= 1e-3


def test_extension_range_error_for_tiny_base():
    with pytest.raises((InverseRangeError, GeometryError)):
        kappa_star_extension(1.0, 1e-5, 1.0)


# ---------------------------------------------------------------------------
# classic four-point lemma


def test_alexandrov_symmetric_right_angles():
    rep = alexandrov_lemma_check(
        0.0, pq=math.sqrt(2.0), ps=math.sqrt(2.0), px=1.0, qx=1.0, xs=1.0
    )
    assert not rep.vacuous
    assert rep.agree
    assert rep.split_angle_back == pytest.approx(math.pi / 2, abs=1e-12)
    assert rep.split_angle_forward == pytest.approx(math.pi / 2, abs=1e-12)
    assert rep.base_angle_near == pytest.approx(math.pi / 4, abs=1e-12)
    assert rep.base_angle_far == pytest.approx(math.pi / 4, abs=1e-12)


def test_alexandrov_collinear_configuration():
    # p beyond q on the same line: every triangle degenerates flat
    rep = alexandrov_lemma_check(0.0, pq=0.5, ps=2.0, px=1.0, qx=0.5, xs=1.0)
    assert not rep.vacuous
    assert rep.agree


def test_alexandrov_vacuous_on_small_sphere():
    rep = alexandrov_lemma_check(9.0, pq=1.0, ps=1.0, px=1.0, qx=0.5, xs=0.5)
    assert rep.vacuous


def test_alexandrov_sweep_all_agree():
    rep = verify_alexandrov(3000, seed=0)
    assert rep.extra["disagreement_failures"] == 0
    assert rep.evaluated > 0
    assert rep.passed


# ---------------------------------------------------------------------------
# sweeps


def test_weighted_pair_sweep_within_budget():
    rep = verify_weighted_pair(3000, seed=0)
    assert rep.budget_violations == 0
    assert rep.extra["remark_bound_failures"] == 0
    assert rep.evaluated > 2500
    assert rep.passed


def test_weighted_pair_tight_hypothesis_equal_curvatures():
    # second hinge angle exactly closing to pi with equal curvatures turns the
    # construction into a single model triangle: the defect is pure roundoff
    rng = np.random.default_rng(7)
    for _ in range(200):
        a = rng.uniform(0.5, 2.0)
        kappa = rng.uniform(-2.0, 2.0)
        b, d = rng.uniform(1e-3, 0.01, 2)
        theta1 = rng.uniform(0.1, math.pi - 0.1)
        px = model_side(kappa, a, b, theta1)
        phi1 = angle_from_sides(kappa, a, px, b)
        ps = model_side(kappa, px, d, math.pi - phi1)
        kbar = kappa_bar_two(a, b, d, kappa, kappa)
        rhs = angle_from_sides(kbar, ps, a, b + d)
        assert theta1 - rhs >= -1e-9


def test_weighted_multi_sweep_within_budget():
    rep = verify_weighted_multi(2000, seed=0)
    assert rep.budget_violations == 0
    assert rep.extra["ordering_failures"] == 0
    assert rep.extra["pair_consistency_failures"] == 0
    assert rep.passed


def test_alternating_sweep_within_budget():
    rep = verify_alternating(2000, seed=0)
    assert rep.budget_violations == 0
    assert rep.extra["dominance_failures"] == 0
    assert rep.passed


def test_extension_sweep_within_budget():
    rep = verify_extension(2000, seed=0)
    assert rep.budget_violations == 0
    assert rep.extra["monotonicity_failures"] == 0
    assert rep.extra["limit_failures"] == 0
    assert rep.passed


def test_sweep_reports_are_deterministic():
    a = verify_weighted_pair(500, seed=11).to_dict()
    b = verify_weighted_pair(500, seed=11).to_dict()
    assert a == b
    c = verify_weighted_pair(500, seed=12).to_dict()
    assert c != a
