import numpy as np
import pytest

from locomotif.core import Segment, is_coincident, znormalize
from locomotif.discovery import (
    DiscoveryConfig,
    PackedPaths,
    assemble_candidate,
    best_motif_set,
    candidate_subpaths,
    coverage,
    fitness,
    guidance_mask_from_rest,
    locomotif,
)
from locomotif.loco import GapPenaltyParams, WarpingPath, extract_paths, find_paths
from locomotif.ssm import compute_ssm

from oracles import motif_series, naive_best_motif_set


def _diag(n):
    return WarpingPath([(k, k) for k in range(1, n + 1)], np.ones((n, n)))


def test_candidate_subpaths_diagonal():
    (frag,) = candidate_subpaths([_diag(10)], Segment(3, 7))
    np.testing.assert_array_equal(frag, [[k, k] for k in range(3, 8)])


def test_candidate_subpaths_skipped_column():
    pos = [(1, 1), (2, 2), (3, 3), (4, 5), (5, 6), (6, 7)]
    p = WarpingPath(pos, np.ones((8, 8)))
    (frag,) = candidate_subpaths([p], Segment(4, 7))
    np.testing.assert_array_equal(frag, [[4, 5], [5, 6], [6, 7]])


def test_candidate_subpaths_skips_non_covering_and_empty():
    assert candidate_subpaths([], Segment(1, 3)) == []
    p = WarpingPath([(k, k + 4) for k in range(1, 6)], np.ones((10, 10)))
    assert candidate_subpaths([p], Segment(2, 6)) == []


def test_fitness_self_match_only():
    frag = np.array([[k, k] for k in range(3, 8)])
    phi, score, cover = fitness(Segment(3, 7), [frag], np.ones((10, 10)))
    assert (phi, score, cover) == (0.0, 0.0, 0.0)


def test_fitness_two_disjoint_members():
    S = np.ones((10, 10))
    self_match = np.array([[k, k] for k in range(1, 6)])
    other = np.array([[k + 5, k] for k in range(1, 6)])
    phi, score, cover = fitness(Segment(1, 5), [self_match, other], S)
    assert score == pytest.approx(0.5)
    assert cover == pytest.approx(0.5)
    assert phi == pytest.approx(0.5)


def test_coverage_subtracts_overlaps():
    assert coverage([Segment(1, 10), Segment(6, 15)]) == 15
    assert coverage([Segment(1, 5), Segment(10, 12)]) == 8
    # all unordered pairs, including non-adjacent ones
    assert coverage([Segment(1, 10), Segment(3, 4), Segment(5, 6)]) == 10


@pytest.mark.parametrize("seed", range(3))
def test_fitness_components_bounded(seed):
    x = motif_series(120, 2, seed=seed)
    S = compute_ssm(znormalize(x))
    paths = find_paths(x, 10, 0.8)
    n = len(x)
    rng = np.random.default_rng(seed)
    for _ in range(40):
        b = int(rng.integers(1, n - 10))
        e = int(rng.integers(b + 9, min(b + 20, n) + 1))
        phi, score, cover = fitness(Segment(b, e), candidate_subpaths(paths, Segment(b, e)), S)
        bound = 1 - (e - b + 1) / n
        assert -1e-12 <= score <= bound + 1e-12
        assert -1e-12 <= cover <= bound + 1e-12
        assert 0 <= phi <= 1


@pytest.mark.parametrize("seed", range(3))
def test_table_score_matches_direct_sum(seed):
    x = motif_series(150, 1, seed=seed)
    S = compute_ssm(znormalize(x))
    paths = find_paths(x, 10, 0.8)
    rng = np.random.default_rng(seed)
    for _ in range(30):
        b = int(rng.integers(1, 140))
        e = int(rng.integers(b + 9, min(b + 25, 150) + 1))
        table = sum(p.fragment_score(b, e) for p in paths if p.covers_columns(b, e))
        direct = sum(S[q[:, 0] - 1, q[:, 1] - 1].sum() for q in candidate_subpaths(paths, Segment(b, e)))
        assert table == pytest.approx(direct, abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_planted_pattern_recovered(seed):
    # a non-repeating background; a flat one would dominate the similarity quantile
    rng = np.random.default_rng(seed)
    template = np.sin(np.linspace(0, 2 * np.pi, 10)) * 2
    x = np.cumsum(rng.standard_normal(40)) * 0.5
    x[5:15] = template + 0.05 * rng.standard_normal(10)
    x[25:35] = template + 0.05 * rng.standard_normal(10)
    res = locomotif(x, l_min=8, l_max=15, kappa=1)
    assert len(res) == 1
    members = res.motif_sets[0].members
    for planted in (Segment(6, 15), Segment(26, 35)):
        best = max(min(m.e, planted.e) - max(m.b, planted.b) + 1 for m in members)
        assert best / len(planted) >= 0.9


def test_everything_emitted_gives_none():
    x = motif_series(80, 1, seed=1)
    S = compute_ssm(znormalize(x))
    paths = find_paths(x, 10)
    config = DiscoveryConfig(l_min=10, l_max=20)
    # every candidate of length >= 10 contains a whole tile of length 4
    tiles = [Segment(b, b + 3) for b in range(1, 81, 4)]
    assert best_motif_set(paths, S, config, emitted=tiles) is None
    record = []
    naive_best_motif_set(paths, S, 10, 20, emitted=tiles, record=record)
    assert record == []


def test_full_length_range_considers_only_whole_series():
    x = motif_series(40, 1, seed=2)
    S = compute_ssm(znormalize(x))
    gap = GapPenaltyParams.from_ssm(S, 0.8)
    paths = extract_paths(S, 40, gap)
    record = []
    naive_best_motif_set(paths, S, 40, 40, record=record)
    assert [r["alpha"] for r in record] == [(1, 40)]
    # only the self-match remains, so nothing positive is found
    assert best_motif_set(paths, S, DiscoveryConfig(40, 40)) is None


def test_kappa_zero_is_empty():
    res = locomotif(motif_series(60, 1, seed=0), l_min=5, l_max=10, kappa=0)
    assert len(res) == 0 and res.segments() == []


@pytest.mark.parametrize("kwargs", [
    dict(l_min=50, l_max=60),
    dict(l_min=10, l_max=5),
    dict(l_min=5, l_max=10, rho=1.5),
    dict(l_min=5, l_max=10, nu=0.7),
    dict(l_min=0, l_max=10),
    dict(l_min=5, l_max=10, kappa=-1),
    dict(l_min=5, l_max=10, start_mask=[True] * 3),
])
def test_invalid_config_rejected(kwargs):
    with pytest.raises(ValueError):
        locomotif(np.arange(40.0), **kwargs)


def test_no_warping_members_have_equal_length():
    x = motif_series(200, 2, seed=3)
    res = locomotif(x, l_min=10, l_max=30, kappa=3, warping=False)
    assert len(res) > 0
    for ms in res:
        assert {len(m) for m in ms.members} == {len(ms.alpha)}


def test_deterministic():
    x = motif_series(150, 2, seed=9)
    a = locomotif(x, l_min=10, l_max=30)
    b = locomotif(x, l_min=10, l_max=30)
    assert a.segments() == b.segments()
    assert [m.fitness for m in a] == [m.fitness for m in b]


@pytest.mark.parametrize("seed", range(5))
def test_result_invariants(seed):
    x = motif_series(180, 1 + seed % 3, seed=seed)
    nu = 0.5
    res = locomotif(x, l_min=10, l_max=30, nu=nu)
    emitted = []
    for ms in res:
        assert ms.alpha in ms.members
        assert ms.fitness > 0
        for m in ms.members:
            assert max(len(m), len(ms.alpha)) / min(len(m), len(ms.alpha)) <= 2
        assert not any(is_coincident(ms.alpha, g, nu) for g in emitted)
        for m in ms.members:
            assert not any(is_coincident(m, g, nu) for g in emitted)
        for i, a in enumerate(ms.members):
            for c in ms.members[i + 1:]:
                assert not is_coincident(a, c, nu) and not is_coincident(c, a, nu)
        emitted.extend(ms.members)


@pytest.mark.parametrize("seed", range(6))
def test_sweep_matches_naive(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(50, 120))
    x = motif_series(n, 1 + seed % 2, seed=100 + seed)
    l_min, l_max = 8, 25
    S = compute_ssm(znormalize(x))
    paths = find_paths(x, l_min, 0.8)
    config = DiscoveryConfig(l_min, l_max)
    packed = PackedPaths(paths)
    emitted = []
    for _ in range(3):
        got = best_motif_set(packed, S, config, emitted)
        ref = naive_best_motif_set(paths, S, l_min, l_max, 0.5, emitted)
        if ref is None:
            assert got is None
            break
        assert got.alpha == ref[0]
        assert got.fitness == pytest.approx(ref[1], abs=1e-12)
        emitted.extend(got.members)


def test_start_end_masks_respected():
    x = motif_series(150, 1, seed=4)
    n = len(x)
    start = np.zeros(n, dtype=bool)
    end = np.zeros(n, dtype=bool)
    start[::7] = True
    end[5::7] = True
    res = locomotif(x, l_min=10, l_max=30, start_mask=start, end_mask=end)
    assert len(res) > 0
    for ms in res:
        assert start[ms.alpha.b - 1] and end[ms.alpha.e - 1]


def test_assemble_candidate_rejects_coincident_members():
    n = 20
    S = np.ones((n, n))
    self_match = WarpingPath([(k, k) for k in range(1, 11)], S)
    shifted = WarpingPath([(k + 2, k) for k in range(1, 11)], S)
    assert assemble_candidate(Segment(1, 10), [self_match, shifted], S) is None
    far = WarpingPath([(k + 10, k) for k in range(1, 11)], S)
    cand = assemble_candidate(Segment(1, 10), [self_match, far], S)
    assert cand.members == (Segment(1, 10), Segment(11, 20))


def _rest_reference(x, l_max, thr, fraction):
    x = np.asarray(x, dtype=float).reshape(len(x), -1)
    n = len(x)
    idle = np.zeros(n, dtype=bool)
    for s in range(n - l_max + 1):
        w = x[s:s + l_max]
        if all(np.var(w[:, k]) < thr for k in range(x.shape[1])):
            idle[s:s + l_max] = True
    if not idle.any() or idle.all():
        return np.ones(n, dtype=bool)
    mean = x[idle].mean(axis=0)
    cand = [t for t in range(n) if not idle[t]]
    cand.sort(key=lambda t: np.linalg.norm(x[t] - mean))
    keep = int(np.ceil(fraction * len(cand)))
    out = np.zeros(n, dtype=bool)
    out[cand[:keep]] = True
    return out


def test_rest_mask_constant_series():
    s, e = guidance_mask_from_rest(np.full(50, 2.0), 10, 0.01)
    assert s.all() and e.all()


def test_rest_mask_no_idle_window():
    x = np.random.default_rng(0).standard_normal(80)
    s, _ = guidance_mask_from_rest(x, 10, 1e-6)
    assert s.all()


def test_rest_mask_burst():
    rng = np.random.default_rng(1)
    burst = 3 * np.sin(np.linspace(0, 3 * np.pi, 50))
    x = np.concatenate([np.zeros(100), burst, np.zeros(100)]) + 0.01 * rng.standard_normal(250)
    s, e = guidance_mask_from_rest(x, 20, 0.05)
    np.testing.assert_array_equal(s, e)
    ref = _rest_reference(x, 20, 0.05, 0.33)
    np.testing.assert_array_equal(s, ref)
    allowed = np.flatnonzero(s)
    # allowed samples lie inside the burst, close to the resting level
    assert allowed.size > 0
    assert np.all(np.abs(x[allowed]) < np.abs(x[100:150]).max())
    assert s[:100].sum() == 0 or np.abs(x[allowed]).max() < 1.5


def test_rest_mask_fraction_one():
    x = np.concatenate([np.zeros(60), np.sin(np.linspace(0, 6, 40)) * 2, np.zeros(60)])
    s, _ = guidance_mask_from_rest(x, 15, 0.01, fraction=1.0)
    np.testing.assert_array_equal(s, _rest_reference(x, 15, 0.01, 1.0))
    ref_idle_free = ~_rest_reference(x, 15, 0.01, 1.0)
    assert s.sum() + ref_idle_free.sum() == len(x)


def test_rest_mask_rejects_bad_fraction():
    with pytest.raises(ValueError):
        guidance_mask_from_rest(np.zeros(10), 5, 0.1, fraction=0.0)
