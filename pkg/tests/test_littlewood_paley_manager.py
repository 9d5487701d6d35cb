import numpy as np
import pytest

from data_classes.besov_index import BesovIndex
from data_classes.dyadic_cutoffs import chi, ring_bump
from exceptions.degenerate_input import DegenerateInputError


def test_chi_profile():
    radius = np.array([0.0, 0.5, 0.75, 1.0, 4.0 / 3.0, 2.0])
    values = chi(radius)
    assert values[0] == values[1] == values[2] == 1.0
    assert 0.0 < values[3] < 1.0
    assert values[4] == values[5] == 0.0
    assert np.all(ring_bump(np.array([0.5, 3.0])) == 0.0)


def test_besov_index_rejects_small_exponents():
    with pytest.raises(ValueError):
        BesovIndex(0.0, 0.5, 2.0)


def test_partition_of_unity(lp_3d):
    assert lp_3d.partition_residual() <= 1e-12


def test_blocks_sum_to_mean_free_part(lp_3d, spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 7, mean_zero=False)
    total = sum(lp_3d.blocks(f).values())
    assert np.allclose(total, f - np.mean(f), atol=1e-10)


def test_bony_split_reconstructs_product(lp_3d, spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 5, mean_zero=False)
    g = spectral_3d.random_band_limited(rng, 5, mean_zero=False)
    parts = lp_3d.bony_decompose(f, g)
    assert np.max(np.abs(parts.reconstruct() - f * g)) <= 1e-10


def test_bony_split_rejects_mismatched_factors(lp_3d):
    with pytest.raises(ValueError):
        lp_3d.bony_decompose(np.zeros((16, 16, 16)), np.zeros((8, 8, 8)))


def test_besov_zero_two_two_is_comparable_to_l2(lp_3d, spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 6)
    ratio = lp_3d.besov_norm(f, BesovIndex(0.0, 2.0, 2.0)) / spectral_3d.lebesgue_norm(f, 2)
    assert np.sqrt(0.5) - 1e-12 <= ratio <= 1.0 + 1e-12


def test_negative_regularity_needs_vanishing_zero_mode(lp_3d, spectral_3d):
    with pytest.raises(DegenerateInputError):
        lp_3d.besov_norm(np.ones(spectral_3d.grid.shape), BesovIndex(-1.0))


@pytest.mark.parametrize("theta", [0.2, 0.5, 0.8])
def test_interpolation_inequality(lp_3d, spectral_3d, rng, theta):
    f = spectral_3d.random_band_limited(rng, 6)
    assert lp_3d.interpolation_ratio(f, 0.5, 2.0, theta) <= 1.0 + 1e-10


def test_bernstein_derivative_ratio_stays_in_the_shell(lp_3d, spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 7)
    interior = lp_3d.j_range[1:-1]
    for j in interior:
        block = lp_3d.dyadic_block(f, j)
        report = lp_3d.bernstein_check(block, j, 2.0, 2.0)
        if report.derivative_ratio == 0.0:
            continue
        assert 0.75 - 1e-9 <= report.derivative_ratio <= 8.0 / 3.0 + 1e-9
        assert report.embedding_ratio == pytest.approx(1.0)


def test_bernstein_check_rejects_reversed_exponents(lp_3d, spectral_3d):
    with pytest.raises(ValueError):
        lp_3d.bernstein_check(np.zeros(spectral_3d.grid.shape), 0, 4.0, 2.0)


def test_paraproduct_ratio_is_finite(lp_3d, spectral_3d, rng):
    a = spectral_3d.random_band_limited(rng, 4, real=True, mean_zero=False)
    b = spectral_3d.random_band_limited(rng, 4, real=True)
    assert np.isfinite(lp_3d.paraproduct_bound_ratio(a, b))
    assert lp_3d.paraproduct_bound_ratio(np.zeros_like(a), b) == 0.0
