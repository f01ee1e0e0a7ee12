import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altrecon.errors import InputError, RankError
from altrecon.problems import (
    ExponentialModel,
    add_noise,
    gen_hankel_lowrank,
    gen_lowrank,
    prony_fit,
    srer_db,
)
from altrecon.structures import hankel_structure


def _sorted(z):
    z = np.asarray(z, dtype=complex)
    return z[np.lexsort((z.imag, z.real))]


def test_prony_single_exponential():
    x = 2 * 0.9 ** np.arange(10)
    model = prony_fit(x, 1)
    np.testing.assert_allclose(model.poles, [0.9], atol=1e-10)
    np.testing.assert_allclose(model.amplitudes, [2.0], atol=1e-10)


def test_prony_constant():
    model = prony_fit(np.full(5, 3.5), 1)
    np.testing.assert_allclose(model.poles, [1.0], atol=1e-12)
    np.testing.assert_allclose(model.amplitudes, [3.5], atol=1e-12)


def test_prony_two_exponentials():
    t = np.arange(12)
    model = prony_fit(0.8 ** t + (-0.5) ** t, 2)
    np.testing.assert_allclose(_sorted(model.poles), [-0.5, 0.8], atol=1e-8)
    np.testing.assert_allclose(model.synthesize(12).real, 0.8 ** t + (-0.5) ** t, atol=1e-8)


def test_prony_short_input():
    with pytest.raises(InputError):
        prony_fit(np.ones(4), 2)


def test_prony_flags_repeated_poles():
    t = np.arange(12.0)
    # double pole at 0.7: t * 0.7^t is not a sum of two distinct exponentials
    model = prony_fit(0.7 ** t + t * 0.7 ** t, 2)
    assert model.ill_conditioned


def _random_poles(rng, r):
    """Well-separated real poles and conjugate pairs with modulus in [0.3, 0.95]."""
    while True:
        poles = []
        while len(poles) < r:
            mod = rng.uniform(0.3, 0.95)
            if r - len(poles) >= 2 and rng.random() < 0.5:
                ang = rng.uniform(0.3, np.pi - 0.3)
                poles += [mod * np.exp(1j * ang), mod * np.exp(-1j * ang)]
            else:
                poles.append(mod * rng.choice([-1.0, 1.0]))
        poles = np.array(poles)
        d = np.abs(poles[:, None] - poles[None, :]) + np.eye(r) * 10
        if d.min() > 0.15:
            return poles


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), r=st.integers(1, 4))
def test_prony_roundtrip(seed, r):
    rng = np.random.default_rng(seed)
    poles = _random_poles(rng, r)
    amps = rng.uniform(0.5, 2.0, r).astype(complex)
    # conjugate pairs get conjugate amplitudes so the signal is real
    for i in range(r):
        if poles[i].imag < 0:
            amps[i] = np.conj(amps[np.argmin(np.abs(poles - np.conj(poles[i])))])
    x = ExponentialModel(poles, amps).synthesize(4 * r + 4)
    assert np.abs(x.imag).max() < 1e-10
    fit = prony_fit(x.real, r)
    np.testing.assert_allclose(_sorted(fit.poles), _sorted(poles), atol=1e-8)


def test_gen_hankel_lowrank_properties():
    s = hankel_structure(8, 7)
    for seed in range(10):
        X, h = gen_hankel_lowrank(8, 7, 3, seed)
        np.testing.assert_allclose(s.project(X), X, atol=1e-12)
        np.testing.assert_array_equal(s.apply(h), X)
        sv = np.linalg.svd(X, compute_uv=False)
        assert sv[3] <= 1e-8 * sv[0]
        assert sv[2] > 1e-8 * sv[0]
    X1, h1 = gen_hankel_lowrank(8, 7, 3, 5)
    X2, h2 = gen_hankel_lowrank(8, 7, 3, 5)
    np.testing.assert_array_equal(X1, X2)
    np.testing.assert_array_equal(h1, h2)


def test_gen_lowrank_properties():
    X = gen_lowrank(6, 5, 2, 3)
    sv = np.linalg.svd(X, compute_uv=False)
    assert sv[2] <= 1e-10 * sv[0]
    assert np.linalg.matrix_rank(gen_lowrank(4, 4, 4, 0)) == 4
    np.testing.assert_array_equal(gen_lowrank(6, 5, 2, 3), X)
    with pytest.raises(RankError):
        gen_lowrank(3, 3, 4, 0)


def test_add_noise_noiseless_sentinel():
    y = np.arange(5.0)
    out, sigma = add_noise(y, np.ones((2, 2)), np.inf, 0)
    np.testing.assert_array_equal(out, y)
    assert sigma == 0.0


def test_add_noise_deterministic_and_scaled():
    X = np.ones((3, 3))
    y = np.zeros(100)
    a, s1 = add_noise(y, X, 0.0, 4)
    b, s2 = add_noise(y, X, 0.0, 4)
    np.testing.assert_array_equal(a, b)
    # sigma^2 = ||X||^2 / (m 10^0) = 9 / 100
    assert s1 == pytest.approx(0.3)


def test_add_noise_zero_db_concentration():
    X = np.ones((10, 10))
    y = np.zeros(100)
    ratios = [np.sum(X ** 2) / np.sum(add_noise(y, X, 0.0, k)[0] ** 2) for k in range(1000)]
    realized = 10 * np.log10(np.mean(ratios))
    assert abs(realized) <= 1.0


def test_srer_db():
    X = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert srer_db(X, X) == 300.0
    assert srer_db(X, np.zeros_like(X)) == pytest.approx(0.0)
    E = np.ones_like(X)
    E *= np.sqrt(0.1 * np.sum(X ** 2) / np.sum(E ** 2))
    assert srer_db(X, X + E) == pytest.approx(10.0)
    with pytest.raises(InputError):
        srer_db(np.zeros((2, 2)), X)
