import itertools

import numpy as np
import pytest

from mfzeta import _core_py, _kernels


def brute_period(w):
    n = len(w)
    return next(p for p in range(1, n + 1) if all(w[i] == w[i + p] for i in range(n - p)))


def test_backend_selected():
    assert _kernels.BACKEND in ("cython", "python")
    assert "python" in _kernels.BACKENDS


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_minimal_period_matches_brute_force(kernels, n):
    for w in itertools.product(range(3), repeat=n):
        assert kernels.minimal_period(np.array(w)) == brute_period(w)


def test_prime_mask_matches_definition(kernels):
    words = np.array(list(itertools.product(range(2), repeat=6)))
    mask = kernels.prime_mask(words)
    for w, m in zip(words.tolist(), mask):
        composite = any(6 % d == 0 and d < 6 and w == w[:d] * (6 // d) for d in range(1, 6))
        assert m == (not composite)


def test_stopping_words_lexicographic_and_matching(kernels):
    log_r = np.log([0.5, 0.25])
    syms, offs, logs = kernels.stopping_words(log_r, np.log(0.25), 100)
    words = [tuple(syms[a:b]) for a, b in zip(offs[:-1], offs[1:])]
    assert words == [(0, 0), (0, 1), (1,)]
    np.testing.assert_allclose(np.exp(logs), [0.25, 0.125, 0.25])


def test_stopping_words_budget(kernels):
    with pytest.raises(MemoryError):
        kernels.stopping_words(np.log([0.5, 0.5]), np.log(2.0**-10), 100)


def test_cyclic_birkhoff_windows(kernels):
    # "01" with indicator of 2-gram "01" (code 1): windows 01, 10
    out = kernels.cyclic_birkhoff(np.array([[0, 1]]), [0.0, 1.0, 0.0, 0.0], 2, 2)
    assert out[0] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        kernels.cyclic_birkhoff(np.array([[0, 1]]), [0.0, 1.0, 0.0], 2, 2)
    with pytest.raises(ValueError):
        kernels.cyclic_birkhoff(np.array([[0, 2]]), [0.0, 1.0], 1, 2)


@pytest.mark.skipif(len(_kernels.BACKENDS) < 2, reason="compiled core not built")
def test_backends_agree_on_random_inputs():
    fast = _kernels.BACKENDS["cython"]
    rng = np.random.default_rng(3)
    words = rng.integers(0, 3, size=(200, 9))
    np.testing.assert_array_equal(fast.prime_mask(words), _core_py.prime_mask(words))
    table = rng.normal(size=27)
    np.testing.assert_allclose(
        fast.cyclic_birkhoff(words, table, 3, 3), _core_py.cyclic_birkhoff(words, table, 3, 3), rtol=1e-13
    )
    log_r = np.log([0.3, 0.45, 0.2])
    a = fast.stopping_words(log_r, np.log(1e-4), 10**6)
    b = _core_py.stopping_words(log_r, np.log(1e-4), 10**6)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)
