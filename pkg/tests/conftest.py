import sys

import numpy as np
import pytest

from mfzeta import IfsModel, RatioStatistic, SimilarityWeights
from mfzeta import _kernels


@pytest.fixture
def binomial():
    return IfsModel((0.5, 0.5), ((0.2, 0.8),))


@pytest.fixture
def uniform():
    return IfsModel((0.5, 0.5), ((0.5, 0.5),))


@pytest.fixture
def binomial_pair(binomial):
    return SimilarityWeights(binomial.ratios), RatioStatistic(binomial)


@pytest.fixture
def uniform_pair(uniform):
    return SimilarityWeights(uniform.ratios), RatioStatistic(uniform)


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def kernels(request):
    return _kernels.BACKENDS[request.param]


def random_model(rng, N, M=1):
    r = rng.uniform(0.15, 0.7, N)
    P = rng.dirichlet(np.ones(N) * 2.0, size=M)
    P = np.clip(P, 0.02, None)
    P /= P.sum(axis=1, keepdims=True)
    return IfsModel(tuple(r), tuple(map(tuple, P)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
