import numpy as np
import pytest

from sindybench import (
    assemble_pointwise,
    exact_pointwise_problem,
    get_system,
    sample_trajectory,
)


@pytest.fixture(scope="session")
def lorenz():
    return get_system("Lorenz63")


@pytest.fixture(scope="session")
def lorenz_train(lorenz):
    """Five clean protocol trajectories (10 periods x 100 points)."""
    return [sample_trajectory(lorenz, i, 10, 100) for i in range(5)]


@pytest.fixture(scope="session")
def lorenz_test(lorenz):
    return [sample_trajectory(lorenz, 5 + i, 10, 100) for i in range(5)]


@pytest.fixture(scope="session")
def lorenz_problem(lorenz, lorenz_train):
    return assemble_pointwise(lorenz_train, lorenz.basis)


@pytest.fixture(scope="session")
def lorenz_test_problem(lorenz, lorenz_test):
    return exact_pointwise_problem(lorenz_test, lorenz)


@pytest.fixture(scope="session")
def lorenz_true_support(lorenz):
    return tuple(
        tuple(int(i) for i in np.flatnonzero(lorenz.coefficients[:, j]))
        for j in range(3)
    )
