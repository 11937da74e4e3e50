import numpy as np
import pytest

from varpart import Dataset, dwaine_fixture, mean_center

MODEL = ("TARGTPOP", "DISPOINC")


@pytest.fixture(scope="session")
def dwaine():
    return dwaine_fixture()


@pytest.fixture(scope="session")
def centered(dwaine):
    return mean_center(dwaine)


@pytest.fixture(scope="session")
def model():
    return MODEL


def make_dataset(x: np.ndarray, y: np.ndarray) -> Dataset:
    """Dataset from a plain design matrix, columns named x1..xp."""
    names = tuple(f"x{j + 1}" for j in range(x.shape[1]))
    cols = tuple((nm, x[:, j]) for j, nm in enumerate(names))
    return Dataset(
        columns=cols + (("y", y),), response_name="y", predictor_names=names
    )


@pytest.fixture(scope="session")
def suppression_centered():
    """Design where the suppressor shares no signal with the response.

    x2 carries only the measurement error of x1, so adding it strips that
    error out; the unique contributions then exceed the regression SS and
    the common region is negative.
    """
    rng = np.random.default_rng(0)
    n = 200
    t = rng.standard_normal(n)
    e = rng.standard_normal(n)
    y = t + 0.3 * rng.standard_normal(n)
    return mean_center(make_dataset(np.column_stack([t + e, e]), y))


@pytest.fixture(scope="session")
def orthogonal_centered():
    """Exactly orthogonalized three-predictor design (QR construction)."""
    rng = np.random.default_rng(11)
    n, p = 60, 3
    a = rng.standard_normal((n, p))
    a -= a.mean(axis=0)
    q, _ = np.linalg.qr(a)
    x = q * np.array([3.0, 5.0, 2.0])  # orthogonal, not orthonormal
    y = x @ np.array([1.5, -2.0, 0.5]) + rng.standard_normal(n)
    return mean_center(make_dataset(x, y))
