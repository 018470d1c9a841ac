import numpy as np
import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

RIGHT_CORNER = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
REGULAR_SQRT2 = np.array([[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]], dtype=float)


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def leibniz_det(m):
    """Determinant by the permutation expansion, independent of linalg3."""
    from itertools import permutations

    total = 0.0
    for perm in permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        total += sign * m[0][perm[0]] * m[1][perm[1]] * m[2][perm[2]]
    return total


coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vectors = st.tuples(coord, coord, coord).map(np.array)
matrices = st.lists(coord, min_size=9, max_size=9).map(lambda xs: np.array(xs).reshape(3, 3))
seeds = st.integers(0, 2**32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
