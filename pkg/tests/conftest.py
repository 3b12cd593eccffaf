import random
from fractions import Fraction

import pytest

from quivermult.linalg import Matrix
from quivermult.scalars import GaussianRational


def gr(a, b=0):
    if isinstance(a, GaussianRational) and b == 0:
        return a
    return GaussianRational(Fraction(a), Fraction(b))


def mat(rows):
    return Matrix.from_rows([[x if isinstance(x, GaussianRational) else gr(x)
                              for x in row] for row in rows])


@pytest.fixture
def rng():
    return random.Random(12345)


# naive list-of-lists product over Fractions, independent of Matrix
def naive_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), gr(0)) for j in range(m)]
            for i in range(n)]
