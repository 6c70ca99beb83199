import random
from fractions import Fraction as Fr

import pytest

from hkzdefect import GramMatrix
from hkzdefect.core import NotPositiveDefiniteError, ldl


def bounded_gram(rank: int, seed: int, bound: int = 10) -> GramMatrix:
    """Random positive-definite integer Gram with |entries| <= bound.

    Drawn by rejection; witnesses of shortest vectors for this ensemble stay
    within the +-5 coefficient box, which the box-scan oracles rely on.
    """
    rng = random.Random(seed)
    while True:
        rows = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            rows[i][i] = rng.randint(1, bound)
            for j in range(i):
                rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
        gram = GramMatrix.from_rows(rows)
        try:
            ldl(gram)
            return gram
        except NotPositiveDefiniteError:
            continue


@pytest.fixture
def identity3():
    return GramMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.fixture
def hexagonal():
    # rank-2 Gram of the hexagonal lattice, defect exactly 4/3
    return GramMatrix.from_rows([[1, Fr(1, 2)], [Fr(1, 2), 1]])


@pytest.fixture
def extremal_plus():
    return GramMatrix.from_rows(
        [
            [1, Fr(1, 2), Fr(1, 2)],
            [Fr(1, 2), Fr(5, 4), Fr(3, 4)],
            [Fr(1, 2), Fr(3, 4), Fr(5, 4)],
        ]
    )


@pytest.fixture
def extremal_minus():
    return GramMatrix.from_rows(
        [
            [1, Fr(1, 2), Fr(1, 2)],
            [Fr(1, 2), Fr(5, 4), Fr(-1, 4)],
            [Fr(1, 2), Fr(-1, 4), Fr(5, 4)],
        ]
    )
