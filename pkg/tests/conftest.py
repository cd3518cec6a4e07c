from fractions import Fraction

import pytest

from postlie_sl2 import mateq, so3c
from postlie_sl2.linalg import GaussianRational, IM, Mat3


def gr(re, im=0):
    """Shorthand for exact scalars from ints/Fractions."""
    return GaussianRational(re, im)


def half(sign=1):
    return GaussianRational(Fraction(sign, 2))


def ihalf(sign=1):
    return GaussianRational(0, Fraction(sign, 2))


FIVE_TAGS = (
    mateq.FamilyTag.zero(),
    mateq.FamilyTag.minus_identity(),
    mateq.FamilyTag.trace_minus_2(),
    mateq.FamilyTag.k_family(IM),
    mateq.FamilyTag.non_sym_rank1(),
)

#: KFamily parameters exercised by the exact verification criteria
K_SAMPLES = (gr(0), gr(-1), gr(1), IM, gr(5))


def sampled_tags():
    """The five families with the KFamily parameter swept over K_SAMPLES."""
    tags = [
        mateq.FamilyTag.zero(),
        mateq.FamilyTag.minus_identity(),
        mateq.FamilyTag.trace_minus_2(),
        mateq.FamilyTag.non_sym_rank1(),
    ]
    tags.extend(mateq.FamilyTag.k_family(k) for k in K_SAMPLES)
    return tags


def exact_congruate(tag_or_matrix, seed):
    """An exact SO(3,C)-congruate; stays inside the Gaussian-rational field."""
    A = (
        mateq.representative(tag_or_matrix)
        if isinstance(tag_or_matrix, mateq.FamilyTag)
        else tag_or_matrix
    )
    T = so3c.random_so3_exact(seed)
    return mateq.congruate(A, T)


@pytest.fixture(scope="session")
def survey_500():
    """The multistart survey shared by the rediscovery-related criteria."""
    from postlie_sl2 import solver

    return solver.multistart(500, seed=20260810, radius=2.0)


@pytest.fixture(scope="session")
def converged_points():
    """Final matrices of all converged runs underlying ``survey_500``."""
    import numpy as np

    from postlie_sl2 import solver

    points = []
    for index in range(500):
        rng = np.random.default_rng([20260810, index])
        A0 = Mat3.from_numpy(solver._random_start(rng, 2.0))
        result = solver.newton_solve(A0)
        if result.converged:
            points.append(result)
    return points
