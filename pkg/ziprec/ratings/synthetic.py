# -*- coding: utf-8 -*-
# *********************************************************************
# ziprec - recommendation via compression-based matrix completion
# Copyright (C) 2024 The ziprec developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.
# *********************************************************************

"""
Synthetic test data: fully observed random rating matrices of full rank.
"""

import numpy as np

from ziprec.core.exceptions import ValidationError
from ziprec.core.logging import has_log
from ziprec.ratings.matrix import RatingMatrix

RANK_TOLERANCE = 1e-9


def numerical_rank(values, tolerance=RANK_TOLERANCE):
    """
    Number of singular values above ``tolerance`` times the largest singular value.

    :param values: 2D array.
    :param tolerance: Relative tolerance.
    :return: Rank as an int, 0 for an all-zero or empty array.
    """
    values = np.asarray(values, dtype=np.float64)

    if values.size == 0:
        return 0

    singular_values = np.linalg.svd(values, compute_uv=False)

    if singular_values[0] == 0:
        return 0

    return int(np.sum(singular_values > tolerance * singular_values[0]))


@has_log
def generate_synthetic(n, m, scale=(1, 5), seed=0):
    """
    Draws an n×m matrix with i.i.d. uniform integer entries from the rating scale and
    resamples it until it has full rank n. All entries are observed.

    :param n: Number of users (rows), at most m.
    :param m: Number of items (columns).
    :param scale: Tuple ``(rating_min, rating_max)``.
    :param seed: Seed of the random generator.
    :return: Fully observed :class:`~ziprec.ratings.matrix.RatingMatrix`.
    """
    if n > m:
        raise ValidationError("A full rank synthetic matrix needs n <= m, got {}×{}.".format(n, m))

    if n < 1:
        raise ValidationError("A synthetic matrix needs at least one row.")

    rating_min, rating_max = scale
    if rating_min <= 0 <= rating_max:
        raise ValidationError("The rating scale {} contains the sentinel 0.".format(scale))

    rng = np.random.default_rng(seed)
    attempts = 0

    while True:
        attempts += 1
        values = rng.integers(rating_min, rating_max + 1, size=(n, m))

        if numerical_rank(values) == n:
            break

    generate_synthetic.log.debug(
        "Generated %d×%d matrix of rank %d with seed %s after %d attempt(s)",
        n,
        m,
        n,
        seed,
        attempts,
    )

    users, items = np.indices((n, m))
    return RatingMatrix(users.ravel(), items.ravel(), values.ravel(), n, m, scale)
