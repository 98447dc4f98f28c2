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
Trivial predictors that give a floor for the completion: the global mean of the training
ratings, the mean of the user or the mean of the item. Users or items without training
ratings get the global mean.
"""

import numpy as np

from ziprec.core.exceptions import ValidationError, ZiprecException

baseline_kinds = ("global_mean", "user_mean", "item_mean")


def check_kind(kind):
    if kind not in baseline_kinds:
        raise ZiprecException(
            "Unknown baseline '{}', valid baselines are: {}".format(kind, ", ".join(baseline_kinds))
        )

    return kind


def baseline_scores(matrix, kind, users, items):
    """
    Vectorized :func:`baseline_predict` for many cells.

    :param matrix: Training :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param kind: One of ``baseline_kinds``.
    :param users: Array of user indices.
    :param items: Array of item indices.
    :return: Array of scores.
    """
    check_kind(kind)

    if matrix.n_ratings == 0:
        raise ValidationError("A baseline needs at least one observed rating.")

    global_mean = matrix.global_mean()
    users, items = np.asarray(users, dtype=np.int64), np.asarray(items, dtype=np.int64)

    if kind == "global_mean":
        return np.full(len(users), global_mean)

    means = matrix.user_means()[users] if kind == "user_mean" else matrix.item_means()[items]
    return np.where(np.isnan(means), global_mean, means)


def baseline_predict(matrix, kind, u, o):
    """
    Baseline score of user ``u`` for item ``o``.

    :param matrix: Training :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param kind: ``global_mean``, ``user_mean`` or ``item_mean``.
    :param u: User index.
    :param o: Item index.
    :return: Score.
    """
    matrix.row(u)
    matrix.col(o)

    return float(baseline_scores(matrix, kind, [u], [o])[0])
