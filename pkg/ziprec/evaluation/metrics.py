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

import math

import numpy as np

from ziprec.core.exceptions import MissingPredictionError, ValidationError


def rmse(truth, predicted):
    """
    Root-mean-square error over a test set.

    :param truth: List of held-out ``(user, item, rating)`` triplets.
    :param predicted: Mapping ``(user, item) -> score``.
    :return: RMSE as a float.
    :raises MissingPredictionError: If a test cell has no prediction.
    """
    if len(truth) == 0:
        raise ValidationError("RMSE needs at least one test entry.")

    errors = np.empty(len(truth))

    for position, (u, o, rating) in enumerate(truth):
        try:
            errors[position] = rating - predicted[(u, o)]
        except KeyError:
            raise MissingPredictionError(
                "No prediction for user {} and item {}.".format(u, o)
            )

    return math.sqrt(float(np.mean(errors**2)))
