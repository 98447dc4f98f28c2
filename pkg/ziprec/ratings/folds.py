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
Splitting the observed entries of a :class:`~ziprec.ratings.matrix.RatingMatrix` into k
disjoint test folds for cross-validation, and masking a fold out of a matrix to obtain the
training matrix and the held-out ground truth.
"""

from dataclasses import dataclass

import numpy as np

from ziprec.core.exceptions import ValidationError
from ziprec.core.logging import has_log


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    """
    Partition of the observed entries of a matrix into ``k`` folds numbered ``1..k``. The
    entries are kept as three parallel arrays, ``folds[i]`` is the fold of entry
    ``(users[i], items[i])``.

    :param k: Number of folds.
    :param users: User index per entry.
    :param items: Item index per entry.
    :param folds: Fold id per entry.
    :param source: ``"random"`` for seeded splits, ``"predefined"`` for folds read from files.
    :param seed: Seed of a random split, ``None`` otherwise.
    """

    k: int
    users: np.ndarray
    items: np.ndarray
    folds: np.ndarray
    source: str = "random"
    seed: int = None

    @property
    def assignment(self):
        """Dict mapping every observed ``(user, item)`` pair to its fold id."""
        return {
            (u, o): fold
            for u, o, fold in zip(self.users.tolist(), self.items.tolist(), self.folds.tolist())
        }

    def entries(self, fold):
        """List of ``(user, item)`` pairs in the supplied fold, in row-major order."""
        self._check_fold(fold)
        selected = self.folds == fold
        return list(zip(self.users[selected].tolist(), self.items[selected].tolist()))

    def sizes(self):
        """List with the number of entries per fold, for folds ``1..k``."""
        return np.bincount(self.folds, minlength=self.k + 1)[1:].tolist()

    def _check_fold(self, fold):
        if not 1 <= fold <= self.k:
            raise ValidationError(
                "Fold {} does not exist, valid folds are 1..{}.".format(fold, self.k)
            )

    def describe(self):
        if self.source == "random":
            return "random (k={}, seed={})".format(self.k, self.seed)

        return "{} (k={})".format(self.source, self.k)


@has_log
def split_folds(matrix, k, seed):
    """
    Uniform random partition of the observed entries of matrix into k folds. The entries are
    shuffled with a generator seeded by ``seed`` and dealt round-robin, so the fold sizes differ
    by at most one and the result only depends on the matrix and the seed.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix` to split.
    :param k: Number of folds, at least 2.
    :param seed: Seed of the random generator.
    :return: :class:`FoldAssignment`.
    """
    if k < 2:
        raise ValidationError("At least 2 folds are required, got {}.".format(k))

    if matrix.n_ratings < k:
        raise ValidationError(
            "Can not split {} observed entries into {} folds.".format(matrix.n_ratings, k)
        )

    users, items, _ = matrix.coordinates()
    order = np.random.default_rng(seed).permutation(matrix.n_ratings)

    folds = np.empty(matrix.n_ratings, dtype=np.int64)
    folds[order] = np.arange(matrix.n_ratings) % k + 1

    split_folds.log.debug("Split %d entries into %d folds (seed %s)", matrix.n_ratings, k, seed)

    return FoldAssignment(k, users, items, folds, "random", seed)


def mask_fold(matrix, fold_assignment, fold):
    """
    Removes one fold from the matrix.

    :param matrix: Matrix the fold assignment was made for.
    :param fold_assignment: :class:`FoldAssignment` of the matrix.
    :param fold: Fold id in ``1..k``.
    :return: Tuple ``(train, test)`` where train is a
             :class:`~ziprec.ratings.matrix.RatingMatrix` without the fold entries and test is
             the list of held-out ``(user, item, rating)`` triplets.
    """
    entries = fold_assignment.entries(fold)
    test = [(u, o, matrix.rating(u, o)) for u, o in entries]

    if any(rating == 0 for _, _, rating in test):
        raise ValidationError(
            "The fold assignment refers to entries that are not observed in the matrix."
        )

    return matrix.without(entries), test
