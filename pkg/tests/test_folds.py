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

import unittest

import numpy as np

from ziprec.core.exceptions import ValidationError
from ziprec.ratings.folds import FoldAssignment, mask_fold, split_folds
from ziprec.ratings.matrix import from_triplets

from .utils import random_matrix, toy_matrix


def ten_entry_matrix():
    return from_triplets([(u, o, 1 + (u + o) % 5) for u in range(2) for o in range(5)], 2, 5)


class TestSplitFolds(unittest.TestCase):
    def test_exact_division(self):
        folds = split_folds(ten_entry_matrix(), 5, seed=0)

        self.assertEqual(folds.sizes(), [2, 2, 2, 2, 2])

    def test_sizes_differ_by_at_most_one(self):
        sizes = split_folds(random_matrix(13, 17, 0.3), 4, seed=2).sizes()

        self.assertLessEqual(max(sizes) - min(sizes), 1)

    def test_same_seed_same_assignment(self):
        matrix = random_matrix(10, 12, 0.4)

        self.assertEqual(
            split_folds(matrix, 5, 42).assignment, split_folds(matrix, 5, 42).assignment
        )

    def test_different_seed_different_assignment(self):
        matrix = random_matrix(10, 12, 0.4)

        self.assertNotEqual(
            split_folds(matrix, 5, 1).assignment, split_folds(matrix, 5, 2).assignment
        )

    def test_folds_partition_observed_entries(self):
        matrix = random_matrix(10, 12, 0.4)
        folds = split_folds(matrix, 3, seed=5)

        entries = [entry for fold in range(1, 4) for entry in folds.entries(fold)]

        self.assertEqual(len(entries), len(set(entries)))
        self.assertEqual(set(entries), {(u, o) for u, o, _ in matrix.triplets()})

    def test_k_larger_than_entries(self):
        self.assertRaises(ValidationError, split_folds, from_triplets([(0, 0, 3)], 1, 1), 2, 0)

    def test_k_below_two(self):
        self.assertRaises(ValidationError, split_folds, toy_matrix(), 1, 0)

    def test_describe(self):
        self.assertEqual(split_folds(toy_matrix(), 3, 8).describe(), "random (k=3, seed=8)")


class TestMaskFold(unittest.TestCase):
    def test_counts_add_up(self):
        matrix = random_matrix(15, 20, 0.3, seed=9)
        folds = split_folds(matrix, 5, seed=1)

        for fold in range(1, 6):
            train, test = mask_fold(matrix, folds, fold)

            self.assertEqual(train.n_ratings + len(test), matrix.n_ratings)

            for u, o, rating in test:
                self.assertEqual(train.rating(u, o), 0)
                self.assertEqual(matrix.rating(u, o), rating)

    def test_fold_with_all_ratings_of_a_user(self):
        matrix = toy_matrix()
        users, items, _ = matrix.coordinates()
        folds = FoldAssignment(2, users, items, np.where(users == 0, 1, 2))

        train, test = mask_fold(matrix, folds, 1)

        self.assertEqual(train.rows[0], [])
        self.assertEqual(sorted(test), [(0, 0, 5), (0, 1, 3), (0, 2, 4)])

    def test_empty_fold(self):
        matrix = toy_matrix()
        users, items, _ = matrix.coordinates()
        folds = FoldAssignment(2, users, items, np.ones(len(users), dtype=np.int64))

        train, test = mask_fold(matrix, folds, 2)

        self.assertEqual(test, [])
        self.assertEqual(train.triplets(), matrix.triplets())

    def test_invalid_fold(self):
        matrix = toy_matrix()

        self.assertRaises(ValidationError, mask_fold, matrix, split_folds(matrix, 3, 0), 4)
