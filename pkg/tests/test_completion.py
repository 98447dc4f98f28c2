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
from mock import patch
from parameterized import parameterized

from ziprec.completion.config import CompletionConfig
from ziprec.completion.engine import (
    CompletionContext,
    RowTerms,
    blend_row,
    complete_matrix,
    complete_row,
    item_term,
    predict,
    recommend,
    row_terms,
    source_names,
    user_term,
)
from ziprec.completion.export import write_completed_csv
from ziprec.core.exceptions import LimitViolationException, ValidationError, ZiprecException
from ziprec.ratings.folds import mask_fold, split_folds
from ziprec.ratings.matrix import from_triplets
from ziprec.ratings.synthetic import generate_synthetic
from ziprec.similarity.builder import SimilarityMatrix, build_similarity

from .utils import TestWithTemporaryDirectory, random_matrix, toy_matrix


def ones(axis, order):
    return SimilarityMatrix(axis, np.ones((order, order)))


def neighbour_matrix():
    """
    User 0 has not rated item 0. User 1 shares two items with user 0 and rated item 0 with 4,
    user 2 shares one item and rated it with 2, user 3 shares one item but did not rate it.
    """
    return from_triplets(
        [
            (0, 1, 4),
            (0, 2, 4),
            (1, 0, 4),
            (1, 1, 3),
            (1, 2, 3),
            (2, 0, 2),
            (2, 1, 5),
            (3, 2, 1),
        ],
        4,
        3,
    )


def similarities(matrix, measure="ks"):
    return build_similarity(matrix, "user", measure), build_similarity(matrix, "item", measure)


def dense_prediction(ratings, user_similarity, item_similarity, alpha, u, o):
    """
    Direct evaluation of both weighted averages on a dense array with 0 for missing ratings.
    Returns ``None`` when neither average has any weight.
    """
    observed = ratings > 0
    n_users, n_items = ratings.shape

    def users_in_common(v):
        return sum(1 for p in range(n_items) if observed[u, p] and observed[v, p])

    def raters_in_common(p):
        return sum(1 for v in range(n_users) if observed[v, o] and observed[v, p])

    user_sum = user_mass = 0.0
    for v in range(n_users):
        if v != u and observed[v, o]:
            weight = user_similarity[u, v] * users_in_common(v) ** 2
            user_sum += weight * ratings[v, o]
            user_mass += weight

    item_sum = item_mass = 0.0
    for p in range(n_items):
        if p != o and observed[u, p]:
            weight = item_similarity[o, p] * raters_in_common(p) ** 2
            item_sum += weight * ratings[u, p]
            item_mass += weight

    if user_mass > 0 and item_mass > 0:
        value = alpha * user_sum / user_mass + (1 - alpha) * item_sum / item_mass
    elif user_mass > 0:
        value = user_sum / user_mass
    elif item_mass > 0:
        value = item_sum / item_mass
    else:
        return None

    return min(5.0, max(1.0, value))


class TestCompletionConfig(unittest.TestCase):
    def test_defaults(self):
        config = CompletionConfig()

        self.assertEqual(config.alpha, 0.5)
        self.assertEqual(config.fallback, ("user_mean", "item_mean", "global_mean", "midpoint"))
        self.assertFalse(config.literal_denominator)

    @parameterized.expand([(-0.1,), (1.5,)])
    def test_alpha_limits(self, alpha):
        self.assertRaises(LimitViolationException, CompletionConfig, alpha)

    def test_midpoint_terminates_chain(self):
        self.assertEqual(
            CompletionConfig(fallback=["item_mean"]).fallback, ("item_mean", "midpoint")
        )
        self.assertEqual(
            CompletionConfig(fallback=["midpoint", "user_mean"]).fallback, ("midpoint",)
        )

    def test_unknown_stage(self):
        self.assertRaises(ZiprecException, CompletionConfig, 0.5, ["median"])

    def test_with_alpha(self):
        config = CompletionConfig(0.2, ["global_mean"], True).with_alpha(0.7)

        self.assertEqual(
            config.as_dict(),
            {"alpha": 0.7, "fallback": ["global_mean", "midpoint"], "literal_denominator": True},
        )


class TestTerms(unittest.TestCase):
    def setUp(self):
        self.matrix = neighbour_matrix()
        self.user_similarity = ones("user", 4)
        self.item_similarity = ones("item", 3)

    def test_user_term_weights_by_squared_co_rating_count(self):
        value, mass = user_term(self.matrix, self.user_similarity, 0, 0)

        self.assertAlmostEqual(value, 3.6)
        self.assertEqual(mass, 5.0)

    def test_item_term(self):
        value, mass = item_term(self.matrix, self.item_similarity, 0, 0)

        self.assertAlmostEqual(value, 4.0)
        self.assertEqual(mass, 5.0)

    def test_no_other_rater(self):
        matrix = from_triplets([(0, 0, 3), (1, 1, 4)], 2, 3)

        self.assertEqual(user_term(matrix, ones("user", 2), 0, 2)[1], 0.0)
        self.assertTrue(np.isnan(user_term(matrix, ones("user", 2), 0, 2)[0]))

    def test_no_other_rated_item(self):
        matrix = from_triplets([(1, 0, 3), (1, 1, 4)], 2, 2)

        self.assertEqual(item_term(matrix, ones("item", 2), 0, 0)[1], 0.0)

    def test_constant_ratings(self):
        matrix = random_matrix(8, 6, 0.5, seed=1)
        triplets = [(u, o, 3) for u, o, _ in matrix.triplets()]
        matrix = from_triplets(triplets, 8, 6)
        user_similarity, _ = similarities(matrix)

        for u in range(8):
            for o in range(6):
                value, mass = user_term(matrix, user_similarity, u, o)

                if mass > 0:
                    self.assertAlmostEqual(value, 3.0)

    def test_literal_denominator_counts_non_raters(self):
        value, mass = user_term(self.matrix, self.user_similarity, 0, 0, literal_denominator=True)

        self.assertEqual(mass, 6.0)
        self.assertAlmostEqual(value, 3.0)

    def test_row_terms_match_scalar_terms(self):
        matrix = random_matrix(9, 7, 0.4, seed=12)
        user_similarity, item_similarity = similarities(matrix, "cs")

        for literal in (False, True):
            context = CompletionContext(matrix, user_similarity, item_similarity, literal)

            for u in range(matrix.n_users):
                terms = row_terms(context, u)

                for o in range(matrix.n_items):
                    if matrix.is_observed(u, o):
                        continue

                    user_value, user_mass = user_term(matrix, user_similarity, u, o, literal)
                    item_value, item_mass = item_term(matrix, item_similarity, u, o, literal)

                    self.assertAlmostEqual(terms.user_mass[o], user_mass)
                    self.assertAlmostEqual(terms.item_mass[o], item_mass)

                    if user_mass > 0:
                        self.assertAlmostEqual(terms.user_values[o], user_value)

                    if item_mass > 0:
                        self.assertAlmostEqual(terms.item_values[o], item_value)


class TestPredict(unittest.TestCase):
    def setUp(self):
        self.matrix = neighbour_matrix()
        self.user_similarity = ones("user", 4)
        self.item_similarity = ones("item", 3)

    def predict(self, alpha, **kwargs):
        return predict(
            self.matrix,
            self.user_similarity,
            self.item_similarity,
            CompletionConfig(alpha, **kwargs),
            0,
            0,
            with_source=True,
        )

    def test_blend(self):
        score, source = self.predict(0.5)

        self.assertAlmostEqual(score, 3.8)
        self.assertEqual(source, "blend")

    def test_alpha_one_is_user_based(self):
        self.assertAlmostEqual(self.predict(1.0)[0], 3.6)

    def test_alpha_zero_is_item_based(self):
        self.assertAlmostEqual(self.predict(0.0)[0], 4.0)

    def test_observed_cell(self):
        self.assertRaises(
            ValidationError,
            predict,
            self.matrix,
            self.user_similarity,
            self.item_similarity,
            CompletionConfig(),
            1,
            0,
        )

    @parameterized.expand(
        [
            ("user_mean", None, 2.0, "fallback:user_mean"),
            ("item_mean", ["item_mean"], 5.0, "fallback:item_mean"),
            ("global_mean", ["global_mean"], 3.5, "fallback:global_mean"),
            ("midpoint", ["midpoint"], 3.0, "fallback:midpoint"),
        ]
    )
    def test_fallback_chain(self, _, fallback, expected_score, expected_source):
        matrix = from_triplets([(0, 0, 2), (1, 1, 5)], 2, 2)
        config = CompletionConfig() if fallback is None else CompletionConfig(fallback=fallback)

        score, source = predict(matrix, ones("user", 2), ones("item", 2), config, 0, 1, True)

        self.assertEqual(score, expected_score)
        self.assertEqual(source, expected_source)

    def test_literal_denominator(self):
        score = predict(
            self.matrix,
            self.user_similarity,
            self.item_similarity,
            CompletionConfig(1.0, literal_denominator=True),
            3,
            0,
        )

        self.assertAlmostEqual(score, 2.0)

    @parameterized.expand([("ks", 0.5), ("cs", 0.3)])
    def test_matches_dense_weighted_averages(self, measure, alpha):
        matrix = random_matrix(10, 12, 0.3, seed=21)
        user_similarity, item_similarity = similarities(matrix, measure)
        ratings = matrix.dense().astype(np.float64)

        rng = np.random.default_rng(5)
        absent_users, absent_items = np.nonzero(ratings == 0)
        cells = rng.choice(len(absent_users), 100)

        compared = 0
        for cell in cells.tolist():
            u, o = int(absent_users[cell]), int(absent_items[cell])
            expected = dense_prediction(
                ratings, user_similarity.values, item_similarity.values, alpha, u, o
            )

            if expected is None:
                continue

            score = predict(
                matrix, user_similarity, item_similarity, CompletionConfig(alpha), u, o
            )
            self.assertAlmostEqual(score, expected, places=10)
            compared += 1

        self.assertGreater(compared, 50)


class TestBlendRow(unittest.TestCase):
    def setUp(self):
        matrix = from_triplets([(0, 0, 2), (1, 1, 5)], 2, 4)
        self.context = CompletionContext(matrix, ones("user", 2), ones("item", 4))

    def test_cases(self):
        nan = float("nan")
        terms = RowTerms(
            0,
            np.array([7.0, nan, 4.0, nan]),
            np.array([1.0, 0.0, 2.0, 0.0]),
            np.array([nan, 2.5, 3.0, nan]),
            np.array([0.0, 3.0, 2.0, 0.0]),
        )

        scores, sources = blend_row(terms, self.context, CompletionConfig(0.25))

        np.testing.assert_allclose(scores, [5.0, 2.5, 3.25, 2.0])
        self.assertEqual(
            [source_names[code] for code in sources],
            ["user_term", "item_term", "blend", "fallback:user_mean"],
        )

    def test_selected_items(self):
        terms = RowTerms(1, *(np.zeros(2) for _ in range(4)))

        scores, sources = blend_row(
            terms, self.context, CompletionConfig(fallback=["item_mean"]), np.array([0, 3])
        )

        np.testing.assert_array_equal(scores, [2.0, 3.0])
        self.assertEqual(
            [source_names[code] for code in sources], ["fallback:item_mean", "fallback:midpoint"]
        )


class TestCompleteMatrix(unittest.TestCase):
    def test_all_missing_matrix_uses_midpoint(self):
        matrix = from_triplets([], 2, 2)
        user_similarity, item_similarity = similarities(matrix)

        completed = complete_matrix(matrix, user_similarity, item_similarity, CompletionConfig())

        np.testing.assert_array_equal(completed.scores, np.full((2, 2), 3.0))
        self.assertEqual(
            {completed.source(u, o) for u in range(2) for o in range(2)}, {"fallback:midpoint"}
        )

    def test_fully_observed_matrix(self):
        matrix = generate_synthetic(3, 4, seed=1)
        user_similarity, item_similarity = similarities(matrix)

        completed = complete_matrix(matrix, user_similarity, item_similarity, CompletionConfig())

        self.assertEqual(len(completed.predictions), 0)
        np.testing.assert_array_equal(completed.scores, matrix.dense())

    def test_observed_entries_are_preserved_and_predictions_bounded(self):
        matrix = random_matrix(15, 12, 0.3, seed=5)
        user_similarity, item_similarity = similarities(matrix, "cs")

        completed = complete_matrix(
            matrix, user_similarity, item_similarity, CompletionConfig(0.3)
        )

        for u, o, rating in matrix.triplets():
            self.assertEqual(completed.score(u, o), rating)
            self.assertEqual(completed.source(u, o), "observed")

        self.assertTrue(np.all((completed.scores >= 1.0) & (completed.scores <= 5.0)))
        self.assertEqual(len(completed.predictions), 15 * 12 - matrix.n_ratings)

    def test_masked_cells_match_predict(self):
        matrix = generate_synthetic(20, 30, seed=2)
        train, test = mask_fold(matrix, split_folds(matrix, 5, seed=0), 1)
        user_similarity, item_similarity = similarities(train)
        config = CompletionConfig(0.5)

        completed = complete_matrix(train, user_similarity, item_similarity, config)

        for u, o, _ in test:
            self.assertAlmostEqual(
                completed.predictions[(u, o)],
                predict(train, user_similarity, item_similarity, config, u, o),
                places=10,
            )

    def test_rows_match_complete_row(self):
        matrix = random_matrix(10, 8, 0.4, seed=7)
        user_similarity, item_similarity = similarities(matrix)
        config = CompletionConfig(0.6)

        completed = complete_matrix(matrix, user_similarity, item_similarity, config)

        for u in range(matrix.n_users):
            for o, score in complete_row(matrix, user_similarity, item_similarity, config, u):
                self.assertEqual(completed.score(u, o), score)

    @parameterized.expand([(1.0, "user"), (0.0, "item")])
    def test_alpha_endpoint_uses_one_term(self, alpha, term):
        matrix = random_matrix(10, 8, 0.4, seed=3)
        user_similarity, item_similarity = similarities(matrix, "cs")
        context = CompletionContext(matrix, user_similarity, item_similarity)

        completed = complete_matrix(
            matrix, user_similarity, item_similarity, CompletionConfig(alpha)
        )

        for (u, o), score in completed.predictions.items():
            terms = row_terms(context, u)

            if getattr(terms, term + "_mass")[o] > 0:
                self.assertEqual(score, getattr(terms, term + "_values")[o])

    def test_worker_count_does_not_change_result(self):
        matrix = random_matrix(16, 11, 0.3, seed=21)
        user_similarity, item_similarity = similarities(matrix, "cs")
        config = CompletionConfig(0.4)

        serial = complete_matrix(matrix, user_similarity, item_similarity, config, workers=1)
        parallel = complete_matrix(matrix, user_similarity, item_similarity, config, workers=3)

        np.testing.assert_array_equal(serial.scores, parallel.scores)
        np.testing.assert_array_equal(serial.sources, parallel.sources)

    @parameterized.expand([("ks",), ("cs",)])
    def test_renumbering_users_permutes_rows(self, measure):
        matrix = random_matrix(9, 7, 0.4, seed=17)
        user_similarity, item_similarity = similarities(matrix, measure)

        order = np.random.default_rng(3).permutation(matrix.n_users)
        new_index = np.argsort(order)
        renumbered = from_triplets(
            [(int(new_index[u]), o, r) for u, o, r in matrix.triplets()],
            matrix.n_users,
            matrix.n_items,
        )
        renumbered_users = SimilarityMatrix("user", user_similarity.values[np.ix_(order, order)])

        np.testing.assert_allclose(
            build_similarity(renumbered, "user", measure).values, renumbered_users.values
        )

        # Item descriptions encode user indices, so the item similarity is kept as it was.
        config = CompletionConfig(0.6)
        original = complete_matrix(matrix, user_similarity, item_similarity, config)
        moved = complete_matrix(renumbered, renumbered_users, item_similarity, config)

        np.testing.assert_allclose(original.scores[order], moved.scores, rtol=1e-12)
        np.testing.assert_array_equal(original.sources[order], moved.sources)

    def test_similarity_order_must_match(self):
        matrix = toy_matrix()

        self.assertRaises(
            ValidationError,
            complete_matrix,
            matrix,
            ones("user", 3),
            ones("item", 5),
            CompletionConfig(),
        )


class TestCompleteRowAndRecommend(unittest.TestCase):
    def setUp(self):
        self.matrix = toy_matrix()
        self.user_similarity, self.item_similarity = similarities(self.matrix)

    def test_fully_rated_user(self):
        matrix = generate_synthetic(2, 3, seed=0)

        self.assertEqual(complete_row(matrix, *similarities(matrix), CompletionConfig(), 0), [])

    def test_user_without_ratings_gets_every_item(self):
        row = complete_row(
            self.matrix, self.user_similarity, self.item_similarity, CompletionConfig(), 3
        )

        self.assertEqual([o for o, _ in row], [0, 1, 2, 3, 4])

    def test_top_k_is_sorted_prefix_of_row(self):
        row = complete_row(
            self.matrix, self.user_similarity, self.item_similarity, CompletionConfig(), 0
        )
        ranked = recommend(
            self.matrix, self.user_similarity, self.item_similarity, CompletionConfig(), 0, 1
        )

        self.assertEqual(ranked, sorted(row, key=lambda entry: (-entry[1], entry[0]))[:1])

    def test_top_k_larger_than_unrated_count(self):
        ranked = recommend(
            self.matrix, self.user_similarity, self.item_similarity, CompletionConfig(), 0, 50
        )

        self.assertEqual(sorted(o for o, _ in ranked), [3, 4])

    def test_ties_by_ascending_item(self):
        ranked = recommend(
            self.matrix, self.user_similarity, self.item_similarity, CompletionConfig(), 3, 5
        )

        for (o_a, score_a), (o_b, score_b) in zip(ranked, ranked[1:]):
            self.assertTrue(score_a > score_b or (score_a == score_b and o_a < o_b))

    def test_only_the_row_is_computed(self):
        with patch("ziprec.completion.engine.row_terms", wraps=row_terms) as terms_mock:
            recommend(
                self.matrix, self.user_similarity, self.item_similarity, CompletionConfig(), 1, 3
            )

        terms_mock.assert_called_once()
        self.assertEqual(terms_mock.call_args[0][1], 1)


class TestWriteCompletedCsv(TestWithTemporaryDirectory):
    def test_raw_ids_and_sources(self):
        matrix = from_triplets([(0, 0, 4)], 1, 2, (1, 5), ["ann"], [10, 20])
        completed = complete_matrix(matrix, *similarities(matrix), CompletionConfig())
        path = self.path("completed.csv")

        write_completed_csv(completed, path)

        with open(path) as fh:
            lines = fh.read().splitlines()

        self.assertEqual(lines[0], "user,item,score,source")
        self.assertEqual(lines[1], "ann,10,4.000000,observed")
        self.assertEqual(lines[2], "ann,20,4.000000,fallback:user_mean")
