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
Prediction of missing ratings.

For user u and item o, the *user term* is the average of the ratings other users gave to o,
each weighted by ``S_U[u, v] * c(u, v)**2`` where ``c(u, v)`` is the number of items both
users rated. The *item term* mirrors this on the item axis: the average of u's ratings of
other items, weighted by ``S_I[o, p] * c(o, p)**2`` with ``c(o, p)`` the number of users that
rated both items. The prediction is ``alpha * user_term + (1 - alpha) * item_term``. Weights
are computed on the matrix that is being completed, which during evaluation is the training
split.

:func:`user_term`, :func:`item_term` and :func:`predict` evaluate a single cell directly
from the definition. Completing rows uses the vectorized :func:`row_terms`, which computes
both terms for all items of a row at once. Rows are independent of each other, so
:func:`complete_matrix` distributes them over a :class:`~ziprec.core.parallel.WorkerPool`.
"""

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from ziprec.core.exceptions import ValidationError
from ziprec.core.logging import has_log
from ziprec.core.parallel import WorkerPool, shared_state
from ziprec.ratings.matrix import co_rated_count

SOURCE_OBSERVED = 0
SOURCE_USER_TERM = 1
SOURCE_ITEM_TERM = 2
SOURCE_BLEND = 3
SOURCE_FALLBACK = 4

source_names = (
    "observed",
    "user_term",
    "item_term",
    "blend",
    "fallback:user_mean",
    "fallback:item_mean",
    "fallback:global_mean",
    "fallback:midpoint",
)

_fallback_codes = {
    name.split(":", 1)[1]: code
    for code, name in enumerate(source_names)
    if name.startswith("fallback:")
}


def _check_similarities(matrix, user_similarity, item_similarity):
    if user_similarity.order != matrix.n_users:
        raise ValidationError(
            "User similarity has order {}, the matrix has {} users.".format(
                user_similarity.order, matrix.n_users
            )
        )

    if item_similarity.order != matrix.n_items:
        raise ValidationError(
            "Item similarity has order {}, the matrix has {} items.".format(
                item_similarity.order, matrix.n_items
            )
        )


def _weighted_mean(weights, ratings, mass):
    if mass <= 0:
        return float("nan"), 0.0

    return float(np.dot(weights, ratings) / mass), float(mass)


def user_term(matrix, user_similarity, u, o, literal_denominator=False):
    """
    User-based weighted average for cell ``(u, o)``, evaluated term by term.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param user_similarity: User :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param u: User index.
    :param o: Item index.
    :param literal_denominator: Normalize by the weights of all other users.
    :return: Tuple ``(value, weight_mass)``, value is ``nan`` when the mass is 0.
    """
    own_items, _ = matrix.row(u)
    raters, ratings = matrix.col(o)
    others = raters != u
    raters, ratings = raters[others], ratings[others]

    counts = np.array(
        [co_rated_count(own_items, matrix.row(v)[0]) for v in raters.tolist()], dtype=np.float64
    )
    weights = user_similarity[u, raters] * counts**2

    if literal_denominator:
        mass = sum(
            user_similarity[u, v] * co_rated_count(own_items, matrix.row(v)[0]) ** 2
            for v in range(matrix.n_users)
            if v != u
        )
    else:
        mass = weights.sum()

    return _weighted_mean(weights, ratings, mass)


def item_term(matrix, item_similarity, u, o, literal_denominator=False):
    """
    Item-based weighted average for cell ``(u, o)``, evaluated term by term.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param item_similarity: Item :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param u: User index.
    :param o: Item index.
    :param literal_denominator: Normalize by the weights of all other items.
    :return: Tuple ``(value, weight_mass)``, value is ``nan`` when the mass is 0.
    """
    own_raters, _ = matrix.col(o)
    items, ratings = matrix.row(u)
    others = items != o
    items, ratings = items[others], ratings[others]

    counts = np.array(
        [co_rated_count(own_raters, matrix.col(p)[0]) for p in items.tolist()], dtype=np.float64
    )
    weights = item_similarity[o, items] * counts**2

    if literal_denominator:
        mass = sum(
            item_similarity[o, p] * co_rated_count(own_raters, matrix.col(p)[0]) ** 2
            for p in range(matrix.n_items)
            if p != o
        )
    else:
        mass = weights.sum()

    return _weighted_mean(weights, ratings, mass)


def _fallback_value(stage, user_mean, item_mean, global_mean, midpoint):
    return {
        "user_mean": user_mean,
        "item_mean": item_mean,
        "global_mean": global_mean,
        "midpoint": midpoint,
    }[stage]


def _blend_cell(config, user_value, user_mass, item_value, item_mass, fallbacks):
    if user_mass > 0 and item_mass > 0:
        value = config.alpha * user_value + (1.0 - config.alpha) * item_value
        source = SOURCE_BLEND
    elif user_mass > 0:
        value, source = user_value, SOURCE_USER_TERM
    elif item_mass > 0:
        value, source = item_value, SOURCE_ITEM_TERM
    else:
        for stage in config.fallback:
            value = _fallback_value(stage, *fallbacks)

            if not np.isnan(value):
                source = _fallback_codes[stage]
                break

    return value, source


def predict(matrix, user_similarity, item_similarity, config, u, o, with_source=False):
    """
    Predicts the missing rating of user ``u`` for item ``o``.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix` with ``(u, o)`` absent.
    :param user_similarity: User :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param item_similarity: Item :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param config: :class:`~ziprec.completion.config.CompletionConfig`.
    :param u: User index.
    :param o: Item index.
    :param with_source: Also return the name of the source of the value.
    :return: Score within the rating scale, or ``(score, source)``.
    """
    _check_similarities(matrix, user_similarity, item_similarity)

    if matrix.is_observed(u, o):
        raise ValidationError("User {} has already rated item {}.".format(u, o))

    user_value, user_mass = user_term(matrix, user_similarity, u, o, config.literal_denominator)
    item_value, item_mass = item_term(matrix, item_similarity, u, o, config.literal_denominator)

    fallbacks = (
        matrix.user_means()[u],
        matrix.item_means()[o],
        matrix.global_mean(),
        matrix.midpoint,
    )

    value, source = _blend_cell(config, user_value, user_mass, item_value, item_mass, fallbacks)
    score = float(min(matrix.rating_max, max(matrix.rating_min, value)))

    if with_source:
        return score, source_names[source]

    return score


class CompletionContext:
    """
    Per-matrix state shared by all rows of a completion: the similarity matrices, the
    item/item weights ``S_I * c**2`` and the means used by the fallback chain.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix` to complete.
    :param user_similarity: User :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param item_similarity: Item :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param literal_denominator: Use the unrestricted normalization.
    """

    def __init__(self, matrix, user_similarity, item_similarity, literal_denominator=False):
        _check_similarities(matrix, user_similarity, item_similarity)

        self.matrix = matrix
        self.literal_denominator = literal_denominator
        self.user_similarity = user_similarity.values

        pattern = matrix.pattern
        self.pattern = pattern
        self.pattern_t = pattern.T.tocsr()
        self.ratings_t = matrix.csr.T.tocsr().astype(np.float64)

        item_counts = (self.pattern_t @ pattern).toarray()
        self.item_weights = item_similarity.values * item_counts**2
        self.literal_item_mass = self.item_weights.sum(axis=1) - np.diag(self.item_weights)

        self.user_means = matrix.user_means()
        self.item_means = matrix.item_means()
        self.global_mean = matrix.global_mean()
        self.midpoint = matrix.midpoint


@dataclass
class RowTerms:
    """
    User and item terms of every item of one row. Values are ``nan`` where the corresponding
    mass is 0. Entries of observed items are computed but not used.
    """

    user: int
    user_values: np.ndarray
    user_mass: np.ndarray
    item_values: np.ndarray
    item_mass: np.ndarray

    def select(self, items):
        """Terms restricted to the supplied item indices."""
        return RowTerms(
            self.user,
            self.user_values[items],
            self.user_mass[items],
            self.item_values[items],
            self.item_mass[items],
        )


def _divide(numerator, mass):
    values = np.full(len(numerator), np.nan)
    positive = mass > 0
    values[positive] = numerator[positive] / mass[positive]
    return values


def row_terms(context, u):
    """
    Vectorized user and item terms for all items of row ``u``.

    :param context: :class:`CompletionContext`.
    :param u: User index.
    :return: :class:`RowTerms`.
    """
    matrix = context.matrix
    items, ratings = matrix.row(u)

    own_pattern = np.zeros(matrix.n_items)
    own_pattern[items] = 1.0

    user_counts = context.pattern @ own_pattern
    user_weights = context.user_similarity[u] * user_counts**2
    user_weights[u] = 0.0

    user_numerator = context.ratings_t @ user_weights
    if context.literal_denominator:
        user_mass = np.full(matrix.n_items, user_weights.sum())
    else:
        user_mass = context.pattern_t @ user_weights

    item_weights = context.item_weights[:, items]
    item_numerator = item_weights @ ratings.astype(np.float64)
    if context.literal_denominator:
        item_mass = context.literal_item_mass.copy()
    else:
        item_mass = item_weights.sum(axis=1)

    return RowTerms(
        u,
        _divide(user_numerator, user_mass),
        user_mass,
        _divide(item_numerator, item_mass),
        item_mass,
    )


def blend_row(terms, context, config, items=None):
    """
    Turns row terms into scores: the alpha blend where both terms carry weight, the single
    available term where only one does and the fallback chain elsewhere, clamped to the
    rating scale.

    :param terms: :class:`RowTerms` of the row (possibly restricted with :meth:`RowTerms.select`).
    :param context: :class:`CompletionContext`.
    :param config: :class:`~ziprec.completion.config.CompletionConfig`.
    :param items: Item indices the terms belong to, all items if ``None``.
    :return: Tuple of arrays ``(scores, source_codes)``.
    """
    if items is None:
        items = np.arange(context.matrix.n_items)

    has_user = terms.user_mass > 0
    has_item = terms.item_mass > 0

    scores = np.full(len(items), np.nan)
    sources = np.zeros(len(items), dtype=np.int8)

    both = has_user & has_item
    scores[both] = (
        config.alpha * terms.user_values[both] + (1.0 - config.alpha) * terms.item_values[both]
    )
    sources[both] = SOURCE_BLEND

    user_only = has_user & ~has_item
    scores[user_only] = terms.user_values[user_only]
    sources[user_only] = SOURCE_USER_TERM

    item_only = has_item & ~has_user
    scores[item_only] = terms.item_values[item_only]
    sources[item_only] = SOURCE_ITEM_TERM

    stage_values = {
        "user_mean": np.full(len(items), context.user_means[terms.user]),
        "item_mean": context.item_means[items],
        "global_mean": np.full(len(items), context.global_mean),
        "midpoint": np.full(len(items), context.midpoint),
    }

    for stage in config.fallback:
        pending = np.isnan(scores)
        fill = pending & ~np.isnan(stage_values[stage])
        scores[fill] = stage_values[stage][fill]
        sources[fill] = _fallback_codes[stage]

    matrix = context.matrix
    return np.clip(scores, matrix.rating_min, matrix.rating_max), sources


def complete_row(matrix, user_similarity, item_similarity, config, u, context=None):
    """
    Predicts all missing entries of user ``u``'s row. Only this row is computed.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param user_similarity: User :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param item_similarity: Item :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param config: :class:`~ziprec.completion.config.CompletionConfig`.
    :param u: User index.
    :param context: Optional precomputed :class:`CompletionContext`.
    :return: List of ``(item, score)`` for every item u has not rated, ascending by item.
    """
    if context is None:
        context = CompletionContext(
            matrix, user_similarity, item_similarity, config.literal_denominator
        )

    missing = _missing_items(matrix, u)
    scores, _ = blend_row(row_terms(context, u).select(missing), context, config, missing)

    return list(zip(missing.tolist(), scores.tolist()))


def _missing_items(matrix, u):
    observed = np.zeros(matrix.n_items, dtype=bool)
    observed[matrix.row(u)[0]] = True
    return np.flatnonzero(~observed)


def _complete_row_task(u):
    state = shared_state()
    context, config = state["context"], state["config"]

    missing = _missing_items(context.matrix, u)
    scores, sources = blend_row(row_terms(context, u).select(missing), context, config, missing)

    return missing, scores, sources


class _PredictionView(Mapping):
    def __init__(self, completed):
        self._completed = completed

    def __getitem__(self, cell):
        u, o = cell
        if self._completed.sources[u, o] == SOURCE_OBSERVED:
            raise KeyError(cell)

        return float(self._completed.scores[u, o])

    def __iter__(self):
        users, items = np.nonzero(self._completed.sources != SOURCE_OBSERVED)
        return iter(zip(users.tolist(), items.tolist()))

    def __len__(self):
        return int(np.count_nonzero(self._completed.sources != SOURCE_OBSERVED))


class CompletedMatrix:
    """
    Result of :func:`complete_matrix`. ``scores`` is the dense completed matrix, it equals
    the base matrix on observed entries. ``sources`` holds a code per cell, see
    ``source_names``.

    :param base: The :class:`~ziprec.ratings.matrix.RatingMatrix` that was completed.
    :param scores: Dense n×m array of scores.
    :param sources: Dense n×m array of source codes.
    """

    def __init__(self, base, scores, sources):
        scores.setflags(write=False)
        sources.setflags(write=False)

        self.base = base
        self.scores = scores
        self.sources = sources

    @property
    def predictions(self):
        """Read-only mapping ``(user, item) -> score`` of the predicted (not observed) cells."""
        return _PredictionView(self)

    def score(self, u, o):
        return float(self.scores[u, o])

    def source(self, u, o):
        return source_names[self.sources[u, o]]


@has_log
def complete_matrix(matrix, user_similarity, item_similarity, config, workers=1):
    """
    Completes every row of the matrix. Observed entries are copied, all others predicted.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param user_similarity: User :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param item_similarity: Item :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param config: :class:`~ziprec.completion.config.CompletionConfig`.
    :param workers: Number of worker processes.
    :return: :class:`CompletedMatrix`.
    """
    context = CompletionContext(
        matrix, user_similarity, item_similarity, config.literal_denominator
    )

    rows = WorkerPool(workers).map(
        _complete_row_task,
        range(matrix.n_users),
        shared={"context": context, "config": config},
    )

    scores = matrix.dense().astype(np.float64)
    sources = np.zeros(matrix.shape, dtype=np.int8)

    for u, (missing, row_scores, row_sources) in enumerate(rows):
        scores[u, missing] = row_scores
        sources[u, missing] = row_sources

    complete_matrix.log.debug(
        "Completed %d×%d matrix: %d predictions, %d from fallbacks",
        matrix.n_users,
        matrix.n_items,
        int(np.count_nonzero(sources)),
        int(np.count_nonzero(sources >= SOURCE_FALLBACK)),
    )

    return CompletedMatrix(matrix, scores, sources)


def recommend(matrix, user_similarity, item_similarity, config, u, top_k):
    """
    Top ranked items user ``u`` has not rated yet. Only the row of u is completed.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param user_similarity: User :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param item_similarity: Item :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param config: :class:`~ziprec.completion.config.CompletionConfig`.
    :param u: User index.
    :param top_k: Maximum number of items.
    :return: List of ``(item, score)``, best first, ties by ascending item index.
    """
    ranked = sorted(
        complete_row(matrix, user_similarity, item_similarity, config, u),
        key=lambda entry: (-entry[1], entry[0]),
    )

    return ranked[:top_k]
