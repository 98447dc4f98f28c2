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
Construction of the user/user and item/item similarity matrices.

The compressed length of every description string is computed once. For the Kolmogorov
similarity that is all that is needed, the matrix follows from the lengths directly. The
compression similarity additionally compresses the concatenation of every unordered pair (in
both orders, see :func:`~ziprec.similarity.compressors.pair_compressed_length`), which is the
expensive part and is distributed row by row over a
:class:`~ziprec.core.parallel.WorkerPool`. Every cell is computed independently, so the result
does not depend on the number of workers.
"""

from dataclasses import dataclass
from datetime import datetime

import numpy as np

from ziprec.core.exceptions import ValidationError
from ziprec.core.logging import has_log
from ziprec.core.parallel import WorkerPool, shared_state
from ziprec.core.utils import seconds_since
from ziprec.similarity.compressors import (
    CompressorProfile,
    compressed_length,
    pair_compressed_length,
)
from ziprec.similarity.encoding import check_axis, encode_all, entity_ids
from ziprec.similarity.measures import check_measure, cs_from_lengths

LARGE_CS_BUILD = 2000


class SimilarityMatrix:
    """
    Symmetric matrix of similarity scores in [0, 1] with unit diagonal, indexed by the dense
    user or item indices of the rating matrix it was built from. The values are read-only.

    :param axis: ``"user"`` or ``"item"``.
    :param values: Square array of scores.
    :param ids: Raw ids of the entities, defaults to the indices.
    :param measure: Measure the matrix was built with, informational.
    :param profile: Compressor profile the matrix was built with, informational.
    """

    def __init__(self, axis, values, ids=None, measure=None, profile=None):
        values = np.array(values, dtype=np.float64)

        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValidationError(
                "A similarity matrix must be square, got shape {}.".format(values.shape)
            )

        values.setflags(write=False)

        self._axis = check_axis(axis)
        self._values = values
        self._ids = tuple(ids) if ids is not None else tuple(range(values.shape[0]))
        self._measure = measure
        self._profile = profile

    @property
    def axis(self):
        return self._axis

    @property
    def order(self):
        return self._values.shape[0]

    @property
    def values(self):
        return self._values

    @property
    def ids(self):
        return self._ids

    @property
    def measure(self):
        return self._measure

    @property
    def profile(self):
        return self._profile

    def __getitem__(self, key):
        return self._values[key]

    def distances(self):
        """Compression distances ``1 - S``."""
        return 1.0 - self._values

    def check(self):
        """
        Verifies symmetry, unit diagonal and value range.

        :raises ValidationError: If an invariant does not hold.
        """
        if not np.array_equal(self._values, self._values.T):
            raise ValidationError("Similarity matrix is not symmetric.")

        if not np.all(np.diag(self._values) == 1.0):
            raise ValidationError("Similarity matrix has diagonal entries other than 1.")

        if np.any(self._values < 0.0) or np.any(self._values > 1.0):
            raise ValidationError("Similarity matrix has entries outside of [0, 1].")

        return self

    def __repr__(self):
        return "SimilarityMatrix(axis={!r}, order={}, measure={!r})".format(
            self._axis, self.order, self._measure
        )


@dataclass
class BuildStats:
    """Work done by a similarity build."""

    entity_compressions: int = 0
    pair_evaluations: int = 0
    seconds: float = 0.0

    @property
    def compressions(self):
        """Total number of compressor calls, each pair is compressed in both orders."""
        return self.entity_compressions + 2 * self.pair_evaluations


def _entity_length_task(index):
    state = shared_state()
    return compressed_length(state["profile"], state["descriptions"][index])


def _cs_row_task(a):
    state = shared_state()
    descriptions, lengths, profile = state["descriptions"], state["lengths"], state["profile"]

    x = descriptions[a]
    row = np.empty(len(descriptions) - a - 1)

    for position, b in enumerate(range(a + 1, len(descriptions))):
        y = descriptions[b]

        if not x and not y:
            row[position] = 1.0
        else:
            row[position] = cs_from_lengths(
                lengths[a], lengths[b], pair_compressed_length(profile, x, y)
            )

    return row


@has_log
class SimilarityBuilder:
    """
    Builds one :class:`SimilarityMatrix` from a rating matrix. The builder logs under
    ``ziprec.<axis>.SimilarityBuilder``.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`, usually a training split.
    :param axis: ``"user"`` for S_U or ``"item"`` for S_I.
    :param measure: ``"ks"`` or ``"cs"``.
    :param profile: :class:`~ziprec.similarity.compressors.CompressorProfile`.
    :param workers: Number of worker processes.
    """

    def __init__(self, matrix, axis, measure="ks", profile=None, workers=1):
        self._matrix = matrix
        self._axis = check_axis(axis)
        self._measure = check_measure(measure)
        self._profile = profile or CompressorProfile()
        self._pool = WorkerPool(workers)
        self.stats = BuildStats()

        self._set_logging_context(self._axis)

    def build(self):
        start = datetime.now()
        descriptions = encode_all(self._matrix, self._axis)
        order = len(descriptions)

        if self._measure == "cs" and order > LARGE_CS_BUILD:
            self.log.warning(
                "Compression similarity over %d %ss needs %d pair compressions, "
                "this is a long running build.",
                order,
                self._axis,
                order * (order - 1),
            )

        lengths = self._pool.map(
            _entity_length_task,
            range(order),
            shared={"descriptions": descriptions, "profile": self._profile},
        )
        self.stats.entity_compressions = order

        if self._measure == "ks":
            values = self._build_ks(np.asarray(lengths, dtype=np.float64))
        else:
            values = self._build_cs(descriptions, lengths)
            self.stats.pair_evaluations = order * (order - 1) // 2

        self.stats.seconds = seconds_since(start)

        self.log.debug(
            "Built %s similarity over %d %ss in %.3f s (%d compressions)",
            self._measure,
            order,
            self._axis,
            self.stats.seconds,
            self.stats.compressions,
        )

        return SimilarityMatrix(
            self._axis,
            values,
            entity_ids(self._matrix, self._axis),
            self._measure,
            self._profile,
        )

    @staticmethod
    def _build_ks(lengths):
        values = 1.0 / (1.0 + np.abs(lengths[:, np.newaxis] - lengths[np.newaxis, :]))
        np.fill_diagonal(values, 1.0)
        return values

    def _build_cs(self, descriptions, lengths):
        order = len(descriptions)
        rows = self._pool.map(
            _cs_row_task,
            range(order),
            shared={"descriptions": descriptions, "lengths": lengths, "profile": self._profile},
        )

        values = np.eye(order)
        for a, row in enumerate(rows):
            values[a, a + 1 :] = row
            values[a + 1 :, a] = row

        return values


def build_similarity(matrix, axis, measure="ks", profile=None, workers=1, cache=None):
    """
    Builds the similarity matrix of the users (``axis="user"``) or the items
    (``axis="item"``) of a rating matrix.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param axis: ``"user"`` or ``"item"``.
    :param measure: ``"ks"`` or ``"cs"``.
    :param profile: :class:`~ziprec.similarity.compressors.CompressorProfile`, defaults to
                    zlib level 9.
    :param workers: Number of worker processes.
    :param cache: Optional :class:`~ziprec.similarity.storage.SimilarityCache`.
    :return: :class:`SimilarityMatrix`.
    """
    profile = profile or CompressorProfile()
    measure = check_measure(measure)

    if cache is not None:
        cached = cache.load(matrix, axis, measure, profile)

        if cached is not None:
            return cached

    similarity = SimilarityBuilder(matrix, axis, measure, profile, workers).build()

    if cache is not None:
        cache.store(matrix, similarity)

    return similarity
