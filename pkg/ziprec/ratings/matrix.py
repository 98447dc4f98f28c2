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
This module defines :class:`RatingMatrix`, the sparse n×m matrix of integer ratings that all
other parts of ziprec operate on. A rating of 0 is never stored, it is the sentinel for "no
rating". Every matrix keeps two indices of the same data, a row-major one (what did user u
rate?) and a column-major one (who rated item o?), so that both the user-based and the
item-based parts of the completion can walk their neighbourhoods directly.

Matrices are immutable after construction. Derived matrices (training splits, subsamples)
are new objects.
"""

from collections.abc import Sequence

import numpy as np
import scipy.sparse as sp

from ziprec.core.exceptions import ValidationError
from ziprec.core.logging import has_log
from ziprec.core.utils import stable_digest


class _AxisView(Sequence):
    """
    Read-only view of one index of a :class:`RatingMatrix`. Item ``i`` is the list of
    ``(index, rating)`` pairs of row (or column) ``i``, in ascending index order.
    """

    def __init__(self, compressed, axis_name):
        self._compressed = compressed
        self._axis_name = axis_name

    def __len__(self):
        return self._compressed.shape[0]

    def __getitem__(self, position):
        if not isinstance(position, (int, np.integer)) or not 0 <= position < len(self):
            raise ValidationError(
                "{} index {!r} is out of range for a matrix with {} {}s.".format(
                    self._axis_name.capitalize(), position, len(self), self._axis_name
                )
            )

        start, end = self._compressed.indptr[position], self._compressed.indptr[position + 1]

        return list(
            zip(
                self._compressed.indices[start:end].tolist(),
                self._compressed.data[start:end].tolist(),
            )
        )

    def __iter__(self):
        for position in range(len(self)):
            yield self[position]


@has_log
class RatingMatrix:
    """
    Sparse integer rating matrix with row-major and column-major access.

    Instances are normally created with :func:`from_triplets` or one of the loaders in
    :mod:`ziprec.ratings.loaders`, which validate their input. The constructor itself expects
    coordinate arrays that are already known to be valid.

    :param users: Array of user indices, one per rating.
    :param items: Array of item indices, one per rating.
    :param ratings: Array of non-zero integer ratings.
    :param n_users: Number of users (rows).
    :param n_items: Number of items (columns).
    :param scale: Tuple ``(rating_min, rating_max)``.
    :param user_ids: Raw user ids indexed by user index, defaults to the indices.
    :param item_ids: Raw item ids indexed by item index, defaults to the indices.
    """

    def __init__(
        self, users, items, ratings, n_users, n_items, scale=(1, 5), user_ids=None, item_ids=None
    ):
        self._scale = (int(scale[0]), int(scale[1]))
        self._user_ids = tuple(user_ids) if user_ids is not None else tuple(range(n_users))
        self._item_ids = tuple(item_ids) if item_ids is not None else tuple(range(n_items))

        coo = sp.coo_matrix(
            (
                np.asarray(ratings, dtype=np.int32),
                (np.asarray(users, dtype=np.int64), np.asarray(items, dtype=np.int64)),
            ),
            shape=(n_users, n_items),
        )

        self._csr = coo.tocsr()
        self._csr.sort_indices()
        self._csc = coo.tocsc()
        self._csc.sort_indices()

        self._pattern = None
        self._user_lookup = None
        self._item_lookup = None

    @property
    def n_users(self):
        return self._csr.shape[0]

    @property
    def n_items(self):
        return self._csr.shape[1]

    @property
    def shape(self):
        return self._csr.shape

    @property
    def n_ratings(self):
        """Number of stored (observed) ratings."""
        return int(self._csr.nnz)

    @property
    def rating_min(self):
        return self._scale[0]

    @property
    def rating_max(self):
        return self._scale[1]

    @property
    def scale(self):
        return self._scale

    @property
    def midpoint(self):
        """Middle of the rating scale, the last resort for predictions."""
        return (self._scale[0] + self._scale[1]) / 2.0

    @property
    def rows(self):
        """``rows[u]`` is the list of ``(item_index, rating)`` pairs of user ``u``."""
        return _AxisView(self._csr, "user")

    @property
    def cols(self):
        """``cols[o]`` is the list of ``(user_index, rating)`` pairs of item ``o``."""
        return _AxisView(self._csc, "item")

    @property
    def csr(self):
        """Row-major scipy matrix. Must not be modified."""
        return self._csr

    @property
    def csc(self):
        """Column-major scipy matrix. Must not be modified."""
        return self._csc

    @property
    def pattern(self):
        """
        Float CSR matrix with a 1 for every observed entry, used to compute co-rating counts
        with sparse products.
        """
        if self._pattern is None:
            self._pattern = sp.csr_matrix(
                (np.ones(self.n_ratings), self._csr.indices, self._csr.indptr),
                shape=self.shape,
            )

        return self._pattern

    @property
    def user_ids(self):
        return self._user_ids

    @property
    def item_ids(self):
        return self._item_ids

    def _check_user(self, u):
        if not 0 <= u < self.n_users:
            raise ValidationError(
                "User index {} is out of range for a matrix with {} users.".format(u, self.n_users)
            )

    def _check_item(self, o):
        if not 0 <= o < self.n_items:
            raise ValidationError(
                "Item index {} is out of range for a matrix with {} items.".format(o, self.n_items)
            )

    def row(self, u):
        """
        Returns the observed part of user ``u``'s row.

        :param u: User index.
        :return: Tuple of arrays ``(item_indices, ratings)``, item indices ascending.
        """
        self._check_user(u)
        start, end = self._csr.indptr[u], self._csr.indptr[u + 1]
        return self._csr.indices[start:end], self._csr.data[start:end]

    def col(self, o):
        """
        Returns the observed part of item ``o``'s column.

        :param o: Item index.
        :return: Tuple of arrays ``(user_indices, ratings)``, user indices ascending.
        """
        self._check_item(o)
        start, end = self._csc.indptr[o], self._csc.indptr[o + 1]
        return self._csc.indices[start:end], self._csc.data[start:end]

    def rating(self, u, o):
        """Rating of user ``u`` for item ``o``, 0 if absent."""
        self._check_item(o)
        items, ratings = self.row(u)
        position = np.searchsorted(items, o)

        if position < len(items) and items[position] == o:
            return int(ratings[position])

        return 0

    def is_observed(self, u, o):
        return self.rating(u, o) != 0

    def triplets(self):
        """All observed entries as ``(user, item, rating)`` tuples in row-major order."""
        coo = self._csr.tocoo()
        return list(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))

    def coordinates(self):
        """Observed entries as three arrays ``(users, items, ratings)`` in row-major order."""
        users = np.repeat(np.arange(self.n_users), np.diff(self._csr.indptr))
        return users, self._csr.indices.copy(), self._csr.data.copy()

    def dense(self):
        """Dense ``numpy`` copy with 0 for absent entries. Meant for small matrices."""
        return self._csr.toarray()

    def user_means(self):
        """Mean rating per user, ``nan`` for users without ratings."""
        return self._axis_means(self._csr)

    def item_means(self):
        """Mean rating per item, ``nan`` for items without ratings."""
        return self._axis_means(self._csc)

    @staticmethod
    def _axis_means(compressed):
        counts = np.diff(compressed.indptr)
        segments = np.repeat(np.arange(len(counts)), counts)
        sums = np.bincount(
            segments, weights=compressed.data.astype(np.float64), minlength=len(counts)
        )

        means = np.full(len(counts), np.nan)
        non_empty = counts > 0
        means[non_empty] = sums[non_empty] / counts[non_empty]
        return means

    def global_mean(self):
        """Mean of all observed ratings, ``nan`` for an empty matrix."""
        if self.n_ratings == 0:
            return float("nan")

        return float(self._csr.data.mean())

    def without(self, entries):
        """
        Returns a new matrix with the supplied entries removed (set to absent). Ids, shape and
        scale are kept, so indices remain valid between both matrices.

        :param entries: Iterable of ``(user, item)`` pairs, pairs that are not observed are
                        ignored.
        :return: New :class:`RatingMatrix`.
        """
        users, items, ratings = self.coordinates()
        removed = {(int(u), int(o)) for u, o in entries}

        keep = np.fromiter(
            ((u, o) not in removed for u, o in zip(users.tolist(), items.tolist())),
            dtype=bool,
            count=len(users),
        )

        return RatingMatrix(
            users[keep],
            items[keep],
            ratings[keep],
            self.n_users,
            self.n_items,
            self._scale,
            self._user_ids,
            self._item_ids,
        )

    def content_hash(self):
        """
        SHA-256 digest of shape, scale, ids and the stored ratings. Two matrices with the same
        hash have the same content, it is used as the key for cached similarity matrices.
        """
        return stable_digest(
            self.shape,
            self._scale,
            self._user_ids,
            self._item_ids,
            self._csr.indptr.astype(np.int64).tobytes(),
            self._csr.indices.astype(np.int64).tobytes(),
            self._csr.data.astype(np.int64).tobytes(),
        )

    def user_index(self, user_id):
        """
        Dense index of the user with the supplied raw id.

        :param user_id: Raw id as read from the dataset.
        :return: User index.
        """
        if self._user_lookup is None:
            self._user_lookup = {raw: index for index, raw in enumerate(self._user_ids)}

        try:
            return self._user_lookup[user_id]
        except KeyError:
            raise ValidationError("Unknown user id: {!r}".format(user_id))

    def item_index(self, item_id):
        """Dense index of the item with the supplied raw id."""
        if self._item_lookup is None:
            self._item_lookup = {raw: index for index, raw in enumerate(self._item_ids)}

        try:
            return self._item_lookup[item_id]
        except KeyError:
            raise ValidationError("Unknown item id: {!r}".format(item_id))

    def user_id(self, u):
        self._check_user(u)
        return self._user_ids[u]

    def item_id(self, o):
        self._check_item(o)
        return self._item_ids[o]

    def __repr__(self):
        return "RatingMatrix(n_users={}, n_items={}, n_ratings={}, scale={})".format(
            self.n_users, self.n_items, self.n_ratings, self._scale
        )


def from_triplets(triplets, n_users, n_items, scale=(1, 5), user_ids=None, item_ids=None):
    """
    Builds a validated :class:`RatingMatrix` from ``(user, item, rating)`` triplets.

    :param triplets: Iterable of ``(user_index, item_index, rating)``.
    :param n_users: Number of users.
    :param n_items: Number of items.
    :param scale: Tuple ``(rating_min, rating_max)``.
    :param user_ids: Optional raw ids of the users, one per index.
    :param item_ids: Optional raw ids of the items, one per index.
    :return: Dual-indexed rating matrix.
    """
    rating_min, rating_max = scale

    if rating_min > rating_max:
        raise ValidationError("Invalid rating scale {}: minimum above maximum.".format(scale))

    for ids, count, name in ((user_ids, n_users, "user"), (item_ids, n_items, "item")):
        if ids is not None and len(ids) != count:
            raise ValidationError(
                "Got {} {} ids for {} {}s.".format(len(ids), name, count, name)
            )

    values = np.asarray(list(triplets), dtype=np.float64).reshape(-1, 3)

    if not np.all(np.isfinite(values)) or not np.array_equal(values, np.round(values)):
        raise ValidationError("Indices and ratings must be integers.")

    users, items, ratings = (values[:, column].astype(np.int64) for column in range(3))

    if np.any((users < 0) | (users >= n_users)):
        raise ValidationError(
            "User index {} is out of range [0, {}).".format(
                users[(users < 0) | (users >= n_users)][0], n_users
            )
        )

    if np.any((items < 0) | (items >= n_items)):
        raise ValidationError(
            "Item index {} is out of range [0, {}).".format(
                items[(items < 0) | (items >= n_items)][0], n_items
            )
        )

    invalid = (ratings == 0) | (ratings < rating_min) | (ratings > rating_max)
    if np.any(invalid):
        position = int(np.flatnonzero(invalid)[0])
        raise ValidationError(
            "Rating {} of user {} for item {} is outside the scale [{}, {}] or zero.".format(
                ratings[position], users[position], items[position], rating_min, rating_max
            )
        )

    keys = users * max(n_items, 1) + items
    unique_keys, counts = np.unique(keys, return_counts=True)

    if np.any(counts > 1):
        duplicate = int(unique_keys[counts > 1][0])
        raise ValidationError(
            "Duplicate rating for user {} and item {}.".format(
                duplicate // max(n_items, 1), duplicate % max(n_items, 1)
            )
        )

    return RatingMatrix(users, items, ratings, n_users, n_items, scale, user_ids, item_ids)


def co_rated_count(a, b):
    """
    Number of indices that occur in both of the supplied strictly increasing index lists,
    computed by a sorted merge. For two user rows this is the number of items both users rated,
    for two item columns the number of users that rated both items.

    :param a: Strictly increasing sequence of indices.
    :param b: Strictly increasing sequence of indices.
    :return: Size of the intersection.
    """
    i = j = count = 0
    len_a, len_b = len(a), len(b)

    while i < len_a and j < len_b:
        if a[i] == b[j]:
            count += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1

    return count


def subsample_users(matrix, fraction, seed):
    """
    Keeps a seeded uniform subset of the users together with the items they rated. Indices are
    compacted again, raw ids are preserved. This is used for smoke runs on large datasets.

    :param matrix: Source matrix.
    :param fraction: Fraction of users to keep, in (0, 1].
    :param seed: Seed of the random generator.
    :return: New :class:`RatingMatrix`.
    """
    if not 0 < fraction <= 1:
        raise ValidationError("Subsample fraction must be in (0, 1], got {}.".format(fraction))

    rng = np.random.default_rng(seed)
    n_keep = max(1, int(round(fraction * matrix.n_users))) if matrix.n_users else 0
    kept_users = np.sort(rng.choice(matrix.n_users, size=n_keep, replace=False))

    users, items, ratings = matrix.coordinates()
    keep = np.isin(users, kept_users)
    kept_items = np.unique(items[keep])

    user_map = np.full(matrix.n_users, -1, dtype=np.int64)
    user_map[kept_users] = np.arange(len(kept_users))
    item_map = np.full(matrix.n_items, -1, dtype=np.int64)
    item_map[kept_items] = np.arange(len(kept_items))

    RatingMatrix.log.debug(
        "Subsampled %d of %d users (%d of %d items)",
        len(kept_users),
        matrix.n_users,
        len(kept_items),
        matrix.n_items,
    )

    return RatingMatrix(
        user_map[users[keep]],
        item_map[items[keep]],
        ratings[keep],
        len(kept_users),
        len(kept_items),
        matrix.scale,
        [matrix.user_ids[u] for u in kept_users],
        [matrix.item_ids[o] for o in kept_items],
    )
