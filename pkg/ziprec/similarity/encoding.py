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
Description strings of users and items. A user is described by the items it rated and the
ratings it gave, an item by the users that rated it and their ratings. The pairs are written
as decimal ``index:rating`` in ascending index order and joined with ``;``, for example
``b"2:5;7:3"``. Separators make the encoding injective, which a plain concatenation of
multi-digit indices and ratings would not be.
"""

from ziprec.core.exceptions import ZiprecException

axes = ("user", "item")


def check_axis(axis):
    if axis not in axes:
        raise ZiprecException(
            "Unknown axis '{}', valid axes are: {}".format(axis, ", ".join(axes))
        )

    return axis


def order_of(matrix, axis):
    """Number of entities along axis, users or items."""
    return matrix.n_users if check_axis(axis) == "user" else matrix.n_items


def entity_ids(matrix, axis):
    """Raw ids of the entities along axis."""
    return matrix.user_ids if check_axis(axis) == "user" else matrix.item_ids


def encode_entity(matrix, axis, index):
    """
    Description string of one user or item.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param axis: ``"user"`` (row ``index``) or ``"item"`` (column ``index``).
    :param index: Dense index of the entity.
    :return: ASCII bytes, empty for an entity without ratings.
    """
    indices, ratings = matrix.row(index) if check_axis(axis) == "user" else matrix.col(index)

    return b";".join(
        b"%d:%d" % (position, rating)
        for position, rating in zip(indices.tolist(), ratings.tolist())
    )


def encode_all(matrix, axis):
    """List of the description strings of all entities along axis."""
    return [encode_entity(matrix, axis, index) for index in range(order_of(matrix, axis))]
