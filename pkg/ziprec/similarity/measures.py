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
The two similarity measures. Both are computed from compressed lengths:

 - compression similarity (``cs``), one minus the normalized compression distance,
   ``1 - (C(xy) - min(C(x), C(y))) / max(C(x), C(y))``, clamped to [0, 1]
 - Kolmogorov similarity (``ks``), ``1 / (1 + |C(x) - C(y)|)``, which only needs the
   lengths of the single strings and is therefore much cheaper to build

The ``*_from_lengths`` functions are the formulas on precomputed lengths, they are what the
matrix builders use.
"""

from ziprec.core.exceptions import ZiprecException
from ziprec.similarity.compressors import compressed_length, pair_compressed_length

measures = ("ks", "cs")


def check_measure(measure):
    measure = str(measure).lower()

    if measure not in measures:
        raise ZiprecException(
            "Unknown similarity measure '{}', valid measures are: {}".format(
                measure, ", ".join(measures)
            )
        )

    return measure


def cs_from_lengths(length_x, length_y, length_xy):
    """Compression similarity from C(x), C(y) and C(xy), clamped to [0, 1]."""
    largest = max(length_x, length_y)

    if largest <= 0:
        return 1.0

    score = 1.0 - (length_xy - min(length_x, length_y)) / largest
    return min(1.0, max(0.0, score))


def ks_from_lengths(length_x, length_y):
    """Kolmogorov similarity from C(x) and C(y)."""
    return 1.0 / (1.0 + abs(length_x - length_y))


def compression_similarity(profile, x, y, symmetric=True):
    """
    Compression similarity of two description strings.

    :param profile: :class:`~ziprec.similarity.compressors.CompressorProfile`.
    :param x: First description.
    :param y: Second description.
    :param symmetric: Use the mean length of both concatenation orders (default) instead of
                      C(xy) alone.
    :return: Score in [0, 1], 1 if both strings are empty.
    """
    if not x and not y:
        return 1.0

    length_xy = (
        pair_compressed_length(profile, x, y) if symmetric else compressed_length(profile, x + y)
    )

    return cs_from_lengths(compressed_length(profile, x), compressed_length(profile, y), length_xy)


def kolmogorov_similarity(profile, x, y):
    """
    Kolmogorov similarity of two description strings.

    :param profile: :class:`~ziprec.similarity.compressors.CompressorProfile`.
    :param x: First description.
    :param y: Second description.
    :return: Score in (0, 1].
    """
    return ks_from_lengths(compressed_length(profile, x), compressed_length(profile, y))
