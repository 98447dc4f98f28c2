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
Compressors whose output length approximates the Kolmogorov complexity of a description
string. All available algorithms are DEFLATE based:

 - ``zlib``: zlib stream (RFC 1950) with its 2 byte header and Adler-32 trailer (default)
 - ``gzip``: gzip container (RFC 1952) with a fixed modification time
 - ``deflate``: raw DEFLATE stream (RFC 1951), no header or trailer

Header and trailer bytes are part of the measured length, so even an empty string has a
positive length with ``zlib`` and ``gzip``.
"""

import gzip
import zlib
from dataclasses import dataclass

from ziprec.core.exceptions import CompressorError, ZiprecException
from ziprec.core.utils import check_limits


def _zlib_compress(data, level):
    return zlib.compress(data, level)


def _gzip_compress(data, level):
    return gzip.compress(data, compresslevel=level, mtime=0)


def _deflate_compress(data, level):
    compressor = zlib.compressobj(level, zlib.DEFLATED, -zlib.MAX_WBITS)
    return compressor.compress(data) + compressor.flush()


compressors = {
    "zlib": _zlib_compress,
    "gzip": _gzip_compress,
    "deflate": _deflate_compress,
}


@dataclass(frozen=True)
class CompressorProfile:
    """
    Compressor selection. Profiles are immutable and hashable, two equal profiles give equal
    lengths for equal input.

    :param algorithm: One of ``zlib``, ``gzip``, ``deflate``.
    :param level: Compression level 0..9.
    """

    algorithm: str = "zlib"
    level: int = 9

    def __post_init__(self):
        if self.algorithm not in compressors:
            raise ZiprecException(
                "Unknown compressor '{}', valid compressors are: {}".format(
                    self.algorithm, ", ".join(compressors)
                )
            )

        self._check_level(self.level)

    @check_limits(0, 9, name="compression level")
    def _check_level(self, level):
        pass

    def compressed_length(self, data):
        return compressed_length(self, data)

    def describe(self):
        return "{}-{}".format(self.algorithm, self.level)


def compressed_length(profile, data):
    """
    Length in bytes of the complete compressed stream of data.

    :param profile: :class:`CompressorProfile`.
    :param data: Bytes to compress.
    :return: Length in bytes.
    :raises CompressorError: If the compressor backend fails.
    """
    try:
        return len(compressors[profile.algorithm](data, profile.level))
    except (zlib.error, ValueError, TypeError) as e:
        raise CompressorError(
            "Compressor {} failed on {} bytes: {}".format(profile.describe(), len(data), e)
        ) from e


def pair_compressed_length(profile, x, y):
    """
    Symmetrized length of the concatenation of two strings, the mean of C(xy) and C(yx).
    Real compressors do not give the same length for both orders.
    """
    return (compressed_length(profile, x + y) + compressed_length(profile, y + x)) / 2.0
