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
Compression-based similarities between users and between items. Each entity is described
by a byte string of its ratings, the strings are compressed with a DEFLATE compressor and
the compressed lengths are turned into similarity scores.
"""

from ziprec.similarity.builder import (
    BuildStats,
    SimilarityBuilder,
    SimilarityMatrix,
    build_similarity,
)
from ziprec.similarity.compressors import (
    CompressorProfile,
    compressed_length,
    pair_compressed_length,
)
from ziprec.similarity.encoding import axes, encode_entity
from ziprec.similarity.measures import (
    compression_similarity,
    kolmogorov_similarity,
    measures,
)
from ziprec.similarity.storage import (
    SimilarityCache,
    load_similarity_csv,
    save_similarity_csv,
)

__all__ = [
    "BuildStats",
    "CompressorProfile",
    "SimilarityBuilder",
    "SimilarityCache",
    "SimilarityMatrix",
    "axes",
    "build_similarity",
    "compressed_length",
    "compression_similarity",
    "encode_entity",
    "kolmogorov_similarity",
    "load_similarity_csv",
    "measures",
    "pair_compressed_length",
    "save_similarity_csv",
]
