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
Persistence of similarity matrices: a dense CSV dump for inspection and a binary cache that
avoids rebuilding expensive matrices, for example when the same training split is completed
with several blending weights.
"""

import os
import tempfile
import zipfile

import numpy as np
import pandas as pd
import semantic_version

from ziprec import __version__
from ziprec.core.exceptions import ZiprecException
from ziprec.core.logging import has_log
from ziprec.core.utils import stable_digest
from ziprec.ratings.loaders import parse_raw_ids
from ziprec.similarity.builder import SimilarityMatrix
from ziprec.similarity.compressors import CompressorProfile
from ziprec.similarity.encoding import check_axis


def save_similarity_csv(similarity, path):
    """
    Writes a similarity matrix as dense CSV. The header is ``id`` followed by the raw ids of
    the entities, every following row starts with the id of its entity.

    :param similarity: :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    :param path: Target file.
    """
    pd.DataFrame(
        similarity.values,
        index=pd.Index(similarity.ids, name="id"),
        columns=list(similarity.ids),
    ).to_csv(path, float_format="%.17g")


def load_similarity_csv(path, axis):
    """
    Reads a file written by :func:`save_similarity_csv`.

    :param path: CSV file.
    :param axis: ``"user"`` or ``"item"``.
    :return: :class:`~ziprec.similarity.builder.SimilarityMatrix`.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        frame = None

    if frame is None or frame.columns[0] != "id" or frame.shape != (len(frame), len(frame) + 1):
        raise ZiprecException("'{}' is not a similarity matrix dump.".format(path))

    ids = parse_raw_ids(frame["id"]).tolist()
    values = frame.iloc[:, 1:].astype(np.float64).to_numpy()

    return SimilarityMatrix(check_axis(axis), values, ids)


@has_log
class SimilarityCache:
    """
    Directory of cached similarity matrices. Entries are ``.npz`` files named by a digest of
    the rating matrix content, the axis, the measure and the compressor profile, so a cached
    matrix is only reused for exactly the same input.

    Each file records the ziprec version that wrote it. Files written by a different major
    version are ignored.

    :param directory: Cache directory, created if it does not exist.
    """

    def __init__(self, directory):
        self._directory = directory
        os.makedirs(directory, exist_ok=True)

    @property
    def directory(self):
        return self._directory

    def key(self, matrix, axis, measure, profile):
        return stable_digest(
            matrix.content_hash(), check_axis(axis), measure, profile.algorithm, profile.level
        )

    def path(self, matrix, axis, measure, profile):
        return os.path.join(
            self._directory, "{}.npz".format(self.key(matrix, axis, measure, profile))
        )

    def load(self, matrix, axis, measure, profile):
        """
        Unreadable files (for example left behind by an interrupted run) count as a miss.

        :return: Cached :class:`~ziprec.similarity.builder.SimilarityMatrix` or ``None``.
        """
        path = self.path(matrix, axis, measure, profile)

        if not os.path.isfile(path):
            self.log.debug("Cache miss for %s/%s: %s", axis, measure, path)
            return None

        try:
            with np.load(path, allow_pickle=False) as data:
                written_by = semantic_version.Version(str(data["version"]))
                values = data["values"]
        except (OSError, EOFError, ValueError, KeyError, zipfile.BadZipFile) as error:
            self.log.warning("Ignoring unreadable cache file '%s': %s", path, error)
            return None

        if written_by.major != semantic_version.Version(__version__).major:
            self.log.warning(
                "Ignoring cache file '%s' written by incompatible version %s.", path, written_by
            )
            return None

        n = matrix.n_users if axis == "user" else matrix.n_items
        if values.shape != (n, n):
            self.log.warning("Ignoring cache file '%s' with shape %s.", path, values.shape)
            return None

        self.log.debug("Cache hit for %s/%s: %s", axis, measure, path)

        ids = matrix.user_ids if axis == "user" else matrix.item_ids
        return SimilarityMatrix(axis, values, ids, measure, profile)

    def store(self, matrix, similarity):
        """
        Writes a similarity matrix built from matrix to the cache. The file is written under a
        temporary name and renamed, so readers never see a partial entry.
        """
        profile = similarity.profile or CompressorProfile()
        path = self.path(matrix, similarity.axis, similarity.measure, profile)

        cache_file = tempfile.NamedTemporaryFile(
            dir=self._directory, prefix=".", suffix=".tmp", delete=False
        )

        try:
            with cache_file:
                np.savez(cache_file, values=similarity.values, version=np.array(__version__))

            os.replace(cache_file.name, path)
        except BaseException:
            os.unlink(cache_file.name)
            raise

        self.log.debug("Stored %s/%s similarity in %s", similarity.axis, similarity.measure, path)
        return path
