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
Loaders for rating datasets. MovieLens records are parsed with scanf_-style format
specifications, one per file format:

 - ``ml100k-data``: ML-100k ``u.data``, ``user<TAB>item<TAB>rating<TAB>timestamp``
 - ``ml100k-split``: the official ``u1.test`` .. ``u5.test`` (and ``.base``) files, same records
 - ``ml1m``: ML-1M ``ratings.dat``, ``UserID::MovieID::Rating::Timestamp``

Raw user and item ids are compacted to dense 0-based indices in ascending id order, the raw ids
are kept on the resulting matrix. Timestamps are parsed and discarded.

Generic ``user,item,rating`` files are read with :func:`load_csv`.

.. _scanf: https://github.com/joshburnett/scanf
"""

import os
import re

import numpy as np
import pandas as pd
from scanf import scanf_compile

from ziprec.core.exceptions import ParseError, ValidationError, ZiprecException
from ziprec.core.logging import has_log
from ziprec.ratings.folds import FoldAssignment
from ziprec.ratings.matrix import from_triplets

MOVIELENS_SCALE = (1, 5)
SPLIT_FOLDS = 5

dataset_formats = ("ml100k-data", "ml100k-split", "ml1m", "csv")

_format_aliases = {"ml100k": "ml100k-data"}

_default_file_names = {"ml100k-data": "u.data", "ml1m": "ratings.dat"}


class RecordFormat:
    """
    Parses one line of a MovieLens file according to a scanf format specification. The
    specification is compiled once and matched exactly against each (stripped) line.

    :param pattern: Scanf format with four ``%d`` fields: user, item, rating, timestamp.
    """

    def __init__(self, pattern):
        self._pattern = pattern

        compiled, self._casts = scanf_compile(pattern)
        self._regex = re.compile("^{}$".format(compiled.pattern))

    @property
    def pattern(self):
        return self._pattern

    def parse(self, line, path, line_number):
        """
        :return: Tuple ``(user_id, item_id, rating)``.
        :raises ParseError: If the line does not match the format.
        """
        match = self._regex.match(line)

        if match is None:
            raise ParseError(
                path,
                line_number,
                "expected a record of the form '{}', got {!r}".format(
                    self._pattern.replace("\t", "<TAB>"), line
                ),
            )

        user_id, item_id, rating, _ = (
            cast(value) for cast, value in zip(self._casts, match.groups())
        )

        return user_id, item_id, rating


record_formats = {
    "ml100k-data": RecordFormat("%d\t%d\t%d\t%d"),
    "ml100k-split": RecordFormat("%d\t%d\t%d\t%d"),
    "ml1m": RecordFormat("%d::%d::%d::%d"),
}


def normalize_format(dataset_format):
    """Maps command line aliases (``ml100k``) to format names and validates the result."""
    dataset_format = _format_aliases.get(dataset_format, dataset_format)

    if dataset_format not in dataset_formats:
        raise ZiprecException(
            "Unknown dataset format '{}'. Valid formats are: {}".format(
                dataset_format, ", ".join(("ml100k",) + dataset_formats)
            )
        )

    return dataset_format


def detect_format(path):
    """
    Guesses the dataset format from a path: a directory with ``u1.test`` holds the ML-100k
    splits, ``u.data`` is ML-100k, ``ratings.dat`` is ML-1M and everything else is read as CSV.

    :param path: File or directory.
    :return: Format name.
    """
    if os.path.isdir(path):
        if os.path.exists(os.path.join(path, "u1.test")):
            return "ml100k-split"

        for dataset_format, file_name in _default_file_names.items():
            if os.path.exists(os.path.join(path, file_name)):
                return dataset_format

        raise ZiprecException("Could not find a known dataset file in directory '{}'.".format(path))

    base_name = os.path.basename(path)

    for dataset_format, file_name in _default_file_names.items():
        if base_name == file_name:
            return dataset_format

    return "csv"


def _resolve_file(path, dataset_format):
    if os.path.isdir(path):
        path = os.path.join(path, _default_file_names[dataset_format])

    if not os.path.isfile(path):
        raise ZiprecException("Dataset file '{}' does not exist.".format(path))

    return path


def _read_records(path, record_format):
    records = []

    with open(path, encoding="latin-1") as data_file:
        for line_number, line in enumerate(data_file, start=1):
            line = line.strip()

            if not line:
                continue

            user_id, item_id, rating = record_format.parse(line, path, line_number)

            if not MOVIELENS_SCALE[0] <= rating <= MOVIELENS_SCALE[1]:
                raise ValidationError(
                    "{}, line {}: rating {} is outside of [{}, {}]".format(
                        path, line_number, rating, *MOVIELENS_SCALE
                    )
                )

            records.append((user_id, item_id, rating))

    return records


def _split_file(directory, fold, kind):
    return os.path.join(directory, "u{}.{}".format(fold, kind))


def _compact(records, scale):
    user_ids = sorted({user_id for user_id, _, _ in records})
    item_ids = sorted({item_id for _, item_id, _ in records})

    user_index = {raw: index for index, raw in enumerate(user_ids)}
    item_index = {raw: index for index, raw in enumerate(item_ids)}

    return from_triplets(
        [(user_index[u], item_index[o], r) for u, o, r in records],
        len(user_ids),
        len(item_ids),
        scale,
        user_ids,
        item_ids,
    )


@has_log
def load_movielens(path, dataset_format="ml100k-data"):
    """
    Loads a MovieLens rating file.

    For ``ml100k-data`` and ``ml1m``, path is the rating file or the directory that contains
    it. For ``ml100k-split``, path is the directory with the official splits, the matrix is
    the union of ``u1.test`` .. ``u5.test`` (which together are exactly ``u.data``). Use
    :func:`load_predefined_folds` to obtain the matching fold assignment.

    :param path: File or directory.
    :param dataset_format: One of ``ml100k-data``, ``ml100k-split``, ``ml1m``.
    :return: :class:`~ziprec.ratings.matrix.RatingMatrix` on the scale 1..5.
    """
    dataset_format = normalize_format(dataset_format)

    if dataset_format == "csv":
        raise ZiprecException("Use load_csv to read CSV files.")

    if dataset_format == "ml100k-split":
        if not os.path.isdir(path):
            raise ZiprecException(
                "The ml100k-split format expects the directory with u1.test .. u5.test."
            )

        records = []
        for fold in range(1, SPLIT_FOLDS + 1):
            records += _read_records(
                _resolve_file(_split_file(path, fold, "test"), dataset_format),
                record_formats[dataset_format],
            )
    else:
        records = _read_records(
            _resolve_file(path, dataset_format), record_formats[dataset_format]
        )

    matrix = _compact(records, MOVIELENS_SCALE)

    load_movielens.log.info(
        "Loaded %s from '%s': %d users, %d items, %d ratings",
        dataset_format,
        path,
        matrix.n_users,
        matrix.n_items,
        matrix.n_ratings,
    )

    return matrix


@has_log
def load_predefined_folds(directory, matrix):
    """
    Builds the fold assignment of the official ML-100k splits: fold i consists of the entries
    in ``u{i}.test``. If the corresponding ``u{i}.base`` file exists it is checked to contain
    exactly the remaining entries, so that masking fold i reproduces the official training set.

    :param directory: Directory with the split files.
    :param matrix: Matrix returned by :func:`load_movielens` for the same directory.
    :return: :class:`~ziprec.ratings.folds.FoldAssignment` with source ``"predefined"``.
    """
    record_format = record_formats["ml100k-split"]
    fold_of = {}

    for fold in range(1, SPLIT_FOLDS + 1):
        test_path = _resolve_file(_split_file(directory, fold, "test"), "ml100k-split")

        for user_id, item_id, _ in _read_records(test_path, record_format):
            entry = (matrix.user_index(user_id), matrix.item_index(item_id))

            if entry in fold_of:
                raise ValidationError(
                    "Rating of user {} for item {} occurs in more than one test file.".format(
                        user_id, item_id
                    )
                )

            fold_of[entry] = fold

    users, items, _ = matrix.coordinates()
    folds = [fold_of.get(entry, 0) for entry in zip(users.tolist(), items.tolist())]

    if len(fold_of) != matrix.n_ratings or 0 in folds:
        raise ValidationError("The test files do not cover the ratings of the matrix exactly.")

    folds = np.asarray(folds, dtype=np.int64)
    assignment = FoldAssignment(SPLIT_FOLDS, users, items, folds, "predefined")

    for fold in range(1, SPLIT_FOLDS + 1):
        base_path = _split_file(directory, fold, "base")

        if os.path.isfile(base_path):
            base_entries = {
                (matrix.user_index(user_id), matrix.item_index(item_id))
                for user_id, item_id, _ in _read_records(base_path, record_format)
            }
            expected = {entry for entry, entry_fold in fold_of.items() if entry_fold != fold}

            if base_entries != expected:
                raise ValidationError(
                    "'{}' is not the complement of the matching test file.".format(base_path)
                )

    load_predefined_folds.log.debug(
        "Loaded predefined folds from '%s', sizes: %s", directory, assignment.sizes()
    )

    return assignment


_canonical_int = r"-?[1-9][0-9]*|0"


def parse_raw_ids(column):
    """Converts a column of id strings to integers if every id is written as a plain integer."""
    if column.str.fullmatch(_canonical_int).all():
        return column.astype(np.int64)

    return column


def _read_fields(path, delimiter):
    try:
        frame = pd.read_csv(
            path,
            sep=delimiter,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        return pd.DataFrame(columns=range(3), dtype=str)
    except pd.errors.ParserError as error:
        match = re.search(r"line (\d+)", str(error))
        raise ParseError(
            path, int(match.group(1)) if match else 0, "more fields than on the first line"
        ) from error

    # Row i of the frame is line i + 1 of the file.
    frame.index = frame.index + 1

    return frame.fillna("").apply(lambda column: column.str.strip())


@has_log
def load_csv(path, delimiter=",", scale=MOVIELENS_SCALE):
    """
    Loads a generic ``user,item,rating`` file. A header line is detected (and skipped) if the
    rating field of the first record is not an integer. Additional columns are ignored, as long
    as no line has more fields than the first one. Raw ids are integers if every id of the
    column is written as a plain integer, strings otherwise.

    :param path: CSV file.
    :param delimiter: Field delimiter.
    :param scale: Tuple ``(rating_min, rating_max)`` of the rating scale.
    :return: :class:`~ziprec.ratings.matrix.RatingMatrix`.
    """
    if not os.path.isfile(path):
        raise ZiprecException("Dataset file '{}' does not exist.".format(path))

    frame = _read_fields(path, delimiter)
    frame = frame[(frame != "").any(axis=1)]
    frame = frame.reindex(columns=range(max(3, frame.shape[1])), fill_value="")

    short = (frame.iloc[:, :3] == "").any(axis=1)
    if short.any():
        line_number = short.idxmax()
        raise ParseError(
            path,
            line_number,
            "expected at least 3 fields, got {}".format((frame.loc[line_number] != "").sum()),
        )

    frame = frame.iloc[:, :3].set_axis(["user", "item", "rating"], axis=1)

    integral = frame["rating"].str.fullmatch(r"[+-]?[0-9]+")
    if not integral.all() and integral.index[~integral][0] == 1:
        frame, integral = frame.drop(index=1), integral.drop(index=1)

    if not integral.all():
        line_number = integral.index[~integral][0]
        raise ParseError(
            path,
            line_number,
            "rating {!r} is not an integer".format(frame.at[line_number, "rating"]),
        )

    ratings = frame["rating"].astype(np.int64)
    outside = (ratings < scale[0]) | (ratings > scale[1]) | (ratings == 0)
    if outside.any():
        line_number = ratings.index[outside][0]
        raise ValidationError(
            "{}, line {}: rating {} is outside of [{}, {}]".format(
                path, line_number, ratings.at[line_number], *scale
            )
        )

    users, user_ids = pd.factorize(parse_raw_ids(frame["user"]), sort=True)
    items, item_ids = pd.factorize(parse_raw_ids(frame["item"]), sort=True)

    matrix = from_triplets(
        zip(users.tolist(), items.tolist(), ratings.tolist()),
        len(user_ids),
        len(item_ids),
        scale,
        user_ids.tolist(),
        item_ids.tolist(),
    )

    load_csv.log.info(
        "Loaded '%s': %d users, %d items, %d ratings",
        path,
        matrix.n_users,
        matrix.n_items,
        matrix.n_ratings,
    )

    return matrix


def load_dataset(path, dataset_format=None, delimiter=","):
    """
    Loads a dataset in any supported format. This is the entry point used by the command
    line front end.

    :param path: File or directory.
    :param dataset_format: Format name or ``None`` to use :func:`detect_format`.
    :param delimiter: Delimiter for CSV files.
    :return: Tuple ``(matrix, folds)``, folds is the predefined
             :class:`~ziprec.ratings.folds.FoldAssignment` for ``ml100k-split`` and ``None``
             for all other formats.
    """
    dataset_format = normalize_format(dataset_format or detect_format(path))

    if dataset_format == "csv":
        return load_csv(path, delimiter), None

    matrix = load_movielens(path, dataset_format)

    if dataset_format == "ml100k-split":
        return matrix, load_predefined_folds(path, matrix)

    return matrix, None


def write_triplets_csv(matrix, path):
    """
    Writes the observed entries of a matrix as ``user,item,rating`` with a header line, using
    raw ids. :func:`load_csv` reads such files back into an equal matrix.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix` to write.
    :param path: Target file.
    """
    users, items, ratings = matrix.coordinates()

    pd.DataFrame(
        {
            "user": np.asarray(matrix.user_ids, dtype=object)[users],
            "item": np.asarray(matrix.item_ids, dtype=object)[items],
            "rating": ratings.astype(np.int64),
        }
    ).to_csv(path, index=False)
