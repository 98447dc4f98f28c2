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
Human and machine readable output of evaluation runs.
"""

import json
import os

import numpy as np


def render_table(reports):
    """
    Renders a plain text table with one row per method and dataset and one column per fold,
    followed by the mean RMSE.

    :param reports: List of :class:`~ziprec.evaluation.crossval.EvaluationReport`.
    :return: Table as a string.
    """
    n_folds = max((len(report.folds) for report in reports), default=0)
    header = ["method", "dataset"] + ["fold {}".format(i + 1) for i in range(n_folds)] + ["mean"]

    rows = []
    for report in reports:
        fold_cells = ["{:.4f}".format(value) for value in report.fold_rmse]
        fold_cells += [""] * (n_folds - len(fold_cells))
        mean = "{:.4f}".format(report.mean_rmse)
        rows.append([report.method, report.dataset] + fold_cells + [mean])

    widths = [max(len(row[column]) for row in [header] + rows) for column in range(len(header))]

    def format_row(cells):
        return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

    lines = [format_row(header), format_row(["-" * width for width in widths])]
    lines += [format_row(row) for row in rows]

    return "\n".join(lines) + "\n"


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()

    raise TypeError("Object of type {} is not JSON serializable".format(type(value).__name__))


def _write_json(content, path):
    with open(path, "w") as json_file:
        json.dump(content, json_file, indent=2, default=_json_default)
        json_file.write("\n")


def write_report(report, directory, table_reports=None):
    """
    Writes ``report.json`` and ``report.txt`` into directory, which is created if necessary.

    :param report: :class:`~ziprec.evaluation.crossval.EvaluationReport` for the JSON file.
    :param directory: Output directory.
    :param table_reports: Reports listed in the text table, defaults to ``[report]``.
    :return: Tuple with the paths of the two files.
    """
    os.makedirs(directory, exist_ok=True)

    json_path = os.path.join(directory, "report.json")
    text_path = os.path.join(directory, "report.txt")

    _write_json(report.as_dict(), json_path)

    with open(text_path, "w") as text_file:
        text_file.write(render_table(table_reports or [report]))

    return json_path, text_path


def write_id_maps(matrix, directory):
    """
    Writes ``ids.json`` with the raw user and item ids in index order, which maps the dense
    indices used in logs and reports back to the dataset.

    :param matrix: :class:`~ziprec.ratings.matrix.RatingMatrix` that was evaluated.
    :param directory: Output directory.
    :return: Path of the file.
    """
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, "ids.json")
    _write_json({"users": list(matrix.user_ids), "items": list(matrix.item_ids)}, path)

    return path
