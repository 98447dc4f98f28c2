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
Evaluation harness: RMSE, k-fold cross-validation of the completion, simple mean baselines
and report output.
"""

from ziprec.evaluation.baselines import baseline_kinds, baseline_predict
from ziprec.evaluation.crossval import (
    EvaluationReport,
    FoldResult,
    alpha_grid,
    best_report,
    cross_validate,
    evaluate_baseline,
    sweep_alpha,
)
from ziprec.evaluation.metrics import rmse
from ziprec.evaluation.report import render_table, write_id_maps, write_report

__all__ = [
    "EvaluationReport",
    "FoldResult",
    "alpha_grid",
    "baseline_kinds",
    "baseline_predict",
    "best_report",
    "cross_validate",
    "evaluate_baseline",
    "render_table",
    "rmse",
    "sweep_alpha",
    "write_id_maps",
    "write_report",
]
