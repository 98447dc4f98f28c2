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
Completion of rating matrices: every missing entry is predicted as a blend of a user-based
and an item-based weighted average of observed ratings.
"""

from ziprec.completion.config import CompletionConfig, fallback_stages
from ziprec.completion.engine import (
    CompletedMatrix,
    CompletionContext,
    RowTerms,
    blend_row,
    complete_matrix,
    complete_row,
    item_term,
    predict,
    recommend,
    row_terms,
    source_names,
    user_term,
)
from ziprec.completion.export import write_completed_csv

__all__ = [
    "CompletedMatrix",
    "CompletionConfig",
    "CompletionContext",
    "RowTerms",
    "blend_row",
    "complete_matrix",
    "complete_row",
    "fallback_stages",
    "item_term",
    "predict",
    "recommend",
    "row_terms",
    "source_names",
    "user_term",
    "write_completed_csv",
]
