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
Rating data: the dual-indexed sparse :class:`~ziprec.ratings.matrix.RatingMatrix`, loaders
for MovieLens and generic triplet files, fold splitting and synthetic data generation.
"""

from ziprec.ratings.folds import FoldAssignment, mask_fold, split_folds
from ziprec.ratings.loaders import (
    detect_format,
    load_csv,
    load_dataset,
    load_movielens,
    load_predefined_folds,
    write_triplets_csv,
)
from ziprec.ratings.matrix import RatingMatrix, co_rated_count, from_triplets, subsample_users
from ziprec.ratings.synthetic import generate_synthetic, numerical_rank

__all__ = [
    "FoldAssignment",
    "RatingMatrix",
    "co_rated_count",
    "detect_format",
    "from_triplets",
    "generate_synthetic",
    "load_csv",
    "load_dataset",
    "load_movielens",
    "load_predefined_folds",
    "mask_fold",
    "numerical_rank",
    "split_folds",
    "subsample_users",
    "write_triplets_csv",
]
