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
import numpy as np
import pandas as pd

from ziprec.completion.engine import source_names


def write_completed_csv(completed, path):
    """
    Writes a completed matrix as ``user,item,score,source`` triplets with raw ids, one line
    per cell in row-major order. Observed cells carry their rating and the source
    ``observed``.

    :param completed: :class:`~ziprec.completion.engine.CompletedMatrix`.
    :param path: Target file.
    """
    base = completed.base
    users, items = np.indices(base.shape).reshape(2, -1)

    pd.DataFrame(
        {
            "user": np.asarray(base.user_ids, dtype=object)[users],
            "item": np.asarray(base.item_ids, dtype=object)[items],
            "score": completed.scores.ravel(),
            "source": np.asarray(source_names, dtype=object)[completed.sources.ravel()],
        }
    ).to_csv(path, index=False, float_format="%.6f")
