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

import os
import unittest

from mock import patch
from parameterized import parameterized

from ziprec.core.exceptions import LimitViolationException
from ziprec.core.parallel import WorkerPool, shared_state


def scaled(value):
    return value * shared_state()["factor"]


def process_id(_):
    return os.getpid()


class TestWorkerPool(unittest.TestCase):
    @parameterized.expand([("inline", 1), ("processes", 3)])
    def test_results_in_input_order(self, _, workers):
        result = WorkerPool(workers).map(scaled, range(20), shared={"factor": 3})

        self.assertEqual(result, [3 * i for i in range(20)])

    def test_inline_does_not_start_processes(self):
        with patch("ziprec.core.parallel._get_context") as context_mock:
            result = WorkerPool(1).map(process_id, range(5))

        context_mock.assert_not_called()
        self.assertEqual(set(result), {os.getpid()})

    def test_single_item_runs_inline(self):
        with patch("ziprec.core.parallel._get_context") as context_mock:
            WorkerPool(4).map(scaled, [2], shared={"factor": 1})

        context_mock.assert_not_called()

    def test_shared_state_is_restored_after_inline_map(self):
        WorkerPool(1).map(scaled, range(3), shared={"factor": 2})

        self.assertNotIn("factor", shared_state())

    def test_empty_items(self):
        self.assertEqual(WorkerPool(2).map(scaled, []), [])

    @parameterized.expand([(0,), (-2,)])
    def test_invalid_worker_count(self, workers):
        self.assertRaises(LimitViolationException, WorkerPool, workers)
