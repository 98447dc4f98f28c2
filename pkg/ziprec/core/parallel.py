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
A small worker pool for the row-parallel kernels of ziprec. Similarity builds and matrix
completion both decompose into independent tasks (one per matrix row) that read the same
immutable inputs, so the pool installs those inputs once per worker process and then maps
a module level task function over row indices.

With a single worker everything runs inline in the calling process, which is what tests
and small datasets use. The results are returned in input order in both cases, so callers
assemble identical outputs regardless of the worker count.
"""

import multiprocessing as mp

from ziprec.core.logging import has_log
from ziprec.core.utils import check_limits

_shared_state = {}


def _install_shared_state(state):
    _shared_state.clear()
    _shared_state.update(state)


def shared_state():
    """
    Returns the read-only state installed for the currently running :meth:`WorkerPool.map`.
    Task functions use this instead of receiving large arguments with every task.
    """
    return _shared_state


def _get_context():
    # Forked workers inherit the shared state without pickling it.
    if "fork" in mp.get_all_start_methods():
        return mp.get_context("fork")

    return mp.get_context()


@has_log
class WorkerPool:
    """
    Maps a task function over a list of items, either inline or on a pool of processes.

    .. sourcecode:: Python

        def square_row(u):
            return shared_state()["matrix"][u] ** 2

        rows = WorkerPool(4).map(square_row, range(n), shared={"matrix": matrix})

    :param workers: Number of worker processes, 1 runs tasks in the calling process.
    """

    def __init__(self, workers=1):
        self._workers = 1
        self.workers = workers

    @property
    def workers(self):
        """Number of worker processes, at least 1."""
        return self._workers

    @workers.setter
    @check_limits(lower=1, name="workers")
    def workers(self, new_workers):
        self._workers = int(new_workers)

    def map(self, function, items, shared=None):
        """
        Applies function to every item and returns the list of results in item order.

        :param function: Module level callable taking one item.
        :param items: Iterable of task arguments.
        :param shared: Dict of read-only objects exposed through :func:`shared_state`.
        :return: List of results.
        """
        items = list(items)
        shared = shared or {}

        if self._workers == 1 or len(items) < 2:
            return self._map_inline(function, items, shared)

        processes = min(self._workers, len(items))
        chunksize = max(1, len(items) // (processes * 8))

        self.log.debug(
            "Mapping %s over %d items with %d processes (chunksize %d)",
            getattr(function, "__name__", function),
            len(items),
            processes,
            chunksize,
        )

        with _get_context().Pool(
            processes, initializer=_install_shared_state, initargs=(shared,)
        ) as pool:
            return pool.map(function, items, chunksize)

    def _map_inline(self, function, items, shared):
        previous = dict(_shared_state)
        _install_shared_state(shared)

        try:
            return [function(item) for item in items]
        finally:
            _install_shared_state(previous)
