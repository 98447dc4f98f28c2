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
import shutil
import tempfile
import unittest

import numpy as np

from ziprec.ratings.matrix import from_triplets

# Four users, five items. User 3 has rated nothing and item 4 was rated by nobody.
TOY_TRIPLETS = [
    (0, 0, 5),
    (0, 1, 3),
    (0, 2, 4),
    (1, 0, 4),
    (1, 1, 2),
    (1, 3, 5),
    (2, 1, 4),
    (2, 2, 5),
    (2, 3, 1),
]


def assertRaisesNothing(testobj, func, *args, **kwargs):
    """
    unittest does not have an assertRaisesNothing. This function adopted from
    the Mantid testhelpers module provides that functionality.

    :param testobj: A unittest object
    :param func: A callable object
    :param *args: Positional arguments passed to the callable as they are
    :param **kwargs: Keyword arguments, passed on as they are
    """
    try:
        return func(*args, **kwargs)
    except Exception as exc:
        testobj.fail(
            "Assertion error. An exception was caught where none "
            "was expected in %s. Message: %s" % (func.__name__, str(exc))
        )


def toy_matrix():
    return from_triplets(TOY_TRIPLETS, 4, 5)


def random_matrix(n_users, n_items, density, seed=0):
    """Matrix with i.i.d. observed entries, at least one rating per user."""
    rng = np.random.default_rng(seed)
    observed = rng.random((n_users, n_items)) < density
    observed[np.arange(n_users), rng.integers(0, n_items, n_users)] = True
    values = rng.integers(1, 6, (n_users, n_items))

    users, items = np.nonzero(observed)
    triplets = list(zip(users.tolist(), items.tolist(), values[users, items].tolist()))

    return from_triplets(triplets, n_users, n_items)


class TestWithTemporaryDirectory(unittest.TestCase):
    """
    This is an intermediate class that creates an empty directory in the system's temporary
    file directory for every test and deletes it with all content in the tearDown.
    """

    def setUp(self):
        self._tmp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self._tmp_dir)

    def path(self, *parts):
        return os.path.join(self._tmp_dir, *parts)

    def write_file(self, name, lines):
        file_path = self.path(name)
        os.makedirs(os.path.dirname(file_path), exist_ok=True)

        with open(file_path, "w") as fh:
            fh.write("".join(line + "\n" for line in lines))

        return file_path
