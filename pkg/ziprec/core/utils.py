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
This module contains some useful helper classes and functions that are not specific to a certain
module of ziprec.
"""

import functools
import hashlib
from datetime import datetime

from ziprec.core.exceptions import LimitViolationException, ZiprecException


def dict_strict_update(base_dict, update_dict):
    """
    This function updates base_dict with update_dict if and only if update_dict does not contain
    keys that are not already in base_dict. It is essentially a more strict interpretation of the
    term "updating" the dict. It is used to overlay configuration files onto the defaults, so that
    a misspelled option is reported instead of silently ignored.

    If update_dict contains keys that are not in base_dict, a ZiprecException is raised.

    :param base_dict: The dict that is to be updated. This dict is modified.
    :param update_dict: The dict containing the new values.
    """
    additional_keys = set(update_dict.keys()) - set(base_dict.keys())
    if len(additional_keys) > 0:
        raise ZiprecException(
            "The configuration contains keys that are not known: {}. "
            "Valid keys are: {}".format(
                ", ".join(sorted(map(str, additional_keys))),
                ", ".join(sorted(map(str, base_dict.keys()))),
            )
        )

    base_dict.update(update_dict)


def seconds_since(start):
    """
    This is a small helper function that returns the elapsed seconds
    since start using datetime.datetime.now().

    :param start: Start time.
    :return: Elapsed seconds since start time.
    """
    return (datetime.now() - start).total_seconds()


def milliseconds_since(start):
    """Same as :func:`seconds_since`, in milliseconds."""
    return seconds_since(start) * 1000.0


def stable_digest(*parts):
    """
    Returns a hex SHA-256 digest over the string representations of the supplied parts. The
    parts are separated so that ``("ab", "c")`` and ``("a", "bc")`` do not collide.

    :param parts: Objects that are converted with ``str`` (bytes are used as they are).
    :return: Hex digest string.
    """
    digest = hashlib.sha256()

    for part in parts:
        data = part if isinstance(part, bytes) else str(part).encode("utf-8")
        digest.update(str(len(data)).encode("ascii"))
        digest.update(b"\x00")
        digest.update(data)

    return digest.hexdigest()


class check_limits:
    """
    This decorator helps to make sure that the parameter of a property setter (or any other
    method with one argument) is within certain numerical limits.

    It's possible to set static limits using floats or ints:

    .. sourcecode:: Python

        class CompletionConfig:
            _alpha = 0.5

            @property
            def alpha(self):
                return self._alpha

            @alpha.setter
            @check_limits(0, 1)
            def alpha(self, new_value):
                self._alpha = new_value

    Limits can also be strings, which are the names of attributes of the object the decorated
    method belongs to. If a limit is ``None`` (default), the value is not limited in that
    direction.

    If the value is outside the specified limits, the decorated function is not called and a
    :class:`~ziprec.core.exceptions.LimitViolationException` is raised. The optional ``name``
    is used in the exception message, so that a user can tell which parameter was rejected.

    :param lower: Numerical lower limit or name of attribute that contains limit.
    :param upper: Numerical upper limit or name of attribute that contains limit.
    :param name: Name of the parameter for error messages.
    """

    def __init__(self, lower=None, upper=None, name=None):
        self._lower = lower
        self._upper = upper
        self._name = name

    def __call__(self, f):
        name = self._name or f.__name__

        @functools.wraps(f)
        def limit_checked(obj, new_value):
            lower = getattr(obj, self._lower) if isinstance(self._lower, str) else self._lower
            upper = getattr(obj, self._upper) if isinstance(self._upper, str) else self._upper

            if (lower is None or lower <= new_value) and (upper is None or new_value <= upper):
                return f(obj, new_value)

            raise LimitViolationException(
                "{} = {!r} is outside limits ({!r}, {!r})".format(name, new_value, lower, upper)
            )

        return limit_checked
