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
Defines exception types specific to ziprec. The main intention of these exception types is
that they can be caught and meaningful messages can be displayed to the user, the command
line front end turns every :class:`ZiprecException` into a message and exit code 1.
"""


class ZiprecException(Exception):
    """
    This exception type is used to distinguish exceptions that are expected
    from unexpected ones, for example malformed input files or invalid parameters.
    """


class ValidationError(ZiprecException):
    """
    Raised when data violates an invariant of the domain types, for example a rating outside
    of the rating scale, a duplicate (user, item) pair or an index that is out of range.
    """


class ParseError(ZiprecException):
    """
    Raised by the dataset loaders when a line of an input file can not be parsed.

    :param path: File that was being read.
    :param line_number: 1-based number of the offending line.
    :param message: Description of the problem.
    """

    def __init__(self, path, line_number, message):
        super(ParseError, self).__init__(
            "{}, line {}: {}".format(path, line_number, message)
        )
        self.path = path
        self.line_number = line_number


class MissingPredictionError(ValidationError):
    """
    Raised when an error metric is asked to score a ground truth entry for which no
    prediction exists.
    """


class LimitViolationException(ZiprecException):
    """
    Raised when a numerical parameter is outside of its allowed range. It is for example
    raised by :class:`~ziprec.core.utils.check_limits`.
    """


class CompressorError(RuntimeError):
    """
    Raised when the compressor backend fails. It is an internal error and not derived from
    :class:`ZiprecException`, so it is never reported as a user error.
    """
