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
This module contains everything logging-related in ziprec. There is one relevant
module level variable that defines the default log format, ``default_log_format``.

All places that use logging in ziprec prefix their logger names with ``ziprec`` so
that the logs of long similarity builds and cross-validation runs can be controlled
separately when ziprec is used as a library. The library itself never installs handlers,
that is left to the command line front end (see :mod:`ziprec.scripts.run`) or to the
application embedding ziprec. Please refer to the documentation of the standard
`logging`_ library for how to configure levels and handlers.

.. _logging: https://docs.python.org/3/library/logging.html
"""

import logging
from typing import Callable, ParamSpec, Protocol, Type, TypeVar, overload


class HasLog(Protocol):
    log: logging.Logger


P = ParamSpec("P")
T = TypeVar("T")

root_logger_name = "ziprec"
default_log_format = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@overload
def has_log(target: Type[T]) -> Type[T]: ...
@overload
def has_log(target: Callable[P, T]) -> Callable[P, T]: ...


def has_log(target):
    """
    Decorates a class or a free function so that it carries its own logger.

    Two members are attached to the target:

     - ``log``, a ``logging.Logger`` named after the target, e.g. ``ziprec.SimilarityBuilder``.
     - ``_set_logging_context``, which renames that logger for one instance.

    A string context is inserted verbatim after the ``ziprec`` prefix, any other object
    contributes its class name. The similarity builders use this to log as
    ``ziprec.user.SimilarityBuilder`` and ``ziprec.item.SimilarityBuilder``.

    .. sourcecode:: Python

        from ziprec.core.logging import has_log


        @has_log
        class FoldRunner:
            def run(self, fold):
                self.log.debug("Evaluating fold %d", fold)


        @has_log
        def load_dataset(path):
            load_dataset.log.info("Reading ratings from %s", path)

    :param target: Class or function that receives the logger.
    """
    logger_name = target.__name__

    def get_logger_name(context: object = None) -> str:
        log_names = [root_logger_name, logger_name]

        if context is not None:
            log_names.insert(1, context if isinstance(context, str) else context.__class__.__name__)

        return ".".join(log_names)

    def _set_logging_context(obj: HasLog, context: object) -> None:
        """Points ``obj.log`` at the logger for ``context``, ``None`` restores the plain name."""
        obj.log = logging.getLogger(get_logger_name(context))

    target.log = logging.getLogger(get_logger_name())
    target._set_logging_context = _set_logging_context

    return target
