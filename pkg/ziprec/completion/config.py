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

from ziprec.core.exceptions import ZiprecException
from ziprec.core.utils import check_limits

fallback_stages = ("user_mean", "item_mean", "global_mean", "midpoint")


class CompletionConfig:
    """
    Parameters of the completion.

    ``alpha`` weighs the user-based term against the item-based term: 1 is pure user-based
    collaborative filtering, 0 pure item-based. When only one of the terms has neighbours
    that carry weight, that term is used alone. When neither has, the stages of ``fallback``
    are tried in order (user mean, item mean, global mean of the training ratings); the
    midpoint of the rating scale always terminates the chain.

    ``literal_denominator`` normalizes each term by the weights of *all* other users (items)
    instead of only those that rated the item (that the user rated). Absent ratings then
    count as 0 and predictions are pulled below the rating scale before clamping; the option
    exists to compare against that reading of the formula.

    :param alpha: Blend weight in [0, 1].
    :param fallback: Ordered fallback stages, a subset of ``fallback_stages``.
    :param literal_denominator: Use the unrestricted normalization.
    """

    def __init__(self, alpha=0.5, fallback=fallback_stages, literal_denominator=False):
        self._alpha = 0.5
        self._fallback = fallback_stages

        self.alpha = alpha
        self.fallback = fallback
        self.literal_denominator = bool(literal_denominator)

    @property
    def alpha(self):
        return self._alpha

    @alpha.setter
    @check_limits(0, 1, name="alpha")
    def alpha(self, new_alpha):
        self._alpha = float(new_alpha)

    @property
    def fallback(self):
        return self._fallback

    @fallback.setter
    def fallback(self, new_fallback):
        new_fallback = tuple(new_fallback)
        unknown = [stage for stage in new_fallback if stage not in fallback_stages]

        if unknown:
            raise ZiprecException(
                "Unknown fallback stage(s): {}. Valid stages are: {}".format(
                    ", ".join(unknown), ", ".join(fallback_stages)
                )
            )

        if "midpoint" not in new_fallback:
            new_fallback += ("midpoint",)

        self._fallback = new_fallback[: new_fallback.index("midpoint") + 1]

    def with_alpha(self, alpha):
        """Copy of this configuration with a different alpha."""
        return CompletionConfig(alpha, self._fallback, self.literal_denominator)

    def as_dict(self):
        return {
            "alpha": self._alpha,
            "fallback": list(self._fallback),
            "literal_denominator": self.literal_denominator,
        }

    def __repr__(self):
        return "CompletionConfig(alpha={}, fallback={}, literal_denominator={})".format(
            self._alpha, self._fallback, self.literal_denominator
        )
