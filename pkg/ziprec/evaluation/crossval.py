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
k-fold cross-validation. For every fold the fold's entries are masked out of the matrix,
both similarity matrices are built from the remaining training entries only, the held-out
cells are predicted and scored with RMSE.

The similarities and the user/item terms of a fold do not depend on alpha, only the final
blend does. :func:`sweep_alpha` therefore evaluates a whole grid of alphas with a single build
and a single term evaluation per fold, :func:`cross_validate` is the single-alpha case.
"""

from dataclasses import dataclass, field
from datetime import datetime

import numpy as np

from ziprec.completion.config import CompletionConfig
from ziprec.completion.engine import CompletionContext, blend_row, row_terms
from ziprec.core.logging import has_log
from ziprec.core.parallel import WorkerPool, shared_state
from ziprec.core.utils import milliseconds_since
from ziprec.evaluation.baselines import baseline_scores, check_kind
from ziprec.evaluation.metrics import rmse
from ziprec.ratings.folds import mask_fold, split_folds
from ziprec.similarity.builder import build_similarity
from ziprec.similarity.compressors import CompressorProfile
from ziprec.similarity.measures import check_measure

alpha_grid = tuple(round(step / 10.0, 1) for step in range(11))


@dataclass
class FoldResult:
    fold: int
    rmse: float
    sim_build_ms: float = 0.0
    complete_ms: float = 0.0

    def as_dict(self):
        return {
            "fold": self.fold,
            "rmse": self.rmse,
            "sim_build_ms": self.sim_build_ms,
            "complete_ms": self.complete_ms,
        }


@dataclass
class EvaluationReport:
    """
    Result of a cross-validation run. ``measure`` is ``ks`` or ``cs`` for the completion and
    the baseline kind for baselines, which have no alpha.
    """

    dataset: str
    measure: str
    alpha: float
    folds: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def fold_rmse(self):
        return [result.rmse for result in self.folds]

    @property
    def mean_rmse(self):
        return float(np.mean(self.fold_rmse)) if self.folds else float("nan")

    @property
    def method(self):
        if self.alpha is None:
            return self.measure

        return "{} alpha={:.2f}".format(self.measure.upper(), self.alpha)

    def as_dict(self):
        return {
            "dataset": self.dataset,
            "measure": self.measure,
            "alpha": self.alpha,
            "folds": [result.as_dict() for result in self.folds],
            "mean_rmse": self.mean_rmse,
            "config": self.config,
        }


def _group_by_user(test):
    cells = {}

    for u, o, _ in test:
        cells.setdefault(u, []).append(o)

    return {u: np.asarray(items, dtype=np.int64) for u, items in sorted(cells.items())}


def _test_terms_task(u):
    state = shared_state()
    return row_terms(state["context"], u).select(state["cells"][u])


def _config_echo(matrix, folds, seed, profile, config):
    echo = {
        "seed": seed,
        "fold_source": folds.describe(),
        "n_users": matrix.n_users,
        "n_items": matrix.n_items,
        "n_ratings": matrix.n_ratings,
    }

    if profile is not None:
        echo["compressor"] = profile.describe()

    if config is not None:
        echo["fallback"] = list(config.fallback)
        echo["literal_denominator"] = config.literal_denominator

    return echo


@has_log
def sweep_alpha(
    matrix,
    alphas=alpha_grid,
    measure="ks",
    config=None,
    profile=None,
    seed=0,
    k=5,
    folds=None,
    workers=1,
    cache=None,
    dataset="dataset",
):
    """
    Cross-validates the completion for several values of alpha.

    :param matrix: Full :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param alphas: Values of alpha to evaluate.
    :param measure: ``"ks"`` or ``"cs"``.
    :param config: :class:`~ziprec.completion.config.CompletionConfig` for the fallback chain
                   and normalization, its alpha is ignored.
    :param profile: :class:`~ziprec.similarity.compressors.CompressorProfile`.
    :param seed: Seed for the random fold split.
    :param k: Number of folds for the random split.
    :param folds: Predefined :class:`~ziprec.ratings.folds.FoldAssignment`, replaces the
                  random split.
    :param workers: Number of worker processes.
    :param cache: Optional :class:`~ziprec.similarity.storage.SimilarityCache`.
    :param dataset: Name of the dataset for the report.
    :return: List of :class:`EvaluationReport`, one per alpha in the given order.
    """
    measure = check_measure(measure)
    config = config or CompletionConfig()
    profile = profile or CompressorProfile()
    folds = folds if folds is not None else split_folds(matrix, k, seed)
    configs = [config.with_alpha(alpha) for alpha in alphas]
    pool = WorkerPool(workers)

    echo = _config_echo(matrix, folds, seed, profile, config)
    reports = [EvaluationReport(dataset, measure, cfg.alpha, [], dict(echo)) for cfg in configs]

    for fold in range(1, folds.k + 1):
        train, test = mask_fold(matrix, folds, fold)

        start = datetime.now()
        user_similarity = build_similarity(train, "user", measure, profile, workers, cache)
        item_similarity = build_similarity(train, "item", measure, profile, workers, cache)
        sim_build_ms = milliseconds_since(start)

        start = datetime.now()
        context = CompletionContext(
            train, user_similarity, item_similarity, config.literal_denominator
        )
        cells = _group_by_user(test)
        terms = pool.map(
            _test_terms_task, list(cells), shared={"context": context, "cells": cells}
        )
        terms_ms = milliseconds_since(start)

        for cfg, report in zip(configs, reports):
            start = datetime.now()
            predicted = {}

            for row in terms:
                items = cells[row.user]
                scores, _ = blend_row(row, context, cfg, items)
                predicted.update(zip(((row.user, o) for o in items.tolist()), scores.tolist()))

            report.folds.append(
                FoldResult(
                    fold, rmse(test, predicted), sim_build_ms, terms_ms + milliseconds_since(start)
                )
            )

        sweep_alpha.log.info(
            "%s fold %d/%d: %d test entries, similarities %.0f ms, best RMSE %.4f",
            dataset,
            fold,
            folds.k,
            len(test),
            sim_build_ms,
            min(report.folds[-1].rmse for report in reports),
        )

    return reports


def cross_validate(
    matrix,
    k=5,
    measure="ks",
    config=None,
    profile=None,
    seed=0,
    folds=None,
    workers=1,
    cache=None,
    dataset="dataset",
):
    """
    k-fold cross-validation of the completion with the alpha of config.

    :param matrix: Full :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param k: Number of folds, at least 2.
    :param measure: ``"ks"`` or ``"cs"``.
    :param config: :class:`~ziprec.completion.config.CompletionConfig`.
    :param profile: :class:`~ziprec.similarity.compressors.CompressorProfile`.
    :param seed: Seed of the fold split.
    :param folds: Predefined fold assignment, replaces the random split.
    :param workers: Number of worker processes.
    :param cache: Optional :class:`~ziprec.similarity.storage.SimilarityCache`.
    :param dataset: Name of the dataset for the report.
    :return: :class:`EvaluationReport`.
    """
    config = config or CompletionConfig()

    return sweep_alpha(
        matrix,
        [config.alpha],
        measure,
        config,
        profile,
        seed,
        k,
        folds,
        workers,
        cache,
        dataset,
    )[0]


def best_report(reports):
    """The report with the lowest mean RMSE, the smaller alpha wins ties."""
    return min(reports, key=lambda report: (report.mean_rmse, report.alpha))


@has_log
def evaluate_baseline(matrix, kind="global_mean", seed=0, k=5, folds=None, dataset="dataset"):
    """
    Cross-validates one of the mean baselines on the same folds as the completion.

    :param matrix: Full :class:`~ziprec.ratings.matrix.RatingMatrix`.
    :param kind: ``global_mean``, ``user_mean`` or ``item_mean``.
    :param seed: Seed of the fold split.
    :param k: Number of folds.
    :param folds: Predefined fold assignment, replaces the random split.
    :param dataset: Name of the dataset for the report.
    :return: :class:`EvaluationReport` with ``measure`` set to the baseline kind.
    """
    check_kind(kind)
    folds = folds if folds is not None else split_folds(matrix, k, seed)
    echo = _config_echo(matrix, folds, seed, None, None)
    report = EvaluationReport(dataset, kind, None, [], echo)

    for fold in range(1, folds.k + 1):
        start = datetime.now()
        train, test = mask_fold(matrix, folds, fold)

        users = [u for u, _, _ in test]
        items = [o for _, o, _ in test]
        scores = baseline_scores(train, kind, users, items)
        predicted = dict(zip(zip(users, items), scores.tolist()))

        report.folds.append(FoldResult(fold, rmse(test, predicted), 0.0, milliseconds_since(start)))

    evaluate_baseline.log.debug("%s on %s: mean RMSE %.4f", kind, dataset, report.mean_rmse)

    return report
