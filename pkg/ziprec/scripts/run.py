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

import argparse
import dataclasses
import os
import sys

import pandas as pd
import yaml

from ziprec import __version__
from ziprec.completion import (
    CompletionConfig,
    complete_matrix,
    recommend,
    write_completed_csv,
)
from ziprec.core.exceptions import LimitViolationException, ZiprecException
from ziprec.core.logging import default_log_format, logging
from ziprec.core.utils import dict_strict_update
from ziprec.evaluation import (
    alpha_grid,
    baseline_kinds,
    best_report,
    evaluate_baseline,
    render_table,
    sweep_alpha,
    write_id_maps,
    write_report,
)
from ziprec.ratings import (
    generate_synthetic,
    load_dataset,
    numerical_rank,
    subsample_users,
    write_triplets_csv,
)
from ziprec.ratings.loaders import dataset_formats
from ziprec.scripts import get_usage_text
from ziprec.similarity import (
    CompressorProfile,
    SimilarityCache,
    axes,
    build_similarity,
    measures,
    save_similarity_csv,
)
from ziprec.similarity.compressors import compressors

commands = ("evaluate", "complete", "recommend", "similarity", "synth")
format_choices = ("ml100k",) + dataset_formats[1:]

SYNTHETIC_SHAPE = (20, 30)

parser = argparse.ArgumentParser(
    description="Recommendation by compression-based matrix completion. Users and items are "
    "compared through the compressed lengths of their rating descriptions and the missing "
    "ratings are predicted from similarity weighted averages.",
    add_help=False,
    prog="ziprec",
)

positional_args = parser.add_argument_group("Positional arguments")

positional_args.add_argument(
    "command",
    nargs="?",
    choices=commands,
    help="Command to run, omitting this argument prints the list of commands.",
)

dataset_args = parser.add_argument_group(
    "Dataset related parameters", "Parameters that select and prepare the rating data."
)

dataset_args.add_argument(
    "-d",
    "--dataset",
    default=None,
    help="Rating file or directory. MovieLens 100k (u.data or the directory with the u1-u5 "
    "splits), MovieLens 1M (ratings.dat) and user,item,rating CSV files are supported.",
)
dataset_args.add_argument(
    "-f",
    "--format",
    default=None,
    choices=format_choices,
    help="Format of the dataset, detected from the path if not supplied.",
)
dataset_args.add_argument(
    "--delimiter",
    default=None,
    help="Field delimiter of generic CSV datasets, \\t stands for a tab (default ,).",
)
dataset_args.add_argument(
    "--subsample",
    type=float,
    default=None,
    help="Keep only this fraction of the users (seeded), for smoke runs on large datasets.",
)

model_args = parser.add_argument_group(
    "Model related parameters", "Parameters of the similarity measure and the completion."
)

model_args.add_argument(
    "-m", "--measure", default=None, choices=measures, help="Similarity measure (default ks)."
)
model_args.add_argument(
    "-a",
    "--alpha",
    type=float,
    default=None,
    help="Weight of the user term in the blend, in [0, 1] (default 0.5).",
)
model_args.add_argument(
    "--compressor",
    default=None,
    choices=sorted(compressors),
    help="Compressor used for the description lengths (default zlib).",
)
model_args.add_argument(
    "-l",
    "--compression-level",
    type=int,
    default=None,
    help="Compression level in [0, 9] (default 9).",
)
model_args.add_argument(
    "--literal-denominator",
    default=None,
    action="store_true",
    help="Normalize the weighted averages by the weights of all other users/items instead "
    "of only those with a rating.",
)
model_args.add_argument(
    "--cache-dir",
    default=None,
    help="Directory where built similarity matrices are cached.",
)

evaluation_args = parser.add_argument_group(
    "Evaluation related parameters", "Parameters of the cross-validation."
)

evaluation_args.add_argument(
    "-k", "--folds", type=int, default=None, help="Number of folds (default 5)."
)
evaluation_args.add_argument(
    "-s", "--seed", type=int, default=None, help="Seed of all random choices (default 0)."
)
evaluation_args.add_argument(
    "--sweep",
    default=None,
    action="store_true",
    help="Evaluate alpha = 0, 0.1, ..., 1 and report the best value.",
)
evaluation_args.add_argument(
    "--baselines",
    default=None,
    action="store_true",
    help="Add the global, user and item mean baselines to the report table.",
)

command_args = parser.add_argument_group(
    "Command related parameters", "Parameters used by individual commands."
)

command_args.add_argument(
    "--axis", default=None, choices=axes, help="Axis for the similarity command (default user)."
)
command_args.add_argument(
    "-u", "--user", default=None, help="Raw id of the user for the recommend command."
)
command_args.add_argument(
    "-t",
    "--top-k",
    type=int,
    default=None,
    help="Number of recommendations (default 10).",
)
command_args.add_argument(
    "-n",
    "--count",
    type=int,
    default=None,
    help="Number of synthetic matrices for the synth command (default 4).",
)

other_args = parser.add_argument_group("Other arguments")

other_args.add_argument(
    "-c",
    "--config",
    default=None,
    help="YAML file with default values for the parameters above. Options on the command "
    "line take precedence.",
)
other_args.add_argument(
    "-w", "--workers", type=int, default=None, help="Number of worker processes (default 1)."
)
other_args.add_argument(
    "--out",
    default=None,
    help="Output file or directory, depending on the command.",
)
other_args.add_argument(
    "-o",
    "--output-level",
    default="info",
    choices=["none", "critical", "error", "warning", "info", "debug"],
    help="Level of detail for logging to stderr.",
)
other_args.add_argument(
    "-v", "--version", action="store_true", help="Prints the version and exits."
)
other_args.add_argument(
    "-h", "--help", action="help", help="Shows this help message and exits."
)

__doc__ = (
    "This script is the command line interface of ziprec. The usage "
    "is as follows:\n\n.. code-block:: none\n\n{}".format(get_usage_text(parser, indent=4))
)


@dataclasses.dataclass
class RunConfig:
    """
    Everything a command needs. Values come from the defaults below, a YAML file passed with
    ``--config`` and the command line, in that order of precedence.
    """

    command: str = None
    dataset: str = None
    format: str = None
    delimiter: str = ","
    measure: str = "ks"
    alpha: float = 0.5
    compressor: str = "zlib"
    compression_level: int = 9
    folds: int = 5
    seed: int = 0
    workers: int = 1
    out: str = None
    literal_denominator: bool = False
    cache_dir: str = None
    axis: str = "user"
    user: str = None
    top_k: int = 10
    count: int = 4
    sweep: bool = False
    baselines: bool = False
    subsample: float = None

    _limits = {
        "alpha": ("--alpha", 0, 1),
        "compression_level": ("--compression-level", 0, 9),
        "folds": ("--folds", 2, None),
        "workers": ("--workers", 1, None),
        "top_k": ("--top-k", 0, None),
        "count": ("--count", 1, None),
    }

    _choices = {
        "format": ("--format", format_choices),
        "measure": ("--measure", measures),
        "compressor": ("--compressor", tuple(compressors)),
        "axis": ("--axis", axes),
    }

    @classmethod
    def from_arguments(cls, arguments):
        options = dataclasses.asdict(cls())

        if arguments.config is not None:
            dict_strict_update(options, _coerce_options(cls, _read_config_file(arguments.config)))

        dict_strict_update(
            options,
            {
                field.name: getattr(arguments, field.name)
                for field in dataclasses.fields(cls)
                if getattr(arguments, field.name) is not None
            },
        )

        return cls(**options)

    def validate(self):
        """
        Checks the parameter ranges and the parameters each command requires.

        :raises LimitViolationException: If a numerical parameter is out of range.
        :raises ZiprecException: If a parameter is missing or not a valid choice.
        """
        for attribute, (flag, lower, upper) in self._limits.items():
            value = getattr(self, attribute)

            if (lower is not None and value < lower) or (upper is not None and value > upper):
                raise LimitViolationException(
                    "{} = {} is outside limits ({}, {})".format(flag, value, lower, upper)
                )

        if self.subsample is not None and not 0 < self.subsample <= 1:
            raise LimitViolationException(
                "--subsample = {} is outside limits (0, 1]".format(self.subsample)
            )

        for attribute, (flag, valid) in self._choices.items():
            value = getattr(self, attribute)

            if value is not None and value not in valid:
                raise ZiprecException(
                    "{} {} is not valid, choices are: {}".format(flag, value, ", ".join(valid))
                )

        if not self.delimiter:
            raise ZiprecException("--delimiter must not be empty.")

        if self.command != "synth" and self.dataset is None:
            raise ZiprecException("The {} command requires --dataset.".format(self.command))

        if self.command == "recommend" and self.user is None:
            raise ZiprecException("The recommend command requires --user.")

    @property
    def profile(self):
        return CompressorProfile(self.compressor, self.compression_level)

    @property
    def completion(self):
        return CompletionConfig(self.alpha, literal_denominator=self.literal_denominator)

    @property
    def cache(self):
        return SimilarityCache(self.cache_dir) if self.cache_dir is not None else None


def _read_config_file(path):
    try:
        with open(path) as config_file:
            content = yaml.safe_load(config_file) or {}
    except (OSError, yaml.YAMLError) as error:
        raise ZiprecException("Could not read the configuration file {}: {}".format(path, error))

    if not isinstance(content, dict):
        raise ZiprecException("The configuration file {} must contain a mapping.".format(path))

    return {key.replace("-", "_"): value for key, value in content.items()}


def _coerce(name, value, field_type):
    if value is None or isinstance(value, field_type) and not isinstance(value, bool):
        return value

    if field_type is bool:
        if isinstance(value, bool):
            return value
    elif field_type is str:
        if not isinstance(value, (dict, list)):
            return str(value)
    elif not isinstance(value, bool):
        try:
            coerced = field_type(value)
        except (TypeError, ValueError, OverflowError):
            pass
        else:
            # Ints must not lose a fractional part on the way.
            if field_type is not int or float(value) == coerced:
                return coerced

    raise ZiprecException(
        "The configuration key '{}' expects a value of type {}, got {!r}.".format(
            name, field_type.__name__, value
        )
    )


def _coerce_options(config_class, options):
    """Converts the values read from a configuration file to the types of the config fields."""
    field_types = {field.name: field.type for field in dataclasses.fields(config_class)}

    return {
        name: _coerce(name, value, field_types[name]) if name in field_types else value
        for name, value in options.items()
    }


def _dataset_name(cfg):
    return os.path.basename(os.path.normpath(cfg.dataset))


def _load(cfg):
    matrix, folds = load_dataset(cfg.dataset, cfg.format, cfg.delimiter.replace("\\t", "\t"))

    if cfg.subsample is not None and cfg.subsample < 1:
        matrix = subsample_users(matrix, cfg.subsample, cfg.seed)

        if folds is not None:
            logging.getLogger("ziprec").warning(
                "Predefined folds are replaced by a random split for the subsampled users."
            )
            folds = None

    return matrix, folds


def _similarities(cfg, matrix):
    cache = cfg.cache
    return (
        build_similarity(matrix, "user", cfg.measure, cfg.profile, cfg.workers, cache),
        build_similarity(matrix, "item", cfg.measure, cfg.profile, cfg.workers, cache),
    )


def _find_user(matrix, raw_id):
    try:
        return matrix.user_index(raw_id)
    except ZiprecException:
        try:
            return matrix.user_index(int(raw_id))
        except ValueError:
            raise ZiprecException("Unknown user id: {!r}".format(raw_id))


def cmd_evaluate(cfg):
    """
    Cross-validates the completion and writes ``report.json``, ``report.txt`` and
    ``ids.json`` into the output directory (default ``ziprec-report``).
    """
    log = logging.getLogger("ziprec.evaluate")
    matrix, folds = _load(cfg)
    name = _dataset_name(cfg)
    out = cfg.out or "ziprec-report"

    log.info("Loaded %s: %d users, %d items, %d ratings", name, *matrix.shape, matrix.n_ratings)

    reports = sweep_alpha(
        matrix,
        alpha_grid if cfg.sweep else [cfg.alpha],
        cfg.measure,
        cfg.completion,
        cfg.profile,
        cfg.seed,
        cfg.folds,
        folds,
        cfg.workers,
        cfg.cache,
        name,
    )
    report = best_report(reports)

    if cfg.sweep:
        report.config["alpha_sweep"] = {
            "{:.1f}".format(candidate.alpha): candidate.mean_rmse for candidate in reports
        }

    if cfg.subsample is not None:
        report.config["subsample"] = cfg.subsample

    table = list(reports)
    if cfg.baselines:
        table += [
            evaluate_baseline(matrix, kind, cfg.seed, cfg.folds, folds, name)
            for kind in baseline_kinds
        ]

    write_report(report, out, table)
    write_id_maps(matrix, out)

    print(render_table(table), end="")
    log.info(
        "Best alpha %.2f, mean RMSE %.4f, report written to %s",
        report.alpha,
        report.mean_rmse,
        out,
    )

    return 0


def cmd_complete(cfg):
    """Completes the whole matrix and writes it as a CSV file (default ``completed.csv``)."""
    matrix, _ = _load(cfg)
    user_similarity, item_similarity = _similarities(cfg, matrix)

    completed = complete_matrix(
        matrix, user_similarity, item_similarity, cfg.completion, cfg.workers
    )

    out = cfg.out or "completed.csv"
    write_completed_csv(completed, out)
    logging.getLogger("ziprec.complete").info("Completed matrix written to %s", out)

    return 0


def cmd_recommend(cfg):
    """
    Prints the top-k unrated items of one user with their predicted scores. Only the row of
    that user is completed. With ``--out`` the list is written as a CSV file instead.
    """
    matrix, _ = _load(cfg)
    u = _find_user(matrix, cfg.user)
    user_similarity, item_similarity = _similarities(cfg, matrix)

    ranked = recommend(matrix, user_similarity, item_similarity, cfg.completion, u, cfg.top_k)
    top_k = pd.DataFrame(
        [(matrix.item_id(o), score) for o, score in ranked], columns=["item", "score"]
    )

    if cfg.out is None:
        print(top_k.to_csv(sep="\t", header=False, index=False, float_format="%.6f"), end="")
    else:
        top_k.to_csv(cfg.out, index=False, float_format="%.6f")

    return 0


def cmd_similarity(cfg):
    """Builds the user or item similarity matrix and writes it as a dense CSV file."""
    matrix, _ = _load(cfg)
    similarity = build_similarity(
        matrix, cfg.axis, cfg.measure, cfg.profile, cfg.workers, cfg.cache
    )

    out = cfg.out or "{}_similarity.csv".format(cfg.axis)
    save_similarity_csv(similarity, out)
    logging.getLogger("ziprec.similarity").info("Similarity matrix written to %s", out)

    return 0


def cmd_synth(cfg):
    """
    Writes ``count`` full rank synthetic matrices as CSV files together with a
    ``manifest.yaml`` that records the seed of each file (default directory ``synthetic``).
    """
    out = cfg.out or "synthetic"
    os.makedirs(out, exist_ok=True)

    entries = []
    for i in range(cfg.count):
        seed = cfg.seed + i
        matrix = generate_synthetic(*SYNTHETIC_SHAPE, seed=seed)
        file_name = "synthetic_{}.csv".format(i + 1)

        write_triplets_csv(matrix, os.path.join(out, file_name))
        entries.append(
            {
                "file": file_name,
                "seed": seed,
                "n_users": int(matrix.n_users),
                "n_items": int(matrix.n_items),
                "rank": numerical_rank(matrix.dense()),
            }
        )

    with open(os.path.join(out, "manifest.yaml"), "w") as manifest:
        yaml.safe_dump({"version": __version__, "matrices": entries}, manifest, sort_keys=False)

    logging.getLogger("ziprec.synth").info("Wrote %d synthetic matrices to %s", cfg.count, out)

    return 0


_command_functions = {
    "evaluate": cmd_evaluate,
    "complete": cmd_complete,
    "recommend": cmd_recommend,
    "similarity": cmd_similarity,
    "synth": cmd_synth,
}


def run(argument_list=None):
    """
    Parses the arguments, runs the selected command and returns the exit code. Expected
    errors are printed and result in exit code 1.

    :param argument_list: Argument list to pass to the argument parser declared in this module.
    :return: Exit code.
    """
    try:
        arguments = parser.parse_args(argument_list if argument_list is not None else sys.argv[1:])

        if arguments.version:
            print(__version__)
            return 0

        if arguments.output_level != "none":
            logging.basicConfig(
                level=getattr(logging, arguments.output_level.upper()), format=default_log_format
            )

        if not arguments.command:
            print(
                "\n".join(
                    ["Please specify a command. The following commands are available:"]
                    + ["    " + command for command in commands]
                )
            )
            return 0

        cfg = RunConfig.from_arguments(arguments)
        cfg.validate()

        return _command_functions[cfg.command](cfg)

    except ZiprecException as e:
        print("\n".join(("An error occurred:", str(e))))
        return 1


def main():
    sys.exit(run())
