#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU General Public License for more details.
#
#   You should have received a copy of the GNU General Public License
#   along with this file. If not, see <http://www.gnu.org/licenses/>.
#
#   Copyright © 2024 The weylcode developers
#
"""Utility functions and classes used by other modules in weylcode."""


import concurrent.futures
import concurrent.futures.process
import datetime
import logging
import numbers
import os
import time

import numpy as np

LOGGER = logging.getLogger(__name__)


class DataError(ValueError):
    """This exception is raised when input lies outside an operation's domain."""


class DuplicateValueError(DataError):
    """This exception is raised when a real prefix contains equal values."""


class MalformedCodeError(DataError):
    """This exception is raised when a code has some t_i outside {1..i}."""


class NotAPermutationError(DataError):
    """This exception is raised when a rank vector is not a permutation."""


class TooShortError(DataError):
    """This exception is raised when an object is too short for an operation."""


class BadRangeError(DataError):
    """This exception is raised when a requested range exceeds the input."""


class InconsistentPathError(DataError):
    """This exception is raised when tree path levels do not fit together."""


class ShapeMismatchError(DataError):
    """This exception is raised when two tableaux have different shapes."""


class InvalidTableauError(DataError):
    """This exception is raised when a tableau breaks the row/column rules."""


class LengthMismatchError(DataError):
    """This exception is raised when two sequences should have equal length."""


class TooLargeError(DataError):
    """This exception is raised when an exhaustive computation is too big."""


class BadLevelsError(DataError):
    """This exception is raised when vertices are on the wrong levels."""


class NotIntermediateError(DataError):
    """This exception is raised when a vertex is not inside a 2-interval."""


class TooManyIntermediatesError(DataError):
    """This exception is raised when a 2-interval has over two intermediates."""


class RuleViolationError(DataError):
    """This exception is raised when a local transfer rule breaks covering."""


class InvalidPathError(DataError):
    """This exception is raised when a graph path is not a chain of covers."""


class BadParamsError(DataError):
    """This exception is raised when experiment parameters are out of range."""


class MalformedRecordError(DataError):
    """This exception is raised when an input record can not be parsed."""


class InvariantViolationError(Exception):
    """This exception is raised when an internal invariant is broken."""


def integral(value, error):
    """Return value as an int.

    Raises:
        error: unless value is a number with no fractional part.
    """
    if (
        isinstance(value, bool)
        or not isinstance(value, numbers.Real)
        or not float(value).is_integer()
    ):
        raise error(f"{value!r} is not an integer")
    return int(value)


def real(value, error):
    """Return value as a float, raising error if it is not a number."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise error(f"{value!r} is not a real number")
    return float(value)


def trial_rng(seed, trial):
    """Make the random generator of one trial.

    The stream depends only on (seed, trial), so trials can run in any
    order or in any process.

    Args:
        seed (int): the experiment seed.
        trial (int): the trial index.

    Returns:
        (numpy.random.Generator): the generator for this trial.
    """
    return np.random.default_rng((seed, trial))


def human_readable_timespan(seconds):
    return str(datetime.timedelta(seconds=seconds))


def env_int(name, default):
    """Read an integer from the environment.

    Args:
        name (str): name of the environment variable.
        default (int): value used when the variable is unset or empty.

    Returns:
        (int): the value.
    """
    value = os.getenv(name, "")
    return int(value) if value.strip() else default


def run_trials(function, trials, max_workers=1, *args, **kwargs):
    """Run function once for every trial index.

    Conceptually, it's like `[function(trial) for trial in range(trials)]`,
    but in parallel when max_workers > 1. Uses a ProcessPoolExecutor with
    `max_workers`, so function must be picklable (a module level function).

    Any additional arguments (positional or keyword) given to
    `run_trials`, will be passed along to the `function`.

    Args:
        function (Callable): The function to call. The first argument to
            the function is the trial index.
        trials (int): how many trials to run.
        max_workers (int): How many worker processes to use

    Returns:
        (list): the results, ordered by trial index.
    """
    if max_workers <= 1 or trials <= 1:
        LOGGER.info("Running %d trials serially", trials)
        return [function(trial, *args, **kwargs) for trial in range(trials)]

    LOGGER.info("Running %d trials using %d workers", trials, max_workers)
    results = [None] * trials
    t0 = time.monotonic()
    futures = {}  # future -> trial

    try:
        with concurrent.futures.ProcessPoolExecutor(max_workers=max_workers) as pool:
            for trial in range(trials):
                futures[pool.submit(function, trial, *args, **kwargs)] = trial

            completed = concurrent.futures.as_completed(futures)
            for done, future in enumerate(completed, start=1):
                trial = futures.pop(future)
                results[trial] = future.result()
                LOGGER.debug(
                    "[%d / %d trials done, %s elapsed]",
                    done,
                    trials,
                    human_readable_timespan(int(time.monotonic() - t0)),
                )
    except concurrent.futures.process.BrokenProcessPool as error:
        raise InvariantViolationError(
            f"Trial pool terminated with {len(futures)} trials unfinished"
        ) from error

    return results
