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
"""The --ncpus option for commands that run trials in worker processes."""

import argparse
import multiprocessing
import os

from weylcode import util


# os.sched_getaffinity is missing on macOS
def _get_core_count() -> int:
    try:
        return len(os.sched_getaffinity(0))  # type: ignore[attr-defined]
    except AttributeError:
        return multiprocessing.cpu_count()


N_AVAILABLE_CPUS = _get_core_count()
CPU_CHOICES = {
    **{str(n): n for n in range(1, N_AVAILABLE_CPUS + 1)},
    "some": max(1, int(N_AVAILABLE_CPUS * 0.25)),
    "half": max(1, int(N_AVAILABLE_CPUS * 0.5)),
    "most": max(1, int(N_AVAILABLE_CPUS * 0.75)),
    "all": N_AVAILABLE_CPUS,
}


def default_ncpus():
    """Return the worker count from WEYLCODE_NCPUS, 1 when unset."""
    return min(max(1, util.env_int("WEYLCODE_NCPUS", 1)), N_AVAILABLE_CPUS)


class NCpus(argparse.Action):
    """An argparse action for the number of worker processes.

    Example usage:
        parser = argparse.ArgumentParser()
        parser.add_argument("--ncpus", action=NCpus)

        The option takes 1-<number of cpus on system>, or "some", "half",
        "most" and "all" for 25%, 50%, 75% and 100% of the cpus. The parsed
        value is always an int in range 1-<n cpus>.
    """

    def __init__(self, option_strings, dest, nargs=None, **kwargs):
        if nargs is not None:
            raise ValueError("nargs not allowed")

        self.choose_between = (
            f"Choose between 1-{N_AVAILABLE_CPUS}, "
            f"some ({CPU_CHOICES['some']}), half ({CPU_CHOICES['half']}), "
            f"most ({CPU_CHOICES['most']}) or all ({CPU_CHOICES['all']})."
        )
        kwargs.setdefault("default", default_ncpus())
        kwargs.setdefault(
            "help",
            "Worker processes for the trials. Defaults to WEYLCODE_NCPUS, "
            f"or 1. {self.choose_between}",
        )
        super().__init__(option_strings, dest, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        try:
            value = CPU_CHOICES[values]
        except KeyError:
            parser.error(
                f"argument '{option_string}': invalid choice "
                f"'{values}'. {self.choose_between}"
            )
        setattr(namespace, self.dest, value)
