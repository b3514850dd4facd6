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
"""Finite prefixes of a Bernoulli sequence and the rank arithmetic on them."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from weylcode import util


def global_ranks(values):
    """Compute 0-based ranks of distinct values.

    Args:
        values (array_like): distinct numbers.

    Returns:
        (numpy.ndarray): k with k[i] = #{s: values[s] < values[i]}.
    """
    values = np.asarray(values)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.int64)
    ranks[order] = np.arange(len(values), dtype=np.int64)
    return ranks


def earlier_smaller_counts(ranks):
    """Count, for every position, the earlier positions with a smaller rank.

    Bottom-up merge counting: at block width w every position in an odd
    block is compared with the whole even block to its left through one
    sorted array of keys (block * n + rank), so each pair (j < i) is
    counted at exactly one width.

    Args:
        ranks (array_like): a permutation of 0..n-1.

    Returns:
        (numpy.ndarray): c with c[i] = #{j < i: ranks[j] < ranks[i]}.
    """
    ranks = np.asarray(ranks, dtype=np.int64)
    size = len(ranks)
    counts = np.zeros(size, dtype=np.int64)
    positions = np.arange(size, dtype=np.int64)
    width = 1
    while width < size:
        block = positions // width
        sorted_keys = np.sort(block * size + ranks)
        right = block % 2 == 1
        left_block = block[right] - 1
        found = np.searchsorted(sorted_keys, left_block * size + ranks[right])
        counts[right] += found - left_block * width
        width *= 2

    return counts


@dataclass(frozen=True)
class RealPrefix:
    """A finite prefix x_1..x_n of a point of the infinite unit cube.

    Attributes:
        values (tuple[float]): pairwise distinct reals in [0, 1].
    """

    values: tuple

    def __post_init__(self):
        values = tuple(
            util.real(value, util.MalformedRecordError) for value in self.values
        )
        object.__setattr__(self, "values", values)
        if not values:
            raise util.TooShortError("A real prefix needs at least one value")

        array = np.asarray(values)
        if not np.all(np.isfinite(array)) or array.min() < 0.0 or array.max() > 1.0:
            raise util.BadRangeError("Prefix values must lie in [0, 1]")
        if len(np.unique(array)) != len(values):
            raise util.DuplicateValueError(
                "Prefix values must be pairwise distinct"
            )

    def __len__(self):
        return len(self.values)

    @cached_property
    def ranks(self):
        """0-based ranks of the values, as a numpy array."""
        return global_ranks(self.values)

    def head(self, n):
        """Return the prefix of the first n values."""
        if not 1 <= n <= len(self):
            raise util.BadRangeError(f"Can not take {n} of {len(self)} values")
        return RealPrefix(self.values[:n])

    def shift(self):
        """Return the prefix with the first value removed."""
        if len(self) < 2:
            raise util.TooShortError("Can not shift a prefix of length 1")
        return RealPrefix(self.values[1:])

    def to_record(self):
        return {"n": len(self), "x": list(self.values)}

    @classmethod
    def from_record(cls, record):
        """Make a RealPrefix from a {"n": …, "x": […]} record."""
        try:
            values = record["x"]
            n = util.integral(record.get("n", len(values)), util.MalformedRecordError)
        except (KeyError, TypeError, ValueError) as error:
            raise util.MalformedRecordError(f"Not a prefix record: {record}") from error
        if n != len(values):
            raise util.MalformedRecordError(
                f"Record says n={n} but carries {len(values)} values"
            )
        return cls(tuple(values))


def sample_uniform_prefix(n, seed):
    """Draw n i.i.d. uniform reals.

    Args:
        n (int): length of the prefix.
        seed (int): seed of the generator.

    Returns:
        (RealPrefix): the sampled prefix.
    """
    if n < 1:
        raise util.BadRangeError("n must be at least 1")
    return RealPrefix(tuple(np.random.default_rng(seed).random(n)))
