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
"""The sequential rank encoding of real prefixes and the transfer on codes.

A real prefix (x_1, …, x_n) is encoded as the code (t_1, …, t_n) with
t_i = 1 + #{k < i: x_k < x_i}, the 1-based rank of x_i among x_1..x_i.
Codes are the finite prefixes of the triangular compact ∏ {1..i}; the
shift of the prefix becomes the transfer of the code.
"""

import logging
from dataclasses import dataclass

import numpy as np

from weylcode import util
from weylcode.prefix import (  # noqa: F401
    RealPrefix,
    earlier_smaller_counts,
    sample_uniform_prefix,
)
from weylcode.skeleton import RankVector

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class TriCode:
    """A code (t_1, …, t_n) with 1 <= t_i <= i."""

    t: tuple

    def __post_init__(self):
        t = tuple(util.integral(value, util.MalformedCodeError) for value in self.t)
        object.__setattr__(self, "t", t)
        for position, value in enumerate(t, start=1):
            if not 1 <= value <= position:
                raise util.MalformedCodeError(
                    f"t_{position} = {value} is not in 1..{position}"
                )

    def __len__(self):
        return len(self.t)

    def to_record(self):
        return {"n": len(self), "t": list(self.t)}

    @classmethod
    def from_record(cls, record):
        """Make a TriCode from a {"n": …, "t": […]} record."""
        try:
            t = record["t"]
            n = util.integral(record.get("n", len(t)), util.MalformedRecordError)
        except (KeyError, TypeError, ValueError) as error:
            raise util.MalformedRecordError(f"Not a code record: {record}") from error
        if n != len(t):
            raise util.MalformedRecordError(
                f"Record says n={n} but carries {len(t)} coordinates"
            )
        return cls(tuple(t))


@dataclass(frozen=True)
class SpecialProfile:
    """Special positions of a code and their running count.

    Attributes:
        mask (tuple[bool]): mask[i] tells whether position i+1 is special.
        d (tuple[int]): d[i] is the number of special positions among the
            first i+1.
    """

    mask: tuple
    d: tuple


def encode_prefix(x: RealPrefix) -> TriCode:
    """Encode a real prefix by its sequential ranks.

    Args:
        x (RealPrefix): the prefix.

    Returns:
        (TriCode): t_i = 1 + #{k < i: x_k < x_i}.
    """
    return TriCode(tuple(earlier_smaller_counts(x.ranks) + 1))


def encode_matrix(x):
    """Encode every row of a real matrix.

    Args:
        x (numpy.ndarray): shape (samples, n), rows with distinct values.

    Returns:
        (numpy.ndarray): integer matrix of codes, same shape.
    """
    x = np.asarray(x)
    codes = np.ones(x.shape, dtype=np.int64)
    for i in range(1, x.shape[1]):
        codes[:, i] += np.count_nonzero(x[:, :i] < x[:, i : i + 1], axis=1)
    return codes


def tricode_to_ranks(t: TriCode) -> RankVector:
    """Recover the full ranks of any prefix with code t.

    Going backwards, x_i is the t_i-th smallest of the values that are
    still unplaced.
    """
    remaining = list(range(len(t)))
    ranks = [0] * len(t)
    for position in range(len(t) - 1, -1, -1):
        ranks[position] = remaining.pop(t.t[position] - 1)
    return RankVector(tuple(ranks))


def ranks_to_tricode(k: RankVector) -> TriCode:
    """Return the code of any prefix whose full ranks are k."""
    return TriCode(tuple(earlier_smaller_counts(k.k) + 1))


def special_positions(t: TriCode) -> SpecialProfile:
    """Mark the special positions of a code.

    Position 1 is special; position i+1 is special iff t_{i+1} <= d_i. For
    any preimage x, position i is special iff i = 1 or x_i < x_1.
    """
    mask = [True]
    d = [1]
    for value in t.t[1:]:
        special = value <= d[-1]
        mask.append(special)
        d.append(d[-1] + special)
    return SpecialProfile(tuple(mask), tuple(d))


def transfer(t: TriCode) -> TriCode:
    """Apply the transfer, the image of the shift on codes.

    t'_i = t_{i+1} if position i+1 is special, else t_{i+1} - 1.

    Raises:
        util.TooShortError: if the code has length 1.
    """
    if len(t) < 2:
        raise util.TooShortError("The transfer needs a code of length 2")
    mask = special_positions(t).mask
    return TriCode(
        tuple(
            value if special else value - 1
            for value, special in zip(t.t[1:], mask[1:])
        )
    )


def estimate_first_coord(t: TriCode) -> float:
    """Estimate x_1 by the share d_n / n of special positions."""
    return special_positions(t).d[-1] / len(t)


def reconstruct_prefix(t: TriCode, m) -> tuple:
    """Estimate x_1..x_m from the code of a long prefix.

    Uses the plotting position (k_i + 1) / (n + 1) of the full ranks.

    Args:
        t (TriCode): code of length n.
        m (int): how many coordinates to estimate, m <= n.

    Returns:
        (tuple[float]): the estimates.
    """
    if not 0 <= m <= len(t):
        raise util.BadRangeError(f"Can not reconstruct {m} of {len(t)} coordinates")
    n = len(t)
    ranks = tricode_to_ranks(t).k
    return tuple((ranks[i] + 1) / (n + 1) for i in range(m))


def reconstruct_by_transfer(t: TriCode, m) -> tuple:
    """Estimate x_1..x_m by transferring the code and reading d_n / n.

    x_i is estimated from Λ^{i-1}(t), whose first position belongs to x_i.
    """
    if not 0 <= m <= len(t):
        raise util.BadRangeError(f"Can not reconstruct {m} of {len(t)} coordinates")
    estimates = []
    current = t
    for i in range(m):
        estimates.append(estimate_first_coord(current))
        if i + 1 < m:
            current = transfer(current)
    return tuple(estimates)


def first_difference(t: TriCode, u: TriCode):
    """Return the least n at which the length-n prefixes of t and u differ.

    Returns:
        (int or None): None if the codes are equal.
    """
    if len(t) != len(u):
        raise util.LengthMismatchError("Codes of different length")
    for position, (left, right) in enumerate(zip(t.t, u.t), start=1):
        if left != right:
            return position
    return None


def sample_uniform_tricode(n, seed) -> TriCode:
    """Draw a code from μ, t_i uniform on {1..i}, independent."""
    return TriCode(tuple(sample_uniform_tricodes(n, 1, seed)[0]))


def sample_uniform_tricodes(n, samples, seed):
    """Draw many codes from μ at once.

    Returns:
        (numpy.ndarray): shape (samples, n), one code per row.
    """
    if n < 1:
        raise util.BadRangeError("n must be at least 1")
    rng = np.random.default_rng(seed)
    LOGGER.debug("Sampling %d codes of length %d", samples, n)
    return rng.integers(1, np.arange(2, n + 2), size=(samples, n))
