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
"""Robinson–Schensted–Knuth correspondence for words with distinct letters.

A word is cut into an insertion tableau P (its letters) and a recording
tableau Q (the order in which the cells appeared). Equal Q is the
partition θ_n, equal P its dual. Promotion of Q is the image of the
shift of the word.
"""

import bisect
import itertools
import logging
import math
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cache

import numpy as np

from weylcode import util
from weylcode.prefix import RealPrefix
from weylcode.skeleton import EXHAUSTIVE_LIMIT, RankVector, tree_level

LOGGER = logging.getLogger(__name__)


class Shape(tuple):
    """A Young diagram, the weakly decreasing positive row lengths."""

    def __new__(cls, rows=()):
        rows = tuple(util.integral(row, util.InvalidTableauError) for row in rows)
        if any(row <= 0 for row in rows) or any(
            upper < lower for upper, lower in itertools.pairwise(rows)
        ):
            raise util.InvalidTableauError(f"{rows} is not a partition")
        return super().__new__(cls, rows)

    @property
    def size(self):
        return sum(self)

    def conjugate(self):
        """Return the shape with rows and columns exchanged."""
        if not self:
            return Shape()
        return Shape(
            sum(1 for row in self if row > column) for column in range(self[0])
        )

    def corners(self):
        """Rows whose last cell can be removed."""
        return [
            row
            for row, length in enumerate(self)
            if row + 1 == len(self) or self[row + 1] < length
        ]

    def remove_cell(self, row):
        rows = list(self)
        rows[row] -= 1
        return Shape(length for length in rows if length)

    def add_cell(self, row):
        rows = list(self) + [0]
        rows[row] += 1
        return Shape(length for length in rows if length)

    def lower_covers(self):
        """The shapes with one cell less."""
        return [self.remove_cell(row) for row in self.corners()]

    def upper_covers(self):
        """The shapes with one cell more."""
        return [
            self.add_cell(row)
            for row in range(len(self) + 1)
            if row == 0 or self[row - 1] > (self[row] if row < len(self) else 0)
        ]

    def contains(self, other):
        """Tell whether other fits inside this diagram."""
        return len(other) <= len(self) and all(
            length <= self[row] for row, length in enumerate(other)
        )


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram with distinct entries.

    Entries increase strictly along rows and down columns.

    Attributes:
        rows (tuple[tuple]): the entries, row by row.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(self._entry(value) for value in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        Shape(len(row) for row in rows)
        for row in rows:
            if any(left >= right for left, right in itertools.pairwise(row)):
                raise util.InvalidTableauError(f"Row {row} is not increasing")
        for upper, lower in itertools.pairwise(rows):
            if any(above >= below for above, below in zip(upper, lower)):
                raise util.InvalidTableauError(f"Columns of {rows} do not increase")
        entries = [value for row in rows for value in row]
        if len(set(entries)) != len(entries):
            raise util.InvalidTableauError(f"Entries of {rows} are not distinct")

    @staticmethod
    def _entry(value):
        return value

    @property
    def shape(self):
        return Shape(len(row) for row in self.rows)

    def __len__(self):
        return sum(len(row) for row in self.rows)

    def cells(self):
        """Yield (row, column, entry), with 0-based coordinates."""
        for row, entries in enumerate(self.rows):
            for column, value in enumerate(entries):
                yield row, column, value

    def to_record(self):
        return {"shape": list(self.shape), "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_record(cls, record):
        """Make a tableau from a {"shape": […], "rows": [[…]…]} record."""
        try:
            rows = record["rows"]
            shape = record.get("shape", [len(row) for row in rows])
            declared = [
                util.integral(length, util.MalformedRecordError) for length in shape
            ]
        except (KeyError, TypeError, ValueError) as error:
            raise util.MalformedRecordError(
                f"Not a tableau record: {record}"
            ) from error
        if declared != [len(row) for row in rows]:
            raise util.MalformedRecordError(
                f"Shape {declared} does not match the rows {rows}"
            )
        return cls(tuple(tuple(row) for row in rows))


class StandardTableau(Tableau):
    """A tableau holding exactly the integers 1..n."""

    @staticmethod
    def _entry(value):
        return util.integral(value, util.InvalidTableauError)

    def __post_init__(self):
        super().__post_init__()
        entries = sorted(value for _, _, value in self.cells())
        if entries != list(range(1, len(entries) + 1)):
            raise util.InvalidTableauError(
                f"A standard tableau holds 1..{len(entries)}, not {entries}"
            )

    def position(self, entry):
        """Return the row of the cell holding entry."""
        for row, entries in enumerate(self.rows):
            if entry in entries:
                return row
        raise util.InvalidTableauError(f"{entry} is not in the tableau")


class RealTableau(Tableau):
    """A tableau holding distinct reals."""

    @staticmethod
    def _entry(value):
        return util.real(value, util.InvalidTableauError)


class RowInsertion:
    """Online row insertion with strict bumping.

    Letters are inserted one at a time; after n insertions, rows and
    recording describe P and Q of the first n letters.
    """

    def __init__(self):
        self.rows = []
        self.recording = []
        self.size = 0

    def insert(self, value):
        """Insert one letter and return the row where the new cell appeared."""
        for row, entries in enumerate(self.rows):
            column = bisect.bisect_right(entries, value)
            if column == len(entries):
                entries.append(value)
                break
            entries[column], value = value, entries[column]
        else:
            row = len(self.rows)
            self.rows.append([value])
            self.recording.append([])
        self.size += 1
        self.recording[row].append(self.size)
        return row

    @property
    def shape(self):
        return Shape(len(entries) for entries in self.rows)

    def corner(self, size):
        """Return the entries of the top-left size × size corner.

        Returns:
            (dict): (row, column) -> entry, for the cells present.
        """
        return {
            (row, column): entries[column]
            for row, entries in enumerate(self.rows[:size])
            for column in range(min(size, len(entries)))
        }


def _insert_all(word):
    insertion = RowInsertion()
    for value in word:
        insertion.insert(value)
    return insertion


def rsk_word(x: RealPrefix):
    """Apply RSK to a word of distinct reals.

    Args:
        x (RealPrefix): the word.

    Returns:
        (tuple[RealTableau, StandardTableau]): the insertion tableau P and
            the recording tableau Q, of equal shape.
    """
    insertion = _insert_all(x.values)
    return RealTableau(insertion.rows), StandardTableau(insertion.recording)


def rsk_permutation(k: RankVector):
    """Apply RSK to a permutation, written with the letters 1..n.

    Returns:
        (tuple[StandardTableau, StandardTableau]): P and Q.
    """
    insertion = _insert_all(value + 1 for value in k.k)
    return StandardTableau(insertion.rows), StandardTableau(insertion.recording)


def shape_of_word(word):
    """Return the RSK shape of a word of distinct letters."""
    return _insert_all(word).shape


def _reverse_bump(p: Tableau, q: StandardTableau):
    if p.shape != q.shape:
        raise util.ShapeMismatchError(f"P has shape {p.shape}, Q has shape {q.shape}")
    rows = [list(row) for row in p.rows]
    where = {value: row for row, _, value in q.cells()}
    word = [None] * len(q)
    for entry in range(len(q), 0, -1):
        row = where[entry]
        value = rows[row].pop()
        for upper in range(row - 1, -1, -1):
            column = bisect.bisect_left(rows[upper], value) - 1
            rows[upper][column], value = value, rows[upper][column]
        word[entry - 1] = value
        if not rows[-1]:
            rows.pop()
    return word


def rsk_inverse(p: RealTableau, q: StandardTableau) -> RealPrefix:
    """Recover the word from (P, Q) by reverse bumping in the order n..1.

    Raises:
        util.ShapeMismatchError: if P and Q have different shapes.
    """
    return RealPrefix(tuple(_reverse_bump(p, q)))


def permutation_from_tableaux(p: StandardTableau, q: StandardTableau) -> RankVector:
    """Recover the permutation from a pair of standard tableaux."""
    return RankVector(tuple(value - 1 for value in _reverse_bump(p, q)))


def promotion(q: StandardTableau) -> StandardTableau:
    """Apply Schützenberger promotion.

    Entry 1 is deleted, the hole slides to the outer rim by always taking
    the smaller of its right and lower neighbours, and the entries are
    decremented.

    Raises:
        util.TooShortError: if the tableau has fewer than 2 entries.
    """
    if len(q) < 2:
        raise util.TooShortError("Promotion needs at least two entries")
    rows = [list(row) for row in q.rows]
    row, column = 0, 0
    while True:
        right = rows[row][column + 1] if column + 1 < len(rows[row]) else None
        below = (
            rows[row + 1][column]
            if row + 1 < len(rows) and column < len(rows[row + 1])
            else None
        )
        if right is None and below is None:
            break
        if below is None or (right is not None and right < below):
            rows[row][column] = right
            column += 1
        else:
            rows[row][column] = below
            row += 1
    rows[row].pop()
    return StandardTableau(
        tuple(tuple(value - 1 for value in row) for row in rows if row)
    )


def plancherel_sample(n, seed) -> Shape:
    """Return the RSK shape of n i.i.d. uniform reals."""
    if n < 1:
        raise util.BadRangeError("n must be at least 1")
    return shape_of_word(np.random.default_rng(seed).random(n))


def sample_shapes(n, samples, seed):
    """Draw many Plancherel shapes from one generator.

    Returns:
        (collections.Counter): shape -> number of draws.
    """
    if n < 1:
        raise util.BadRangeError("n must be at least 1")
    words = np.random.default_rng(seed).random((samples, n))
    LOGGER.debug("Inserting %d words of length %d", samples, n)
    return Counter(shape_of_word(word) for word in words)


def normalized_p(x: RealPrefix) -> RealTableau:
    """Return the P-tableau of the word of normalized ranks.

    Each value is replaced by its 1-based rank among all n values,
    divided by n.
    """
    n = len(x)
    normalized = (x.ranks + 1) / n
    return RealTableau(_insert_all(normalized.tolist()).rows)


def q_equivalent(x: RealPrefix, y: RealPrefix) -> bool:
    """Tell whether x and y have the same recording tableau."""
    if len(x) != len(y):
        raise util.LengthMismatchError("Words of different length")
    return rsk_word(x)[1] == rsk_word(y)[1]


def q_separation(x: RealPrefix, y: RealPrefix):
    """Return the least n at which Q(x[1..n]) and Q(y[1..n]) differ.

    The recording tableaux agree up to n exactly when every one of the
    first n insertions ended in the same row.

    Returns:
        (int or None): None if the recording tableaux never differ.
    """
    if len(x) != len(y):
        raise util.LengthMismatchError("Words of different length")
    left, right = RowInsertion(), RowInsertion()
    for n, (a, b) in enumerate(zip(x.values, y.values), start=1):
        if left.insert(a) != right.insert(b):
            return n
    return None


@cache
def partitions(n):
    """Return the partitions of n in reverse lexicographic order."""
    if n == 0:
        return (Shape(),)

    def descend(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in descend(remaining - part, part):
                yield (part, *rest)

    return tuple(Shape(rows) for rows in descend(n, n))


def _fillings(shape):
    if not shape:
        yield []
        return
    n = shape.size
    for row in shape.corners():
        for rows in _fillings(shape.remove_cell(row)):
            rows = [list(entries) for entries in rows]
            if row == len(rows):
                rows.append([])
            rows[row].append(n)
            yield rows


def standard_tableaux(shape):
    """Yield every standard tableau of the given shape.

    The largest entry sits in a corner; removing it leaves a standard
    tableau of a smaller shape.
    """
    for rows in _fillings(Shape(shape)):
        yield StandardTableau(tuple(tuple(row) for row in rows))


def hook_length_count(shape):
    """Return f_λ, the number of standard tableaux of shape λ."""
    shape = Shape(shape)
    conjugate = shape.conjugate()
    hooks = (
        length - column + conjugate[column] - row - 1
        for row, length in enumerate(shape)
        for column in range(length)
    )
    return math.factorial(shape.size) // math.prod(hooks)


def plancherel_probability(shape):
    """Return f_λ² / n!, the Plancherel weight of a shape."""
    shape = Shape(shape)
    return hook_length_count(shape) ** 2 / math.factorial(shape.size)


def knuth_classes(n, dual=False):
    """Group all permutations of length n by their P-tableau.

    Args:
        n (int): the length, at most EXHAUSTIVE_LIMIT.
        dual (bool): group by the Q-tableau instead.

    Returns:
        (dict): tableau -> list of RankVector, in lexicographic order.
    """
    if n > EXHAUSTIVE_LIMIT:
        raise util.TooLargeError(f"n={n} exceeds the exhaustive bound")
    classes = defaultdict(list)
    for k in tree_level(n):
        p, q = rsk_permutation(k)
        classes[q if dual else p].append(k)
    LOGGER.debug("%d classes at n=%d", len(classes), n)
    return dict(classes)


def _knuth_moves(k):
    for i in range(len(k) - 2):
        a, b, c = k[i : i + 3]
        if min(b, c) < a < max(b, c):
            yield k[: i + 1] + (c, b) + k[i + 3 :]
        if min(a, b) < c < max(a, b):
            yield k[:i] + (b, a) + k[i + 2 :]


def knuth_class_by_moves(k: RankVector):
    """Return the closure of k under the elementary Knuth exchanges.

    For consecutive letters a, b, c: b and c may be swapped when a lies
    between them, a and b may be swapped when c lies between them.
    """
    seen = {k.k}
    queue = deque([k.k])
    while queue:
        for neighbour in _knuth_moves(queue.popleft()):
            if neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    return {RankVector(member) for member in seen}


def tableau_pair_intersection(p: StandardTableau, q: StandardTableau):
    """Return every permutation whose RSK pair is (P, Q), by brute force."""
    if p.shape != q.shape:
        raise util.ShapeMismatchError(f"P has shape {p.shape}, Q has shape {q.shape}")
    return [k for k in tree_level(len(p)) if rsk_permutation(k) == (p, q)]


def complement_check(n):
    """Check that every same-shape pair (P, Q) meets in exactly one permutation.

    Returns:
        (bool): True if the equal-P and equal-Q partitions of the n!
            permutations are mutually independent complements.
    """
    if n > EXHAUSTIVE_LIMIT:
        raise util.TooLargeError(f"n={n} exceeds the exhaustive bound")
    hits = Counter(rsk_permutation(k) for k in tree_level(n))
    pairs = sum(hook_length_count(shape) ** 2 for shape in partitions(n))
    return len(hits) == pairs == math.factorial(n) and set(hits.values()) <= {1}


def normalized_points(p: StandardTableau):
    """Return the normalized permutation points with P-tableau p.

    Each point is the permutation k written as ((k_1 + 1)/n, …, (k_n + 1)/n).
    """
    n = len(p)
    if n > EXHAUSTIVE_LIMIT:
        raise util.TooLargeError(f"n={n} exceeds the exhaustive bound")
    return {
        tuple((value + 1) / n for value in permutation_from_tableaux(p, q).k)
        for q in standard_tableaux(p.shape)
    }
