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
"""The permutation (factorial) tree and its translation edges.

A vertex of level n is the rank vector k of a real prefix of length n,
k_i = #{s: x_s < x_i}. Two kinds of edges leave a vertex of level n:
the ordinary edge (remove the last object) and the translation (remove
the first object). Both are computed directly on rank vectors.
"""

import itertools
import math
from dataclasses import dataclass

from weylcode import util
from weylcode.prefix import RealPrefix

EXHAUSTIVE_LIMIT = 8


@dataclass(frozen=True)
class RankVector:
    """0-based full ranks (k_1..k_n), a permutation of 0..n-1."""

    k: tuple

    def __post_init__(self):
        k = tuple(util.integral(value, util.NotAPermutationError) for value in self.k)
        object.__setattr__(self, "k", k)
        if sorted(k) != list(range(len(k))):
            raise util.NotAPermutationError(
                f"{k} is not a permutation of 0..{len(k) - 1}"
            )

    def __len__(self):
        return len(self.k)

    def to_record(self):
        return {"n": len(self), "k": list(self.k)}

    @classmethod
    def from_record(cls, record):
        """Make a RankVector from a {"n": …, "k": […]} record."""
        try:
            k = record["k"]
            n = util.integral(record.get("n", len(k)), util.MalformedRecordError)
        except (KeyError, TypeError, ValueError) as error:
            raise util.MalformedRecordError(f"Not a rank record: {record}") from error
        if n != len(k):
            raise util.MalformedRecordError(
                f"Record says n={n} but carries {len(k)} ranks"
            )
        return cls(tuple(k))


@dataclass(frozen=True)
class TreePath:
    """A finite path (g_1, …, g_n) of the permutation tree.

    Attributes:
        vertices (tuple[RankVector]): g_i has length i and
            g_i = tree_parent(g_{i+1}).
    """

    vertices: tuple

    def __post_init__(self):
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        for level, vertex in enumerate(vertices, start=1):
            if len(vertex) != level:
                raise util.InconsistentPathError(
                    f"Vertex {vertex.k} does not belong to level {level}"
                )
        for lower, upper in itertools.pairwise(vertices):
            if tree_parent(upper) != lower:
                raise util.InconsistentPathError(
                    f"{lower.k} is not the parent of {upper.k}"
                )

    def __len__(self):
        return len(self.vertices)

    @property
    def top(self):
        return self.vertices[-1]


def weyl_index(x: RealPrefix) -> RankVector:
    """Return the Weyl simplex of a prefix, k_i = #{s: x_s < x_i}."""
    return RankVector(tuple(x.ranks))


def tree_parent(k: RankVector) -> RankVector:
    """Follow the ordinary edge: remove the last object.

    Raises:
        util.TooShortError: if k has length 1.
    """
    if len(k) < 2:
        raise util.TooShortError("The root of the tree has no parent")
    last = k.k[-1]
    return RankVector(tuple(r - 1 if r > last else r for r in k.k[:-1]))


def translation(k: RankVector) -> RankVector:
    """Follow the translation edge: remove the first object.

    r_i = k_{i+1} if k_{i+1} < k_1, else k_{i+1} - 1.

    Raises:
        util.TooShortError: if k has length 1.
    """
    if len(k) < 2:
        raise util.TooShortError("Can not translate a vertex of level 1")
    first = k.k[0]
    return RankVector(tuple(r if r < first else r - 1 for r in k.k[1:]))


def tree_path(x: RealPrefix) -> TreePath:
    """Return the path (g_1, …, g_n) of a real prefix in the tree."""
    top = weyl_index(x)
    vertices = [top]
    while len(vertices[-1]) > 1:
        vertices.append(tree_parent(vertices[-1]))
    return TreePath(tuple(reversed(vertices)))


def tree_transfer(p: TreePath) -> TreePath:
    """Send (g_1, g_2, …, g_n) to (λ(g_2), …, λ(g_n)).

    The result is a path because the two removals commute.

    Raises:
        util.TooShortError: if the path has fewer than two vertices.
    """
    if len(p) < 2:
        raise util.TooShortError("The transfer needs a path with two vertices")
    return TreePath(tuple(translation(vertex) for vertex in p.vertices[1:]))


def orbit_complement_check(n, x: RealPrefix) -> bool:
    """Check that the Weyl partition is an independent complement at level n.

    The n! coordinate permutations of x must meet every Weyl simplex of
    level n exactly once.

    Args:
        n (int): the level.
        x (RealPrefix): a point with distinct coordinates.

    Returns:
        (bool): True if every simplex is hit exactly once.
    """
    if len(x) != n:
        raise util.LengthMismatchError(f"Expected a prefix of length {n}")
    if n > EXHAUSTIVE_LIMIT:
        raise util.TooLargeError(f"n={n} exceeds the exhaustive bound")

    hits = [
        weyl_index(RealPrefix(permuted)).k
        for permuted in itertools.permutations(x.values)
    ]
    return len(set(hits)) == len(hits) == math.factorial(n)


def tree_level(n):
    """Yield the n! vertices of level n in lexicographic order."""
    if n > EXHAUSTIVE_LIMIT:
        raise util.TooLargeError(f"n={n} exceeds the exhaustive bound")
    for k in itertools.permutations(range(n)):
        yield RankVector(k)


def tree_edges(n):
    """Yield the adjacency records of the tree up to level n.

    Every vertex of level 2..n gets one "parent" and one "translation"
    record, from which the tree with its translations can be drawn.

    Yields:
        (dict): {"level": …, "kind": …, "from": […], "to": […]}
    """
    for level in range(2, n + 1):
        for vertex in tree_level(level):
            for kind, edge in (("parent", tree_parent), ("translation", translation)):
                yield {
                    "level": level,
                    "kind": kind,
                    "from": list(vertex.k),
                    "to": list(edge(vertex).k),
                }
