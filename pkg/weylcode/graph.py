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
"""Finite graded graphs, their paths and the transfer along 2-intervals.

Paths are vertex sequences (v_0, …, v_n) starting at the root. The
transfer drops the first edge of a path and repairs the rest one level
at a time: u_k = rule(k, v_0..v_{k+1}, u_{k-1}).
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass

from weylcode import util
from weylcode.rsk import Shape, StandardTableau

LOGGER = logging.getLogger(__name__)


def _freeze(item):
    """Turn JSON lists into hashable tuples."""
    if isinstance(item, list):
        return tuple(_freeze(part) for part in item)
    return item


def _thaw(item):
    if isinstance(item, tuple):
        return [_thaw(part) for part in item]
    return item


class GradedGraph:
    """A graded, locally finite graph cut at a finite depth.

    Subclasses provide root, depth, level, lower_covers and upper_covers.
    """

    root = None
    depth = 0

    def level(self, vertex):
        raise NotImplementedError

    def lower_covers(self, vertex):
        raise NotImplementedError

    def upper_covers(self, vertex):
        raise NotImplementedError

    def vertex_from_json(self, item):
        return _freeze(item)

    def covers(self, lower, upper):
        """Tell whether upper covers lower."""
        return upper in self.upper_covers(lower)

    def vertices(self, level):
        """Return the vertices of a level, in discovery order."""
        current = [self.root]
        for _ in range(level):
            current = list(
                dict.fromkeys(
                    upper for vertex in current for upper in self.upper_covers(vertex)
                )
            )
        return current

    def levels(self):
        current = [self.root]
        for _ in range(self.depth + 1):
            yield current
            current = list(
                dict.fromkeys(
                    upper for vertex in current for upper in self.upper_covers(vertex)
                )
            )


class YoungGraph(GradedGraph):
    """Young's lattice of diagrams, up to depth cells."""

    root = Shape()

    def __init__(self, depth):
        self.depth = depth

    def level(self, vertex):
        size = Shape(vertex).size
        if size > self.depth:
            raise util.BadLevelsError(f"{vertex} is deeper than {self.depth}")
        return size

    def lower_covers(self, vertex):
        return Shape(vertex).lower_covers()

    def upper_covers(self, vertex):
        if self.level(vertex) == self.depth:
            return []
        return Shape(vertex).upper_covers()

    def vertex_from_json(self, item):
        try:
            return Shape(item)
        except (TypeError, ValueError) as error:
            raise util.InvalidPathError(f"{item} is not a diagram") from error


class ExplicitGraph(GradedGraph):
    """A graph given by its levels and the covering edges between them.

    Args:
        levels (list[list]): vertex ids per level; level 0 holds the root.
        covers (list[list]): covers[i] holds the (lower, upper) pairs
            between level i and level i+1.
    """

    def __init__(self, levels, covers):
        self._levels = [list(level) for level in levels]
        if not self._levels or len(self._levels[0]) != 1:
            raise util.BadLevelsError("Level 0 must hold exactly one root")
        self.root = self._levels[0][0]
        self.depth = len(self._levels) - 1
        self._level_of = {}
        for number, level in enumerate(self._levels):
            for vertex in level:
                if vertex in self._level_of:
                    raise util.BadLevelsError(f"{vertex} appears on two levels")
                self._level_of[vertex] = number

        self._up = {vertex: [] for vertex in self._level_of}
        self._down = {vertex: [] for vertex in self._level_of}
        for number, edges in enumerate(covers):
            for lower, upper in edges:
                if (
                    self._level_of.get(lower) != number
                    or self._level_of.get(upper) != number + 1
                ):
                    raise util.BadLevelsError(
                        f"Edge {lower} -> {upper} does not join levels "
                        f"{number} and {number + 1}"
                    )
                self._up[lower].append(upper)
                self._down[upper].append(lower)

        for vertex, lower in self._down.items():
            if vertex != self.root and not lower:
                raise util.BadLevelsError(f"{vertex} has no downward neighbour")

    def level(self, vertex):
        try:
            return self._level_of[vertex]
        except (KeyError, TypeError) as error:
            raise util.BadLevelsError(f"{vertex} is not a vertex") from error

    def lower_covers(self, vertex):
        self.level(vertex)
        return list(self._down[vertex])

    def upper_covers(self, vertex):
        self.level(vertex)
        return list(self._up[vertex])

    def vertices(self, level):
        return list(self._levels[level])

    def levels(self):
        yield from (list(level) for level in self._levels)


def stationary_graph(alphabet, depth):
    """Build the graph whose levels all carry the same alphabet.

    Vertex (i, a) sits on level i and is covered by every vertex of level
    i+1; the root is (0, None). A path spells a word a_1 … a_n.
    """
    alphabet = list(alphabet)
    levels = [[(0, None)]] + [
        [(level, letter) for letter in alphabet] for level in range(1, depth + 1)
    ]
    covers = [
        list(itertools.product(lower, upper))
        for lower, upper in itertools.pairwise(levels)
    ]
    return ExplicitGraph(levels, covers)


def graph_to_json(graph: GradedGraph):
    """Serialize a graph as {"levels": [[…]…], "covers": [[[from, to]…]…]}."""
    levels = list(graph.levels())
    return {
        "levels": [[_thaw(vertex) for vertex in level] for level in levels],
        "covers": [
            [
                [_thaw(lower), _thaw(upper)]
                for lower in level
                for upper in graph.upper_covers(lower)
            ]
            for level in levels[:-1]
        ],
    }


def graph_from_json(data) -> ExplicitGraph:
    try:
        levels = [[_freeze(vertex) for vertex in level] for level in data["levels"]]
        covers = [
            [(_freeze(lower), _freeze(upper)) for lower, upper in edges]
            for edges in data["covers"]
        ]
    except (KeyError, TypeError, ValueError) as error:
        raise util.MalformedRecordError("Not a graph document") from error
    return ExplicitGraph(levels, covers)


@dataclass(frozen=True)
class GraphPath:
    """A path (v_0, v_1, …, v_n) with v_i on level i."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        """The number of edges."""
        return len(self.vertices) - 1

    def to_record(self):
        return {"path": [_thaw(vertex) for vertex in self.vertices]}

    @classmethod
    def from_record(cls, record, graph=None):
        try:
            items = record["path"]
            if graph is None:
                vertices = tuple(_freeze(item) for item in items)
            else:
                vertices = tuple(graph.vertex_from_json(item) for item in items)
        except (KeyError, TypeError) as error:
            raise util.MalformedRecordError(f"Not a path record: {record}") from error
        return cls(vertices)


@dataclass(frozen=True)
class TwoInterval:
    """Vertices bottom and top two levels apart, and what lies between."""

    bottom: object
    top: object
    intermediates: tuple


def validate_path(graph: GradedGraph, path: GraphPath):
    """Check that path starts at the root and climbs by covering edges.

    Raises:
        util.InvalidPathError: if it does not.
    """
    if not path.vertices or path.vertices[0] != graph.root:
        raise util.InvalidPathError("A path starts at the root")
    for level, (lower, upper) in enumerate(
        itertools.pairwise(path.vertices), start=1
    ):
        try:
            covered = graph.covers(lower, upper)
        except (util.BadLevelsError, util.InvalidTableauError) as error:
            raise util.InvalidPathError(str(error)) from error
        if not covered:
            raise util.InvalidPathError(
                f"{upper} at level {level} does not cover {lower}"
            )


def intermediates(graph: GradedGraph, bottom, top):
    """Return the vertices u with bottom ⋖ u ⋖ top.

    Raises:
        util.BadLevelsError: if top is not two levels above bottom.
    """
    if graph.level(top) != graph.level(bottom) + 2:
        raise util.BadLevelsError(f"{top} is not two levels above {bottom}")
    below_top = graph.lower_covers(top)
    return tuple(vertex for vertex in graph.upper_covers(bottom) if vertex in below_top)


def two_interval(graph: GradedGraph, bottom, top) -> TwoInterval:
    return TwoInterval(bottom, top, intermediates(graph, bottom, top))


def interval_involution(graph: GradedGraph, bottom, top, middle):
    """Exchange the two intermediates of a 2-interval.

    Returns:
        The other intermediate, or middle itself when it is the only one.

    Raises:
        util.NotIntermediateError: if middle is not between bottom and top.
        util.TooManyIntermediatesError: if the interval has over two.
    """
    found = intermediates(graph, bottom, top)
    if middle not in found:
        raise util.NotIntermediateError(f"{middle} is not in [{bottom}, {top}]")
    if len(found) > 2:
        raise util.TooManyIntermediatesError(
            f"[{bottom}, {top}] has {len(found)} intermediates"
        )
    others = [vertex for vertex in found if vertex != middle]
    return others[0] if others else middle


def check_two_intervals(graph: GradedGraph):
    """Scan every 2-interval of the graph.

    Returns:
        (collections.Counter): number of intermediates -> intervals.

    Raises:
        util.TooManyIntermediatesError: at the first interval with over two.
    """
    counts = Counter()
    for level, bottoms in enumerate(graph.levels()):
        if level + 2 > graph.depth:
            break
        for bottom in bottoms:
            tops = dict.fromkeys(
                top
                for middle in graph.upper_covers(bottom)
                for top in graph.upper_covers(middle)
            )
            for top in tops:
                found = intermediates(graph, bottom, top)
                if len(found) > 2:
                    raise util.TooManyIntermediatesError(
                        f"[{bottom}, {top}] has {len(found)} intermediates"
                    )
                counts[len(found)] += 1
    LOGGER.debug("2-intervals by intermediates: %s", dict(counts))
    return counts


def involution_rule(graph: GradedGraph):
    """Return the local rule u_k = φ[u_{k-1}, v_{k+1}](v_k), with u_1 = v_1."""

    def rule(k, window, previous):
        if k == 1:
            return window[1]
        return interval_involution(graph, previous, window[k + 1], window[k])

    return rule


def stationary_rule():
    """Return the rule of the stationary graph: u_k carries the letter of v_{k+1}."""

    def rule(k, window, _previous):
        return (k, window[k + 1][1])

    return rule


def general_transfer(graph: GradedGraph, path: GraphPath, rule) -> GraphPath:
    """Apply a transfer given by local rules.

    Args:
        graph (GradedGraph): the graph.
        path (GraphPath): a path with n >= 2 edges.
        rule (Callable): rule(k, (v_0, …, v_{k+1}), u_{k-1}) -> u_k.

    Returns:
        (GraphPath): the path (u_0, …, u_{n-1}).

    Raises:
        util.RuleViolationError: if some u_k does not cover u_{k-1}.
    """
    validate_path(graph, path)
    if len(path) < 2:
        raise util.TooShortError("The transfer needs a path with two edges")
    result = [graph.root]
    for k in range(1, len(path)):
        vertex = rule(k, path.vertices[: k + 2], result[-1])
        try:
            covered = graph.covers(result[-1], vertex)
        except util.BadLevelsError:
            covered = False
        if not covered:
            raise util.RuleViolationError(
                f"Step {k} produced {vertex}, which does not cover {result[-1]}"
            )
        result.append(vertex)
    return GraphPath(tuple(result))


def graph_transfer(graph: GradedGraph, path: GraphPath) -> GraphPath:
    """Apply the transfer built from the 2-interval involutions.

    Raises:
        util.TooShortError: if the path has fewer than two edges.
        util.TooManyIntermediatesError: if an interval has over two
            intermediates.
        util.InvariantViolationError: if u_{k-1} does not lie below v_k.
    """
    validate_path(graph, path)
    if len(path) < 2:
        raise util.TooShortError("The transfer needs a path with two edges")
    v = path.vertices
    result = [graph.root, v[1]]
    for k in range(2, len(path)):
        if not graph.covers(result[-1], v[k]):
            raise util.InvariantViolationError(
                f"{result[-1]} is not covered by {v[k]} at step {k}"
            )
        result.append(interval_involution(graph, result[-1], v[k + 1], v[k]))
    return GraphPath(tuple(result))


def tableau_to_path(tableau: StandardTableau) -> GraphPath:
    """Return the chain of diagrams filled by 1, 1..2, …, 1..n."""
    rows = [0] * len(tableau.shape)
    cells = sorted((value, row) for row, _, value in tableau.cells())
    vertices = [Shape()]
    for _, row in cells:
        rows[row] += 1
        vertices.append(Shape(length for length in rows if length))
    return GraphPath(tuple(vertices))


def path_to_tableau(path: GraphPath) -> StandardTableau:
    """Fill the cell added at step k with k.

    Raises:
        util.InvalidPathError: if path is not a path of the Young graph.
    """
    validate_path(YoungGraph(len(path)), path)
    rows = []
    for k, (lower, upper) in enumerate(itertools.pairwise(path.vertices), start=1):
        row = next(
            row
            for row in range(len(upper))
            if row >= len(lower) or upper[row] != lower[row]
        )
        if row == len(rows):
            rows.append([])
        rows[row].append(k)
    return StandardTableau(tuple(tuple(row) for row in rows))


def tail_equivalent(p: GraphPath, q: GraphPath, n) -> bool:
    """Tell whether p and q agree on every level above n."""
    if len(p) != len(q) or len(p.vertices) < n + 1:
        raise util.LengthMismatchError(
            f"Paths of {len(p)} and {len(q)} edges can not be compared above {n}"
        )
    return p.vertices[n + 1 :] == q.vertices[n + 1 :]
