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
"""Test the permutation tree and its translations."""


import math
import unittest

import pytest
from hypothesis import given
from hypothesis import strategies as st
from parameterized import parameterized

from weylcode import skeleton, triangular, util
from weylcode.prefix import RealPrefix
from weylcode.skeleton import RankVector


def prefix_of(k):
    return RealPrefix(tuple((value + 1) / (len(k) + 1) for value in k))


def ranks(*k):
    return RankVector(k)


class TestWeylIndex(unittest.TestCase):
    @parameterized.expand(
        [
            ((0.5, 0.2, 0.7, 0.6), (1, 0, 3, 2)),
            ((0.1, 0.2, 0.3, 0.4), (0, 1, 2, 3)),
            ((0.4, 0.3, 0.2, 0.1), (3, 2, 1, 0)),
        ]
    )
    def test_weyl_index(self, values, expected):
        self.assertEqual(skeleton.weyl_index(RealPrefix(values)), RankVector(expected))

    def test_duplicates(self):
        with self.assertRaises(util.DuplicateValueError):
            skeleton.weyl_index(RealPrefix((0.3, 0.1, 0.3)))

    def test_record(self):
        self.assertEqual(ranks(1, 0, 3, 2).to_record(), {"n": 4, "k": [1, 0, 3, 2]})
        self.assertEqual(
            RankVector.from_record({"n": 4, "k": [1, 0, 3, 2]}), ranks(1, 0, 3, 2)
        )

    @parameterized.expand([((1.9, 0),), (("1", 0),), ((False,),)])
    def test_not_integers(self, k):
        with self.assertRaises(util.NotAPermutationError):
            RankVector.from_record({"k": list(k)})


class TestEdges(unittest.TestCase):
    @parameterized.expand(
        [
            ((1, 0, 3, 2), (1, 0, 2)),
            ((0, 1, 2), (0, 1)),
            ((2, 1, 0), (1, 0)),
        ]
    )
    def test_tree_parent(self, k, expected):
        self.assertEqual(skeleton.tree_parent(RankVector(k)), RankVector(expected))

    @parameterized.expand(
        [
            ((1, 0, 3, 2), (0, 2, 1)),
            ((0, 1, 2), (0, 1)),
            ((2, 1, 0), (1, 0)),
        ]
    )
    def test_translation(self, k, expected):
        self.assertEqual(skeleton.translation(RankVector(k)), RankVector(expected))

    def test_root_has_no_edges(self):
        with self.assertRaises(util.TooShortError):
            skeleton.tree_parent(ranks(0))
        with self.assertRaises(util.TooShortError):
            skeleton.translation(ranks(0))


@pytest.mark.parametrize("n", range(2, 9))
def test_translation_removes_the_first_object(n):
    for k in skeleton.tree_level(n):
        x = prefix_of(k.k)
        assert skeleton.translation(k) == skeleton.weyl_index(x.shift())
        assert skeleton.tree_parent(k) == skeleton.weyl_index(x.head(n - 1))


@pytest.mark.parametrize("n", range(3, 9))
def test_removals_commute(n):
    for k in skeleton.tree_level(n):
        assert skeleton.tree_parent(skeleton.translation(k)) == skeleton.translation(
            skeleton.tree_parent(k)
        )


class TestTreePath(unittest.TestCase):
    def test_tree_path(self):
        path = skeleton.tree_path(RealPrefix((0.5, 0.2, 0.7, 0.6)))
        self.assertEqual(
            path.vertices,
            (ranks(0), ranks(1, 0), ranks(1, 0, 2), ranks(1, 0, 3, 2)),
        )

    def test_tree_transfer(self):
        path = skeleton.tree_path(RealPrefix((0.5, 0.2, 0.7, 0.6)))
        self.assertEqual(
            skeleton.tree_transfer(path).vertices,
            (ranks(0), ranks(0, 1), ranks(0, 2, 1)),
        )

    @parameterized.expand(
        [
            ((0.1, 0.2, 0.3, 0.4, 0.5),),
            ((0.5, 0.4, 0.3, 0.2, 0.1),),
        ]
    )
    def test_monotone_paths(self, values):
        x = RealPrefix(values)
        self.assertEqual(
            skeleton.tree_transfer(skeleton.tree_path(x)),
            skeleton.tree_path(x.shift()),
        )

    def test_inconsistent_path(self):
        with self.assertRaises(util.InconsistentPathError):
            skeleton.TreePath((ranks(0), ranks(0, 1), ranks(2, 1, 0)))

    def test_wrong_level(self):
        with self.assertRaises(util.InconsistentPathError):
            skeleton.TreePath((ranks(0, 1),))

    def test_too_short(self):
        with self.assertRaises(util.TooShortError):
            skeleton.tree_transfer(skeleton.TreePath((ranks(0),)))

    def test_agrees_with_code_transfer(self):
        x = triangular.sample_uniform_prefix(60, seed=31)
        top = skeleton.tree_transfer(skeleton.tree_path(x)).top
        self.assertEqual(
            triangular.ranks_to_tricode(top),
            triangular.transfer(triangular.encode_prefix(x)),
        )


@given(
    st.lists(
        st.floats(min_value=0, max_value=1, allow_nan=False),
        min_size=1,
        max_size=30,
        unique=True,
    )
)
def test_weyl_index_agrees_with_code(values):
    x = RealPrefix(tuple(values))
    assert triangular.ranks_to_tricode(skeleton.weyl_index(x)) == (
        triangular.encode_prefix(x)
    )


class TestOrbitComplement(unittest.TestCase):
    def test_level_one(self):
        self.assertTrue(skeleton.orbit_complement_check(1, RealPrefix((0.3,))))

    def test_level_three(self):
        self.assertTrue(skeleton.orbit_complement_check(3, RealPrefix((0.5, 0.2, 0.7))))

    def test_up_to_six(self):
        for n in range(1, 7):
            x = triangular.sample_uniform_prefix(n, seed=n)
            self.assertTrue(skeleton.orbit_complement_check(n, x))

    def test_wrong_length(self):
        with self.assertRaises(util.LengthMismatchError):
            skeleton.orbit_complement_check(3, RealPrefix((0.5, 0.2)))

    def test_too_large(self):
        x = triangular.sample_uniform_prefix(9, seed=1)
        with self.assertRaises(util.TooLargeError):
            skeleton.orbit_complement_check(9, x)


class TestTreeListing(unittest.TestCase):
    @parameterized.expand([(1,), (3,), (5,)])
    def test_level_size(self, n):
        level = list(skeleton.tree_level(n))
        self.assertEqual(len(set(level)), math.factorial(n))

    def test_edges(self):
        edges = list(skeleton.tree_edges(3))
        self.assertEqual(len(edges), 2 * (2 + 6))
        self.assertIn(
            {"level": 3, "kind": "translation", "from": [2, 0, 1], "to": [0, 1]},
            edges,
        )
        self.assertIn(
            {"level": 3, "kind": "parent", "from": [2, 0, 1], "to": [1, 0]},
            edges,
        )
