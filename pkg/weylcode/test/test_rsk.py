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
"""Test RSK, promotion, Plancherel sampling and Knuth classes."""


import math
import unittest

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from parameterized import parameterized
from scipy import stats

from weylcode import rsk, skeleton, triangular, util
from weylcode.prefix import RealPrefix
from weylcode.rsk import Shape, StandardTableau
from weylcode.skeleton import RankVector

EXAMPLE = RealPrefix((0.5, 0.2, 0.7, 0.6))


def standard(*rows):
    return StandardTableau(tuple(tuple(row) for row in rows))


def real(*rows):
    return rsk.RealTableau(tuple(tuple(row) for row in rows))


def word(*letters):
    """A real word whose letters have the order of the given integers."""
    return RealPrefix(tuple(letter / 10 for letter in letters))


class TestShape(unittest.TestCase):
    @parameterized.expand([((1, 2),), ((2, 0),), ((-1,),), ((1.5,),)])
    def test_not_a_partition(self, rows):
        with self.assertRaises(util.InvalidTableauError):
            Shape(rows)

    def test_covers(self):
        self.assertEqual(Shape((2, 1)).upper_covers(), [(3, 1), (2, 2), (2, 1, 1)])
        self.assertEqual(Shape((2, 1)).lower_covers(), [(1, 1), (2,)])

    def test_conjugate(self):
        self.assertEqual(Shape((3, 1)).conjugate(), (2, 1, 1))


class TestTableau(unittest.TestCase):
    @parameterized.expand(
        [
            (((2, 1),),),
            (((1, 2), (3, 2)),),
            (((1, 3), (2, 4, 5)),),
            (((1, 2), (4,)),),
        ]
    )
    def test_invalid_standard(self, rows):
        with self.assertRaises(util.InvalidTableauError):
            StandardTableau(rows)

    @parameterized.expand([(((1, 2.5),),), (((True,),),), ((("1",),),)])
    def test_standard_entries_are_integers(self, rows):
        with self.assertRaises(util.InvalidTableauError):
            StandardTableau(rows)

    @parameterized.expand([(((0.1, "a"),),), (((None,),),)])
    def test_real_entries_are_numbers(self, rows):
        with self.assertRaises(util.InvalidTableauError):
            rsk.RealTableau(rows)

    def test_record(self):
        tableau = standard([1, 3], [2, 4])
        record = {"shape": [2, 2], "rows": [[1, 3], [2, 4]]}
        self.assertEqual(tableau.to_record(), record)
        self.assertEqual(StandardTableau.from_record(record), tableau)

    def test_record_with_wrong_shape(self):
        with self.assertRaises(util.MalformedRecordError):
            StandardTableau.from_record({"shape": [2, 1], "rows": [[1, 3], [2, 4]]})


class TestRSKWord(unittest.TestCase):
    def test_example(self):
        p, q = rsk.rsk_word(EXAMPLE)
        self.assertEqual(p, real([0.2, 0.6], [0.5, 0.7]))
        self.assertEqual(q, standard([1, 3], [2, 4]))

    def test_ascending(self):
        p, q = rsk.rsk_word(RealPrefix((0.1, 0.4, 0.6)))
        self.assertEqual(p, real([0.1, 0.4, 0.6]))
        self.assertEqual(q, standard([1, 2, 3]))

    def test_descending(self):
        p, q = rsk.rsk_word(RealPrefix((0.6, 0.4, 0.1)))
        self.assertEqual(p, real([0.1], [0.4], [0.6]))
        self.assertEqual(q, standard([1], [2], [3]))

    def test_inverse_example(self):
        p, q = rsk.rsk_word(EXAMPLE)
        self.assertEqual(rsk.rsk_inverse(p, q), EXAMPLE)

    def test_inverse_single_row(self):
        self.assertEqual(
            rsk.rsk_inverse(real([0.1, 0.4, 0.6]), standard([1, 2, 3])),
            RealPrefix((0.1, 0.4, 0.6)),
        )

    def test_shape_mismatch(self):
        with self.assertRaises(util.ShapeMismatchError):
            rsk.rsk_inverse(real([0.1, 0.4]), standard([1], [2]))

    def test_all_pairs_of_size_four(self):
        words = {
            rsk.permutation_from_tableaux(p, q)
            for shape in rsk.partitions(4)
            for p in rsk.standard_tableaux(shape)
            for q in rsk.standard_tableaux(shape)
        }
        self.assertEqual(len(words), 24)

    def test_random_round_trip(self):
        rng = np.random.default_rng(77)
        for _ in range(1000):
            x = RealPrefix(tuple(rng.random(100)))
            p, q = rsk.rsk_word(x)
            self.assertEqual(p.shape, q.shape)
            self.assertEqual(rsk.rsk_inverse(p, q), x)

    def test_q_depends_only_on_ranks(self):
        x = triangular.sample_uniform_prefix(50, seed=1)
        self.assertEqual(
            rsk.rsk_word(x)[1], rsk.rsk_permutation(skeleton.weyl_index(x))[1]
        )


@pytest.mark.parametrize("n", range(1, 8))
def test_rsk_is_a_bijection(n):
    pairs = set()
    for k in skeleton.tree_level(n):
        p, q = rsk.rsk_permutation(k)
        assert p.shape == q.shape
        assert rsk.permutation_from_tableaux(p, q) == k
        pairs.add((p, q))
    assert len(pairs) == math.factorial(n)
    assert sum(rsk.hook_length_count(shape) ** 2 for shape in rsk.partitions(n)) == (
        math.factorial(n)
    )


class TestPromotion(unittest.TestCase):
    @parameterized.expand(
        [
            (((1, 3), (2, 4)), ((1, 2), (3,))),
            (((1, 2, 3),), ((1, 2),)),
            (((1,), (2,), (3,)), ((1,), (2,))),
        ]
    )
    def test_promotion(self, rows, expected):
        self.assertEqual(
            rsk.promotion(StandardTableau(rows)), StandardTableau(expected)
        )

    def test_too_short(self):
        with self.assertRaises(util.TooShortError):
            rsk.promotion(standard([1]))

    def test_random_words(self):
        rng = np.random.default_rng(8)
        for _ in range(1000):
            x = RealPrefix(tuple(rng.random(100)))
            self.assertEqual(
                rsk.promotion(rsk.rsk_word(x)[1]), rsk.rsk_word(x.shift())[1]
            )


@pytest.mark.parametrize("n", range(2, 8))
def test_promotion_is_the_shift(n):
    for k in skeleton.tree_level(n):
        q = rsk.rsk_permutation(k)[1]
        assert rsk.promotion(q) == rsk.rsk_permutation(skeleton.translation(k))[1]


class TestPlancherel(unittest.TestCase):
    def test_single_cell(self):
        self.assertEqual(rsk.plancherel_sample(1, seed=3), Shape((1,)))

    def test_deterministic(self):
        self.assertEqual(
            rsk.plancherel_sample(30, seed=3), rsk.plancherel_sample(30, 3)
        )

    def test_size_two(self):
        counts = rsk.sample_shapes(2, 10**5, seed=1)
        self.assertAlmostEqual(counts[Shape((2,))] / 10**5, 0.5, delta=0.005)
        self.assertAlmostEqual(counts[Shape((1, 1))] / 10**5, 0.5, delta=0.005)

    def test_size_three(self):
        counts = rsk.sample_shapes(3, 10**5, seed=2)
        for rows, expected in (((3,), 1 / 6), ((2, 1), 4 / 6), ((1, 1, 1), 1 / 6)):
            self.assertAlmostEqual(counts[Shape(rows)] / 10**5, expected, delta=0.01)

    def test_size_four_chi_square(self):
        counts = rsk.sample_shapes(4, 10**5, seed=3)
        shapes = rsk.partitions(4)
        observed = [counts[shape] for shape in shapes]
        expected = [10**5 * rsk.plancherel_probability(shape) for shape in shapes]
        self.assertGreater(stats.chisquare(observed, expected).pvalue, 0.001)

    @parameterized.expand(
        [((1,), 1), ((2, 1), 2), ((2, 2), 2), ((3, 1), 3), ((3, 2), 5), ((3, 2, 1), 16)]
    )
    def test_hook_length_count(self, shape, expected):
        self.assertEqual(rsk.hook_length_count(shape), expected)

    def test_standard_tableaux_are_counted(self):
        for n in range(1, 8):
            for shape in rsk.partitions(n):
                self.assertEqual(
                    len(list(rsk.standard_tableaux(shape))),
                    rsk.hook_length_count(shape),
                )

    def test_partitions(self):
        self.assertEqual(
            rsk.partitions(4), ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
        )
        self.assertEqual(len(rsk.partitions(10)), 42)


class TestNormalizedP(unittest.TestCase):
    def test_example(self):
        self.assertEqual(rsk.normalized_p(EXAMPLE), real([0.25, 0.75], [0.5, 1.0]))

    def test_ascending(self):
        self.assertEqual(
            rsk.normalized_p(RealPrefix((0.1, 0.3, 0.7, 0.9))),
            real([0.25, 0.5, 0.75, 1.0]),
        )

    def test_descending(self):
        self.assertEqual(
            rsk.normalized_p(RealPrefix((0.9, 0.7, 0.3, 0.1))),
            real([0.25], [0.5], [0.75], [1.0]),
        )

    def test_same_cells_as_p(self):
        x = triangular.sample_uniform_prefix(40, seed=12)
        self.assertEqual(rsk.normalized_p(x).shape, rsk.rsk_word(x)[0].shape)


class TestQEquivalence(unittest.TestCase):
    def test_same_ranks(self):
        self.assertTrue(
            rsk.q_equivalent(RealPrefix((0.5, 0.2, 0.7)), RealPrefix((0.6, 0.1, 0.9)))
        )

    def test_row_and_column(self):
        self.assertFalse(
            rsk.q_equivalent(RealPrefix((0.1, 0.2)), RealPrefix((0.2, 0.1)))
        )

    def test_213_and_231(self):
        self.assertFalse(rsk.q_equivalent(word(2, 1, 3), word(2, 3, 1)))
        self.assertEqual(rsk.rsk_word(word(2, 1, 3))[1], standard([1, 3], [2]))
        self.assertEqual(rsk.rsk_word(word(2, 3, 1))[1], standard([1, 2], [3]))

    def test_length_mismatch(self):
        with self.assertRaises(util.LengthMismatchError):
            rsk.q_equivalent(word(1, 2), word(1, 2, 3))

    def test_coarser_than_codes(self):
        x = word(1, 3, 2)
        y = word(2, 3, 1)
        self.assertNotEqual(triangular.encode_prefix(x), triangular.encode_prefix(y))
        self.assertTrue(rsk.q_equivalent(x, y))

    def test_q_separation(self):
        x = triangular.sample_uniform_prefix(30, seed=4)
        self.assertIsNone(rsk.q_separation(x, x))
        self.assertEqual(rsk.q_separation(word(1, 2, 5), word(2, 1, 5)), 2)


@given(
    st.lists(
        st.floats(min_value=0, max_value=1, allow_nan=False),
        min_size=1,
        max_size=25,
        unique=True,
    )
)
def test_equal_codes_give_equal_recording_tableaux(values):
    x = RealPrefix(tuple(values))
    y = RealPrefix(tuple((x.ranks + 1) / (len(x) + 1)))
    assert triangular.encode_prefix(x) == triangular.encode_prefix(y)
    assert rsk.q_equivalent(x, y)


class TestKnuthClasses(unittest.TestCase):
    def test_size_three(self):
        classes = {
            frozenset(k.k for k in members) for members in rsk.knuth_classes(3).values()
        }
        self.assertEqual(
            classes,
            {
                frozenset({(0, 1, 2)}),
                frozenset({(1, 0, 2), (1, 2, 0)}),
                frozenset({(0, 2, 1), (2, 0, 1)}),
                frozenset({(2, 1, 0)}),
            },
        )

    def test_size_one(self):
        self.assertEqual(len(rsk.knuth_classes(1)), 1)

    def test_size_four(self):
        classes = rsk.knuth_classes(4)
        self.assertEqual(len(classes), 10)
        self.assertEqual(sum(len(members) for members in classes.values()), 24)
        for p, members in classes.items():
            self.assertEqual(len(members), rsk.hook_length_count(p.shape))

    def test_classes_per_shape(self):
        for dual in (False, True):
            classes = rsk.knuth_classes(5, dual=dual)
            for shape in rsk.partitions(5):
                of_shape = [key for key in classes if key.shape == shape]
                self.assertEqual(len(of_shape), rsk.hook_length_count(shape))

    def test_too_large(self):
        with self.assertRaises(util.TooLargeError):
            rsk.knuth_classes(9)

    def test_moves_connect_each_class(self):
        for n in range(1, 7):
            for members in rsk.knuth_classes(n).values():
                self.assertEqual(rsk.knuth_class_by_moves(members[0]), set(members))


class TestComplements(unittest.TestCase):
    def test_complement_check(self):
        for n in range(1, 7):
            self.assertTrue(rsk.complement_check(n))

    def test_pair_intersection(self):
        p = standard([1, 3], [2])
        self.assertEqual(
            rsk.tableau_pair_intersection(p, p), [RankVector((1, 0, 2))]
        )

    def test_each_pair_meets_once(self):
        for shape in rsk.partitions(4):
            for p in rsk.standard_tableaux(shape):
                for q in rsk.standard_tableaux(shape):
                    self.assertEqual(len(rsk.tableau_pair_intersection(p, q)), 1)

    def test_normalized_points(self):
        self.assertEqual(
            rsk.normalized_points(standard([1, 2, 3])), {(1 / 3, 2 / 3, 1.0)}
        )
        points = rsk.normalized_points(standard([1, 3], [2], [4]))
        self.assertEqual(len(points), rsk.hook_length_count((2, 1, 1)))
        for point in points:
            self.assertEqual(
                rsk.rsk_word(RealPrefix(point))[0], real([0.25, 0.75], [0.5], [1.0])
            )
