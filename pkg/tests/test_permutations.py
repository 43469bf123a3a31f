from math import factorial

import pytest
from hypothesis import given

from hcizkit.permutations import (CycleType, Permutation, all_permutations, compose, compose_all,
                                  conjugacy_class_size, enumerate_class, integer_partitions, length, lift,
                                  restrict, transitivity_partition, transpositions)
from strategies import perm_pairs, perms


def test_parse_forms_agree():
    a = Permutation.parse("(1 2)(3 4 5)")
    assert a == Permutation.parse("(12)(345)") == Permutation.parse("(1,2)(3,4,5)")
    assert a == Permutation.parse("[2,1,4,5,3]")
    assert a.images == (2, 1, 4, 5, 3)


def test_parse_identity_and_degree():
    assert Permutation.parse("()").n == 1
    assert Permutation.parse("()", 4).is_identity()
    assert Permutation.parse("(12)", 4).images == (2, 1, 3, 4)
    with pytest.raises(ValueError):
        Permutation.parse("(15)", 3)
    with pytest.raises(ValueError):
        Permutation.parse("(12")


def test_composition_is_right_to_left():
    a = Permutation.parse("(1 2)", 3)
    b = Permutation.parse("(2 3)", 3)
    # a(b(1)) = a(1) = 2, a(b(2)) = a(3) = 3, a(b(3)) = a(2) = 1
    assert (a * b).images == (2, 3, 1)
    assert compose(a, b) == a * b
    assert compose_all([a, b, a], 3) == a * b * a


def test_mixed_degrees_rejected():
    with pytest.raises(ValueError):
        Permutation.parse("(12)", 2) * Permutation.parse("(12)", 3)


def test_cycles_and_lengths():
    p = Permutation.parse("(13)(2)(45)", 5)
    assert p.cycles() == [[1, 3], [2], [4, 5]]
    assert p.num_cycles() == 3
    assert length(p) == 2
    assert p.cycle_type() == CycleType([2, 2, 1])
    assert str(p) == "(1 3)(4 5)"


def test_class_sizes_partition_the_group():
    for n in range(1, 7):
        assert sum(conjugacy_class_size(t) for t in integer_partitions(n)) == factorial(n)


def test_enumerate_class_exact_and_distinct():
    for n in range(1, 6):
        for t in integer_partitions(n):
            cls = list(enumerate_class(t))
            assert len(cls) == len(set(cls)) == conjugacy_class_size(t)
            assert all(p.cycle_type() == t for p in cls)


def test_partition_counts():
    # p(n) for n = 1..8
    assert [len(list(integer_partitions(n))) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_transpositions_sorted_by_maximum():
    ts = transpositions(4)
    assert len(ts) == 6
    maxima = [max(c) for t in ts for c in t.cycles() if len(c) == 2]
    assert maxima == sorted(maxima)


def test_transitivity_partition():
    p = Permutation.parse("(12)", 5)
    q = Permutation.parse("(23)(45)", 5)
    assert str(transitivity_partition([p, q])) == "{1,2,3}{4,5}"
    assert len(transitivity_partition([], 3)) == 3


def test_restrict_and_lift_roundtrip():
    p = Permutation.parse("(13)(245)", 5)
    r = restrict(p, [2, 4, 5])
    assert r.cycle_type() == CycleType([3])
    assert lift(r, [2, 4, 5], 5) == Permutation.parse("(245)", 5)
    with pytest.raises(ValueError):
        restrict(p, [1, 2])


@given(perms())
def test_inverse(p):
    assert (p * p.inverse()).is_identity()
    assert p.inverse().cycle_type() == p.cycle_type()


@given(perm_pairs())
def test_conjugation_preserves_cycle_type(pair):
    p, g = pair
    c = p.conjugate(g)
    assert c.cycle_type() == p.cycle_type()
    assert c == g * p * g.inverse()


@given(perm_pairs())
def test_length_triangle_inequality(pair):
    a, b = pair
    assert length(a * b) <= length(a) + length(b)
    # parity of the length is a homomorphism
    assert (length(a * b) - length(a) - length(b)) % 2 == 0


@given(perms())
def test_representative_has_same_type(p):
    t = p.cycle_type()
    assert t.representative().cycle_type() == t
    assert CycleType.parse(str(t)) == t


def test_all_permutations_count():
    assert len(set(all_permutations(5))) == 120
