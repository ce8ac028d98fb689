"""Eigenvalue relation classifications: paper lists, box oracles, conventions."""

from fractions import Fraction

import pytest

from grs.diophantine import (ShapeMismatch, ZeroEntry, bounded_integer_search,
                             brute_force_box, check_relation, enumerate_natural,
                             fuchs_relation, relation_symmetry_group)


def test_genVI_four_types():
    assert enumerate_natural("genVI") == [
        (1, 2, 3, 6), (1, 2, 4, 4), (1, 3, 3, 3), (2, 2, 2, 2)]


def test_genV_six_types():
    assert enumerate_natural("genV") == [
        (2, 1, 6), (2, 2, 2), (3, 1, 4), (3, 3, 1), (5, 1, 3), (6, 2, 1)]


def test_genIV_three_types():
    assert enumerate_natural("genIV") == [(1, 6), (2, 3), (5, 2)]


def test_genIII_both_conventions():
    assert enumerate_natural("genIII") == [(2, 2), (4, 1)]
    assert enumerate_natural("genIII", "all") == [(1, 4), (2, 2), (4, 1)]


@pytest.mark.parametrize("rel", ["genVI", "genV", "genIV", "genIII"])
def test_box_oracle_confirms_completeness(rel):
    assert brute_force_box(rel, 100) == enumerate_natural(rel)
    assert brute_force_box(rel, 100, "all") == enumerate_natural(rel, "all")


@pytest.mark.parametrize("rel", ["genVI", "genV", "genIV", "genIII"])
def test_every_enumerated_tuple_satisfies_relation(rel):
    for tup in enumerate_natural(rel, "all"):
        assert check_relation(rel, tup)


def test_check_relation_examples():
    assert check_relation("genVI", (2, 2, 2, 2))
    assert not check_relation("genVI", (3, 3, 3, 3))
    assert check_relation("genV", (2, 2, 2))  # 16 - 8 - 8 = 0
    assert check_relation("existence", (2, 2, 2, 2), n=2)
    assert not check_relation("existence", (2, 2, 2, 3), n=2)


def test_check_relation_errors():
    with pytest.raises(ZeroEntry):
        check_relation("genVI", (0, 2, 2, 2))
    with pytest.raises(ShapeMismatch):
        check_relation("genVI", (2, 2, 2))


def test_bounded_integer_search():
    found = bounded_integer_search("genIII", 10)
    for expected in [(-2, -2), (-1, -4), (-4, -1), (1, 4), (4, 1), (2, 2)]:
        assert expected in found
    assert bounded_integer_search("genIII", 0) == []
    # a signed genVI exploration stays exact
    tuples = bounded_integer_search("genVI", 2)
    assert (2, 2, 2, 2) in tuples
    assert all(check_relation("genVI", t) for t in tuples)


def test_symmetry_groups_match_declared_conventions():
    assert len(relation_symmetry_group("genVI")) == 24   # fully symmetric
    assert relation_symmetry_group("genV") == [(0, 1, 2), (1, 0, 2)]
    assert relation_symmetry_group("genIV") == [(0, 1)]  # asymmetric
    assert relation_symmetry_group("genIII") == [(0, 1), (1, 0)]


def test_fuchs_relation_hypergeometric():
    a, b, c = Fraction(2, 7), Fraction(1, 5), Fraction(3, 11)
    exponents = [[0, 1 - c], [0, c - a - b], [a, b]]
    assert fuchs_relation(exponents, 2, 2)


def test_fuchs_relation_zero_and_false_cases():
    assert fuchs_relation([[0, 0], [0, 0]], 1, 2)
    assert not fuchs_relation([[1, 0], [1, 0], [0, 0]], 2, 2)


def test_fuchs_relation_symbolic_entries():
    from grs.algebra import Context
    ctx = Context.make(fiber=(), time=None, parameters=["a", "b", "c"])
    a, b, c = ctx.var("a"), ctx.var("b"), ctx.var("c")
    one = ctx.rat(1)
    exponents = [[ctx.rat(0), one - c], [ctx.rat(0), c - a - b], [a, b]]
    assert fuchs_relation(exponents, 2, 2)


def test_fuchs_relation_shape():
    with pytest.raises(ShapeMismatch):
        fuchs_relation([[0, 0]], 2, 2)
