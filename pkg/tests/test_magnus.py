import random
from fractions import Fraction

import pytest

from mnseries.magnus import (
    FreeMonoid,
    FreeWord,
    enumerate_reduced_words,
    magnus_image,
    parse_word,
    verify_magnus_injectivity,
    word_reduce,
)
from mnseries.scalars import QQ
from mnseries.series import GradedSeries


def test_word_reduce_examples():
    # x y y^-1 x -> x x
    assert word_reduce(((0, 1), (1, 1), (1, -1), (0, 1)), 2).letters == ((0, 1), (0, 1))
    assert word_reduce(((0, 1), (0, -1)), 2).letters == ()
    w = ((0, 1), (1, 1), (0, -1), (1, -1))
    assert word_reduce(w, 2).letters == w


def test_word_reduce_is_confluent():
    rng = random.Random(0)
    for _ in range(200):
        raw = [(rng.randint(0, 1), rng.choice((1, -1))) for _ in range(rng.randint(0, 12))]
        reduced = word_reduce(raw, 2)
        # reducing any rotation of the cancellation order gives the same result:
        # re-reduce the already reduced word concatenated from random splits
        k = rng.randint(0, len(raw))
        left = word_reduce(raw[:k], 2)
        right = word_reduce(raw[k:], 2)
        assert (left * right).letters == reduced.letters


def test_word_parse_and_str():
    w = parse_word("aba'b'")
    assert str(w) == "aba'b'"
    assert str(parse_word("1")) == "1"
    with pytest.raises(ValueError):
        parse_word("ab", size=1)
    with pytest.raises(ValueError):
        parse_word("a2")


def test_enumerate_counts():
    assert len(enumerate_reduced_words(2, 1)) == 5
    assert len(enumerate_reduced_words(2, 2)) == 17
    assert len(enumerate_reduced_words(1, 3)) == 7
    assert len(enumerate_reduced_words(2, 3)) == 53
    assert len(enumerate_reduced_words(2, 4)) == 161


def test_enumerate_no_duplicates():
    words = enumerate_reduced_words(2, 4)
    assert len({w.letters for w in words}) == len(words)


def test_image_of_generator():
    img = magnus_image(parse_word("a"), 3)
    assert img.terms == {"": Fraction(1), "a": Fraction(1)}


def test_image_of_inverse_generator():
    img = magnus_image(parse_word("a'"), 3)
    assert img.terms == {
        "": Fraction(1),
        "a": Fraction(-1),
        "aa": Fraction(1),
        "aaa": Fraction(-1),
    }


def test_image_of_commutator():
    img = magnus_image(parse_word("a'b'ab"), 2)
    assert img.terms == {"": Fraction(1), "ab": Fraction(1), "ba": Fraction(-1)}


def test_image_is_multiplicative():
    rng = random.Random(1)
    words = enumerate_reduced_words(2, 3)
    for _ in range(100):
        u = rng.choice(words)
        v = rng.choice(words)
        product = u * v
        lhs = magnus_image(product, 4)
        rhs = magnus_image(u, 4) * magnus_image(v, 4)
        assert lhs == rhs


def test_image_of_inverse_is_series_inverse():
    rng = random.Random(2)
    words = enumerate_reduced_words(2, 3)
    for _ in range(60):
        w = rng.choice(words)
        assert magnus_image(w.inverse(), 4) == magnus_image(w, 4).invert()


def test_image_has_unit_identity_coefficient():
    for w in enumerate_reduced_words(2, 3):
        assert magnus_image(w, 3).identity_coefficient() == Fraction(1)


@pytest.mark.parametrize("size,length,degree,count", [(2, 3, 3, 53), (1, 2, 2, 5), (2, 4, 4, 161)])
def test_injectivity_panels(size, length, degree, count):
    report = verify_magnus_injectivity(size, length, degree)
    assert report.injective
    assert report.word_count == count


def test_injectivity_requires_degree_at_least_length():
    with pytest.raises(ValueError):
        verify_magnus_injectivity(2, 4, 3)


def test_powers_of_one_generator_are_binomial_rows():
    for j in range(-2, 3):
        letters = tuple((0, 1 if j > 0 else -1) for _ in range(abs(j)))
        img = magnus_image(FreeWord(1, letters), 2)
        if j >= 0:
            assert img.coefficient("a") == j
        else:
            assert img.coefficient("a") == j  # (1+a)^-|j| starts 1 - |j| a


def test_free_monoid_context():
    m = FreeMonoid(2)
    assert m.parse_element("1") == ""
    assert m.format_element("") == "1"
    assert m.weight("abba") == 4
    with pytest.raises(ValueError):
        m.parse_element("cc")
    f = GradedSeries(m, 2, {"ab": Fraction(1)}, QQ)
    assert f.coefficient("ab") == 1
