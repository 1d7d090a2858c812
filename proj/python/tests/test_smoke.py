from fractions import Fraction

import pytest

import kdeck


def test_deck_sizes():
    assert kdeck.deck_size() == 81
    assert kdeck.deck_size(4, 3) == 64
    assert kdeck.deck(2, 2) == "00 01 10 11"


def test_describe():
    assert kdeck.describe("0000") == "red oval solid single"
    assert kdeck.describe("1202") == "green squiggle solid triple"


def test_set_count_and_probability():
    count, probability = kdeck.count_goal("set")
    assert count == 1080
    assert probability == Fraction(1, 79)
    stun_count, stun_probability = kdeck.count_goal("stun")
    assert stun_count == 16848
    assert stun_probability == Fraction(78, 395)


def test_predicates():
    assert kdeck.is_set("0000 1111 2222")
    assert not kdeck.is_set("0000 0001 0012")
    assert kdeck.is_stun("0000 0011 1100")
    assert kdeck.is_quad("000 111 222 333")


def test_canonical_invariance():
    a = "0000 0111 1012"
    witness = kdeck.isomorphism_witness(a, a)
    assert witness is not None
    element, mapping = witness
    assert element.startswith("psi=")
    assert all(pair[0] in a.split() for pair in mapping)

    # A relabeled hand stays in the same class.
    b = "2222 2111 1210"  # image under value swaps 0<->2 everywhere
    assert kdeck.are_isomorphic(a, b)
    assert kdeck.canonical_form(a) == kdeck.canonical_form(b)


def test_classify():
    record = kdeck.classify("0000 0001 0002")
    assert record["symbol"] == "(3;0,0,0)"
    assert record["representative"] == "0000 0001 0002"
    assert record["size"] == 108
    assert kdeck.symbol("0000 1111 2222") == "(0;0,0,0)"
    assert kdeck.stabilizer_order("0000") == 384
    assert kdeck.group_order() == 31104


def test_class_counts_are_exact_bigints():
    counts = kdeck.class_counts()
    assert counts[:5] == [1, 1, 4, 20, 144]
    assert len(counts) == 82
    assert counts[40] > 2**62
    assert sum(counts) > 2**64  # exact integers beyond 64-bit range
    assert counts == counts[::-1]


def test_find_and_partition():
    assert kdeck.find_goal_hands("set", "0000 0001 0002 1111") == [
        "0000 0001 0002"
    ]
    blocks = kdeck.partition("set", "0000 0001 0002 0010 0011 0012")
    assert blocks == ["0000 0001 0002", "0010 0011 0012"]
    assert kdeck.partition("set", "0000 0001 0002 0010 0011 0020") is None


def test_deal_reproducibility():
    board = kdeck.deal(12, seed=7)
    assert board == kdeck.deal(12, seed=7)
    cards = board.split()
    assert len(cards) == 12
    assert cards == sorted(cards)


def test_errors():
    with pytest.raises(ValueError):
        kdeck.describe("0031")
    with pytest.raises(kdeck.CapacityError):
        kdeck.class_counts(3, 6)  # symmetry group too large to scan
