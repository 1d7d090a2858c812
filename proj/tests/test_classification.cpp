#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "kdeck/classification.hpp"
#include "kdeck/deck.hpp"
#include "kdeck/group.hpp"
#include "kdeck/isomorphism.hpp"

using namespace kdeck;

namespace {

const DeckSpec kStd(3, 4);

Hand triple(CardId a, CardId b, CardId c) {
  return Hand(kStd, std::vector<CardId>{a, b, c});
}

}  // namespace

TEST_CASE("three-card symbols count shared and pairwise-common attributes") {
  // All four attributes shared pairwise nowhere, three cards in a line.
  CHECK(symbol3(triple(0, 1, 2)) == Symbol3{3, {0, 0, 0}});
  // 0000, 0001, 0002 share color/shape/fill; number differs everywhere.
  CHECK(symbol3(parse_hand("0000 0001 0002", kStd)) == Symbol3{3, {0, 0, 0}});
  // 0000, 0011, 0022: color+shape shared by all; fill+number split 3 ways.
  CHECK(symbol3(parse_hand("0000 0011 0022", kStd)) == Symbol3{2, {0, 0, 0}});
  // 0000, 0001, 0010: fill and number are each shared by a different pair.
  CHECK(symbol3(parse_hand("0000 0001 0010", kStd)) == Symbol3{2, {0, 1, 1}});
  // 0000, 0011, 0012: only one pair shares an attribute beyond the common two.
  CHECK(symbol3(parse_hand("0000 0011 0012", kStd)) == Symbol3{2, {0, 0, 1}});
  CHECK_THROWS_AS(symbol3(parse_hand("0000 0001", kStd)),
                  std::invalid_argument);
  CHECK_THROWS_AS(symbol3(Hand(DeckSpec(4, 3), std::vector<CardId>{0, 1, 2})),
                  std::invalid_argument);
}

TEST_CASE("exactly twenty symbols are realizable, and no others") {
  auto symbols = valid_symbols();
  CHECK(symbols.size() == 20);
  CHECK(std::is_sorted(symbols.begin(), symbols.end()));
  for (const Symbol3& s : symbols) CHECK(is_valid_symbol(s));

  // Collect every symbol realized by an actual triple.
  std::set<Symbol3> seen;
  for (CardId a = 0; a < 81; ++a)
    for (CardId b = a + 1; b < 81; ++b)
      for (CardId c = b + 1; c < 81; ++c) seen.insert(symbol3(triple(a, b, c)));
  CHECK(std::vector<Symbol3>(seen.begin(), seen.end()) == symbols);

  CHECK(!is_valid_symbol(Symbol3{4, {0, 0, 0}}));
  CHECK(!is_valid_symbol(Symbol3{0, {2, 1, 0}}));  // parts not ascending
  CHECK(!is_valid_symbol(Symbol3{2, {0, 0, 2}}));  // t + p3 > 3
  CHECK(!is_valid_symbol(Symbol3{1, {1, 1, 2}}));  // t + sum > 4
}

TEST_CASE("representative hands realize their symbol") {
  for (const Symbol3& s : valid_symbols()) {
    Hand rep = representative_hand(s);
    CHECK(rep.size() == 3);
    CHECK(symbol3(rep) == s);
  }
  CHECK_THROWS_AS(representative_hand(Symbol3{4, {0, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("class size factors match the worked example") {
  ClassSizeFactors f = class_size_factors(Symbol3{1, {0, 1, 2}});
  CHECK(f.a == 12);
  CHECK(f.b == 27);
  CHECK(f.c == 6);
  CHECK(f.d == 4);
  CHECK(f.e == 1);
  CHECK(symbol_class_size(Symbol3{1, {0, 1, 2}}) == 7776);

  // Fully symmetric parts divide by 6; one repeated pair divides by 2.
  CHECK(class_size_factors(Symbol3{0, {1, 1, 1}}).e == 6);
  CHECK(class_size_factors(Symbol3{0, {0, 2, 2}}).e == 2);
  CHECK(class_size_factors(Symbol3{0, {0, 1, 2}}).e == 1);
}

TEST_CASE("formula sizes agree with an exhaustive tally over all triples") {
  std::map<Symbol3, BigInt> tally;
  for (CardId a = 0; a < 81; ++a)
    for (CardId b = a + 1; b < 81; ++b)
      for (CardId c = b + 1; c < 81; ++c) tally[symbol3(triple(a, b, c))] += 1;

  BigInt total = 0;
  for (const Symbol3& s : valid_symbols()) {
    CHECK(symbol_class_size(s) == tally.at(s));
    total += tally.at(s);
  }
  CHECK(total == binomial(81, 3));
}

TEST_CASE("class enumeration on the standard deck, small hand sizes") {
  auto none = enumerate_classes(kStd, 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].representative.hand == Hand(kStd));
  CHECK(none[0].size == 1);

  auto singles = enumerate_classes(kStd, 1);
  REQUIRE(singles.size() == 1);
  CHECK(singles[0].representative.hand == Hand(kStd, std::vector<CardId>{0}));
  CHECK(singles[0].size == 81);

  auto pairs = enumerate_classes(kStd, 2);
  REQUIRE(pairs.size() == 4);
  std::vector<std::uint64_t> sizes;
  BigInt total = 0;
  for (const ClassRecord& rec : pairs) {
    CHECK(canonical_form(rec.representative.hand) == rec.representative);
    CHECK(orbit_size(rec.representative.hand) == rec.size);
    CHECK(!rec.symbol.has_value());
    sizes.push_back(rec.size);
    total += rec.size;
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{324, 648, 972, 1296});
  CHECK(total == binomial(81, 2));
  CHECK(std::is_sorted(pairs.begin(), pairs.end(),
                       [](const ClassRecord& x, const ClassRecord& y) {
                         return Hand::compare(x.representative.hand,
                                              y.representative.hand) < 0;
                       }));

  // Three-card records carry their symbol and match the formula sizes.
  auto triples = enumerate_classes(kStd, 3);
  REQUIRE(triples.size() == 20);
  std::set<Symbol3> seen;
  for (const ClassRecord& rec : triples) {
    REQUIRE(rec.symbol.has_value());
    CHECK(*rec.symbol == symbol3(rec.representative.hand));
    CHECK(rec.size == symbol_class_size(*rec.symbol));
    seen.insert(*rec.symbol);
  }
  CHECK(seen.size() == 20);
}

TEST_CASE("enumeration and Burnside agree on every hand size of a tiny deck") {
  DeckSpec spec(2, 3);  // deck 8, group order 48
  auto burnside = count_classes_burnside(spec);
  REQUIRE(burnside.size() == 9);

  BigInt subsets_total = 0;
  for (int n = 0; n <= 8; ++n) {
    auto classes = enumerate_classes(spec, n);
    CHECK(BigInt(classes.size()) == burnside[n]);
    BigInt covered = 0;
    for (const ClassRecord& rec : classes) covered += rec.size;
    CHECK(covered == binomial(8, n));
    subsets_total += covered;
  }
  CHECK(subsets_total == BigInt(256));

  // Complementation pairs hand sizes n and 8-n.
  for (int n = 0; n <= 8; ++n) CHECK(burnside[n] == burnside[8 - n]);
}

TEST_CASE("Burnside counts for the standard deck start 1 1 4 20 144") {
  auto counts = count_classes_burnside(kStd);
  REQUIRE(counts.size() == 82);
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 1);
  CHECK(counts[2] == 4);
  CHECK(counts[3] == 20);
  CHECK(counts[4] == 144);
  for (int n = 0; n <= 81; ++n) CHECK(counts[n] == counts[81 - n]);
  // Totals are astronomically large mid-deck; sanity-check monotone growth.
  CHECK(counts[40] > BigInt("1000000000000000000"));
}

TEST_CASE("class_of summarizes a single hand") {
  ClassRecord rec = class_of(triple(0, 1, 2));
  CHECK(rec.representative == canonical_form(triple(0, 1, 2)));
  CHECK(rec.size == 108);
  REQUIRE(rec.symbol.has_value());
  CHECK(*rec.symbol == Symbol3{3, {0, 0, 0}});
  CHECK(to_text(rec) == "symbol=(3;0,0,0) rep=0000 0001 0002 size=108");

  ClassRecord pair = class_of(Hand(kStd, std::vector<CardId>{0, 1}));
  CHECK(!pair.symbol.has_value());
  CHECK(to_text(pair).substr(0, 9) == "symbol=- ");
}

TEST_CASE("symbol text round trips") {
  CHECK(to_text(Symbol3{1, {0, 1, 2}}) == "(1;0,1,2)");
  for (const Symbol3& s : valid_symbols())
    CHECK(parse_symbol(to_text(s)) == s);
  CHECK_THROWS_AS(parse_symbol("(1;0,1"), ParseError);
  CHECK_THROWS_AS(parse_symbol("1;0,1,2)"), ParseError);
  CHECK_THROWS_AS(parse_symbol("(4;0,0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_symbol("(0;2,1,0)"), std::invalid_argument);
}

TEST_CASE("enumeration respects capacity limits") {
  Caps tight;
  tight.max_subsets = 1000;
  CHECK_THROWS_AS(enumerate_classes(kStd, 3, tight), CapacityError);
  Caps small_group;
  small_group.max_group_order = 100;
  CHECK_THROWS_AS(enumerate_classes(kStd, 2, small_group), CapacityError);
  CHECK_THROWS_AS(count_classes_burnside(DeckSpec(3, 6), Caps{}),
                  CapacityError);
}
