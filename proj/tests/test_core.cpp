#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "kdeck/bigint.hpp"
#include "kdeck/deck.hpp"
#include "kdeck/group.hpp"

using namespace kdeck;

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;  // bias is irrelevant for test sampling
}

Hand random_hand(std::mt19937_64& rng, const DeckSpec& spec, int m) {
  std::set<CardId> ids;
  while (static_cast<int>(ids.size()) < m)
    ids.insert(static_cast<CardId>(bounded(rng, spec.deck_size())));
  return Hand(spec, std::vector<CardId>(ids.begin(), ids.end()));
}

}  // namespace

TEST_CASE("deck sizes and construction limits") {
  CHECK(DeckSpec(3, 4).deck_size() == 81);
  CHECK(DeckSpec(4, 3).deck_size() == 64);
  CHECK(DeckSpec(2, 2).deck_size() == 4);
  CHECK(DeckSpec(4, 9).deck_size() == 262144);
  CHECK_THROWS_AS(DeckSpec(10, 7).deck_size(), CapacityError);
  CHECK_THROWS_AS(DeckSpec(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(DeckSpec(3, 0), std::invalid_argument);
}

TEST_CASE("card ids, digit order, and text order all agree") {
  DeckSpec spec(3, 4);
  Card prev = card_from_id(0, spec);
  for (CardId id = 1; id < 81; ++id) {
    Card cur = card_from_id(id, spec);
    CHECK(card_id(cur, spec) == id);
    CHECK(prev < cur);
    CHECK(to_text(prev) < to_text(cur));
    prev = cur;
  }
  CHECK(to_text(card_from_id(0, spec)) == "0000");
  CHECK(to_text(card_from_id(5, spec)) == "0012");
  CHECK(to_text(card_from_id(80, spec)) == "2222");
  CHECK(card_id(parse_card("1012", spec), spec) == 32);  // 1*27 + 0*9 + 1*3 + 2
}

TEST_CASE("value_of reads attributes and rejects bad indices") {
  DeckSpec spec(3, 4);
  Card c = parse_card("0012", spec);
  CHECK(value_of(c, 0) == 0);
  CHECK(value_of(c, 2) == 1);
  CHECK(value_of(c, 3) == 2);
  CHECK_THROWS_AS(value_of(c, 4), std::out_of_range);
  CHECK_THROWS_AS(value_of(c, -1), std::out_of_range);
}

TEST_CASE("set completion follows the per-attribute rule for every pair") {
  DeckSpec spec(3, 4);
  for (CardId i = 0; i < 81; ++i) {
    Card x = card_from_id(i, spec);
    for (CardId j = 0; j < 81; ++j) {
      if (i == j) continue;
      Card y = card_from_id(j, spec);
      Card z = complete_set(x, y, spec);
      for (int a = 0; a < 4; ++a) {
        int vx = value_of(x, a), vy = value_of(y, a), vz = value_of(z, a);
        if (vx == vy) {
          CHECK(vz == vx);
        } else {
          CHECK(vz != vx);
          CHECK(vz != vy);
        }
      }
      CHECK(complete_set(y, x, spec) == z);
    }
  }
  Card c = card_from_id(7, spec);
  CHECK_THROWS_AS(complete_set(c, c, spec), std::invalid_argument);
  DeckSpec quad(4, 3);
  CHECK_THROWS_AS(complete_set(card_from_id(0, quad), card_from_id(1, quad),
                               quad),
                  std::invalid_argument);
}

TEST_CASE("hand membership, iteration, and complement") {
  DeckSpec spec(3, 4);
  Hand h(spec, std::vector<CardId>{5, 80, 0, 13});
  CHECK(h.size() == 4);
  CHECK(h.ids() == std::vector<CardId>{0, 5, 13, 80});
  CHECK(h.contains(CardId{13}));
  CHECK(!h.contains(CardId{14}));
  CHECK_THROWS_AS(h.contains(CardId{81}), std::invalid_argument);
  h.erase(13);
  CHECK(h.size() == 3);
  Hand c = h.complement();
  CHECK(c.size() == 78);
  for (CardId id = 0; id < 81; ++id) CHECK(h.contains(id) != c.contains(id));
  CHECK(make_deck(spec).size() == 81);
  CHECK_THROWS_AS(make_deck(spec, Caps{.max_deck_size = 64}), CapacityError);
}

TEST_CASE("hand comparison is by size then sorted-id sequence") {
  DeckSpec spec(3, 4);
  std::mt19937_64 rng(123);
  for (int iter = 0; iter < 500; ++iter) {
    Hand a = random_hand(rng, spec, static_cast<int>(bounded(rng, 7)));
    Hand b = random_hand(rng, spec, static_cast<int>(bounded(rng, 7)));
    std::vector<CardId> ia = a.ids(), ib = b.ids();
    int ref;
    if (ia.size() != ib.size())
      ref = ia.size() < ib.size() ? -1 : 1;
    else if (ia == ib)
      ref = 0;
    else
      ref = std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(),
                                         ib.end())
                ? -1
                : 1;
    CHECK(Hand::compare(a, b) == ref);
    CHECK(Hand::compare(b, a) == -ref);
  }
  CHECK_THROWS_AS(Hand::compare(Hand(spec), Hand(DeckSpec(4, 3))),
                  std::invalid_argument);
}

TEST_CASE("hand text round trips and parse errors carry offsets") {
  DeckSpec spec(3, 4);
  Hand h = parse_hand("0012 2222\n0000", spec);
  CHECK(h.ids() == std::vector<CardId>{0, 5, 80});
  CHECK(to_text(h) == "0000 0012 2222");
  CHECK(parse_hand(to_text(h), spec) == h);
  CHECK(parse_hand("", spec).empty());

  CHECK_THROWS_AS(parse_hand("0000 0000", spec), ParseError);
  try {
    parse_hand("0000 0031", spec);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);  // the '3'
  }
  try {
    parse_hand("0000 003", spec);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 8);  // token too short, reported at its end
  }

  Hand board =
      parse_board("# full line comment\n0000 0001 # trailing\n0002\n", spec);
  CHECK(board.ids() == std::vector<CardId>{0, 1, 2});
}

TEST_CASE("standard deck display names") {
  using namespace standard_deck;
  CHECK(attribute_index("color") == 0);
  CHECK(attribute_index("fill") == 2);
  CHECK(value_index(1, "squiggle") == 2);
  CHECK(value_name(3, 1) == "double");
  CHECK_THROWS_AS(attribute_index("colour"), std::invalid_argument);
  CHECK_THROWS_AS(value_name(0, 3), std::out_of_range);
  DeckSpec spec(3, 4);
  CHECK(describe(card_from_id(0, spec)) == "red oval solid single");
  CHECK(describe(parse_card("1202", spec)) == "green squiggle solid triple");
}

TEST_CASE("group order matches the closed form") {
  for (auto [k, d] : {std::pair{3, 4}, {4, 3}, {2, 2}, {2, 5}, {1, 3}}) {
    DeckSpec spec(k, d);
    BigInt expect = factorial(d);
    for (int a = 0; a < d; ++a) expect *= factorial(k);
    CHECK(group_order(spec) == expect);
  }
  CHECK(group_order(DeckSpec(3, 4)) == 31104);
  CHECK(group_order(DeckSpec(4, 3)) == 82944);
  CHECK(group_order(DeckSpec(1, 3)) == 6);
}

TEST_CASE("identity, composition, and inverse act as expected") {
  DeckSpec spec(3, 4);
  std::mt19937_64 rng(77);
  GroupElement id = identity_element(spec);
  for (int iter = 0; iter < 200; ++iter) {
    GroupElement g1 = element_at(spec, bounded(rng, 31104));
    GroupElement g2 = element_at(spec, bounded(rng, 31104));
    Card x = card_from_id(static_cast<CardId>(bounded(rng, 81)), spec);
    CHECK(apply_element(id, x) == x);
    CHECK(apply_element(compose(g1, g2), x) ==
          apply_element(g1, apply_element(g2, x)));
    CHECK(compose(g1, inverse(g1)) == id);
    CHECK(compose(inverse(g1), g1) == id);
    CHECK(apply_element(inverse(g1), apply_element(g1, x)) == x);
  }
  for (int iter = 0; iter < 50; ++iter) {
    GroupElement g1 = element_at(spec, bounded(rng, 31104));
    GroupElement g2 = element_at(spec, bounded(rng, 31104));
    GroupElement g3 = element_at(spec, bounded(rng, 31104));
    CHECK(compose(compose(g1, g2), g3) == compose(g1, compose(g2, g3)));
  }
}

TEST_CASE("apply_to_hand agrees with per-card application") {
  DeckSpec spec(3, 4);
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    GroupElement g = element_at(spec, bounded(rng, 31104));
    Hand h = random_hand(rng, spec, static_cast<int>(bounded(rng, 9)));
    Hand img = apply_to_hand(g, h);
    CHECK(img.size() == h.size());
    Hand expect(spec);
    for (const Card& c : h.cards())
      expect.insert(card_id(apply_element(g, c), spec));
    CHECK(img == expect);
  }
}

TEST_CASE("enumeration is complete, duplicate-free, and matches element_at") {
  DeckSpec small(2, 2);
  auto group = enumerate_group(small);
  CHECK(group.size() == 8);
  std::set<std::string> texts;
  for (std::size_t i = 0; i < group.size(); ++i) {
    validate_element(group[i], small);
    texts.insert(to_text(group[i]));
    CHECK(element_at(small, i) == group[i]);
  }
  CHECK(texts.size() == 8);
  CHECK(group[0] == identity_element(small));

  // The 8 tuples act as 8 distinct deck permutations (faithful for k >= 2).
  std::set<std::vector<CardId>> rows;
  for (const GroupElement& g : group) {
    std::vector<CardId> row;
    for (CardId id = 0; id < 4; ++id)
      row.push_back(card_id(apply_element(g, card_from_id(id, small)), small));
    rows.insert(row);
  }
  CHECK(rows.size() == 8);

  DeckSpec spec(3, 4);
  std::map<std::uint64_t, GroupElement> probes;
  for (std::uint64_t e : {0ull, 1ull, 2ull, 6ull, 1296ull, 7776ull, 12345ull,
                          31103ull})
    probes.emplace(e, element_at(spec, e));
  std::uint64_t count = 0;
  for_each_element(spec, [&](const GroupElement& g, std::uint64_t e) {
    ++count;
    auto it = probes.find(e);
    if (it != probes.end()) CHECK(g == it->second);
  });
  CHECK(count == 31104);
  CHECK(element_at(spec, 0) == identity_element(spec));
  CHECK_THROWS_AS(element_at(spec, 31104), std::invalid_argument);
  CHECK_THROWS_AS(
      for_each_element(DeckSpec(3, 5),
                       [](const GroupElement&, std::uint64_t) {},
                       Caps{.max_group_order = 1000}),
      CapacityError);
}

TEST_CASE("value permutations act identically when k = 1") {
  DeckSpec spec(1, 3);
  auto group = enumerate_group(spec);
  CHECK(group.size() == 6);  // tuples, even though the action collapses
  Card only = card_from_id(0, spec);
  for (const GroupElement& g : group) CHECK(apply_element(g, only) == only);
}

TEST_CASE("cycle lengths partition the deck") {
  DeckSpec spec(3, 4);
  auto id_cycles = cycle_lengths(identity_element(spec), spec);
  CHECK(id_cycles == std::vector<std::uint32_t>(81, 1));

  // Swapping two values of one attribute pairs up 54 cards.
  GroupElement g = identity_element(spec);
  std::swap(g.value_maps[0][0], g.value_maps[0][1]);
  auto cycles = cycle_lengths(g, spec);
  CHECK(cycles.size() == 54);  // 27 fixed + 27 transpositions
  CHECK(std::count(cycles.begin(), cycles.end(), 1u) == 27);
  CHECK(std::count(cycles.begin(), cycles.end(), 2u) == 27);

  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 20; ++iter) {
    auto lens = cycle_lengths(element_at(spec, bounded(rng, 31104)), spec);
    std::uint64_t total = 0;
    for (auto len : lens) total += len;
    CHECK(total == 81);
    CHECK(std::is_sorted(lens.begin(), lens.end()));
  }
}

TEST_CASE("element text form round trips") {
  DeckSpec spec(3, 4);
  CHECK(to_text(identity_element(spec)) ==
        "psi=0123;theta_0=012;theta_1=012;theta_2=012;theta_3=012");
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    GroupElement g = element_at(spec, bounded(rng, 31104));
    CHECK(parse_element(to_text(g), spec) == g);
  }
  CHECK_THROWS_AS(parse_element("psi=0123", spec), ParseError);
  CHECK_THROWS_AS(parse_element("psi=0113;theta_0=012;theta_1=012;"
                                "theta_2=012;theta_3=012",
                                spec),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_element("psi=0123;theta_0=012;theta_1=012;theta_2=012;"
                    "theta_3=012 ",
                    spec),
      ParseError);
}
