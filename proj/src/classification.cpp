#include "kdeck/classification.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>

#include "kdeck/detail/group_scan.hpp"
#include "kdeck/group.hpp"

namespace kdeck {
namespace {

const DeckSpec kStandard{3, 4};

void require_standard_triple(const Hand& hand) {
  if (hand.spec() != kStandard)
    throw std::invalid_argument(
        "three-card symbols are defined for the 81-card deck (k=3, d=4)");
  if (hand.size() != 3)
    throw std::invalid_argument("symbols classify three-card hands, got " +
                                std::to_string(hand.size()) + " cards");
}

// Factors depending on t alone: placements of the all-shared attributes
// with their common values, and choices of the first card's free values.
constexpr std::uint64_t kTFactorA[4] = {1, 12, 54, 108};
constexpr std::uint64_t kTFactorB[4] = {81, 27, 9, 3};

// Second cards consistent with the symbol, counted against the all-zeros
// first card with attributes [0, t) designated as all-shared: agree there,
// and on exactly parts[2] of the rest.
std::uint64_t count_second_cards(int t, int p3) {
  std::uint64_t n = 0;
  for (CardId id = 0; id < 81; ++id) {
    Card c = card_from_id(id, kStandard);
    bool pinned = true;
    int extra = 0;
    for (int a = 0; a < 4; ++a) {
      if (a < t)
        pinned = pinned && c.digits()[a] == 0;
      else
        extra += c.digits()[a] == 0;
    }
    if (pinned && id != 0 && extra == p3) ++n;
  }
  return n;
}

// Third cards, counted against the representative's first two: agree with
// both on [0, t) and nowhere else, agree with x1 alone on exactly parts[1]
// attributes and with x2 alone on exactly parts[0].
std::uint64_t count_third_cards(const Symbol3& s) {
  Hand rep = representative_hand(s);
  std::vector<Card> fixed = rep.cards();
  const Card& x1 = fixed[0];
  const Card& x2 = fixed[1];
  std::uint64_t n = 0;
  for (CardId id = 0; id < 81; ++id) {
    Card c = card_from_id(id, kStandard);
    if (c == x1 || c == x2) continue;
    int all3 = 0, with1 = 0, with2 = 0;
    bool pinned = true;
    for (int a = 0; a < 4; ++a) {
      bool e1 = c.digits()[a] == x1.digits()[a];
      bool e2 = c.digits()[a] == x2.digits()[a];
      if (e1 && e2) {
        ++all3;
        if (a >= s.t) pinned = false;  // an extra all-shared attribute
      } else if (e1) {
        ++with1;
      } else if (e2) {
        ++with2;
      }
    }
    if (pinned && all3 == s.t && with1 == s.parts[1] && with2 == s.parts[0])
      ++n;
  }
  return n;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

}  // namespace

Symbol3 symbol3(const Hand& hand) {
  require_standard_triple(hand);
  std::vector<Card> c = hand.cards();
  int t = 0, p01 = 0, p02 = 0, p12 = 0;
  for (int a = 0; a < 4; ++a) {
    bool e01 = c[0].digits()[a] == c[1].digits()[a];
    bool e02 = c[0].digits()[a] == c[2].digits()[a];
    bool e12 = c[1].digits()[a] == c[2].digits()[a];
    if (e01 && e02)
      ++t;
    else if (e01)
      ++p01;
    else if (e02)
      ++p02;
    else if (e12)
      ++p12;
  }
  Symbol3 s;
  s.t = t;
  s.parts = {p01, p02, p12};
  std::sort(s.parts.begin(), s.parts.end());
  return s;
}

bool is_valid_symbol(const Symbol3& s) {
  if (s.t < 0 || s.t > 3) return false;
  for (int p : s.parts)
    if (p < 0 || p > 3) return false;
  if (!(s.parts[0] <= s.parts[1] && s.parts[1] <= s.parts[2])) return false;
  if (s.t + s.parts[2] > 3) return false;
  return s.t + s.parts[0] + s.parts[1] + s.parts[2] <= 4;
}

std::vector<Symbol3> valid_symbols() {
  std::vector<Symbol3> out;
  for (int t = 0; t <= 3; ++t)
    for (int p1 = 0; p1 <= 3; ++p1)
      for (int p2 = p1; p2 <= 3; ++p2)
        for (int p3 = p2; p3 <= 3; ++p3) {
          Symbol3 s{t, {p1, p2, p3}};
          if (is_valid_symbol(s)) out.push_back(s);
        }
  std::sort(out.begin(), out.end());
  return out;
}

Hand representative_hand(const Symbol3& s) {
  if (!is_valid_symbol(s))
    throw std::invalid_argument("invalid symbol " + to_text(s));
  // Attribute blocks, in order: all-shared, then the surplus of each pair
  // (largest part first), then free attributes where all cards differ.
  int t_end = s.t;
  int p12_end = t_end + s.parts[2];  // shared by cards 1 and 2
  int p13_end = p12_end + s.parts[1];
  int p23_end = p13_end + s.parts[0];
  std::vector<std::uint8_t> x1(4, 0), x2(4), x3(4);
  for (int a = 0; a < 4; ++a) {
    if (a < t_end) {
      x2[a] = 0;
      x3[a] = 0;
    } else if (a < p12_end) {
      x2[a] = 0;
      x3[a] = 1;
    } else if (a < p13_end) {
      x2[a] = 1;
      x3[a] = 0;
    } else if (a < p23_end) {
      x2[a] = 1;
      x3[a] = 1;
    } else {
      x2[a] = 1;
      x3[a] = 2;
    }
  }
  return Hand(kStandard, std::vector<Card>{Card(std::move(x1)),
                                           Card(std::move(x2)),
                                           Card(std::move(x3))});
}

ClassSizeFactors class_size_factors(const Symbol3& s) {
  if (!is_valid_symbol(s))
    throw std::invalid_argument("invalid symbol " + to_text(s));
  ClassSizeFactors f;
  f.a = kTFactorA[s.t];
  f.b = kTFactorB[s.t];
  f.c = count_second_cards(s.t, s.parts[2]);
  f.d = count_third_cards(s);
  if (s.parts[0] == s.parts[2])
    f.e = 6;  // all three parts equal
  else if (s.parts[0] == s.parts[1] || s.parts[1] == s.parts[2])
    f.e = 2;
  else
    f.e = 1;
  return f;
}

std::uint64_t symbol_class_size(const Symbol3& s) {
  ClassSizeFactors f = class_size_factors(s);
  std::uint64_t product = f.a * f.b * f.c * f.d;
  if (product % f.e != 0)
    throw std::logic_error("class size factors are not divisible by " +
                           std::to_string(f.e));
  return product / f.e;
}

std::vector<ClassRecord> enumerate_classes(const DeckSpec& spec, int n,
                                           const Caps& caps) {
  std::uint64_t deck = spec.deck_size();
  if (deck > caps.max_deck_size)
    throw CapacityError("deck size " + std::to_string(deck) +
                        " exceeds max_deck_size = " +
                        std::to_string(caps.max_deck_size));
  if (n < 0 || static_cast<std::uint64_t>(n) > deck)
    throw std::invalid_argument("hand size " + std::to_string(n) +
                                " out of range for deck size " +
                                std::to_string(deck));
  auto scan = detail::GroupScan::get(spec);
  scan->require_group(caps);

  BigInt total = binomial(deck, n);
  if (total > BigInt(caps.max_subsets))
    throw CapacityError("subset count C(" + std::to_string(deck) + ", " +
                        std::to_string(n) + ") = " + total.str() +
                        " exceeds max_subsets = " +
                        std::to_string(caps.max_subsets));
  std::uint64_t total_u = total.convert_to<std::uint64_t>();

  std::vector<ClassRecord> out;
  bool standard_triples = n == 3 && spec == kStandard;
  if (n == 0) {
    out.push_back(ClassRecord{CanonicalForm{Hand(spec)}, 1, std::nullopt});
    return out;
  }

  // Binomial table for colex subset ranks, saturating far above any rank
  // that can occur (ranks themselves stay below total_u).
  std::vector<std::vector<std::uint64_t>> binom(
      deck + 1, std::vector<std::uint64_t>(n + 2, 0));
  for (std::uint64_t i = 0; i <= deck; ++i) {
    binom[i][0] = 1;
    for (int j = 1; j <= n + 1 && static_cast<std::uint64_t>(j) <= i; ++j)
      binom[i][j] = saturating_add(binom[i - 1][j - 1], binom[i - 1][j]);
  }
  auto rank_of = [&](const CardId* sorted_ids) {
    std::uint64_t r = 0;
    for (int j = 0; j < n; ++j) r += binom[sorted_ids[j]][j + 1];
    return r;
  };

  std::vector<std::uint64_t> visited((total_u + 63) / 64, 0);
  auto test_and_set = [&](std::uint64_t r) {
    std::uint64_t& w = visited[r >> 6];
    std::uint64_t bit = std::uint64_t{1} << (r & 63);
    bool was = w & bit;
    w |= bit;
    return was;
  };

  // Walk subsets in colex order (rank == running position); each unvisited
  // one starts a fresh class whose whole orbit is expanded and marked.
  std::vector<CardId> combo(n);
  std::iota(combo.begin(), combo.end(), 0);
  std::vector<CardId> sorted_img(n);
  for (std::uint64_t rank = 0;; ++rank) {
    if (!(visited[rank >> 6] >> (rank & 63) & 1)) {
      std::uint64_t orbit = 0;
      std::vector<CardId> best;
      scan->for_each_images(
          std::span<const CardId>(combo),
          [&](const CardId* img, std::uint64_t) {
            sorted_img.assign(img, img + n);
            std::sort(sorted_img.begin(), sorted_img.end());
            if (!test_and_set(rank_of(sorted_img.data()))) ++orbit;
            if (best.empty() || sorted_img < best) best = sorted_img;
          });
      ClassRecord rec{CanonicalForm{Hand(spec, best)}, orbit, std::nullopt};
      if (standard_triples) rec.symbol = symbol3(rec.representative.hand);
      out.push_back(std::move(rec));
    }
    // next combination, colex order
    int j = 0;
    while (j < n) {
      CardId next = combo[j] + 1;
      CardId limit =
          j + 1 < n ? combo[j + 1] : static_cast<CardId>(deck);
      if (next < limit) {
        combo[j] = next;
        for (int i = 0; i < j; ++i) combo[i] = static_cast<CardId>(i);
        break;
      }
      ++j;
    }
    if (j == n) break;
  }

  std::sort(out.begin(), out.end(),
            [](const ClassRecord& a, const ClassRecord& b) {
              return a.representative < b.representative;
            });
  return out;
}

std::vector<BigInt> count_classes_burnside(const DeckSpec& spec,
                                           const Caps& caps) {
  std::uint64_t deck = spec.deck_size();
  if (deck > caps.max_deck_size)
    throw CapacityError("deck size " + std::to_string(deck) +
                        " exceeds max_deck_size = " +
                        std::to_string(caps.max_deck_size));
  auto scan = detail::GroupScan::get(spec);
  scan->require_group(caps);

  // Group elements by deck cycle type; the subset-count polynomial
  // prod (1 + x^len) is expanded once per type.
  std::map<std::vector<std::uint32_t>, std::uint64_t> types;
  std::vector<bool> seen(deck);
  std::vector<std::uint32_t> lens;
  scan->for_each_perm([&](const CardId* row, std::uint64_t) {
    std::fill(seen.begin(), seen.end(), false);
    lens.clear();
    for (std::uint32_t id = 0; id < deck; ++id) {
      if (seen[id]) continue;
      std::uint32_t len = 0;
      for (std::uint32_t j = id; !seen[j]; j = row[j]) {
        seen[j] = true;
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    ++types[lens];
  });

  std::vector<BigInt> total(deck + 1, BigInt(0));
  std::vector<BigInt> poly(deck + 1);
  for (const auto& [type, mult] : types) {
    std::fill(poly.begin(), poly.end(), BigInt(0));
    poly[0] = 1;
    std::uint64_t deg = 0;
    for (std::uint32_t len : type) {
      deg += len;
      for (std::uint64_t i = deg; i >= len; --i) poly[i] += poly[i - len];
    }
    for (std::uint64_t m = 0; m <= deck; ++m) total[m] += mult * poly[m];
  }

  std::vector<BigInt> counts(deck + 1);
  const BigInt& order = scan->exact_order();
  for (std::uint64_t m = 0; m <= deck; ++m) {
    BigInt q, r;
    boost::multiprecision::divide_qr(total[m], order, q, r);
    if (r != 0)
      throw std::logic_error("orbit-count total not divisible by the order");
    counts[m] = q;
  }
  return counts;
}

ClassRecord class_of(const Hand& hand, const Caps& caps) {
  ClassRecord rec{canonical_form(hand, caps), orbit_size(hand, caps),
                  std::nullopt};
  if (hand.size() == 3 && hand.spec() == kStandard)
    rec.symbol = symbol3(hand);
  return rec;
}

std::string to_text(const Symbol3& s) {
  return "(" + std::to_string(s.t) + ";" + std::to_string(s.parts[0]) + "," +
         std::to_string(s.parts[1]) + "," + std::to_string(s.parts[2]) + ")";
}

Symbol3 parse_symbol(std::string_view text) {
  std::size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  };
  auto read_int = [&]() {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected a digit", pos);
    int v = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 99) throw ParseError("number too large", pos);
      ++pos;
    }
    return v;
  };
  Symbol3 s;
  expect('(');
  s.t = read_int();
  expect(';');
  s.parts[0] = read_int();
  expect(',');
  s.parts[1] = read_int();
  expect(',');
  s.parts[2] = read_int();
  expect(')');
  if (pos != text.size()) throw ParseError("trailing characters", pos);
  if (!is_valid_symbol(s))
    throw std::invalid_argument("invalid symbol " + to_text(s));
  return s;
}

std::string to_text(const ClassRecord& rec) {
  std::string out = "symbol=";
  out += rec.symbol ? to_text(*rec.symbol) : std::string("-");
  out += " rep=" + to_text(rec.representative.hand);
  out += " size=" + std::to_string(rec.size);
  return out;
}

}  // namespace kdeck
