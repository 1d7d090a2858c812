#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kdeck/caps.hpp"

namespace kdeck {

/// Index of a card within its deck. Ids are the base-k numerals whose most
/// significant digit is attribute 0, so id order, lexicographic digit order,
/// and text order all coincide.
using CardId = std::uint32_t;

/// Hard ceiling on materialized deck size, independent of configured caps.
inline constexpr std::uint64_t kDeckSizeLimit = 1u << 20;

/// Deck parameters: d attributes, each taking k values; k^d cards total.
/// The standard deck is k=3, d=4 (81 cards).
struct DeckSpec {
  int k = 3;
  int d = 4;

  DeckSpec() = default;
  DeckSpec(int k_, int d_);

  /// k^d. Throws CapacityError beyond kDeckSizeLimit.
  std::uint64_t deck_size() const;

  friend bool operator==(const DeckSpec&, const DeckSpec&) = default;
};

/// A single card: one value per attribute, digit a in [0, k).
/// Cards order lexicographically on their digit sequences.
class Card {
 public:
  Card() = default;
  explicit Card(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {}

  const std::vector<std::uint8_t>& digits() const { return digits_; }
  int attribute_count() const { return static_cast<int>(digits_.size()); }

  friend auto operator<=>(const Card&, const Card&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

/// The card's value at `attribute`; throws std::out_of_range.
int value_of(const Card& card, int attribute);

/// Card <-> id conversions. card_id validates the card against the spec
/// (digit count and ranges) and throws std::invalid_argument on mismatch.
CardId card_id(const Card& card, const DeckSpec& spec);
Card card_from_id(CardId id, const DeckSpec& spec);

/// The unique third card completing {x, y} to a Set. Defined for k=3 decks
/// only; throws std::invalid_argument otherwise or when x == y.
Card complete_set(const Card& x, const Card& y, const DeckSpec& spec);

/// A set of distinct cards from one deck, stored as a bitset over card ids.
/// ids()/cards() and the text form list cards in ascending order. Library
/// operations never mutate their Hand arguments; insert/erase exist for
/// building hands incrementally.
class Hand {
 public:
  explicit Hand(const DeckSpec& spec);
  Hand(const DeckSpec& spec, const std::vector<CardId>& ids);
  Hand(const DeckSpec& spec, const std::vector<Card>& cards);

  /// Reconstitutes a hand from raw bitset words (must be exactly the word
  /// count for the deck, with no bits at or above k^d).
  static Hand from_words(const DeckSpec& spec, std::vector<std::uint64_t> words);

  const DeckSpec& spec() const { return spec_; }
  std::uint64_t deck_size() const { return deck_size_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  bool contains(CardId id) const;
  bool contains(const Card& card) const;
  void insert(CardId id);
  void erase(CardId id);

  std::vector<CardId> ids() const;
  std::vector<Card> cards() const;

  /// All deck cards not in this hand.
  Hand complement() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Total order on same-spec hands: by size, then lexicographically on the
  /// ascending card-id sequence (equivalently: the lowest id present in
  /// exactly one hand decides). Throws std::invalid_argument across specs.
  static int compare(const Hand& a, const Hand& b);

  friend bool operator==(const Hand& a, const Hand& b) {
    return a.spec_ == b.spec_ && a.words_ == b.words_;
  }
  friend bool operator<(const Hand& a, const Hand& b) { return compare(a, b) < 0; }

 private:
  void check_id(CardId id) const;

  DeckSpec spec_;
  std::uint64_t deck_size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The full deck as a hand. Throws CapacityError when k^d exceeds
/// caps.max_deck_size.
Hand make_deck(const DeckSpec& spec, const Caps& caps = {});

/// Text forms. A card is d digit characters (attribute 0 first); a hand is
/// whitespace-separated cards. Only k <= 10 has a text form.
std::string to_text(const Card& card);
std::string to_text(const Hand& hand);
Card parse_card(std::string_view text, const DeckSpec& spec);
Hand parse_hand(std::string_view text, const DeckSpec& spec);

/// parse_hand plus '#' comments (to end of line); used for board files.
Hand parse_board(std::string_view text, const DeckSpec& spec);

/// Display names for the physical 81-card deck (k=3, d=4), attribute order
/// color, shape, fill, number.
namespace standard_deck {

inline constexpr std::array<std::string_view, 4> kAttributeNames{
    "color", "shape", "fill", "number"};
inline constexpr std::array<std::array<std::string_view, 3>, 4> kValueNames{{
    {"red", "green", "purple"},
    {"oval", "diamond", "squiggle"},
    {"solid", "empty", "stripe"},
    {"single", "double", "triple"},
}};

/// Name lookups; throw std::invalid_argument / std::out_of_range.
int attribute_index(std::string_view name);
int value_index(int attribute, std::string_view name);
std::string_view attribute_name(int attribute);
std::string_view value_name(int attribute, int value);

/// "red oval solid single" style rendering of a card.
std::string describe(const Card& card);

}  // namespace standard_deck

}  // namespace kdeck
