#include "kdeck/deck.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "kdeck/bigint.hpp"

namespace kdeck {
namespace {

std::uint64_t word_count(std::uint64_t deck_size) {
  return (deck_size + 63) / 64;
}

// Shared by parse_card and parse_hand so hand parsing can report offsets
// into the full input rather than into one token.
Card parse_card_at(std::string_view token, const DeckSpec& spec,
                   std::size_t base) {
  if (spec.k > 10)
    throw std::invalid_argument("card text form requires k <= 10");
  if (token.size() != static_cast<std::size_t>(spec.d))
    throw ParseError("card must have exactly " + std::to_string(spec.d) +
                         " digits, got " + std::to_string(token.size()),
                     base + std::min(token.size(),
                                     static_cast<std::size_t>(spec.d)));
  std::vector<std::uint8_t> digits(spec.d);
  for (std::size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    if (c < '0' || c >= '0' + spec.k)
      throw ParseError(std::string("invalid digit '") + c + "' for k = " +
                           std::to_string(spec.k),
                       base + i);
    digits[i] = static_cast<std::uint8_t>(c - '0');
  }
  return Card(std::move(digits));
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace

DeckSpec::DeckSpec(int k_, int d_) : k(k_), d(d_) {
  if (k < 1 || k > 255)
    throw std::invalid_argument("k must be in [1, 255], got " +
                                std::to_string(k));
  if (d < 1)
    throw std::invalid_argument("d must be at least 1, got " +
                                std::to_string(d));
}

std::uint64_t DeckSpec::deck_size() const {
  std::uint64_t n = 1;
  for (int a = 0; a < d; ++a) {
    n *= static_cast<std::uint64_t>(k);
    if (n > kDeckSizeLimit) {
      BigInt exact = 1;
      for (int b = 0; b < d; ++b) exact *= k;
      throw CapacityError("deck size k^d = " + exact.str() +
                          " exceeds the supported limit " +
                          std::to_string(kDeckSizeLimit));
    }
  }
  return n;
}

int value_of(const Card& card, int attribute) {
  if (attribute < 0 || attribute >= card.attribute_count())
    throw std::out_of_range("attribute " + std::to_string(attribute) +
                            " out of range for " +
                            std::to_string(card.attribute_count()) +
                            " attributes");
  return card.digits()[attribute];
}

CardId card_id(const Card& card, const DeckSpec& spec) {
  if (card.attribute_count() != spec.d)
    throw std::invalid_argument(
        "card has " + std::to_string(card.attribute_count()) +
        " attributes, deck has " + std::to_string(spec.d));
  spec.deck_size();  // enforce the materialization limit
  std::uint32_t id = 0;
  for (int a = 0; a < spec.d; ++a) {
    std::uint8_t v = card.digits()[a];
    if (v >= spec.k)
      throw std::invalid_argument("card value " + std::to_string(v) +
                                  " at attribute " + std::to_string(a) +
                                  " out of range for k = " +
                                  std::to_string(spec.k));
    id = id * static_cast<std::uint32_t>(spec.k) + v;
  }
  return id;
}

Card card_from_id(CardId id, const DeckSpec& spec) {
  std::uint64_t n = spec.deck_size();
  if (id >= n)
    throw std::invalid_argument("card id " + std::to_string(id) +
                                " out of range for deck size " +
                                std::to_string(n));
  std::vector<std::uint8_t> digits(spec.d);
  for (int a = spec.d; a-- > 0;) {
    digits[a] = static_cast<std::uint8_t>(id % spec.k);
    id /= spec.k;
  }
  return Card(std::move(digits));
}

Card complete_set(const Card& x, const Card& y, const DeckSpec& spec) {
  if (spec.k != 3)
    throw std::invalid_argument("Set completion requires k = 3, got k = " +
                                std::to_string(spec.k));
  card_id(x, spec);  // validate both cards against the spec
  card_id(y, spec);
  if (x == y) throw std::invalid_argument("cards must be distinct");
  std::vector<std::uint8_t> digits(spec.d);
  for (int a = 0; a < spec.d; ++a) {
    std::uint8_t vx = x.digits()[a], vy = y.digits()[a];
    digits[a] = vx == vy ? vx : static_cast<std::uint8_t>(3 - vx - vy);
  }
  return Card(std::move(digits));
}

Hand::Hand(const DeckSpec& spec)
    : spec_(spec),
      deck_size_(spec.deck_size()),
      words_(word_count(deck_size_), 0) {}

Hand::Hand(const DeckSpec& spec, const std::vector<CardId>& ids) : Hand(spec) {
  for (CardId id : ids) insert(id);
}

Hand::Hand(const DeckSpec& spec, const std::vector<Card>& cards) : Hand(spec) {
  for (const Card& c : cards) insert(card_id(c, spec));
}

Hand Hand::from_words(const DeckSpec& spec, std::vector<std::uint64_t> words) {
  Hand out(spec);
  if (words.size() != out.words_.size())
    throw std::invalid_argument("expected " +
                                std::to_string(out.words_.size()) +
                                " words, got " + std::to_string(words.size()));
  if (out.deck_size_ % 64 != 0 &&
      (words.back() >> (out.deck_size_ % 64)) != 0)
    throw std::invalid_argument("bits set beyond the deck size");
  out.words_ = std::move(words);
  return out;
}

std::size_t Hand::size() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

void Hand::check_id(CardId id) const {
  if (id >= deck_size_)
    throw std::invalid_argument("card id " + std::to_string(id) +
                                " out of range for deck size " +
                                std::to_string(deck_size_));
}

bool Hand::contains(CardId id) const {
  check_id(id);
  return (words_[id >> 6] >> (id & 63)) & 1;
}

bool Hand::contains(const Card& card) const {
  return contains(card_id(card, spec_));
}

void Hand::insert(CardId id) {
  check_id(id);
  words_[id >> 6] |= std::uint64_t{1} << (id & 63);
}

void Hand::erase(CardId id) {
  check_id(id);
  words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63));
}

std::vector<CardId> Hand::ids() const {
  std::vector<CardId> out;
  out.reserve(size());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(static_cast<CardId>(w * 64 +
                                        std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<Card> Hand::cards() const {
  std::vector<Card> out;
  out.reserve(size());
  for (CardId id : ids()) out.push_back(card_from_id(id, spec_));
  return out;
}

Hand Hand::complement() const {
  Hand out(spec_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  if (deck_size_ % 64 != 0)
    out.words_.back() &= (std::uint64_t{1} << (deck_size_ % 64)) - 1;
  return out;
}

int Hand::compare(const Hand& a, const Hand& b) {
  if (a.spec_ != b.spec_)
    throw std::invalid_argument("cannot compare hands from different decks");
  std::size_t na = a.size(), nb = b.size();
  if (na != nb) return na < nb ? -1 : 1;
  // Same size: the hand holding the lowest id present in exactly one of
  // them is the lexicographically smaller id sequence.
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff) return (a.words_[w] & (diff & -diff)) ? -1 : 1;
  }
  return 0;
}

Hand make_deck(const DeckSpec& spec, const Caps& caps) {
  std::uint64_t n = spec.deck_size();
  if (n > caps.max_deck_size)
    throw CapacityError("deck size " + std::to_string(n) +
                        " exceeds max_deck_size = " +
                        std::to_string(caps.max_deck_size));
  Hand out(spec);
  return out.complement();
}

std::string to_text(const Card& card) {
  std::string out;
  out.reserve(card.digits().size());
  for (std::uint8_t v : card.digits()) {
    if (v > 9)
      throw std::invalid_argument("card text form requires values <= 9");
    out.push_back(static_cast<char>('0' + v));
  }
  return out;
}

std::string to_text(const Hand& hand) {
  std::string out;
  bool first = true;
  for (const Card& c : hand.cards()) {
    if (!first) out.push_back(' ');
    out += to_text(c);
    first = false;
  }
  return out;
}

Card parse_card(std::string_view text, const DeckSpec& spec) {
  return parse_card_at(text, spec, 0);
}

Hand parse_hand(std::string_view text, const DeckSpec& spec) {
  Hand out(spec);
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    Card card = parse_card_at(text.substr(start, i - start), spec, start);
    CardId id = card_id(card, spec);
    if (out.contains(id))
      throw ParseError("duplicate card '" + to_text(card) + "'", start);
    out.insert(id);
  }
  return out;
}

Hand parse_board(std::string_view text, const DeckSpec& spec) {
  // Blank out comments in place so offsets still refer to the input.
  std::string filtered(text);
  bool in_comment = false;
  for (char& c : filtered) {
    if (c == '\n')
      in_comment = false;
    else if (c == '#')
      in_comment = true;
    if (in_comment) c = ' ';
  }
  return parse_hand(filtered, spec);
}

namespace standard_deck {

int attribute_index(std::string_view name) {
  for (std::size_t a = 0; a < kAttributeNames.size(); ++a)
    if (kAttributeNames[a] == name) return static_cast<int>(a);
  throw std::invalid_argument("unknown attribute name '" + std::string(name) +
                              "'");
}

int value_index(int attribute, std::string_view name) {
  attribute_name(attribute);  // range check
  for (std::size_t v = 0; v < kValueNames[attribute].size(); ++v)
    if (kValueNames[attribute][v] == name) return static_cast<int>(v);
  throw std::invalid_argument("unknown " +
                              std::string(kAttributeNames[attribute]) +
                              " value '" + std::string(name) + "'");
}

std::string_view attribute_name(int attribute) {
  if (attribute < 0 ||
      attribute >= static_cast<int>(kAttributeNames.size()))
    throw std::out_of_range("attribute " + std::to_string(attribute) +
                            " out of range");
  return kAttributeNames[attribute];
}

std::string_view value_name(int attribute, int value) {
  attribute_name(attribute);
  if (value < 0 || value >= static_cast<int>(kValueNames[attribute].size()))
    throw std::out_of_range("value " + std::to_string(value) +
                            " out of range");
  return kValueNames[attribute][value];
}

std::string describe(const Card& card) {
  if (card.attribute_count() != 4)
    throw std::invalid_argument("display names cover the 4-attribute deck");
  std::string out;
  for (int a = 0; a < 4; ++a) {
    if (a) out.push_back(' ');
    out += value_name(a, value_of(card, a));
  }
  return out;
}

}  // namespace standard_deck

}  // namespace kdeck
