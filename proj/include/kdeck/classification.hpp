#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kdeck/bigint.hpp"
#include "kdeck/caps.hpp"
#include "kdeck/deck.hpp"
#include "kdeck/isomorphism.hpp"

namespace kdeck {

/// Classifying symbol of a three-card hand from the 81-card deck:
/// t attributes shared by all three cards, and ascending pair-surplus
/// counts parts[0] <= parts[1] <= parts[2] (attributes shared by exactly
/// one pair, one count per pair). Hands are isomorphic iff symbols match.
struct Symbol3 {
  int t = 0;
  std::array<int, 3> parts{0, 0, 0};

  friend auto operator<=>(const Symbol3&, const Symbol3&) = default;
};

/// Multiplicative pieces of a symbol's class size: size = a*b*c*d / e.
/// a,b depend on t alone; c,d count the choices of the second and third
/// card; e is the overcount from equal parts.
struct ClassSizeFactors {
  std::uint64_t a = 0, b = 0, c = 0, d = 0, e = 1;
};

/// One isomorphism class: canonical representative, class size, and (for
/// three-card hands of the 81-card deck) the symbol.
struct ClassRecord {
  CanonicalForm representative;
  std::uint64_t size = 0;
  std::optional<Symbol3> symbol;
};

/// The symbol of a three-card hand. Requires |hand| == 3 and spec (3,4);
/// throws std::invalid_argument otherwise.
Symbol3 symbol3(const Hand& hand);

bool is_valid_symbol(const Symbol3& symbol);

/// All 20 valid symbols, ordered by t then parts.
std::vector<Symbol3> valid_symbols();

/// A concrete three-card hand with the given symbol (throws on invalid
/// symbols). Deterministic: shared attributes first, then pair-surplus
/// blocks, then free attributes.
Hand representative_hand(const Symbol3& symbol);

ClassSizeFactors class_size_factors(const Symbol3& symbol);
std::uint64_t symbol_class_size(const Symbol3& symbol);

/// Every isomorphism class of n-card hands, by exhaustive orbit sweep,
/// sorted by representative. Capacity: C(k^d, n) <= caps.max_subsets and
/// group/deck caps.
std::vector<ClassRecord> enumerate_classes(const DeckSpec& spec, int n,
                                           const Caps& caps = {});

/// Number of isomorphism classes of n-card hands for every n in [0, k^d],
/// via the group's cycle structure (exact, no subset enumeration).
std::vector<BigInt> count_classes_burnside(const DeckSpec& spec,
                                           const Caps& caps = {});

/// The class of one hand: canonical representative, orbit size, symbol when
/// defined.
ClassRecord class_of(const Hand& hand, const Caps& caps = {});

/// "(t;p1,p2,p3)" and back.
std::string to_text(const Symbol3& symbol);
Symbol3 parse_symbol(std::string_view text);

/// "symbol=<(t;p,p,p)|-> rep=<hand text> size=<integer>".
std::string to_text(const ClassRecord& record);

}  // namespace kdeck
