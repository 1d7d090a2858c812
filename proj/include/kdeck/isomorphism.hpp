#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdeck/caps.hpp"
#include "kdeck/deck.hpp"
#include "kdeck/group.hpp"

namespace kdeck {

/// The canonical member of a hand's isomorphism class: the image that is
/// lexicographically least as an ascending card-id sequence (equivalently,
/// of two same-size images the one containing the lowest id present in
/// exactly one of them). Two hands are isomorphic iff their canonical forms
/// are equal.
struct CanonicalForm {
  Hand hand;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.hand == b.hand;
  }
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
    return a.hand < b.hand;
  }
};

/// A card bijection between two same-size hands; from is ascending and to
/// is aligned with it.
struct InducedMap {
  std::vector<CardId> from;
  std::vector<CardId> to;

  friend bool operator==(const InducedMap&, const InducedMap&) = default;
};

/// A group element witnessing an isomorphism, with the card mapping it
/// induces.
struct Witness {
  DeckSpec spec;
  GroupElement element;
  InducedMap mapping;
};

/// How many attributes x and y agree on. Throws std::invalid_argument when
/// x == y (every attribute agrees, degenerately) or on length mismatch.
int common_attribute_count(const Card& x, const Card& y);

/// Part sizes of the hand split by `attribute` values, descending, empty
/// parts omitted. Invariant under isomorphism as a multiset over attributes.
std::vector<int> splitting_signature(const Hand& hand, int attribute);

CanonicalForm canonical_form(const Hand& hand, const Caps& caps = {});

bool are_isomorphic(const Hand& a, const Hand& b, const Caps& caps = {});

/// First witness in enumeration order, or nullopt when not isomorphic.
std::optional<Witness> isomorphism_witness(const Hand& a, const Hand& b,
                                           const Caps& caps = {});

/// The distinct card bijections H -> H induced by group elements fixing H
/// setwise, sorted by image sequence. (Distinct maps, not group elements:
/// several elements may induce the same bijection.)
std::vector<InducedMap> automorphisms(const Hand& hand, const Caps& caps = {});

/// Number of group elements fixing the hand setwise.
std::uint64_t stabilizer_order(const Hand& hand, const Caps& caps = {});

/// Size of the hand's isomorphism class (= group order / stabilizer order).
std::uint64_t orbit_size(const Hand& hand, const Caps& caps = {});

/// All group elements that send `from_hand` to `to_hand` realizing exactly
/// the card mapping `phi`, in enumeration order. phi.from must be
/// from_hand's ids (ascending) and phi.to a bijection onto to_hand.
std::vector<GroupElement> inducers(const Hand& from_hand, const Hand& to_hand,
                                   const InducedMap& phi,
                                   const Caps& caps = {});

/// Witness text: the element line, then one "x->y" line per card pair.
std::string to_text(const Witness& witness);

}  // namespace kdeck
