#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kdeck/bigint.hpp"
#include "kdeck/caps.hpp"
#include "kdeck/deck.hpp"

namespace kdeck {

/// A deck symmetry: an attribute permutation psi plus one value bijection
/// per *source* attribute. Acting on card x yields y with
///   y[psi(a)] = theta_a(x[a])   for every attribute a.
///
/// attr_perm[a] is psi(a); value_maps[a][v] is theta_a(v). For k = 1 the
/// action is not faithful (all d! attribute permutations act identically);
/// enumeration and counting still run over tuples, not induced permutations.
struct GroupElement {
  std::vector<std::uint8_t> attr_perm;
  std::vector<std::vector<std::uint8_t>> value_maps;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity_element(const DeckSpec& spec);

/// Throws std::invalid_argument unless g has d attribute entries forming a
/// permutation and d value maps each a bijection on [0, k).
void validate_element(const GroupElement& g, const DeckSpec& spec);

Card apply_element(const GroupElement& g, const Card& x);
Hand apply_to_hand(const GroupElement& g, const Hand& hand);

/// compose(g1, g2) acts as "g2 first, then g1":
/// apply(compose(g1, g2), x) == apply(g1, apply(g2, x)).
GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

/// Exact group order d! * (k!)^d.
BigInt group_order(const DeckSpec& spec);

/// The element at `index` in enumeration order: attribute permutations in
/// lexicographic order are the most significant digit, then value maps per
/// attribute in lexicographic order with theta_{d-1} varying fastest.
/// Index 0 is the identity. Throws std::invalid_argument past the order.
GroupElement element_at(const DeckSpec& spec, std::uint64_t index);

/// Visits every element once, in enumeration order. Throws CapacityError
/// when the group order exceeds caps.max_group_order.
void for_each_element(
    const DeckSpec& spec,
    const std::function<void(const GroupElement&, std::uint64_t)>& fn,
    const Caps& caps = {});

/// The whole group in enumeration order (same cap as for_each_element).
std::vector<GroupElement> enumerate_group(const DeckSpec& spec,
                                          const Caps& caps = {});

/// Cycle lengths of g's permutation of the full deck, ascending; sums to
/// k^d.
std::vector<std::uint32_t> cycle_lengths(const GroupElement& g,
                                         const DeckSpec& spec);

/// Text form: "psi=<d digits>;theta_0=<k digits>;...;theta_<d-1>=<k digits>"
/// where psi digit a is psi(a) and theta_a digit v is theta_a(v).
/// Only k, d <= 10 have a text form.
std::string to_text(const GroupElement& g);
GroupElement parse_element(std::string_view text, const DeckSpec& spec);

}  // namespace kdeck
