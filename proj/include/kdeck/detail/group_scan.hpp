#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "kdeck/bigint.hpp"
#include "kdeck/caps.hpp"
#include "kdeck/deck.hpp"
#include "kdeck/group.hpp"

namespace kdeck::detail {

/// Walks group elements in enumeration order, mutating one element in place
/// (no allocation per step). Starts at the identity.
class ElementOdometer {
 public:
  explicit ElementOdometer(const DeckSpec& spec)
      : elem_(identity_element(spec)) {}

  const GroupElement& current() const { return elem_; }

  /// Advances to the next element; returns false once the walk wraps back
  /// to the identity (current() is sorted again at that point).
  bool next() {
    auto& vm = elem_.value_maps;
    for (int a = static_cast<int>(vm.size()); a-- > 0;) {
      if (std::next_permutation(vm[a].begin(), vm[a].end())) return true;
    }
    return std::next_permutation(elem_.attr_perm.begin(),
                                 elem_.attr_perm.end());
  }

 private:
  GroupElement elem_;
};

/// Per-spec scan machinery shared by isomorphism, classification, and game
/// searches: the card digit table plus, when it fits in the table budget,
/// the full |G| x deck image table. Instances are immutable after
/// construction and cached per spec; fetch via get().
///
/// Scans themselves are not capacity-checked — callers gate on
/// require_group(caps) first.
class GroupScan {
 public:
  static std::shared_ptr<const GroupScan> get(const DeckSpec& spec);

  const DeckSpec& spec() const { return spec_; }
  std::uint32_t deck() const { return deck_; }
  int word_count() const { return static_cast<int>((deck_ + 63) / 64); }
  const BigInt& exact_order() const { return order_big_; }
  bool order_fits_u64() const { return fits_u64_; }
  std::uint64_t order_u64() const { return order_u64_; }

  /// Throws CapacityError unless the group order fits caps.max_group_order.
  void require_group(const Caps& caps) const;

  std::uint8_t digit(CardId id, int a) const {
    return digits_[static_cast<std::size_t>(id) * d_ + a];
  }

  /// Id contribution of attribute a (k^(d-1-a)).
  std::uint32_t weight(int a) const { return weight_[a]; }

  CardId image_of(const GroupElement& g, CardId id) const {
    std::uint32_t out = 0;
    for (int a = 0; a < d_; ++a)
      out += static_cast<std::uint32_t>(g.value_maps[a][digit(id, a)]) *
             weight_[g.attr_perm[a]];
    return out;
  }

  /// Full-deck permutation of one element, written into row[0..deck).
  void perm_row(const GroupElement& g, CardId* row) const {
    for (std::uint32_t id = 0; id < deck_; ++id) row[id] = image_of(g, id);
  }

  /// Visits each element's deck permutation in enumeration order:
  /// fn(const CardId* row, std::uint64_t index).
  template <typename Fn>
  void for_each_perm(Fn&& fn) const {
    if (!table_.empty()) {
      for (std::uint64_t e = 0; e < order_u64_; ++e)
        fn(table_.data() + e * deck_, e);
      return;
    }
    std::vector<CardId> row(deck_);
    ElementOdometer od(spec_);
    std::uint64_t e = 0;
    do {
      perm_row(od.current(), row.data());
      fn(static_cast<const CardId*>(row.data()), e);
      ++e;
    } while (od.next());
  }

  /// Visits the images of a fixed id list under each element in enumeration
  /// order: fn(const CardId* images, std::uint64_t index). Images align
  /// with `ids` (they are not sorted).
  template <typename Fn>
  void for_each_images(std::span<const CardId> ids, Fn&& fn) const {
    const std::size_t m = ids.size();
    std::vector<CardId> img(m);
    if (!table_.empty()) {
      for (std::uint64_t e = 0; e < order_u64_; ++e) {
        const CardId* row = table_.data() + e * deck_;
        for (std::size_t j = 0; j < m; ++j) img[j] = row[ids[j]];
        fn(static_cast<const CardId*>(img.data()), e);
      }
      return;
    }
    ElementOdometer od(spec_);
    std::uint64_t e = 0;
    do {
      const GroupElement& g = od.current();
      for (std::size_t j = 0; j < m; ++j) img[j] = image_of(g, ids[j]);
      fn(static_cast<const CardId*>(img.data()), e);
      ++e;
    } while (od.next());
  }

 private:
  explicit GroupScan(const DeckSpec& spec);

  // order * deck entries; beyond this the image table is skipped and scans
  // recompute images from digits.
  static constexpr std::uint64_t kTableBudget = 16u << 20;

  DeckSpec spec_;
  std::uint32_t deck_ = 0;
  int k_ = 0;
  int d_ = 0;
  std::vector<std::uint8_t> digits_;   // deck * d, digits_[id*d + a]
  std::vector<std::uint32_t> weight_;  // k^(d-1-a) per attribute a
  BigInt order_big_;
  bool fits_u64_ = false;
  std::uint64_t order_u64_ = 0;
  std::vector<CardId> table_;  // |G| x deck when within budget, else empty
};

}  // namespace kdeck::detail
