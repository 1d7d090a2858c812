#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kdeck {

/// Resource limits for operations that materialize decks, scan the whole
/// symmetry group, or enumerate subsets. Every potentially expensive entry
/// point takes a Caps and refuses work beyond it instead of grinding.
struct Caps {
  /// Largest deck (k^d cards) an operation may materialize.
  std::uint64_t max_deck_size = 4096;
  /// Largest symmetry group (d! * (k!)^d elements) an operation may scan.
  std::uint64_t max_group_order = 1'000'000;
  /// Largest number of subsets an exhaustive search may visit.
  std::uint64_t max_subsets = 2'000'000;
};

/// Thrown when an operation would exceed a cap; the message states the
/// required count next to the configured limit.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when text input (cards, hands, group elements, board files) is
/// malformed. `offset` is the byte position of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace kdeck
