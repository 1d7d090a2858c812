#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdeck/bigint.hpp"
#include "kdeck/caps.hpp"
#include "kdeck/deck.hpp"

namespace kdeck {

/// Three cards where every attribute is all-same or all-different (k=3).
bool is_set(const Hand& triple);

/// Three cards where every attribute takes exactly two distinct values
/// (k=3).
bool is_stun(const Hand& triple);

/// Four cards where every attribute is all-same, all-different, or split
/// 2+2 (k=4).
bool is_quad(const Hand& quad);

/// What to search for: one of the fixed predicates above, or membership in
/// the isomorphism class of a chosen hand.
struct GoalSpec {
  enum class Kind { set, stun, quad, class_of };

  static GoalSpec make_set();
  static GoalSpec make_stun();
  static GoalSpec make_quad();
  static GoalSpec make_class_of(Hand goal);

  Kind kind = Kind::set;
  std::optional<Hand> goal_hand;  // present iff kind == class_of

  /// Size of hands this goal matches (3, 3, 4, or |goal_hand|).
  int goal_size() const;
};

/// Whether `hand` satisfies the goal. Throws std::invalid_argument on size
/// or spec mismatch with the goal's requirements.
bool matches_goal(const Hand& hand, const GoalSpec& goal,
                  const Caps& caps = {});

/// All goal-satisfying triples within a board, in lexicographic order of
/// their ascending card sequences. The goal must be three-card.
std::vector<Hand> find_triples(const Hand& board, const GoalSpec& goal,
                               const Caps& caps = {});

/// All goal-satisfying hands within a board, lexicographic order, no
/// duplicates. Capacity: C(|board|, goal size) <= caps.max_subsets.
std::vector<Hand> find_goal_hands(const Hand& board, const GoalSpec& goal,
                                  const Caps& caps = {});

/// Exact count and probability of goal-satisfying hands among all
/// hands of the goal's size drawn from the full deck.
struct GoalCount {
  BigInt count;
  BigRational probability;  // count / C(k^d, goal size), lowest terms
};
GoalCount count_over_deck(const DeckSpec& spec, const GoalSpec& goal,
                          const Caps& caps = {});

/// Partitions the board into disjoint goal-satisfying hands covering every
/// card, or nullopt if impossible. |board| must be a multiple of the goal
/// size. Deterministic: depth-first, lexicographically first solution.
std::optional<std::vector<Hand>> partition_into_goals(const Hand& board,
                                                      const GoalSpec& goal,
                                                      const Caps& caps = {});

/// A pseudorandom board of `size` distinct cards, reproducible across
/// platforms from `seed`: cards are drawn by a partial Fisher-Yates shuffle
/// of the id range driven by std::mt19937_64(seed) with rejection-sampled
/// bounded draws, then sorted ascending.
Hand deal(const DeckSpec& spec, int size, std::uint64_t seed,
          const Caps& caps = {});

}  // namespace kdeck
