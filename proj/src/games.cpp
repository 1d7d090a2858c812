#include "kdeck/games.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>

#include "kdeck/classification.hpp"
#include "kdeck/detail/group_scan.hpp"
#include "kdeck/isomorphism.hpp"

namespace kdeck {
namespace {

const DeckSpec kStandard{3, 4};

// Distinct values an attribute takes across three cards: 1 = all same,
// 2 = a pair plus one, 3 = all different.
int distinct3(std::uint8_t a, std::uint8_t b, std::uint8_t c) {
  if (a == b && b == c) return 1;
  if (a != b && a != c && b != c) return 3;
  return 2;
}

bool set_ids(const detail::GroupScan& scan, const CardId* ids) {
  for (int a = 0; a < scan.spec().d; ++a)
    if (distinct3(scan.digit(ids[0], a), scan.digit(ids[1], a),
                  scan.digit(ids[2], a)) == 2)
      return false;
  return true;
}

bool stun_ids(const detail::GroupScan& scan, const CardId* ids) {
  for (int a = 0; a < scan.spec().d; ++a)
    if (distinct3(scan.digit(ids[0], a), scan.digit(ids[1], a),
                  scan.digit(ids[2], a)) != 2)
      return false;
  return true;
}

bool quad_ids(const detail::GroupScan& scan, const CardId* ids) {
  for (int a = 0; a < scan.spec().d; ++a) {
    int counts[4] = {0, 0, 0, 0};
    for (int j = 0; j < 4; ++j) ++counts[scan.digit(ids[j], a)];
    int distinct = 0, largest = 0;
    for (int v = 0; v < 4; ++v) {
      distinct += counts[v] > 0;
      largest = std::max(largest, counts[v]);
    }
    // all same, all different, or two pairs
    bool ok = distinct == 1 || distinct == 4 || (distinct == 2 && largest == 2);
    if (!ok) return false;
  }
  return true;
}

// Evaluates one goal against sorted id tuples of the goal's size. Class
// goals precompute what membership needs: the symbol for standard-deck
// triples, otherwise the canonical form plus the splitting-signature
// multiset for cheap rejection.
class GoalMatcher {
 public:
  GoalMatcher(const DeckSpec& spec, const GoalSpec& goal, const Caps& caps)
      : spec_(spec), goal_(goal), scan_(detail::GroupScan::get(spec)),
        caps_(caps) {
    switch (goal.kind) {
      case GoalSpec::Kind::set:
      case GoalSpec::Kind::stun:
        if (spec.k != 3)
          throw std::invalid_argument(
              "Set/Stun goals require k = 3, got k = " +
              std::to_string(spec.k));
        break;
      case GoalSpec::Kind::quad:
        if (spec.k != 4)
          throw std::invalid_argument("Quad goals require k = 4, got k = " +
                                      std::to_string(spec.k));
        break;
      case GoalSpec::Kind::class_of: {
        const Hand& g = *goal.goal_hand;
        if (g.spec() != spec)
          throw std::invalid_argument(
              "class goal hand is from a different deck");
        if (g.size() == 3 && spec == kStandard) {
          symbol_ = symbol3(g);
        } else if (!g.empty()) {
          canon_.emplace(canonical_form(g, caps));
          goal_sigs_ = sig_multiset(g);
        }
        break;
      }
    }
  }

  int size() const { return goal_.goal_size(); }

  bool matches(const CardId* ids) const {
    switch (goal_.kind) {
      case GoalSpec::Kind::set:
        return set_ids(*scan_, ids);
      case GoalSpec::Kind::stun:
        return stun_ids(*scan_, ids);
      case GoalSpec::Kind::quad:
        return quad_ids(*scan_, ids);
      case GoalSpec::Kind::class_of:
        break;
    }
    if (symbol_) return symbol_ids(ids) == *symbol_;
    if (!canon_) return true;  // empty goal hand: only the empty tuple
    Hand h(spec_, std::vector<CardId>(ids, ids + size()));
    if (sig_multiset(h) != goal_sigs_) return false;
    return canonical_form(h, caps_) == *canon_;
  }

 private:
  // symbol3 on raw ids, skipping Hand construction in search loops.
  Symbol3 symbol_ids(const CardId* ids) const {
    int t = 0, p01 = 0, p02 = 0, p12 = 0;
    for (int a = 0; a < 4; ++a) {
      std::uint8_t v0 = scan_->digit(ids[0], a);
      std::uint8_t v1 = scan_->digit(ids[1], a);
      std::uint8_t v2 = scan_->digit(ids[2], a);
      if (v0 == v1 && v0 == v2)
        ++t;
      else if (v0 == v1)
        ++p01;
      else if (v0 == v2)
        ++p02;
      else if (v1 == v2)
        ++p12;
    }
    Symbol3 s{t, {p01, p02, p12}};
    std::sort(s.parts.begin(), s.parts.end());
    return s;
  }

  static std::vector<std::vector<int>> sig_multiset(const Hand& h) {
    std::vector<std::vector<int>> sigs(h.spec().d);
    for (int a = 0; a < h.spec().d; ++a) sigs[a] = splitting_signature(h, a);
    std::sort(sigs.begin(), sigs.end());
    return sigs;
  }

  DeckSpec spec_;
  GoalSpec goal_;
  std::shared_ptr<const detail::GroupScan> scan_;
  Caps caps_;
  std::optional<Symbol3> symbol_;
  std::optional<CanonicalForm> canon_;
  std::vector<std::vector<int>> goal_sigs_;
};

void require_subset_budget(std::uint64_t n, int m, const Caps& caps) {
  BigInt total = binomial(n, m);
  if (total > BigInt(caps.max_subsets))
    throw CapacityError("subset count C(" + std::to_string(n) + ", " +
                        std::to_string(m) + ") = " + total.str() +
                        " exceeds max_subsets = " +
                        std::to_string(caps.max_subsets));
}

// Visits m-element position combinations of [0, n) in lexicographic order.
template <typename Fn>
void for_each_combination(std::uint64_t n, int m, Fn&& fn) {
  if (m < 0 || static_cast<std::uint64_t>(m) > n) return;
  std::vector<std::uint64_t> c(m);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    fn(c);
    int j = m - 1;
    while (j >= 0 && c[j] == n - m + j) --j;
    if (j < 0) break;
    ++c[j];
    for (int i = j + 1; i < m; ++i) c[i] = c[i - 1] + 1;
  }
}

}  // namespace

bool is_set(const Hand& triple) {
  if (triple.spec().k != 3)
    throw std::invalid_argument("Set predicate requires k = 3, got k = " +
                                std::to_string(triple.spec().k));
  if (triple.size() != 3)
    throw std::invalid_argument("Set predicate applies to three cards, got " +
                                std::to_string(triple.size()));
  auto scan = detail::GroupScan::get(triple.spec());
  return set_ids(*scan, triple.ids().data());
}

bool is_stun(const Hand& triple) {
  if (triple.spec().k != 3)
    throw std::invalid_argument("Stun predicate requires k = 3, got k = " +
                                std::to_string(triple.spec().k));
  if (triple.size() != 3)
    throw std::invalid_argument(
        "Stun predicate applies to three cards, got " +
        std::to_string(triple.size()));
  auto scan = detail::GroupScan::get(triple.spec());
  return stun_ids(*scan, triple.ids().data());
}

bool is_quad(const Hand& quad) {
  if (quad.spec().k != 4)
    throw std::invalid_argument("Quad predicate requires k = 4, got k = " +
                                std::to_string(quad.spec().k));
  if (quad.size() != 4)
    throw std::invalid_argument("Quad predicate applies to four cards, got " +
                                std::to_string(quad.size()));
  auto scan = detail::GroupScan::get(quad.spec());
  return quad_ids(*scan, quad.ids().data());
}

GoalSpec GoalSpec::make_set() {
  GoalSpec g;
  g.kind = Kind::set;
  return g;
}

GoalSpec GoalSpec::make_stun() {
  GoalSpec g;
  g.kind = Kind::stun;
  return g;
}

GoalSpec GoalSpec::make_quad() {
  GoalSpec g;
  g.kind = Kind::quad;
  return g;
}

GoalSpec GoalSpec::make_class_of(Hand goal) {
  GoalSpec g;
  g.kind = Kind::class_of;
  g.goal_hand.emplace(std::move(goal));
  return g;
}

int GoalSpec::goal_size() const {
  switch (kind) {
    case Kind::set:
    case Kind::stun:
      return 3;
    case Kind::quad:
      return 4;
    case Kind::class_of:
      return static_cast<int>(goal_hand->size());
  }
  return 0;  // unreachable
}

bool matches_goal(const Hand& hand, const GoalSpec& goal, const Caps& caps) {
  GoalMatcher matcher(hand.spec(), goal, caps);
  if (static_cast<int>(hand.size()) != matcher.size())
    throw std::invalid_argument("hand has " + std::to_string(hand.size()) +
                                " cards, goal expects " +
                                std::to_string(matcher.size()));
  return matcher.matches(hand.ids().data());
}

std::vector<Hand> find_triples(const Hand& board, const GoalSpec& goal,
                               const Caps& caps) {
  GoalMatcher matcher(board.spec(), goal, caps);
  if (matcher.size() != 3)
    throw std::invalid_argument("goal does not describe three-card hands");
  return find_goal_hands(board, goal, caps);
}

std::vector<Hand> find_goal_hands(const Hand& board, const GoalSpec& goal,
                                  const Caps& caps) {
  GoalMatcher matcher(board.spec(), goal, caps);
  const int m = matcher.size();
  std::vector<CardId> ids = board.ids();
  std::vector<Hand> out;
  if (static_cast<std::size_t>(m) > ids.size()) return out;
  require_subset_budget(ids.size(), m, caps);
  std::vector<CardId> buf(m);
  for_each_combination(ids.size(), m, [&](const std::vector<std::uint64_t>& c) {
    for (int j = 0; j < m; ++j) buf[j] = ids[c[j]];
    if (matcher.matches(buf.data()))
      out.push_back(Hand(board.spec(), buf));
  });
  return out;
}

GoalCount count_over_deck(const DeckSpec& spec, const GoalSpec& goal,
                          const Caps& caps) {
  std::uint64_t deck = spec.deck_size();
  if (deck > caps.max_deck_size)
    throw CapacityError("deck size " + std::to_string(deck) +
                        " exceeds max_deck_size = " +
                        std::to_string(caps.max_deck_size));
  GoalMatcher matcher(spec, goal, caps);
  const int m = matcher.size();
  BigInt count = 0;
  if (goal.kind == GoalSpec::Kind::class_of) {
    count = orbit_size(*goal.goal_hand, caps);
  } else {
    require_subset_budget(deck, m, caps);
    std::vector<CardId> buf(m);
    std::uint64_t n = 0;
    for_each_combination(deck, m, [&](const std::vector<std::uint64_t>& c) {
      for (int j = 0; j < m; ++j) buf[j] = static_cast<CardId>(c[j]);
      if (matcher.matches(buf.data())) ++n;
    });
    count = n;
  }
  GoalCount out{count, BigRational(count, binomial(deck, m))};
  return out;
}

std::optional<std::vector<Hand>> partition_into_goals(const Hand& board,
                                                      const GoalSpec& goal,
                                                      const Caps& caps) {
  GoalMatcher matcher(board.spec(), goal, caps);
  const int m = matcher.size();
  if (m == 0)
    throw std::invalid_argument("cannot partition into empty hands");
  std::vector<CardId> ids = board.ids();
  if (ids.size() % m != 0)
    throw std::invalid_argument("board size " + std::to_string(ids.size()) +
                                " is not a multiple of goal size " +
                                std::to_string(m));

  std::vector<bool> used(ids.size(), false);
  std::vector<std::vector<CardId>> blocks;
  std::uint64_t tested = 0;

  // Depth-first over blocks: always cover the lowest unused card, trying
  // companion subsets in lexicographic order, so the first full cover found
  // is the lexicographically first one.
  auto solve = [&](auto&& self, std::size_t covered) -> bool {
    if (covered == ids.size()) return true;
    std::size_t anchor = 0;
    while (used[anchor]) ++anchor;
    std::vector<std::size_t> pool;
    for (std::size_t i = anchor + 1; i < ids.size(); ++i)
      if (!used[i]) pool.push_back(i);
    if (pool.size() + 1 < static_cast<std::size_t>(m)) return false;

    bool found = false;
    std::vector<CardId> buf(m);
    std::vector<std::size_t> picked(m - 1);
    auto try_block = [&](const std::vector<std::uint64_t>& c) {
      if (found) return;
      if (++tested > caps.max_subsets)
        throw CapacityError("partition search exceeded max_subsets = " +
                            std::to_string(caps.max_subsets) +
                            " candidate blocks");
      buf[0] = ids[anchor];
      for (int j = 0; j + 1 < m; ++j) {
        picked[j] = pool[c[j]];
        buf[j + 1] = ids[picked[j]];
      }
      if (!matcher.matches(buf.data())) return;
      used[anchor] = true;
      for (std::size_t i : picked) used[i] = true;
      blocks.push_back(buf);
      if (self(self, covered + m)) {
        found = true;
        return;
      }
      blocks.pop_back();
      used[anchor] = false;
      for (std::size_t i : picked) used[i] = false;
    };
    for_each_combination(pool.size(), m - 1, try_block);
    return found;
  };

  if (!solve(solve, 0)) return std::nullopt;
  std::vector<Hand> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) out.push_back(Hand(board.spec(), block));
  return out;
}

Hand deal(const DeckSpec& spec, int size, std::uint64_t seed,
          const Caps& caps) {
  std::uint64_t deck = spec.deck_size();
  if (deck > caps.max_deck_size)
    throw CapacityError("deck size " + std::to_string(deck) +
                        " exceeds max_deck_size = " +
                        std::to_string(caps.max_deck_size));
  if (size < 0 || static_cast<std::uint64_t>(size) > deck)
    throw std::invalid_argument("board size " + std::to_string(size) +
                                " out of range for deck size " +
                                std::to_string(deck));
  std::mt19937_64 rng(seed);
  // Unbiased bounded draw: rejection below 2^64 mod n keeps the accepted
  // range an exact multiple of n. mt19937_64 output is fixed by the
  // standard, so boards reproduce across platforms.
  auto draw = [&rng](std::uint64_t n) {
    std::uint64_t threshold = (-n) % n;
    for (;;) {
      std::uint64_t r = rng();
      if (r >= threshold) return r % n;
    }
  };
  std::vector<CardId> pool(deck);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < size; ++i) {
    std::uint64_t j = i + draw(deck - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return Hand(spec, pool);
}

}  // namespace kdeck
