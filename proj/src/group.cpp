#include "kdeck/group.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "kdeck/detail/group_scan.hpp"

namespace kdeck {
namespace {

// Permutation of [0, n) with the given lexicographic rank. Exact BigInt
// arithmetic so ranks beyond 64 bits (large k or d) unrank correctly.
std::vector<std::uint8_t> lehmer_unrank(BigInt rank, int n) {
  std::vector<std::uint8_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::uint8_t> out;
  out.reserve(n);
  for (int i = n; i-- > 0;) {
    BigInt f = factorial(i);
    int idx = static_cast<int>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
  }
  return out;
}

void check_shape(const GroupElement& g) {
  std::size_t d = g.attr_perm.size();
  if (d == 0 || g.value_maps.size() != d)
    throw std::invalid_argument("malformed group element");
  for (const auto& vm : g.value_maps)
    if (vm.size() != g.value_maps[0].size())
      throw std::invalid_argument("malformed group element");
}

}  // namespace

GroupElement identity_element(const DeckSpec& spec) {
  GroupElement g;
  g.attr_perm.resize(spec.d);
  std::iota(g.attr_perm.begin(), g.attr_perm.end(), 0);
  g.value_maps.assign(spec.d, std::vector<std::uint8_t>(spec.k));
  for (auto& vm : g.value_maps) std::iota(vm.begin(), vm.end(), 0);
  return g;
}

void validate_element(const GroupElement& g, const DeckSpec& spec) {
  auto check_perm = [](const std::vector<std::uint8_t>& p, int n,
                       const char* what) {
    if (static_cast<int>(p.size()) != n)
      throw std::invalid_argument(std::string(what) + " has " +
                                  std::to_string(p.size()) +
                                  " entries, expected " + std::to_string(n));
    std::vector<bool> seen(n, false);
    for (std::uint8_t v : p) {
      if (v >= n || seen[v])
        throw std::invalid_argument(std::string(what) +
                                    " is not a permutation");
      seen[v] = true;
    }
  };
  check_perm(g.attr_perm, spec.d, "attribute permutation");
  if (static_cast<int>(g.value_maps.size()) != spec.d)
    throw std::invalid_argument("element has " +
                                std::to_string(g.value_maps.size()) +
                                " value maps, expected " +
                                std::to_string(spec.d));
  for (int a = 0; a < spec.d; ++a)
    check_perm(g.value_maps[a], spec.k,
               ("theta_" + std::to_string(a)).c_str());
}

Card apply_element(const GroupElement& g, const Card& x) {
  check_shape(g);
  int d = static_cast<int>(g.attr_perm.size());
  int k = static_cast<int>(g.value_maps[0].size());
  if (x.attribute_count() != d)
    throw std::invalid_argument("card has " +
                                std::to_string(x.attribute_count()) +
                                " attributes, element expects " +
                                std::to_string(d));
  std::vector<std::uint8_t> out(d);
  for (int a = 0; a < d; ++a) {
    std::uint8_t v = x.digits()[a];
    if (v >= k)
      throw std::invalid_argument("card value out of range for the element");
    out[g.attr_perm[a]] = g.value_maps[a][v];
  }
  return Card(std::move(out));
}

Hand apply_to_hand(const GroupElement& g, const Hand& hand) {
  validate_element(g, hand.spec());
  auto scan = detail::GroupScan::get(hand.spec());
  Hand out(hand.spec());
  for (CardId id : hand.ids()) out.insert(scan->image_of(g, id));
  return out;
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  check_shape(g1);
  check_shape(g2);
  std::size_t d = g1.attr_perm.size();
  std::size_t k = g1.value_maps[0].size();
  if (g2.attr_perm.size() != d || g2.value_maps[0].size() != k)
    throw std::invalid_argument("cannot compose elements of different decks");
  GroupElement h;
  h.attr_perm.resize(d);
  h.value_maps.assign(d, std::vector<std::uint8_t>(k));
  for (std::size_t a = 0; a < d; ++a) {
    h.attr_perm[a] = g1.attr_perm[g2.attr_perm[a]];
    for (std::size_t v = 0; v < k; ++v)
      h.value_maps[a][v] = g1.value_maps[g2.attr_perm[a]][g2.value_maps[a][v]];
  }
  return h;
}

GroupElement inverse(const GroupElement& g) {
  check_shape(g);
  std::size_t d = g.attr_perm.size();
  std::size_t k = g.value_maps[0].size();
  GroupElement h;
  h.attr_perm.resize(d);
  h.value_maps.assign(d, std::vector<std::uint8_t>(k));
  for (std::size_t a = 0; a < d; ++a) {
    h.attr_perm[g.attr_perm[a]] = static_cast<std::uint8_t>(a);
    for (std::size_t v = 0; v < k; ++v)
      h.value_maps[g.attr_perm[a]][g.value_maps[a][v]] =
          static_cast<std::uint8_t>(v);
  }
  return h;
}

BigInt group_order(const DeckSpec& spec) {
  BigInt fk = factorial(spec.k);
  BigInt out = factorial(spec.d);
  for (int a = 0; a < spec.d; ++a) out *= fk;
  return out;
}

GroupElement element_at(const DeckSpec& spec, std::uint64_t index) {
  BigInt order = group_order(spec);
  if (BigInt(index) >= order)
    throw std::invalid_argument("element index " + std::to_string(index) +
                                " out of range for group order " +
                                order.str());
  BigInt P = factorial(spec.k);
  BigInt theta_span = 1;  // P^d
  for (int a = 0; a < spec.d; ++a) theta_span *= P;
  BigInt rest(index);
  GroupElement g;
  g.attr_perm = lehmer_unrank(rest / theta_span, spec.d);
  rest %= theta_span;
  // theta_0 is the most significant value-map digit, theta_{d-1} the least.
  g.value_maps.reserve(spec.d);
  for (int a = 0; a < spec.d; ++a) {
    theta_span /= P;
    g.value_maps.push_back(lehmer_unrank(rest / theta_span, spec.k));
    rest %= theta_span;
  }
  return g;
}

void for_each_element(
    const DeckSpec& spec,
    const std::function<void(const GroupElement&, std::uint64_t)>& fn,
    const Caps& caps) {
  BigInt order = group_order(spec);
  if (order > BigInt(caps.max_group_order))
    throw CapacityError("group order " + order.str() +
                        " exceeds max_group_order = " +
                        std::to_string(caps.max_group_order));
  detail::ElementOdometer od(spec);
  std::uint64_t e = 0;
  do {
    fn(od.current(), e);
    ++e;
  } while (od.next());
}

std::vector<GroupElement> enumerate_group(const DeckSpec& spec,
                                          const Caps& caps) {
  std::vector<GroupElement> out;
  for_each_element(
      spec, [&](const GroupElement& g, std::uint64_t) { out.push_back(g); },
      caps);
  return out;
}

std::vector<std::uint32_t> cycle_lengths(const GroupElement& g,
                                         const DeckSpec& spec) {
  validate_element(g, spec);
  auto scan = detail::GroupScan::get(spec);
  std::vector<CardId> row(scan->deck());
  scan->perm_row(g, row.data());
  std::vector<bool> visited(scan->deck(), false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t id = 0; id < scan->deck(); ++id) {
    if (visited[id]) continue;
    std::uint32_t len = 0;
    for (std::uint32_t j = id; !visited[j]; j = row[j]) {
      visited[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_text(const GroupElement& g) {
  check_shape(g);
  std::size_t d = g.attr_perm.size();
  std::size_t k = g.value_maps[0].size();
  if (d > 10 || k > 10)
    throw std::invalid_argument("element text form requires k, d <= 10");
  std::string out = "psi=";
  for (std::uint8_t v : g.attr_perm)
    out.push_back(static_cast<char>('0' + v));
  for (std::size_t a = 0; a < d; ++a) {
    out += ";theta_" + std::to_string(a) + "=";
    for (std::uint8_t v : g.value_maps[a])
      out.push_back(static_cast<char>('0' + v));
  }
  return out;
}

GroupElement parse_element(std::string_view text, const DeckSpec& spec) {
  if (spec.k > 10 || spec.d > 10)
    throw std::invalid_argument("element text form requires k, d <= 10");
  std::size_t pos = 0;
  auto expect = [&](const std::string& lit) {
    if (text.substr(pos, lit.size()) != lit)
      throw ParseError("expected '" + lit + "'", pos);
    pos += lit.size();
  };
  auto read_digits = [&](int count, int bound, const char* what) {
    std::vector<std::uint8_t> out(count);
    for (int i = 0; i < count; ++i) {
      if (pos >= text.size() || text[pos] < '0' || text[pos] >= '0' + bound)
        throw ParseError(std::string("invalid ") + what + " digit", pos);
      out[i] = static_cast<std::uint8_t>(text[pos++] - '0');
    }
    return out;
  };
  GroupElement g;
  expect("psi=");
  g.attr_perm = read_digits(spec.d, spec.d, "attribute");
  for (int a = 0; a < spec.d; ++a) {
    expect(";theta_" + std::to_string(a) + "=");
    g.value_maps.push_back(read_digits(spec.k, spec.k, "value"));
  }
  if (pos != text.size()) throw ParseError("trailing characters", pos);
  validate_element(g, spec);
  return g;
}

namespace detail {

std::shared_ptr<const GroupScan> GroupScan::get(const DeckSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const GroupScan>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(spec.k, spec.d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto scan = std::shared_ptr<const GroupScan>(new GroupScan(spec));
  cache.emplace(key, scan);
  return scan;
}

GroupScan::GroupScan(const DeckSpec& spec)
    : spec_(spec), k_(spec.k), d_(spec.d) {
  deck_ = static_cast<std::uint32_t>(spec.deck_size());
  weight_.resize(d_);
  std::uint32_t w = 1;
  for (int a = d_; a-- > 0;) {
    weight_[a] = w;
    w *= static_cast<std::uint32_t>(k_);
  }
  digits_.resize(static_cast<std::size_t>(deck_) * d_);
  for (std::uint32_t id = 0; id < deck_; ++id) {
    std::uint32_t rest = id;
    for (int a = d_; a-- > 0;) {
      digits_[static_cast<std::size_t>(id) * d_ + a] =
          static_cast<std::uint8_t>(rest % k_);
      rest /= k_;
    }
  }
  order_big_ = group_order(spec_);
  fits_u64_ = order_big_ <= BigInt(std::numeric_limits<std::uint64_t>::max());
  if (fits_u64_) order_u64_ = order_big_.convert_to<std::uint64_t>();
  if (fits_u64_ && deck_ > 0 && order_u64_ <= kTableBudget / deck_) {
    table_.resize(static_cast<std::size_t>(order_u64_) * deck_);
    ElementOdometer od(spec_);
    std::uint64_t e = 0;
    do {
      perm_row(od.current(), table_.data() + e * deck_);
      ++e;
    } while (od.next());
  }
}

void GroupScan::require_group(const Caps& caps) const {
  if (order_big_ > BigInt(caps.max_group_order))
    throw CapacityError("group order " + order_big_.str() +
                        " exceeds max_group_order = " +
                        std::to_string(caps.max_group_order));
}

}  // namespace detail
}  // namespace kdeck
