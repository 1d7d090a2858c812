#include "kdeck/isomorphism.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>

#include "kdeck/detail/group_scan.hpp"

namespace kdeck {
namespace {

// Lowest-differing-bit rule for equal-popcount masks: the mask holding the
// lowest id present in exactly one of them has the lexicographically
// smaller ascending id sequence.
bool mask_less(const std::vector<std::uint64_t>& a,
               const std::vector<std::uint64_t>& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t diff = a[w] ^ b[w];
    if (diff) return a[w] & (diff & -diff);
  }
  return false;
}

std::uint32_t lowest_bit(const std::vector<std::uint64_t>& words) {
  for (std::size_t w = 0; w < words.size(); ++w)
    if (words[w])
      return static_cast<std::uint32_t>(w * 64 + std::countr_zero(words[w]));
  return std::numeric_limits<std::uint32_t>::max();
}

void require_same_spec(const Hand& a, const Hand& b) {
  if (a.spec() != b.spec())
    throw std::invalid_argument("hands are from different decks");
}

// Signatures of every attribute, sorted, for the multiset invariant.
std::vector<std::vector<int>> signature_multiset(const Hand& hand) {
  std::vector<std::vector<int>> sigs(hand.spec().d);
  for (int a = 0; a < hand.spec().d; ++a)
    sigs[a] = splitting_signature(hand, a);
  std::sort(sigs.begin(), sigs.end());
  return sigs;
}

}  // namespace

int common_attribute_count(const Card& x, const Card& y) {
  if (x.attribute_count() != y.attribute_count())
    throw std::invalid_argument("cards have different attribute counts");
  if (x == y)
    throw std::invalid_argument("cards must be distinct");
  int n = 0;
  for (int a = 0; a < x.attribute_count(); ++a)
    if (x.digits()[a] == y.digits()[a]) ++n;
  return n;
}

std::vector<int> splitting_signature(const Hand& hand, int attribute) {
  if (attribute < 0 || attribute >= hand.spec().d)
    throw std::out_of_range("attribute " + std::to_string(attribute) +
                            " out of range for " +
                            std::to_string(hand.spec().d) + " attributes");
  auto scan = detail::GroupScan::get(hand.spec());
  std::vector<int> counts(hand.spec().k, 0);
  for (CardId id : hand.ids()) ++counts[scan->digit(id, attribute)];
  std::sort(counts.begin(), counts.end(), std::greater<int>());
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return counts;
}

CanonicalForm canonical_form(const Hand& hand, const Caps& caps) {
  auto scan = detail::GroupScan::get(hand.spec());
  scan->require_group(caps);
  if (hand.empty()) return CanonicalForm{hand};

  std::vector<CardId> ids = hand.ids();
  std::vector<std::uint64_t> best = hand.words();  // image under the identity
  std::uint32_t best_low = lowest_bit(best);
  std::vector<std::uint64_t> cur(best.size());
  scan->for_each_images(
      std::span<const CardId>(ids), [&](const CardId* img, std::uint64_t) {
        std::uint32_t low = img[0];
        for (std::size_t j = 1; j < ids.size(); ++j) low = std::min(low, img[j]);
        if (low > best_low) return;  // cannot be lexicographically smaller
        std::fill(cur.begin(), cur.end(), 0);
        for (std::size_t j = 0; j < ids.size(); ++j)
          cur[img[j] >> 6] |= std::uint64_t{1} << (img[j] & 63);
        if (low < best_low || mask_less(cur, best)) {
          best = cur;
          best_low = low;
        }
      });
  return CanonicalForm{Hand::from_words(hand.spec(), std::move(best))};
}

bool are_isomorphic(const Hand& a, const Hand& b, const Caps& caps) {
  require_same_spec(a, b);
  if (a.size() != b.size()) return false;
  if (signature_multiset(a) != signature_multiset(b)) return false;
  return canonical_form(a, caps) == canonical_form(b, caps);
}

std::optional<Witness> isomorphism_witness(const Hand& a, const Hand& b,
                                           const Caps& caps) {
  require_same_spec(a, b);
  const DeckSpec& spec = a.spec();
  auto scan = detail::GroupScan::get(spec);
  scan->require_group(caps);
  if (a.size() != b.size()) return std::nullopt;
  if (a.empty())
    return Witness{spec, identity_element(spec), InducedMap{}};

  const int d = spec.d;
  std::vector<CardId> ids = a.ids();
  const std::vector<std::uint64_t>& target = b.words();

  // Attribute signatures must match under psi; whole psi blocks are pruned
  // on that invariant before value maps are tried.
  std::vector<std::vector<int>> sig_a(d), sig_b(d);
  for (int at = 0; at < d; ++at) {
    sig_a[at] = splitting_signature(a, at);
    sig_b[at] = splitting_signature(b, at);
  }

  std::vector<std::uint8_t> psi(d);
  std::iota(psi.begin(), psi.end(), 0);
  std::vector<std::uint64_t> cur(target.size());
  do {
    bool viable = true;
    for (int at = 0; at < d && viable; ++at)
      viable = sig_a[at] == sig_b[psi[at]];
    if (!viable) continue;

    GroupElement g;
    g.attr_perm = psi;
    g.value_maps = identity_element(spec).value_maps;
    // theta_{d-1} varies fastest, matching enumeration order.
    auto advance = [&]() {
      for (int at = d; at-- > 0;)
        if (std::next_permutation(g.value_maps[at].begin(),
                                  g.value_maps[at].end()))
          return true;
      return false;
    };
    do {
      std::fill(cur.begin(), cur.end(), 0);
      for (CardId id : ids) {
        CardId img = scan->image_of(g, id);
        cur[img >> 6] |= std::uint64_t{1} << (img & 63);
      }
      if (cur == target) {
        InducedMap phi;
        phi.from = ids;
        phi.to.reserve(ids.size());
        for (CardId id : ids) phi.to.push_back(scan->image_of(g, id));
        return Witness{spec, std::move(g), std::move(phi)};
      }
    } while (advance());
  } while (std::next_permutation(psi.begin(), psi.end()));
  return std::nullopt;
}

std::vector<InducedMap> automorphisms(const Hand& hand, const Caps& caps) {
  auto scan = detail::GroupScan::get(hand.spec());
  scan->require_group(caps);
  std::vector<CardId> ids = hand.ids();
  const std::vector<std::uint64_t>& mask = hand.words();

  std::set<std::vector<CardId>> images;
  scan->for_each_images(
      std::span<const CardId>(ids), [&](const CardId* img, std::uint64_t) {
        for (std::size_t j = 0; j < ids.size(); ++j)
          if (!((mask[img[j] >> 6] >> (img[j] & 63)) & 1)) return;
        images.emplace(img, img + ids.size());
      });

  std::vector<InducedMap> out;
  out.reserve(images.size());
  for (const auto& img : images) out.push_back(InducedMap{ids, img});
  return out;
}

std::uint64_t stabilizer_order(const Hand& hand, const Caps& caps) {
  auto scan = detail::GroupScan::get(hand.spec());
  scan->require_group(caps);
  std::vector<CardId> ids = hand.ids();
  const std::vector<std::uint64_t>& mask = hand.words();
  std::uint64_t n = 0;
  scan->for_each_images(
      std::span<const CardId>(ids), [&](const CardId* img, std::uint64_t) {
        for (std::size_t j = 0; j < ids.size(); ++j)
          if (!((mask[img[j] >> 6] >> (img[j] & 63)) & 1)) return;
        ++n;
      });
  return n;
}

std::uint64_t orbit_size(const Hand& hand, const Caps& caps) {
  auto scan = detail::GroupScan::get(hand.spec());
  scan->require_group(caps);
  return scan->order_u64() / stabilizer_order(hand, caps);
}

std::vector<GroupElement> inducers(const Hand& from_hand, const Hand& to_hand,
                                   const InducedMap& phi, const Caps& caps) {
  require_same_spec(from_hand, to_hand);
  if (phi.from != from_hand.ids())
    throw std::invalid_argument(
        "mapping domain must list the source hand's cards in order");
  if (phi.to.size() != phi.from.size())
    throw std::invalid_argument("mapping domain and image sizes differ");
  std::vector<CardId> image_sorted = phi.to;
  std::sort(image_sorted.begin(), image_sorted.end());
  if (image_sorted != to_hand.ids())
    throw std::invalid_argument(
        "mapping image must be a bijection onto the target hand");

  auto scan = detail::GroupScan::get(from_hand.spec());
  scan->require_group(caps);

  std::vector<std::uint64_t> hits;
  scan->for_each_images(
      std::span<const CardId>(phi.from),
      [&](const CardId* img, std::uint64_t e) {
        for (std::size_t j = 0; j < phi.from.size(); ++j)
          if (img[j] != phi.to[j]) return;
        hits.push_back(e);
      });

  std::vector<GroupElement> out;
  out.reserve(hits.size());
  if (hits.empty()) return out;
  std::size_t next = 0;
  for_each_element(
      from_hand.spec(),
      [&](const GroupElement& g, std::uint64_t e) {
        if (next < hits.size() && e == hits[next]) {
          out.push_back(g);
          ++next;
        }
      },
      caps);
  return out;
}

std::string to_text(const Witness& witness) {
  std::string out = to_text(witness.element);
  for (std::size_t j = 0; j < witness.mapping.from.size(); ++j) {
    out.push_back('\n');
    out += to_text(card_from_id(witness.mapping.from[j], witness.spec));
    out += "->";
    out += to_text(card_from_id(witness.mapping.to[j], witness.spec));
  }
  return out;
}

}  // namespace kdeck
