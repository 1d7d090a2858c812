// kdeck: SET-style deck combinatorics from the command line.
//
// Subcommands: classify, iso, table, burnside, find, deal, partition,
// count, inducers, verify. Every command accepts --k/--d (default 3,4),
// --json for structured output, and capacity overrides. Exit codes:
// 0 success, 1 verification failure, 2 usage/parse error, 3 capacity
// exceeded.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdeck/bigint.hpp"
#include "kdeck/caps.hpp"
#include "kdeck/classification.hpp"
#include "kdeck/deck.hpp"
#include "kdeck/games.hpp"
#include "kdeck/group.hpp"
#include "kdeck/isomorphism.hpp"
#include "kdeck/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kdeck;

struct Options {
  int k = 3;
  int d = 4;
  bool as_json = false;
  std::uint64_t seed = 0;
  std::uint64_t cap_group = Caps{}.max_group_order;
  std::uint64_t cap_subsets = Caps{}.max_subsets;

  DeckSpec spec() const { return DeckSpec(k, d); }
  Caps caps() const { return Caps{kDeckSizeLimit, cap_group, cap_subsets}; }
};

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string format_probability(const BigRational& p) {
  char approx[32];
  std::snprintf(approx, sizeof approx, "%.4f", p.convert_to<double>());
  std::ostringstream out;
  out << numerator(p) << '/' << denominator(p) << " ~ " << approx;
  return out.str();
}

GoalSpec parse_goal(const std::string& text, const DeckSpec& spec) {
  if (text == "set") return GoalSpec::make_set();
  if (text == "stun") return GoalSpec::make_stun();
  if (text == "quad") return GoalSpec::make_quad();
  if (text == "soot") {
    if (spec.k != 3 || spec.d != 4)
      throw std::invalid_argument(
          "goal 'soot' is defined on the standard deck only (k=3, d=4)");
    return GoalSpec::make_class_of(representative_hand(Symbol3{0, {0, 1, 2}}));
  }
  // Anything else is a hand whose isomorphism class is the goal.
  return GoalSpec::make_class_of(parse_hand(text, spec));
}

Hand load_board(const std::vector<std::string>& cards,
                const std::string& board_file, const DeckSpec& spec) {
  if (!board_file.empty()) {
    if (!cards.empty())
      throw std::invalid_argument(
          "give the board inline or via --board, not both");
    std::ifstream in(board_file);
    if (!in)
      throw std::invalid_argument("cannot open board file: " + board_file);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_board(text.str(), spec);
  }
  return parse_hand(join(cards), spec);
}

InducedMap parse_mapping(std::string_view text, const DeckSpec& spec) {
  std::vector<std::pair<CardId, CardId>> pairs;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',';
  };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !is_sep(text[i])) ++i;
    std::string_view token = text.substr(start, i - start);
    std::size_t arrow = token.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError("mapping entry must look like CARD->CARD",
                       start + token.size());
    Card from = parse_card(token.substr(0, arrow), spec);
    Card to = parse_card(token.substr(arrow + 2), spec);
    pairs.emplace_back(card_id(from, spec), card_id(to, spec));
  }
  std::sort(pairs.begin(), pairs.end());
  InducedMap map;
  for (const auto& [from, to] : pairs) {
    if (!map.from.empty() && map.from.back() == from)
      throw std::invalid_argument("mapping lists card " +
                                  to_text(card_from_id(from, spec)) +
                                  " twice");
    map.from.push_back(from);
    map.to.push_back(to);
  }
  return map;
}

std::string attribute_label(const DeckSpec& spec, int attribute) {
  if (spec.k == 3 && spec.d == 4)
    return std::string(standard_deck::attribute_name(attribute));
  return "attribute " + std::to_string(attribute);
}

std::string value_label(const DeckSpec& spec, int attribute, int value) {
  if (spec.k == 3 && spec.d == 4)
    return std::string(standard_deck::value_name(attribute, value));
  return std::to_string(value);
}

/// The paper-style psi/theta table: one block per source attribute with the
/// value bijection into the target attribute.
std::string element_table(const GroupElement& g, const DeckSpec& spec) {
  std::ostringstream out;
  for (int a = 0; a < spec.d; ++a) {
    int target = g.attr_perm[a];
    out << attribute_label(spec, a) << " ==> " << attribute_label(spec, target)
        << '\n';
    for (int v = 0; v < spec.k; ++v)
      out << "  " << value_label(spec, a, v) << " -> "
          << value_label(spec, target, g.value_maps[a][v]) << '\n';
  }
  return out.str();
}

json element_json(const GroupElement& g) {
  json thetas = json::array();
  for (const auto& vm : g.value_maps) thetas.push_back(vm);
  return json{{"text", to_text(g)},
              {"psi", g.attr_perm},
              {"theta", std::move(thetas)}};
}

/// Sorted multiset of per-attribute splitting signatures, e.g.
/// "2+1+1, 2+2, 3+1, 4".
std::string splittings_text(const Hand& hand) {
  std::vector<std::vector<int>> sigs;
  for (int a = 0; a < hand.spec().d; ++a)
    sigs.push_back(splitting_signature(hand, a));
  std::sort(sigs.begin(), sigs.end());
  std::string out;
  for (const auto& sig : sigs) {
    if (!out.empty()) out += ", ";
    if (sig.empty()) out += "-";
    for (std::size_t j = 0; j < sig.size(); ++j) {
      if (j) out += '+';
      out += std::to_string(sig[j]);
    }
  }
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_classify(const Options& opt, const std::vector<std::string>& cards) {
  Hand hand = parse_hand(join(cards), opt.spec());
  ClassRecord record = class_of(hand, opt.caps());
  if (opt.as_json) {
    json j{{"hand", to_text(hand)},
           {"symbol",
            record.symbol ? json(to_text(*record.symbol)) : json(nullptr)},
           {"representative", to_text(record.representative.hand)},
           {"size", record.size}};
    emit(j);
  } else {
    std::cout << to_text(record) << '\n';
  }
  return 0;
}

int cmd_iso(const Options& opt, const std::string& text_a,
            const std::string& text_b) {
  DeckSpec spec = opt.spec();
  Hand a = parse_hand(text_a, spec);
  Hand b = parse_hand(text_b, spec);
  auto witness = isomorphism_witness(a, b, opt.caps());

  if (opt.as_json) {
    json j{{"isomorphic", witness.has_value()}};
    if (witness) {
      j["element"] = element_json(witness->element);
      json mapping = json::array();
      for (std::size_t i = 0; i < witness->mapping.from.size(); ++i)
        mapping.push_back(
            {{"from", to_text(card_from_id(witness->mapping.from[i], spec))},
             {"to", to_text(card_from_id(witness->mapping.to[i], spec))}});
      j["mapping"] = std::move(mapping);
    } else {
      j["splittings"] = {{"first", splittings_text(a)},
                         {"second", splittings_text(b)}};
    }
    emit(j);
    return 0;
  }

  if (!witness) {
    std::cout << "not isomorphic\n";
    std::string sig_a = splittings_text(a), sig_b = splittings_text(b);
    if (a.size() != b.size()) {
      std::cout << "hand sizes differ: " << a.size() << " vs " << b.size()
                << '\n';
    } else if (sig_a != sig_b) {
      std::cout << "splitting signatures differ:\n  first:  " << sig_a
                << "\n  second: " << sig_b << '\n';
    }
    return 0;
  }

  std::cout << "isomorphic\n"
            << to_text(witness->element) << '\n'
            << element_table(witness->element, spec);
  for (std::size_t i = 0; i < witness->mapping.from.size(); ++i)
    std::cout << to_text(card_from_id(witness->mapping.from[i], spec))
              << " -> " << to_text(card_from_id(witness->mapping.to[i], spec))
              << '\n';
  return 0;
}

int cmd_table(const Options& opt, int lo, int hi) {
  DeckSpec spec = opt.spec();
  auto counts = count_classes_burnside(spec, opt.caps());
  int deck = static_cast<int>(counts.size()) - 1;
  if (lo < 0) {
    lo = 0;
    hi = deck;
  }
  if (hi < 0) hi = lo;
  if (lo > hi || hi > deck)
    throw std::invalid_argument("hand-size range must satisfy 0 <= lo <= hi <= " +
                                std::to_string(deck));
  if (opt.as_json) {
    json values = json::array();
    for (int n = lo; n <= hi; ++n) values.push_back(counts[n].str());
    emit(json{{"lo", lo}, {"hi", hi}, {"counts", std::move(values)}});
  } else {
    for (int n = lo; n <= hi; ++n)
      std::cout << counts[n] << (n == hi ? '\n' : ' ');
  }
  return 0;
}

int cmd_burnside(const Options& opt) {
  auto counts = count_classes_burnside(opt.spec(), opt.caps());
  if (opt.as_json) {
    json values = json::array();
    for (const BigInt& c : counts) values.push_back(c.str());
    emit(json{{"counts", std::move(values)}});
  } else {
    for (std::size_t n = 0; n < counts.size(); ++n)
      std::cout << n << ' ' << counts[n] << '\n';
  }
  return 0;
}

int cmd_find(const Options& opt, const std::string& goal_text,
             const std::vector<std::string>& cards,
             const std::string& board_file) {
  DeckSpec spec = opt.spec();
  GoalSpec goal = parse_goal(goal_text, spec);
  Hand board = load_board(cards, board_file, spec);
  auto matches = find_goal_hands(board, goal, opt.caps());
  if (opt.as_json) {
    json list = json::array();
    for (const Hand& h : matches) list.push_back(to_text(h));
    emit(json{{"goal", goal_text},
              {"board", to_text(board)},
              {"matches", std::move(list)}});
  } else {
    for (const Hand& h : matches) std::cout << to_text(h) << '\n';
  }
  return 0;
}

int cmd_deal(const Options& opt, int size) {
  Hand board = deal(opt.spec(), size, opt.seed, opt.caps());
  if (opt.as_json)
    emit(json{{"seed", opt.seed}, {"size", size}, {"board", to_text(board)}});
  else
    std::cout << to_text(board) << '\n';
  return 0;
}

int cmd_partition(const Options& opt, const std::string& goal_text,
                  const std::vector<std::string>& cards,
                  const std::string& board_file) {
  DeckSpec spec = opt.spec();
  GoalSpec goal = parse_goal(goal_text, spec);
  Hand board = load_board(cards, board_file, spec);
  auto blocks = partition_into_goals(board, goal, opt.caps());
  if (opt.as_json) {
    if (!blocks) {
      emit(json{{"goal", goal_text}, {"partition", nullptr}});
    } else {
      json list = json::array();
      for (const Hand& h : *blocks) list.push_back(to_text(h));
      emit(json{{"goal", goal_text}, {"partition", std::move(list)}});
    }
  } else if (!blocks) {
    std::cout << "none\n";
  } else {
    for (const Hand& h : *blocks) std::cout << to_text(h) << '\n';
  }
  return 0;
}

int cmd_count(const Options& opt, const std::string& goal_text) {
  DeckSpec spec = opt.spec();
  GoalSpec goal = parse_goal(goal_text, spec);
  GoalCount result = count_over_deck(spec, goal, opt.caps());
  if (opt.as_json) {
    emit(json{{"goal", goal_text},
              {"count", result.count.str()},
              {"numerator", BigInt(numerator(result.probability)).str()},
              {"denominator", BigInt(denominator(result.probability)).str()},
              {"approx", result.probability.convert_to<double>()}});
  } else {
    std::cout << result.count << " (" << format_probability(result.probability)
              << ")\n";
  }
  return 0;
}

int cmd_inducers(const Options& opt, const std::string& text_a,
                 const std::string& text_b, const std::string& mapping_text,
                 const std::string& mapping_file) {
  DeckSpec spec = opt.spec();
  Hand a = parse_hand(text_a, spec);
  Hand b = parse_hand(text_b, spec);
  std::string map_source = mapping_text;
  if (!mapping_file.empty()) {
    if (!mapping_text.empty())
      throw std::invalid_argument(
          "give the mapping inline or via --map-file, not both");
    std::ifstream in(mapping_file);
    if (!in)
      throw std::invalid_argument("cannot open mapping file: " + mapping_file);
    std::ostringstream text;
    text << in.rdbuf();
    map_source = text.str();
  }
  InducedMap phi = parse_mapping(map_source, spec);
  auto elements = inducers(a, b, phi, opt.caps());
  if (opt.as_json) {
    json list = json::array();
    for (const GroupElement& g : elements) list.push_back(element_json(g));
    emit(json{{"count", elements.size()}, {"elements", std::move(list)}});
  } else {
    std::cout << elements.size() << " inducers\n";
    for (const GroupElement& g : elements) std::cout << to_text(g) << '\n';
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  auto results = run_acceptance_battery(opt.caps());
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    if (r.skipped)
      ++skipped;
    else if (r.pass)
      ++passed;
    else
      ++failed;
  }
  if (opt.as_json) {
    json list = json::array();
    for (const auto& r : results)
      list.push_back(json{{"id", r.id},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"skipped", r.skipped},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
    emit(json{{"results", std::move(list)},
              {"passed", passed},
              {"failed", failed},
              {"skipped", skipped}});
  } else {
    for (const auto& r : results) std::cout << to_text(r) << '\n';
    std::cout << passed << " passed, " << failed << " failed, " << skipped
              << " skipped\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "SET-style deck combinatorics: hand classification, isomorphism, "
      "class counting, and board games"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--k", opt.k, "values per attribute")->capture_default_str();
  app.add_option("--d", opt.d, "number of attributes")->capture_default_str();
  app.add_flag("--json", opt.as_json, "structured output");
  app.add_option("--seed", opt.seed, "RNG seed (deal)")->capture_default_str();
  app.add_option("--cap-group", opt.cap_group,
                 "largest symmetry group to scan")
      ->capture_default_str();
  app.add_option("--cap-subsets", opt.cap_subsets,
                 "largest subset search to run")
      ->capture_default_str();

  std::vector<std::string> classify_cards;
  auto* classify = app.add_subcommand(
      "classify", "symbol, canonical representative, and class size");
  classify->add_option("cards", classify_cards,
                       "card tokens (or one quoted hand)");

  std::string iso_a, iso_b;
  auto* iso =
      app.add_subcommand("iso", "isomorphism verdict and witness for two hands");
  iso->add_option("handA", iso_a, "first hand (quoted)")->required();
  iso->add_option("handB", iso_b, "second hand (quoted)")->required();

  int table_lo = -1, table_hi = -1;
  auto* table = app.add_subcommand(
      "table", "class counts per hand size (whole deck range by default)");
  table->add_option("lo", table_lo, "first hand size");
  table->add_option("hi", table_hi, "last hand size");

  auto* burnside =
      app.add_subcommand("burnside", "class count for every hand size");

  std::string find_goal;
  std::vector<std::string> find_cards;
  std::string find_board;
  auto* find = app.add_subcommand(
      "find", "all goal-satisfying hands within a board");
  find->add_option("goal", find_goal,
                   "set | stun | quad | soot | a hand (its class)")
      ->required();
  find->add_option("cards", find_cards, "board card tokens");
  find->add_option("--board", find_board, "board file ('#' comments allowed)");

  int deal_size = 0;
  auto* deal_cmd =
      app.add_subcommand("deal", "deal a reproducible pseudorandom board");
  deal_cmd->add_option("size", deal_size, "number of cards")->required();

  std::string part_goal;
  std::vector<std::string> part_cards;
  std::string part_board;
  auto* partition = app.add_subcommand(
      "partition", "split a board into disjoint goal hands, or 'none'");
  partition
      ->add_option("goal", part_goal,
                   "set | stun | quad | soot | a hand (its class)")
      ->required();
  partition->add_option("cards", part_cards, "board card tokens");
  partition->add_option("--board", part_board,
                        "board file ('#' comments allowed)");

  std::string count_goal;
  auto* count = app.add_subcommand(
      "count", "goal hands in the whole deck, with exact probability");
  count->add_option("goal", count_goal,
                    "set | stun | quad | soot | a hand (its class)")
      ->required();

  std::string ind_a, ind_b, ind_map, ind_map_file;
  auto* ind = app.add_subcommand(
      "inducers", "group elements realizing a given card mapping");
  ind->add_option("handA", ind_a, "source hand (quoted)")->required();
  ind->add_option("handB", ind_b, "target hand (quoted)")->required();
  ind->add_option("mapping", ind_map,
                  "comma/space-separated CARD->CARD pairs");
  ind->add_option("--map-file", ind_map_file, "file with CARD->CARD pairs");

  auto* verify =
      app.add_subcommand("verify", "run the acceptance battery and report");

  // Global flags (--k, --json, ...) may appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*classify) return cmd_classify(opt, classify_cards);
    if (*iso) return cmd_iso(opt, iso_a, iso_b);
    if (*table) return cmd_table(opt, table_lo, table_hi);
    if (*burnside) return cmd_burnside(opt);
    if (*find) return cmd_find(opt, find_goal, find_cards, find_board);
    if (*deal_cmd) return cmd_deal(opt, deal_size);
    if (*partition)
      return cmd_partition(opt, part_goal, part_cards, part_board);
    if (*count) return cmd_count(opt, count_goal);
    if (*ind) return cmd_inducers(opt, ind_a, ind_b, ind_map, ind_map_file);
    if (*verify) return cmd_verify(opt);
  } catch (const kdeck::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const kdeck::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
