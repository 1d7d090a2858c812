// Python bindings: the main operations over textual hands, with exact
// big-integer counts surfaced as Python ints and probabilities as
// fractions.Fraction.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kdeck/bigint.hpp"
#include "kdeck/caps.hpp"
#include "kdeck/classification.hpp"
#include "kdeck/deck.hpp"
#include "kdeck/games.hpp"
#include "kdeck/group.hpp"
#include "kdeck/isomorphism.hpp"

namespace py = pybind11;
using namespace kdeck;

namespace {

py::int_ to_py_int(const BigInt& value) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(value.str().c_str(), nullptr, 10));
}

py::object to_py_fraction(const BigRational& value) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py_int(BigInt(numerator(value))),
                  to_py_int(BigInt(denominator(value))));
}

GoalSpec goal_from_token(const std::string& token, const DeckSpec& spec) {
  if (token == "set") return GoalSpec::make_set();
  if (token == "stun") return GoalSpec::make_stun();
  if (token == "quad") return GoalSpec::make_quad();
  if (token == "soot") {
    if (spec.k != 3 || spec.d != 4)
      throw std::invalid_argument(
          "goal 'soot' is defined on the standard deck only (k=3, d=4)");
    return GoalSpec::make_class_of(representative_hand(Symbol3{0, {0, 1, 2}}));
  }
  return GoalSpec::make_class_of(parse_hand(token, spec));
}

}  // namespace

PYBIND11_MODULE(kdeck, m) {
  m.doc() =
      "SET-style deck combinatorics: hand isomorphism, classification, "
      "counting, and game predicates";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  m.def(
      "deck_size",
      [](int k, int d) { return DeckSpec(k, d).deck_size(); },
      py::arg("k") = 3, py::arg("d") = 4,
      "Number of cards in the (k, d) deck.");

  m.def(
      "deck",
      [](int k, int d) { return to_text(make_deck(DeckSpec(k, d))); },
      py::arg("k") = 3, py::arg("d") = 4,
      "The full deck as hand text, cards ascending.");

  m.def(
      "describe",
      [](const std::string& card) {
        return standard_deck::describe(parse_card(card, DeckSpec(3, 4)));
      },
      py::arg("card"),
      "English name of a standard-deck card, e.g. 'red oval solid single'.");

  m.def(
      "canonical_form",
      [](const std::string& hand, int k, int d) {
        return to_text(canonical_form(parse_hand(hand, DeckSpec(k, d))).hand);
      },
      py::arg("hand"), py::arg("k") = 3, py::arg("d") = 4,
      "Canonical representative of the hand's isomorphism class.");

  m.def(
      "are_isomorphic",
      [](const std::string& a, const std::string& b, int k, int d) {
        DeckSpec spec(k, d);
        return are_isomorphic(parse_hand(a, spec), parse_hand(b, spec));
      },
      py::arg("a"), py::arg("b"), py::arg("k") = 3, py::arg("d") = 4);

  m.def(
      "isomorphism_witness",
      [](const std::string& a, const std::string& b, int k,
         int d) -> py::object {
        DeckSpec spec(k, d);
        auto witness =
            isomorphism_witness(parse_hand(a, spec), parse_hand(b, spec));
        if (!witness) return py::none();
        std::vector<std::pair<std::string, std::string>> mapping;
        for (std::size_t i = 0; i < witness->mapping.from.size(); ++i)
          mapping.emplace_back(
              to_text(card_from_id(witness->mapping.from[i], spec)),
              to_text(card_from_id(witness->mapping.to[i], spec)));
        return py::make_tuple(to_text(witness->element), mapping);
      },
      py::arg("a"), py::arg("b"), py::arg("k") = 3, py::arg("d") = 4,
      "(element_text, [(from_card, to_card), ...]) or None.");

  m.def(
      "symbol",
      [](const std::string& hand) {
        return to_text(symbol3(parse_hand(hand, DeckSpec(3, 4))));
      },
      py::arg("hand"),
      "Classifying symbol '(t;p1,p2,p3)' of a standard-deck 3-card hand.");

  m.def(
      "classify",
      [](const std::string& hand, int k, int d) {
        ClassRecord record = class_of(parse_hand(hand, DeckSpec(k, d)));
        py::dict out;
        out["symbol"] = record.symbol
                            ? py::object(py::str(to_text(*record.symbol)))
                            : py::object(py::none());
        out["representative"] = to_text(record.representative.hand);
        out["size"] = record.size;
        return out;
      },
      py::arg("hand"), py::arg("k") = 3, py::arg("d") = 4,
      "dict with symbol (or None), canonical representative, class size.");

  m.def(
      "stabilizer_order",
      [](const std::string& hand, int k, int d) {
        return stabilizer_order(parse_hand(hand, DeckSpec(k, d)));
      },
      py::arg("hand"), py::arg("k") = 3, py::arg("d") = 4);

  m.def(
      "group_order",
      [](int k, int d) { return to_py_int(group_order(DeckSpec(k, d))); },
      py::arg("k") = 3, py::arg("d") = 4,
      "Order of the symmetry group, d! * (k!)^d, as an exact int.");

  m.def(
      "class_counts",
      [](int k, int d) {
        auto counts = count_classes_burnside(DeckSpec(k, d));
        py::list out;
        for (const BigInt& c : counts) out.append(to_py_int(c));
        return out;
      },
      py::arg("k") = 3, py::arg("d") = 4,
      "Exact number of isomorphism classes for every hand size 0..k^d.");

  m.def(
      "is_set",
      [](const std::string& hand, int k, int d) {
        return is_set(parse_hand(hand, DeckSpec(k, d)));
      },
      py::arg("hand"), py::arg("k") = 3, py::arg("d") = 4);

  m.def(
      "is_stun",
      [](const std::string& hand, int k, int d) {
        return is_stun(parse_hand(hand, DeckSpec(k, d)));
      },
      py::arg("hand"), py::arg("k") = 3, py::arg("d") = 4);

  m.def(
      "is_quad",
      [](const std::string& hand, int k, int d) {
        return is_quad(parse_hand(hand, DeckSpec(k, d)));
      },
      py::arg("hand"), py::arg("k") = 4, py::arg("d") = 3);

  m.def(
      "count_goal",
      [](const std::string& goal, int k, int d) {
        DeckSpec spec(k, d);
        GoalCount result = count_over_deck(spec, goal_from_token(goal, spec));
        return py::make_tuple(to_py_int(result.count),
                              to_py_fraction(result.probability));
      },
      py::arg("goal"), py::arg("k") = 3, py::arg("d") = 4,
      "(count, probability) of goal hands among all hands of that size.");

  m.def(
      "find_goal_hands",
      [](const std::string& goal, const std::string& board, int k, int d) {
        DeckSpec spec(k, d);
        auto found = find_goal_hands(parse_hand(board, spec),
                                     goal_from_token(goal, spec));
        std::vector<std::string> out;
        for (const Hand& h : found) out.push_back(to_text(h));
        return out;
      },
      py::arg("goal"), py::arg("board"), py::arg("k") = 3, py::arg("d") = 4);

  m.def(
      "partition",
      [](const std::string& goal, const std::string& board, int k,
         int d) -> py::object {
        DeckSpec spec(k, d);
        auto blocks = partition_into_goals(parse_hand(board, spec),
                                           goal_from_token(goal, spec));
        if (!blocks) return py::none();
        py::list out;
        for (const Hand& h : *blocks) out.append(to_text(h));
        return out;
      },
      py::arg("goal"), py::arg("board"), py::arg("k") = 3, py::arg("d") = 4,
      "List of disjoint goal hands covering the board, or None.");

  m.def(
      "deal",
      [](int size, std::uint64_t seed, int k, int d) {
        return to_text(deal(DeckSpec(k, d), size, seed));
      },
      py::arg("size"), py::arg("seed") = 0, py::arg("k") = 3,
      py::arg("d") = 4, "Reproducible pseudorandom board as hand text.");
}
