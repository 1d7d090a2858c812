#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace kdeck {

/// Exact integer/rational types for counts that overflow 64 bits
/// (class counts over large decks, probabilities in lowest terms).
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact n-choose-r (0 when r > n).
BigInt binomial(std::uint64_t n, std::uint64_t r);

/// Exact n!.
BigInt factorial(std::uint64_t n);

}  // namespace kdeck
