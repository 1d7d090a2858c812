#include "kdeck/bigint.hpp"

namespace kdeck {

BigInt binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;  // exact: out is C(n-r+i, i) after each step
  }
  return out;
}

BigInt factorial(std::uint64_t n) {
  BigInt out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace kdeck
