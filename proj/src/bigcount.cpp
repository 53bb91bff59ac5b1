#include "rankshift/bigcount.hpp"

#include <cmath>
#include <limits>

namespace rankshift {

std::size_t bit_length(const BigCount& x) {
  if (x.is_zero()) return 0;
  return boost::multiprecision::msb(x) + 1;
}

double log_big(const BigCount& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = bit_length(x);
  if (bits <= 64) return std::log(static_cast<double>(static_cast<std::uint64_t>(x)));
  const std::size_t shift = bits - 64;
  const auto top = static_cast<std::uint64_t>(x >> shift);
  return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

double scaled_to_double(const BigCount& x, std::int64_t shift) {
  if (x.is_zero()) return 0.0;
  const auto bits = static_cast<std::int64_t>(bit_length(x));
  if (bits <= 64) return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(x)), -shift);
  const std::int64_t drop = bits - 64;
  const auto top = static_cast<std::uint64_t>(x >> static_cast<unsigned>(drop));
  return std::ldexp(static_cast<double>(top), static_cast<int>(drop - shift));
}

std::string to_decimal(const BigCount& x) { return x.str(); }

} // namespace rankshift
