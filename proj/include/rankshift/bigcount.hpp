#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace rankshift {

/// Exact nonnegative integer (word counts, matrix power entries).
using BigCount = boost::multiprecision::cpp_int;

/// Natural log from the bit length and the top 64 bits; -inf for zero.
/// Relative accuracy is that of a double (well beyond 12 digits).
double log_big(const BigCount& x);

std::size_t bit_length(const BigCount& x);

/// x * 2^-shift as a double, computed without overflowing intermediate doubles.
double scaled_to_double(const BigCount& x, std::int64_t shift);

std::string to_decimal(const BigCount& x);

/// Budget guards for exponential work. Exceeding either throws BudgetExceeded.
struct Budget {
  /// Upper bound on (#words enumerated) x (box points per word).
  std::uint64_t max_enumeration_work = 50'000'000;
  /// Exact big-integer mode is abandoned beyond this many decimal digits.
  std::uint64_t max_exact_digits = 1'000'000;
};

} // namespace rankshift
