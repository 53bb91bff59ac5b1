#pragma once

#include "rankshift/bigcount.hpp"
#include "rankshift/matrices.hpp"
#include "rankshift/words.hpp"

#include <cstdint>
#include <vector>

namespace rankshift {

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool operator==(const Rational&) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Distance between two truncated paths.
///
/// When the truncations differ, `value` is 1/(k+1) with k the least j such
/// that they differ on the cube [0, j̄], and `determined` is true. When they
/// agree on the whole available cube [0, m̄], `value` is 0 and `determined`
/// is false: the true distance of any extensions is only known to be at most
/// 1/(m+2).
struct MetricValue {
  Rational value;
  bool determined = false;
};

/// Both words must have the same cube shape m̄; throws ShapeMismatch.
MetricValue metric(const Word& x, const Word& y);

/// Truncation of T^p(x): restrict_tail(x, p).
Word shift_truncation(const Word& x, const Shape& p);

/// d_n(x, y) = max_{0<=l<=n} d(T^{lp}x, T^{lp}y), each term evaluated on the
/// largest cube inside the shifted truncations. Undetermined terms count as 0.
MetricValue dynamical_distance(const Word& x, const Word& y, const Shape& p, std::size_t n);

/// ε_k = 1/(k+2).
inline Rational separation_scale(std::size_t k) { return Rational{1, k + 2}; }

/// d_n(x, y) > ε_k on truncations of shape k̄ + np.
bool separated(const Word& x, const Word& y, const Shape& p, std::size_t n, std::size_t k);

enum class SeparationMode { Formula, BruteForce };

/// Cardinality of a maximal (n, ε_k)-separated set for T^p. Formula mode
/// returns w_{k̄+np}; brute-force mode enumerates Λ_{k̄+np} and builds the set
/// greedily in enumeration order. Requires k̄ >= p (ScaleTooFine).
BigCount separated_count(const MatrixFamily& family, const Shape& p, std::size_t k, std::size_t n,
                         SeparationMode mode, const Budget& budget = {});

struct EntropySequence {
  std::vector<double> sequence; ///< a_n = (1/n) log w_{k̄+np}, n = 1..n_max
  std::vector<double> diffs;    ///< b_n = log w_{k̄+(n+1)p} - log w_{k̄+np}, n = 1..n_max-1
  double estimate = 0.0;        ///< b_{n_max-1}
  bool exact_counts = true;     ///< false if the float fallback was used
};

EntropySequence bowen_entropy_estimate(const MatrixFamily& family, const Shape& p, std::size_t k,
                                       std::size_t n_max, const Budget& budget = {});

/// (1/n^r) log w_{(k+n)ē}; rank 1 is rejected with RankOne.
double action_entropy_estimate(const MatrixFamily& family, std::size_t k, std::size_t n,
                               const Budget& budget = {});

} // namespace rankshift
