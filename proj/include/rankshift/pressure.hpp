#pragma once

#include "rankshift/matrices.hpp"
#include "rankshift/words.hpp"

#include <map>
#include <span>
#include <vector>

namespace rankshift {

/// Locally constant potential f(x) = table[x restricted to [0, s̄]], with a
/// default for window-words missing from the table. Keys are the row-major
/// labels of a shape-s̄ word.
class Potential {
public:
  using Table = std::map<std::vector<Letter>, double>;

  Potential(std::size_t window, double default_value, Table table = {});
  static Potential constant(double c);
  /// f(x) = g(x(0)).
  static Potential vertex(std::span<const double> g);

  std::size_t window() const { return window_; }
  double default_value() const { return default_; }
  const Table& table() const { return table_; }

  double value(std::span<const Letter> window_labels) const;
  /// f on the labels of w over offset + [0, s̄].
  double evaluate(const Word& w, const Shape& offset) const;
  /// f + c.
  Potential plus(double c) const;

  bool operator==(const Potential&) const = default;

private:
  std::size_t window_;
  double default_;
  Table table_;
};

/// Σ_{l=0..n} f(T^{lp} x) for any x in the cylinder of u. Requires
/// σ(u) = k̄ + np with k >= window (WindowTooWide) and k̄ >= p (ScaleTooFine);
/// under these conditions the sum is constant on the cylinder.
double birkhoff_sum_on_cylinder(const MatrixFamily& family, const Word& u, const Potential& f,
                                const Shape& p, std::size_t n);

/// log Σ exp(x) with max-shift and pairwise summation in a fixed tree order.
double log_sum_exp(std::span<const double> values);

enum class PartitionMethod {
  /// Direct cylinder sum over Λ_{k̄+np}; budget-limited.
  Enumerate,
  /// The same sum organized along the factorization u = W_0 z_1 ... z_n,
  /// with W_0 in Λ_{k̄} and z_l in Λ_p: a chain over shape-k̄ window states.
  Transfer,
};

/// log Σ_{u in Λ_{k̄+np}} exp(birkhoff_sum_on_cylinder(u)).
double partition_function_log(const MatrixFamily& family, const Potential& f, const Shape& p,
                              std::size_t k, std::size_t n,
                              PartitionMethod method = PartitionMethod::Transfer,
                              const Budget& budget = {});

/// partition_function_log for n = 0..n_max in one pass.
std::vector<double> partition_function_log_sequence(const MatrixFamily& family, const Potential& f,
                                                    const Shape& p, std::size_t k,
                                                    std::size_t n_max,
                                                    PartitionMethod method = PartitionMethod::Transfer,
                                                    const Budget& budget = {});

struct PressureSequence {
  std::vector<double> sequence; ///< (1/n) log Z_n, n = 1..n_max
  std::vector<double> diffs;    ///< log Z_{n+1} - log Z_n, n = 1..n_max-1
  double estimate = 0.0;        ///< last diff
};

PressureSequence pressure_estimate(const MatrixFamily& family, const Potential& f, const Shape& p,
                                   std::size_t k, std::size_t n_max,
                                   PartitionMethod method = PartitionMethod::Transfer,
                                   const Budget& budget = {});

/// log r(D_g M^p) with D_g = diag(exp g(a)): the pressure of f(x) = g(x(0)).
double pressure_oracle_vertex(const MatrixFamily& family, std::span<const double> g, const Shape& p,
                              const Budget& budget = {});

} // namespace rankshift
