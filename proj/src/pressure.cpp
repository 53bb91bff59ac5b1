#include "rankshift/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rankshift {

Potential::Potential(std::size_t window, double default_value, Table table)
    : window_(window), default_(default_value), table_(std::move(table)) {}

Potential Potential::constant(double c) { return Potential(0, c); }

Potential Potential::vertex(std::span<const double> g) {
  Table table;
  for (std::size_t a = 0; a < g.size(); ++a) table[{static_cast<Letter>(a)}] = g[a];
  return Potential(0, 0.0, std::move(table));
}

double Potential::value(std::span<const Letter> window_labels) const {
  auto it = table_.find(std::vector<Letter>(window_labels.begin(), window_labels.end()));
  return it == table_.end() ? default_ : it->second;
}

double Potential::evaluate(const Word& w, const Shape& offset) const {
  const Word piece = restrict_box(w, offset, Shape::uniform(w.shape().rank(), window_));
  return value(piece.labels());
}

Potential Potential::plus(double c) const {
  Table shifted = table_;
  for (auto& [key, v] : shifted) v += c;
  return Potential(window_, default_ + c, std::move(shifted));
}

namespace {

void require_window(const Potential& f, std::size_t k) {
  if (k < f.window())
    throw Error(ErrorCode::WindowTooWide, "window " + std::to_string(f.window()) + " exceeds k = " +
                                              std::to_string(k));
}

void require_scale(const Shape& p, std::size_t k) {
  if (!leq(p, Shape::uniform(p.rank(), k)))
    throw Error(ErrorCode::ScaleTooFine, "need k̄ >= p, got k = " + std::to_string(k));
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// Chain over shape-k̄ window states for the Transfer method.
struct WindowChain {
  std::vector<double> weight; // f on each state
  struct Step {
    std::size_t from, to, multiplicity;
  };
  std::vector<Step> steps;
};

WindowChain build_chain(const MatrixFamily& family, const Potential& f, const Shape& p,
                        std::size_t k, const Budget& budget) {
  const Shape base = Shape::uniform(family.rank(), k);
  const BigCount states_count = word_count(family, base, budget);
  const BigCount step_words = word_count(family, p, budget);
  require_enumeration_budget(budget, states_count * step_words, base + p, "transfer chain");

  std::vector<Word> states = enumerate_words(family, base);
  std::sort(states.begin(), states.end(), word_less);
  auto index_of = [&](const Word& w) {
    auto it = std::lower_bound(states.begin(), states.end(), w, word_less);
    return static_cast<std::size_t>(it - states.begin());
  };

  std::vector<std::vector<Word>> steps_from(family.size());
  for (auto& z : enumerate_words(family, p)) steps_from[z.origin()].push_back(std::move(z));

  WindowChain chain;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  for (std::size_t a = 0; a < states.size(); ++a) {
    chain.weight.push_back(f.evaluate(states[a], Shape::zero(family.rank())));
    for (const auto& z : steps_from[states[a].terminal()]) {
      const Word next = restrict_tail(compose(family, states[a], z), p);
      ++counts[{a, index_of(next)}];
    }
  }
  for (const auto& [key, m] : counts) chain.steps.push_back({key.first, key.second, m});
  return chain;
}

std::vector<double> transfer_sequence(const MatrixFamily& family, const Potential& f, const Shape& p,
                                      std::size_t k, std::size_t n_max, const Budget& budget) {
  const WindowChain chain = build_chain(family, f, p, k, budget);
  const double top = *std::max_element(chain.weight.begin(), chain.weight.end());
  std::vector<double> factor(chain.weight.size());
  for (std::size_t a = 0; a < factor.size(); ++a) factor[a] = std::exp(chain.weight[a] - top);

  std::vector<double> v = factor, next(v.size());
  double log_scale = top;
  std::vector<double> out;
  out.push_back(log_scale + std::log(pairwise_sum(v)));
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& s : chain.steps)
      next[s.to] += v[s.from] * static_cast<double>(s.multiplicity);
    double peak = 0.0;
    for (std::size_t b = 0; b < next.size(); ++b) {
      next[b] *= factor[b];
      peak = std::max(peak, next[b]);
    }
    if (peak == 0.0) {
      out.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    for (double& x : next) x /= peak;
    log_scale += top + std::log(peak);
    v.swap(next);
    out.push_back(log_scale + std::log(pairwise_sum(v)));
  }
  return out;
}

double enumerate_partition(const MatrixFamily& family, const Potential& f, const Shape& p,
                           std::size_t k, std::size_t n, const Budget& budget) {
  const Shape shape = Shape::uniform(family.rank(), k) + n * p;
  require_enumeration_budget(budget, word_count(family, shape, budget), shape, "partition function");
  std::vector<double> sums;
  WordStream stream(family, shape);
  while (auto u = stream.next()) sums.push_back(birkhoff_sum_on_cylinder(family, *u, f, p, n));
  return log_sum_exp(sums);
}

} // namespace

double log_sum_exp(std::span<const double> values) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (values.empty()) return neg_inf;
  const double top = *std::max_element(values.begin(), values.end());
  if (top == neg_inf) return neg_inf;
  std::vector<double> shifted(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) shifted[i] = std::exp(values[i] - top);
  return top + std::log(pairwise_sum(shifted));
}

double birkhoff_sum_on_cylinder(const MatrixFamily& family, const Word& u, const Potential& f,
                                const Shape& p, std::size_t n) {
  if (p.rank() != family.rank() || u.shape().rank() != family.rank())
    throw Error(ErrorCode::ShapeMismatch, "rank mismatch");
  const Shape travel = n * p;
  if (!leq(travel, u.shape()))
    throw Error(ErrorCode::ShapeMismatch, "cylinder shape " + to_string(u.shape()) + " is below np");
  const Shape rest = u.shape() - travel;
  if (!rest.is_cube())
    throw Error(ErrorCode::ShapeMismatch, "cylinder shape must be k̄ + np, got " + to_string(u.shape()));
  const std::size_t k = rest.rank() ? rest[0] : 0;
  require_window(f, k);
  require_scale(p, k);
  double sum = 0.0;
  for (std::size_t l = 0; l <= n; ++l) sum += f.evaluate(u, l * p);
  return sum;
}

std::vector<double> partition_function_log_sequence(const MatrixFamily& family, const Potential& f,
                                                    const Shape& p, std::size_t k, std::size_t n_max,
                                                    PartitionMethod method, const Budget& budget) {
  family.require_valid();
  if (p.rank() != family.rank()) throw Error(ErrorCode::ShapeMismatch, "direction rank mismatch");
  require_window(f, k);
  require_scale(p, k);
  if (method == PartitionMethod::Transfer) return transfer_sequence(family, f, p, k, n_max, budget);
  std::vector<double> out;
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(enumerate_partition(family, f, p, k, n, budget));
  return out;
}

double partition_function_log(const MatrixFamily& family, const Potential& f, const Shape& p,
                              std::size_t k, std::size_t n, PartitionMethod method,
                              const Budget& budget) {
  family.require_valid();
  if (p.rank() != family.rank()) throw Error(ErrorCode::ShapeMismatch, "direction rank mismatch");
  require_window(f, k);
  require_scale(p, k);
  if (method == PartitionMethod::Enumerate) return enumerate_partition(family, f, p, k, n, budget);
  return transfer_sequence(family, f, p, k, n, budget).back();
}

PressureSequence pressure_estimate(const MatrixFamily& family, const Potential& f, const Shape& p,
                                   std::size_t k, std::size_t n_max, PartitionMethod method,
                                   const Budget& budget) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroDirection, "p must be nonzero");
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 2");
  const auto log_z = partition_function_log_sequence(family, f, p, k, n_max, method, budget);
  PressureSequence out;
  for (std::size_t n = 1; n <= n_max; ++n) out.sequence.push_back(log_z[n] / static_cast<double>(n));
  for (std::size_t n = 1; n < n_max; ++n) out.diffs.push_back(log_z[n + 1] - log_z[n]);
  out.estimate = out.diffs.back();
  return out;
}

double pressure_oracle_vertex(const MatrixFamily& family, std::span<const double> g, const Shape& p,
                              const Budget& budget) {
  family.require_valid();
  if (g.size() != family.size())
    throw Error(ErrorCode::ShapeMismatch, "vertex potential needs one value per letter");
  if (p.rank() != family.rank()) throw Error(ErrorCode::ShapeMismatch, "direction rank mismatch");
  if (p.is_zero()) throw Error(ErrorCode::ZeroDirection, "p must be nonzero");
  auto [m, log_scale] = detail::to_scaled_real(matrix_power_product(family, p, budget));
  const double top = *std::max_element(g.begin(), g.end());
  for (std::size_t a = 0; a < m.rows(); ++a) {
    const double d = std::exp(g[a] - top);
    for (std::size_t b = 0; b < m.cols(); ++b) m(a, b) *= d;
  }
  return detail::log_spectral_radius_scaled(std::move(m), log_scale + top);
}

} // namespace rankshift
