#include "rankshift/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace rankshift {

namespace {

// a/b > c/d for nonnegative rationals.
bool greater(const Rational& x, const Rational& y) {
  return static_cast<unsigned __int128>(x.num) * y.den > static_cast<unsigned __int128>(y.num) * x.den;
}

void require_scale(const Shape& p, std::size_t k) {
  if (!leq(p, Shape::uniform(p.rank(), k)))
    throw Error(ErrorCode::ScaleTooFine, "need k̄ >= p, got k = " + std::to_string(k) + ", p = " +
                                             to_string(p));
}

void require_direction(const MatrixFamily& family, const Shape& p) {
  if (p.rank() != family.rank()) throw Error(ErrorCode::ShapeMismatch, "direction rank mismatch");
  if (p.is_zero()) throw Error(ErrorCode::ZeroDirection, "p must be nonzero");
}

} // namespace

MetricValue metric(const Word& x, const Word& y) {
  if (!(x.shape() == y.shape()) || !x.shape().is_cube())
    throw Error(ErrorCode::ShapeMismatch, "metric needs two words of the same cube shape");
  const BoxIndexer box(x.shape());
  std::optional<std::size_t> first;
  for (std::size_t idx = 0; idx < box.volume(); ++idx) {
    if (x.labels()[idx] == y.labels()[idx]) continue;
    const auto p = box.point(idx);
    const std::size_t j = *std::max_element(p.begin(), p.end());
    if (!first || j < *first) first = j;
  }
  if (!first) return MetricValue{Rational{0, 1}, false};
  return MetricValue{Rational{1, *first + 1}, true};
}

Word shift_truncation(const Word& x, const Shape& p) { return restrict_tail(x, p); }

MetricValue dynamical_distance(const Word& x, const Word& y, const Shape& p, std::size_t n) {
  if (!(x.shape() == y.shape())) throw Error(ErrorCode::ShapeMismatch, "d_n needs equal shapes");
  MetricValue best{Rational{0, 1}, false};
  for (std::size_t l = 0; l <= n; ++l) {
    const Shape offset = l * p;
    const Word sx = shift_truncation(x, offset);
    const Word sy = shift_truncation(y, offset);
    const Shape cube = Shape::uniform(sx.shape().rank(), sx.shape().min_coord());
    const MetricValue d = metric(restrict_prefix(sx, cube), restrict_prefix(sy, cube));
    if (d.determined && (!best.determined || greater(d.value, best.value))) best = d;
  }
  return best;
}

bool separated(const Word& x, const Word& y, const Shape& p, std::size_t n, std::size_t k) {
  const Shape cube = Shape::uniform(p.rank(), k);
  const Rational eps = separation_scale(k);
  for (std::size_t l = 0; l <= n; ++l) {
    const Shape offset = l * p;
    const MetricValue d = metric(restrict_box(x, offset, cube), restrict_box(y, offset, cube));
    if (d.determined && greater(d.value, eps)) return true;
  }
  return false;
}

BigCount separated_count(const MatrixFamily& family, const Shape& p, std::size_t k, std::size_t n,
                         SeparationMode mode, const Budget& budget) {
  family.require_valid();
  require_direction(family, p);
  require_scale(p, k);
  const Shape shape = Shape::uniform(p.rank(), k) + n * p;
  const BigCount formula = word_count(family, shape, budget);
  if (mode == SeparationMode::Formula) return formula;

  const Shape cube = Shape::uniform(p.rank(), k);
  const BigCount pair_work = formula * formula * BigCount(n + 1) * BigCount(cube.box_volume());
  if (pair_work > BigCount(budget.max_enumeration_work))
    throw Error(ErrorCode::BudgetExceeded, "brute-force separation at " + to_string(shape) + " needs ~" +
                                               to_decimal(pair_work) + " steps");
  require_enumeration_budget(budget, formula, shape, "separated_count");

  std::vector<Word> chosen;
  WordStream stream(family, shape);
  while (auto w = stream.next()) {
    const bool far_from_all = std::all_of(chosen.begin(), chosen.end(), [&](const Word& y) {
      return separated(*w, y, p, n, k);
    });
    if (far_from_all) chosen.push_back(std::move(*w));
  }
  return BigCount(chosen.size());
}

EntropySequence bowen_entropy_estimate(const MatrixFamily& family, const Shape& p, std::size_t k,
                                       std::size_t n_max, const Budget& budget) {
  family.require_valid();
  require_direction(family, p);
  require_scale(p, k);
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 2");

  const std::size_t dim = family.size();
  const Shape base = Shape::uniform(p.rank(), k);
  const Shape largest = base + n_max * p;
  std::vector<double> log_w; // log w_{k̄+np}, n = 1..n_max
  EntropySequence out;
  out.exact_counts = estimated_digits(family, largest) <= budget.max_exact_digits;

  if (out.exact_counts) {
    // w_{k̄+np} = e^T M^{k̄} (M^p)^n e, valid since the M_i commute.
    const IntegerMatrix step = matrix_power_product(family, p, budget);
    std::vector<BigCount> row(dim, 1), next(dim);
    for (std::size_t i = 0; i < family.rank(); ++i)
      for (std::size_t s = 0; s < k; ++s) {
        for (auto& x : next) x = 0;
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b < dim; ++b)
            if (family.allowed(i, a, b)) next[b] += row[a];
        row.swap(next);
      }
    for (std::size_t n = 1; n <= n_max; ++n) {
      for (auto& x : next) x = 0;
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
          if (!step(a, b).is_zero()) next[b] += row[a] * step(a, b);
      row.swap(next);
      BigCount total = 0;
      for (const auto& x : row) total += x;
      log_w.push_back(log_big(total));
    }
  } else {
    auto [step, step_scale] = [&] {
      // Float route: M^p itself may be too large for exact arithmetic, so
      // build it by scaled multiplication.
      RealMatrix acc(dim, dim);
      for (std::size_t a = 0; a < dim; ++a) acc(a, a) = 1.0;
      double scale = 0.0;
      for (std::size_t i = 0; i < family.rank(); ++i)
        for (std::size_t s = 0; s < p[i]; ++s) {
          RealMatrix next(dim, dim);
          double top = 0.0;
          for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t c = 0; c < dim; ++c)
              for (std::size_t b = 0; b < dim; ++b)
                if (family.allowed(i, c, b)) next(a, b) += acc(a, c);
          for (double v : next.entries()) top = std::max(top, v);
          for (double& v : next.entries()) v /= top;
          scale += std::log(top);
          acc = std::move(next);
        }
      return std::pair{acc, scale};
    }();
    std::vector<double> row(dim, 1.0), next(dim);
    double log_scale = 0.0;
    for (std::size_t i = 0; i < family.rank(); ++i)
      for (std::size_t s = 0; s < k; ++s) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b < dim; ++b)
            if (family.allowed(i, a, b)) next[b] += row[a];
        const double top = *std::max_element(next.begin(), next.end());
        for (auto& x : next) x /= top;
        log_scale += std::log(top);
        row.swap(next);
      }
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) next[b] += row[a] * step(a, b);
      const double top = *std::max_element(next.begin(), next.end());
      for (auto& x : next) x /= top;
      log_scale += std::log(top) + step_scale;
      row.swap(next);
      double total = 0.0;
      for (double x : row) total += x;
      log_w.push_back(log_scale + std::log(total));
    }
  }

  for (std::size_t n = 1; n <= n_max; ++n) out.sequence.push_back(log_w[n - 1] / static_cast<double>(n));
  for (std::size_t n = 1; n < n_max; ++n) out.diffs.push_back(log_w[n] - log_w[n - 1]);
  out.estimate = out.diffs.back();
  return out;
}

double action_entropy_estimate(const MatrixFamily& family, std::size_t k, std::size_t n,
                               const Budget& budget) {
  family.require_valid();
  const std::size_t r = family.rank();
  if (r < 2) throw Error(ErrorCode::RankOne, "the Z^r-action estimate needs rank >= 2");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const LogCount lw = log_word_count(family, Shape::uniform(r, k + n), budget);
  return lw.value / std::pow(static_cast<double>(n), static_cast<double>(r));
}

} // namespace rankshift
