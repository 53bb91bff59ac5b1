#include "rankshift/matrices.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace rankshift {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw Error(ErrorCode::ShapeMismatch, "alphabet is empty");
  std::set<std::string> seen(letters_.begin(), letters_.end());
  if (seen.size() != letters_.size())
    throw Error(ErrorCode::ParseError, "alphabet letters are not distinct");
}

Alphabet Alphabet::numbered(std::size_t n) {
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < n; ++i) letters.push_back(std::to_string(i));
  return Alphabet(std::move(letters));
}

std::optional<Letter> Alphabet::index_of(const std::string& symbol) const {
  auto it = std::find(letters_.begin(), letters_.end(), symbol);
  if (it == letters_.end()) return std::nullopt;
  return static_cast<Letter>(it - letters_.begin());
}

// ---------------------------------------------------------------- matrices

ZeroOneMatrix::ZeroOneMatrix(std::size_t rows, std::size_t cols, std::vector<int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw Error(ErrorCode::ShapeMismatch, "entry count does not match dimensions");
}

ZeroOneMatrix ZeroOneMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  std::vector<int> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ZeroOneMatrix(r, c, std::move(entries));
}

ZeroOneMatrix ZeroOneMatrix::identity(std::size_t n) {
  std::vector<int> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return ZeroOneMatrix(n, n, std::move(e));
}

bool ZeroOneMatrix::is_binary() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int v) { return v == 0 || v == 1; });
}

ZeroOneMatrix kron(const ZeroOneMatrix& a, const ZeroOneMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<int> e(rows * cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          e[(i * b.rows() + k) * cols + j * b.cols() + l] = a(i, j) * b(k, l);
  return ZeroOneMatrix(rows, cols, std::move(e));
}

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntegerMatrix::IntegerMatrix(const ZeroOneMatrix& m) : IntegerMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] = m.entries()[i];
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

BigCount IntegerMatrix::total() const {
  BigCount sum = 0;
  for (const auto& e : entries_) sum += e;
  return sum;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product dimensions");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigCount& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntegerMatrix power(const IntegerMatrix& m, std::size_t exponent) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "power of non-square matrix");
  IntegerMatrix result = IntegerMatrix::identity(m.rows());
  IntegerMatrix base = m;
  while (exponent) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- family

long long Violation::field(const std::string& name) const {
  for (const auto& f : witness)
    if (f.name == name && !f.values.empty()) return f.values.front();
  throw Error(ErrorCode::InvalidArgument, "violation has no witness field '" + name + "'");
}

MatrixFamily::MatrixFamily(Alphabet alphabet, std::vector<ZeroOneMatrix> matrices)
    : alphabet_(std::move(alphabet)), matrices_(std::move(matrices)) {}

MatrixFamily MatrixFamily::validated() const {
  MatrixFamily copy = *this;
  auto report = std::make_shared<const ValidationReport>(validate_family(*this));
  copy.status_ = report->valid() ? FamilyStatus::Valid : FamilyStatus::Invalid;
  copy.report_ = std::move(report);
  return copy;
}

void MatrixFamily::require_valid() const {
  switch (status_) {
  case FamilyStatus::Valid: return;
  case FamilyStatus::Unvalidated:
    throw Error(ErrorCode::InvalidFamily, "family has not been validated");
  case FamilyStatus::Invalid: {
    std::string first = report_ && !report_->violations.empty()
                            ? std::string(to_string(report_->violations.front().code))
                            : "unknown";
    throw Error(ErrorCode::InvalidFamily, "family failed validation (" + first + ")");
  }
  }
}

MatrixFamily make_family(Alphabet alphabet, std::vector<ZeroOneMatrix> matrices) {
  return MatrixFamily(std::move(alphabet), std::move(matrices)).validated();
}

namespace {

using SmallMatrix = std::vector<long long>;

SmallMatrix small_product(const ZeroOneMatrix& a, const ZeroOneMatrix& b) {
  const std::size_t n = a.rows();
  SmallMatrix out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a(i, k))
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] += b(k, j);
  return out;
}

Violation make_violation(ErrorCode code, std::vector<WitnessField> witness, std::string message) {
  return Violation{code, std::move(witness), std::move(message)};
}

// Unique d with My(o, d) = 1 and Mx(d, far) = 1: the missing corner o + e_y of
// the unit square whose path o ->x c ->y far is known. Pairwise validity
// guarantees exactly one candidate.
Letter fill_corner(const ZeroOneMatrix& mx, const ZeroOneMatrix& my, Letter o, Letter far) {
  std::optional<Letter> found;
  for (Letter d = 0; d < mx.rows(); ++d)
    if (my(o, d) == 1 && mx(d, far) == 1) {
      if (found) throw Error(ErrorCode::NonUniqueFilling, "square completion is not unique");
      found = d;
    }
  if (!found) throw Error(ErrorCode::NoFilling, "square completion has no candidate");
  return *found;
}

// Corners indexed by bitmask over (i -> 1, j -> 2, k -> 4).
using Cube = std::array<long long, 8>;

void check_cubes(const MatrixFamily& family, std::vector<Violation>& out) {
  const std::size_t r = family.rank();
  const Letter n = static_cast<Letter>(family.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (i == j || j == k || i == k) continue;
        const auto& mi = family.matrix(i);
        const auto& mj = family.matrix(j);
        const auto& mk = family.matrix(k);
        for (Letter a = 0; a < n; ++a)
          for (Letter b = 0; b < n; ++b) {
            if (!mi(a, b)) continue;
            for (Letter c = 0; c < n; ++c) {
              if (!mj(b, c)) continue;
              for (Letter d = 0; d < n; ++d) {
                if (!mk(c, d)) continue;
                // Route one rewrites the chain ijk -> jik -> jki -> kji.
                Cube one{};
                one[0] = a, one[1] = b, one[3] = c, one[7] = d;
                one[2] = fill_corner(mi, mj, a, c);
                one[6] = fill_corner(mi, mk, static_cast<Letter>(one[2]), d);
                one[4] = fill_corner(mj, mk, a, static_cast<Letter>(one[6]));
                one[5] = fill_corner(mj, mi, static_cast<Letter>(one[4]), d);
                // Route two rewrites ijk -> ikj -> kij -> kji.
                Cube two{};
                two[0] = a, two[1] = b, two[3] = c, two[7] = d;
                two[5] = fill_corner(mj, mk, b, d);
                two[4] = fill_corner(mi, mk, a, static_cast<Letter>(two[5]));
                two[6] = fill_corner(mi, mj, static_cast<Letter>(two[4]), d);
                two[2] = fill_corner(mi, mj, a, c);
                if (one != two) {
                  out.push_back(make_violation(
                      ErrorCode::CubeInconsistency,
                      {{"i", {static_cast<long long>(i + 1)}},
                       {"j", {static_cast<long long>(j + 1)}},
                       {"k", {static_cast<long long>(k + 1)}},
                       {"corners_route1", {one.begin(), one.end()}},
                       {"corners_route2", {two.begin(), two.end()}}},
                      "cube completions disagree"));
                }
              }
            }
          }
      }
}

} // namespace

ValidationReport validate_family(const MatrixFamily& family) {
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t n = family.size();
  if (family.rank() == 0) {
    out.push_back(make_violation(ErrorCode::ShapeMismatch, {{"rank", {0}}}, "no matrices"));
    return report;
  }
  for (std::size_t i = 0; i < family.rank(); ++i) {
    const auto& m = family.matrix(i);
    if (!m.is_square() || m.rows() != n)
      out.push_back(make_violation(ErrorCode::ShapeMismatch,
                                   {{"matrix", {static_cast<long long>(i + 1)}},
                                    {"rows", {static_cast<long long>(m.rows())}},
                                    {"cols", {static_cast<long long>(m.cols())}},
                                    {"expected", {static_cast<long long>(n)}}},
                                   "matrix is not |B| x |B|"));
  }
  if (!out.empty()) return report;

  for (std::size_t i = 0; i < family.rank(); ++i) {
    const auto& m = family.matrix(i);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (m(a, b) != 0 && m(a, b) != 1)
          out.push_back(make_violation(ErrorCode::NonBinaryEntry,
                                       {{"matrix", {static_cast<long long>(i + 1)}},
                                        {"row", {static_cast<long long>(a)}},
                                        {"col", {static_cast<long long>(b)}},
                                        {"value", {m(a, b)}}},
                                       "entry outside {0,1}"));
  }
  if (!out.empty()) return report;

  for (std::size_t i = 0; i < family.rank(); ++i) {
    const auto& m = family.matrix(i);
    const auto e = m.entries();
    if (std::all_of(e.begin(), e.end(), [](int v) { return v == 0; })) {
      out.push_back(make_violation(ErrorCode::ZeroMatrix, {{"matrix", {static_cast<long long>(i + 1)}}},
                                   "matrix is zero"));
      continue;
    }
    for (std::size_t a = 0; a < n; ++a) {
      bool any = false;
      for (std::size_t b = 0; b < n && !any; ++b) any = m(a, b) == 1;
      if (!any)
        out.push_back(make_violation(ErrorCode::NoSources,
                                     {{"matrix", {static_cast<long long>(i + 1)}},
                                      {"row", {static_cast<long long>(a)}}},
                                     "letter has no outgoing edge"));
    }
  }

  bool pairwise_clean = true;
  for (std::size_t i = 0; i < family.rank(); ++i)
    for (std::size_t j = i + 1; j < family.rank(); ++j) {
      const auto ij = small_product(family.matrix(i), family.matrix(j));
      const auto ji = small_product(family.matrix(j), family.matrix(i));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const long long c1 = ij[a * n + b];
          const long long c2 = ji[a * n + b];
          if (c1 >= 2 || c1 != c2) {
            pairwise_clean = false;
            out.push_back(make_violation(ErrorCode::UniqueFactorizationViolation,
                                         {{"i", {static_cast<long long>(i + 1)}},
                                          {"j", {static_cast<long long>(j + 1)}},
                                          {"a", {static_cast<long long>(a)}},
                                          {"b", {static_cast<long long>(b)}},
                                          {"count", {c1}},
                                          {"reverse_count", {c2}}},
                                         c1 != c2 ? "M_iM_j != M_jM_i" : "M_iM_j entry exceeds 1"));
          }
        }
    }

  if (family.rank() >= 3 && pairwise_clean) check_cubes(family, out);
  return report;
}

// ---------------------------------------------------------------- counting

std::uint64_t estimated_digits(const MatrixFamily& family, const Shape& l) {
  const double per_step = std::log10(static_cast<double>(std::max<std::size_t>(family.size(), 2)));
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(l.total() + 1) * per_step));
}

namespace {

void require_rank(const MatrixFamily& family, const Shape& l) {
  if (l.rank() != family.rank())
    throw Error(ErrorCode::ShapeMismatch, "shape " + to_string(l) + " has rank " +
                                              std::to_string(l.rank()) + ", family has rank " +
                                              std::to_string(family.rank()));
}

void require_digits(const MatrixFamily& family, const Shape& l, const Budget& budget) {
  const auto digits = estimated_digits(family, l);
  if (digits > budget.max_exact_digits)
    throw Error(ErrorCode::BudgetExceeded, "exact arithmetic at shape " + to_string(l) +
                                               " needs ~" + std::to_string(digits) + " digits");
}

} // namespace

IntegerMatrix matrix_power_product(const MatrixFamily& family, const Shape& l, const Budget& budget) {
  family.require_valid();
  require_rank(family, l);
  require_digits(family, l, budget);
  IntegerMatrix result = IntegerMatrix::identity(family.size());
  for (std::size_t i = 0; i < family.rank(); ++i)
    if (l[i]) result = result * power(IntegerMatrix(family.matrix(i)), l[i]);
  return result;
}

BigCount word_count(const MatrixFamily& family, const Shape& l, const Budget& budget) {
  family.require_valid();
  require_rank(family, l);
  require_digits(family, l, budget);
  const std::size_t n = family.size();
  std::vector<BigCount> row(n, 1), next(n);
  for (std::size_t i = 0; i < family.rank(); ++i) {
    const auto& m = family.matrix(i);
    for (std::size_t step = 0; step < l[i]; ++step) {
      for (auto& x : next) x = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (m(a, b)) next[b] += row[a];
      row.swap(next);
    }
  }
  BigCount sum = 0;
  for (const auto& x : row) sum += x;
  return sum;
}

LogCount log_word_count(const MatrixFamily& family, const Shape& l, const Budget& budget) {
  family.require_valid();
  require_rank(family, l);
  if (estimated_digits(family, l) <= budget.max_exact_digits)
    return {log_big(word_count(family, l, budget)), true};
  const std::size_t n = family.size();
  std::vector<double> row(n, 1.0), next(n);
  double log_scale = 0.0;
  for (std::size_t i = 0; i < family.rank(); ++i) {
    const auto& m = family.matrix(i);
    for (std::size_t step = 0; step < l[i]; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (m(a, b)) next[b] += row[a];
      const double top = *std::max_element(next.begin(), next.end());
      for (auto& x : next) x /= top;
      log_scale += std::log(top);
      row.swap(next);
    }
  }
  double sum = 0.0;
  for (double x : row) sum += x;
  return {log_scale + std::log(sum), false};
}

// ---------------------------------------------------------------- spectral radius

namespace detail {

double log_spectral_radius_scaled(RealMatrix b, double log_scale) {
  if (b.rows() != b.cols()) throw Error(ErrorCode::NotSquare, "spectral radius of non-square matrix");
  const std::size_t n = b.rows();
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  for (double v : b.entries())
    if (v < 0 || std::isnan(v)) throw Error(ErrorCode::NegativeEntry, "matrix has a negative entry");
  if (n == 0) return neg_inf;

  auto normalize = [](RealMatrix& m) {
    double sum = 0.0;
    for (double v : m.entries()) sum += v;
    if (sum > 0)
      for (double& v : m.entries()) v /= sum;
    return sum;
  };

  // estimate_s = log ||m^(2^s)|| / 2^s with ||.|| the entry sum.
  const double c0 = normalize(b);
  if (c0 == 0.0) return neg_inf;
  double estimate = log_scale + std::log(c0);
  double weight = 1.0;
  RealMatrix sq(n, n);
  for (int s = 1; s <= 64; ++s) {
    std::fill(sq.entries().begin(), sq.entries().end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double bik = b(i, k);
        if (bik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) sq(i, j) += bik * b(k, j);
      }
    const double c = normalize(sq);
    if (c == 0.0) return neg_inf;
    std::swap(b, sq);
    // Squaring a normalized matrix: log ||m^(2N)|| = 2 log ||m^N|| + log c.
    weight *= 0.5;
    const double next = estimate + weight * std::log(c);
    const double r_prev = std::exp(estimate);
    const double r_next = std::exp(next);
    const double prev = estimate;
    estimate = next;
    if (std::abs(r_next - r_prev) < 1e-12 * std::max(1.0, r_next)) {
      // The error of estimate_s is log(C)/2^s to leading order; drop that term.
      return 2.0 * next - prev;
    }
  }
  return estimate;
}

std::pair<RealMatrix, double> to_scaled_real(const IntegerMatrix& m) {
  std::size_t bits = 0;
  for (const auto& e : m.entries()) {
    if (e.sign() < 0) throw Error(ErrorCode::NegativeEntry, "matrix has a negative entry");
    bits = std::max(bits, bit_length(e));
  }
  const std::int64_t shift = bits > 60 ? static_cast<std::int64_t>(bits) - 60 : 0;
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.entries().size(); ++i)
    out.entries()[i] = scaled_to_double(m.entries()[i], shift);
  return {std::move(out), static_cast<double>(shift) * std::log(2.0)};
}

} // namespace detail

double log_spectral_radius(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "spectral radius of non-square matrix");
  auto [scaled, log_scale] = detail::to_scaled_real(m);
  return detail::log_spectral_radius_scaled(std::move(scaled), log_scale);
}

double log_spectral_radius(const ZeroOneMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "spectral radius of non-square matrix");
  return log_spectral_radius(IntegerMatrix(m));
}

double log_spectral_radius(const RealMatrix& m) { return detail::log_spectral_radius_scaled(m, 0.0); }

double spectral_radius(const ZeroOneMatrix& m) { return std::exp(log_spectral_radius(m)); }
double spectral_radius(const IntegerMatrix& m) { return std::exp(log_spectral_radius(m)); }
double spectral_radius(const RealMatrix& m) { return std::exp(log_spectral_radius(m)); }

double entropy_exact(const MatrixFamily& family, const Shape& p, const Budget& budget) {
  family.require_valid();
  require_rank(family, p);
  if (p.is_zero()) throw Error(ErrorCode::ZeroDirection, "entropy needs a nonzero direction");
  return log_spectral_radius(matrix_power_product(family, p, budget));
}

} // namespace rankshift
