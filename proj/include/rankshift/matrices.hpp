#pragma once

#include "rankshift/bigcount.hpp"
#include "rankshift/error.hpp"
#include "rankshift/shape.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rankshift {

using Letter = std::uint32_t;

/// Ordered, duplicate-free list of symbols. Serialization is order-sensitive.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);
  /// Letters "0", "1", ..., "n-1".
  static Alphabet numbered(std::size_t n);

  std::size_t size() const { return letters_.size(); }
  const std::string& operator[](Letter i) const { return letters_[i]; }
  const std::vector<std::string>& letters() const { return letters_; }
  std::optional<Letter> index_of(const std::string& symbol) const;

  bool operator==(const Alphabet&) const = default;

private:
  std::vector<std::string> letters_;
};

/// Square-or-not integer matrix as read from input. The {0,1} invariant is
/// established by validate_family, not by construction, so that malformed
/// input can be reported rather than rejected outright.
class ZeroOneMatrix {
public:
  ZeroOneMatrix() = default;
  ZeroOneMatrix(std::size_t rows, std::size_t cols, std::vector<int> entries);
  /// Throws ShapeMismatch on ragged input.
  static ZeroOneMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static ZeroOneMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const int> entries() const { return entries_; }
  bool is_binary() const;

  bool operator==(const ZeroOneMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> entries_;
};

/// Kronecker product; row index of a (x) b is i * b.rows() + k.
ZeroOneMatrix kron(const ZeroOneMatrix& a, const ZeroOneMatrix& b);

/// Exact integer matrix with BigCount entries.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  explicit IntegerMatrix(const ZeroOneMatrix& m);
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BigCount& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  BigCount& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  std::span<const BigCount> entries() const { return entries_; }

  /// <e, M e>.
  BigCount total() const;

  bool operator==(const IntegerMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigCount> entries_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix power(const IntegerMatrix& m, std::size_t exponent);

/// Dense double matrix, used for weighted transfer matrices.
class RealMatrix {
public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

/// A named witness value in a validation report.
struct WitnessField {
  std::string name;
  std::vector<long long> values;
  bool operator==(const WitnessField&) const = default;
};

/// Directions in witnesses are 1-based (M_1..M_r); letters and rows are 0-based.
struct Violation {
  ErrorCode code;
  std::vector<WitnessField> witness;
  std::string message;

  /// First value of a named field; throws InvalidArgument if absent.
  long long field(const std::string& name) const;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

enum class FamilyStatus { Unvalidated, Valid, Invalid };

/// A rank-r tuple (M_1, ..., M_r) over a common alphabet. Immutable; the
/// status reflects the last validation run on this exact value.
class MatrixFamily {
public:
  MatrixFamily(Alphabet alphabet, std::vector<ZeroOneMatrix> matrices);

  /// Copy carrying the validation outcome.
  MatrixFamily validated() const;

  std::size_t rank() const { return matrices_.size(); }
  std::size_t size() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const ZeroOneMatrix& matrix(std::size_t direction) const { return matrices_[direction]; }
  const std::vector<ZeroOneMatrix>& matrices() const { return matrices_; }

  FamilyStatus status() const { return status_; }
  bool is_valid() const { return status_ == FamilyStatus::Valid; }
  /// Null while Unvalidated.
  const ValidationReport* report() const { return report_.get(); }
  /// Throws InvalidFamily unless status is Valid.
  void require_valid() const;

  /// M_direction(a, b) == 1, direction zero-based.
  bool allowed(std::size_t direction, Letter a, Letter b) const {
    return matrices_[direction](a, b) == 1;
  }

  bool operator==(const MatrixFamily& other) const {
    return alphabet_ == other.alphabet_ && matrices_ == other.matrices_;
  }

private:
  Alphabet alphabet_;
  std::vector<ZeroOneMatrix> matrices_;
  FamilyStatus status_ = FamilyStatus::Unvalidated;
  std::shared_ptr<const ValidationReport> report_;
};

/// Builds and validates in one step.
MatrixFamily make_family(Alphabet alphabet, std::vector<ZeroOneMatrix> matrices);

/// Checks, in order: square and matching dimensions (stops on failure),
/// binary entries (stops on failure), nonzero matrices, no zero rows, then for
/// every i < j that M_iM_j = M_jM_i with all entries <= 1, and for r >= 3 (only
/// when the pairwise check is clean) that the two ways of completing every
/// unit cube from an i,j,k edge chain agree on all eight corners.
ValidationReport validate_family(const MatrixFamily& family);

/// M_1^{l_1} ... M_r^{l_r}, exact.
IntegerMatrix matrix_power_product(const MatrixFamily& family, const Shape& l,
                                   const Budget& budget = {});

/// w_l = <e, M^l e>, the number of words of shape l.
BigCount word_count(const MatrixFamily& family, const Shape& l, const Budget& budget = {});

struct LogCount {
  double value;
  bool exact; ///< false when the float fallback was used
};

/// log w_l; exact big-integer arithmetic when it fits the digit budget,
/// otherwise a renormalized floating-point vector iteration.
LogCount log_word_count(const MatrixFamily& family, const Shape& l, const Budget& budget = {});

/// Spectral radius by repeated squaring with log-domain renormalization.
double spectral_radius(const ZeroOneMatrix& m);
double spectral_radius(const IntegerMatrix& m);
double spectral_radius(const RealMatrix& m);

/// Natural log of the spectral radius; -inf for nilpotent input.
double log_spectral_radius(const ZeroOneMatrix& m);
double log_spectral_radius(const IntegerMatrix& m);
double log_spectral_radius(const RealMatrix& m);

/// log r(M^p), natural log.
double entropy_exact(const MatrixFamily& family, const Shape& p, const Budget& budget = {});

/// Decimal digit estimate for entries and counts at shape l.
std::uint64_t estimated_digits(const MatrixFamily& family, const Shape& l);

namespace detail {
/// Core of the squaring scheme: the matrix is `scaled * exp(log_scale)`.
double log_spectral_radius_scaled(RealMatrix scaled, double log_scale);
/// Exact integer matrix as scaled doubles: returns (matrix, log of the scale).
std::pair<RealMatrix, double> to_scaled_real(const IntegerMatrix& m);
} // namespace detail

} // namespace rankshift
