#pragma once

#include "rankshift/matrices.hpp"
#include "rankshift/pressure.hpp"
#include "rankshift/words.hpp"

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace rankshift {

/// One matrix unit e_{row, col} of a pattern, with the (ν, γ) pair that
/// produced it, as indices into the owning TPatterns lists.
struct PatternCell {
  std::size_t row;
  std::size_t col;
  std::size_t nu;
  std::size_t gamma;
};

/// Sparse 0-1 matrix with rows and columns indexed by Λ_m in enumeration
/// order. A cell listed twice is an entry of 2, i.e. not a 0-1 matrix.
class PatternMatrix {
public:
  PatternMatrix() = default;
  explicit PatternMatrix(std::shared_ptr<const std::vector<Word>> index) : index_(std::move(index)) {}

  std::size_t dimension() const { return index_ ? index_->size() : 0; }
  const std::vector<Word>& index() const { return *index_; }
  const std::vector<PatternCell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  void add(PatternCell cell) { cells_.push_back(cell); }

private:
  std::shared_ptr<const std::vector<Word>> index_;
  std::vector<PatternCell> cells_;
};

/// At most one cell in every row and every column.
bool check_partial_isometry(const PatternMatrix& pattern);

/// All patterns T_{κ,λ} for one generator pair (u, w).
struct TPatterns {
  Word u;
  Word w;
  Shape p;
  Shape m;
  Shape n; ///< sup(σ(u), σ(w))
  std::vector<Word> kappas;  ///< Λ_{n-σ(w)}
  std::vector<Word> lambdas; ///< Λ_{n-σ(u)}
  std::vector<Word> nus;     ///< Λ_p
  std::vector<Word> gammas;  ///< Λ_{m-p-σ(u)}
  std::shared_ptr<const std::vector<Word>> index; ///< Λ_m
  /// Keyed by (κ index, λ index); the full grid is present, empty patterns included.
  std::map<std::pair<std::size_t, std::size_t>, PatternMatrix> patterns;
};

/// T_{κ,λ} = Σ e_{νuγ, (νwγκ)|_{m]}} over ν in Λ_p, γ in Λ_{m-p-σ(u)} with
/// (νwγκ)|_{[m} = λ; compositions with mismatched endpoints contribute
/// nothing. Requires m >= p + n (ShapeTooSmall).
TPatterns build_T(const MatrixFamily& family, const Word& u, const Word& w, const Shape& p,
                  const Shape& m, const Budget& budget = {});

struct LemmaFailure {
  Word kappa;
  Word lambda;
  /// The two (ν, γ) pairs that hit the same row or column.
  std::vector<std::pair<Word, Word>> contributions;
  std::string reason;
};

struct TFamilyReport {
  Word u;
  Word w;
  Shape p;
  Shape m;
  Shape n;
  std::size_t pattern_count = 0;
  std::size_t nonempty_patterns = 0;
  std::size_t total_cells = 0;
  std::size_t dimension = 0;
  bool all_partial_isometries = true;
  std::vector<LemmaFailure> failures;
};

/// Runs build_T + check_partial_isometry for every ordered pair of words
/// with shapes <= max_gen_shape. m defaults to p + sup(σ(u), σ(w)); an
/// override must dominate that for every pair.
std::vector<TFamilyReport> verify_lemma(const MatrixFamily& family, const Shape& p,
                                        const Shape& max_gen_shape,
                                        const std::optional<Shape>& m_override = std::nullopt,
                                        const Budget& budget = {});

/// Index-level checks behind s_u^* f s_w = 0 (u != w) and
/// s_u^* f s_u <= max{f on Z_u}: for every pair of distinct words of shape m
/// no probe extension (shapes m and m + 1̄) restricts to both, and every
/// extension's f value is bounded by the cylinder maximum computed from the
/// window table.
bool check_orthogonality(const MatrixFamily& family, const Shape& m, const Potential& f,
                         const Budget& budget = {});

/// max{f(x) : x in Z_u}; exact for locally constant f.
double cylinder_max(const MatrixFamily& family, const Word& u, const Potential& f,
                    const Budget& budget = {});

} // namespace rankshift
