#pragma once

#include "rankshift/bigcount.hpp"
#include "rankshift/matrices.hpp"
#include "rankshift/shape.hpp"

#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace rankshift {

/// A labeling of the lattice box [0, m] by letters, stored row-major with
/// the first coordinate slowest. Edge constraints are a property of a word
/// relative to a family; see satisfies_constraints().
class Word {
public:
  Word() = default;
  /// Throws ShapeMismatch if labels.size() != box volume of shape.
  Word(Shape shape, std::vector<Letter> labels);
  /// The shape-0 word on one letter.
  static Word letter(std::size_t rank, Letter a);

  const Shape& shape() const { return shape_; }
  std::span<const Letter> labels() const { return labels_; }
  Letter at(std::span<const std::size_t> point) const;
  Letter origin() const { return labels_.front(); }
  Letter terminal() const { return labels_.back(); }

  bool operator==(const Word&) const = default;

private:
  Shape shape_;
  std::vector<Letter> labels_;
};

/// Total order used for indexing: by shape coordinates, then labels.
bool word_less(const Word& a, const Word& b);

bool satisfies_constraints(const MatrixFamily& family, const Word& w);
/// Word checked against the family; throws InvalidWord.
Word make_word(const MatrixFamily& family, Shape shape, std::vector<Letter> labels);

/// Lexicographic stream of all words of one shape (optionally with fixed
/// origin), by depth-first extension over box points in row-major order.
/// The family must outlive the stream.
class WordStream {
public:
  WordStream(const MatrixFamily& family, Shape shape, std::optional<Letter> origin = std::nullopt);

  std::optional<Word> next();

private:
  std::optional<Letter> first_candidate(std::size_t pos, Letter from) const;

  const MatrixFamily* family_;
  Shape shape_;
  std::optional<Letter> origin_;
  // For each box point: (direction, predecessor index) for every incoming edge.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds_;
  std::vector<Letter> current_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Word> enumerate_words(const MatrixFamily& family, const Shape& shape,
                                  std::optional<Letter> origin = std::nullopt,
                                  std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Labels on offset + [0, shape]; throws ShapeNotDominated if it leaves the box.
Word restrict_box(const Word& w, const Shape& offset, const Shape& shape);
/// w|_{k]}: labels on [0, k].
Word restrict_prefix(const Word& w, const Shape& k);
/// w|_{[k}: labels on k + [0, m - k], re-based at 0.
Word restrict_tail(const Word& w, const Shape& k);

/// The unique word with prefix u and tail v, completing the remaining points
/// of the box by unique square-filling. Failures mean the family is not
/// actually valid and are surfaced as NonUniqueFilling / NoFilling.
Word compose(const MatrixFamily& family, const Word& u, const Word& v);

struct CountOracleRow {
  Shape shape;
  BigCount enumerated;
  BigCount formula;
  bool match;
};

struct CountOracleReport {
  std::vector<CountOracleRow> rows;
  bool all_match = true;
};

/// For every l <= max_shape, compares the enumeration count against <e, M^l e>.
CountOracleReport count_oracle_check(const MatrixFamily& family, const Shape& max_shape,
                                     const Budget& budget = {});

/// Throws BudgetExceeded if enumerating `words` words of `shape` is over budget.
void require_enumeration_budget(const Budget& budget, const BigCount& words, const Shape& shape,
                                const char* what);

} // namespace rankshift
