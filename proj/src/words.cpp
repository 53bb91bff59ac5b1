#include "rankshift/words.hpp"

#include <algorithm>

namespace rankshift {

namespace {
constexpr Letter kUnset = std::numeric_limits<Letter>::max();
}

Word::Word(Shape shape, std::vector<Letter> labels) : shape_(std::move(shape)), labels_(std::move(labels)) {
  if (labels_.size() != shape_.box_volume())
    throw Error(ErrorCode::ShapeMismatch, "word of shape " + to_string(shape_) + " needs " +
                                              std::to_string(shape_.box_volume()) + " labels, got " +
                                              std::to_string(labels_.size()));
}

Word Word::letter(std::size_t rank, Letter a) { return Word(Shape::zero(rank), {a}); }

Letter Word::at(std::span<const std::size_t> point) const {
  return labels_[BoxIndexer(shape_).index(point)];
}

bool word_less(const Word& a, const Word& b) {
  const auto sa = a.shape().coords();
  const auto sb = b.shape().coords();
  if (!std::equal(sa.begin(), sa.end(), sb.begin(), sb.end()))
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  const auto la = a.labels();
  const auto lb = b.labels();
  return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
}

bool satisfies_constraints(const MatrixFamily& family, const Word& w) {
  if (w.shape().rank() != family.rank()) return false;
  const BoxIndexer box(w.shape());
  const auto labels = w.labels();
  for (Letter a : labels)
    if (a >= family.size()) return false;
  for (std::size_t idx = 0; idx < box.volume(); ++idx) {
    const auto p = box.point(idx);
    for (std::size_t j = 0; j < family.rank(); ++j)
      if (p[j] < w.shape()[j] && !family.allowed(j, labels[idx], labels[idx + box.stride(j)]))
        return false;
  }
  return true;
}

Word make_word(const MatrixFamily& family, Shape shape, std::vector<Letter> labels) {
  Word w(std::move(shape), std::move(labels));
  if (!satisfies_constraints(family, w))
    throw Error(ErrorCode::InvalidWord, "labels violate an edge constraint of the family");
  return w;
}

// ---------------------------------------------------------------- enumeration

WordStream::WordStream(const MatrixFamily& family, Shape shape, std::optional<Letter> origin)
    : family_(&family), shape_(std::move(shape)), origin_(origin) {
  family.require_valid();
  if (shape_.rank() != family.rank())
    throw Error(ErrorCode::ShapeMismatch, "shape rank does not match family rank");
  if (origin_ && *origin_ >= family.size())
    throw Error(ErrorCode::InvalidArgument, "origin letter out of range");
  const BoxIndexer box(shape_);
  preds_.resize(box.volume());
  for (std::size_t idx = 0; idx < box.volume(); ++idx) {
    const auto p = box.point(idx);
    for (std::size_t j = 0; j < shape_.rank(); ++j)
      if (p[j] > 0) preds_[idx].emplace_back(j, idx - box.stride(j));
  }
  current_.assign(box.volume(), 0);
}

std::optional<Letter> WordStream::first_candidate(std::size_t pos, Letter from) const {
  const auto n = static_cast<Letter>(family_->size());
  for (Letter c = from; c < n; ++c) {
    if (pos == 0 && origin_ && c != *origin_) continue;
    bool ok = true;
    for (const auto& [dir, pred] : preds_[pos])
      if (!family_->allowed(dir, current_[pred], c)) {
        ok = false;
        break;
      }
    if (ok) return c;
  }
  return std::nullopt;
}

std::optional<Word> WordStream::next() {
  if (done_) return std::nullopt;
  const std::size_t last = current_.size() - 1;
  std::size_t pos = 0;
  Letter from = 0;
  if (started_) {
    pos = last;
    from = current_[last] + 1;
  }
  started_ = true;
  while (true) {
    if (auto c = first_candidate(pos, from)) {
      current_[pos] = *c;
      if (pos == last) return Word(shape_, current_);
      ++pos;
      from = 0;
    } else {
      if (pos == 0) {
        done_ = true;
        return std::nullopt;
      }
      --pos;
      from = current_[pos] + 1;
    }
  }
}

std::vector<Word> enumerate_words(const MatrixFamily& family, const Shape& shape,
                                  std::optional<Letter> origin, std::size_t limit) {
  WordStream stream(family, shape, origin);
  std::vector<Word> out;
  while (out.size() < limit) {
    auto w = stream.next();
    if (!w) break;
    out.push_back(std::move(*w));
  }
  return out;
}

void require_enumeration_budget(const Budget& budget, const BigCount& words, const Shape& shape,
                                const char* what) {
  const BigCount work = words * BigCount(shape.box_volume());
  if (work > BigCount(budget.max_enumeration_work))
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + ": enumerating shape " +
                                               to_string(shape) + " needs ~" + to_decimal(work) +
                                               " steps, budget " +
                                               std::to_string(budget.max_enumeration_work));
}

// ---------------------------------------------------------------- restriction

Word restrict_box(const Word& w, const Shape& offset, const Shape& shape) {
  if (!leq(offset + shape, w.shape()))
    throw Error(ErrorCode::ShapeNotDominated, "box " + to_string(offset) + "+[0," + to_string(shape) +
                                                  "] leaves word of shape " + to_string(w.shape()));
  const BoxIndexer src(w.shape());
  const BoxIndexer dst(shape);
  std::vector<Letter> labels(dst.volume());
  std::vector<std::size_t> q(shape.rank());
  for (std::size_t idx = 0; idx < dst.volume(); ++idx) {
    const auto p = dst.point(idx);
    for (std::size_t j = 0; j < p.size(); ++j) q[j] = p[j] + offset[j];
    labels[idx] = w.labels()[src.index(q)];
  }
  return Word(shape, std::move(labels));
}

Word restrict_prefix(const Word& w, const Shape& k) { return restrict_box(w, Shape::zero(k.rank()), k); }

Word restrict_tail(const Word& w, const Shape& k) { return restrict_box(w, k, w.shape() - k); }

// ---------------------------------------------------------------- composition

Word compose(const MatrixFamily& family, const Word& u, const Word& v) {
  family.require_valid();
  if (u.terminal() != v.origin())
    throw Error(ErrorCode::OriginMismatch, "t(u) = " + std::to_string(u.terminal()) +
                                               " but o(v) = " + std::to_string(v.origin()));
  const std::size_t r = family.rank();
  const Shape total = u.shape() + v.shape();
  const BoxIndexer box(total);
  std::vector<Letter> labels(box.volume(), kUnset);

  const BoxIndexer ubox(u.shape());
  for (std::size_t idx = 0; idx < ubox.volume(); ++idx)
    labels[box.index(ubox.point(idx))] = u.labels()[idx];
  const BoxIndexer vbox(v.shape());
  std::vector<std::size_t> q(r);
  for (std::size_t idx = 0; idx < vbox.volume(); ++idx) {
    const auto p = vbox.point(idx);
    for (std::size_t j = 0; j < r; ++j) q[j] = p[j] + u.shape()[j];
    labels[box.index(q)] = v.labels()[idx];
  }

  std::vector<std::size_t> unknown;
  for (std::size_t idx = 0; idx < box.volume(); ++idx)
    if (labels[idx] == kUnset) unknown.push_back(idx);

  const auto n = static_cast<Letter>(family.size());
  while (!unknown.empty()) {
    std::vector<std::pair<std::size_t, Letter>> filled;
    std::vector<std::size_t> still;
    for (std::size_t x : unknown) {
      const auto p = box.point(x);
      std::optional<Letter> value;
      // x = y + e_j is the missing corner of the square y, y+e_i, y+e_i+e_j = x+e_i.
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          if (i == j || p[j] == 0 || p[i] == total[i]) continue;
          const std::size_t y = x - box.stride(j);
          const std::size_t c = y + box.stride(i);
          const std::size_t far = x + box.stride(i);
          if (labels[y] == kUnset || labels[c] == kUnset || labels[far] == kUnset) continue;
          std::optional<Letter> d;
          for (Letter cand = 0; cand < n; ++cand)
            if (family.allowed(j, labels[y], cand) && family.allowed(i, cand, labels[far])) {
              if (d) throw Error(ErrorCode::NonUniqueFilling, "square completion is not unique");
              d = cand;
            }
          if (!d) throw Error(ErrorCode::NoFilling, "square completion has no candidate");
          if (value && *value != *d)
            throw Error(ErrorCode::NoFilling, "square completions disagree on a corner");
          value = d;
        }
      if (value)
        filled.emplace_back(x, *value);
      else
        still.push_back(x);
    }
    if (filled.empty()) throw Error(ErrorCode::NoFilling, "box cannot be completed by square-filling");
    for (const auto& [x, a] : filled) labels[x] = a;
    unknown.swap(still);
  }

  Word w(total, std::move(labels));
  if (!satisfies_constraints(family, w))
    throw Error(ErrorCode::NoFilling, "completed box violates an edge constraint");
  return w;
}

// ---------------------------------------------------------------- oracle

CountOracleReport count_oracle_check(const MatrixFamily& family, const Shape& max_shape,
                                     const Budget& budget) {
  family.require_valid();
  const auto shapes = shapes_below(max_shape);
  std::vector<BigCount> formula;
  BigCount work = 0;
  for (const auto& l : shapes) {
    formula.push_back(word_count(family, l, budget));
    work += formula.back() * BigCount(l.box_volume());
  }
  if (work > BigCount(budget.max_enumeration_work))
    throw Error(ErrorCode::BudgetExceeded, "count oracle up to " + to_string(max_shape) + " needs ~" +
                                               to_decimal(work) + " steps, budget " +
                                               std::to_string(budget.max_enumeration_work));
  CountOracleReport report;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    WordStream stream(family, shapes[i]);
    BigCount count = 0;
    while (stream.next()) ++count;
    const bool match = count == formula[i];
    report.all_match = report.all_match && match;
    report.rows.push_back({shapes[i], count, formula[i], match});
  }
  return report;
}

} // namespace rankshift
