#include "rankshift/nclemma.hpp"

#include <algorithm>
#include <limits>

namespace rankshift {

bool check_partial_isometry(const PatternMatrix& pattern) {
  std::map<std::size_t, int> rows, cols;
  for (const auto& c : pattern.cells()) {
    if (++rows[c.row] > 1) return false;
    if (++cols[c.col] > 1) return false;
  }
  return true;
}

namespace {

std::vector<Word> sorted_words(const MatrixFamily& family, const Shape& shape) {
  auto words = enumerate_words(family, shape);
  std::sort(words.begin(), words.end(), word_less);
  return words;
}

std::size_t find_index(const std::vector<Word>& sorted, const Word& w) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), w, word_less);
  if (it == sorted.end() || !(*it == w))
    throw Error(ErrorCode::InvalidWord, "composed word is missing from the index");
  return static_cast<std::size_t>(it - sorted.begin());
}

} // namespace

TPatterns build_T(const MatrixFamily& family, const Word& u, const Word& w, const Shape& p,
                  const Shape& m, const Budget& budget) {
  family.require_valid();
  TPatterns t;
  t.u = u;
  t.w = w;
  t.p = p;
  t.m = m;
  t.n = sup(u.shape(), w.shape());
  if (!leq(p + t.n, m))
    throw Error(ErrorCode::ShapeTooSmall, "need m >= p + n = " + to_string(p + t.n) + ", got " + to_string(m));

  const Shape gamma_shape = m - p - u.shape();
  const BigCount work = word_count(family, p, budget) * word_count(family, gamma_shape, budget) *
                        word_count(family, t.n - w.shape(), budget);
  require_enumeration_budget(budget, work, m + t.n, "build_T");

  t.kappas = sorted_words(family, t.n - w.shape());
  t.lambdas = sorted_words(family, t.n - u.shape());
  t.nus = sorted_words(family, p);
  t.gammas = sorted_words(family, gamma_shape);
  t.index = std::make_shared<const std::vector<Word>>(sorted_words(family, m));
  for (std::size_t a = 0; a < t.kappas.size(); ++a)
    for (std::size_t b = 0; b < t.lambdas.size(); ++b) t.patterns.emplace(std::pair{a, b}, PatternMatrix(t.index));

  for (std::size_t ni = 0; ni < t.nus.size(); ++ni) {
    const Word& nu = t.nus[ni];
    if (nu.terminal() != u.origin() || nu.terminal() != w.origin()) continue;
    const Word nu_u = compose(family, nu, u);
    const Word nu_w = compose(family, nu, w);
    for (std::size_t gi = 0; gi < t.gammas.size(); ++gi) {
      const Word& gamma = t.gammas[gi];
      if (gamma.origin() != u.terminal() || gamma.origin() != w.terminal()) continue;
      const std::size_t row = find_index(*t.index, compose(family, nu_u, gamma));
      const Word nu_w_gamma = compose(family, nu_w, gamma);
      for (std::size_t ki = 0; ki < t.kappas.size(); ++ki) {
        const Word& kappa = t.kappas[ki];
        if (kappa.origin() != gamma.terminal()) continue;
        const Word full = compose(family, nu_w_gamma, kappa);
        const std::size_t col = find_index(*t.index, restrict_prefix(full, m));
        const std::size_t li = find_index(t.lambdas, restrict_tail(full, m));
        t.patterns.at({ki, li}).add(PatternCell{row, col, ni, gi});
      }
    }
  }
  return t;
}

std::vector<TFamilyReport> verify_lemma(const MatrixFamily& family, const Shape& p,
                                        const Shape& max_gen_shape,
                                        const std::optional<Shape>& m_override, const Budget& budget) {
  family.require_valid();
  if (p.rank() != family.rank() || max_gen_shape.rank() != family.rank())
    throw Error(ErrorCode::ShapeMismatch, "shape rank does not match family rank");
  std::vector<Word> generators;
  for (const auto& s : shapes_below(max_gen_shape)) {
    auto words = enumerate_words(family, s);
    generators.insert(generators.end(), words.begin(), words.end());
  }
  const BigCount pairs = BigCount(generators.size()) * BigCount(generators.size());
  if (pairs > BigCount(budget.max_enumeration_work))
    throw Error(ErrorCode::BudgetExceeded, to_decimal(pairs) + " generator pairs");

  std::vector<TFamilyReport> reports;
  for (const auto& u : generators)
    for (const auto& w : generators) {
      const Shape n = sup(u.shape(), w.shape());
      Shape m = p + n;
      if (m_override) {
        if (!leq(m, *m_override))
          throw Error(ErrorCode::ShapeTooSmall, "m override " + to_string(*m_override) +
                                                    " is below p + n = " + to_string(m));
        m = *m_override;
      }
      const TPatterns t = build_T(family, u, w, p, m, budget);
      TFamilyReport r{u, w, p, m, n};
      r.pattern_count = t.patterns.size();
      r.dimension = t.index->size();
      for (const auto& [key, pattern] : t.patterns) {
        r.total_cells += pattern.cells().size();
        if (!pattern.empty()) ++r.nonempty_patterns;
        if (check_partial_isometry(pattern)) continue;
        r.all_partial_isometries = false;
        // Locate the clash for the witness.
        std::map<std::size_t, const PatternCell*> by_row, by_col;
        for (const auto& c : pattern.cells()) {
          const PatternCell* clash = nullptr;
          std::string reason;
          if (auto [it, fresh] = by_row.emplace(c.row, &c); !fresh) {
            clash = it->second;
            reason = "two cells in one row";
          } else if (auto [jt, fresh2] = by_col.emplace(c.col, &c); !fresh2) {
            clash = jt->second;
            reason = "two cells in one column";
          }
          if (clash) {
            r.failures.push_back(LemmaFailure{
                t.kappas[key.first], t.lambdas[key.second],
                {{t.nus[clash->nu], t.gammas[clash->gamma]}, {t.nus[c.nu], t.gammas[c.gamma]}},
                reason});
            break;
          }
        }
      }
      reports.push_back(std::move(r));
    }
  return reports;
}

double cylinder_max(const MatrixFamily& family, const Word& u, const Potential& f, const Budget& budget) {
  const Shape window = Shape::uniform(family.rank(), f.window());
  if (leq(window, u.shape())) return f.evaluate(u, Shape::zero(family.rank()));
  const Shape ext = sup(window, u.shape());
  require_enumeration_budget(budget, word_count(family, ext, budget), ext, "cylinder_max");
  double best = -std::numeric_limits<double>::infinity();
  WordStream stream(family, ext, u.origin());
  while (auto x = stream.next())
    if (restrict_prefix(*x, u.shape()) == u) best = std::max(best, f.evaluate(*x, Shape::zero(family.rank())));
  return best;
}

bool check_orthogonality(const MatrixFamily& family, const Shape& m, const Potential& f,
                         const Budget& budget) {
  family.require_valid();
  if (m.rank() != family.rank()) throw Error(ErrorCode::ShapeMismatch, "shape rank mismatch");
  const auto words = sorted_words(family, m);
  std::vector<double> bound;
  for (const auto& u : words) bound.push_back(cylinder_max(family, u, f, budget));

  const Shape base = sup(m, Shape::uniform(family.rank(), f.window()));
  for (const Shape& probe : {base, base + Shape::uniform(family.rank(), 1)}) {
    require_enumeration_budget(budget, word_count(family, probe, budget) * BigCount(words.size()), probe,
                               "check_orthogonality");
    WordStream stream(family, probe);
    while (auto x = stream.next()) {
      const Word prefix = restrict_prefix(*x, m);
      std::size_t owners = 0;
      std::size_t owner = 0;
      for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i] == prefix) {
          ++owners;
          owner = i;
        }
      if (owners != 1) return false;
      if (f.evaluate(*x, Shape::zero(family.rank())) > bound[owner]) return false;
    }
  }
  return true;
}

} // namespace rankshift
