#pragma once

#include "rankshift/matrices.hpp"
#include "rankshift/nclemma.hpp"
#include "rankshift/words.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace fx {

using namespace rankshift;

inline ZeroOneMatrix golden() { return ZeroOneMatrix::from_rows({{1, 1}, {1, 0}}); }
inline ZeroOneMatrix ones2() { return ZeroOneMatrix::from_rows({{1, 1}, {1, 1}}); }

inline MatrixFamily g1() { return make_family(Alphabet::numbered(2), {golden()}); }
inline MatrixFamily g2() { return make_family(Alphabet::numbered(2), {ones2()}); }
// Letter a*2+b stands for the pair (a, b).
inline MatrixFamily g3() {
  const auto i2 = ZeroOneMatrix::identity(2);
  return make_family(Alphabet::numbered(4), {kron(golden(), i2), kron(i2, golden())});
}
inline MatrixFamily g4() {
  const auto i3 = ZeroOneMatrix::identity(3);
  return make_family(Alphabet::numbered(3), {i3, i3});
}

inline std::vector<MatrixFamily> all_families() { return {g1(), g2(), g3(), g4()}; }

/// Fibonacci with F(0) = 0, F(1) = 1.
inline std::uint64_t fib(unsigned n) {
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    const auto t = a + b;
    a = b;
    b = t;
  }
  return a;
}

/// Binary strings of length len with no two adjacent 1s, by bitmask scan.
inline std::uint64_t golden_strings(unsigned len) {
  std::uint64_t n = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << len); ++s)
    if ((s & (s >> 1)) == 0) ++n;
  return n;
}

/// Largest root of x^2 - b x - c by bisection on [0, b + c + 1].
inline double quadratic_root_bisect(double b, double c) {
  double lo = 0.0, hi = b + c + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * mid - b * mid - c > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double phi() { return quadratic_root_bisect(1.0, 1.0); }

/// Counts labelings of the box [0, l] satisfying every edge constraint by
/// scanning all |B|^volume labelings. Tiny boxes only.
inline std::uint64_t brute_count(const MatrixFamily& f, const Shape& l) {
  const BoxIndexer box(l);
  const std::size_t vol = box.volume();
  const std::size_t b = f.size();
  std::vector<Letter> lab(vol, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < vol && ok; ++i) {
      auto pt = box.point(i);
      for (std::size_t j = 0; j < l.rank() && ok; ++j) {
        if (pt[j] == l[j]) continue;
        ++pt[j];
        ok = f.allowed(j, lab[i], lab[box.index(pt)]);
        --pt[j];
      }
    }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos < vol && ++lab[pos] == b) lab[pos++] = 0;
    if (pos == vol) break;
  }
  return count;
}

/// Dense check that T T^t T = T, entries counted with multiplicity.
inline bool dense_partial_isometry(const PatternMatrix& t) {
  const std::size_t d = t.dimension();
  std::vector<long> m(d * d, 0);
  for (const auto& c : t.cells()) ++m[c.row * d + c.col];
  std::vector<long> mtm(d * d, 0); // T^t T
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (m[k * d + i])
        for (std::size_t j = 0; j < d; ++j) mtm[i * d + j] += m[k * d + i] * m[k * d + j];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      long v = 0;
      for (std::size_t k = 0; k < d; ++k) v += m[i * d + k] * mtm[k * d + j];
      if (v != m[i * d + j]) return false;
    }
  return true;
}

/// Random 0-1 matrix with no zero rows.
inline ZeroOneMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (auto& row : rows) {
    bool any = false;
    for (auto& v : row) any = (v = bit(rng)) || any;
    if (!any) row[rng() % n] = 1;
  }
  return ZeroOneMatrix::from_rows(rows);
}

/// Random matrix whose first row and column are all ones: irreducible with a
/// self-loop, hence primitive.
inline ZeroOneMatrix random_primitive(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution bit(0.5);
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) rows[a][b] = (a == 0 || b == 0) ? 1 : bit(rng);
  return ZeroOneMatrix::from_rows(rows);
}

/// A_1 (x) I, I (x) A_2 with random factors: always a valid rank-2 family.
inline MatrixFamily random_tensor(std::mt19937_64& rng, std::size_t d1, std::size_t d2) {
  const auto a1 = random_matrix(rng, d1, 0.5);
  const auto a2 = random_matrix(rng, d2, 0.5);
  return make_family(Alphabet::numbered(d1 * d2),
                     {kron(a1, ZeroOneMatrix::identity(d2)), kron(ZeroOneMatrix::identity(d1), a2)});
}

inline Shape random_shape(std::mt19937_64& rng, std::size_t rank, std::size_t max) {
  std::vector<std::size_t> c(rank);
  for (auto& v : c) v = rng() % (max + 1);
  return Shape(c);
}

/// Word of shape len from a rank-1 label string like "1010".
inline Word string_word(const MatrixFamily& f, const std::string& s) {
  std::vector<Letter> labels;
  for (char c : s) labels.push_back(static_cast<Letter>(c - '0'));
  return make_word(f, Shape{s.size() - 1}, labels);
}

} // namespace fx
