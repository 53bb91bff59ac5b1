#include "rankshift/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace rankshift {

double gap(const MatrixFamily& family, const Shape& p, const Budget& budget) {
  family.require_valid();
  if (family.rank() < 2) throw Error(ErrorCode::RankOne, "the gap needs at least two directions");
  if (p.rank() != family.rank()) throw Error(ErrorCode::ShapeMismatch, "direction rank mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < family.rank(); ++i)
    sum += log_spectral_radius(power(IntegerMatrix(family.matrix(i)), p[i]));
  return sum - entropy_exact(family, p, budget);
}

double gap(const MatrixFamily& family) { return gap(family, Shape::uniform(family.rank(), 1)); }

std::string fingerprint(const std::vector<ZeroOneMatrix>& matrices) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  const std::string head = std::to_string(matrices.empty() ? 0 : matrices.front().rows()) + ";" +
                           std::to_string(matrices.size()) + ";";
  for (char c : head) mix(static_cast<unsigned char>(c));
  for (const auto& m : matrices) {
    for (int v : m.entries()) mix(static_cast<unsigned char>('0' + v));
    mix(';');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<ZeroOneMatrix> canonical_form(const std::vector<ZeroOneMatrix>& matrices) {
  if (matrices.empty()) return matrices;
  const std::size_t n = matrices.front().rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_key;
  std::vector<ZeroOneMatrix> best;
  do {
    std::vector<ZeroOneMatrix> relabeled;
    std::vector<int> key;
    for (const auto& m : matrices) {
      std::vector<int> e(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) e[perm[a] * n + perm[b]] = m(a, b);
      key.insert(key.end(), e.begin(), e.end());
      relabeled.emplace_back(n, n, std::move(e));
    }
    if (best.empty() || key < best_key) {
      best_key = std::move(key);
      best = std::move(relabeled);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

GapRecord make_record(const MatrixFamily& family, std::string provenance) {
  const auto start = std::chrono::steady_clock::now();
  GapRecord rec;
  rec.alphabet_size = family.size();
  rec.matrices = family.matrices();
  rec.fingerprint = fingerprint(rec.matrices);
  for (const auto& m : family.matrices()) rec.factor_radii.push_back(spectral_radius(m));
  const Shape ones = Shape::uniform(family.rank(), 1);
  rec.product_radius = spectral_radius(matrix_power_product(family, ones));
  rec.gap = gap(family, ones);
  rec.provenance = std::move(provenance);
  rec.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ZeroOneMatrix matrix_from_bits(std::size_t n, std::uint64_t bits) {
  std::vector<int> e(n * n);
  for (std::size_t i = 0; i < n * n; ++i) e[i] = static_cast<int>((bits >> i) & 1u);
  return ZeroOneMatrix(n, n, std::move(e));
}

bool has_no_zero_row(const ZeroOneMatrix& m) {
  for (std::size_t a = 0; a < m.rows(); ++a) {
    bool any = false;
    for (std::size_t b = 0; b < m.cols(); ++b) any = any || m(a, b) == 1;
    if (!any) return false;
  }
  return true;
}

void finish(GapSearchResult& result) {
  auto& recs = result.records;
  std::sort(recs.begin(), recs.end(), [](const GapRecord& a, const GapRecord& b) {
    return std::tie(a.fingerprint, a.provenance) < std::tie(b.fingerprint, b.provenance);
  });
  auto& s = result.summary;
  s.emitted = recs.size();
  s.histogram.assign(10, 0);
  if (recs.empty()) return;
  s.min_gap = s.max_gap = recs.front().gap;
  for (const auto& r : recs) {
    s.min_gap = std::min(s.min_gap, r.gap);
    s.max_gap = std::max(s.max_gap, r.gap);
  }
  for (const auto& r : recs) {
    if (std::abs(r.gap) <= 1e-9) {
      ++s.zero_gaps;
      continue;
    }
    if (r.gap < 0) continue;
    const double width = (s.max_gap - 1e-9) / 10.0;
    auto bin = static_cast<std::size_t>((r.gap - 1e-9) / width);
    ++s.histogram[std::min<std::size_t>(bin, 9)];
  }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ZeroOneMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<int> e(n * n);
  for (auto& v : e) v = uniform01(rng) < density ? 1 : 0;
  for (std::size_t a = 0; a < n; ++a) {
    bool any = false;
    for (std::size_t b = 0; b < n; ++b) any = any || e[a * n + b];
    if (!any) e[a * n + rng() % n] = 1;
  }
  return ZeroOneMatrix(n, n, std::move(e));
}

} // namespace

GapSearchResult exhaustive_search(std::size_t alphabet_size, const SearchOptions& options) {
  const std::size_t n = alphabet_size;
  const std::size_t r = options.rank;
  if (n == 0 || r < 2) throw Error(ErrorCode::InvalidArgument, "need |B| >= 1 and rank >= 2");
  if (n * n * r >= 63 || (std::uint64_t{1} << (n * n * r)) > options.max_candidates)
    throw Error(ErrorCode::BudgetExceeded, "exhaustive sweep over 2^" + std::to_string(n * n * r) +
                                               " tuples exceeds the candidate budget");

  // Single-matrix prefilter: zero matrices and zero rows never validate.
  std::vector<std::uint64_t> usable;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits)
    if (has_no_zero_row(matrix_from_bits(n, bits))) usable.push_back(bits);

  GapSearchResult result;
  result.summary.candidates = std::uint64_t{1} << (n * n * r);
  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::vector<GapRecord>> partial(threads);
  std::vector<std::uint64_t> valid_counts(threads, 0);
  auto worker = [&](unsigned t) {
    std::vector<std::size_t> pick(r, 0);
    for (std::size_t first = t; first < usable.size(); first += threads) {
      pick.assign(r, 0);
      pick[0] = first;
      while (true) {
        std::vector<ZeroOneMatrix> mats;
        std::string provenance = "exhaustive:";
        for (std::size_t i = 0; i < r; ++i) {
          mats.push_back(matrix_from_bits(n, usable[pick[i]]));
          provenance += (i ? "," : "") + std::to_string(usable[pick[i]]);
        }
        const bool keep = !options.canonicalize || canonical_form(mats) == mats;
        if (keep) {
          MatrixFamily family = make_family(Alphabet::numbered(n), mats);
          if (family.is_valid()) {
            ++valid_counts[t];
            partial[t].push_back(make_record(family, provenance));
          }
        }
        std::size_t i = r;
        while (i-- > 1) {
          if (++pick[i] < usable.size()) break;
          pick[i] = 0;
        }
        if (i == 0) break;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (unsigned t = 0; t < threads; ++t) {
    result.summary.valid += valid_counts[t];
    for (auto& rec : partial[t]) result.records.push_back(std::move(rec));
  }
  finish(result);
  return result;
}

GapSearchResult random_search(const RandomSearchOptions& random, const SearchOptions& options) {
  const std::size_t n = random.alphabet_size;
  if (n == 0 || options.rank < 2) throw Error(ErrorCode::InvalidArgument, "need |B| >= 1 and rank >= 2");
  if (!(random.density > 0.0 && random.density <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "density must lie in (0, 1]");
  std::mt19937_64 rng(random.seed);
  GapSearchResult result;
  std::set<std::string> seen;

  auto consider = [&](std::vector<ZeroOneMatrix> mats, std::string provenance) {
    ++result.summary.candidates;
    if (options.canonicalize) mats = canonical_form(mats);
    MatrixFamily family = make_family(Alphabet::numbered(n), std::move(mats));
    if (!family.is_valid()) return;
    ++result.summary.valid;
    if (options.canonicalize && !seen.insert(fingerprint(family.matrices())).second) return;
    result.records.push_back(make_record(family, std::move(provenance)));
  };

  for (std::uint64_t trial = 0; trial < random.trials; ++trial) {
    std::vector<ZeroOneMatrix> mats;
    for (std::size_t i = 0; i < options.rank; ++i) mats.push_back(random_matrix(rng, n, random.density));
    consider(std::move(mats), "random:" + std::to_string(random.seed) + ":" + std::to_string(trial));
  }

  if (random.tensor_controls > 0) {
    if (options.rank != 2) throw Error(ErrorCode::InvalidArgument, "tensor controls are rank 2 only");
    std::size_t d1 = 0;
    for (std::size_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        d1 = d;
        break;
      }
    if (d1 == 0) throw Error(ErrorCode::InvalidArgument, "tensor controls need a composite alphabet size");
    const std::size_t d2 = n / d1;
    for (std::uint64_t c = 0; c < random.tensor_controls; ++c) {
      const auto a1 = random_matrix(rng, d1, random.density);
      const auto a2 = random_matrix(rng, d2, random.density);
      consider({kron(a1, ZeroOneMatrix::identity(d2)), kron(ZeroOneMatrix::identity(d1), a2)},
               "tensor-control:" + std::to_string(random.seed) + ":" + std::to_string(c));
    }
  }
  finish(result);
  return result;
}

std::string gap_records_csv(const std::vector<GapRecord>& records) {
  std::size_t rank = records.empty() ? 2 : records.front().matrices.size();
  std::string out = "fingerprint,alphabet_size,matrices";
  for (std::size_t i = 1; i <= rank; ++i) out += ",r" + std::to_string(i);
  out += ",r_prod,gap\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const auto& rec : records) {
    out += rec.fingerprint + "," + std::to_string(rec.alphabet_size) + ",";
    for (std::size_t i = 0; i < rec.matrices.size(); ++i) {
      if (i) out += "|";
      for (int v : rec.matrices[i].entries()) out += static_cast<char>('0' + v);
    }
    for (double r : rec.factor_radii) out += "," + num(r);
    out += "," + num(rec.product_radius) + "," + num(rec.gap) + "\n";
  }
  return out;
}

} // namespace rankshift
