#pragma once

#include "rankshift/matrices.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rankshift {

/// Σ_i log r(M_i^{p_i}) - log r(M^p). Requires rank >= 2 (RankOne).
double gap(const MatrixFamily& family, const Shape& p, const Budget& budget = {});
/// gap with p = (1, ..., 1).
double gap(const MatrixFamily& family);

struct GapRecord {
  std::string fingerprint;
  std::size_t alphabet_size = 0;
  std::vector<ZeroOneMatrix> matrices;
  std::vector<double> factor_radii;
  double product_radius = 0.0;
  double gap = 0.0;
  double runtime_seconds = 0.0;
  std::string provenance;
};

struct GapSummary {
  std::uint64_t candidates = 0;
  std::uint64_t valid = 0;
  std::uint64_t emitted = 0;
  double min_gap = 0.0;
  double max_gap = 0.0;
  /// Records with |gap| <= 1e-9.
  std::uint64_t zero_gaps = 0;
  /// Counts of positive gaps in ten equal bins over (1e-9, max_gap].
  std::vector<std::uint64_t> histogram;
};

struct GapSearchResult {
  std::vector<GapRecord> records; ///< sorted by fingerprint, then provenance
  GapSummary summary;
};

struct SearchOptions {
  std::size_t rank = 2;
  /// Deduplicate up to simultaneous row/column permutation of the alphabet.
  bool canonicalize = false;
  unsigned threads = 1;
  /// Largest number of candidate tuples an exhaustive sweep may visit.
  std::uint64_t max_candidates = 50'000'000;
};

/// Hex FNV-1a of the row-major serialization of the tuple.
std::string fingerprint(const std::vector<ZeroOneMatrix>& matrices);

/// Lexicographically smallest relabeling of the tuple under alphabet permutations.
std::vector<ZeroOneMatrix> canonical_form(const std::vector<ZeroOneMatrix>& matrices);

/// Every ordered tuple of 0-1 matrices over an alphabet of the given size,
/// filtered by validate_family.
GapSearchResult exhaustive_search(std::size_t alphabet_size, const SearchOptions& options = {});

struct RandomSearchOptions {
  std::size_t alphabet_size = 2;
  double density = 0.5;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  /// Extra tensor pairs A_1 (x) I, I (x) A_2 injected as positive controls;
  /// only possible for composite alphabet sizes.
  std::uint64_t tensor_controls = 0;
};

/// Bernoulli(density) entries; an empty row gets one uniformly placed 1.
/// Deterministic given the seed.
GapSearchResult random_search(const RandomSearchOptions& random, const SearchOptions& options = {});

/// CSV: fingerprint,|B|,matrices,r1..rr,r_prod,gap. Floats at 12 significant digits.
std::string gap_records_csv(const std::vector<GapRecord>& records);

} // namespace rankshift
