#include "fixtures.hpp"

#include "rankshift/search.hpp"

#include <doctest.h>

#include <random>

using namespace rankshift;

TEST_CASE("gap examples") {
  CHECK(std::abs(gap(fx::g3())) <= 1e-9);
  CHECK(std::abs(gap(fx::g4())) <= 1e-12);
  CHECK(std::abs(gap(fx::g3(), Shape{2, 3})) <= 1e-9);
  try {
    gap(fx::g1());
    FAIL("expected RankOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankOne);
  }
}

TEST_CASE("exhaustive search over one letter") {
  const auto res = exhaustive_search(1);
  REQUIRE(res.records.size() == 1);
  CHECK(res.records[0].gap == 0.0);
  CHECK(res.summary.candidates == 4);
  CHECK(res.summary.valid == 1);
}

TEST_CASE("exhaustive search over two letters") {
  const auto res = exhaustive_search(2);
  CHECK(res.summary.candidates == 256);
  CHECK(res.summary.valid == res.records.size());
  bool tensor_present = false;
  const auto a = fx::golden();
  const auto i2 = ZeroOneMatrix::identity(2);
  for (const auto& r : res.records) {
    CHECK(r.gap >= -1e-9);
    // Records re-validate from their serialized matrices.
    CHECK(make_family(Alphabet::numbered(2), r.matrices).is_valid());
    CHECK(r.matrices != std::vector<ZeroOneMatrix>{ZeroOneMatrix::from_rows({{1, 1}, {0, 1}}),
                                                   ZeroOneMatrix::from_rows({{1, 0}, {1, 1}})});
    if (r.matrices == std::vector<ZeroOneMatrix>{a, i2}) tensor_present = std::abs(r.gap) <= 1e-9;
  }
  CHECK(tensor_present);
  for (std::size_t i = 1; i < res.records.size(); ++i)
    CHECK(res.records[i - 1].fingerprint <= res.records[i].fingerprint);

  SearchOptions threaded;
  threaded.threads = 4;
  CHECK(gap_records_csv(exhaustive_search(2, threaded).records) == gap_records_csv(res.records));

  SearchOptions canon;
  canon.canonicalize = true;
  const auto reduced = exhaustive_search(2, canon);
  CHECK(reduced.records.size() < res.records.size());
  for (const auto& r : reduced.records) CHECK(canonical_form(r.matrices) == r.matrices);
}

TEST_CASE("exhaustive search is budget guarded") {
  try {
    exhaustive_search(4);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("random search") {
  RandomSearchOptions opt;
  opt.alphabet_size = 4;
  opt.trials = 300;
  opt.seed = 42;
  opt.tensor_controls = 5;
  const auto a = random_search(opt);
  const auto b = random_search(opt);
  CHECK(gap_records_csv(a.records) == gap_records_csv(b.records));
  std::size_t controls = 0;
  for (const auto& r : a.records) {
    CHECK(r.gap >= -1e-9);
    if (r.provenance.starts_with("tensor-control")) {
      ++controls;
      CHECK(std::abs(r.gap) <= 1e-9);
    }
  }
  CHECK(controls == 5);

  RandomSearchOptions full = opt;
  full.density = 1.0;
  full.tensor_controls = 0;
  full.trials = 10;
  const auto dense = random_search(full);
  CHECK(dense.summary.valid == 0);
  CHECK(dense.records.empty());
}

TEST_CASE("gap csv layout") {
  const auto res = exhaustive_search(1);
  const auto csv = gap_records_csv(res.records);
  CHECK(csv.starts_with("fingerprint,alphabet_size,matrices,r1,r2,r_prod,gap\n"));
  CHECK(csv.find(",1,1|1,1,1,1,0\n") != std::string::npos);
}

TEST_CASE("canonical form is permutation invariant") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto f = fx::random_tensor(rng, 2, 2);
    const std::vector<std::size_t> perm{2, 0, 3, 1};
    std::vector<ZeroOneMatrix> relabeled;
    for (const auto& m : f.matrices()) {
      std::vector<std::vector<int>> rows(4, std::vector<int>(4));
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) rows[perm[a]][perm[b]] = m(a, b);
      relabeled.push_back(ZeroOneMatrix::from_rows(rows));
    }
    CHECK(canonical_form(relabeled) == canonical_form(f.matrices()));
    CHECK(std::abs(gap(make_family(Alphabet::numbered(4), relabeled)) - gap(f)) <= 1e-9);
  }
}
