// Randomized properties. Generators are seeded, so failures reproduce.
#include "fixtures.hpp"

#include "rankshift/dynamics.hpp"
#include "rankshift/pressure.hpp"
#include "rankshift/search.hpp"

#include <doctest.h>

#include <random>

using namespace rankshift;

namespace {

std::vector<MatrixFamily> sample_families(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto out = fx::all_families();
  for (int i = 0; i < 6; ++i) out.push_back(fx::random_tensor(rng, 2 + rng() % 2, 2 + rng() % 2));
  return out;
}

const std::vector<GapRecord>& valid_pairs(std::size_t size) {
  static const auto two = exhaustive_search(2).records;
  static const auto three = [] {
    SearchOptions o;
    o.threads = 4;
    return exhaustive_search(3, o).records;
  }();
  return size == 2 ? two : three;
}

} // namespace

TEST_CASE("random tensor families are valid") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) CHECK(fx::random_tensor(rng, 1 + rng() % 3, 1 + rng() % 3).is_valid());
}

TEST_CASE("word counts are monotone and submultiplicative") {
  std::mt19937_64 rng(2);
  for (const auto& f : sample_families(3))
    for (int t = 0; t < 30; ++t) {
      const Shape l = fx::random_shape(rng, f.rank(), 12), m = fx::random_shape(rng, f.rank(), 12);
      const BigCount wl = word_count(f, l), wlm = word_count(f, l + m);
      CHECK(wl <= wlm);
      CHECK(wlm <= BigCount(f.size()) * wl * word_count(f, m));
    }
}

TEST_CASE("factor order does not matter") {
  std::mt19937_64 rng(4);
  for (const auto& f : sample_families(5)) {
    if (f.rank() < 2) continue;
    const Shape l = fx::random_shape(rng, 2, 6);
    const IntegerMatrix forward = power(IntegerMatrix(f.matrix(0)), l[0]) * power(IntegerMatrix(f.matrix(1)), l[1]);
    const IntegerMatrix backward = power(IntegerMatrix(f.matrix(1)), l[1]) * power(IntegerMatrix(f.matrix(0)), l[0]);
    CHECK(forward == backward);
    CHECK(forward == matrix_power_product(f, l));
  }
}

TEST_CASE("enumeration matches counts on random and exhaustive families") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    const auto f = fx::random_tensor(rng, 2, 1 + rng() % 3);
    CHECK(count_oracle_check(f, Shape{2, 2}).all_match);
  }
  for (const auto& r : valid_pairs(2)) {
    const auto f = make_family(Alphabet::numbered(2), r.matrices);
    CHECK(count_oracle_check(f, Shape{2, 2}).all_match);
  }
}

TEST_CASE("compose is associative on random tensor families") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    const auto f = fx::random_tensor(rng, 2, 2);
    const auto us = enumerate_words(f, Shape{0, 1});
    const auto vs = enumerate_words(f, Shape{1, 0});
    const auto ws = enumerate_words(f, Shape{1, 1});
    for (int t = 0; t < 40; ++t) {
      const auto& u = us[rng() % us.size()];
      const auto& v = vs[rng() % vs.size()];
      const auto& w = ws[rng() % ws.size()];
      if (u.terminal() != v.origin() || v.terminal() != w.origin()) continue;
      CHECK(compose(f, compose(f, u, v), w) == compose(f, u, compose(f, v, w)));
    }
  }
}

TEST_CASE("entropy in rank one scales with the power") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto f = make_family(Alphabet::numbered(3), {fx::random_matrix(rng, 3, 0.4)});
    REQUIRE(f.is_valid());
    const double h = entropy_exact(f, Shape{1});
    for (std::size_t k = 2; k <= 4; ++k) CHECK(std::abs(entropy_exact(f, Shape{k}) - k * h) < 1e-9);
  }
}

TEST_CASE("diagonal entropy is subadditive on every valid pair up to three letters") {
  for (std::size_t size : {2, 3})
    for (const auto& r : valid_pairs(size)) {
      const auto f = make_family(Alphabet::numbered(size), r.matrices);
      CHECK(entropy_exact(f, Shape{1, 1}) <=
            entropy_exact(f, Shape{1, 0}) + entropy_exact(f, Shape{0, 1}) + 1e-9);
      CHECK(r.gap >= -1e-9);
    }
}

TEST_CASE("separated-set modes agree") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 4; ++i) {
    const auto f = fx::random_tensor(rng, 2, 2);
    for (const Shape& p : {Shape{1, 0}, Shape{1, 1}})
      CHECK(separated_count(f, p, 1, 1, SeparationMode::BruteForce) ==
            separated_count(f, p, 1, 1, SeparationMode::Formula));
  }
  for (const auto& r : valid_pairs(2)) {
    const auto f = make_family(Alphabet::numbered(2), r.matrices);
    CHECK(separated_count(f, Shape{0, 1}, 1, 2, SeparationMode::BruteForce) ==
          separated_count(f, Shape{0, 1}, 1, 2, SeparationMode::Formula));
  }
}

TEST_CASE("partition function translates exactly") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& f : sample_families(11)) {
    std::vector<double> g(f.size());
    for (auto& v : g) v = u(rng);
    const auto pot = Potential::vertex(g);
    const double c = u(rng);
    const Shape p = Shape::uniform(f.rank(), 1);
    for (std::size_t n : {0, 3, 9})
      CHECK(std::abs(partition_function_log(f, pot.plus(c), p, 1, n) - partition_function_log(f, pot, p, 1, n) -
                     (n + 1) * c) <= 1e-9 * (1 + n));
  }
}

TEST_CASE("vertex pressure matches its oracle on primitive tensor families") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const auto a1 = fx::random_primitive(rng, 2), a2 = fx::random_primitive(rng, 3);
    const auto f = make_family(Alphabet::numbered(6), {kron(a1, ZeroOneMatrix::identity(3)),
                                                       kron(ZeroOneMatrix::identity(2), a2)});
    std::vector<double> g(6);
    for (auto& v : g) v = u(rng);
    const Shape p{1, 1};
    const double est = pressure_estimate(f, Potential::vertex(g), p, 1, 40).estimate;
    CHECK(std::abs(est - pressure_oracle_vertex(f, g, p)) < 1e-5);
  }
}

TEST_CASE("partial-isometry patterns on every valid two-letter pair") {
  std::size_t reports = 0;
  for (const auto& r : valid_pairs(2)) {
    const auto f = make_family(Alphabet::numbered(2), r.matrices);
    for (const auto& rep : verify_lemma(f, Shape{1, 1}, Shape{1, 0})) {
      CHECK(rep.all_partial_isometries);
      ++reports;
    }
  }
  CHECK(reports > 0);
}

TEST_CASE("pattern checks agree with the dense oracle") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3; ++i) {
    const auto f = fx::random_tensor(rng, 2, 2);
    const auto gens = enumerate_words(f, Shape{1, 0});
    const Word& u = gens[rng() % gens.size()];
    const Word w = Word::letter(2, u.origin());
    const auto t = build_T(f, u, w, Shape{1, 1}, Shape{2, 1});
    for (const auto& [key, pattern] : t.patterns)
      CHECK(check_partial_isometry(pattern) == fx::dense_partial_isometry(pattern));
  }
}
