#include "fixtures.hpp"

#include "rankshift/dynamics.hpp"
#include "rankshift/pressure.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace rankshift;

namespace {

// Pressure of g(x(0)) on G1 with g = (0, c): log of the largest root of x^2 - x - e^c.
double g1_vertex_oracle(double c) { return std::log(fx::quadratic_root_bisect(1.0, std::exp(c))); }

Potential g3_lift(double c) {
  const std::vector<double> g{0.0, c, c, 2 * c}; // g(a) + g(b) for letter a*2+b
  return Potential::vertex(g);
}

} // namespace

TEST_CASE("potential evaluation") {
  const auto f = fx::g1();
  const std::vector<double> g{0.0, 1.0};
  const auto pot = Potential::vertex(g);
  CHECK(birkhoff_sum_on_cylinder(f, fx::string_word(f, "1010"), pot, Shape{1}, 2) == 2.0);
  CHECK(birkhoff_sum_on_cylinder(f, fx::string_word(f, "101"), Potential::constant(0.7), Shape{1}, 1) ==
        doctest::Approx(1.4));
  CHECK(birkhoff_sum_on_cylinder(f, fx::string_word(f, "10"), pot, Shape{1}, 0) == 1.0);

  Potential::Table t{{{1, 0}, 3.0}};
  const Potential edge(1, -1.0, t);
  CHECK(edge.evaluate(fx::string_word(f, "0101"), Shape{1}) == 3.0);
  CHECK(edge.evaluate(fx::string_word(f, "0101"), Shape{0}) == -1.0);
  try {
    birkhoff_sum_on_cylinder(f, fx::string_word(f, "101"), edge, Shape{1}, 2);
    FAIL("expected WindowTooWide");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooWide);
  }
}

TEST_CASE("partition function special cases") {
  const auto f = fx::g1();
  for (std::size_t n = 0; n <= 5; ++n) {
    const double count = std::log(double(fx::fib(n + 4)));
    for (auto method : {PartitionMethod::Enumerate, PartitionMethod::Transfer}) {
      CHECK(partition_function_log(f, Potential::constant(0.0), Shape{1}, 1, n, method) ==
            doctest::Approx(count).epsilon(1e-13));
      CHECK(partition_function_log(f, Potential::constant(0.3), Shape{1}, 1, n, method) ==
            doctest::Approx(count + (n + 1) * 0.3).epsilon(1e-13));
    }
  }
}

TEST_CASE("transfer and enumeration agree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& f : {fx::g1(), fx::g2(), fx::g3()}) {
    const std::size_t r = f.rank();
    Potential::Table table;
    for (const auto& w : enumerate_words(f, Shape::uniform(r, 1)))
      table[std::vector<Letter>(w.labels().begin(), w.labels().end())] = u(rng);
    const Potential pot(1, 0.25, table);
    const Shape p = Shape::uniform(r, 1);
    const std::size_t n_max = r == 1 ? 5 : 2;
    const auto a = partition_function_log_sequence(f, pot, p, 1, n_max, PartitionMethod::Enumerate);
    const auto b = partition_function_log_sequence(f, pot, p, 1, n_max, PartitionMethod::Transfer);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("hand expansion on G1 with g = (0, 1)") {
  // Λ_4 strings (k=1, n=3, p=1): Birkhoff sum reads letters 0..3.
  const auto f = fx::g1();
  double z = 0.0;
  for (std::uint32_t s = 0; s < 32; ++s) {
    if (s & (s >> 1)) continue;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += (s >> (4 - i)) & 1u;
    z += std::exp(sum);
  }
  const std::vector<double> g{0.0, 1.0};
  CHECK(partition_function_log(f, Potential::vertex(g), Shape{1}, 1, 3) == doctest::Approx(std::log(z)));
}

TEST_CASE("pressure oracle") {
  CHECK(pressure_oracle_vertex(fx::g1(), std::vector<double>{0, 0}, Shape{1}) ==
        doctest::Approx(entropy_exact(fx::g1(), Shape{1})));
  CHECK(pressure_oracle_vertex(fx::g1(), std::vector<double>{0.4, 0.4}, Shape{1}) ==
        doctest::Approx(0.4 + entropy_exact(fx::g1(), Shape{1})));
  CHECK(std::abs(pressure_oracle_vertex(fx::g1(), std::vector<double>{0, 0.5}, Shape{1}) - g1_vertex_oracle(0.5)) <
        1e-10);
}

TEST_CASE("pressure estimate") {
  const auto f = fx::g1();
  const auto zero = pressure_estimate(f, Potential::constant(0.0), Shape{1}, 1, 40);
  const auto bowen = bowen_entropy_estimate(f, Shape{1}, 1, 40);
  for (std::size_t i = 0; i < zero.sequence.size(); ++i)
    CHECK(std::abs(zero.sequence[i] - bowen.sequence[i]) <= 1e-12);

  const auto shifted = pressure_estimate(f, Potential::constant(0.5), Shape{1}, 1, 40);
  CHECK(std::abs(shifted.estimate - (0.5 + entropy_exact(f, Shape{1}))) < 1e-6);

  const std::vector<double> g{0.0, 0.5};
  CHECK(std::abs(pressure_estimate(f, Potential::vertex(g), Shape{1}, 1, 40).estimate - g1_vertex_oracle(0.5)) <
        1e-5);
  CHECK(std::abs(pressure_estimate(fx::g3(), g3_lift(0.5), Shape{1, 1}, 1, 40).estimate -
                 2 * g1_vertex_oracle(0.5)) < 1e-5);
  const std::vector<double> g2{0.3, -0.2};
  CHECK(std::abs(pressure_estimate(fx::g2(), Potential::vertex(g2), Shape{1}, 1, 40).estimate -
                 pressure_oracle_vertex(fx::g2(), g2, Shape{1})) < 1e-5);
}

TEST_CASE("monotone in the potential") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto f = fx::g1();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a{u(rng), u(rng)}, b = a;
    b[rng() % 2] += std::abs(u(rng));
    CHECK(partition_function_log(f, Potential::vertex(a), Shape{1}, 1, 6) <=
          partition_function_log(f, Potential::vertex(b), Shape{1}, 1, 6));
  }
}

TEST_CASE("log-sum-exp is order-insensitive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = u(rng);
  const double ref = log_sum_exp(xs);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(xs.begin(), xs.end(), rng);
    CHECK(std::abs(log_sum_exp(xs) - ref) <= 1e-12);
  }
  const std::vector<double> big{1000.0, 1000.0};
  CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)));
}
