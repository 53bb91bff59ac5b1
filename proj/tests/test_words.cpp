#include "fixtures.hpp"

#include <doctest.h>

#include <set>

using namespace rankshift;

namespace {

std::string labels(const Word& w) {
  std::string s;
  for (Letter a : w.labels()) s += static_cast<char>('0' + a);
  return s;
}

} // namespace

TEST_CASE("enumerate_words examples") {
  CHECK(enumerate_words(fx::g2(), Shape{1}).size() == 4);

  const auto from1 = enumerate_words(fx::g1(), Shape{2}, Letter{1});
  REQUIRE(from1.size() == 2);
  CHECK(labels(from1[0]) == "100");
  CHECK(labels(from1[1]) == "101");

  const auto squares = enumerate_words(fx::g4(), Shape{1, 1});
  REQUIRE(squares.size() == 3);
  for (const auto& w : squares) CHECK(std::set<Letter>(w.labels().begin(), w.labels().end()).size() == 1);
}

TEST_CASE("enumeration order and uniqueness") {
  const auto f = fx::g3();
  const auto words = enumerate_words(f, Shape{2, 1});
  CHECK(words.size() == fx::brute_count(f, Shape{2, 1}));
  for (std::size_t i = 1; i < words.size(); ++i)
    CHECK(std::lexicographical_compare(words[i - 1].labels().begin(), words[i - 1].labels().end(),
                                       words[i].labels().begin(), words[i].labels().end()));
  for (const auto& w : words) CHECK(satisfies_constraints(f, w));
  CHECK(enumerate_words(f, Shape{2, 1}, std::nullopt, 5).size() == 5);
}

TEST_CASE("words agree with an independent brute-force count") {
  for (const auto& f : fx::all_families())
    for (const auto& l : shapes_below(Shape::uniform(f.rank(), f.rank() == 1 ? 6 : 2)))
      CHECK(BigCount(fx::brute_count(f, l)) == word_count(f, l));
}

TEST_CASE("restrictions") {
  const auto f = fx::g1();
  const Word w = fx::string_word(f, "1010");
  CHECK(labels(restrict_prefix(w, Shape{1})) == "10");
  CHECK(labels(restrict_tail(w, Shape{1})) == "010");
  CHECK(restrict_prefix(w, Shape{0}) == Word::letter(1, 1));
  CHECK(restrict_tail(w, Shape{0}) == w);
  CHECK(restrict_prefix(w, Shape{3}) == w);
  CHECK(restrict_tail(w, Shape{3}) == Word::letter(1, 0));
  CHECK_THROWS_AS(restrict_prefix(w, Shape{4}), Error);
  CHECK_THROWS_AS(make_word(f, Shape{1}, {1, 1}), Error);
}

TEST_CASE("compose fills the missing square corner") {
  const auto f = fx::g3();
  // (a,b) = (1,0) -> (0,0) in direction 1, then (0,0) -> (0,1) in direction 2.
  const Word u(Shape{1, 0}, {2, 0});
  const Word v(Shape{0, 1}, {0, 1});
  const Word w = compose(f, u, v);
  CHECK(w.shape() == Shape{1, 1});
  // Box order (0,0), (0,1), (1,0), (1,1); the filled corner is (1,1) at (0,1).
  CHECK(std::vector<Letter>(w.labels().begin(), w.labels().end()) == std::vector<Letter>{2, 3, 0, 1});
  CHECK(restrict_prefix(w, u.shape()) == u);
  CHECK(restrict_tail(w, u.shape()) == v);

  const auto g4 = fx::g4();
  const Word c1(Shape{2, 0}, {1, 1, 1});
  const Word c2(Shape{0, 1}, {1, 1});
  const Word c = compose(g4, c1, c2);
  CHECK(std::set<Letter>(c.labels().begin(), c.labels().end()) == std::set<Letter>{1});

  try {
    compose(f, u, Word(Shape{0, 1}, {2, 3}));
    FAIL("expected OriginMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OriginMismatch);
  }
}

TEST_CASE("factorization is a bijection") {
  for (const auto& f : {fx::g1(), fx::g3()}) {
    const Shape m = Shape::uniform(f.rank(), 1), n = f.rank() == 1 ? Shape{2} : Shape{0, 1};
    const auto words = enumerate_words(f, m + n);
    std::size_t pairs = 0;
    for (const auto& u : enumerate_words(f, m))
      for (const auto& v : enumerate_words(f, n))
        if (u.terminal() == v.origin()) ++pairs;
    CHECK(pairs == words.size());
    for (const auto& w : words) CHECK(compose(f, restrict_prefix(w, m), restrict_tail(w, m)) == w);
  }
}

TEST_CASE("composition is associative") {
  const auto f = fx::g3();
  const auto us = enumerate_words(f, Shape{1, 0});
  const auto vs = enumerate_words(f, Shape{0, 1});
  const auto ws = enumerate_words(f, Shape{1, 1});
  std::size_t checked = 0;
  for (const auto& u : us)
    for (const auto& v : vs)
      for (const auto& w : ws) {
        if (u.terminal() != v.origin() || v.terminal() != w.origin()) continue;
        CHECK(compose(f, compose(f, u, v), w) == compose(f, u, compose(f, v, w)));
        ++checked;
      }
  CHECK(checked > 0);
}

TEST_CASE("count oracle") {
  const auto r1 = count_oracle_check(fx::g1(), Shape{6});
  CHECK(r1.all_match);
  REQUIRE(r1.rows.size() == 7);
  const std::vector<int> fib{2, 3, 5, 8, 13, 21, 34};
  for (std::size_t i = 0; i < 7; ++i) CHECK(r1.rows[i].enumerated == fib[i]);

  const auto r4 = count_oracle_check(fx::g4(), Shape{2, 2});
  CHECK(r4.all_match);
  for (const auto& row : r4.rows) CHECK(row.formula == 3);

  const auto r3 = count_oracle_check(fx::g3(), Shape{2, 2});
  CHECK(r3.all_match);
  for (const auto& row : r3.rows)
    CHECK(row.enumerated == word_count(fx::g1(), Shape{row.shape[0]}) * word_count(fx::g1(), Shape{row.shape[1]}));
}

TEST_CASE("enumeration budget") {
  Budget tiny;
  tiny.max_enumeration_work = 1000;
  try {
    count_oracle_check(fx::g2(), Shape{12}, tiny);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}
