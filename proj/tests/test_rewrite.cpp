#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qiso/rewrite.hpp"

using namespace qiso;
using namespace qiso::rewrite;

namespace {

constexpr double kTol = 1e-12;

std::vector<Symbol> random_symbol_word(std::mt19937& rng, int d, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, d);
  std::uniform_int_distribution<int> star(0, 1);
  std::vector<Symbol> w(len(rng));
  for (Symbol& s : w) s = {letter(rng), star(rng) == 1};
  return w;
}

void enumerate_words(int d, int max_len, const std::function<void(const Word&)>& fn) {
  Word w;
  std::function<void(int)> rec = [&](int len) {
    if (len == 0) {
      fn(w);
      return;
    }
    for (int x = 1; x <= d; ++x) {
      w.push_back(x);
      rec(len - 1);
      w.pop_back();
    }
  };
  for (int len = 0; len <= max_len; ++len) rec(len);
}

}  // namespace

TEST_CASE("normal_order rule cases") {
  QMatrix Q = QMatrix::uniform(2, cplx(0.5, 0.2));

  Monomial id = normal_order({{1, true}, {1, false}}, Q);
  CHECK(id == Monomial{cplx(1.0), {}, {}});

  Monomial swap = normal_order({{1, true}, {2, false}}, Q);
  CHECK(swap.coeff == Q(1, 2));
  CHECK(swap.creators == Word{2});
  CHECK(swap.annihilators == Word{1});

  Monomial two_steps = normal_order({{2, true}, {1, false}, {2, false}}, Q);
  CHECK(std::abs(two_steps.coeff - Q(2, 1)) < kTol);
  CHECK(two_steps.creators == Word{1});
  CHECK(two_steps.annihilators == Word{});

  CHECK(normal_order({}, Q) == Monomial{cplx(1.0), {}, {}});
  CHECK_THROWS_AS(normal_order({{3, false}}, Q), std::domain_error);
}

TEST_CASE("canonical zero when a coefficient vanishes") {
  QMatrix Q = QMatrix::zero(2);
  Monomial m = normal_order({{1, true}, {2, false}}, Q);
  CHECK(m.coeff == cplx(0.0));
  CHECK(m.creators.empty());
  CHECK(m.annihilators.empty());
}

TEST_CASE("star_product examples") {
  QMatrix Q = QMatrix::uniform(2, cplx(0.5, 0.1));

  CHECK(star_product({1, 2}, {1, 2}, Q) == Monomial{cplx(1.0), {}, {}});

  Monomial m = star_product({1}, {2, 1}, Q);
  CHECK(std::abs(m.coeff - Q(1, 2)) < kTol);
  CHECK(m.creators == Word{2});
  CHECK(m.annihilators == Word{});

  m = star_product({1}, {2, 2}, Q);
  CHECK(std::abs(m.coeff - Q(1, 2) * Q(1, 2)) < kTol);
  CHECK(m.creators == Word{2, 2});
  CHECK(m.annihilators == Word{1});
}

TEST_CASE("termination measure strictly decreases") {
  QMatrix Q = QMatrix::random(3, 0.7, 3);
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    Trace trace;
    normal_order(random_symbol_word(rng, 3, 12), Q, Strategy::LeftmostFirst, &trace);
    for (size_t i = 1; i < trace.measures.size(); ++i)
      CHECK(trace.measures[i] < trace.measures[i - 1]);
  }
}

TEST_CASE("both reduction strategies agree") {
  QMatrix Q = QMatrix::random(3, 0.7, 13);
  std::mt19937 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    auto w = random_symbol_word(rng, 3, 12);
    Monomial l = normal_order(w, Q, Strategy::LeftmostFirst);
    Monomial r = normal_order(w, Q, Strategy::RightmostFirst);
    CHECK(l.creators == r.creators);
    CHECK(l.annihilators == r.annihilators);
    CHECK(std::abs(l.coeff - r.coeff) < kTol);
  }
}

TEST_CASE("involution compatibility") {
  QMatrix Q = QMatrix::random(2, 0.8, 17);
  std::mt19937 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    auto w = random_symbol_word(rng, 2, 10);
    Monomial m = normal_order(w, Q);
    Monomial madj = normal_order(adjoint_word(w), Q);
    CHECK(madj.creators == adjoint(m).creators);
    CHECK(madj.annihilators == adjoint(m).annihilators);
    CHECK(std::abs(madj.coeff - adjoint(m).coeff) < kTol);
  }
}

TEST_CASE("oracle agrees with the combinatorial scalars (small exhaustive)") {
  QMatrix Q = QMatrix::random(2, 0.8, 19);
  std::vector<Word> words;
  enumerate_words(2, 3, [&](const Word& w) { words.push_back(w); });
  for (const Word& a : words)
    for (const Word& b : words) {
      Monomial m = star_product(a, b, Q);
      CHECK(m.creators == word_minus(b, a));
      CHECK(m.annihilators == word_minus(a, b));
      CHECK(std::abs(m.coeff - q_scalar(a, b, Q)) < kTol);
    }
}
