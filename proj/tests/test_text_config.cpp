#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qiso/config.hpp"
#include "qiso/text.hpp"

using namespace qiso;

TEST_CASE("word grammar") {
  CHECK(text::parse_word("1,2") == Word{1, 2});
  CHECK(text::parse_word("1 2") == Word{1, 2});
  CHECK(text::parse_word("  12 , 3") == Word{12, 3});
  CHECK(text::parse_word("e") == Word{});
  CHECK(text::format_word({1, 2}) == "1,2");
  CHECK(text::format_word({}) == "e");
  CHECK_THROWS_AS(text::parse_word("1 x"), std::invalid_argument);
  CHECK_THROWS_AS(text::parse_word("0"), std::invalid_argument);
}

TEST_CASE("tail grammar") {
  Tail t = text::parse_tail("1;2");
  CHECK(t.preperiod() == Word{1});
  CHECK(t.period() == Word{2});
  CHECK(text::parse_tail(";1,2") == Tail({}, {1, 2}));
  CHECK(text::format_tail(Tail({1}, {2})) == "1;2");
  CHECK(text::format_tail(Tail({}, {1, 2})) == ";1,2");
  CHECK_THROWS_AS(text::parse_tail("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(text::parse_tail("1;"), std::invalid_argument);
  // Round trip through the canonical form.
  CHECK(text::parse_tail(text::format_tail(Tail({2, 2}, {2}))) == Tail({}, {2}));
}

TEST_CASE("star word grammar reports columns") {
  auto w = text::parse_star_word("1* 2 1 2*", 2);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == rewrite::Symbol{1, true});
  CHECK(w[1] == rewrite::Symbol{2, false});
  CHECK(w[3] == rewrite::Symbol{2, true});

  try {
    text::parse_star_word("1* abc", 2);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("column 4") != std::string::npos);
  }
  try {
    text::parse_star_word("1 3*", 2);
    FAIL("expected a range error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("column 3") != std::string::npos);
  }
}

TEST_CASE("monomial formatting") {
  QMatrix Q = QMatrix::uniform(2, 0.5);
  auto reduce = [&](const char* s) {
    return text::format_monomial(rewrite::normal_order(text::parse_star_word(s, 2), Q));
  };
  CHECK(reduce("1* 1") == "1 * I");
  CHECK(reduce("1* 2") == "0.5 * s_2 s_1*");
  CHECK(reduce("2* 1 2") == "0.5 * s_1");
  CHECK(reduce("2*") == "1 * s_2*");

  QMatrix Qc = QMatrix::uniform(2, cplx(0.5, 0.25));
  CHECK(text::format_monomial(rewrite::normal_order(text::parse_star_word("1* 2", 2), Qc)) ==
        "(0.5+0.25i) * s_2 s_1*");
}

TEST_CASE("config parsing, validation and round trip") {
  nlohmann::json j = {
      {"d", 2},
      {"q_entries", {{0.0, {0.5, 0.25}}, {{0.5, -0.25}, 0.0}}},
      {"mode", "fock-check"},
      {"fock_depth", 3},
      {"tail", {{"ref", "1;2"}, {"L", 3}, {"M", 2}}},
      {"tolerances", {{"exact", 1e-13}, {"metric", 1e-9}, {"inverted", 1e-7}}},
      {"out", "r.json"},
  };
  RunConfig cfg = config_from_json(j);
  CHECK(cfg.d == 2);
  CHECK(cfg.mode == "fock-check");
  CHECK(cfg.tail.ref == "1;2");
  CHECK(cfg.tol.metric == 1e-9);
  QMatrix Q = make_q(cfg);
  CHECK(Q(1, 2) == cplx(0.5, 0.25));

  // Semantic round trip: serialize, parse, serialize again.
  auto once = config_to_json(cfg);
  auto twice = config_to_json(config_from_json(once));
  CHECK(once.dump() == twice.dump());
}

TEST_CASE("config rejections carry diagnostics") {
  nlohmann::json bad = {{"d", 2}, {"q_entries", {{0.0, {0.5, 0.25}}, {{0.5, 0.25}, 0.0}}}};
  try {
    config_from_json(bad);
    FAIL("expected rejection on load");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("q(1,2)") != std::string::npos);
  }

  nlohmann::json big = {{"d", 2}, {"q_entries", {{0.0, 1.5}, {1.5, 0.0}}}};
  CHECK_THROWS_AS(config_from_json(big), std::invalid_argument);

  CHECK_THROWS_AS(config_from_json({{"d", 2}, {"mode", "bogus"}}), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json({{"d", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(
      config_from_json({{"d", 2},
                        {"q_entries", {{0.0, 0.5}, {0.5, 0.0}}},
                        {"random_q", {{"max_modulus", 0.5}, {"seed", 1}}}}),
      std::invalid_argument);
}

TEST_CASE("random q from config is deterministic in the seed") {
  nlohmann::json j = {{"d", 3}, {"random_q", {{"max_modulus", 0.7}, {"seed", 9}}}};
  QMatrix a = make_q(config_from_json(j));
  QMatrix b = make_q(config_from_json(j));
  CHECK(a.entries() == b.entries());
}
