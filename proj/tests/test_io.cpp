#include <catch_amalgamated.hpp>

#include "test_support.hpp"
#include "wff/io.hpp"

using namespace wff;
using namespace wff::testing;
using wff::io::json;

namespace {

json example_doc() {
  return json::parse(R"({"version": "v1", "R": 4, "B": [0, 2], "L": [0, 3, 15],
                         "alpha": [[1, 0], [0.70710678118654757, 0], [0.70710678118654757, 0]]})");
}

}  // namespace

TEST_CASE("parse_config accepts a v1 document") {
  auto doc = example_doc();
  const auto cfg = io::parse_config(doc);
  CHECK(cfg.system.L() == std::vector<Int>{0, 3, 15});
  CHECK(cfg.depth == 12);
  CHECK(cfg.terms == 64);
  CHECK(validate(cfg.system).passed);

  doc["defaults"] = {{"depth", 5}, {"terms", 30}, {"parseval_tolerance", 0.1}};
  const auto d = io::parse_config(doc);
  CHECK(d.depth == 5);
  CHECK(d.terms == 30);
  CHECK(d.parseval_tolerance == 0.1);
}

TEST_CASE("parse_config rejects schema violations") {
  auto missing_alpha = example_doc();
  missing_alpha["alpha"].erase(2);
  CHECK_THROWS_AS(io::parse_config(missing_alpha), io::ConfigError);

  auto bad_version = example_doc();
  bad_version["version"] = "v2";
  CHECK_THROWS_AS(io::parse_config(bad_version), io::ConfigError);

  auto no_r = example_doc();
  no_r.erase("R");
  CHECK_THROWS_AS(io::parse_config(no_r), io::ConfigError);

  auto float_digit = example_doc();
  float_digit["B"] = {0, 2.5};
  CHECK_THROWS_AS(io::parse_config(float_digit), io::ConfigError);

  auto bad_pair = example_doc();
  bad_pair["alpha"][1] = {1};
  CHECK_THROWS_AS(io::parse_config(bad_pair), io::ConfigError);

  auto bad_terms = example_doc();
  bad_terms["defaults"] = {{"terms", 0}};
  CHECK_THROWS_AS(io::parse_config(bad_terms), io::ConfigError);

  CHECK_THROWS_AS(io::parse_config(json::array()), io::ConfigError);
  CHECK_THROWS_AS(io::load_config("/nonexistent/config.json"), io::ConfigError);
}

TEST_CASE("system JSON round trip") {
  const auto sys = cantor_0_3_15();
  const auto back = io::parse_config(io::to_json(sys)).system;
  CHECK(back.R() == sys.R());
  CHECK(back.B() == sys.B());
  CHECK(back.L() == sys.L());
  CHECK(back.alpha() == sys.alpha());
}

TEST_CASE("min-set JSON round trip is exact") {
  for (Int b : {15, 51, 195, 255}) {
    const auto sets = find_min_sets(three_digit(b));
    const auto doc = io::min_sets_to_json(sets);
    const auto back = io::min_sets_from_json(json::parse(doc.dump()));
    REQUIRE(back.size() == sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      CHECK(back[i].points == sets[i].points);
      CHECK(back[i].representative == sets[i].representative);
      CHECK(back[i].edges == sets[i].edges);
    }
    CHECK(io::min_sets_to_json(back).dump() == doc.dump());
  }
  const auto doc = io::min_sets_to_json(find_min_sets(cantor_0_3_15()));
  CHECK(doc["min_sets"][1]["points"] == json{"-1", "-4"});
}

TEST_CASE("frame CSV round trip") {
  const FrameSystem phased(4, {0, 2}, {0, 3, 15}, {{1, 0}, {0, kHalfRoot}, {-0.5, 0.5}});
  for (const auto& sys : {cantor_0_3_15(), onb(), phased}) {
    const auto els = frame_multiset(sys, 5);
    const auto text = io::frame_to_csv(els);
    const auto back = io::frame_from_csv(text);
    REQUIRE(back.size() == els.size());
    for (std::size_t i = 0; i < els.size(); ++i) {
      CHECK(back[i].frequency == els[i].frequency);
      CHECK(back[i].weight == els[i].weight);
      CHECK(back[i].c == els[i].c);
      CHECK(back[i].word == els[i].word);
    }
    CHECK(io::frame_to_csv(back) == text);
  }
  CHECK_THROWS(io::frame_from_csv("bad header\n"));
}

TEST_CASE("frame CSV and JSON content") {
  const auto els = lambda_elements(cantor_0_3_15(), Rational(0), 2);
  const auto text = io::frame_to_csv(els);
  CHECK(text.rfind("frequency,weight_re,weight_im,c,word\n0,1,0,0,\n", 0) == 0);
  CHECK(text.find("\n15,0.70710678118654757,0,0,15\n") != std::string::npos);
  CHECK(text.find("\n15,0.50000000000000011,0,0,3 3\n") != std::string::npos);
  const auto doc = io::frame_to_json(els);
  CHECK(doc["version"] == "v1");
  CHECK(doc["elements"].size() == els.size());
  CHECK(doc["elements"][0]["frequency"] == "0");
}
