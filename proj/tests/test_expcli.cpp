#include <doctest.h>

#include "ffinc/experiment.hpp"
#include "ffinc/exponent.hpp"
#include "ffinc/report.hpp"
#include "ffinc/rng.hpp"

using namespace ffinc;

TEST_CASE("regime examples") {
  const auto r = predicted_exponent(3, Rational(1));
  CHECK(r.kind == RegimeKind::Falling);
  CHECK(r.t == 2);
  CHECK(r.tag() == "[alpha_2,beta_2]");
  CHECK((r.m_exponent == Rational(1)));
  CHECK((r.n_exponent == Rational(1, 2)));
  // m = n: exponent of n is 3/2 = 2 - 1/ceil((d+1)/2).
  CHECK((r.m_exponent + r.n_exponent == Rational(3, 2)));
  CHECK(predicted_exponent(4, Rational(1, 10)).kind == RegimeKind::Low);
  CHECK(predicted_exponent(4, Rational(10)).kind == RegimeKind::High);
  CHECK((beta_t(5, 1) == Rational(1, 5)));
  CHECK((beta_t(5, 5) == Rational(5)));
  CHECK_THROWS(predicted_exponent(1, Rational(1)));
  CHECK_THROWS(predicted_exponent(3, Rational(0)));
}

TEST_CASE("endpoint exponents") {
  for (std::int64_t d = 2; d <= 6; ++d) {
    for (std::int64_t t = 1; t <= d; ++t) {
      CHECK((predicted_exponent(d, beta_t(d, t)).combined() == Rational(d, d + 1)));
    }
    for (std::int64_t t = 2; t <= d; ++t) {
      CHECK((predicted_exponent(d, alpha_t(d, t)).combined() == Rational(d + 1, d + 2)));
    }
  }
}

TEST_CASE("regimes tile and agree at shared endpoints") {
  Rng rng(5);
  for (std::int64_t d = 2; d <= 6; ++d) {
    for (int i = 0; i < 10000; ++i) {
      const Rational a(1 + static_cast<std::int64_t>(rng.below(20000)), 1000);
      const auto all = matching_regimes(d, a);
      REQUIRE(!all.empty());
      if (all.size() > 1) {
        for (const auto& x : all) CHECK((x.combined() == all.front().combined()));
      }
    }
    for (std::int64_t t = 2; t <= d; ++t) {
      CHECK(matching_regimes(d, alpha_t(d, t)).size() == 2);
    }
  }
}

TEST_CASE("rational parsing") {
  CHECK((parse_rational("3/2") == Rational(3, 2)));
  CHECK((parse_rational("2") == Rational(2)));
  CHECK((parse_rational("0.75") == Rational(3, 4)));
  CHECK((parse_rational("1.0") == Rational(1)));
  CHECK_THROWS_AS(parse_rational("a/b"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ValidationError);
}

namespace {

ExperimentReport sample_report() {
  ExperimentReport r;
  r.experiment = "demo";
  r.seed = 17;
  r.parameters = {{"p", 5}, {"name", "a,b"}};
  r.measured = {{"ratio", 2.0 / 3.0}, {"count", 12}, {"list", {1, 2, 3}}};
  r.predicted = {{"exponent", 1.5}};
  r.verdicts = {{"ok", true}};
  r.notes = {"first"};
  r.finalize();
  return r;
}

}  // namespace

TEST_CASE("report formatting") {
  const auto r = sample_report();
  const auto text = emit_reports_json({r});
  CHECK(text.find("0.666667") != std::string::npos);
  CHECK(text.find("1.500000") != std::string::npos);
  CHECK(text.find("\"count\": 12") != std::string::npos);
  CHECK(text.find("\"p\": 5") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(text == emit_reports_json({sample_report()}));
  // Keys come out sorted.
  CHECK(text.find("\"experiment\"") < text.find("\"measured\""));
  CHECK(text.find("\"measured\"") < text.find("\"parameters\""));
  CHECK(text.find("wall_clock") == std::string::npos);
}

TEST_CASE("report round trip") {
  auto r = sample_report();
  const auto back = parse_reports_json(emit_reports_json({r}));
  REQUIRE(back.size() == 1);
  CHECK(back[0] == r);
  r.wall_clock_seconds = quantize(0.1234567);
  CHECK(parse_reports_json(emit_reports_json({r}))[0] == r);
  CHECK_THROWS_AS(parse_reports_json("{"), ValidationError);
  CHECK_THROWS_AS(parse_reports_json("{}"), ValidationError);
}

TEST_CASE("csv") {
  CHECK(emit_reports_csv({}) == "experiment,seed,passed\n");
  const auto csv = emit_reports_csv({sample_report()});
  const auto header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "experiment,seed,passed,measured.count,measured.list,measured.ratio,parameters.name,"
        "parameters.p,predicted.exponent,verdicts.ok");
  CHECK(csv.find("\"a,b\"") != std::string::npos);
  CHECK(csv.find("\"[1,2,3]\"") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("object serialization") {
  BipartiteGraph g(2, 3);
  g.add_edge(1, 2);
  g.add_edge(0, 1);
  const auto j = graph_to_json(g);
  CHECK(j["edges"] == Json::array({{0, 1}, {1, 2}}));
  CHECK(graph_from_json(j) == g);

  const PrimeField f5(5);
  const auto pj = points_to_json(f5, 2, {{3, 1}, {0, 4}});
  CHECK(pj["points"] == Json::array({{0, 4}, {3, 1}}));
  CHECK(points_from_json(pj["points"], f5, 2).size() == 2);
  CHECK_THROWS_AS(points_from_json(Json::array({{1, 2, 3}}), f5, 2), ValidationError);

  MultivariatePolynomial f(f5, 2, 2);
  f.set({0, 2}, 3);
  f.set({1, 0}, 1);
  const auto fj = polynomial_to_json(f);
  CHECK(fj["coeffs"].size() == 2);
  CHECK(fj["coeffs"][0]["exp"] == Json::array({0, 2}));
  CHECK(polynomial_from_json(fj) == f);
}

TEST_CASE("experiment validation") {
  CHECK_THROWS_WITH_AS(run_experiment(Json{{"experiment", "construction1-exactness"}, {"d", 3}, {"t", 2}}, 1),
                       doctest::Contains("'p'"), ValidationError);
  CHECK_THROWS_WITH_AS(run_experiment(Json{{"experiment", "nope"}}, 1), doctest::Contains("unknown experiment"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(run_experiment(Json{{"experiment", "h-graph"}, {"d", 2}, {"delta", 2}, {"extra", 1}}, 1),
                       doctest::Contains("'extra'"), ValidationError);
  CHECK_THROWS_WITH_AS(run_experiment(Json{{"experiment", "h-graph"}, {"d", "two"}, {"delta", 2}}, 1),
                       doctest::Contains("'d'"), ValidationError);
  CHECK_THROWS_AS(run_experiment(Json{{"d", 2}}, 1), ValidationError);
  CHECK_THROWS_AS(run_experiment(Json::array(), 1), ValidationError);
}

TEST_CASE("construction 1 experiment") {
  const Json cfg = {{"experiment", "construction1-exactness"}, {"p", 5}, {"d", 3}, {"t", 2}};
  const auto r = run_experiment(cfg, 1);
  CHECK(r.passed());
  const auto m = r.measured["m"].get<std::int64_t>();
  const auto n = r.measured["n"].get<std::int64_t>();
  CHECK(r.measured["incidences"].get<std::int64_t>() * 5 == m * n);
  CHECK(r.parameters["s"] == 3);
  CHECK(emit_reports_json({r}) == emit_reports_json({run_experiment(cfg, 1)}));
}

TEST_CASE("experiment arrays derive per-instance seeds") {
  const Json one = {{"experiment", "h-graph"}, {"d", 2}, {"delta", 1}};
  const auto rs = run_experiments(Json::array({one, one}), 9);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].seed == derive_seed(9, "instance", 0));
  CHECK(rs[1].seed == derive_seed(9, "instance", 1));
  CHECK(run_experiments(one, 9)[0].seed == 9);
  CHECK(run_experiments(one, 9, true)[0].wall_clock_seconds.has_value());
}

TEST_CASE("every experiment runs at small scale") {
  const std::vector<Json> cfgs = {
      {{"experiment", "subsample"}, {"p", 3}, {"d", 3}, {"t", 2}, {"m", 4}, {"n", 6}},
      {{"experiment", "construction2-properties"}, {"p", 3}, {"d", 3}, {"t", 2}, {"k", 2}},
      {{"experiment", "blowup-laws"}, {"instances", 6}},
      {{"experiment", "pattern-freeness"}, {"instances", 10}},
      {{"experiment", "good-tuple-implication"}, {"instances", 30}},
      {{"experiment", "sphere-intersection-sweep"}, {"trials", 12}},
      {{"experiment", "isotropic-pair-search"}, {"fields", {{3, 3}, {7, 3}}}},
      {{"experiment", "zero-pattern-bounds"}, {"instances", 20}},
      {{"experiment", "zero-concentration"}, {"samples", 200}, {"mean_tolerance", 1.0}, {"min_fraction", 0.5}},
      {{"experiment", "algebraic-graph"}, {"d1", 1}, {"d2", 1}, {"s", 2}, {"p", 17}},
      {{"experiment", "point-variety"}, {"D", 2}, {"alpha", "1"}, {"m", 17}, {"p", 17}},
      {{"experiment", "unit-distance"}, {"n", 50}, {"d", 2}, {"shift_trials", 5}},
      {{"experiment", "h-graph"}, {"d", 2}, {"delta", 2}},
      {{"experiment", "exponent-endpoints"}, {"samples", 100}},
  };
  for (const auto& c : cfgs) {
    const auto r = run_experiment(c, 3);
    INFO(c.dump());
    CHECK(r.passed());
    CHECK_FALSE(r.verdicts.empty());
  }
}

TEST_CASE("construct and verify") {
  const auto built = run_construct({{"kind", "construction1"}, {"p", 3}, {"d", 3}, {"t", 2}}, 4);
  CHECK(built.report.passed());
  CHECK(built.artifact["kind"] == "construction1");
  Json base = built.artifact;
  base.erase("kind");

  const auto blown = run_construct({{"kind", "blowup"}, {"base", base}, {"mode", "points"}, {"k", 2}}, 4);
  CHECK(blown.report.verdicts.at("incidence_law"));
  CHECK(blown.artifact["d"] == 4);

  const auto kss = run_verify({{"check", "kss"}, {"configuration", base}, {"s", 3}});
  CHECK(kss.passed());
  const auto pat = run_verify({{"check", "pattern"}, {"configuration", base}, {"d", 3}});
  CHECK(pat.verdicts.at("pattern_absent"));
  const auto ev = run_verify({{"check", "evasive"}, {"p", 3}, {"d", 2}, {"k", 1}, {"s", 3},
                              {"points", {{0, 0}, {1, 0}, {2, 0}}}});
  CHECK_FALSE(ev.passed());
  CHECK(ev.measured["max_intersection"] == 3);
  const Json k23 = {{"a_size", 2}, {"b_size", 3}, {"edges", {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}}};
  const auto r = run_verify({{"check", "rs"}, {"graph", k23}, {"bound", 5}});
  CHECK(r.measured["rs"] == 6);
  CHECK_FALSE(r.passed());
  CHECK_THROWS_AS(run_verify({{"check", "bogus"}}), ValidationError);
  CHECK_THROWS_AS(run_construct({{"kind", "bogus"}}, 1), ValidationError);
}

TEST_CASE("exponent verb") {
  const auto r = run_exponent({{"d", 3}, {"alpha", "1"}});
  CHECK(r.predicted["regime"] == "[alpha_2,beta_2]");
  CHECK(r.predicted["n_exponent"] == "1/2");
  CHECK(run_exponent({{"d", 3}, {"alpha", 0.5}}).parameters["alpha"] == "1/2");
  CHECK_THROWS_AS(run_exponent({{"d", 3}}), ValidationError);
  CHECK_THROWS_AS(run_exponent({{"d", 1}, {"alpha", 1}}), ValidationError);
}
