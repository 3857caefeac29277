#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "infrashare/result_io.hpp"

using namespace infrashare;

TEST_CASE("json document for the running example") {
  ScenarioSpec s = parse_scenario(preset_text("paper"));
  const ResultDocument doc = run_analyses(s);
  CHECK(doc.ok());
  const auto j = to_json(doc);
  CHECK(j["status"] == "ok");
  for (const char* key : {"scenario", "monopoly", "cournot", "aggression", "payoff_table",
                          "sharing", "regulated", "bertrand", "warnings", "failures"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["cournot"]["price"].get<double>() == doctest::Approx(3.75));
  const std::string text = render_json(doc);
  CHECK(text.back() == '\n');
  CHECK(text == render_json(run_analyses(s)));
}

TEST_CASE("partial failures are reported") {
  ScenarioSpec s;
  s.duopoly.sp2.fixed = 1e6;
  s.analyses = {Analysis::kCournot, Analysis::kRegulated};
  const ResultDocument doc = run_analyses(s);
  CHECK_FALSE(doc.ok());
  const auto j = to_json(doc);
  CHECK(j["status"] == "partial");
  CHECK(j["failures"][0]["analysis"] == "regulated");
  CHECK(j.contains("cournot"));
}

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const SweepTable t{{"x", "error"}, {{"1", "bad, worse"}}};
  CHECK(render_csv(t) == "x,error\n1,\"bad, worse\"\n");
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 3.75, 1e-300, 123456789.123456789, -2.5e17}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("scalar columns line up with values") {
  ScenarioSpec s = parse_scenario(preset_text("paper"));
  const ResultDocument doc = run_analyses(s);
  CHECK(scalar_columns(s).size() == scalar_values(doc).size());
}

TEST_CASE("human output") {
  ScenarioSpec s = parse_scenario(preset_text("paper"));
  const std::string text = render_human(run_analyses(s));
  CHECK(text.find("3.75") != std::string::npos);
  CHECK(text.find("Payoff table") != std::string::npos);
}

TEST_CASE("curve csv layout") {
  Curve c;
  c.kind = CurveKind::kProfitVsPrice;
  c.columns = {"price", "profit1", "profit2"};
  c.rows = {{1.0, 2.0, 3.0}};
  c.annotations = {"zero_profit,sp1,lo=1,hi=2"};
  const std::string csv = render_csv(c);
  CHECK(csv.rfind("# curve,profit-vs-price\n", 0) == 0);
  CHECK(csv.find("price,profit1,profit2\n1,2,3\n") != std::string::npos);
}
