#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string text;
  json doc;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lipmod::cli::run(args, out, err);
  Outcome o{code, out.str(), {}};
  if (!o.text.empty()) o.doc = json::parse(o.text);
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("invariant") {
  const Outcome o = run({"invariant", "--s", "1"});
  CHECK(o.code == 0);
  CHECK(o.doc == json{{"R", "-27/5"}, {"alpha", "1"}, {"beta", "-1/3"}});
  CHECK(run({"invariant", "--s", "0"}).doc["R"] == "-1");
  const Outcome f = run({"invariant", "--s", "1", "--mode", "float"});
  CHECK(f.doc["R"].get<double>() == doctest::Approx(-5.4).epsilon(1e-14));
  const Outcome q = run({"invariant", "--s", "2", "--family", "quartic"});
  CHECK(q.code == 0);
  CHECK(q.doc["c"].get<double>() > 0);
  CHECK(q.doc["flagged"] == false);
}

TEST_CASE("classify and milnor") {
  const Outcome c = run({"classify", "--s", "1"});
  CHECK(c.code == 0);
  CHECK(c.doc == json{{"degree", 5}, {"mu", 0}, {"lambda", 2}, {"B", {"0"}}, {"chi", -1}});
  const Outcome m = run({"milnor", "--poly", "x^3 - x*z^4 - s*x^2*z^2 - c*z^5", "--bind", "s=1", "--bind", "c=0"});
  CHECK(m.code == 0);
  CHECK(m.doc == json{{"mu", 10}, {"method", "split"}});
  const Outcome g = run({"milnor", "--poly", "x^3 - x*z^4 - s*x^2*z^2 - c*z^5", "--bind", "s=1", "--bind", "c=3/7"});
  CHECK(g.doc["mu"] == 8);
  const Outcome detail = run({"classify", "--s", "7/2", "--detail"});
  CHECK(detail.doc["infinity_points"].size() == 2);
}

TEST_CASE("separate") {
  const Outcome o = run({"separate", "--s", "0", "--s2", "1"});
  CHECK(o.doc["separated"] == true);
  CHECK(run({"separate", "--s", "2", "--s2", "2"}).doc["separated"] == false);
  const Outcome c = run({"separate", "--s", "0", "--s2", "1", "--complex"});
  CHECK(c.code == 0);
  CHECK(c.doc.contains("exceptional"));
}

TEST_CASE("error documents and exit codes") {
  const Outcome a = run({"invariant", "--s", "2i"});
  CHECK(a.code == 2);
  CHECK(a.doc["code"] == "excluded_parameter");
  CHECK(a.doc["locus"] == "s^2+4=0");
  CHECK(run({"classify", "--s", "-2i"}).doc["locus"] == "s^2+4=0");
  const Outcome b = run({"invariant", "--s", "1", "--frobnicate"});
  CHECK(b.code == 1);
  CHECK(b.doc["code"] == "usage");
  CHECK(run({"invariant", "--s", "1+i", "--mode", "exact"}).code == 1);
  CHECK(run({"invariant", "--s", "banana"}).code == 1);
  CHECK(run({"milnor", "--poly", "x^2 + "}).doc["code"] == "parse_error");
  CHECK(run({"milnor", "--poly", "a*b*c"}).doc["code"] == "unbound_identifier");
  CHECK(run({"plot", "--what", "level"}).code == 1);
  for (const auto& args : std::vector<std::vector<std::string>>{{"invariant", "--s", "3/0"}, {}, {"nope"}}) {
    const Outcome e = run(args);
    CHECK(e.code == 1);
    CHECK(e.doc.contains("code"));
    CHECK(e.doc.contains("message"));
    CHECK(e.doc.contains("locus"));
  }
}

TEST_CASE("determinism") {
  const std::vector<std::vector<std::string>> commands{
      {"level-map", "--which", "special", "--samples", "300", "--pairs", "5000"},
      {"level-map", "--which", "generic", "--samples", "300", "--seed", "9"},
      {"metric", "--s", "1", "--c-sweep", "1e-2,1e-3,1e-4"},
      {"classify", "--s", "-3"}};
  for (const auto& c : commands) {
    const Outcome a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.text == b.text);
  }
  CHECK(run({"level-map", "--which", "special", "--samples", "300", "--seed", "1"}).text !=
        run({"level-map", "--which", "special", "--samples", "300", "--seed", "2"}).text);
}

TEST_CASE("files: json, csv and svg") {
  const auto dir = std::filesystem::temp_directory_path() / "lipmod_cli_test";
  std::filesystem::create_directories(dir);
  const auto report = (dir / "r.json").string(), csv = (dir / "r.csv").string();
  const Outcome o = run({"metric", "--s", "1", "--delta", "0.25", "--c-sweep", "1e-2,1e-3,1e-4", "--out", report, "--csv", csv});
  CHECK(o.code == 0);
  CHECK(o.text.empty());
  const json doc = json::parse(slurp(report));
  CHECK(doc.contains("slope"));
  CHECK(doc.contains("r2"));
  CHECK(slurp(csv).rfind("s,c,t,y0,probe_y,outer,inner_lower,inner_upper,ratio_lower\n", 0) == 0);

  const auto level = (dir / "level.svg").string(), newton = (dir / "newton.svg").string();
  CHECK(run({"plot", "--what", "level", "--s", "1", "--c", "0", "--out", level}).code == 0);
  const std::string svg = slurp(level);
  CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(run({"plot", "--what", "newton", "--s", "1", "--c", "0", "--out", newton}).code == 0);
  CHECK(slurp(newton).find("<circle") != std::string::npos);
  const auto lm = (dir / "lm.csv").string();
  CHECK(run({"level-map", "--which", "generic", "--samples", "50", "--csv", lm}).code == 0);
  CHECK(slurp(lm).rfind("x,y,X,Y,residual\n", 0) == 0);
}
