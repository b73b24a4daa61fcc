#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <regex>
#include <set>

#include "lipmod/bilipmap.hpp"
#include "lipmod/family.hpp"
#include "lipmod/metricinf.hpp"
#include "lipmod/newton.hpp"
#include "lipmod/parse.hpp"
#include "lipmod/report.hpp"
#include "lipmod/svg.hpp"

namespace lipmod::cli {

namespace {

using report::Json;

class UsageError : public std::runtime_error {
 public:
  UsageError(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct RunConfig {
  std::string command;
  std::string s = "1", s2;
  std::string family = "cubic";
  std::string c = "0";
  double delta = 0.5;
  std::size_t samples = 1000;
  std::size_t pairs = 1000000;
  std::uint64_t seed = 42;
  std::string out, csv;
  std::string mode = "auto";
  std::string which = "special", what = "level";
  std::string poly, vars;
  std::vector<std::string> binds, c_sweep, view;
  bool complex = false, force = false, detail = false;
};

std::string trim(std::string t) {
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
  return t;
}

double parse_real(const std::string& t) {
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used == t.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad_value", "cannot read '" + t + "' as a number");
}

// Rationals ("3", "7/2", "0.25") stay exact; "a+bi", "bi" and "i" give complex doubles.
Scalar parse_value(const std::string& raw) {
  const std::string t = trim(raw);
  if (t.empty()) throw UsageError("bad_value", "empty value");
  try {
    return Rational::parse(t);
  } catch (const std::exception&) {
  }
  if (t.back() != 'i') throw UsageError("bad_value", "cannot read '" + raw + "' as a rational or complex number");
  std::string body = t.substr(0, t.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return Complex(re.empty() ? 0.0 : parse_real(re), parse_real(im));
}

Scalar with_mode(const Scalar& v, const RunConfig& cfg) {
  if (cfg.mode == "exact" && !v.is_exact())
    throw UsageError("non_rational_input", "exact mode needs rational input");
  if (cfg.mode == "float") return Scalar(v.complex());
  return v;
}

Bindings parse_bindings(const std::vector<std::string>& binds) {
  Bindings b;
  for (const std::string& kv : binds) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("bad_binding", "expected name=value, got '" + kv + "'");
    try {
      b[trim(kv.substr(0, eq))] = Rational::parse(trim(kv.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw UsageError("bad_binding", e.what());
    }
  }
  return b;
}

// Variables in order of first appearance, skipping bound names; the pair is
// completed from x, y, z.
VarNames detect_vars(const std::string& text, const Bindings& b, const std::string& explicit_vars) {
  std::vector<std::string> found;
  if (!explicit_vars.empty()) {
    std::stringstream ss(explicit_vars);
    for (std::string v; std::getline(ss, v, ',');) found.push_back(trim(v));
    if (found.size() != 2) throw UsageError("bad_vars", "--vars needs exactly two names");
    return {found[0], found[1]};
  }
  static const std::regex ident("[A-Za-z_][A-Za-z_0-9]*");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it) {
    const std::string name = it->str();
    if (b.count(name) || std::find(found.begin(), found.end(), name) != found.end()) continue;
    found.push_back(name);
  }
  if (found.size() > 2) throw UsageError("unbound_identifier", "more than two free identifiers; bind the rest with --bind");
  for (const char* fill : {"x", "y", "z"}) {
    if (found.size() == 2) break;
    if (std::find(found.begin(), found.end(), fill) == found.end()) found.emplace_back(fill);
  }
  return {found[0], found[1]};
}

BiPoly read_poly(const RunConfig& cfg, VarNames* names_out = nullptr) {
  const Bindings b = parse_bindings(cfg.binds);
  const VarNames names = detect_vars(cfg.poly, b, cfg.vars);
  if (names_out) *names_out = names;
  return parse_poly(cfg.poly, b, names);
}

double real_part(const Scalar& v, const std::string& what) {
  const Complex z = v.complex();
  if (z.imag() != 0.0) throw UsageError("bad_value", what + " must be real here");
  return z.real();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("io_error", "cannot open '" + path + "' for writing");
  f << text;
}

Json cmd_invariant(const RunConfig& cfg) {
  const Scalar s = with_mode(parse_value(cfg.s), cfg);
  if (cfg.family == "quartic") return report::quartic(quartic_invariant(s));
  if (cfg.family != "cubic") throw UsageError("bad_value", "--family is cubic or quartic");
  return report::polar(cubic_polar(s));
}

Json cmd_separate(const RunConfig& cfg) {
  RunConfig c2 = cfg;
  if (cfg.complex) c2.mode = "float";
  const Scalar s = with_mode(parse_value(cfg.s), c2);
  const Scalar s2 = with_mode(parse_value(cfg.s2), c2);
  Json out = report::separation(separates(s, s2));
  if (cfg.complex) out["exceptional"] = report::exceptional(exceptional_set(s));
  return out;
}

Json cmd_classify(const RunConfig& cfg) {
  const Scalar s = with_mode(parse_value(cfg.s), cfg);
  // At s² + 4 = 0 the fiber x(xy − s/2)² is not reduced.
  if (std::abs((s * s + Scalar(4)).complex()) <= 1e-12 * std::max(1.0, s.magnitude() * s.magnitude()))
    throw DomainError("excluded_parameter", "f_s has a non-reduced fiber at s^2+4 = 0", "s^2+4=0");
  return report::classification(classify(family_poly({FamilyKind::Cubic, s}), cfg.seed), cfg.detail);
}

Json cmd_milnor(const RunConfig& cfg) {
  if (cfg.poly.empty()) throw UsageError("missing_option", "--poly is required");
  MilnorOptions opts;
  opts.force = cfg.force;
  return report::milnor(milnor_newton(read_poly(cfg), opts), cfg.detail);
}

Json cmd_level_map(const RunConfig& cfg) {
  DistortionOptions opts;
  opts.random_pairs = cfg.pairs;
  opts.seed = cfg.seed;
  Json out{{"which", cfg.which}, {"samples", cfg.samples}, {"seed", cfg.seed}};
  std::vector<Point> src, img;
  std::vector<double> res;
  if (cfg.which == "special") {
    const PiecewiseBilip map = build_special_map();
    const auto pts = sample_special_level(cfg.seed, cfg.samples);
    for (const LevelPoint& p : pts) {
      src.push_back(p.p);
      img.push_back(map.apply(p.p));
      res.push_back(std::abs(img.back().x * (img.back().x * img.back().x * img.back().y * img.back().y -
                                             img.back().x * img.back().y - 1.0)));
    }
    std::size_t nonzero = 0;
    for (const Scalar& r : residual_on_target_exact(map, sample_special_level_exact(cfg.seed, cfg.samples)))
      nonzero += r.is_zero() ? 0 : 1;
    out["residual_exact_nonzero"] = nonzero;
    out["distortion"] = report::distortion(distortion(map, pts, opts));
  } else if (cfg.which == "generic") {
    const LevelMapGeneric map = build_generic_map();
    const auto pts = sample_generic_level(cfg.seed, cfg.samples);
    for (const LevelPoint& p : pts) {
      src.push_back(p.p);
      img.push_back(map.apply(p.p));
      const Point q = img.back();
      res.push_back(std::abs(q.x * (q.x * q.x * q.y * q.y - q.x * q.y - 1.0) - 1.0));
    }
    out["distortion"] = report::distortion(distortion(map, pts, opts));
    Json rows = Json::array();
    for (const AsymptoticRow& r : asymptotic_ratios({1e6, -1e6, 1e-6}))
      rows.push_back(Json{{"x", r.x}, {"plus", r.plus}, {"ratio", r.ratio}, {"predicted", r.predicted}, {"deviation", r.deviation}});
    out["asymptotic"] = rows;
  } else {
    throw UsageError("bad_value", "--which is special or generic");
  }
  out["residual_max"] = res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    write_csv(csv, src, img, res);
    write_text(cfg.csv, csv.str());
  }
  return out;
}

Json cmd_metric(const RunConfig& cfg) {
  const Complex s = parse_value(cfg.s).complex();
  std::vector<Complex> cs;
  for (const std::string& c : cfg.c_sweep) cs.push_back(parse_value(c).complex());
  const GrowthFit fit = growth_fit(s, cfg.delta, cs);
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    write_ratio_csv(csv, s, cs, fit.samples);
    write_text(cfg.csv, csv.str());
  }
  Json out = report::growth(fit, true);
  out["s"] = report::complex(s);
  out["delta"] = cfg.delta;
  return out;
}

Json cmd_plot(const RunConfig& cfg) {
  if (cfg.out.empty()) throw UsageError("missing_option", "plot needs --out <file.svg>");
  std::string text;
  if (cfg.what == "level") {
    svg::View view;
    if (!cfg.view.empty()) {
      if (cfg.view.size() != 4) throw UsageError("bad_value", "--view is x_min,x_max,y_min,y_max");
      view = {parse_real(cfg.view[0]), parse_real(cfg.view[1]), parse_real(cfg.view[2]), parse_real(cfg.view[3])};
    }
    const int n = static_cast<int>(std::max<std::size_t>(cfg.samples, 512));
    text = svg::level_plot(real_part(parse_value(cfg.s), "--s"), real_part(parse_value(cfg.c), "--c"), view, n);
  } else if (cfg.what == "newton") {
    RunConfig c2 = cfg;
    if (c2.poly.empty()) {
      // Default: the family at the point at infinity (0:1:0), in (x, z).
      c2.poly = "x^3 - s*x^2*z^2 - x*z^4 - c*z^5";
      c2.binds.push_back("s=" + cfg.s);
      c2.binds.push_back("c=" + cfg.c);
    }
    VarNames names;
    const BiPoly p = read_poly(c2, &names);
    text = svg::newton_plot(diagram(p), names);
  } else {
    throw UsageError("bad_value", "--what is level or newton");
  }
  write_text(cfg.out, text);
  return Json{{"what", cfg.what}, {"svg", cfg.out}, {"width", 800}, {"height", 600}};
}

void emit(const Json& j, std::ostream& out) { out << j.dump() << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Bilipschitz invariants of x(x^2y^2 - sxy - 1)", "lipmod"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--out", cfg.out, "Write the report (or SVG for plot) to this file");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--mode", cfg.mode, "exact, float or auto")->check(CLI::IsMember({"auto", "exact", "float"}));

  auto* inv = app.add_subcommand("invariant", "Polar roots and invariant ratio");
  inv->add_option("--s", cfg.s)->required();
  inv->add_option("--family", cfg.family)->check(CLI::IsMember({"cubic", "quartic"}));

  auto* sep = app.add_subcommand("separate", "Compare invariants of two parameters");
  sep->add_option("--s", cfg.s)->required();
  sep->add_option("--s2", cfg.s2)->required();
  sep->add_flag("--complex", cfg.complex, "Use complex doubles and report the exceptional set");

  auto* cls = app.add_subcommand("classify", "Topological classification of f_s");
  cls->add_option("--s", cfg.s)->required();
  cls->add_flag("--detail", cfg.detail);

  auto* mil = app.add_subcommand("milnor", "Milnor number at the origin");
  mil->add_option("--poly", cfg.poly)->required();
  mil->add_option("--bind", cfg.binds, "name=value");
  mil->add_option("--vars", cfg.vars, "Two variable names, comma separated");
  mil->add_flag("--force", cfg.force, "Fall back to intersection multiplicities on degenerate faces");
  mil->add_flag("--detail", cfg.detail);

  auto* lvl = app.add_subcommand("level-map", "Residual and distortion of a level map");
  lvl->add_option("--which", cfg.which)->check(CLI::IsMember({"special", "generic"}));
  lvl->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
  lvl->add_option("--pairs", cfg.pairs, "Random pairs when sampling is not exhaustive");
  lvl->add_option("--csv", cfg.csv);

  auto* met = app.add_subcommand("metric", "Inner/outer witness ratio growth");
  met->add_option("--s", cfg.s);
  met->add_option("--delta", cfg.delta);
  met->add_option("--c-sweep", cfg.c_sweep)->delimiter(',')->required();
  met->add_option("--csv", cfg.csv);

  auto* plt = app.add_subcommand("plot", "SVG of a level curve or a Newton diagram");
  plt->add_option("--what", cfg.what)->check(CLI::IsMember({"level", "newton"}));
  plt->add_option("--s", cfg.s);
  plt->add_option("--c", cfg.c);
  plt->add_option("--poly", cfg.poly);
  plt->add_option("--bind", cfg.binds);
  plt->add_option("--vars", cfg.vars);
  plt->add_option("--view", cfg.view)->delimiter(',');
  plt->add_option("--samples", cfg.samples);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit(report::error("usage", e.what()), out);
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    Json result;
    if (cfg.command == "invariant") result = cmd_invariant(cfg);
    else if (cfg.command == "separate") result = cmd_separate(cfg);
    else if (cfg.command == "classify") result = cmd_classify(cfg);
    else if (cfg.command == "milnor") result = cmd_milnor(cfg);
    else if (cfg.command == "level-map") result = cmd_level_map(cfg);
    else if (cfg.command == "metric") result = cmd_metric(cfg);
    else result = cmd_plot(cfg);

    if (!cfg.out.empty() && cfg.command != "plot") write_text(cfg.out, result.dump() + "\n");
    else emit(result, out);
    return kOk;
  } catch (const UsageError& e) {
    emit(report::error(e.code(), e.what()), out);
    return kUsage;
  } catch (const ParseError& e) {
    emit(report::error("parse_error", e.what()), out);
    return kUsage;
  } catch (const DomainError& e) {
    emit(report::error(e), out);
    return kDomain;
  } catch (const std::invalid_argument& e) {
    emit(report::error("invalid_argument", e.what()), out);
    return kUsage;
  } catch (const std::exception& e) {
    emit(report::error("numerical_failure", e.what()), out);
    return kDomain;
  }
}

}  // namespace lipmod::cli
