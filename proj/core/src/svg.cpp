#include "lipmod/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lipmod::svg {

namespace {

constexpr double kWidth = 800, kHeight = 600, kMargin = 40;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(double x_min, double x_max, double y_min, double y_max)
      : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
    if (!(x_max > x_min && y_max > y_min)) throw std::invalid_argument("svg: empty view");
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n"
         << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  }

  double px(double x) const { return kMargin + (x - x_min_) / (x_max_ - x_min_) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y_min_) / (y_max_ - y_min_) * (kHeight - 2 * kMargin); }

  void line(double x0, double y0, double x1, double y1, const std::string& style) {
    out_ << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\"" << num(px(x1)) << "\" y2=\""
         << num(py(y1)) << "\" " << style << "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style, bool closed = false) {
    if (pts.size() < 2) return;
    out_ << (closed ? "<polygon" : "<polyline") << " points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k)
      out_ << (k ? " " : "") << num(px(pts[k].first)) << ',' << num(py(pts[k].second));
    out_ << "\" " << style << "/>\n";
  }

  void dot(double x, double y, const std::string& style) {
    out_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"4\" " << style << "/>\n";
  }

  void text(double x, double y, const std::string& s) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"14\">" << s
         << "</text>\n";
  }

  void axes() {
    const std::string style = "stroke=\"#888\" stroke-width=\"1\"";
    if (y_min_ <= 0 && 0 <= y_max_) line(x_min_, 0, x_max_, 0, style);
    if (x_min_ <= 0 && 0 <= x_max_) line(0, y_min_, 0, y_max_, style);
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  double x_min_, x_max_, y_min_, y_max_;
  std::ostringstream out_;
};

}  // namespace

std::string level_plot(double s, double c, const View& v, int samples) {
  if (samples < 2) throw std::invalid_argument("level_plot: need at least two samples");
  Canvas cv(v.x_min, v.x_max, v.y_min, v.y_max);
  cv.axes();
  const std::string curve = "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\"";
  if (c == 0.0 && v.x_min <= 0 && 0 <= v.x_max) cv.line(0, v.y_min, 0, v.y_max, curve);

  const double ymargin = 0.5 * (v.y_max - v.y_min);
  auto sweep = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    // Two runs per side: larger and smaller root of x³y² − s x²y − (x + c).
    std::vector<std::pair<double, double>> run[2];
    auto flush = [&](int b) {
      cv.polyline(run[b], curve);
      run[b].clear();
    };
    for (int k = 0; k < samples; ++k) {
      const double x = lo + (hi - lo) * static_cast<double>(k) / (samples - 1);
      const double a = x * x * x, bq = -s * x * x, cq = -(x + c);
      const double disc = bq * bq - 4 * a * cq;
      if (a == 0.0 || disc < 0.0) {
        flush(0);
        flush(1);
        continue;
      }
      const double q = -0.5 * (bq + std::copysign(std::sqrt(disc), bq));
      double r1 = q / a, r2 = q != 0.0 ? cq / q : r1;
      if (r1 < r2) std::swap(r1, r2);
      const double roots[2] = {r1, r2};
      for (int b = 0; b < 2; ++b) {
        const double y = roots[b];
        if (!std::isfinite(y) || y < v.y_min - ymargin || y > v.y_max + ymargin) {
          flush(b);
          continue;
        }
        run[b].emplace_back(x, std::clamp(y, v.y_min - ymargin, v.y_max + ymargin));
      }
    }
    flush(0);
    flush(1);
  };
  // Stay off x = 0, where the quadratic degenerates.
  const double gap = 1e-3 * (v.x_max - v.x_min);
  sweep(v.x_min, std::min(v.x_max, -gap));
  sweep(std::max(v.x_min, gap), v.x_max);
  cv.text(50, 30, "s = " + num(s) + ", c = " + num(c));
  return cv.finish();
}

std::string newton_plot(const NewtonDiagram& d, const VarNames& names) {
  double extent = 1;
  for (const Monomial& m : d.support) extent = std::max({extent, static_cast<double>(m.i), static_cast<double>(m.j)});
  extent += 1;
  Canvas cv(-0.5, extent * 4.0 / 3.0, -0.5, extent);
  cv.axes();
  if (!d.faces.empty()) {
    std::vector<std::pair<double, double>> area;
    area.emplace_back(0.0, 0.0);
    std::vector<std::pair<double, double>> chain;
    chain.emplace_back(d.faces.front().start.i, d.faces.front().start.j);
    for (const NewtonFace& f : d.faces) chain.emplace_back(f.end.i, f.end.j);
    area.insert(area.end(), chain.begin(), chain.end());
    cv.polyline(area, "fill=\"#dde6f5\" stroke=\"none\"", true);
    cv.polyline(chain, "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"3\"");
  }
  for (const Monomial& m : d.support) cv.dot(m.i, m.j, "fill=\"#c0392b\"");
  cv.text(kWidth - 60, cv.py(0) - 8, names[0]);
  cv.text(cv.px(0) + 8, 50, names[1]);
  return cv.finish();
}

}  // namespace lipmod::svg
