#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "paley/field_graph.hpp"
#include "paley/report.hpp"

namespace paley {

namespace {

// Up to ~6 "nice" tick values (1, 2, 5 times a power of ten) inside [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
  std::vector<double> ticks;
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(t);
  return ticks;
}

std::string tick_label(double v) {
  if (v == std::floor(v)) return fmt::format("{:.0f}", v);
  return fmt::format("{:g}", v);
}

const char* series_colour(Column c) {
  switch (c) {
    case Column::kTheta:
      return "#1f77b4";
    case Column::kL2:
      return "#d62728";
    case Column::kOmega:
      return "#2ca02c";
    case Column::kHp:
      return "#7f7f7f";
  }
  return "#000000";
}

const char* series_label(Column c) {
  switch (c) {
    case Column::kTheta:
      return "theta(G_p)";
    case Column::kL2:
      return "L2(G_p)";
    case Column::kOmega:
      return "omega(G_p)";
    case Column::kHp:
      return "HP(G_p)";
  }
  return "";
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char ch : s) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<BoundsRecord>& records, const std::vector<SeriesFit>& fits,
                       const PlotOptions& opts) {
  if (records.empty()) throw std::invalid_argument("nothing to plot");

  double pmin = std::numeric_limits<double>::infinity();
  double pmax = -pmin;
  double vmin = pmin;
  double vmax = -pmin;
  auto include = [&](double p, double v) {
    if (!(p > 0.0) || !(v > 0.0) || !std::isfinite(v)) return;
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  };
  for (const auto& r : records) {
    include(r.p, r.theta);
    include(r.p, r.l2);
    include(r.p, r.omega);
    include(r.p, hp_bound(r.p));
  }
  for (const auto& e : opts.external) include(e.p, e.value);
  if (!std::isfinite(pmin)) throw std::invalid_argument("no positive values to plot");
  if (pmin == pmax) {
    pmin *= 0.9;
    pmax *= 1.1;
  }
  vmin *= 0.9;
  vmax *= 1.1;

  const double left = 70.0;
  const double right = 190.0;
  const double top = 30.0;
  const double bottom = 50.0;
  const double w = opts.width - left - right;
  const double h = opts.height - top - bottom;
  const double lx0 = std::log(pmin);
  const double lx1 = std::log(pmax);
  const double ly0 = std::log(vmin);
  const double ly1 = std::log(vmax);
  auto sx = [&](double p) { return left + (std::log(p) - lx0) / (lx1 - lx0) * w; };
  auto sy = [&](double v) { return top + h - (std::log(v) - ly0) / (ly1 - ly0) * h; };

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      opts.width, opts.height, opts.width, opts.height);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", opts.width, opts.height);
  svg += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
                     left, top, w, h);

  for (const double t : nice_ticks(pmin, pmax)) {
    const double x = sx(t);
    svg += fmt::format("<line class=\"tick\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#ddd\"/>\n", x,
                       top, top + h);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x, top + h + 16, tick_label(t));
  }
  for (const double t : nice_ticks(vmin, vmax)) {
    const double y = sy(t);
    svg += fmt::format("<line class=\"tick\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n", left,
                       y, left + w);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", left - 6, y + 4, tick_label(t));
  }
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">p (log scale)</text>\n", left + w / 2,
                     opts.height - 12.0);
  svg += fmt::format(
      "<text x=\"16\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">bound (log scale)</text>\n",
      top + h / 2, top + h / 2);

  // HP curve, with a vertex at every record's p
  std::vector<double> hp_at;
  for (int k = 0; k <= 64; ++k) hp_at.push_back(std::exp(lx0 + (lx1 - lx0) * k / 64.0));
  for (const auto& r : records) hp_at.push_back(r.p);
  std::sort(hp_at.begin(), hp_at.end());
  std::string hp_points;
  for (const double p : hp_at) {
    if (p >= 1.0) hp_points += fmt::format("{:.2f},{:.2f} ", sx(p), sy((std::sqrt(2.0 * p - 1.0) + 1.0) / 2.0));
  }
  svg += fmt::format("<polyline class=\"curve hp\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-dasharray=\"6 4\"/>\n",
                     hp_points, series_colour(Column::kHp));

  for (const auto& f : fits) {
    std::string pts;
    for (int k = 0; k <= 64; ++k) {
      const double p = std::exp(lx0 + (lx1 - lx0) * k / 64.0);
      const double v = f.fit.a * std::pow(p, f.fit.b);
      if (v > 0.0 && std::isfinite(v)) pts += fmt::format("{:.2f},{:.2f} ", sx(p), sy(v));
    }
    svg += fmt::format("<polyline class=\"curve fit {}\" points=\"{}\" fill=\"none\" stroke=\"{}\"/>\n",
                       to_string(f.column), pts, series_colour(f.column));
  }

  for (const auto& r : records) {
    const double x = sx(r.p);
    if (r.theta > 0.0 && std::isfinite(r.theta)) {
      svg += fmt::format("<circle class=\"marker theta\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3.5\" fill=\"{}\"/>\n", x,
                         sy(r.theta), series_colour(Column::kTheta));
    }
    if (r.l2 > 0.0 && std::isfinite(r.l2)) {
      const double y = sy(r.l2);
      svg += fmt::format("<rect class=\"marker l2\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"7\" height=\"7\" fill=\"{}\"/>\n",
                         x - 3.5, y - 3.5, series_colour(Column::kL2));
    }
    if (r.omega > 0) {
      const double y = sy(r.omega);
      svg += fmt::format(
          "<polygon class=\"marker omega{}\" points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"{}\" stroke=\"{}\"/>\n",
          r.omega_certified ? "" : " uncertified", x, y - 4.5, x - 4.0, y + 3.0, x + 4.0, y + 3.0,
          r.omega_certified ? series_colour(Column::kOmega) : "none", series_colour(Column::kOmega));
    }
  }
  for (const auto& e : opts.external) {
    if (!(e.value > 0.0)) continue;
    const double x = sx(e.p);
    const double y = sy(e.value);
    svg += fmt::format(
        "<polygon class=\"marker external\" points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" "
        "fill=\"none\" stroke=\"#9467bd\"/>\n",
        x, y - 4.5, x + 4.5, y, x, y + 4.5, x - 4.5, y);
  }

  // Legend
  double ly = top + 10.0;
  const double lx = left + w + 16.0;
  auto legend = [&](const std::string& colour, const std::string& text) {
    svg += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", lx, ly - 9, colour);
    svg += fmt::format("<text class=\"legend\" x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", lx + 16, ly, escape(text));
    ly += 18.0;
  };
  for (const Column c : {Column::kTheta, Column::kL2, Column::kOmega, Column::kHp}) legend(series_colour(c), series_label(c));
  if (!opts.external.empty()) legend("#9467bd", opts.external_label);
  for (const auto& f : fits) {
    legend(series_colour(f.column),
           fmt::format("{} ~ {:.3f} p^{:.3f}", to_string(f.column), f.fit.a, f.fit.b));
  }
  svg += "</svg>\n";
  return svg;
}

void plot_bounds(const std::vector<BoundsRecord>& records, const std::vector<SeriesFit>& fits,
                 const std::filesystem::path& path, const PlotOptions& opts) {
  const std::string svg = render_svg(records, fits, opts);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << svg;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace paley
