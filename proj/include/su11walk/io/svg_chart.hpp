#pragma once

// Minimal deterministic SVG charts (bar or line, one or more series) from a ResultTable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "su11walk/io/table.hpp"

namespace su11walk::io {

enum class ChartKind { bar, line };

inline ChartKind chart_kind_from_string(std::string_view s) {
  if (s == "bar") return ChartKind::bar;
  if (s == "line") return ChartKind::line;
  throw InvalidArgument("unknown chart kind '" + std::string(s) + "' (expected bar|line)");
}

struct ChartSpec {
  ChartKind kind = ChartKind::line;
  std::string x;
  std::vector<std::string> y;
  std::string title;
  int width = 720;
  int height = 440;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// "Nice" tick positions covering [lo, hi].
inline std::vector<double> ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) out.push_back(t);
  return out;
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace detail

/// Renders the chart; throws InvalidArgument (before anything is written) on an
/// empty table, a missing column, or non-finite data.
inline std::string render_svg(const ResultTable& t, const ChartSpec& spec) {
  t.validate();
  if (t.rows.empty()) throw InvalidArgument("chart: table '" + t.name + "' has no rows");
  if (spec.y.empty()) throw InvalidArgument("chart: no y columns given");
  const auto xs = t.column(spec.x);
  std::vector<std::vector<double>> ys;
  for (const auto& c : spec.y) ys.push_back(t.column(c));

  double xlo = *std::min_element(xs.begin(), xs.end());
  double xhi = *std::max_element(xs.begin(), xs.end());
  double ylo = 0.0;
  double yhi = 0.0;
  for (const auto& s : ys) {
    ylo = std::min(ylo, *std::min_element(s.begin(), s.end()));
    yhi = std::max(yhi, *std::max_element(s.begin(), s.end()));
  }
  if (xhi == xlo) {
    xlo -= 0.5;
    xhi += 0.5;
  }
  if (yhi == ylo) yhi = ylo + 1.0;
  if (spec.kind == ChartKind::bar && xs.size() > 1) {
    const double half = 0.5 * (xhi - xlo) / static_cast<double>(xs.size() - 1);
    xlo -= half;
    xhi += half;
  }
  yhi += 0.05 * (yhi - ylo);

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  const auto px = [&](double x) { return left + (x - xlo) / (xhi - xlo) * pw; };
  const auto py = [&](double y) { return top + (1.0 - (y - ylo) / (yhi - ylo)) * ph; };
  using detail::fmt;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
       std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
       std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    s += "<text x=\"" + fmt(spec.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         detail::xml_escape(spec.title) + "</text>\n";

  // axes and ticks
  s += "<g stroke=\"#444\" fill=\"none\">\n";
  s += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(top + ph) + "\" x2=\"" + fmt(left + pw) + "\" y2=\"" +
       fmt(top + ph) + "\"/>\n";
  s += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(left) + "\" y2=\"" + fmt(top + ph) +
       "\"/>\n";
  s += "</g>\n<g fill=\"#222\">\n";
  for (double tx : detail::ticks(xlo, xhi)) {
    s += "<line x1=\"" + fmt(px(tx)) + "\" y1=\"" + fmt(top + ph) + "\" x2=\"" + fmt(px(tx)) + "\" y2=\"" +
         fmt(top + ph + 5) + "\" stroke=\"#444\"/>\n";
    s += "<text x=\"" + fmt(px(tx)) + "\" y=\"" + fmt(top + ph + 18) + "\" text-anchor=\"middle\">" +
         detail::tick_label(tx) + "</text>\n";
  }
  for (double ty : detail::ticks(ylo, yhi)) {
    s += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(py(ty)) + "\" x2=\"" + fmt(left) + "\" y2=\"" +
         fmt(py(ty)) + "\" stroke=\"#444\"/>\n";
    s += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(py(ty) + 4) + "\" text-anchor=\"end\">" +
         detail::tick_label(ty) + "</text>\n";
  }
  s += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(spec.height - 10.0) + "\" text-anchor=\"middle\">" +
       detail::xml_escape(spec.x) + "</text>\n";
  const std::string ylabel = spec.y.size() == 1 ? spec.y.front() : std::string("value");
  s += "<text x=\"16\" y=\"" + fmt(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fmt(top + ph / 2) + ")\">" + detail::xml_escape(ylabel) + "</text>\n";
  s += "</g>\n";

  const std::size_t nser = ys.size();
  for (std::size_t k = 0; k < nser; ++k) {
    const char* color = detail::kPalette[k % std::size(detail::kPalette)];
    if (spec.kind == ChartKind::line) {
      s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + fmt(px(xs[i])) + "," + fmt(py(ys[k][i]));
      s += "\"/>\n";
    } else {
      const double slot = pw / static_cast<double>(xs.size()) * 0.8;
      const double w = std::max(0.5, slot / static_cast<double>(nser));
      s += "<g fill=\"" + std::string(color) + "\">\n";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x0 = px(xs[i]) - slot / 2 + w * static_cast<double>(k);
        const double y0 = py(std::max(0.0, ys[k][i]));
        const double y1 = py(std::min(0.0, ys[k][i]));
        s += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y0) + "\" width=\"" + fmt(w) + "\" height=\"" + fmt(y1 - y0) +
             "\"/>\n";
      }
      s += "</g>\n";
    }
  }

  // legend
  for (std::size_t k = 0; k < nser; ++k) {
    const double ly = top + 8 + 16.0 * static_cast<double>(k);
    const double lx = left + pw - 160;
    s += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly - 8) + "\" width=\"10\" height=\"10\" fill=\"" +
         detail::kPalette[k % std::size(detail::kPalette)] + "\"/>\n";
    s += "<text x=\"" + fmt(lx + 16) + "\" y=\"" + fmt(ly + 1) + "\">" + detail::xml_escape(spec.y[k]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

inline void write_svg(const ResultTable& t, const ChartSpec& spec, const std::filesystem::path& path) {
  const std::string svg = render_svg(t, spec);  // throws before touching the file system
  write_atomic(path, svg);
}

}  // namespace su11walk::io
