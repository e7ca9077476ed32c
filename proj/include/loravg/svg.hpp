#pragma once

// Deterministic SVG output: step plots for rearrangements and distribution
// functions, and a small line chart for probe tables.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "loravg/error.hpp"
#include "loravg/step_function.hpp"

namespace loravg {

/// Writes to `path` through a sibling temporary file and a rename.
inline void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot open \"" + path + "\" for writing");
    out << content;
    out.flush();
    if (!out) throw error("failed writing \"" + path + "\"");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw error("cannot move output into place at \"" + path + "\"");
  }
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double width = 640, height = 400, left = 60, right = 20, top = 20, bottom = 50;
  double xmax = 1, ymax = 1;

  double x(double t) const { return left + (width - left - right) * t / xmax; }
  double y(double v) const { return height - bottom - (height - top - bottom) * v / ymax; }
};

inline void axes(std::string& s, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  s += "<line x1=\"" + px(f.x(0)) + "\" y1=\"" + px(f.y(0)) + "\" x2=\"" + px(f.x(f.xmax)) + "\" y2=\"" +
       px(f.y(0)) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + px(f.x(0)) + "\" y1=\"" + px(f.y(0)) + "\" x2=\"" + px(f.x(0)) + "\" y2=\"" +
       px(f.y(f.ymax)) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + px((f.x(0) + f.x(f.xmax)) / 2) + "\" y=\"" + px(f.height - 10) +
       "\" text-anchor=\"middle\" font-size=\"14\">" + xlabel + "</text>\n";
  s += "<text x=\"15\" y=\"" + px((f.y(0) + f.y(f.ymax)) / 2) + "\" text-anchor=\"middle\" font-size=\"14\" " +
       "transform=\"rotate(-90 15 " + px((f.y(0) + f.y(f.ymax)) / 2) + ")\">" + ylabel + "</text>\n";
}

inline void xtick(std::string& s, const Frame& f, double t) {
  s += "<line x1=\"" + px(f.x(t)) + "\" y1=\"" + px(f.y(0)) + "\" x2=\"" + px(f.x(t)) + "\" y2=\"" +
       px(f.y(0) + 5) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + px(f.x(t)) + "\" y=\"" + px(f.y(0) + 18) + "\" text-anchor=\"middle\" font-size=\"11\">" +
       num(t) + "</text>\n";
}

inline void ytick(std::string& s, const Frame& f, double v) {
  s += "<line x1=\"" + px(f.x(0) - 5) + "\" y1=\"" + px(f.y(v)) + "\" x2=\"" + px(f.x(0)) + "\" y2=\"" +
       px(f.y(v)) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + px(f.x(0) - 8) + "\" y=\"" + px(f.y(v) + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
       num(v) + "</text>\n";
}

inline std::string header(const Frame& f) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         px(f.width) + "\" height=\"" + px(f.height) + "\" viewBox=\"0 0 " + px(f.width) + " " + px(f.height) +
         "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

} // namespace detail

/// Step plot: one horizontal segment per level, filled marker at the closed
/// left end, hollow marker at the open right end.
inline std::string step_svg(const StepFunction& sf, const std::string& xlabel = "t",
                            const std::string& ylabel = "value") {
  detail::Frame fr;
  const auto t = sf.breakpoints();
  const auto v = sf.levels();
  fr.xmax = sf.is_zero() ? 1.0 : 1.1 * sf.support_end();
  fr.ymax = sf.is_zero() ? 1.0 : 1.1 * v[0];
  std::string s = detail::header(fr);
  detail::axes(s, fr, xlabel, ylabel);
  for (std::size_t i = 1; i < t.size(); ++i) detail::xtick(s, fr, t[i]);
  for (double lv : v) detail::ytick(s, fr, lv);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x0 = fr.x(t[i]), x1 = fr.x(t[i + 1]), y = fr.y(v[i]);
    s += "<line class=\"step\" x1=\"" + detail::px(x0) + "\" y1=\"" + detail::px(y) + "\" x2=\"" +
         detail::px(x1) + "\" y2=\"" + detail::px(y) + "\" stroke=\"steelblue\" stroke-width=\"2\"/>\n";
    s += "<circle cx=\"" + detail::px(x0) + "\" cy=\"" + detail::px(y) + "\" r=\"3\" fill=\"steelblue\"/>\n";
    s += "<circle cx=\"" + detail::px(x1) + "\" cy=\"" + detail::px(y) +
         "\" r=\"3\" fill=\"white\" stroke=\"steelblue\"/>\n";
  }
  if (!sf.is_zero()) {
    // zero tail
    const double y = fr.y(0);
    s += "<line class=\"step\" x1=\"" + detail::px(fr.x(sf.support_end())) + "\" y1=\"" + detail::px(y) +
         "\" x2=\"" + detail::px(fr.x(fr.xmax)) + "\" y2=\"" + detail::px(y) +
         "\" stroke=\"steelblue\" stroke-width=\"2\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

inline void emit_step_svg(const StepFunction& sf, const std::string& path, const std::string& xlabel = "t",
                          const std::string& ylabel = "value") {
  write_atomic(path, step_svg(sf, xlabel, ylabel));
}

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

inline std::string line_chart_svg(const std::vector<Series>& series, const std::string& xlabel,
                                  const std::string& ylabel) {
  detail::Frame fr;
  fr.xmax = 0;
  fr.ymax = 0;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      fr.xmax = std::max(fr.xmax, x);
      fr.ymax = std::max(fr.ymax, y);
    }
  fr.xmax = fr.xmax > 0 ? 1.05 * fr.xmax : 1.0;
  fr.ymax = fr.ymax > 0 ? 1.1 * fr.ymax : 1.0;
  std::string out = detail::header(fr);
  detail::axes(out, fr, xlabel, ylabel);
  for (int i = 1; i <= 4; ++i) {
    detail::xtick(out, fr, fr.xmax * i / 4.4);
    detail::ytick(out, fr, fr.ymax * i / 4.4);
  }
  double legend_y = fr.top + 10;
  for (const auto& s : series) {
    std::string pts;
    for (const auto& [x, y] : s.points) pts += detail::px(fr.x(x)) + "," + detail::px(fr.y(y)) + " ";
    if (!pts.empty()) pts.pop_back();
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    out += "<text x=\"" + detail::px(fr.x(0) + 10) + "\" y=\"" + detail::px(legend_y) + "\" font-size=\"12\" fill=\"" +
           s.color + "\">" + s.name + "</text>\n";
    legend_y += 16;
  }
  out += "</svg>\n";
  return out;
}

} // namespace loravg
