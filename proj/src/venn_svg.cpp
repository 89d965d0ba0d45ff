#include "varpart/venn_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "varpart/error.hpp"
#include "varpart/format.hpp"

namespace varpart {

namespace {

constexpr double kMargin = 40.0;
constexpr double kMaxRadius = 140.0;
constexpr double kGap = 60.0;
constexpr double kLineHeight = 20.0;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct LegendLine {
  std::string label;
  double value;
};

std::vector<LegendLine> legend_lines(const VennRegions& v) {
  std::vector<LegendLine> lines;
  for (const auto& [name, ss] : v.unique) lines.push_back({"unique " + name, ss});
  lines.push_back({v.suppression() ? "common (suppression)" : "common", v.common_total});
  lines.push_back({"residual", v.residual});
  lines.push_back({"missing", v.missing});
  lines.push_back({"total", v.ss_total});
  return lines;
}

void write_header(std::ostringstream& out, double width, double height,
                  const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << num(width) << "\" height=\"" << num(height) << "\" viewBox=\"0 0 "
      << num(width) << ' ' << num(height) << "\">\n"
      << "  <title>" << escape(title) << "</title>\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" fill=\"white\"/>\n";
}

void write_legend(std::ostringstream& out, const VennRegions& v, double top) {
  double y = top;
  for (const auto& line : legend_lines(v)) {
    out << "  <text x=\"" << num(kMargin) << "\" y=\"" << num(y)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << escape(line.label)
        << ": " << fixed2(line.value) << "</text>\n";
    y += kLineHeight;
  }
}

std::string two_set_svg(const VennRegions& v, const std::string& response) {
  const VennLayout g = two_set_layout(v);
  std::ostringstream out;
  write_header(out, g.width, g.height, "Variation of " + response + " by region");
  const char* colors[] = {"#1f77b4", "#ff7f0e"};
  const SvgCircle* circles[] = {&g.first, &g.second};
  for (int k = 0; k < 2; ++k) {
    const auto& c = *circles[k];
    out << "  <circle id=\"region-" << escape(v.unique[k].first) << "\" cx=\""
        << num(c.cx) << "\" cy=\"" << num(c.cy) << "\" r=\"" << num(c.r)
        << "\" fill=\"" << colors[k]
        << "\" fill-opacity=\"0.45\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << num(c.cx) << "\" y=\"" << num(c.cy - c.r - 8.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << escape(v.unique[k].first) << "</text>\n";
  }
  out << "  <rect id=\"region-residual\" x=\"" << num(g.residual_x) << "\" y=\""
      << num(g.residual_y) << "\" width=\"" << num(g.residual_side)
      << "\" height=\"" << num(g.residual_side)
      << "\" fill=\"#cccccc\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "  <text x=\"" << num(g.residual_x + g.residual_side / 2.0) << "\" y=\""
      << num(g.residual_y - 8.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << "residual</text>\n";
  const double diagram_bottom =
      kMargin + 2.0 * std::max({g.first.r, g.second.r, g.residual_side / 2.0});
  write_legend(out, v, diagram_bottom + 2.0 * kLineHeight);
  out << "</svg>\n";
  return out.str();
}

std::string bar_svg(const VennRegions& v, const std::string& response) {
  const auto lines = legend_lines(v);
  double largest = 0.0;
  for (const auto& l : lines) largest = std::max(largest, std::fabs(l.value));
  const double bar_max = 400.0;
  const double px = largest > 0.0 ? bar_max / largest : 0.0;
  const double label_width = 220.0;
  const double width = 2.0 * kMargin + label_width + bar_max + 120.0;
  const double height = 2.0 * kMargin + kLineHeight * 1.5 * static_cast<double>(lines.size());
  std::ostringstream out;
  write_header(out, width, height, "Variation of " + response + " by region");
  double y = kMargin;
  for (const auto& l : lines) {
    const double w = std::fabs(l.value) * px;
    out << "  <text x=\"" << num(kMargin) << "\" y=\"" << num(y + 13.0)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << escape(l.label)
        << "</text>\n";
    out << "  <rect x=\"" << num(kMargin + label_width) << "\" y=\"" << num(y)
        << "\" width=\"" << num(w) << "\" height=\"" << num(kLineHeight - 4.0)
        << "\" fill=\"" << (l.value < 0.0 ? "#d62728" : "#1f77b4") << "\"/>\n";
    out << "  <text x=\"" << num(kMargin + label_width + w + 6.0) << "\" y=\""
        << num(y + 13.0) << "\" font-family=\"sans-serif\" font-size=\"13\">"
        << fixed2(l.value) << "</text>\n";
    y += kLineHeight * 1.5;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

double lens_area(double r1, double r2, double d) {
  if (r1 <= 0.0 || r2 <= 0.0 || d >= r1 + r2) return 0.0;
  const double small = std::min(r1, r2);
  if (d <= std::fabs(r1 - r2)) return std::numbers::pi * small * small;
  const double a1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
  const double a2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * std::acos(a1) + r2 * r2 * std::acos(a2) -
         0.5 * std::sqrt(std::max(k, 0.0));
}

VennLayout two_set_layout(const VennRegions& v) {
  if (v.unique.size() != 2) {
    throw Error(ErrorKind::InvalidArgument, "two-set layout needs exactly two predictors");
  }
  const double common = std::max(v.common_total, 0.0);
  const double area1 = std::max(v.unique[0].second, 0.0) + common;
  const double area2 = std::max(v.unique[1].second, 0.0) + common;
  const double largest = std::max({area1, area2, v.residual});

  VennLayout g;
  g.px_per_ss = largest > 0.0 ? std::numbers::pi * kMaxRadius * kMaxRadius / largest : 0.0;
  const double r1 = std::sqrt(area1 * g.px_per_ss / std::numbers::pi);
  const double r2 = std::sqrt(area2 * g.px_per_ss / std::numbers::pi);
  const double target = common * g.px_per_ss;

  double d = r1 + r2 + kGap / 3.0;
  if (target > 0.0) {
    double lo = std::fabs(r1 - r2);
    double hi = r1 + r2;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (lens_area(r1, r2, mid) > target) lo = mid; else hi = mid;
    }
    d = 0.5 * (lo + hi);
  }
  const double tall = std::max({r1, r2, 0.0});
  g.first = {kMargin + r1, kMargin + tall, r1};
  g.second = {g.first.cx + d, kMargin + tall, r2};
  g.lens_area = lens_area(r1, r2, d);
  g.residual_side = std::sqrt(v.residual * g.px_per_ss);
  const double right_edge = std::max(g.first.cx + r1, g.second.cx + r2);
  g.residual_x = right_edge + kGap;
  g.residual_y = kMargin + tall - g.residual_side / 2.0;
  if (g.residual_y < kMargin) g.residual_y = kMargin;
  g.width = g.residual_x + g.residual_side + kMargin;
  const double diagram_bottom = kMargin + 2.0 * std::max(tall, g.residual_side / 2.0);
  g.height = diagram_bottom + 2.0 * kLineHeight +
             kLineHeight * static_cast<double>(v.unique.size() + 4) + kMargin;
  return g;
}

std::string venn_svg(const VennRegions& v, const std::string& response) {
  if (v.unique.size() == 2) return two_set_svg(v, response);
  return bar_svg(v, response);
}

}  // namespace varpart
