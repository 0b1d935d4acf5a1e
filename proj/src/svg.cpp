#include "exiso/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "exiso/error.hpp"

namespace exiso {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kMarginLeft = 64, kMarginRight = 16, kMarginTop = 16, kMarginBottom = 48;

const char* kLineColors[] = {"#c62828", "#1565c0", "#2e7d32", "#6a1b9a",
                             "#ef6c00", "#00838f", "#4e342e", "#283593"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const {
    return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    return kHeight - kMarginBottom -
           (y - y_lo) / (y_hi - y_lo) * (kHeight - kMarginTop - kMarginBottom);
  }
};

void open_svg(std::ostringstream& svg) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& svg, const Frame& fr, const std::string& xlab,
          const std::string& ylab) {
  svg << "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<path d=\"M" << fr.px(fr.x_lo) << " " << fr.py(fr.y_hi) << " L" << fr.px(fr.x_lo)
      << " " << fr.py(fr.y_lo) << " L" << fr.px(fr.x_hi) << " " << fr.py(fr.y_lo)
      << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double x = fr.x_lo + (fr.x_hi - fr.x_lo) * k / 4.0;
    const double y = fr.y_lo + (fr.y_hi - fr.y_lo) * k / 4.0;
    svg << "<text x=\"" << fr.px(x) << "\" y=\"" << kHeight - kMarginBottom + 16
        << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    svg << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << fr.py(y) + 4
        << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  svg << "<text x=\"" << (kMarginLeft + kWidth - kMarginRight) / 2 << "\" y=\""
      << kHeight - 12 << "\" text-anchor=\"middle\" font-size=\"13\">" << xlab
      << "</text>\n";
  svg << "<text x=\"14\" y=\"" << (kMarginTop + kHeight - kMarginBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 "
      << (kMarginTop + kHeight - kMarginBottom) / 2 << ")\">" << ylab << "</text>\n";
  svg << "</g>\n";
}

void polyline(std::ostringstream& svg, const Frame& fr, const std::vector<Vec2>& pts,
              const std::string& color, double width, const std::string& dash = "") {
  svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\"";
  if (!dash.empty()) svg << " stroke-dasharray=\"" << dash << "\"";
  svg << " points=\"";
  for (const Vec2& p : pts) {
    const double px = std::clamp(fr.px(p.x), -2000.0, 3000.0);
    const double py = std::clamp(fr.py(p.y), -2000.0, 3000.0);
    svg << fmt(px) << "," << fmt(py) << " ";
  }
  svg << "\"/>\n";
}

void save(const std::string& path, const std::ostringstream& svg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot open for writing: " + path);
  out << svg.str() << "</svg>\n";
}

}  // namespace

void write_isolines_svg(const std::string& path, const BivariateSample& sample,
                        std::span<const Isoline> isolines) {
  const auto [x_lo_it, x_hi_it] = std::minmax_element(sample.x1.begin(), sample.x1.end());
  const auto [y_lo_it, y_hi_it] = std::minmax_element(sample.x2.begin(), sample.x2.end());
  Frame fr{*x_lo_it, *x_hi_it, *y_lo_it, *y_hi_it};
  const double dx = (fr.x_hi - fr.x_lo) * 0.05, dy = (fr.y_hi - fr.y_lo) * 0.05;
  fr.x_lo -= dx;
  fr.x_hi += dx;
  fr.y_lo -= dy;
  fr.y_hi += dy;

  std::ostringstream svg;
  open_svg(svg);
  svg << "<g fill=\"#9e9e9e\" fill-opacity=\"0.55\">\n";
  for (std::size_t i = 0; i < sample.size(); ++i)
    svg << "<circle cx=\"" << fmt(fr.px(sample.x1[i])) << "\" cy=\""
        << fmt(fr.py(sample.x2[i])) << "\" r=\"1.6\"/>\n";
  svg << "</g>\n";
  for (std::size_t k = 0; k < isolines.size(); ++k) {
    const std::string color = kLineColors[k % 8];
    polyline(svg, fr, isolines[k].points, color, 1.8);
    if (!isolines[k].points.empty()) {
      const Vec2& p = isolines[k].points.front();
      svg << "<text x=\"" << fmt(std::clamp(fr.px(p.x), 10.0, kWidth - 60.0)) << "\" y=\""
          << fmt(std::clamp(fr.py(p.y) - 4, 12.0, kHeight - 4.0))
          << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << color << "\">p="
          << fmt(isolines[k].level) << "</text>\n";
    }
  }
  axes(svg, fr, sample.labels[0], sample.labels[1]);
  save(path, svg);
}

void write_diagnostic_svg(const std::string& path, const DiagnosticReport& report) {
  double top = report.upper * 1.6;
  for (const ProbePoint& probe : report.probes) top = std::max(top, probe.emp_prob * 1.2);
  Frame fr{0.0, static_cast<double>(std::max<std::size_t>(report.probes.size(), 2) - 1),
           0.0, top};

  std::ostringstream svg;
  open_svg(svg);
  const double y_level = fr.py(report.level);
  svg << "<line x1=\"" << fr.px(fr.x_lo) << "\" x2=\"" << fr.px(fr.x_hi) << "\" y1=\""
      << y_level << "\" y2=\"" << y_level << "\" stroke=\"#333\" stroke-width=\"1.2\"/>\n";
  for (double bound : {report.lower, report.upper}) {
    const double y = fr.py(bound);
    svg << "<line x1=\"" << fr.px(fr.x_lo) << "\" x2=\"" << fr.px(fr.x_hi) << "\" y1=\""
        << y << "\" y2=\"" << y
        << "\" stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  }
  svg << "<g fill=\"#c62828\">\n";
  for (std::size_t i = 0; i < report.probes.size(); ++i)
    svg << "<circle cx=\"" << fmt(fr.px(static_cast<double>(i))) << "\" cy=\""
        << fmt(fr.py(report.probes[i].emp_prob)) << "\" r=\"3\"/>\n";
  svg << "</g>\n";
  axes(svg, fr, "probe index", "empirical survival probability");
  save(path, svg);
}

void write_bootstrap_svg(const std::string& path, const BivariateSample& sample,
                         const BootstrapResult& result, const Isoline* original) {
  const auto [x_lo_it, x_hi_it] = std::minmax_element(sample.x1.begin(), sample.x1.end());
  const auto [y_lo_it, y_hi_it] = std::minmax_element(sample.x2.begin(), sample.x2.end());
  Frame fr{*x_lo_it, *x_hi_it, *y_lo_it, *y_hi_it};

  std::ostringstream svg;
  open_svg(svg);
  svg << "<g fill=\"#bdbdbd\" fill-opacity=\"0.5\">\n";
  for (std::size_t i = 0; i < sample.size(); ++i)
    svg << "<circle cx=\"" << fmt(fr.px(sample.x1[i])) << "\" cy=\""
        << fmt(fr.py(sample.x2[i])) << "\" r=\"1.4\"/>\n";
  svg << "</g>\n";
  for (const Isoline& iso : result.isolines)
    polyline(svg, fr, iso.points, "#90caf9", 0.8);
  if (original) polyline(svg, fr, original->points, "#c62828", 2.0);
  axes(svg, fr, sample.labels[0], sample.labels[1]);
  save(path, svg);
}

}  // namespace exiso
