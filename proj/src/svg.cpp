#include "becgate/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "becgate/errors.hpp"

namespace becgate {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Range {
  double lo, hi;
  double map(double v, double a, double b) const {
    if (hi == lo) return 0.5 * (a + b);
    return a + (v - lo) / (hi - lo) * (b - a);
  }
};

void open_svg(std::ofstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void draw_frame(std::ofstream& out, const Range& xr, const Range& yr,
                const std::string& x_label, const std::string& y_label,
                const std::string& title) {
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0
      << "\" height=\"" << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double px = xr.map(fx, x0, x1);
    out << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px << "\" y2=\""
        << y0 + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << y0 + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const double py = yr.map(fy, y0, y1);
    out << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0 << "\" y2=\""
        << py << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << num(fy) << "</text>\n";
  }
  out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label << "</text>\n"
      << "<text transform=\"translate(16," << (y0 + y1) / 2
      << ") rotate(-90)\" font-size=\"14\" text-anchor=\"middle\">" << y_label
      << "</text>\n"
      << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"24\" font-size=\"15\" "
         "text-anchor=\"middle\">"
      << title << "</text>\n";
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::vector<PlotSeries>& series,
                         const std::string& x_label, const std::string& y_label,
                         const std::string& title) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write svg: " + path);
  Range xr{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  Range yr = xr;
  for (const PlotSeries& s : series) {
    for (double v : s.x) {
      xr.lo = std::min(xr.lo, v);
      xr.hi = std::max(xr.hi, v);
    }
    for (double v : s.y) {
      yr.lo = std::min(yr.lo, v);
      yr.hi = std::max(yr.hi, v);
    }
  }
  if (yr.lo > 0.0 && yr.lo < 0.2 * yr.hi) yr.lo = 0.0;

  open_svg(out);
  draw_frame(out, xr, yr, x_label, y_label, title);
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  for (const PlotSeries& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      out << xr.map(s.x[i], x0, x1) << "," << yr.map(s.y[i], y0, y1) << " ";
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void write_bar_plot_svg(const std::string& path, const std::vector<std::string>& labels,
                        const std::vector<double>& values, const std::string& y_label,
                        const std::string& title) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write svg: " + path);
  Range yr{0.0, 1e-300};
  for (double v : values) yr.hi = std::max(yr.hi, v);

  open_svg(out);
  draw_frame(out, {0, 1}, yr, "", y_label, title);
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  const double slot = double(x1 - x0) / values.size();
  for (size_t i = 0; i < values.size(); ++i) {
    const double bx = x0 + slot * (i + 0.2);
    const double by = yr.map(values[i], y0, y1);
    out << "<rect x=\"" << bx << "\" y=\"" << by << "\" width=\"" << slot * 0.6
        << "\" height=\"" << y0 - by << "\" fill=\"#1f77b4\"/>\n"
        << "<text x=\"" << bx + slot * 0.3 << "\" y=\"" << y0 + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << labels[i] << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace becgate
