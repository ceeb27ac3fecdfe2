#include "neutrostat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace neutrostat {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kPad = 48;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // avoid the two distinct zero spellings "-0.00" / "0.00"
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

// Affine map from a data range onto a pixel range (y maps run downward).
struct Axis {
  double lo, hi, px0, px1;
  double operator()(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

void expand(double& lo, double& hi) {
  if (lo > hi) std::swap(lo, hi);
  double span = hi - lo;
  if (span == 0) span = std::max(1.0, std::abs(lo));
  lo -= 0.05 * span;
  hi += 0.05 * span;
}

std::string document(const std::string& body, bool hatch) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  if (hatch)
    out << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
           "patternUnits=\"userSpaceOnUse\"><path d=\"M0,6 L6,0\" stroke=\"#1f6fb4\" "
           "stroke-width=\"1\"/></pattern></defs>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n"
      << body << "<path d=\"M" << fmt(kPad) << "," << fmt(kPad) << " L" << fmt(kPad) << ","
      << fmt(kHeight - kPad) << " L" << fmt(kWidth - kPad) << "," << fmt(kHeight - kPad)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
      << "</svg>\n";
  return out.str();
}

}  // namespace

std::string svg_histogram(const std::vector<HistogramBar>& bars) {
  double xmin = 0, xmax = 1, ymax = 1;
  if (!bars.empty()) {
    xmin = bars.front().x_lo;
    xmax = bars.front().x_hi;
    ymax = 0;
    for (const auto& b : bars) {
      xmin = std::min(xmin, std::min(b.x_lo, b.x_hi));
      xmax = std::max(xmax, std::max(b.x_lo, b.x_hi));
      ymax = std::max(ymax, b.freq.supremum());
    }
    if (ymax <= 0) ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
  }
  Axis X{xmin, xmax, kPad, kWidth - kPad};
  Axis Y{0, 1.05 * ymax, kHeight - kPad, kPad};

  bool any_hatch = false;
  std::ostringstream body;
  for (const auto& b : bars) {
    const double lo = std::max(0.0, b.freq.infimum());
    const double hi = std::max(lo, b.freq.supremum());
    const double x = X(std::min(b.x_lo, b.x_hi));
    const double w = std::abs(X(b.x_hi) - X(b.x_lo));
    if (lo > 0)
      body << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(Y(lo)) << "\" width=\"" << fmt(w)
           << "\" height=\"" << fmt(Y(0) - Y(lo)) << "\" fill=\"#1f6fb4\"/>\n";
    if (hi > lo) {
      any_hatch = true;
      body << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(Y(hi)) << "\" width=\"" << fmt(w)
           << "\" height=\"" << fmt(Y(lo) - Y(hi)) << "\" fill=\"url(#hatch)\"/>\n";
    }
    body << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(Y(hi)) << "\" width=\"" << fmt(w)
         << "\" height=\"" << fmt(Y(0) - Y(hi))
         << "\" fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1\"/>\n";
  }
  return document(body.str(), any_hatch);
}

std::string svg_scatter(const std::vector<ScatterObject>& objects, const LinearModel* fit) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& o : objects) {
    const double xl = o.x.infimum(), xh = o.x.supremum();
    const double yl = o.y.infimum(), yh = o.y.supremum();
    if (first) {
      xmin = xl, xmax = xh, ymin = yl, ymax = yh;
      first = false;
    } else {
      xmin = std::min(xmin, xl), xmax = std::max(xmax, xh);
      ymin = std::min(ymin, yl), ymax = std::max(ymax, yh);
    }
  }
  const double band_x0 = xmin, band_x1 = xmax;  // band clamps to the data x-range
  double b0lo = 0, b0hi = 0, b1lo = 0, b1hi = 0;
  if (fit) {
    const double alo = fit->intercept_a.infimum(), ahi = fit->intercept_a.supremum();
    const double blo = fit->slope_b.infimum(), bhi = fit->slope_b.supremum();
    b0lo = alo + blo * band_x0, b0hi = ahi + bhi * band_x0;
    b1lo = alo + blo * band_x1, b1hi = ahi + bhi * band_x1;
    ymin = std::min({ymin, b0lo, b0hi, b1lo, b1hi});
    ymax = std::max({ymax, b0lo, b0hi, b1lo, b1hi});
  }
  expand(xmin, xmax);
  expand(ymin, ymax);
  Axis X{xmin, xmax, kPad, kWidth - kPad};
  Axis Y{ymin, ymax, kHeight - kPad, kPad};

  std::ostringstream body;
  if (fit && !objects.empty())
    body << "<polygon points=\"" << fmt(X(band_x0)) << "," << fmt(Y(b0lo)) << " "
         << fmt(X(band_x1)) << "," << fmt(Y(b1lo)) << " " << fmt(X(band_x1)) << ","
         << fmt(Y(b1hi)) << " " << fmt(X(band_x0)) << "," << fmt(Y(b0hi))
         << "\" fill=\"#cfe3f5\" stroke=\"#7da7cc\" stroke-width=\"1\"/>\n";
  for (const auto& o : objects) {
    switch (o.kind) {
      case ObjectKind::Point:
        body << "<circle cx=\"" << fmt(X(o.x.infimum())) << "\" cy=\"" << fmt(Y(o.y.infimum()))
             << "\" r=\"4\" fill=\"#1f6fb4\"/>\n";
        break;
      case ObjectKind::SegmentX:
        body << "<line x1=\"" << fmt(X(o.x.infimum())) << "\" y1=\"" << fmt(Y(o.y.infimum()))
             << "\" x2=\"" << fmt(X(o.x.supremum())) << "\" y2=\"" << fmt(Y(o.y.infimum()))
             << "\" stroke=\"#1f6fb4\" stroke-width=\"3\" stroke-linecap=\"round\"/>\n";
        break;
      case ObjectKind::SegmentY:
        body << "<line x1=\"" << fmt(X(o.x.infimum())) << "\" y1=\"" << fmt(Y(o.y.infimum()))
             << "\" x2=\"" << fmt(X(o.x.infimum())) << "\" y2=\"" << fmt(Y(o.y.supremum()))
             << "\" stroke=\"#1f6fb4\" stroke-width=\"3\" stroke-linecap=\"round\"/>\n";
        break;
      case ObjectKind::Rectangle:
        body << "<rect x=\"" << fmt(X(o.x.infimum())) << "\" y=\"" << fmt(Y(o.y.supremum()))
             << "\" width=\"" << fmt(X(o.x.supremum()) - X(o.x.infimum())) << "\" height=\""
             << fmt(Y(o.y.infimum()) - Y(o.y.supremum()))
             << "\" fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"2\"/>\n";
        break;
    }
  }
  return document(body.str(), false);
}

void write_file(const std::string& content, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("IoError", "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw DomainError("IoError", "failed writing " + path);
}

}  // namespace neutrostat
