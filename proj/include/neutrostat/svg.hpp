#pragma once

#include <string>
#include <vector>

#include "neutrostat/regression.hpp"
#include "neutrostat/setval.hpp"

namespace neutrostat {

// One histogram bar: a category spanning [x_lo, x_hi] on the horizontal axis
// with a set-valued frequency; drawing uses the frequency's closed hull.
struct HistogramBar {
  double x_lo = 0;
  double x_hi = 0;
  SetValue freq;
};

// Standalone SVG document. Each bar is solid up to the infimum of its
// frequency; if the supremum is larger, the remainder is drawn hatched.
// Output is a deterministic function of the input (fixed canvas, fixed
// number formatting, no timestamps).
std::string svg_histogram(const std::vector<HistogramBar>& bars);

// Standalone SVG document: points as circles, segments as lines, rectangles
// as outlined boxes. When fit is non-null the band between the two extreme
// fitted lines y = inf(a) + inf(b) x and y = sup(a) + sup(b) x is shaded
// across the data's x-range. Deterministic like svg_histogram.
std::string svg_scatter(const std::vector<ScatterObject>& objects,
                        const LinearModel* fit = nullptr);

// Writes content to path, creating or truncating the file; IoError when the
// file cannot be opened or written.
void write_file(const std::string& content, const std::string& path);

}  // namespace neutrostat
