#pragma once

#include <string>
#include <vector>

#include "neutrostat/setval.hpp"

namespace neutrostat {

struct SetPoint {
  SetValue x;
  SetValue y;
};

struct ModelSums {
  SetValue Sx, Sy, Sxx, Sxy, Syy;
};

// Least-squares line with set-valued coefficients. The stored sums are exact
// set sums over the data; intercept and slope follow the fit formulas.
struct LinearModel {
  SetValue intercept_a;
  SetValue slope_b;
  ModelSums sums;
  int n = 0;
};

// Textbook (default) mirrors hand computation: the two cross-product terms
// Sx*Sy/n and Sx^2/n are rounded outward to whole numbers (floor the lower
// endpoint, ceil the upper) before subtracting, whenever they are not crisp.
// Exact applies no rounding. Outward rounding only widens the coefficient
// sets, so crisp-selection inclusion survives in both modes.
enum class FitArithmetic { Textbook, Exact };

// Machine-readable advisory attached to a result (never an error).
struct Warning {
  std::string code;
  std::string message;
  std::vector<double> values;
};

struct RSquared {
  SetValue raw;      // 1 - resid/to by set division
  SetValue clipped;  // raw intersected with [0,1]
  std::vector<Warning> warnings;
};

struct Correlation {
  SetValue raw;      // full quotient, may leave [-1,1]
  SetValue clipped;  // raw intersected with [-1,1]
  std::vector<Warning> warnings;
};

enum class ObjectKind { Point, SegmentX, SegmentY, Rectangle };

// Geometric footprint of one observation: crisp/crisp draws a point, one
// set-valued coordinate a segment along that axis, both a rectangle.
struct ScatterObject {
  ObjectKind kind;
  SetValue x;
  SetValue y;
};

struct CrispLine {
  double a;
  double b;
};

struct MidpointRow {
  double predicted;
  double residual;
};

// b = (Sxy - Sx*Sy/n) / (Sxx - Sx^2/n), a = mean(y) - b*mean(x), all in set
// arithmetic. Throws TooFewPoints (n < 2) and DegenerateX (denominator set
// touches 0).
LinearModel ls_fit(const std::vector<SetPoint>& points,
                   FitArithmetic mode = FitArithmetic::Textbook);

// a + b*x.
SetValue predict(const LinearModel& m, const SetValue& x);

// y_i - predict(x_i) per point.
std::vector<SetValue> residuals(const std::vector<SetPoint>& points, const LinearModel& m);

// Whether each y_i lies inside the closed hull of its predicted set.
std::vector<bool> coverage_check(const std::vector<SetPoint>& points, const LinearModel& m);

// Residual sum of squares, midpoint route: sum of squared residual midpoints.
double nss_resid_midpoint(const std::vector<SetPoint>& points, const LinearModel& m);

// Residual sum of squares, set route: Syy - a*Sy - b*Sxy.
SetValue nss_resid_set(const std::vector<SetPoint>& points, const LinearModel& m);

// Total sum of squares about the mean: Syy - mean(y)^2 (the worked-example
// convention; note the mean is squared after dividing by n).
SetValue nss_to(const std::vector<SetPoint>& points);

// 1 - resid/to. Reports the raw set, the [0,1] intersection, and a warning
// pairing each endpoint with the denominator endpoint that produced it.
RSquared r_squared(double resid, const SetValue& to);

// (n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx^2)(n*Syy - Sy^2)), with the raw value
// kept alongside the [-1,1] intersection. Throws DegenerateVariance when a
// variance factor is not strictly positive.
Correlation correlation(const std::vector<SetPoint>& points);

// Crisp line from the set coefficients: midpoints, or caller-chosen points
// validated for membership (PointOutsideSet).
CrispLine deneutrosify(const LinearModel& m);
CrispLine deneutrosify(const LinearModel& m, double a0, double b0);

// Midpoints of each predicted set and residual set.
std::vector<MidpointRow> midpoint_report(const std::vector<SetPoint>& points,
                                         const LinearModel& m);

std::vector<ScatterObject> scatter_objects(const std::vector<SetPoint>& points);

}  // namespace neutrostat
