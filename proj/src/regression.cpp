#include "neutrostat/regression.hpp"

#include <cmath>

namespace neutrostat {

namespace {

ModelSums data_sums(const std::vector<SetPoint>& points) {
  ModelSums s{SetValue(0.0), SetValue(0.0), SetValue(0.0), SetValue(0.0), SetValue(0.0)};
  for (const SetPoint& p : points) {
    s.Sx = add(s.Sx, p.x);
    s.Sy = add(s.Sy, p.y);
    s.Sxx = add(s.Sxx, pow(p.x, 2));
    s.Sxy = add(s.Sxy, mul(p.x, p.y));
    s.Syy = add(s.Syy, pow(p.y, 2));
  }
  return s;
}

// Endpoints of every non-crisp piece move outward to the next whole number.
SetValue round_outward(const SetValue& s) {
  if (s.is_crisp()) return s;
  std::vector<Atom> atoms = s.atoms();
  for (Atom& a : atoms) {
    a.lo = std::floor(a.lo);
    a.hi = std::ceil(a.hi);
  }
  return SetValue::from_atoms(std::move(atoms));
}

}  // namespace

LinearModel ls_fit(const std::vector<SetPoint>& points, FitArithmetic mode) {
  if (points.size() < 2) throw DomainError("TooFewPoints", "need at least two points to fit");
  int n = static_cast<int>(points.size());
  ModelSums s = data_sums(points);

  SetValue num_sub = div(mul(s.Sx, s.Sy), SetValue(double(n)));
  SetValue den_sub = div(pow(s.Sx, 2), SetValue(double(n)));
  if (mode == FitArithmetic::Textbook) {
    num_sub = round_outward(num_sub);
    den_sub = round_outward(den_sub);
  }
  SetValue num = sub(s.Sxy, num_sub);
  SetValue den = sub(s.Sxx, den_sub);

  LinearModel m;
  try {
    m.slope_b = div(num, den);
  } catch (const DomainError&) {
    throw DomainError("DegenerateX", "slope denominator set touches zero");
  }
  SetValue mean_x = div(s.Sx, SetValue(double(n)));
  SetValue mean_y = div(s.Sy, SetValue(double(n)));
  m.intercept_a = sub(mean_y, mul(m.slope_b, mean_x));
  m.sums = s;
  m.n = n;
  return m;
}

SetValue predict(const LinearModel& m, const SetValue& x) {
  return add(m.intercept_a, mul(m.slope_b, x));
}

std::vector<SetValue> residuals(const std::vector<SetPoint>& points, const LinearModel& m) {
  std::vector<SetValue> out;
  out.reserve(points.size());
  for (const SetPoint& p : points) out.push_back(sub(p.y, predict(m, p.x)));
  return out;
}

std::vector<bool> coverage_check(const std::vector<SetPoint>& points, const LinearModel& m) {
  std::vector<bool> out;
  out.reserve(points.size());
  for (const SetPoint& p : points) {
    SetValue hat = predict(m, p.x);
    out.push_back(p.y.infimum() >= hat.infimum() && p.y.supremum() <= hat.supremum());
  }
  return out;
}

double nss_resid_midpoint(const std::vector<SetPoint>& points, const LinearModel& m) {
  double sum = 0;
  for (const SetValue& r : residuals(points, m)) {
    double mid = midpoint(r);
    sum += mid * mid;
  }
  return sum;
}

SetValue nss_resid_set(const std::vector<SetPoint>& points, const LinearModel& m) {
  ModelSums s = data_sums(points);
  return sub(sub(s.Syy, mul(m.intercept_a, s.Sy)), mul(m.slope_b, s.Sxy));
}

SetValue nss_to(const std::vector<SetPoint>& points) {
  if (points.empty()) throw DomainError("TooFewPoints", "need data");
  ModelSums s = data_sums(points);
  SetValue mean_y = div(s.Sy, SetValue(double(points.size())));
  return sub(s.Syy, pow(mean_y, 2));
}

RSquared r_squared(double resid, const SetValue& to) {
  RSquared r;
  r.raw = sub(SetValue(1.0), div(SetValue(resid), to));
  r.clipped = clip(r.raw, 0.0, 1.0);
  if (!to.is_crisp()) {
    r.warnings.push_back(
        {"EndpointDenominators",
         "each endpoint divides the residual sum by the opposite denominator endpoint: "
         "lower = 1 - resid/inf(to), upper = 1 - resid/sup(to)",
         {to.infimum(), r.raw.infimum(), to.supremum(), r.raw.supremum()}});
  }
  if (r.raw.infimum() < 0 || r.raw.supremum() > 1)
    r.warnings.push_back({"RawOutsideUnitRange",
                          "raw determination set leaves [0,1]; clipped value reported",
                          {r.raw.infimum(), r.raw.supremum()}});
  return r;
}

Correlation correlation(const std::vector<SetPoint>& points) {
  if (points.size() < 2) throw DomainError("TooFewPoints", "need at least two points");
  ModelSums s = data_sums(points);
  SetValue nn{static_cast<double>(points.size())};
  SetValue num = sub(mul(nn, s.Sxy), mul(s.Sx, s.Sy));
  SetValue vx = sub(mul(nn, s.Sxx), pow(s.Sx, 2));
  SetValue vy = sub(mul(nn, s.Syy), pow(s.Sy, 2));
  if (!(vx.infimum() > 0) || !(vy.infimum() > 0))
    throw DomainError("DegenerateVariance", "variance factor sets must be strictly positive");
  Correlation c;
  c.raw = div(num, nth_root(mul(vx, vy), 2));
  c.clipped = clip(c.raw, -1.0, 1.0);
  if (c.raw.infimum() < -1 || c.raw.supremum() > 1)
    c.warnings.push_back({"RawOutsideUnitInterval",
                          "raw correlation set leaves [-1,1]; clipped value reported",
                          {c.raw.infimum(), c.raw.supremum()}});
  return c;
}

CrispLine deneutrosify(const LinearModel& m) {
  return {midpoint(m.intercept_a), midpoint(m.slope_b)};
}

CrispLine deneutrosify(const LinearModel& m, double a0, double b0) {
  if (!m.intercept_a.contains(a0))
    throw DomainError("PointOutsideSet", "chosen intercept lies outside the intercept set");
  if (!m.slope_b.contains(b0))
    throw DomainError("PointOutsideSet", "chosen slope lies outside the slope set");
  return {a0, b0};
}

std::vector<MidpointRow> midpoint_report(const std::vector<SetPoint>& points,
                                         const LinearModel& m) {
  std::vector<MidpointRow> rows;
  rows.reserve(points.size());
  for (const SetPoint& p : points) {
    SetValue hat = predict(m, p.x);
    rows.push_back({midpoint(hat), midpoint(sub(p.y, hat))});
  }
  return rows;
}

std::vector<ScatterObject> scatter_objects(const std::vector<SetPoint>& points) {
  std::vector<ScatterObject> objs;
  objs.reserve(points.size());
  for (const SetPoint& p : points) {
    ObjectKind k;
    if (p.x.is_crisp() && p.y.is_crisp())
      k = ObjectKind::Point;
    else if (p.y.is_crisp())
      k = ObjectKind::SegmentX;
    else if (p.x.is_crisp())
      k = ObjectKind::SegmentY;
    else
      k = ObjectKind::Rectangle;
    objs.push_back({k, p.x, p.y});
  }
  return objs;
}

}  // namespace neutrostat
