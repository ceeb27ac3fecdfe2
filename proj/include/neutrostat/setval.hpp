#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace neutrostat {

// Error with a stable machine-readable code (e.g. "DivisorContainsZero").
// The CLI maps these to exit code 2 and echoes the code in its report.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

enum class Ordering3 { Less, Equal, Greater };

enum class Kind { Crisp, Interval, Finite, Union };

// One maximal connected piece of a SetValue: a single point (lo == hi, both
// flags false) or an interval with independently open/closed endpoints.
struct Atom {
  double lo = 0;
  double hi = 0;
  bool lo_open = false;
  bool hi_open = false;

  bool is_point() const { return lo == hi; }
  bool operator==(const Atom&) const = default;
};

// A nonempty bounded subset of the reals: crisp number, interval, finite set,
// or a union of those. Canonical form: atoms sorted ascending, pairwise
// disjoint, never mergeable (no overlap, no closed touch). Equality is
// structural on the canonical form, so [5,5] == Crisp(5) and unions built in
// any part order compare equal.
class SetValue {
public:
  SetValue() : atoms_{Atom{}} {}
  SetValue(double v) : atoms_{Atom{v, v, false, false}} {}  // NOLINT: implicit by design

  static SetValue interval(double lo, double hi, bool lo_open = false, bool hi_open = false);
  static SetValue finite(std::vector<double> elements);
  static SetValue make_union(const std::vector<SetValue>& parts);
  // Normalizes arbitrary atoms (sort, merge overlaps, collapse degenerates).
  static SetValue from_atoms(std::vector<Atom> atoms);

  Kind kind() const;
  const std::vector<Atom>& atoms() const { return atoms_; }

  double infimum() const { return atoms_.front().lo; }
  double supremum() const { return atoms_.back().hi; }
  bool inf_attained() const { return !atoms_.front().lo_open; }
  bool sup_attained() const { return !atoms_.back().hi_open; }

  bool is_crisp() const { return atoms_.size() == 1 && atoms_.front().is_point(); }
  double crisp_value() const;
  // True when the value is a point or a finite set of points.
  bool all_points() const;
  std::vector<double> points() const;

  bool contains(double x) const;

  bool operator==(const SetValue&) const = default;

private:
  explicit SetValue(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

// Arithmetic. Exact elementwise results when one operand is crisp or both are
// finite point sets; anything else involving an interval or union collapses to
// the hull interval [inf op inf, sup op sup] (with the matching corner rule per
// op). Endpoint open flags track whether the bound is attained by an attained
// pair of operand bounds; the numeric semantics are always the closed hull.
SetValue add(const SetValue& s1, const SetValue& s2);
SetValue sub(const SetValue& s1, const SetValue& s2);
SetValue mul(const SetValue& s1, const SetValue& s2);
// Throws DivisorContainsZero when s2 contains 0 (for point-set divisors:
// exact membership; otherwise: the closed hull of s2 contains 0).
SetValue div(const SetValue& s1, const SetValue& s2);

// True image {x^n : x in s}; unions keep their structure. n >= 1.
SetValue pow(const SetValue& s, int n);
// Elementwise principal root; even n requires inf(s) >= 0
// (NegativeUnderEvenRoot). n >= 2.
SetValue nth_root(const SetValue& s, int n);

// Left folds of add / mul; empty input gives Crisp(0) / Crisp(1).
SetValue sum(const std::vector<SetValue>& values);
SetValue product(const std::vector<SetValue>& values);

double midpoint(const SetValue& s);
double infimum(const SetValue& s);
double supremum(const SetValue& s);

// Total order used for sorting observations: compare midpoints, ties broken
// on the infimum, both equal => Equal.
Ordering3 order_cmp(const SetValue& s1, const SetValue& s2);

// Closed interval [inf, sup].
SetValue hull(const SetValue& s);
bool contains(const SetValue& s, double x);

// Intersection with a closed interval [lo, hi]; used for clipping results
// such as correlation coefficients. If the intersection is empty the nearest
// bound is returned as a crisp value, so clipping is total.
SetValue clip(const SetValue& s, double lo, double hi);

}  // namespace neutrostat
