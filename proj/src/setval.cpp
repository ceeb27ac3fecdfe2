#include "neutrostat/setval.hpp"

#include <algorithm>
#include <cmath>

namespace neutrostat {

namespace {

[[noreturn]] void fail(const char* code, const std::string& what) {
  throw DomainError(code, what);
}

// Integer power by repeated squaring; exact for small integer bases.
double ipow(double base, int n) {
  double r = 1.0, b = base;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

// Principal n-th root of x >= 0 (any n) or x < 0 (odd n), with a Newton
// polish so round-trips like root(pow(x)) stay tight.
double nroot(double x, int n) {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -nroot(-x, n);
  if (n == 2) return std::sqrt(x);
  if (n == 3) return std::cbrt(x);
  double r = std::pow(x, 1.0 / n);
  for (int i = 0; i < 2; ++i) {
    double rp = ipow(r, n - 1);
    if (rp == 0.0) break;
    r -= (r * rp - x) / (n * rp);
  }
  return r;
}

struct Bound {
  double v;
  bool open;
};

Bound min_bound(const std::vector<Bound>& cs) {
  Bound best = cs.front();
  for (const Bound& c : cs) {
    if (c.v < best.v)
      best = c;
    else if (c.v == best.v)
      best.open = best.open && c.open;  // attained if any attaining pair attains it
  }
  return best;
}

Bound max_bound(const std::vector<Bound>& cs) {
  Bound best = cs.front();
  for (const Bound& c : cs) {
    if (c.v > best.v)
      best = c;
    else if (c.v == best.v)
      best.open = best.open && c.open;
  }
  return best;
}

Atom atom_from_bounds(Bound lo, Bound hi) {
  if (lo.v == hi.v) return Atom{lo.v, hi.v, false, false};
  return Atom{lo.v, hi.v, lo.open, hi.open};
}

}  // namespace

SetValue SetValue::interval(double lo, double hi, bool lo_open, bool hi_open) {
  if (!(lo <= hi)) fail("BadInterval", "interval bounds must satisfy lo <= hi");
  if (lo == hi && (lo_open || hi_open)) fail("BadInterval", "an open endpoint on a width-zero interval leaves no elements");
  return from_atoms({Atom{lo, hi, lo_open, hi_open}});
}

SetValue SetValue::finite(std::vector<double> elements) {
  if (elements.empty()) fail("EmptySet", "a finite set value needs at least one element");
  std::vector<Atom> atoms;
  atoms.reserve(elements.size());
  for (double e : elements) {
    if (!(e == e)) fail("BadInterval", "set elements must be finite numbers");
    atoms.push_back(Atom{e, e, false, false});
  }
  return from_atoms(std::move(atoms));
}

SetValue SetValue::make_union(const std::vector<SetValue>& parts) {
  if (parts.empty()) fail("EmptySet", "a union needs at least one part");
  std::vector<Atom> atoms;
  for (const SetValue& p : parts) atoms.insert(atoms.end(), p.atoms_.begin(), p.atoms_.end());
  return from_atoms(std::move(atoms));
}

SetValue SetValue::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) fail("EmptySet", "a set value cannot be empty");
  for (Atom& a : atoms) {
    if (!(a.lo <= a.hi)) fail("BadInterval", "atom bounds must satisfy lo <= hi");
    if (a.is_point()) a.lo_open = a.hi_open = false;
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.lo_open != b.lo_open) return !a.lo_open;
    if (a.hi != b.hi) return a.hi > b.hi;
    return !a.hi_open && b.hi_open;
  });
  std::vector<Atom> out;
  Atom cur = atoms.front();
  for (size_t i = 1; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    bool separate = a.lo > cur.hi || (a.lo == cur.hi && a.lo_open && cur.hi_open);
    if (separate) {
      out.push_back(cur);
      cur = a;
      continue;
    }
    if (a.lo == cur.lo) cur.lo_open = cur.lo_open && a.lo_open;
    if (a.hi > cur.hi) {
      cur.hi = a.hi;
      cur.hi_open = a.hi_open;
    } else if (a.hi == cur.hi) {
      cur.hi_open = cur.hi_open && a.hi_open;
    }
  }
  out.push_back(cur);
  for (Atom& a : out)
    if (a.is_point()) a.lo_open = a.hi_open = false;
  return SetValue(std::move(out));
}

Kind SetValue::kind() const {
  if (atoms_.size() == 1) return atoms_.front().is_point() ? Kind::Crisp : Kind::Interval;
  bool points = all_points();
  return points ? Kind::Finite : Kind::Union;
}

double SetValue::crisp_value() const {
  if (!is_crisp()) fail("NotCrisp", "value is not a single number");
  return atoms_.front().lo;
}

bool SetValue::all_points() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.is_point(); });
}

std::vector<double> SetValue::points() const {
  if (!all_points()) fail("NotPointSet", "value has interval parts");
  std::vector<double> ps;
  ps.reserve(atoms_.size());
  for (const Atom& a : atoms_) ps.push_back(a.lo);
  return ps;
}

bool SetValue::contains(double x) const {
  for (const Atom& a : atoms_) {
    bool above = x > a.lo || (x == a.lo && !a.lo_open);
    bool below = x < a.hi || (x == a.hi && !a.hi_open);
    if (above && below) return true;
  }
  return false;
}

namespace {

enum class BinOp { Add, Sub, Mul, Div };

double apply(BinOp op, double x, double y) {
  switch (op) {
    case BinOp::Add: return x + y;
    case BinOp::Sub: return x - y;
    case BinOp::Mul: return x * y;
    case BinOp::Div: return x / y;
  }
  return 0;
}

void check_divisor(const SetValue& s2) {
  if (s2.all_points()) {
    for (double p : s2.points())
      if (p == 0.0) fail("DivisorContainsZero", "division by a set containing 0");
  } else if (s2.infimum() <= 0.0 && s2.supremum() >= 0.0) {
    fail("DivisorContainsZero", "divisor hull contains 0");
  }
}

// Map every atom of s through x -> f(x), where f is monotone on each atom.
template <class F>
SetValue map_monotone(const SetValue& s, F f) {
  std::vector<Atom> out;
  out.reserve(s.atoms().size());
  for (const Atom& a : s.atoms()) {
    double flo = f(a.lo), fhi = f(a.hi);
    if (flo <= fhi)
      out.push_back(Atom{flo, fhi, a.lo_open, a.hi_open});
    else
      out.push_back(Atom{fhi, flo, a.hi_open, a.lo_open});
  }
  return SetValue::from_atoms(std::move(out));
}

SetValue binary(BinOp op, const SetValue& s1, const SetValue& s2) {
  if (op == BinOp::Div) check_divisor(s2);

  // A crisp operand keeps the other operand's structure exactly.
  if (s2.is_crisp()) {
    double c = s2.crisp_value();
    if (op == BinOp::Mul && c == 0.0) return SetValue(0.0);
    return map_monotone(s1, [&](double x) { return apply(op, x, c); });
  }
  if (s1.is_crisp()) {
    double c = s1.crisp_value();
    if (op == BinOp::Mul && c == 0.0) return SetValue(0.0);
    return map_monotone(s2, [&](double y) { return apply(op, c, y); });
  }

  // Two finite point sets combine elementwise (exact Minkowski image).
  if (s1.all_points() && s2.all_points()) {
    std::vector<Atom> out;
    for (double x : s1.points())
      for (double y : s2.points()) {
        double v = apply(op, x, y);
        out.push_back(Atom{v, v, false, false});
      }
    return SetValue::from_atoms(std::move(out));
  }

  // Anything else collapses to the hull interval with the corner rule.
  Bound alo{s1.infimum(), !s1.inf_attained()}, ahi{s1.supremum(), !s1.sup_attained()};
  Bound blo{s2.infimum(), !s2.inf_attained()}, bhi{s2.supremum(), !s2.sup_attained()};
  Bound lo{}, hi{};
  switch (op) {
    case BinOp::Add:
      lo = {alo.v + blo.v, alo.open || blo.open};
      hi = {ahi.v + bhi.v, ahi.open || bhi.open};
      break;
    case BinOp::Sub:
      lo = {alo.v - bhi.v, alo.open || bhi.open};
      hi = {ahi.v - blo.v, ahi.open || blo.open};
      break;
    case BinOp::Mul:
    case BinOp::Div: {
      std::vector<Bound> cs;
      if (op == BinOp::Div && s2.all_points()) {
        // The divisor's hull may straddle 0 even though no element is 0, so
        // corner arithmetic on the hull is unsound; divide by each point.
        for (double y : s2.points())
          for (const Bound& a : {alo, ahi}) cs.push_back({a.v / y, a.open});
      } else {
        for (const Bound& a : {alo, ahi})
          for (const Bound& b : {blo, bhi}) cs.push_back({apply(op, a.v, b.v), a.open || b.open});
      }
      lo = min_bound(cs);
      hi = max_bound(cs);
      break;
    }
  }
  return SetValue::from_atoms({atom_from_bounds(lo, hi)});
}

}  // namespace

SetValue add(const SetValue& s1, const SetValue& s2) { return binary(BinOp::Add, s1, s2); }
SetValue sub(const SetValue& s1, const SetValue& s2) { return binary(BinOp::Sub, s1, s2); }
SetValue mul(const SetValue& s1, const SetValue& s2) { return binary(BinOp::Mul, s1, s2); }
SetValue div(const SetValue& s1, const SetValue& s2) { return binary(BinOp::Div, s1, s2); }

SetValue pow(const SetValue& s, int n) {
  if (n < 1) fail("BadExponent", "pow needs a positive integer exponent");
  std::vector<Atom> out;
  for (const Atom& a : s.atoms()) {
    if (a.is_point()) {
      double v = ipow(a.lo, n);
      out.push_back(Atom{v, v, false, false});
      continue;
    }
    double plo = ipow(a.lo, n), phi = ipow(a.hi, n);
    if (n % 2 == 1 || a.lo >= 0.0) {
      out.push_back(Atom{plo, phi, a.lo_open, a.hi_open});
    } else if (a.hi <= 0.0) {
      out.push_back(Atom{phi, plo, a.hi_open, a.lo_open});
    } else {
      // Even power of an atom straddling 0: image is [0, max endpoint image];
      // 0 is attained at the interior point 0.
      Bound hi = max_bound({{plo, a.lo_open}, {phi, a.hi_open}});
      out.push_back(atom_from_bounds({0.0, false}, hi));
    }
  }
  return SetValue::from_atoms(std::move(out));
}

SetValue nth_root(const SetValue& s, int n) {
  if (n < 2) fail("BadRootIndex", "nth_root needs n >= 2");
  if (n % 2 == 0 && s.infimum() < 0.0)
    fail("NegativeUnderEvenRoot", "even root of a set reaching below 0");
  return map_monotone(s, [&](double x) { return nroot(x, n); });
}

SetValue sum(const std::vector<SetValue>& values) {
  SetValue acc(0.0);
  for (const SetValue& v : values) acc = add(acc, v);
  return acc;
}

SetValue product(const std::vector<SetValue>& values) {
  SetValue acc(1.0);
  for (const SetValue& v : values) acc = mul(acc, v);
  return acc;
}

double midpoint(const SetValue& s) { return (s.infimum() + s.supremum()) / 2.0; }
double infimum(const SetValue& s) { return s.infimum(); }
double supremum(const SetValue& s) { return s.supremum(); }

Ordering3 order_cmp(const SetValue& s1, const SetValue& s2) {
  double m1 = midpoint(s1), m2 = midpoint(s2);
  if (m1 < m2) return Ordering3::Less;
  if (m1 > m2) return Ordering3::Greater;
  if (s1.infimum() < s2.infimum()) return Ordering3::Less;
  if (s1.infimum() > s2.infimum()) return Ordering3::Greater;
  return Ordering3::Equal;
}

SetValue hull(const SetValue& s) {
  return SetValue::from_atoms({Atom{s.infimum(), s.supremum(), false, false}});
}

bool contains(const SetValue& s, double x) { return s.contains(x); }

SetValue clip(const SetValue& s, double lo, double hi) {
  std::vector<Atom> out;
  for (const Atom& a : s.atoms()) {
    double nlo = std::max(a.lo, lo), nhi = std::min(a.hi, hi);
    if (nlo > nhi) continue;
    bool nlo_open = (nlo == a.lo) ? a.lo_open : !(nlo < a.hi || (nlo == a.hi && !a.hi_open));
    bool nhi_open = (nhi == a.hi) ? a.hi_open : !(nhi > a.lo || (nhi == a.lo && !a.lo_open));
    if (nlo == nhi) {
      if (!nlo_open && !nhi_open) out.push_back(Atom{nlo, nhi, false, false});
      continue;
    }
    out.push_back(Atom{nlo, nhi, nlo_open, nhi_open});
  }
  if (out.empty()) {
    double m = std::clamp(midpoint(s), lo, hi);
    return SetValue(m);
  }
  return SetValue::from_atoms(std::move(out));
}

}  // namespace neutrostat
