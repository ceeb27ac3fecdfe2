#include "neutrostat/setval.hpp"

#include <cmath>

#include "doctest.h"
#include "test_util.hpp"

using namespace neutrostat;
using testutil::approx_same;
using testutil::contains_tol;
using testutil::member_samples;
using testutil::ValueGen;

static SetValue I(double lo, double hi, bool lo_open = false, bool hi_open = false) {
  return SetValue::interval(lo, hi, lo_open, hi_open);
}
static SetValue F(std::vector<double> es) { return SetValue::finite(std::move(es)); }

TEST_CASE("construction and canonical form") {
  CHECK(SetValue(5.0).kind() == Kind::Crisp);
  CHECK(I(2, 5).kind() == Kind::Interval);
  CHECK(F({4, 6}).kind() == Kind::Finite);
  CHECK(I(5, 5) == SetValue(5.0));  // width-zero interval collapses to crisp
  CHECK(F({7}) == SetValue(7.0));
  CHECK(F({3, 1, 2, 3}) == F({1, 2, 3}));  // sorted, deduplicated

  // Unions merge overlapping / touching parts.
  CHECK(SetValue::make_union({I(1, 2, false, true), I(2, 3)}) == I(1, 3));
  CHECK(SetValue::make_union({I(1, 2, true, true), SetValue(2.0)}) == I(1, 2, true, false));
  CHECK(SetValue::make_union({SetValue(2.0), I(2, 3, true, false)}) == I(2, 3));
  CHECK(SetValue::make_union({I(1, 2, true, true), I(2, 3, true, true)}).atoms().size() == 2);
  CHECK(SetValue::make_union({SetValue(4.0), SetValue(6.0)}).kind() == Kind::Finite);
  CHECK(SetValue::make_union({SetValue(21.0), I(22, 25, true, false)}).kind() == Kind::Union);
  CHECK(SetValue::make_union({I(3, 4), I(1, 2)}) == SetValue::make_union({I(1, 2), I(3, 4)}));

  CHECK_THROWS_AS(I(3, 2), DomainError);
  CHECK_THROWS_AS(I(2, 2, true, false), DomainError);
  CHECK_THROWS_AS(F({}), DomainError);
  try {
    I(3, 2);
  } catch (const DomainError& e) {
    CHECK(e.code() == "BadInterval");
  }
}

TEST_CASE("addition keeps structure against a crisp operand") {
  CHECK(add(I(2, 5), SetValue(30.0)) == I(32, 35));
  CHECK(add(SetValue(30.0), I(2, 5)) == I(32, 35));
  CHECK(add(F({9, 11}), SetValue(1.0)) == F({10, 12}));
  CHECK(sub(I(2, 5), SetValue(1.0)) == I(1, 4));
  CHECK(sub(SetValue(10.0), I(2, 5)) == I(5, 8));
  CHECK(mul(I(2, 5), SetValue(-2.0)) == I(-10, -4));
  CHECK(mul(SetValue(0.0), I(2, 5)) == SetValue(0.0));
  CHECK(div(I(56, 65), SetValue(4.0)) == I(14, 16.25));
  CHECK(div(F({9, 11}), SetValue(2.0)) == F({4.5, 5.5}));
  // A union scaled by a crisp keeps both parts.
  SetValue u = SetValue::make_union({SetValue(21.0), I(22, 25, true, false)});
  SetValue u2 = mul(u, SetValue(2.0));
  CHECK(u2 == SetValue::make_union({SetValue(42.0), I(44, 50, true, false)}));
}

TEST_CASE("finite sets combine elementwise") {
  CHECK(add(F({1, 2}), F({3, 4})) == F({4, 5, 6}));
  CHECK(mul(F({2, 3}), F({4, 5})) == F({8, 10, 12, 15}));
  CHECK(div(F({4, 6}), F({-1, 2})) == F({-6, -4, 2, 3}));
  CHECK(sub(F({5}), F({1, 2})) == F({3, 4}));
}

TEST_CASE("interval combinations collapse to the hull with the corner rule") {
  // open flags propagate from the operands that produce each bound
  SetValue r = add(F({14, 15}), I(24, 29, true, true));
  CHECK(r == I(38, 44, true, true));

  CHECK(mul(I(24, 26, true, true), I(38, 44, true, true)) == I(912, 1144, true, true));
  CHECK(mul(I(104, 336), I(236, 1364)) == I(24544, 458304));

  SetValue q = div(I(24, 112, true, true), I(17, 56, true, true));
  CHECK(q.infimum() == doctest::Approx(24.0 / 56.0));
  CHECK(q.supremum() == doctest::Approx(112.0 / 17.0));
  CHECK(!q.inf_attained());
  CHECK(!q.sup_attained());

  // mixed signs exercise all four corners
  CHECK(mul(I(-2, 3), I(-5, 4)) == I(-15, 12));
  CHECK(mul(I(-2, 3), I(-5, -1)) == I(-15, 10));
  CHECK(div(I(-2, 3), I(1, 2)) == I(-2, 3));

  // interval + finite set uses the hull, not elementwise pairs
  CHECK(add(I(1, 2), F({0, 10})) == I(1, 12));
}

TEST_CASE("division rejects divisors reaching zero") {
  CHECK_THROWS_AS(div(I(1, 2), I(-1, 1)), DomainError);
  CHECK_THROWS_AS(div(SetValue(1.0), F({0.0, 2.0})), DomainError);
  CHECK_THROWS_AS(div(I(1, 2), SetValue(0.0)), DomainError);
  // A point-set divisor is checked for exact membership of 0, and the result
  // hulls the per-point quotients even when the divisor spans both signs.
  CHECK(div(I(1, 2), F({-1, 2})) == I(-2, 1));
  CHECK(div(I(1, 2), F({-1, 0.5, 2})) == I(-2, 4));
  try {
    div(SetValue(1.0), I(0, 1, true, false));
  } catch (const DomainError& e) {
    CHECK(e.code() == "DivisorContainsZero");
  }
  // A finite divisor away from zero is fine even if its hull straddles it.
  CHECK(div(F({4, 6}), F({-1, 2})) == F({-6, -4, 2, 3}));
}

TEST_CASE("pow takes the true image") {
  CHECK(pow(I(1, 2), 2) == I(1, 4));
  CHECK(pow(I(-1, 2, true, false), 2) == I(0, 4));
  CHECK(pow(I(-3, 2), 2) == I(0, 9));
  CHECK(pow(I(-3, 3, true, true), 2) == I(0, 9, false, true));
  CHECK(pow(F({-2, 3}), 3) == F({-8, 27}));
  CHECK(pow(SetValue(1.3), 1) == SetValue(1.3));
  CHECK(pow(I(-2, 1), 3) == I(-8, 1));
  // union image may merge
  SetValue u = SetValue::make_union({I(-2, -1), I(1, 2)});
  CHECK(pow(u, 2) == I(1, 4));
  CHECK_THROWS_AS(pow(I(1, 2), 0), DomainError);
}

TEST_CASE("nth_root is the elementwise principal root") {
  CHECK(approx_same(nth_root(I(16, 81), 4), I(2, 3)));
  CHECK(approx_same(nth_root(I(-8, 27), 3), I(-2, 3)));
  CHECK(approx_same(nth_root(F({4, 9}), 2), F({2, 3})));
  CHECK_THROWS_AS(nth_root(I(-1, 4), 2), DomainError);
  try {
    nth_root(F({-4, 9}), 2);
  } catch (const DomainError& e) {
    CHECK(e.code() == "NegativeUnderEvenRoot");
  }
  CHECK_THROWS_AS(nth_root(I(1, 2), 1), DomainError);
}

TEST_CASE("sum and product fold left") {
  CHECK(sum({}) == SetValue(0.0));
  CHECK(product({}) == SetValue(1.0));
  CHECK(sum({I(2, 5), SetValue(30.0)}) == I(32, 35));
  CHECK(product({I(1, 2), I(3, 4)}) == I(3, 8));
  SetValue y = sum({F({14, 15}), I(24, 29, true, true)});
  CHECK(y == I(38, 44, true, true));
}

TEST_CASE("midpoint, ordering, hull, contains, clip") {
  CHECK(midpoint(I(2, 5)) == doctest::Approx(3.5));
  CHECK(midpoint(SetValue(7.0)) == 7.0);

  CHECK(order_cmp(I(3, 4), I(2, 5)) == Ordering3::Greater);  // same midpoint, larger inf
  CHECK(order_cmp(I(1, 2), I(1, 2)) == Ordering3::Equal);
  CHECK(order_cmp(SetValue(2.0), I(1, 2)) == Ordering3::Greater);
  CHECK(order_cmp(I(1, 2), SetValue(4.0)) == Ordering3::Less);

  CHECK(hull(F({1, 5})) == I(1, 5));
  CHECK(hull(SetValue::make_union({I(1, 2), I(4, 6)})) == I(1, 6));

  SetValue o = I(0, 1, true, false);
  CHECK(!o.contains(0.0));
  CHECK(o.contains(0.5));
  CHECK(o.contains(1.0));
  CHECK(!contains(F({4, 6}), 5.0));

  SetValue r = clip(I(0.2157, 4.2894, true, true), -1.0, 1.0);
  CHECK(r.infimum() == doctest::Approx(0.2157));
  CHECK(r.supremum() == 1.0);
  CHECK(!r.inf_attained());
  CHECK(r.sup_attained());
  CHECK(clip(I(2, 3), -1, 1) == SetValue(1.0));
  CHECK(clip(SetValue::make_union({I(-3, 0.5), I(2, 4)}), -1, 1) == I(-1, 0.5));
}

TEST_CASE("sampled members stay inside arithmetic results") {
  ValueGen gen(20240817u);
  for (int iter = 0; iter < 400; ++iter) {
    SetValue a = gen.value();
    SetValue b = gen.value();
    auto xs = member_samples(a), ys = member_samples(b);

    SetValue s = add(a, b), d = sub(a, b), m = mul(a, b);
    bool divisor_ok = true;
    SetValue q = SetValue(1.0);
    try {
      q = div(a, b);
    } catch (const DomainError&) {
      divisor_ok = false;
    }
    for (double x : xs)
      for (double y : ys) {
        CHECK(contains_tol(s, x + y));
        CHECK(contains_tol(d, x - y));
        CHECK(contains_tol(m, x * y));
        if (divisor_ok && y != 0.0) CHECK(contains_tol(q, x / y));
      }
  }
}

TEST_CASE("crisp operands degenerate to plain arithmetic") {
  ValueGen gen(7u);
  for (int iter = 0; iter < 200; ++iter) {
    double x = gen.num(), y = gen.num(-20, 20);
    SetValue a(x), b(y);
    CHECK(add(a, b) == SetValue(x + y));
    CHECK(sub(a, b) == SetValue(x - y));
    CHECK(mul(a, b) == SetValue(x * y));
    if (y != 0.0) CHECK(div(a, b) == SetValue(x / y));
    CHECK(pow(a, 3).crisp_value() == doctest::Approx(x * x * x));
  }
}

TEST_CASE("pow lies inside the independent product hull") {
  ValueGen gen(99u);
  for (int iter = 0; iter < 200; ++iter) {
    SetValue a = gen.value();
    SetValue p = pow(a, 2);
    SetValue h = mul(a, a);
    CHECK(p.infimum() >= h.infimum() - 1e-9 * (1 + std::fabs(h.infimum())));
    CHECK(p.supremum() <= h.supremum() + 1e-9 * (1 + std::fabs(h.supremum())));
  }
}

TEST_CASE("roots invert powers on nonnegative intervals") {
  ValueGen gen(3u);
  for (int iter = 0; iter < 200; ++iter) {
    SetValue a = gen.interval_val(true, true);
    for (int n = 2; n <= 5; ++n) {
      CHECK(approx_same(nth_root(pow(a, n), n), a, 1e-7));
      CHECK(approx_same(pow(nth_root(a, n), n), a, 1e-7));
    }
  }
}

TEST_CASE("normalization is idempotent and ordering is consistent") {
  ValueGen gen(11u);
  for (int iter = 0; iter < 300; ++iter) {
    SetValue a = gen.value();
    CHECK(SetValue::from_atoms(a.atoms()) == a);

    SetValue b = gen.value(), c = gen.value();
    auto cmp = [](const SetValue& x, const SetValue& y) { return order_cmp(x, y); };
    // antisymmetry
    Ordering3 ab = cmp(a, b), ba = cmp(b, a);
    CHECK(((ab == Ordering3::Equal && ba == Ordering3::Equal) ||
           (ab == Ordering3::Less && ba == Ordering3::Greater) ||
           (ab == Ordering3::Greater && ba == Ordering3::Less)));
    // transitivity of (not Greater)
    Ordering3 bc = cmp(b, c), ac = cmp(a, c);
    if (ab != Ordering3::Greater && bc != Ordering3::Greater) CHECK(ac != Ordering3::Greater);
    // members of a value are reported as contained
    for (double x : member_samples(a)) CHECK(a.contains(x));
    CHECK(!a.contains(a.supremum() + 1.0));
  }
}
