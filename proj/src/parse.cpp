#include "neutrostat/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace neutrostat {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string format_double_g(double v, int prec) {
  if (v == 0.0) v = 0.0;
  char buf[128];
  int n = std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return std::string(buf, buf + n);
}

namespace {

[[noreturn]] void parse_fail(std::string_view text, size_t pos, const std::string& what) {
  throw ParseError(pos, what + " at position " + std::to_string(pos) + " in \"" +
                            std::string(text) + "\"");
}

class Scanner {
public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  // Accepts the multi-byte union sign as well.
  bool eat_union() {
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == 'U' || text_[pos_] == 'u')) {
      ++pos_;
      return true;
    }
    static constexpr std::string_view cup = "∪";
    if (text_.compare(pos_, cup.size(), cup) == 0) {
      pos_ += cup.size();
      return true;
    }
    return false;
  }
  size_t pos() const { return pos_; }
  std::string_view text() const { return text_; }

  double number() {
    skip_ws();
    size_t start = pos_;
    double v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc() || ptr == text_.data() + pos_)
      parse_fail(text_, start, "expected a number");
    pos_ = ptr - text_.data();
    return v;
  }
  bool at_number() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }
  void expect(char c, const char* what) {
    if (!eat(c)) parse_fail(text_, pos_, std::string("expected ") + what);
  }
  void expect_end() {
    if (!done()) parse_fail(text_, pos_, "unexpected trailing input");
  }

private:
  std::string_view text_;
  size_t pos_ = 0;
};

SetValue parse_primary(Scanner& sc);

SetValue parse_bracket(Scanner& sc) {
  bool lo_open = sc.peek() == '(';
  sc.eat(lo_open ? '(' : '[');
  double lo = sc.number();
  sc.expect(',', "','");
  double hi = sc.number();
  bool hi_open;
  if (sc.eat(']'))
    hi_open = false;
  else if (sc.eat(')'))
    hi_open = true;
  else
    parse_fail(sc.text(), sc.pos(), "expected ']' or ')'");
  try {
    return SetValue::interval(lo, hi, lo_open, hi_open);
  } catch (const DomainError& e) {
    parse_fail(sc.text(), sc.pos(), e.what());
  }
}

SetValue parse_brace(Scanner& sc) {
  sc.expect('{', "'{'");
  std::vector<double> es{sc.number()};
  while (sc.eat(',')) es.push_back(sc.number());
  sc.expect('}', "'}'");
  return SetValue::finite(std::move(es));
}

SetValue parse_primary(Scanner& sc) {
  char c = sc.peek();
  if (c == '[' || c == '(') return parse_bracket(sc);
  if (c == '{') return parse_brace(sc);
  if (!sc.at_number()) parse_fail(sc.text(), sc.pos(), "expected a set value");
  double d = sc.number();
  // determinate-plus-indeterminacy form: 5+i[0,0.4]
  size_t save = sc.pos();
  if (sc.eat('+')) {
    if (sc.eat('i')) return add(SetValue(d), parse_primary(sc));
    parse_fail(sc.text(), save, "expected 'i' after '+'");
  }
  return SetValue(d);
}

}  // namespace

SetValue parse_set(std::string_view text) {
  Scanner sc(text);
  std::vector<SetValue> parts{parse_primary(sc)};
  while (sc.eat_union()) parts.push_back(parse_primary(sc));
  sc.expect_end();
  return SetValue::make_union(parts);
}

std::string format_set(const SetValue& s) {
  if (s.is_crisp()) return format_double(s.crisp_value());
  const std::vector<Atom>& atoms = s.atoms();
  std::string out;
  bool first_part = true;
  auto join = [&] {
    if (!first_part) out += "U";
    first_part = false;
  };
  for (size_t i = 0; i < atoms.size();) {
    if (atoms[i].is_point()) {
      size_t j = i;
      while (j < atoms.size() && atoms[j].is_point()) ++j;
      join();
      out += "{";
      for (size_t k = i; k < j; ++k) {
        if (k > i) out += ",";
        out += format_double(atoms[k].lo);
      }
      out += "}";
      i = j;
    } else {
      const Atom& a = atoms[i];
      join();
      out += a.lo_open ? "(" : "[";
      out += format_double(a.lo);
      out += ",";
      out += format_double(a.hi);
      out += a.hi_open ? ")" : "]";
      ++i;
    }
  }
  return out;
}

namespace {

// Shared term scanner for a+bI and a+bi+cI+diI forms.
// unit: 0 = plain, 1 = i, 2 = I, 3 = iI.
struct Term {
  double coef;
  int unit;
};

std::vector<Term> parse_terms(std::string_view text, bool allow_imaginary) {
  Scanner sc(text);
  std::vector<Term> terms;
  bool seen[4] = {false, false, false, false};
  bool first = true;
  while (!sc.done()) {
    double sign = 1.0;
    if (sc.eat('+')) {
    } else if (sc.eat('-')) {
      sign = -1.0;
    } else if (!first) {
      parse_fail(text, sc.pos(), "expected '+' or '-'");
    }
    double coef = 1.0;
    bool have_num = sc.at_number();
    if (have_num) coef = sc.number();
    int unit = 0;
    if (sc.eat('i')) {
      unit = sc.eat('I') ? 3 : 1;
    } else if (sc.eat('I')) {
      unit = sc.eat('i') ? 3 : 2;
    } else if (!have_num) {
      parse_fail(text, sc.pos(), "expected a term");
    }
    if (!allow_imaginary && (unit == 1 || unit == 3))
      parse_fail(text, sc.pos(), "imaginary unit not allowed here");
    if (seen[unit]) parse_fail(text, sc.pos(), "duplicate term");
    seen[unit] = true;
    terms.push_back({sign * coef, unit});
    first = false;
  }
  if (terms.empty()) parse_fail(text, 0, "empty input");
  return terms;
}

void append_term(std::string& out, double coef, const char* unit) {
  if (coef == 0.0) return;
  if (!out.empty() && !(coef < 0.0)) out += "+";
  if (unit[0] != '\0' && (coef == 1.0 || coef == -1.0))
    out += (coef < 0.0) ? "-" : "";
  else
    out += format_double(coef);
  out += unit;
}

}  // namespace

std::string format_nn(const NeutroNumber& v) {
  std::string out;
  append_term(out, v.a, "");
  append_term(out, v.b, "I");
  return out.empty() ? "0" : out;
}

NeutroNumber parse_nn(std::string_view text) {
  NeutroNumber v{0, 0};
  for (const Term& t : parse_terms(text, false)) {
    if (t.unit == 0)
      v.a += t.coef;
    else
      v.b += t.coef;
  }
  return v;
}

std::string format_ncomplex(const NeutroComplex& v) {
  std::string out;
  append_term(out, v.a, "");
  append_term(out, v.b, "i");
  append_term(out, v.c, "I");
  append_term(out, v.d, "iI");
  return out.empty() ? "0" : out;
}

NeutroComplex parse_ncomplex(std::string_view text) {
  NeutroComplex v{0, 0, 0, 0};
  for (const Term& t : parse_terms(text, true)) {
    switch (t.unit) {
      case 0: v.a += t.coef; break;
      case 1: v.b += t.coef; break;
      case 2: v.c += t.coef; break;
      case 3: v.d += t.coef; break;
    }
  }
  return v;
}

}  // namespace neutrostat
