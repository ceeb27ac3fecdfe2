#pragma once

#include <string>
#include <string_view>

#include "neutrostat/neutro_num.hpp"
#include "neutrostat/setval.hpp"

namespace neutrostat {

// Malformed input text; reports the byte offset where scanning failed.
class ParseError : public DomainError {
public:
  ParseError(size_t position, const std::string& what)
      : DomainError("ParseError", what), position_(position) {}
  size_t position() const noexcept { return position_; }

private:
  size_t position_;
};

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);
// printf-style %.<prec>g rendering (used for reports).
std::string format_double_g(double v, int prec);

// Text forms:
//   crisp      7        -3.25
//   interval   [2,5]    (6,7)    (8.0,8.8]
//   finite     {4,6}
//   union      {21}U(22,25]
//   det+indet  5+i[0,0.4]   (a determinate part plus a set-valued shift)
// Parse accepts optional whitespace between tokens and 'U', 'u' or '∪' as the
// union joiner; printing uses the canonical forms above. Round-trip
// parse(format(s)) == s holds exactly.
std::string format_set(const SetValue& s);
SetValue parse_set(std::string_view text);

// a+bI (e.g. "-5+2.333I", "3I", "7"); bare "I" means 1I.
std::string format_nn(const NeutroNumber& v);
NeutroNumber parse_nn(std::string_view text);

// a+bi+cI+diI (e.g. "6+2i-5I+10iI"); zero terms are omitted when printing.
std::string format_ncomplex(const NeutroComplex& v);
NeutroComplex parse_ncomplex(std::string_view text);

}  // namespace neutrostat
