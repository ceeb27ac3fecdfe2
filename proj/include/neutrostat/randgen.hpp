#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "neutrostat/setval.hpp"

namespace neutrostat {

// One draw: either a concrete numeric value or an indeterminacy marker with a
// nonnegative tag distinguishing indeterminacy slots.
struct NeutroSymbol {
  enum class Kind { Value, Indet };
  Kind kind = Kind::Value;
  double value = 0.0;  // set when kind == Value
  long tag = 0;        // set when kind == Indet

  static NeutroSymbol val(double v) { return {Kind::Value, v, 0}; }
  static NeutroSymbol indet(long tag = 0) { return {Kind::Indet, 0.0, tag}; }
  bool operator==(const NeutroSymbol&) const = default;
};

// "7" for values (shortest round-trip form), "I" for tag 0, "I<tag>" above.
std::string format_symbol(const NeutroSymbol& s);

// Discrete alphabet where value x_j is drawn with chance p_j and indeterminacy
// tag_j with chance r_j; all weights positive and summing to 1 within 1e-9.
struct WeightedAlphabet {
  std::vector<std::pair<double, double>> values;  // (x_j, p_j)
  std::vector<std::pair<long, double>> indets;    // (tag, r_j)
};

// All sequences are deterministic functions of (inputs, seed): the stream is
// a mt19937_64 engine seeded with a splitmix64 scramble of the seed, with
// bounded integers taken by rejection sampling, so results are identical
// across platforms and runs.

// Equiprobable draws over the given values plus indet_count indeterminacy
// slots tagged 0..indet_count-1.
std::vector<NeutroSymbol> uniform_sequence(const std::vector<double>& values,
                                           int indet_count, int len, std::uint64_t seed);

// Draws weighted by the alphabet's chances.
std::vector<NeutroSymbol> weighted_sequence(const WeightedAlphabet& alphabet, int len,
                                            std::uint64_t seed);

// Uniform draws (with replacement) over all pairs lo <= a <= b <= hi of
// integers: a == b gives a crisp value, otherwise the interval [a, b].
std::vector<SetValue> interval_ball_draw(long lo, long hi, int count, std::uint64_t seed);

}  // namespace neutrostat
