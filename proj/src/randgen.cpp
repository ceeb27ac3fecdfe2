#include "neutrostat/randgen.hpp"

#include <cmath>
#include <cstdint>
#include <random>

#include "neutrostat/parse.hpp"

namespace neutrostat {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

// Uniform integer in [0, n) by rejection below the largest multiple of n, so
// the draw sequence does not depend on the standard library's distributions.
std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t n) {
  const std::uint64_t cut = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = eng();
  while (v >= cut) v = eng();
  return v % n;
}

// Uniform in [0, 1) with 53 random bits.
double unit_real(std::mt19937_64& eng) {
  return double(eng() >> 11) * 0x1.0p-53;
}

void check_len(int len) {
  if (len < 0) throw DomainError("BadCount", "sequence length cannot be negative");
}

}  // namespace

std::string format_symbol(const NeutroSymbol& s) {
  if (s.kind == NeutroSymbol::Kind::Value) return format_double(s.value);
  if (s.tag == 0) return "I";
  return "I" + std::to_string(s.tag);
}

std::vector<NeutroSymbol> uniform_sequence(const std::vector<double>& values,
                                           int indet_count, int len, std::uint64_t seed) {
  if (indet_count < 0) throw DomainError("BadCount", "indeterminacy count cannot be negative");
  check_len(len);
  const std::uint64_t total = values.size() + std::uint64_t(indet_count);
  if (total == 0) throw DomainError("EmptyAlphabet", "no symbols to draw from");
  std::mt19937_64 eng = make_engine(seed);
  std::vector<NeutroSymbol> out;
  out.reserve(size_t(len));
  for (int i = 0; i < len; ++i) {
    std::uint64_t k = bounded(eng, total);
    if (k < values.size())
      out.push_back(NeutroSymbol::val(values[k]));
    else
      out.push_back(NeutroSymbol::indet(long(k - values.size())));
  }
  return out;
}

std::vector<NeutroSymbol> weighted_sequence(const WeightedAlphabet& alphabet, int len,
                                            std::uint64_t seed) {
  check_len(len);
  if (alphabet.values.empty() && alphabet.indets.empty())
    throw DomainError("BadWeights", "alphabet has no entries");
  double total = 0;
  for (const auto& [x, p] : alphabet.values) {
    (void)x;
    if (!(p > 0)) throw DomainError("BadWeights", "value chances must be positive");
    total += p;
  }
  for (const auto& [tag, r] : alphabet.indets) {
    if (tag < 0) throw DomainError("BadWeights", "indeterminacy tags must be nonnegative");
    if (!(r > 0)) throw DomainError("BadWeights", "indeterminacy chances must be positive");
    total += r;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw DomainError("BadWeights", "chances must sum to 1");

  std::mt19937_64 eng = make_engine(seed);
  std::vector<NeutroSymbol> out;
  out.reserve(size_t(len));
  for (int i = 0; i < len; ++i) {
    double u = unit_real(eng);
    double acc = 0;
    NeutroSymbol pick{};
    bool chosen = false;
    for (const auto& [x, p] : alphabet.values) {
      acc += p;
      if (u < acc) {
        pick = NeutroSymbol::val(x);
        chosen = true;
        break;
      }
    }
    if (!chosen)
      for (const auto& [tag, r] : alphabet.indets) {
        acc += r;
        if (u < acc) {
          pick = NeutroSymbol::indet(tag);
          chosen = true;
          break;
        }
      }
    if (!chosen)  // u fell into the 1e-9 rounding slack past the last bound
      pick = alphabet.indets.empty() ? NeutroSymbol::val(alphabet.values.back().first)
                                     : NeutroSymbol::indet(alphabet.indets.back().first);
    out.push_back(pick);
  }
  return out;
}

std::vector<SetValue> interval_ball_draw(long lo, long hi, int count, std::uint64_t seed) {
  if (lo > hi) throw DomainError("BadRange", "lower bound exceeds upper bound");
  check_len(count);
  const std::uint64_t m = std::uint64_t(hi - lo + 1);
  const std::uint64_t npairs = m * (m + 1) / 2;
  std::mt19937_64 eng = make_engine(seed);
  std::vector<SetValue> out;
  out.reserve(size_t(count));
  for (int i = 0; i < count; ++i) {
    std::uint64_t idx = bounded(eng, npairs);
    // row a holds the m - a pairs (a, a), (a, a+1), ..., (a, m-1)
    std::uint64_t a = 0, row = m;
    while (idx >= row) {
      idx -= row;
      --row;
      ++a;
    }
    std::uint64_t b = a + idx;
    double va = double(lo + long(a)), vb = double(lo + long(b));
    out.push_back(a == b ? SetValue(va) : SetValue::interval(va, vb));
  }
  return out;
}

}  // namespace neutrostat
