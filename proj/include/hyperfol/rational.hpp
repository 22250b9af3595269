// rational.hpp -- exact rational scalar type and conversions.
//
// All combinatorial and sl(n,R) computations in this project run over
// arbitrary-precision rationals so that structural identities can be asserted
// with zero residual.  Floating point enters only through the numeric
// (complex-matrix) pathway and through eigenvalue candidate extraction, where
// every candidate is certified exactly afterwards.

#ifndef HYPERFOL_RATIONAL_HPP
#define HYPERFOL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hyperfol {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

inline Rat rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(num, den);
}

// Formats as "p" or "p/q" with q > 0.
inline std::string rat_str(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << '/' << denominator(x);
  return os.str();
}

// Parses "p", "p/q" or a plain integer with optional sign.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational '" + s + "'");
  }
}

// Best rational approximation with denominator <= max_den (continued
// fractions).  Returns nothing when the reconstruction does not land within
// `tol` of the input; used to promote numeric eigenvalue candidates to exact
// values, which are then certified by exact nullspace computations.
inline std::optional<Rat> rationalize(double x, std::int64_t max_den = 1000000,
                                      double tol = 1e-7) {
  double v = x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (fl > 9e17 || fl < -9e17) break;
    std::int64_t a = static_cast<std::int64_t>(fl);
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = v - static_cast<double>(a);
    if (rem < 1e-15) break;
    v = 1.0 / rem;
  }
  if (q1 == 0) return std::nullopt;
  Rat cand(p1, q1);
  if (std::abs(to_double(cand) - x) > tol) return std::nullopt;
  return cand;
}

}  // namespace hyperfol

#endif
