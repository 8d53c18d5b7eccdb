#include "hillgaps/kronig_penney.hpp"

#include <cmath>
#include <numeric>

namespace hillgaps {

Rational::Rational(long n, long d) : num(n), den(d) {
  if (d <= 0 || n <= 0) throw std::invalid_argument("rational: need positive numerator and denominator");
  const long g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (num >= den) throw std::invalid_argument("rational: must lie in (0,1)");
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("rational: expected \"p/q\", got \"" + text + "\"");
  const long n = std::stol(text.substr(0, slash));
  const long d = std::stol(text.substr(slash + 1));
  return Rational(n, d);
}

KPParams kp_make(double b, Rational c) {
  if (!(b > 0.0)) throw std::invalid_argument("kp_make: b must be positive");
  const double cv = c.value();
  KPParams p;
  p.a = -b * (1.0 - cv) / cv;  // makes a c + (1-c) b = 0
  p.b = b;
  p.c = c;
  return p;
}

cplx kp_qk(const KPParams& p, int k) {
  if (k == 0) throw std::invalid_argument("kp_qk: k = 0 is the (zero) mean");
  // phase reduced exactly through the rational c
  const long r = ((static_cast<long>(k) * p.c.num) % p.c.den + p.c.den) % p.c.den;
  const cplx phase = std::polar(1.0, -two_pi * static_cast<double>(r) / static_cast<double>(p.c.den));
  return (p.a - p.b) / cplx{0.0, two_pi * k} * (1.0 - phase);
}

KPDerived kp_derived(const KPParams& p, int k) {
  if (k == 0) throw std::invalid_argument("kp_derived: k = 0");
  const double cv = p.c.value();
  const long r = ((static_cast<long>(k) * p.c.num) % p.c.den + p.c.den) % p.c.den;
  const cplx phase = std::polar(1.0, -two_pi * static_cast<double>(r) / static_cast<double>(p.c.den));
  const double w = two_pi * k;
  KPDerived d;
  d.Q0 = 0.5 * p.b * (cv - 1.0);
  d.Qk = (p.a - p.b) / (w * w) * (phase - 1.0);
  d.Sk_leading = -2.0 * p.b * p.a / (w * w) * phase;
  return d;
}

double kp_gap_leading(const KPParams& p, int k) {
  const KPDerived d = kp_derived(p, k);
  return 2.0 * std::abs(kp_qk(p, k) - d.Sk_leading + 2.0 * d.Q0 * d.Qk);
}

GapRate kp_rate_classify(const KPParams& p, int k) {
  return k % p.c.den == 0 ? GapRate::quadratic : GapRate::linear;
}

Potential kp_potential(const KPParams& p) {
  PiecewiseConstant pc;
  pc.breakpoints = {0.0, p.c.value()};
  pc.values = {p.a, p.b};
  return pc;
}

}  // namespace hillgaps
