#ifndef HILLGAPS_KRONIG_PENNEY_HPP
#define HILLGAPS_KRONIG_PENNEY_HPP

#include "hillgaps/potential.hpp"
#include "hillgaps/types.hpp"

namespace hillgaps {

/// Exact rational in lowest terms, 0 < num/den < 1. The gap-rate
/// dichotomy is arithmetic in the denominator, so c is kept exact.
struct Rational {
  long num = 0;
  long den = 1;

  Rational() = default;
  Rational(long n, long d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "p/q" or a plain integer-free decimal is rejected; the CLI layer
/// may fall back to approximate c for oracle-only runs.
Rational parse_rational(const std::string& text);

/// Two-valued step potential: a on [0,c], b on (c,1], with a < 0 < b and
/// a c + (1-c) b = 0 (mean zero).
struct KPParams {
  double a = 0.0;
  double b = 0.0;
  Rational c;
};

/// Builds the mean-zero step potential from b > 0 and rational c, solving
/// a = -b (1-c)/c.
KPParams kp_make(double b, Rational c);

/// q_k = (a-b)/(2 pi k i) (1 - e^{-2 pi k i c}), k != 0.
cplx kp_qk(const KPParams& p, int k);

struct KPDerived {
  double Q0;        // b(c-1)/2
  cplx Qk;          // (a-b)/(2 pi k)^2 (e^{-2 pi k i c} - 1)
  cplx Sk_leading;  // -2ab e^{-2 pi i k c}/(2 pi k)^2
};

KPDerived kp_derived(const KPParams& p, int k);

/// 2|q_k - S_k^leading + 2 Q_0 Q_k| with the closed forms above; the exact
/// S_k stays available through derived_coeffs for tighter comparisons.
double kp_gap_leading(const KPParams& p, int k);

enum class GapRate { quadratic, linear };

/// quadratic (gap ~ 1/k^2) iff den(c) divides k, linear (~ 1/k) otherwise.
GapRate kp_rate_classify(const KPParams& p, int k);

/// The equivalent PiecewiseConstant, for the generic machinery.
Potential kp_potential(const KPParams& p);

}  // namespace hillgaps

#endif
