#ifndef HILLGAPS_POTENTIAL_HPP
#define HILLGAPS_POTENTIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hillgaps/types.hpp"

namespace hillgaps {

/// Finite trigonometric polynomial sum_k c_k e^{2 pi i k x}.
/// Real-valuedness requires c_{-k} = conj(c_k); set_real_coeff keeps that.
struct TrigPoly {
  std::map<int, cplx> coeffs;

  int degree() const;
  void set_coeff(int k, cplx c);
  /// Sets c_k = c and c_{-k} = conj(c) in one step.
  void set_pair(int k, cplx c);
  bool is_real_valued(double tol = 1e-12) const;
};

/// Piecewise-constant 1-periodic function. breakpoints[0] must be 0;
/// piece i takes values[i] on [breakpoints[i], breakpoints[i+1]) with the
/// last piece extending to 1.
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// Uniform samples s_j = q(j/N), j = 0..N-1. Fourier coefficients come
/// from the trapezoidal rule, which by periodicity is the length-N DFT:
/// exact for band-limited inputs with 2|k| < N, aliased beyond.
struct Sampled {
  std::vector<double> samples;
};

using Potential = std::variant<TrigPoly, PiecewiseConstant, Sampled>;

double mean_value(const Potential& p);
double evaluate(const Potential& p, double x);
/// Q(x) = int_0^x q(t) dt, exact for TrigPoly and PiecewiseConstant,
/// prefix trapezoid for Sampled.
double antiderivative(const Potential& p, double x);

/// Shifts the potential to zero mean. Returns the shifted potential and
/// the subtracted constant; eigenvalues of the original operator are the
/// shifted ones plus that constant.
std::pair<Potential, double> normalize_mean_zero(const Potential& p);

/// q_k = int_0^1 q(x) e^{-2 pi i k x} dx. Exact for TrigPoly (lookup) and
/// PiecewiseConstant (closed form per piece); DFT for Sampled, which
/// throws past the Nyquist bound 2|k| < N.
cplx fourier_coeff(const Potential& p, int k);

/// Two-sided coefficient table q_k, |k| <= k_max. q_0 is forced to zero
/// and negative entries mirror conjugates, so the table always describes
/// the mean-zero real potential.
class FourierTable {
 public:
  FourierTable() = default;
  FourierTable(int k_max, std::vector<cplx> coeffs, std::optional<int> support = std::nullopt);

  int k_max() const { return k_max_; }
  /// Finite support degree when the backing potential is a TrigPoly whose
  /// spectrum fits the table; entries beyond k_max are then exactly zero.
  std::optional<int> support() const { return support_; }
  bool finite_support() const { return support_.has_value(); }

  /// q_k; beyond k_max returns 0 for finite-support tables and throws
  /// otherwise.
  cplx coeff(int k) const;
  /// q_k treating out-of-range entries of non-finite tables as unknown:
  /// returns nullopt there instead of throwing.
  std::optional<cplx> coeff_if_known(int k) const;

  /// sum over |k| <= k_max of |q_k|; feeds the oracle validation constant.
  double l1_mass() const;

 private:
  int k_max_ = 0;
  std::vector<cplx> q_;  // index k + k_max
  std::optional<int> support_;
};

FourierTable fourier_table(const Potential& p, int k_max);

/// Q_0, Q_k = q_k/(2 pi i k) and S_k = (Q^2)_k obtained by coefficient
/// convolution truncated at |m| <= conv_width; recorded tail_bound
/// estimates the neglected convolution mass (zero for finite support).
class DerivedCoeffTable {
 public:
  DerivedCoeffTable() = default;
  DerivedCoeffTable(double q0, int k_max, std::vector<cplx> qk, std::vector<cplx> sk,
                    int conv_width, double tail_bound);

  double Q0() const { return q0_; }
  int k_max() const { return k_max_; }
  int conv_width() const { return conv_width_; }
  double tail_bound() const { return tail_bound_; }

  cplx Q(int k) const;  // k != 0; use Q0() for the mean
  cplx S(int k) const;

 private:
  double q0_ = 0.0;
  int k_max_ = 0;
  std::vector<cplx> qk_, sk_;
  int conv_width_ = 0;
  double tail_bound_ = 0.0;
};

/// k_conv bounds the convolution index range (clamped to the available
/// data width for non-finite tables); k_out <= table width restricts how
/// many S_k are produced (default: all of them).
DerivedCoeffTable derived_coeffs(const FourierTable& t, int k_conv, int k_out = -1);

/// Parses the JSON potential description:
///   {"kind":"trig_poly","coeffs":[[k,re,im],...]}
///   {"kind":"piecewise","breakpoints":[...],"values":[...]}
///   {"kind":"sampled","samples":[...]}
///   {"kind":"kronig_penney","b":1,"c_num":1,"c_den":2}
Potential potential_from_json(const std::string& json_text);
Potential potential_from_json_file(const std::string& path);

}  // namespace hillgaps

#endif
