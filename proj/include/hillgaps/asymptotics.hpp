#ifndef HILLGAPS_ASYMPTOTICS_HPP
#define HILLGAPS_ASYMPTOTICS_HPP

#include <vector>

#include "hillgaps/potential.hpp"
#include "hillgaps/types.hpp"

namespace hillgaps {

/// Truncation and safety knobs for the iterated coefficient sums. The
/// per-index range is exact (the full support) for finite-support tables
/// regardless of k_trunc.
struct SeriesParams {
  int k_trunc = 1;
  double guard_rel = 1e-8;  // minimum |denominator| relative to theta_n^2
};

struct AsymptoticEstimate {
  int n = 0;
  int j = 1;
  Parity parity = Parity::periodic;
  int order = 0;
  double value = 0.0;
  cplx a_part{};                  // A_m at the last iterate
  cplx b_part{};                  // B_m at the last iterate
  double modulus_term = 0.0;      // |q_kappa + B_m|
  std::vector<double> iterates;   // E_0 .. E_m
};

/// 2|q_k|; the caller passes k = 2n or 2n+1.
double gap_first_order(const FourierTable& t, int k);

/// 2|q_k - S_k + 2 Q_0 Q_k|.
double gap_second_order(const FourierTable& t, const DerivedCoeffTable& d, int k);

/// theta_n^2 + (-1)^j |q_kappa|, j in {1,2}.
double eig_first_order(const FourierTable& t, int n, int j, Parity parity);

/// Grouped one-index sum (1/2 pi^2) sum_{k>=1, k != kappa}
/// |q_k|^2 / ((kappa-k)(kappa+k)), evaluated at the unperturbed energy.
double a1_closed(const FourierTable& t, int n, Parity parity = Parity::periodic);

/// k_order-fold iterated sums over index tuples with n_s != 0 and partial
/// sums excluded from {0, +-kappa}; denominators lambda - (theta - 2 pi p)^2
/// are guarded and a violation reports the offending partial sum.
cplx a_term(const FourierTable& t, int k_order, int n, double lambda, const SeriesParams& sp,
            Parity parity = Parity::periodic);
cplx b_term(const FourierTable& t, int k_order, int n, double lambda, const SeriesParams& sp,
            Parity parity = Parity::periodic);

/// A_m = sum of a_term orders 1..m; B_m likewise.
cplx A_partial(const FourierTable& t, int m, int n, double lambda, const SeriesParams& sp,
               Parity parity = Parity::periodic);
cplx B_partial(const FourierTable& t, int m, int n, double lambda, const SeriesParams& sp,
               Parity parity = Parity::periodic);

/// theta_n^2 + A_2(theta_n^2) + (-1)^j |q_kappa - S_kappa + 2 Q_0 Q_kappa|.
double eig_second_order(const FourierTable& t, const DerivedCoeffTable& d, int n, int j,
                        Parity parity, const SeriesParams& sp);

/// E_{n,j,0} = theta_n^2;
/// E_{n,j,k} = theta_n^2 + A_k(E_{n,j,k-1}) + (-1)^j |q_kappa + B_k(E_{n,j,k-1})|.
AsymptoticEstimate E_recursion(const FourierTable& t, int n, int j, int m, const SeriesParams& sp,
                               Parity parity = Parity::periodic);

/// E_{n,2,m} - E_{n,1,m}, floored at zero. Requires m >= 2; the dedicated
/// first/second-order formulas are sharper below that.
double gap_order_m(const FourierTable& t, int n, int m, Parity parity, const SeriesParams& sp);

enum class ConditionKind {
  first_order,   // |q_kappa| >= eps / n
  second_order,  // |q_kappa - S_kappa + 2 Q_0 Q_kappa| >= eps / n^2
  order_m,       // |q_kappa + B_m(E_{n,j,m-1})| >= eps / n^m for both j
};

bool condition_check(const FourierTable& t, const DerivedCoeffTable& d, int n, double eps,
                     ConditionKind kind, int m, const SeriesParams& sp,
                     Parity parity = Parity::periodic);

/// sqrt(2) sin(theta_n x + alpha/2) for j = 1, cos for j = 2, with
/// alpha = arg q_kappa. Throws when the phase is undefined (q_kappa = 0).
double eigenfunction_model(const FourierTable& t, int n, int j, Parity parity, double x);

}  // namespace hillgaps

#endif
