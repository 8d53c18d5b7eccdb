#ifndef HILLGAPS_GALERKIN_HPP
#define HILLGAPS_GALERKIN_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "hillgaps/potential.hpp"
#include "hillgaps/types.hpp"

namespace hillgaps {

/// Truncated Fourier basis e^{i(2 pi m + t)x}, m in [-M, M].
struct GalerkinConfig {
  double t = 0.0;                  // quasimomentum in (-pi, pi]
  int M = 64;                      // truncation half-width, matrix dim 2M+1
  double eigen_tolerance = 1e-10;  // relative eigenpair residual bound
  double validation_c = 0.0;       // 0 = derive from the table's l1 mass
};

/// H[m,m'] = (2 pi m + t)^2 [m = m'] + q_{m-m'}; Hermitian by conjugate
/// symmetry of the coefficients. Needs q up to |k| <= 2M (finite-support
/// tables fill the rest with exact zeros).
Eigen::MatrixXcd build_operator_matrix(const FourierTable& t, const GalerkinConfig& cfg);

struct EigenDecomposition {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns
  double worst_residual;     // max_j ||H v_j - w_j v_j|| / max(1, max|w|)
};

/// Full Hermitian eigendecomposition with post-hoc residual and
/// orthonormality validation against `tol` (relative to the spectral
/// scale). Throws NumericalError when the solver fails to converge.
EigenDecomposition hermitian_eigen(const Eigen::MatrixXcd& H, double tol = 1e-10);

/// One periodic/antiperiodic eigenvalue pair. Eigenvector components are
/// reported in the real-eigenfunction gauge, so u_minus[j] = conj(u_plus[j]).
struct SpectralPair {
  int n = 0;
  double lambda1 = 0.0;  // lambda1 <= lambda2
  double lambda2 = 0.0;
  std::array<cplx, 2> u_plus{};   // component at frequency +theta_n, j = 1,2
  std::array<cplx, 2> u_minus{};  // component at frequency -theta_n
  double trunc_err = 0.0;         // first-order estimate of the basis-cutoff shift

  double gap() const { return lambda2 - lambda1; }
};

struct SpectralPairTable {
  Parity parity = Parity::periodic;
  double ground = 0.0;  // lowest eigenvalue of the periodic problem
  double worst_residual = 0.0;
  std::vector<SpectralPair> pairs;

  const SpectralPair& pair(int n) const;
};

/// Pairs read positionally off the ascending spectrum of L_0: index 0 is
/// the ground level, the pair for n is (value[2n-1], value[2n]). Each pair
/// must sit within C n^{1/2} of (2 pi n)^2 or the offending n is reported.
SpectralPairTable periodic_pairs(const Potential& p, int n_max, GalerkinConfig cfg);
SpectralPairTable periodic_pairs(const FourierTable& t, int n_max, GalerkinConfig cfg);

/// Antiperiodic analog: pair n is (value[2n], value[2n+1]) of L_pi,
/// validated against (2 pi n + pi)^2; components sit at basis indices n
/// and -n-1 (frequencies +-(2n+1) pi).
SpectralPairTable antiperiodic_pairs(const Potential& p, int n_max, GalerkinConfig cfg);
SpectralPairTable antiperiodic_pairs(const FourierTable& t, int n_max, GalerkinConfig cfg);

std::vector<std::pair<int, double>> gap_table(const SpectralPairTable& pairs);

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-band [min_t, max_t] envelopes over the given quasimomentum grid,
/// bands 0 .. 2*n_max.
std::vector<Band> band_structure(const Potential& p, const std::vector<double>& t_grid,
                                 int n_max, GalerkinConfig cfg);

/// Recomputes the pair for n at truncations M and 2M and returns the
/// larger of the two eigenvalue shifts.
double convergence_check(const Potential& p, int n, GalerkinConfig cfg);

/// Squared overlap between the oracle pair vector (restricted to the
/// +-theta_n modes) and the closest of the sin/cos first-order models with
/// phase arg q_kappa. Throws when q_kappa = 0 (phase undefined).
double eigenvector_overlap(const SpectralPairTable& pairs, int n, int j, const FourierTable& table);

}  // namespace hillgaps

#endif
