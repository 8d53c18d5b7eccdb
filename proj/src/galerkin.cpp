#include "hillgaps/galerkin.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace hillgaps {

namespace {

bool is_antiperiodic(double t) { return std::abs(t - pi) < 1e-12; }

// Conjugate of the eigenfunction, re-expressed in the same basis: for t=0
// the coefficient at m maps to conj at -m; for t=pi to conj at -m-1 (the
// top mode m=M has no partner and is dropped; its weight is negligible for
// the validated pairs).
Eigen::VectorXcd flip_conj(const Eigen::VectorXcd& v, int M, bool antiper) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(v.size());
  for (int m = -M; m <= M; ++m) {
    const int mm = antiper ? -m - 1 : -m;
    if (mm < -M || mm > M) continue;
    w[m + M] = std::conj(v[mm + M]);
  }
  return w;
}

// Orthonormal basis of span{v1, v2} made of real eigenfunctions.
std::array<Eigen::VectorXcd, 2> realify_pair(const Eigen::VectorXcd& v1, const Eigen::VectorXcd& v2,
                                             int M, bool antiper) {
  std::array<Eigen::VectorXcd, 2> out;
  int filled = 0;
  for (const Eigen::VectorXcd* src : {&v1, &v2}) {
    const Eigen::VectorXcd fc = flip_conj(*src, M, antiper);
    Eigen::VectorXcd r1 = *src + fc;
    Eigen::VectorXcd r2 = cplx{0.0, 1.0} * (*src - fc);
    Eigen::VectorXcd r = r1.norm() >= r2.norm() ? r1 : r2;
    for (int i = 0; i < filled; ++i) r -= out[i] * out[i].dot(r);
    const double nrm = r.norm();
    if (nrm < 1e-8) {
      // degenerate direction already captured; take the other combination
      r = r1.norm() >= r2.norm() ? r2 : r1;
      for (int i = 0; i < filled; ++i) r -= out[i] * out[i].dot(r);
    }
    out[filled++] = r / r.norm();
  }
  return out;
}

// q-part of H applied to v, straight from the table (no large diagonal
// entries involved).
Eigen::VectorXcd apply_potential(const FourierTable& t, const Eigen::VectorXcd& v, int M) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(v.size());
  for (int m = -M; m <= M; ++m) {
    cplx acc{0.0, 0.0};
    for (int mp = -M; mp <= M; ++mp) acc += t.coeff(m - mp) * v[mp + M];
    y[m + M] = acc;
  }
  return y;
}

struct RefinedPair {
  double lambda1, lambda2;
  Eigen::VectorXcd vec1, vec2;
};

// Rayleigh-Ritz on the realified pair subspace with the diagonal shifted
// by the unperturbed energy. The shifted diagonal differences
//   (2 pi m + t)^2 - theta_n^2 = 4 pi^2 (m-n)(m+n)      (t = 0)
//                              = 4 pi^2 (m-n)(m+n+1)    (t = pi)
// are formed from exact integer products, so the pair eigenvalues come out
// at the truncation-limited accuracy instead of eps * ||H||.
RefinedPair refine_pair(const FourierTable& t, const Eigen::VectorXcd& v1, const Eigen::VectorXcd& v2,
                        int M, int n, bool antiper) {
  const auto basis = realify_pair(v1, v2, M, antiper);
  const double sigma = base_energy(antiper ? Parity::antiperiodic : Parity::periodic, n);

  Eigen::VectorXd d(2 * M + 1);
  for (int m = -M; m <= M; ++m) {
    const double f = antiper ? static_cast<double>(m + n + 1) : static_cast<double>(m + n);
    d[m + M] = 4.0 * pi * pi * static_cast<double>(m - n) * f;
  }

  Eigen::Matrix2cd G;
  std::array<Eigen::VectorXcd, 2> hb;
  for (int i = 0; i < 2; ++i)
    hb[i] = d.cast<cplx>().cwiseProduct(basis[i]) + apply_potential(t, basis[i], M);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) G(i, j) = basis[i].dot(hb[j]);
  G = 0.5 * (G + G.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(G);
  const Eigen::Vector2d mu = es.eigenvalues();
  const Eigen::Matrix2cd rot = es.eigenvectors();

  RefinedPair out;
  out.lambda1 = sigma + mu[0];
  out.lambda2 = sigma + mu[1];
  out.vec1 = basis[0] * rot(0, 0) + basis[1] * rot(1, 0);
  out.vec2 = basis[0] * rot(0, 1) + basis[1] * rot(1, 1);
  return out;
}

// First-order estimate of the eigenvalue shift from the discarded modes
// |m| > M: the pair lives on the +-theta_n modes with weight ~ 1/2 each,
// coupled to mode m through q_{m-n} and q_{m+n} (q_{m+n+1} at t = pi).
double truncation_estimate(const FourierTable& t, int M, int n, double tcfg) {
  const bool antiper = is_antiperiodic(tcfg);
  const double lam = base_energy(antiper ? Parity::antiperiodic : Parity::periodic, n);
  const int reach = t.finite_support() ? *t.support() + n + 1 : t.k_max() - M;
  double acc = 0.0;
  for (int d = 1; d <= reach; ++d) {
    for (const int m : {M + d, -M - d}) {
      const double em = (two_pi * m + tcfg) * (two_pi * m + tcfg);
      double num = 0.0;
      if (const auto c = t.coeff_if_known(m - n)) num += 0.5 * std::norm(*c);
      if (const auto c = t.coeff_if_known(antiper ? m + n + 1 : m + n)) num += 0.5 * std::norm(*c);
      acc += num / std::abs(em - lam);
    }
  }
  return acc;
}

}  // namespace

Eigen::MatrixXcd build_operator_matrix(const FourierTable& t, const GalerkinConfig& cfg) {
  const int M = cfg.M;
  if (M < 4) throw std::invalid_argument("galerkin: M must be >= 4");
  if (!t.finite_support() && t.k_max() < 2 * M)
    throw std::invalid_argument("galerkin: table width " + std::to_string(t.k_max()) +
                                " insufficient for M = " + std::to_string(M) +
                                " (need q up to |k| = " + std::to_string(2 * M) + ")");
  Eigen::MatrixXcd H(2 * M + 1, 2 * M + 1);
  for (int m = -M; m <= M; ++m) {
    for (int mp = -M; mp <= M; ++mp) {
      cplx v = t.coeff(m - mp);
      if (m == mp) v += (two_pi * m + cfg.t) * (two_pi * m + cfg.t);
      H(m + M, mp + M) = v;
    }
  }
  return H;
}

EigenDecomposition hermitian_eigen(const Eigen::MatrixXcd& H, double tol) {
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian_eigen: eigensolver failed to converge");

  EigenDecomposition out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (int j = 0; j < out.values.size(); ++j) {
    const double r = (H * out.vectors.col(j) - out.values[j] * out.vectors.col(j)).norm() / scale;
    worst = std::max(worst, r);
  }
  out.worst_residual = worst;
  if (worst > tol)
    throw NumericalError("hermitian_eigen: worst residual " + std::to_string(worst) +
                         " exceeds tolerance " + std::to_string(tol));
  const double ortho = (out.vectors.adjoint() * out.vectors -
                        Eigen::MatrixXcd::Identity(H.rows(), H.cols()))
                           .cwiseAbs()
                           .maxCoeff();
  if (ortho > 1e-10)
    throw NumericalError("hermitian_eigen: eigenvectors not orthonormal (deviation " +
                         std::to_string(ortho) + ")");
  return out;
}

namespace {

SpectralPairTable compute_pairs(const FourierTable& t, int n_max, GalerkinConfig cfg) {
  const bool antiper = is_antiperiodic(cfg.t);
  if (cfg.M < 2 * n_max + 16)
    throw std::invalid_argument("pairs: M must be >= 2 n_max + 16");

  const Eigen::MatrixXcd H = build_operator_matrix(t, cfg);
  const EigenDecomposition eig = hermitian_eigen(H, cfg.eigen_tolerance);

  const double C = cfg.validation_c > 0.0 ? cfg.validation_c : 50.0 * (1.0 + t.l1_mass());

  SpectralPairTable out;
  out.parity = antiper ? Parity::antiperiodic : Parity::periodic;
  out.ground = eig.values[0];

  const int n_lo = antiper ? 0 : 1;
  for (int n = n_lo; n <= n_max; ++n) {
    const int i1 = antiper ? 2 * n : 2 * n - 1;
    const int i2 = i1 + 1;
    const double base = base_energy(out.parity, n);
    const double band = C * std::sqrt(static_cast<double>(std::max(n, 1)));
    for (const int i : {i1, i2}) {
      if (std::abs(eig.values[i] - base) > band)
        throw NumericalError("pairs: eigenvalue " + std::to_string(eig.values[i]) +
                             " for n = " + std::to_string(n) + " outside validation band around " +
                             std::to_string(base) + " (truncation too small or pairing breakdown)");
    }

    const RefinedPair rp = refine_pair(t, eig.vectors.col(i1), eig.vectors.col(i2), cfg.M, n, antiper);

    SpectralPair pair;
    pair.n = n;
    pair.lambda1 = std::min(rp.lambda1, rp.lambda2);
    pair.lambda2 = std::max(rp.lambda1, rp.lambda2);
    const int ip = cfg.M + n;
    const int im = antiper ? cfg.M - n - 1 : cfg.M - n;
    pair.u_plus = {rp.vec1[ip], rp.vec2[ip]};
    pair.u_minus = {rp.vec1[im], rp.vec2[im]};
    pair.trunc_err = truncation_estimate(t, cfg.M, n, cfg.t);
    out.pairs.push_back(pair);
  }
  return out;
}

FourierTable table_for(const Potential& p, const GalerkinConfig& cfg) {
  const auto [norm, shift] = normalize_mean_zero(p);
  (void)shift;  // gaps and pair structure are shift-invariant
  return fourier_table(norm, 2 * cfg.M);
}

}  // namespace

const SpectralPair& SpectralPairTable::pair(int n) const {
  for (const auto& pr : pairs)
    if (pr.n == n) return pr;
  throw std::invalid_argument("pair table: no entry for n = " + std::to_string(n));
}

SpectralPairTable periodic_pairs(const FourierTable& t, int n_max, GalerkinConfig cfg) {
  cfg.t = 0.0;
  return compute_pairs(t, n_max, cfg);
}

SpectralPairTable periodic_pairs(const Potential& p, int n_max, GalerkinConfig cfg) {
  cfg.t = 0.0;
  return compute_pairs(table_for(p, cfg), n_max, cfg);
}

SpectralPairTable antiperiodic_pairs(const FourierTable& t, int n_max, GalerkinConfig cfg) {
  cfg.t = pi;
  return compute_pairs(t, n_max, cfg);
}

SpectralPairTable antiperiodic_pairs(const Potential& p, int n_max, GalerkinConfig cfg) {
  cfg.t = pi;
  return compute_pairs(table_for(p, cfg), n_max, cfg);
}

std::vector<std::pair<int, double>> gap_table(const SpectralPairTable& pairs) {
  std::vector<std::pair<int, double>> out;
  out.reserve(pairs.pairs.size());
  for (const auto& p : pairs.pairs) out.emplace_back(p.n, p.gap());
  return out;
}

std::vector<Band> band_structure(const Potential& p, const std::vector<double>& t_grid,
                                 int n_max, GalerkinConfig cfg) {
  for (double t : t_grid)
    if (t <= -pi - 1e-12 || t > pi + 1e-12)
      throw std::invalid_argument("band_structure: t outside (-pi, pi]");
  const int n_bands = 2 * n_max + 1;
  if (cfg.M < n_max + 8) cfg.M = n_max + 8;
  const auto [norm, shift] = normalize_mean_zero(p);
  (void)shift;
  const FourierTable tab = fourier_table(norm, 2 * cfg.M);

  std::vector<Band> bands(static_cast<size_t>(n_bands),
                          Band{std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()});
  for (double t : t_grid) {
    GalerkinConfig c = cfg;
    c.t = t;
    const Eigen::MatrixXcd H = build_operator_matrix(tab, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("band_structure: eigensolver failed");
    const auto& w = es.eigenvalues();
    for (int j = 0; j < n_bands && j < w.size(); ++j) {
      bands[static_cast<size_t>(j)].lo = std::min(bands[static_cast<size_t>(j)].lo, w[j]);
      bands[static_cast<size_t>(j)].hi = std::max(bands[static_cast<size_t>(j)].hi, w[j]);
    }
  }
  return bands;
}

double convergence_check(const Potential& p, int n, GalerkinConfig cfg) {
  const bool antiper = is_antiperiodic(cfg.t);
  auto run = [&](int M) {
    GalerkinConfig c = cfg;
    c.M = M;
    return antiper ? antiperiodic_pairs(p, n, c) : periodic_pairs(p, n, c);
  };
  const SpectralPair a = run(cfg.M).pair(n);
  const SpectralPair b = run(2 * cfg.M).pair(n);
  return std::max(std::abs(a.lambda1 - b.lambda1), std::abs(a.lambda2 - b.lambda2));
}

double eigenvector_overlap(const SpectralPairTable& pairs, int n, int j, const FourierTable& table) {
  if (j != 1 && j != 2) throw std::invalid_argument("eigenvector_overlap: j must be 1 or 2");
  const SpectralPair& pr = pairs.pair(n);
  const int kappa = coupling_index(pairs.parity, n);
  const cplx qk = table.coeff(kappa);
  if (std::abs(qk) == 0.0)
    throw std::invalid_argument("eigenvector_overlap: q_" + std::to_string(kappa) +
                                " = 0, phase undefined");
  const double alpha = std::arg(qk);
  const cplx up = pr.u_plus[static_cast<size_t>(j - 1)];
  const cplx um = pr.u_minus[static_cast<size_t>(j - 1)];

  // sqrt(2) sin(theta x + alpha/2) has components -(i/sqrt2) e^{i alpha/2}
  // at +theta and +(i/sqrt2) e^{-i alpha/2} at -theta; cos drops the -(i).
  const cplx ehalf = std::polar(1.0, 0.5 * alpha);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const cplx sin_p = cplx{0.0, -inv_sqrt2} * ehalf;
  const cplx sin_m = std::conj(sin_p);
  const cplx cos_p = inv_sqrt2 * ehalf;
  const cplx cos_m = std::conj(cos_p);

  const double o_sin = std::norm(up * std::conj(sin_p) + um * std::conj(sin_m));
  const double o_cos = std::norm(up * std::conj(cos_p) + um * std::conj(cos_m));
  return std::max(o_sin, o_cos);
}

}  // namespace hillgaps
