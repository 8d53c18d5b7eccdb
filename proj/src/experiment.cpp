#include <algorithm>
#include <cmath>

#include "hillgaps/parallel.hpp"
#include "hillgaps/report.hpp"

namespace hillgaps {

namespace {

std::vector<GapReportRow> rows_for_parity(const FourierTable& table, const DerivedCoeffTable& derived,
                                          Parity parity, const ExperimentConfig& cfg, int M) {
  GalerkinConfig gc;
  gc.M = M;
  const SpectralPairTable pairs = parity == Parity::periodic
                                      ? periodic_pairs(table, cfg.n_max, gc)
                                      : antiperiodic_pairs(table, cfg.n_max, gc);

  SeriesParams sp = cfg.sp;
  if (sp.k_trunc <= 0) sp.k_trunc = table.k_max();

  const int count = cfg.n_max - cfg.n_min + 1;
  std::vector<GapReportRow> rows(static_cast<size_t>(count));
  parallel_for(static_cast<size_t>(count), [&](size_t i) {
    const int n = cfg.n_min + static_cast<int>(i);
    const SpectralPair& pr = pairs.pair(n);
    GapReportRow row;
    row.n = n;
    row.parity = parity;
    row.lambda1 = pr.lambda1;
    row.lambda2 = pr.lambda2;
    row.gap_oracle = pr.gap();
    row.trunc_err = pr.trunc_err;
    const int kappa = coupling_index(parity, n);
    if (cfg.order1) {
      row.gap_o1 = gap_first_order(table, kappa);
      row.err_o1 = std::abs(row.gap_oracle - *row.gap_o1);
    }
    if (cfg.order2) {
      row.gap_o2 = gap_second_order(table, derived, kappa);
      row.err_o2 = std::abs(row.gap_oracle - *row.gap_o2);
    }
    if (cfg.order_m >= 2) {
      row.gap_om = gap_order_m(table, n, cfg.order_m, parity, sp);
      row.err_om = std::abs(row.gap_oracle - *row.gap_om);
    }
    rows[i] = row;
  });
  return rows;
}

}  // namespace

std::vector<GapReportRow> run_gap_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_min < (cfg.parity == ParitySelection::antiperiodic ? 0 : 1) || cfg.n_min > cfg.n_max)
    throw std::invalid_argument("experiment: need 1 <= n_min <= n_max (0 allowed antiperiodic-only)");
  const int M = cfg.M > 0 ? cfg.M : 2 * cfg.n_max + 16;
  if (M < 2 * cfg.n_max + 16) throw std::invalid_argument("experiment: M must be >= 2 n_max + 16");

  const auto [norm, shift] = normalize_mean_zero(cfg.potential);
  (void)shift;
  // one wide table serves the operator matrix (|k| <= 2M) and the S_k
  // convolution (|m| <= 8 K_out)
  const int k_out = coupling_index(Parity::antiperiodic, cfg.n_max);
  const int width = std::max(2 * M, 8 * k_out);
  const FourierTable table = fourier_table(norm, width);
  const DerivedCoeffTable derived = derived_coeffs(table, width, k_out);

  std::vector<GapReportRow> rows;
  if (cfg.parity != ParitySelection::antiperiodic) {
    auto r = rows_for_parity(table, derived, Parity::periodic, cfg, M);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (cfg.parity != ParitySelection::periodic) {
    auto r = rows_for_parity(table, derived, Parity::antiperiodic, cfg, M);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

}  // namespace hillgaps
