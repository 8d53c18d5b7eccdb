#ifndef HILLGAPS_REPORT_HPP
#define HILLGAPS_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hillgaps/asymptotics.hpp"
#include "hillgaps/galerkin.hpp"
#include "hillgaps/potential.hpp"
#include "hillgaps/types.hpp"

namespace hillgaps {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int used = 0;     // points entering the fit
  int dropped = 0;  // non-positive errors excluded from the log-log fit
};

/// Least-squares line through (ln n, ln e). Points with e <= 0 are dropped
/// and counted; fewer than 4 surviving points is an error.
FitResult fit_decay_rate(const std::vector<std::pair<double, double>>& points);

struct GapReportRow {
  int n = 0;
  Parity parity = Parity::periodic;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap_oracle = 0.0;
  std::optional<double> gap_o1, gap_o2, gap_om;
  std::optional<double> err_o1, err_o2, err_om;
  double trunc_err = 0.0;
};

enum class ParitySelection { periodic, antiperiodic, both };
enum class ReportFormat { csv, json };

struct ExperimentConfig {
  Potential potential = TrigPoly{};
  ParitySelection parity = ParitySelection::both;
  int n_min = 1;
  int n_max = 10;
  int M = 0;  // 0 = default 2 n_max + 16
  bool order1 = true;
  bool order2 = true;
  int order_m = 0;  // 0 = skip the recursion column, else m >= 2
  SeriesParams sp{};  // sp.k_trunc = 0 means "use the table width"
  ReportFormat format = ReportFormat::csv;
  std::string output_path;  // empty = stdout
};

/// One row per n per requested parity, ordered by parity then n;
/// deterministic for a fixed config.
std::vector<GapReportRow> run_gap_experiment(const ExperimentConfig& cfg);

/// Fixed CSV schema:
/// n,parity,lambda1,lambda2,gap_oracle,gap_o1,gap_o2,gap_om,err_o1,err_o2,err_om,trunc_err
/// with absent orders left blank.
void emit_csv(const std::vector<GapReportRow>& rows, std::ostream& out);
void emit_json(const std::vector<GapReportRow>& rows, std::ostream& out);
void emit_report(const std::vector<GapReportRow>& rows, ReportFormat format, const std::string& path);

std::vector<GapReportRow> rows_from_json(std::istream& in);

/// CLI entry point (subcommands: gaps, bands, estimate, kp, fit).
/// Exit codes: 0 success, 1 usage error, 2 numerical failure.
int cli_main(int argc, char** argv);

}  // namespace hillgaps

#endif
