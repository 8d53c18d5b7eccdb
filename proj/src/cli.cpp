#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hillgaps/kronig_penney.hpp"
#include "hillgaps/report.hpp"

namespace hillgaps {

namespace {

struct PotentialOptions {
  std::string preset;
  std::string file;
  double amplitude = 0.1;  // mathieu: q(x) = 2 a cos(2 pi x)
  double b = 1.0;          // kronig_penney
  std::string c = "1/2";
};

void add_potential_flags(CLI::App* cmd, PotentialOptions& opt) {
  cmd->add_option("--preset", opt.preset, "free | mathieu | kronig_penney");
  cmd->add_option("--potential", opt.file, "JSON potential description file");
  cmd->add_option("--amplitude", opt.amplitude, "mathieu amplitude a in 2 a cos(2 pi x)");
  cmd->add_option("--b", opt.b, "kronig_penney value on (c, 1]");
  cmd->add_option("--c", opt.c, "kronig_penney step point as a rational p/q");
}

Potential build_potential(const PotentialOptions& opt) {
  if (!opt.file.empty()) return potential_from_json_file(opt.file);
  if (opt.preset == "free" || opt.preset.empty()) return TrigPoly{};
  if (opt.preset == "mathieu") {
    TrigPoly tp;
    tp.set_pair(1, cplx{opt.amplitude, 0.0});
    return tp;
  }
  if (opt.preset == "kronig_penney")
    return kp_potential(kp_make(opt.b, parse_rational(opt.c)));
  throw std::invalid_argument("unknown preset \"" + opt.preset + "\"");
}

ParitySelection parse_parity(const std::string& s) {
  if (s == "periodic") return ParitySelection::periodic;
  if (s == "antiperiodic") return ParitySelection::antiperiodic;
  if (s == "both") return ParitySelection::both;
  throw std::invalid_argument("parity must be periodic, antiperiodic or both");
}

std::string fmt_cplx(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

int run_gaps(const PotentialOptions& popt, ExperimentConfig& cfg, const std::string& parity,
             const std::string& orders, int m_order) {
  cfg.potential = build_potential(popt);
  cfg.parity = parse_parity(parity);
  cfg.order1 = orders.find('1') != std::string::npos;
  cfg.order2 = orders.find('2') != std::string::npos;
  cfg.order_m = orders.find('m') != std::string::npos ? m_order : 0;
  const auto rows = run_gap_experiment(cfg);
  emit_report(rows, cfg.format, cfg.output_path);
  return 0;
}

int run_bands(const PotentialOptions& popt, int t_count, int n_max, int M, const std::string& out_path) {
  const Potential p = build_potential(popt);
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(t_count));
  for (int i = 1; i <= t_count; ++i)
    grid.push_back(-pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(t_count));
  GalerkinConfig gc;
  gc.M = M > 0 ? M : n_max + 16;
  const auto bands = band_structure(p, grid, n_max, gc);
  std::ostringstream os;
  os << "band,lo,hi\n";
  for (size_t j = 0; j < bands.size(); ++j) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", j, bands[j].lo, bands[j].hi);
    os << buf;
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + out_path);
    out << os.str();
  }
  return 0;
}

int run_estimate(const PotentialOptions& popt, int n, const std::string& parity_s, int m, double eps) {
  const Parity parity = parity_s == "antiperiodic" ? Parity::antiperiodic : Parity::periodic;
  const auto [norm, shift] = normalize_mean_zero(build_potential(popt));
  (void)shift;
  const int kappa = coupling_index(parity, n);
  const int width = std::max(8 * (kappa + 1), 64);
  const FourierTable table = fourier_table(norm, width);
  const DerivedCoeffTable derived = derived_coeffs(table, width, kappa);
  SeriesParams sp{table.k_max(), 1e-8};

  std::printf("n = %d, parity = %s, kappa = %d, base = %.12g\n", n, to_string(parity), kappa,
              base_energy(parity, n));
  std::printf("q_kappa = %s\n", fmt_cplx(table.coeff(kappa)).c_str());
  for (int j : {1, 2}) {
    std::printf("eig_first_order  (j=%d) = %.12g\n", j, eig_first_order(table, n, j, parity));
    std::printf("eig_second_order (j=%d) = %.12g\n", j, eig_second_order(table, derived, n, j, parity, sp));
  }
  std::printf("gap_first_order  = %.12g\n", gap_first_order(table, kappa));
  std::printf("gap_second_order = %.12g\n", gap_second_order(table, derived, kappa));
  for (int j : {1, 2}) {
    const AsymptoticEstimate est = E_recursion(table, n, j, m, sp, parity);
    std::printf("E_{%d,%d,k} trace:", n, j);
    for (double v : est.iterates) std::printf(" %.12g", v);
    std::printf("\n");
  }
  if (m >= 2) std::printf("gap_order_m(m=%d) = %.12g\n", m, gap_order_m(table, n, m, parity, sp));
  std::printf("condition (43) |q_k| >= eps/n        : %s\n",
              condition_check(table, derived, n, eps, ConditionKind::first_order, m, sp, parity) ? "true" : "false");
  std::printf("condition (49) second-order >= eps/n^2: %s\n",
              condition_check(table, derived, n, eps, ConditionKind::second_order, m, sp, parity) ? "true" : "false");
  if (m >= 1)
    std::printf("condition (52) order-m >= eps/n^m     : %s\n",
                condition_check(table, derived, n, eps, ConditionKind::order_m, m, sp, parity) ? "true" : "false");
  return 0;
}

int run_kp(double b, const std::string& c_text, int k) {
  const KPParams p = kp_make(b, parse_rational(c_text));
  std::printf("a = %.12g, b = %.12g, c = %ld/%ld\n", p.a, p.b, p.c.num, p.c.den);
  if (k != 0) {
    const KPDerived d = kp_derived(p, k);
    std::printf("q_%d = %s\n", k, fmt_cplx(kp_qk(p, k)).c_str());
    std::printf("Q_0 = %.12g\n", d.Q0);
    std::printf("Q_%d = %s\n", k, fmt_cplx(d.Qk).c_str());
    std::printf("S_%d (leading) = %s\n", k, fmt_cplx(d.Sk_leading).c_str());
    std::printf("gap_leading(%d) = %.12g\n", k, kp_gap_leading(p, k));
    std::printf("classification: %s\n",
                kp_rate_classify(p, k) == GapRate::quadratic ? "quadratic" : "linear");
  }
  return 0;
}

int run_fit(const std::string& path, const std::string& x_col, const std::string& y_col) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("empty csv " + path);
  std::vector<std::string> cols;
  {
    std::stringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  auto find_col = [&](const std::string& name) {
    for (size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return i;
    throw std::invalid_argument("column \"" + name + "\" not in " + path);
  };
  const size_t xi = find_col(x_col), yi = find_col(y_col);
  std::vector<std::pair<double, double>> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() <= std::max(xi, yi)) continue;
    if (cells[xi].empty() || cells[yi].empty()) continue;
    pts.emplace_back(std::stod(cells[xi]), std::stod(cells[yi]));
  }
  const FitResult r = fit_decay_rate(pts);
  std::printf("slope = %.12g\nintercept = %.12g\nr_squared = %.12g\nused = %d\ndropped = %d\n",
              r.slope, r.intercept, r.r_squared, r.used, r.dropped);
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Spectral gaps of the 1-D periodic Schrodinger operator: Galerkin oracle vs asymptotic estimates"};
  app.require_subcommand(1);

  PotentialOptions popt;
  ExperimentConfig cfg;
  std::string parity = "both", orders = "1,2", format = "csv";
  int m_order = 2;

  auto* gaps = app.add_subcommand("gaps", "oracle vs estimator gap table over an index range");
  add_potential_flags(gaps, popt);
  gaps->add_option("--parity", parity, "periodic | antiperiodic | both");
  gaps->add_option("--n-min", cfg.n_min, "first gap index");
  gaps->add_option("--n-max", cfg.n_max, "last gap index");
  gaps->add_option("--M", cfg.M, "Galerkin half-width (default 2 n_max + 16)");
  gaps->add_option("--orders", orders, "subset of 1,2,m");
  gaps->add_option("--m-order", m_order, "recursion depth for the m column (>= 2)");
  gaps->add_option("--series-k", cfg.sp.k_trunc, "series truncation (default: table width)");
  gaps->add_option("--format", format, "csv | json");
  gaps->add_option("-o,--output", cfg.output_path, "output path (default stdout)");

  PotentialOptions popt_b;
  int t_count = 17, nb_max = 8, mb = 0;
  std::string bands_out;
  auto* bands = app.add_subcommand("bands", "band envelopes over a quasimomentum grid");
  add_potential_flags(bands, popt_b);
  bands->add_option("--t-count", t_count, "grid points over (-pi, pi]");
  bands->add_option("--n-max", nb_max, "bands up to index 2 n_max");
  bands->add_option("--M", mb, "Galerkin half-width");
  bands->add_option("-o,--output", bands_out, "output path (default stdout)");

  PotentialOptions popt_e;
  int en = 1, em = 2;
  double eps = 0.1;
  std::string eparity = "periodic";
  auto* est = app.add_subcommand("estimate", "single-index estimator values and E-recursion trace");
  add_potential_flags(est, popt_e);
  est->add_option("--n", en, "index n")->required();
  est->add_option("--parity", eparity, "periodic | antiperiodic");
  est->add_option("--m", em, "recursion depth");
  est->add_option("--eps", eps, "epsilon for the condition predicates");

  double kb = 1.0;
  std::string kc = "1/2";
  int kk = 0;
  auto* kp = app.add_subcommand("kp", "Kronig-Penney closed forms and gap-rate classification");
  kp->add_option("--b", kb, "value on (c, 1]")->required();
  kp->add_option("--c", kc, "step point p/q")->required();
  kp->add_option("--k", kk, "coefficient index");

  std::string fit_in, fit_x = "n", fit_y = "err_o1";
  auto* fit = app.add_subcommand("fit", "log-log decay fit on a CSV column");
  fit->add_option("--input", fit_in, "CSV produced by gaps")->required();
  fit->add_option("--x", fit_x, "abscissa column");
  fit->add_option("--y", fit_y, "ordinate column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gaps->parsed()) {
      cfg.format = format == "json" ? ReportFormat::json : ReportFormat::csv;
      return run_gaps(popt, cfg, parity, orders, m_order);
    }
    if (bands->parsed()) return run_bands(popt_b, t_count, nb_max, mb, bands_out);
    if (est->parsed()) return run_estimate(popt_e, en, eparity, em, eps);
    if (kp->parsed()) return run_kp(kb, kc, kk);
    if (fit->parsed()) return run_fit(fit_in, fit_x, fit_y);
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hillgaps
