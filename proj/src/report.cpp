#include "hillgaps/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace hillgaps {

FitResult fit_decay_rate(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  int dropped = 0;
  for (const auto& [n, e] : points) {
    if (!(n > 0.0)) throw std::invalid_argument("fit_decay_rate: abscissae must be positive");
    if (e > 0.0)
      logs.emplace_back(std::log(n), std::log(e));
    else
      ++dropped;
  }
  if (logs.size() < 4)
    throw std::invalid_argument("fit_decay_rate: need at least 4 positive points, have " +
                                std::to_string(logs.size()));

  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
  }
  const double mx = sx / static_cast<double>(logs.size());
  const double my = sy / static_cast<double>(logs.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_decay_rate: degenerate abscissae");

  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : logs) {
    const double d = y - (r.intercept + r.slope * x);
    ss_res += d * d;
  }
  r.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  r.used = static_cast<int>(logs.size());
  r.dropped = dropped;
  return r;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string{}; }

}  // namespace

void emit_csv(const std::vector<GapReportRow>& rows, std::ostream& out) {
  out << "n,parity,lambda1,lambda2,gap_oracle,gap_o1,gap_o2,gap_om,err_o1,err_o2,err_om,trunc_err\n";
  for (const auto& r : rows) {
    out << r.n << ',' << to_string(r.parity) << ',' << fmt(r.lambda1) << ',' << fmt(r.lambda2)
        << ',' << fmt(r.gap_oracle) << ',' << fmt_opt(r.gap_o1) << ',' << fmt_opt(r.gap_o2) << ','
        << fmt_opt(r.gap_om) << ',' << fmt_opt(r.err_o1) << ',' << fmt_opt(r.err_o2) << ','
        << fmt_opt(r.err_om) << ',' << fmt(r.trunc_err) << '\n';
  }
}

void emit_json(const std::vector<GapReportRow>& rows, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["n"] = r.n;
    o["parity"] = to_string(r.parity);
    o["lambda1"] = r.lambda1;
    o["lambda2"] = r.lambda2;
    o["gap_oracle"] = r.gap_oracle;
    if (r.gap_o1) o["gap_o1"] = *r.gap_o1;
    if (r.gap_o2) o["gap_o2"] = *r.gap_o2;
    if (r.gap_om) o["gap_om"] = *r.gap_om;
    if (r.err_o1) o["err_o1"] = *r.err_o1;
    if (r.err_o2) o["err_o2"] = *r.err_o2;
    if (r.err_om) o["err_om"] = *r.err_om;
    o["trunc_err"] = r.trunc_err;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

void emit_report(const std::vector<GapReportRow>& rows, ReportFormat format, const std::string& path) {
  auto write = [&](std::ostream& out) {
    if (format == ReportFormat::csv)
      emit_csv(rows, out);
    else
      emit_json(rows, out);
  };
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("emit_report: cannot open " + path);
  write(out);
  if (!out) throw std::invalid_argument("emit_report: write failed for " + path);
}

std::vector<GapReportRow> rows_from_json(std::istream& in) {
  nlohmann::json arr;
  in >> arr;
  std::vector<GapReportRow> rows;
  for (const auto& o : arr) {
    GapReportRow r;
    r.n = o.at("n").get<int>();
    r.parity = o.at("parity").get<std::string>() == "periodic" ? Parity::periodic
                                                               : Parity::antiperiodic;
    r.lambda1 = o.at("lambda1").get<double>();
    r.lambda2 = o.at("lambda2").get<double>();
    r.gap_oracle = o.at("gap_oracle").get<double>();
    auto opt = [&o](const char* key) -> std::optional<double> {
      if (!o.contains(key)) return std::nullopt;
      return o.at(key).get<double>();
    };
    r.gap_o1 = opt("gap_o1");
    r.gap_o2 = opt("gap_o2");
    r.gap_om = opt("gap_om");
    r.err_o1 = opt("err_o1");
    r.err_o2 = opt("err_o2");
    r.err_om = opt("err_om");
    r.trunc_err = o.at("trunc_err").get<double>();
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hillgaps
