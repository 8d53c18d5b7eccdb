#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hillgaps/kronig_penney.hpp"
#include "hillgaps/potential.hpp"

namespace hillgaps {

Potential potential_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "trig_poly") {
    TrigPoly tp;
    for (const auto& entry : j.at("coeffs")) {
      const int k = entry.at(0).get<int>();
      tp.set_coeff(k, cplx{entry.at(1).get<double>(), entry.at(2).get<double>()});
    }
    if (!tp.is_real_valued())
      throw std::invalid_argument("trig_poly: coefficients violate c_{-k} = conj(c_k)");
    return tp;
  }
  if (kind == "piecewise") {
    PiecewiseConstant pc;
    pc.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    pc.values = j.at("values").get<std::vector<double>>();
    return pc;
  }
  if (kind == "sampled") {
    Sampled s;
    s.samples = j.at("samples").get<std::vector<double>>();
    return s;
  }
  if (kind == "kronig_penney") {
    const Rational c(j.at("c_num").get<long>(), j.at("c_den").get<long>());
    const KPParams p = kp_make(j.at("b").get<double>(), c);
    if (j.contains("a")) {
      const double a = j.at("a").get<double>();
      if (std::abs(a * c.value() + (1.0 - c.value()) * j.at("b").get<double>()) > 1e-12)
        throw std::invalid_argument("kronig_penney: a, b, c violate a c + (1-c) b = 0");
    }
    return kp_potential(p);
  }
  throw std::invalid_argument("unknown potential kind \"" + kind + "\"");
}

Potential potential_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return potential_from_json(buf.str());
}

}  // namespace hillgaps
