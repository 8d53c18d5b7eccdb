#include "hillgaps/potential.hpp"

#include <algorithm>
#include <cmath>

namespace hillgaps {

namespace {

double wrap01(double x) {
  double y = std::fmod(x, 1.0);
  return y < 0.0 ? y + 1.0 : y;
}

void check_piecewise(const PiecewiseConstant& pc) {
  if (pc.breakpoints.empty() || pc.breakpoints.size() != pc.values.size())
    throw std::invalid_argument("piecewise: breakpoints and values must be nonempty and equal-sized");
  if (pc.breakpoints.front() != 0.0)
    throw std::invalid_argument("piecewise: first breakpoint must be 0");
  if (!std::is_sorted(pc.breakpoints.begin(), pc.breakpoints.end()) ||
      std::adjacent_find(pc.breakpoints.begin(), pc.breakpoints.end()) != pc.breakpoints.end())
    throw std::invalid_argument("piecewise: breakpoints must be strictly ascending");
  if (pc.breakpoints.back() >= 1.0)
    throw std::invalid_argument("piecewise: breakpoints must lie in [0,1)");
}

}  // namespace

int TrigPoly::degree() const {
  int d = 0;
  for (const auto& [k, c] : coeffs)
    if (c != cplx{0.0, 0.0}) d = std::max(d, std::abs(k));
  return d;
}

void TrigPoly::set_coeff(int k, cplx c) { coeffs[k] = c; }

void TrigPoly::set_pair(int k, cplx c) {
  coeffs[k] = c;
  coeffs[-k] = std::conj(c);
}

bool TrigPoly::is_real_valued(double tol) const {
  for (const auto& [k, c] : coeffs) {
    auto it = coeffs.find(-k);
    const cplx other = it == coeffs.end() ? cplx{0.0, 0.0} : it->second;
    if (std::abs(other - std::conj(c)) > tol) return false;
  }
  return true;
}

double mean_value(const Potential& p) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TrigPoly>) {
          auto it = v.coeffs.find(0);
          return it == v.coeffs.end() ? 0.0 : it->second.real();
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          check_piecewise(v);
          double m = 0.0;
          const size_t np = v.values.size();
          for (size_t i = 0; i < np; ++i) {
            const double hi = i + 1 < np ? v.breakpoints[i + 1] : 1.0;
            m += v.values[i] * (hi - v.breakpoints[i]);
          }
          return m;
        } else {
          if (v.samples.empty()) throw std::invalid_argument("sampled: no samples");
          double m = 0.0;
          for (double s : v.samples) m += s;
          return m / static_cast<double>(v.samples.size());
        }
      },
      p);
}

double evaluate(const Potential& p, double x) {
  const double xw = wrap01(x);
  return std::visit(
      [xw](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TrigPoly>) {
          cplx s{0.0, 0.0};
          for (const auto& [k, c] : v.coeffs) s += c * std::polar(1.0, two_pi * k * xw);
          return s.real();
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          check_piecewise(v);
          auto it = std::upper_bound(v.breakpoints.begin(), v.breakpoints.end(), xw);
          const size_t i = static_cast<size_t>(it - v.breakpoints.begin()) - 1;
          return v.values[i];
        } else {
          // linear interpolation on the periodic grid
          const size_t n = v.samples.size();
          if (n == 0) throw std::invalid_argument("sampled: no samples");
          const double t = xw * static_cast<double>(n);
          const size_t j = static_cast<size_t>(t) % n;
          const double f = t - std::floor(t);
          return (1.0 - f) * v.samples[j] + f * v.samples[(j + 1) % n];
        }
      },
      p);
}

double antiderivative(const Potential& p, double x) {
  const double xw = wrap01(x);
  return std::visit(
      [xw](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TrigPoly>) {
          cplx s{0.0, 0.0};
          for (const auto& [k, c] : v.coeffs) {
            if (k == 0) {
              s += c * xw;
            } else {
              const cplx den{0.0, two_pi * k};
              s += c * (std::polar(1.0, two_pi * k * xw) - 1.0) / den;
            }
          }
          return s.real();
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          check_piecewise(v);
          double acc = 0.0;
          const size_t np = v.values.size();
          for (size_t i = 0; i < np; ++i) {
            const double lo = v.breakpoints[i];
            const double hi = i + 1 < np ? v.breakpoints[i + 1] : 1.0;
            if (xw <= lo) break;
            acc += v.values[i] * (std::min(xw, hi) - lo);
          }
          return acc;
        } else {
          const size_t n = v.samples.size();
          if (n == 0) throw std::invalid_argument("sampled: no samples");
          const double h = 1.0 / static_cast<double>(n);
          double acc = 0.0;
          double prev = v.samples[0];
          for (size_t j = 1; static_cast<double>(j) * h <= xw + 1e-15 && j <= n; ++j) {
            const double cur = v.samples[j % n];
            acc += 0.5 * h * (prev + cur);
            prev = cur;
          }
          // partial last panel
          const size_t full = static_cast<size_t>(std::floor(xw / h + 1e-15));
          const double rem = xw - static_cast<double>(full) * h;
          if (rem > 1e-15 && full < n) {
            const double a = v.samples[full % n], b = v.samples[(full + 1) % n];
            const double f = rem / h;
            acc += rem * (a + 0.5 * f * (b - a));
          }
          return acc;
        }
      },
      p);
}

std::pair<Potential, double> normalize_mean_zero(const Potential& p) {
  const double shift = mean_value(p);
  Potential out = p;
  std::visit(
      [shift](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TrigPoly>) {
          v.coeffs[0] = cplx{0.0, 0.0};
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          for (double& val : v.values) val -= shift;
        } else {
          for (double& s : v.samples) s -= shift;
        }
      },
      out);
  return {std::move(out), shift};
}

cplx fourier_coeff(const Potential& p, int k) {
  return std::visit(
      [k](const auto& v) -> cplx {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TrigPoly>) {
          auto it = v.coeffs.find(k);
          return it == v.coeffs.end() ? cplx{0.0, 0.0} : it->second;
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          check_piecewise(v);
          const size_t np = v.values.size();
          if (k == 0) {
            double m = 0.0;
            for (size_t i = 0; i < np; ++i) {
              const double hi = i + 1 < np ? v.breakpoints[i + 1] : 1.0;
              m += v.values[i] * (hi - v.breakpoints[i]);
            }
            return {m, 0.0};
          }
          // int_a^b w e^{-2 pi i k x} dx = w (e^{-2 pi i k a} - e^{-2 pi i k b}) / (2 pi i k)
          cplx acc{0.0, 0.0};
          const cplx den{0.0, two_pi * k};
          for (size_t i = 0; i < np; ++i) {
            const double lo = v.breakpoints[i];
            const double hi = i + 1 < np ? v.breakpoints[i + 1] : 1.0;
            acc += v.values[i] * (std::polar(1.0, -two_pi * k * lo) - std::polar(1.0, -two_pi * k * hi)) / den;
          }
          return acc;
        } else {
          const int n = static_cast<int>(v.samples.size());
          if (n == 0) throw std::invalid_argument("sampled: no samples");
          if (2 * std::abs(k) >= n)
            throw std::invalid_argument("sampled: |k| = " + std::to_string(std::abs(k)) +
                                        " exceeds Nyquist bound for " + std::to_string(n) + " samples");
          cplx acc{0.0, 0.0};
          for (int j = 0; j < n; ++j)
            acc += v.samples[static_cast<size_t>(j)] * std::polar(1.0, -two_pi * k * j / static_cast<double>(n));
          return acc / static_cast<double>(n);
        }
      },
      p);
}

FourierTable::FourierTable(int k_max, std::vector<cplx> coeffs, std::optional<int> support)
    : k_max_(k_max), q_(std::move(coeffs)), support_(support) {
  if (k_max_ < 1 || q_.size() != static_cast<size_t>(2 * k_max_ + 1))
    throw std::invalid_argument("fourier table: bad size");
}

cplx FourierTable::coeff(int k) const {
  if (std::abs(k) <= k_max_) return q_[static_cast<size_t>(k + k_max_)];
  if (finite_support()) return {0.0, 0.0};
  throw std::invalid_argument("fourier table: coefficient " + std::to_string(k) +
                              " beyond table width " + std::to_string(k_max_));
}

std::optional<cplx> FourierTable::coeff_if_known(int k) const {
  if (std::abs(k) <= k_max_) return q_[static_cast<size_t>(k + k_max_)];
  if (finite_support()) return cplx{0.0, 0.0};
  return std::nullopt;
}

double FourierTable::l1_mass() const {
  double m = 0.0;
  for (const cplx& c : q_) m += std::abs(c);
  return m;
}

FourierTable fourier_table(const Potential& p, int k_max) {
  if (k_max < 1) throw std::invalid_argument("fourier_table: k_max must be >= 1");
  std::vector<cplx> q(static_cast<size_t>(2 * k_max + 1), cplx{0.0, 0.0});
  for (int k = 1; k <= k_max; ++k) {
    const cplx c = fourier_coeff(p, k);
    q[static_cast<size_t>(k + k_max)] = c;
    q[static_cast<size_t>(-k + k_max)] = std::conj(c);
  }
  // q_0 forced to zero: a constant shift only moves all eigenvalues.
  std::optional<int> support;
  if (const auto* tp = std::get_if<TrigPoly>(&p)) {
    const int d = tp->degree();
    if (d <= k_max) support = d;
  }
  return FourierTable(k_max, std::move(q), support);
}

DerivedCoeffTable::DerivedCoeffTable(double q0, int k_max, std::vector<cplx> qk, std::vector<cplx> sk,
                                     int conv_width, double tail_bound)
    : q0_(q0), k_max_(k_max), qk_(std::move(qk)), sk_(std::move(sk)),
      conv_width_(conv_width), tail_bound_(tail_bound) {}

cplx DerivedCoeffTable::Q(int k) const {
  if (k == 0) throw std::invalid_argument("DerivedCoeffTable::Q: use Q0() for k = 0");
  if (std::abs(k) > k_max_) throw std::invalid_argument("DerivedCoeffTable::Q: index beyond width");
  return qk_[static_cast<size_t>(k + k_max_)];
}

cplx DerivedCoeffTable::S(int k) const {
  const int half = static_cast<int>(sk_.size() / 2);
  if (std::abs(k) > half) throw std::invalid_argument("DerivedCoeffTable::S: index beyond width");
  return sk_[static_cast<size_t>(k + half)];
}

DerivedCoeffTable derived_coeffs(const FourierTable& t, int k_conv, int k_out) {
  const int w = t.k_max();
  if (k_conv < w) throw std::invalid_argument("derived_coeffs: k_conv must be >= table width");
  if (k_out < 0) k_out = w;
  if (k_out > w) throw std::invalid_argument("derived_coeffs: k_out beyond table width");

  std::vector<cplx> qk(static_cast<size_t>(2 * w + 1), cplx{0.0, 0.0});
  for (int k = -w; k <= w; ++k) {
    if (k == 0) continue;
    qk[static_cast<size_t>(k + w)] = t.coeff(k) / cplx{0.0, two_pi * k};
  }

  // Q is continuous with Q(0) = 0, so Q_0 = -sum_{k != 0} Q_k.
  const int avail = t.finite_support() ? std::min(*t.support(), w) : w;
  const int kc = t.finite_support() ? avail : std::min(k_conv, avail);
  cplx q0_sum{0.0, 0.0};
  for (int k = 1; k <= kc; ++k)
    q0_sum += qk[static_cast<size_t>(k + w)] + qk[static_cast<size_t>(-k + w)];
  const double q0 = -q0_sum.real();

  auto Qc = [&](int k) -> cplx {
    if (k == 0) return {q0, 0.0};
    return qk[static_cast<size_t>(k + w)];
  };

  std::vector<cplx> sk(static_cast<size_t>(2 * k_out + 1), cplx{0.0, 0.0});
  for (int k = -k_out; k <= k_out; ++k) {
    cplx s{0.0, 0.0};
    const int lo = std::max(-kc, k - kc);
    const int hi = std::min(kc, k + kc);
    for (int m = lo; m <= hi; ++m) s += Qc(m) * Qc(k - m);
    sk[static_cast<size_t>(k + k_out)] = s;
  }

  // Neglected-tail estimate: |Q_m| <= A/m^2 envelope fitted over the outer
  // half of the table, summed past the truncation and scaled by max|Q|.
  double tail = 0.0;
  if (!t.finite_support()) {
    double a2 = 0.0, qmax = std::abs(q0);
    for (int k = 1; k <= w; ++k) {
      const double mag = std::abs(qk[static_cast<size_t>(k + w)]);
      qmax = std::max(qmax, mag);
      if (k >= std::max(1, kc / 2)) a2 = std::max(a2, mag * static_cast<double>(k) * k);
    }
    tail = 2.0 * a2 / std::max(1, kc) * qmax;
  }

  return DerivedCoeffTable(q0, w, std::move(qk), std::move(sk), kc, tail);
}

}  // namespace hillgaps
