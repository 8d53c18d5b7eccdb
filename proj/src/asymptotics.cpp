#include "hillgaps/asymptotics.hpp"

#include <cmath>

namespace hillgaps {

namespace {

enum class SeriesKind { diagonal, coupling };  // a-type vs b-type numerator tail

struct TupleSum {
  const FourierTable& table;
  int order;
  int kappa;
  double theta;
  double lambda;
  double guard;
  int keff;
  SeriesKind kind;
  cplx total{0.0, 0.0};

  void run(int depth, long psum, cplx num) {
    if (depth == order) {
      const long idx = kind == SeriesKind::diagonal ? -psum : kappa - psum;
      if (idx < INT_MIN_IDX || idx > INT_MAX_IDX) return;
      const auto tail = table.coeff_if_known(static_cast<int>(idx));
      if (tail && *tail != cplx{0.0, 0.0}) total += num * *tail;
      return;
    }
    for (int s = -keff; s <= keff; ++s) {
      if (s == 0) continue;
      const cplx q = table.coeff(s);
      if (q == cplx{0.0, 0.0}) continue;
      const long p2 = psum + s;
      if (p2 == 0 || p2 == kappa || p2 == -kappa) continue;
      const double arg = theta - two_pi * static_cast<double>(p2);
      const double den = lambda - arg * arg;
      if (std::abs(den) < guard)
        throw NumericalError("series guard: denominator " + std::to_string(den) +
                             " at partial sum " + std::to_string(p2) +
                             " (lambda too far from the unperturbed level or accidental resonance)");
      run(depth + 1, p2, num * q / den);
    }
  }

  static constexpr long INT_MIN_IDX = -(1L << 30);
  static constexpr long INT_MAX_IDX = (1L << 30);
};

cplx tuple_sum(const FourierTable& t, int k_order, int n, double lambda, const SeriesParams& sp,
               Parity parity, SeriesKind kind) {
  if (k_order < 1) throw std::invalid_argument("series order must be >= 1");
  if (n < 1 && parity == Parity::periodic)
    throw std::invalid_argument("series: n must be >= 1 for the periodic problem");
  const int kappa = coupling_index(parity, n);
  const int keff = t.finite_support() ? *t.support() : std::min(sp.k_trunc, t.k_max());
  if (keff < 1) return {0.0, 0.0};
  TupleSum ts{t, k_order, kappa, pi * kappa, lambda,
              sp.guard_rel * std::max(base_energy(parity, n), 1.0), keff, kind};
  ts.run(0, 0, cplx{1.0, 0.0});
  return ts.total;
}

int checked_j(int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("j must be 1 or 2");
  return j;
}

double j_sign(int j) { return j == 1 ? -1.0 : 1.0; }

}  // namespace

double gap_first_order(const FourierTable& t, int k) { return 2.0 * std::abs(t.coeff(k)); }

double gap_second_order(const FourierTable& t, const DerivedCoeffTable& d, int k) {
  return 2.0 * std::abs(t.coeff(k) - d.S(k) + 2.0 * d.Q0() * d.Q(k));
}

double eig_first_order(const FourierTable& t, int n, int j, Parity parity) {
  checked_j(j);
  if (n < (parity == Parity::periodic ? 1 : 0)) throw std::invalid_argument("eig_first_order: bad n");
  return base_energy(parity, n) + j_sign(j) * std::abs(t.coeff(coupling_index(parity, n)));
}

double a1_closed(const FourierTable& t, int n, Parity parity) {
  const int kappa = coupling_index(parity, n);
  const int keff = t.finite_support() ? *t.support() : t.k_max();
  double sum = 0.0;
  for (int k = 1; k <= keff; ++k) {
    if (k == kappa) continue;
    const double mag2 = std::norm(t.coeff(k));
    if (mag2 == 0.0) continue;
    sum += mag2 / (static_cast<double>(kappa - k) * static_cast<double>(kappa + k));
  }
  return sum / (2.0 * pi * pi);
}

cplx a_term(const FourierTable& t, int k_order, int n, double lambda, const SeriesParams& sp,
            Parity parity) {
  return tuple_sum(t, k_order, n, lambda, sp, parity, SeriesKind::diagonal);
}

cplx b_term(const FourierTable& t, int k_order, int n, double lambda, const SeriesParams& sp,
            Parity parity) {
  return tuple_sum(t, k_order, n, lambda, sp, parity, SeriesKind::coupling);
}

cplx A_partial(const FourierTable& t, int m, int n, double lambda, const SeriesParams& sp,
               Parity parity) {
  cplx acc{0.0, 0.0};
  for (int k = 1; k <= m; ++k) acc += a_term(t, k, n, lambda, sp, parity);
  return acc;
}

cplx B_partial(const FourierTable& t, int m, int n, double lambda, const SeriesParams& sp,
               Parity parity) {
  cplx acc{0.0, 0.0};
  for (int k = 1; k <= m; ++k) acc += b_term(t, k, n, lambda, sp, parity);
  return acc;
}

double eig_second_order(const FourierTable& t, const DerivedCoeffTable& d, int n, int j,
                        Parity parity, const SeriesParams& sp) {
  checked_j(j);
  const double base = base_energy(parity, n);
  const int kappa = coupling_index(parity, n);
  const cplx a2 = A_partial(t, 2, n, base, sp, parity);
  const double modulus = std::abs(t.coeff(kappa) - d.S(kappa) + 2.0 * d.Q0() * d.Q(kappa));
  return base + a2.real() + j_sign(j) * modulus;
}

AsymptoticEstimate E_recursion(const FourierTable& t, int n, int j, int m, const SeriesParams& sp,
                               Parity parity) {
  checked_j(j);
  if (m < 0) throw std::invalid_argument("E_recursion: m must be >= 0");
  const double base = base_energy(parity, n);
  const cplx q_kappa = t.coeff(coupling_index(parity, n));

  AsymptoticEstimate est;
  est.n = n;
  est.j = j;
  est.parity = parity;
  est.order = m;
  est.value = base;
  est.iterates.push_back(base);

  double prev = base;
  for (int k = 1; k <= m; ++k) {
    est.a_part = A_partial(t, k, n, prev, sp, parity);
    est.b_part = B_partial(t, k, n, prev, sp, parity);
    est.modulus_term = std::abs(q_kappa + est.b_part);
    est.value = base + est.a_part.real() + j_sign(j) * est.modulus_term;
    est.iterates.push_back(est.value);
    prev = est.value;
  }
  return est;
}

double gap_order_m(const FourierTable& t, int n, int m, Parity parity, const SeriesParams& sp) {
  if (m < 2)
    throw std::invalid_argument("gap_order_m: m must be >= 2; use the first/second-order formulas below that");
  const double e2 = E_recursion(t, n, 2, m, sp, parity).value;
  const double e1 = E_recursion(t, n, 1, m, sp, parity).value;
  return std::max(e2 - e1, 0.0);
}

bool condition_check(const FourierTable& t, const DerivedCoeffTable& d, int n, double eps,
                     ConditionKind kind, int m, const SeriesParams& sp, Parity parity) {
  if (n < 1) throw std::invalid_argument("condition_check: n must be >= 1");
  const int kappa = coupling_index(parity, n);
  const double nn = static_cast<double>(n);
  switch (kind) {
    case ConditionKind::first_order:
      return std::abs(t.coeff(kappa)) >= eps / nn;
    case ConditionKind::second_order:
      return std::abs(t.coeff(kappa) - d.S(kappa) + 2.0 * d.Q0() * d.Q(kappa)) >= eps / (nn * nn);
    case ConditionKind::order_m: {
      if (m < 1) throw std::invalid_argument("condition_check: order_m needs m >= 1");
      const double bound = eps / std::pow(nn, m);
      for (int j : {1, 2}) {
        const AsymptoticEstimate prev = E_recursion(t, n, j, m - 1, sp, parity);
        const cplx bm = B_partial(t, m, n, prev.value, sp, parity);
        if (std::abs(t.coeff(kappa) + bm) < bound) return false;
      }
      return true;
    }
  }
  throw std::invalid_argument("condition_check: unknown kind");
}

double eigenfunction_model(const FourierTable& t, int n, int j, Parity parity, double x) {
  checked_j(j);
  const int kappa = coupling_index(parity, n);
  const cplx qk = t.coeff(kappa);
  if (std::abs(qk) == 0.0)
    throw std::invalid_argument("eigenfunction_model: q_" + std::to_string(kappa) +
                                " = 0, phase undefined");
  const double theta = pi * kappa;
  const double phase = theta * x + 0.5 * std::arg(qk);
  return std::sqrt(2.0) * (j == 1 ? std::sin(phase) : std::cos(phase));
}

}  // namespace hillgaps
