#ifndef HILLGAPS_TYPES_HPP
#define HILLGAPS_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hillgaps {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Boundary-condition family of the fiber operator: t = 0 or t = pi.
enum class Parity { periodic, antiperiodic };

inline const char* to_string(Parity p) {
  return p == Parity::periodic ? "periodic" : "antiperiodic";
}

/// Quasimomentum of the fiber operator for a parity class.
inline double quasimomentum(Parity p) { return p == Parity::periodic ? 0.0 : pi; }

/// Index of the Fourier coefficient coupling the +n and -n modes:
/// 2n for the periodic problem, 2n+1 for the antiperiodic one.
inline int coupling_index(Parity p, int n) {
  return p == Parity::periodic ? 2 * n : 2 * n + 1;
}

/// Unperturbed energy (2*pi*n)^2 resp. (2*pi*n + pi)^2.
inline double base_energy(Parity p, int n) {
  const double theta = pi * coupling_index(p, n);
  return theta * theta;
}

/// Raised when a numerical procedure fails its own validity checks
/// (oracle pair validation, eigensolver non-convergence, resonant
/// denominators). Distinct from argument errors so callers can map it
/// to a dedicated exit status.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hillgaps

#endif
