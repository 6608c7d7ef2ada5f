#pragma once
// Core scalar types, error types and deterministic sampling helpers shared
// by the whole library.

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rlax {

using cplx = std::complex<double>;
using namespace std::complex_literals;

inline constexpr double kTauMinIm = 0.05;     // smallest usable Im(tau)
inline constexpr double kPoleGuard = 1e-6;    // lattice-distance pole guard

// Raised when an argument sits too close to a lattice point (or another
// pole of the evaluated function); residuals there are meaningless.
struct PoleProximityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a requested evaluation cannot reach double precision
// (e.g. Im(tau) below kTauMinIm, failed extrapolation consistency).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for structurally invalid model configurations (bad couplings,
// wrong rank/site scheme); message names the violated constraint.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Distance from z to the nearest point of Z + tau*Z.
inline double lattice_distance(cplx z, cplx tau) {
  const double n = std::round(z.imag() / tau.imag());
  const cplx zp = z - n * tau;
  const double m = std::round(zp.real());
  return std::abs(zp - m);
}

inline void require_pole_clear(cplx z, cplx tau, double guard = kPoleGuard,
                               const char* what = "argument") {
  if (lattice_distance(z, tau) < guard)
    throw PoleProximityError(std::string(what) +
                             " within pole guard of the period lattice");
}

// Deterministic complex sampler: all randomness in the library flows
// through this so a seed fully determines every report.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }

  // Generic complex draw in a centred box.
  cplx box(double half_re = 0.45, double half_im = 0.45) {
    const double re = real(-half_re, half_re);
    const double im = real(-half_im, half_im);
    return {re, im};
  }

  // Complex draw kept clear of the lattice of `tau` (resample on pole hit).
  cplx point(cplx tau, double guard = 1e-3) {
    for (int attempt = 0; attempt < 256; ++attempt) {
      const cplx z = box();
      if (lattice_distance(z, tau) > guard) return z;
    }
    throw PrecisionError("sampler failed to find a pole-clear point");
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rlax
