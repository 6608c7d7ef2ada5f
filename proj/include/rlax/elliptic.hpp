#pragma once
// Odd theta function, Eisenstein functions E1/E2, Weierstrass wp/wp',
// the Kronecker function phi(z,q) with its q-derivatives f, f', and the
// rational / trigonometric (hyperbolic) degenerations of all of them.
//
// theta(z) = sum_k exp(pi i tau (k+1/2)^2 + 2 pi i (z+1/2)(k+1/2)),
// summed after reducing z modulo the period lattice; derivatives are
// computed by term-wise series differentiation (no finite differences).

#include <array>
#include <cmath>

#include "rlax/core.hpp"

namespace rlax {

struct ModulusTau {
  cplx tau;
  explicit ModulusTau(cplx t) : tau(t) {
    if (tau.imag() < kTauMinIm)
      throw PrecisionError("Im(tau) below the precision floor 0.05");
  }
};

// theta and its first three z-derivatives.
struct ThetaEval {
  cplx th, d1, d2, d3;
};

inline ThetaEval theta_all(cplx z, cplx tau) {
  if (tau.imag() < kTauMinIm)
    throw PrecisionError("Im(tau) below the precision floor 0.05");
  constexpr double pi = 3.14159265358979323846;
  const cplx I(0.0, 1.0);

  // Reduce z = z0 + m + n*tau with z0 in the fundamental cell; then
  // theta(z) = C e^{mu z} theta(z0) with mu = -2 pi i n and
  // C = (-1)^{m+n} exp(i pi tau n^2) e^{-mu(m + n tau)} ... folded so that
  // g(z) = C e^{mu z} carries the exact quasi-periodicity factor.
  const double n = std::round(z.imag() / tau.imag());
  const cplx zp = z - n * tau;
  const double m = std::round(zp.real());
  const cplx z0 = zp - m;
  const cplx mu = -2.0 * pi * I * n;
  const double sign = (std::llround(m + n) % 2 == 0) ? 1.0 : -1.0;
  const cplx C = sign * std::exp(I * pi * tau * n * n);

  // Series at the reduced point, term-wise derivatives h[d] = sum w^d e.
  std::array<cplx, 4> h{};
  double max_term = 0.0;
  for (int k = 0;; ++k) {
    bool done = true;
    for (const int kk : {k, -k - 1}) {
      const double kh = kk + 0.5;
      const cplx e = std::exp(I * pi * tau * kh * kh +
                              2.0 * pi * I * (z0 + 0.5) * kh);
      const cplx w = 2.0 * pi * I * kh;
      cplx wp = 1.0;
      for (int d = 0; d < 4; ++d) {
        h[d] += e * wp;
        wp *= w;
      }
      const double mag = std::abs(e) * std::max(1.0, std::pow(std::abs(w), 3));
      max_term = std::max(max_term, mag);
      if (mag > 1e-18 * max_term) done = false;
    }
    if (done && k > 3) break;
    if (k > 600) throw PrecisionError("theta series failed to converge");
  }

  const cplx g = C * std::exp(mu * (z0 + m + n * tau));
  ThetaEval out;
  out.th = g * h[0];
  out.d1 = g * (mu * h[0] + h[1]);
  out.d2 = g * (mu * mu * h[0] + 2.0 * mu * h[1] + h[2]);
  out.d3 = g * (mu * mu * mu * h[0] + 3.0 * mu * mu * h[1] + 3.0 * mu * h[2] +
                h[3]);
  return out;
}

inline cplx theta(cplx z, cplx tau) { return theta_all(z, tau).th; }

inline cplx eisenstein_E1(cplx z, cplx tau) {
  require_pole_clear(z, tau, kPoleGuard, "E1 argument");
  const auto t = theta_all(z, tau);
  return t.d1 / t.th;
}

inline cplx eisenstein_E2(cplx z, cplx tau) {
  require_pole_clear(z, tau, kPoleGuard, "E2 argument");
  const auto t = theta_all(z, tau);
  const cplx e1 = t.d1 / t.th;
  return e1 * e1 - t.d2 / t.th;  // E2 = -d/dz (theta'/theta)
}

// c_theta = theta'''(0) / (3 theta'(0)); wp = E2 + c_theta.
inline cplx c_theta(cplx tau) {
  const auto t = theta_all(cplx(0.0), tau);
  return t.d3 / (3.0 * t.d1);
}

inline cplx wp(cplx z, cplx tau) { return eisenstein_E2(z, tau) + c_theta(tau); }

inline cplx wp_prime(cplx z, cplx tau) {
  require_pole_clear(z, tau, kPoleGuard, "wp' argument");
  const auto t = theta_all(z, tau);
  const cplx a = t.d1 / t.th, b = t.d2 / t.th, c = t.d3 / t.th;
  // wp' = E2' = -(theta'''/theta - 3 theta' theta''/theta^2 + 2(theta'/theta)^3)
  return -(c - 3.0 * a * b + 2.0 * a * a * a);
}

inline cplx kronecker_phi(cplx z, cplx q, cplx tau) {
  require_pole_clear(z, tau, kPoleGuard, "phi first slot");
  require_pole_clear(q, tau, kPoleGuard, "phi second slot");
  const auto t0 = theta_all(cplx(0.0), tau);
  return t0.d1 * theta(z + q, tau) / (theta(z, tau) * theta(q, tau));
}

// f(z,q) = d/dq phi(z,q) = phi(z,q)(E1(z+q) - E1(q)); f(0,q) = -E2(q).
inline cplx kronecker_f(cplx z, cplx q, cplx tau) {
  if (std::abs(z) < 1e-14) return -eisenstein_E2(q, tau);
  return kronecker_phi(z, q, tau) *
         (eisenstein_E1(z + q, tau) - eisenstein_E1(q, tau));
}

// f'(z,q) = d/dq f(z,q); f'(0,q) = -wp'(q).
inline cplx kronecker_f_prime(cplx z, cplx q, cplx tau) {
  if (std::abs(z) < 1e-14) return -wp_prime(q, tau);
  return kronecker_f(z, q, tau) *
             (eisenstein_E1(z + q, tau) - eisenstein_E1(q, tau)) +
         kronecker_phi(z, q, tau) *
             (eisenstein_E2(q, tau) - eisenstein_E2(z + q, tau));
}

// ---------------------------------------------------------------------------
// Function family: rational / trigonometric (hyperbolic) / elliptic kernels
// sharing one interface, so identity tests can run family-uniformly.
// ---------------------------------------------------------------------------

enum class FamilyKind { Rational, Trigonometric, Elliptic };

class FunctionFamily {
 public:
  static FunctionFamily rational() { return FunctionFamily(FamilyKind::Rational, cplx(0, 1)); }
  static FunctionFamily trigonometric() { return FunctionFamily(FamilyKind::Trigonometric, cplx(0, 1)); }
  static FunctionFamily elliptic(cplx tau) {
    if (tau.imag() < kTauMinIm)
      throw PrecisionError("Im(tau) below the precision floor 0.05");
    return FunctionFamily(FamilyKind::Elliptic, tau);
  }

  FamilyKind kind() const { return kind_; }
  cplx tau() const { return tau_; }

  cplx E1(cplx z) const {
    switch (kind_) {
      case FamilyKind::Rational: return 1.0 / z;
      case FamilyKind::Trigonometric: return std::cosh(z) / std::sinh(z);
      default: return eisenstein_E1(z, tau_);
    }
  }
  cplx E2(cplx z) const {
    switch (kind_) {
      case FamilyKind::Rational: return 1.0 / (z * z);
      case FamilyKind::Trigonometric: {
        const cplx s = std::sinh(z);
        return 1.0 / (s * s);
      }
      default: return eisenstein_E2(z, tau_);
    }
  }
  // Weierstrass function of the family; wp = E2 + c with c = c_theta
  // (elliptic) and c = 0 in the degenerations.
  cplx c() const { return kind_ == FamilyKind::Elliptic ? c_theta(tau_) : cplx(0.0); }
  cplx wp(cplx z) const { return E2(z) + c(); }
  cplx wp_prime(cplx z) const {
    switch (kind_) {
      case FamilyKind::Rational: return -2.0 / (z * z * z);
      case FamilyKind::Trigonometric: {
        const cplx s = std::sinh(z);
        return -2.0 * std::cosh(z) / (s * s * s);
      }
      default: return rlax::wp_prime(z, tau_);
    }
  }
  cplx phi(cplx z, cplx q) const {
    switch (kind_) {
      case FamilyKind::Rational: return 1.0 / z + 1.0 / q;
      case FamilyKind::Trigonometric:
        return std::cosh(z) / std::sinh(z) + std::cosh(q) / std::sinh(q);
      default: return kronecker_phi(z, q, tau_);
    }
  }
  cplx f(cplx z, cplx q) const {
    switch (kind_) {
      case FamilyKind::Rational: return -1.0 / (q * q);
      case FamilyKind::Trigonometric: return -E2(q);
      default: return kronecker_f(z, q, tau_);
    }
  }
  cplx f_prime(cplx z, cplx q) const {
    switch (kind_) {
      case FamilyKind::Rational: return 2.0 / (q * q * q);
      case FamilyKind::Trigonometric: return -wp_prime(q);
      default: return kronecker_f_prime(z, q, tau_);
    }
  }

 private:
  FunctionFamily(FamilyKind k, cplx t) : kind_(k), tau_(t) {}
  FamilyKind kind_;
  cplx tau_;
};

}  // namespace rlax
