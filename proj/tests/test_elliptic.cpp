// Elliptic layer: theta series, E1/E2/wp, Kronecker phi/f/f' and their
// rational / trigonometric degenerations. Checks the function identities
// every higher-level construction in the library rests on.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include <rlax/elliptic.hpp>

using rlax::cplx;
using rlax::FunctionFamily;
using rlax::Sampler;

namespace {

const cplx kTaus[] = {{0.0, 1.0}, {0.0, 0.8}, {0.3, 0.9}};

// Direct unreduced theta sum, used as an oracle for the reduced evaluator.
cplx theta_brute(cplx z, cplx tau, int K = 60) {
  const cplx I(0.0, 1.0);
  const double pi = 3.14159265358979323846;
  cplx s = 0.0;
  for (int k = -K; k < K; ++k) {
    const double kh = k + 0.5;
    s += std::exp(I * pi * tau * kh * kh + 2.0 * pi * I * (z + 0.5) * kh);
  }
  return s;
}

cplx fd(const std::function<cplx(cplx)>& g, cplx z, double h = 1e-5) {
  return (g(z + h) - g(z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("theta series matches the brute-force sum") {
  Sampler smp(11);
  for (cplx tau : kTaus) {
    for (int i = 0; i < 40; ++i) {
      // Keep Im z small so the unreduced sum stays well conditioned.
      const cplx z = smp.box(1.7, 0.25);
      const cplx a = rlax::theta(z, tau);
      const cplx b = theta_brute(z, tau);
      CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("theta parity and quasi-periodicity") {
  Sampler smp(12);
  const cplx I(0.0, 1.0);
  const double pi = 3.14159265358979323846;
  for (cplx tau : kTaus) {
    for (int i = 0; i < 30; ++i) {
      const cplx z = smp.point(tau);
      const cplx t = rlax::theta(z, tau);
      CHECK(std::abs(rlax::theta(-z, tau) + t) < 1e-12);
      CHECK(std::abs(rlax::theta(z + 1.0, tau) + t) < 1e-11);
      const cplx shift = -std::exp(-pi * I * tau - 2.0 * pi * I * z) * t;
      CHECK(std::abs(rlax::theta(z + tau, tau) - shift) <
            1e-11 * std::max(1.0, std::abs(shift)));
    }
  }
}

TEST_CASE("series derivatives match finite differences") {
  Sampler smp(13);
  for (cplx tau : kTaus) {
    for (int i = 0; i < 20; ++i) {
      const cplx z = smp.point(tau, 5e-2);
      const auto t = rlax::theta_all(z, tau);
      auto th = [&](cplx w) { return rlax::theta(w, tau); };
      CHECK(std::abs(t.d1 - fd(th, z)) < 1e-7);
      auto d1 = [&](cplx w) { return rlax::theta_all(w, tau).d1; };
      CHECK(std::abs(t.d2 - fd(d1, z)) < 1e-6);
      auto d2 = [&](cplx w) { return rlax::theta_all(w, tau).d2; };
      CHECK(std::abs(t.d3 - fd(d2, z)) < 1e-5);

      const cplx e2 = rlax::eisenstein_E2(z, tau);
      CHECK(std::abs(e2 + fd([&](cplx w) { return rlax::eisenstein_E1(w, tau); },
                             z)) < 1e-6 * std::max(1.0, std::abs(e2)));
      const cplx wpp = rlax::wp_prime(z, tau);
      CHECK(std::abs(wpp - fd([&](cplx w) { return rlax::wp(w, tau); }, z)) <
            1e-5 * std::max(1.0, std::abs(wpp)));
    }
  }
}

TEST_CASE("f and f' are the q-derivatives of phi") {
  Sampler smp(14);
  for (cplx tau : kTaus) {
    for (int i = 0; i < 20; ++i) {
      const cplx z = smp.point(tau, 5e-2);
      const cplx q = smp.point(tau, 5e-2);
      if (rlax::lattice_distance(z + q, tau) < 5e-2) continue;
      const cplx fv = rlax::kronecker_f(z, q, tau);
      CHECK(std::abs(fv -
                     fd([&](cplx u) { return rlax::kronecker_phi(z, u, tau); }, q)) <
            1e-6 * std::max(1.0, std::abs(fv)));
      const cplx fpv = rlax::kronecker_f_prime(z, q, tau);
      CHECK(std::abs(fpv -
                     fd([&](cplx u) { return rlax::kronecker_f(z, u, tau); }, q)) <
            1e-5 * std::max(1.0, std::abs(fpv)));
    }
  }
}

TEST_CASE("phi symmetry, oddness and short-distance expansion") {
  Sampler smp(15);
  for (cplx tau : kTaus) {
    for (int i = 0; i < 25; ++i) {
      const cplx z = smp.point(tau, 5e-2);
      const cplx q = smp.point(tau, 5e-2);
      if (rlax::lattice_distance(z + q, tau) < 5e-2) continue;
      const cplx p = rlax::kronecker_phi(z, q, tau);
      CHECK(std::abs(p - rlax::kronecker_phi(q, z, tau)) < 1e-11);
      CHECK(std::abs(p + rlax::kronecker_phi(-z, -q, tau)) < 1e-11);
    }
    // phi(z,q) = 1/z + E1(q) + z (E1(q)^2 - wp(q))/2 + O(z^2)
    const cplx q = Sampler(16).point(tau, 5e-2);
    const double eps = 1e-4;
    const cplx e1 = rlax::eisenstein_E1(q, tau);
    const cplx lead = rlax::kronecker_phi(cplx(eps), q, tau) - 1.0 / eps - e1 -
                      eps * (e1 * e1 - rlax::wp(q, tau)) / 2.0;
    CHECK(std::abs(lead) < 1e-6);
    // f(0,q) = -E2(q); f'(0,q) = -wp'(q); checked against small-z values.
    CHECK(std::abs(rlax::kronecker_f(cplx(0.0), q, tau) +
                   rlax::eisenstein_E2(q, tau)) < 1e-14);
    const cplx f0 = rlax::kronecker_f(cplx(0.0), q, tau);
    CHECK(std::abs(rlax::kronecker_f(cplx(eps), q, tau) - f0) <
          1e-2 * std::max(1.0, std::abs(f0)));
    const cplx fp0 = rlax::kronecker_f_prime(cplx(0.0), q, tau);
    CHECK(std::abs(rlax::kronecker_f_prime(cplx(eps), q, tau) - fp0) <
          1e-1 * std::max(1.0, std::abs(fp0)));
  }
}

TEST_CASE("genus-one addition identities, 100 samples per modulus") {
  for (cplx tau : kTaus) {
    const auto fam = FunctionFamily::elliptic(tau);
    Sampler smp(17);
    for (int i = 0; i < 100; ++i) {
      const cplx z = smp.point(tau, 5e-2);
      const cplx w = smp.point(tau, 5e-2);
      const cplx q = smp.point(tau, 5e-2);
      const cplx u = smp.point(tau, 5e-2);
      const cplx x = smp.point(tau, 5e-2);
      const cplx y = smp.point(tau, 5e-2);
      bool ok = true;
      for (cplx s : {z - w, w - z, q + u, z + w, z + w + q, x + y, q - x,
                     q - y, z - x, z - y})
        if (rlax::lattice_distance(s, tau) < 5e-2) ok = false;
      if (!ok) continue;

      // Fay trisecant identity.
      const cplx fay = fam.phi(z, q) * fam.phi(w, u) -
                       fam.phi(z - w, q) * fam.phi(w, q + u) -
                       fam.phi(w - z, u) * fam.phi(z, q + u);
      CHECK(std::abs(fay) < 1e-10);

      // phi(eta,z) phi(eta,-z) = wp(eta) - wp(z).
      const cplx prod = fam.phi(q, x) * fam.phi(q, -x) -
                        (fam.wp(q) - fam.wp(x));
      CHECK(std::abs(prod) < 1e-10);

      // phi(z,x) f(z,y) - phi(z,y) f(z,x) = phi(z,x+y)(wp(x) - wp(y)).
      const cplx mix = fam.phi(z, x) * fam.f(z, y) -
                       fam.phi(z, y) * fam.f(z, x) -
                       fam.phi(z, x + y) * (fam.wp(x) - fam.wp(y));
      CHECK(std::abs(mix) < 1e-10);

      // phi(z,q) phi(w,q) = phi(z+w,q)(E1(z)+E1(w)) - f(z+w,q).
      const cplx add = fam.phi(z, q) * fam.phi(w, q) -
                       fam.phi(z + w, q) * (fam.E1(z) + fam.E1(w)) +
                       fam.f(z + w, q);
      CHECK(std::abs(add) < 1e-10);
    }
  }
}

TEST_CASE("degenerate families satisfy the same identities") {
  for (auto fam : {FunctionFamily::rational(), FunctionFamily::trigonometric()}) {
    Sampler smp(18);
    for (int i = 0; i < 100; ++i) {
      const cplx z = smp.box(), w = smp.box(), q = smp.box(), u = smp.box();
      const cplx x = smp.box(), y = smp.box();
      bool ok = true;
      for (cplx s : {z, w, q, u, x, y, z - w, q + u, z + w, z + w + q, x + y})
        if (std::abs(s) < 5e-2) ok = false;
      if (!ok) continue;

      const cplx fay = fam.phi(z, q) * fam.phi(w, u) -
                       fam.phi(z - w, q) * fam.phi(w, q + u) -
                       fam.phi(w - z, u) * fam.phi(z, q + u);
      CHECK(std::abs(fay) < 1e-10);

      const cplx prod = fam.phi(q, x) * fam.phi(q, -x) -
                        (fam.wp(q) - fam.wp(x));
      CHECK(std::abs(prod) < 1e-10);

      const cplx mix = fam.phi(z, x) * fam.f(z, y) -
                       fam.phi(z, y) * fam.f(z, x) -
                       fam.phi(z, x + y) * (fam.wp(x) - fam.wp(y));
      CHECK(std::abs(mix) < 1e-10);

      const cplx add = fam.phi(z, q) * fam.phi(w, q) -
                       fam.phi(z + w, q) * (fam.E1(z) + fam.E1(w)) +
                       fam.f(z + w, q);
      CHECK(std::abs(add) < 1e-10);

      // In the degenerations f has no z-dependence; check it is still the
      // q-derivative of phi, and f' that of f.
      const cplx fv = fam.f(z, q);
      CHECK(std::abs(fv - fd([&](cplx v) { return fam.phi(z, v); }, q)) <
            1e-6 * std::max(1.0, std::abs(fv)));
      const cplx fpv = fam.f_prime(z, q);
      CHECK(std::abs(fpv - fd([&](cplx v) { return fam.f(z, v); }, q)) <
            1e-5 * std::max(1.0, std::abs(fpv)));
    }
  }
}

TEST_CASE("guard rails: pole proximity and low Im(tau) are rejected") {
  CHECK_THROWS_AS(rlax::eisenstein_E1(cplx(1e-9), cplx(0, 1)),
                  rlax::PoleProximityError);
  CHECK_THROWS_AS(rlax::theta(cplx(0.3), cplx(0.0, 0.01)),
                  rlax::PrecisionError);
  CHECK_THROWS_AS(FunctionFamily::elliptic(cplx(0.0, 0.01)),
                  rlax::PrecisionError);
}
