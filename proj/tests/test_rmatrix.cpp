// R-matrix families and their identity suite.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rlax/rmatrix.hpp>

using rlax::cplx;
using rlax::Mat;
using rlax::RMatrixFamily;
using rlax::Sampler;

namespace {
const cplx kTau(0.0, 0.9);
}

TEST_CASE("scalar reductions at order 1") {
  const auto bel = RMatrixFamily::belavin(1, kTau);
  const cplx z(0.21, 0.1), q(0.37, -0.2);
  CHECK(std::abs(bel.R(z, q)(0, 0) - rlax::kronecker_phi(z, q, kTau)) < 1e-13);
  CHECK(std::abs(bel.F0(q)(0, 0) + rlax::eisenstein_E2(q, kTau)) < 1e-13);

  const auto yang = RMatrixFamily::yang(1);
  CHECK(std::abs(yang.R(z, q)(0, 0) - (1.0 / z + 1.0 / q)) < 1e-15);
}

TEST_CASE("F and F' against finite differences in the dynamical slot") {
  const double h = 1e-5;
  for (int N : {1, 2, 3}) {
    const auto fam = RMatrixFamily::belavin(N, kTau);
    const cplx z(0.21, 0.1), q(0.37, -0.2);
    const Mat fd = (fam.R(z, q + h) - fam.R(z, q - h)) / (2.0 * h);
    CHECK(rlax::max_abs(fam.F(z, q) - fd) < 1e-7);
    const Mat fd2 = (fam.F(z, q + h) - fam.F(z, q - h)) / (2.0 * h);
    CHECK(rlax::max_abs(fam.Fp(z, q) - fd2) < 1e-6);
  }
  const auto xxz = RMatrixFamily::xxz();
  const cplx z(0.33, 0.2), q(0.4, -0.15);
  const Mat fd = (xxz.R(z, q + h) - xxz.R(z, q - h)) / (2.0 * h);
  CHECK(rlax::max_abs(xxz.F(z, q) - fd) < 1e-7);
  // The z-dependent part of the XXZ kernel is q-independent: F = F0 exactly.
  CHECK(rlax::max_abs(xxz.F(z, q) - xxz.F0(q)) < 1e-14);
}

TEST_CASE("F0 from two independent routes") {
  const double h = 1e-6;
  for (int N : {1, 2, 3}) {
    const auto fam = RMatrixFamily::belavin(N, kTau);
    const cplx q(0.31, 0.17);
    const Mat fd =
        (fam.r_classical(q + h) - fam.r_classical(q - h)) / (2.0 * h);
    CHECK(rlax::max_abs(fam.F0(q) - fd) < 1e-6);
    const Mat fd2 = (fam.F0(q + h) - fam.F0(q - h)) / (2.0 * h);
    CHECK(rlax::max_abs(fam.F0p(q) - fd2) < 1e-5);
  }
}

TEST_CASE("classical expansion: r and m recovered from small z") {
  for (int N : {1, 2}) {
    const auto fam = RMatrixFamily::belavin(N, kTau);
    const cplx q(0.29, -0.21);
    const Mat I = Mat::Identity(fam.dim(), fam.dim());
    const double eta = 1e-4;
    const Mat r = fam.r_classical(q);
    CHECK(rlax::max_abs(fam.R(eta, q) - I / eta - r) < 1e-2);
    const Mat m = fam.m_classical(q);
    CHECK(rlax::max_abs((fam.R(eta, q) - I / eta - r) / eta - m) < 1e-2);
  }
}

TEST_CASE("identity suite across all families") {
  std::vector<RMatrixFamily> fams = {
      RMatrixFamily::belavin(2, kTau), RMatrixFamily::belavin(3, kTau),
      RMatrixFamily::yang(1),          RMatrixFamily::yang(2),
      RMatrixFamily::yang(3),          RMatrixFamily::xxz()};
  for (const auto& fam : fams) {
    Sampler smp(101);
    const int ns = 12;
    const double tol = 1e-9;
    auto rep = rlax::check_aybe(fam, smp, ns, tol);
    rep.merge(rlax::check_unitarity_skew(fam, smp, ns, tol));
    rep.merge(rlax::check_qybe(fam, smp, ns, tol));
    for (const auto& e : rep.entries) {
      INFO(e.identity << " residual " << e.max_residual);
      CHECK(e.pass);
    }
  }
}

TEST_CASE("order-2 Pauli accident holds, order 3 breaks it") {
  Sampler smp(7);
  auto rep2 = rlax::check_pauli_structure(2, kTau, smp, 10, 1e-9);
  auto rep3 = rlax::check_pauli_structure(3, kTau, smp, 10, 1e-9);
  for (const auto& e : rep2.entries) CHECK(e.pass);
  for (const auto& e : rep3.entries) {
    CHECK_FALSE(e.pass);
    CHECK(e.max_residual > 1e-3);
    CHECK(e.pass == e.expect_pass);
  }
}

TEST_CASE("finite Fourier identities") {
  for (int N : {2, 3}) {
    Sampler smp(31);
    auto rep = rlax::check_fourier(N, kTau, smp, 10, 1e-9);
    for (const auto& e : rep.entries) {
      INFO("N=" << N << " " << e.identity << " residual " << e.max_residual);
      CHECK(e.pass);
    }
  }
}

TEST_CASE("classical YBE and r-m flatness") {
  for (int N : {1, 2}) {
    Sampler smp(53);
    auto rep = rlax::check_kzb_flatness(N, kTau, smp, 8, 1e-7);
    for (const auto& e : rep.entries) {
      INFO("N=" << N << " " << e.identity << " residual " << e.max_residual);
      CHECK(e.pass);
    }
  }
}
