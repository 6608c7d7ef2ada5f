// Classical Lax pairs: residual checks for every root system, sharp
// negative controls, rank-1 reductions, and the block-cancellation
// identity behind the off-diagonal part of the Lax equation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rlax/laxpairs.hpp>

using rlax::cplx;
using rlax::Mat;
using rlax::ModelConfig;
using rlax::PhasePoint;
using rlax::RootSystem;
using rlax::Sampler;

namespace {
const cplx kTau(0.0, 0.9);
const cplx kNu(0.7, 0.1);
const cplx kZ(0.31, 0.17);

double residual_sweep(const ModelConfig& cfg, int samples, unsigned seed) {
  Sampler smp(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto st = rlax::sample_state(cfg, smp);
    worst = std::max(worst, rlax::lax_residual(cfg, st, kZ));
  }
  return worst;
}
}  // namespace

TEST_CASE("A-type pair closes for ranks 1..3") {
  for (auto [N, order] : std::vector<std::pair<int, int>>{
           {2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
    const auto cfg = ModelConfig::standard(RootSystem::A, N, order, kTau, kNu);
    const double r = residual_sweep(cfg, 3, 11);
    INFO("A N=" << N << " rank=" << order << " residual " << r);
    CHECK(r < 1e-9);
  }
}

TEST_CASE("C and BC pairs close, any rank, both boundary signs") {
  for (int order : {2, 3}) {
    const auto cfg = ModelConfig::standard(RootSystem::C, 2, order, kTau, kNu);
    const double r = residual_sweep(cfg, order == 2 ? 3 : 1, 13);
    INFO("C rank=" << order << " residual " << r);
    CHECK(r < 1e-9);
  }
  for (int sign : {+1, -1}) {
    const auto cfg = ModelConfig::standard(RootSystem::BC, 2, 2, kTau, kNu, sign);
    const double r = residual_sweep(cfg, 3, 17);
    INFO("BC sign=" << sign << " residual " << r);
    CHECK(r < 1e-9);
  }
  const auto cfg3 = ModelConfig::standard(RootSystem::BC, 2, 3, kTau, kNu);
  CHECK(residual_sweep(cfg3, 1, 19) < 1e-9);
}

TEST_CASE("D and B pairs close at rank 2") {
  for (int N : {2, 3}) {
    const auto cfg = ModelConfig::standard(RootSystem::D, N, 2, kTau, kNu);
    const double r = residual_sweep(cfg, 3, 23);
    INFO("D N=" << N << " residual " << r);
    CHECK(r < 1e-9);
  }
  for (int sign : {+1, -1}) {
    const auto cfg = ModelConfig::standard(RootSystem::B, 2, 2, kTau, kNu, sign);
    const double r = residual_sweep(cfg, 3, 29);
    INFO("B sign=" << sign << " residual " << r);
    CHECK(r < 1e-9);
  }
}

TEST_CASE("scalar three-coupling pair closes on its constraint surface") {
  ModelConfig cfg = ModelConfig::standard(RootSystem::ScalarDP, 2, 1, kTau, kNu);
  cfg.mu = cplx(0.4, -0.2);
  cfg.g = std::sqrt(2.0 * kNu * kNu - kNu * cfg.mu);
  CHECK(residual_sweep(cfg, 3, 31) < 1e-9);
  cfg.N = 3;
  CHECK(residual_sweep(cfg, 2, 37) < 1e-9);
  // g = 0 branch: constraint satisfied for any mu.
  cfg.N = 2;
  cfg.g = 0.0;
  CHECK(residual_sweep(cfg, 2, 41) < 1e-9);
}

TEST_CASE("negative controls: the constraints are sharp") {
  ModelConfig d3 = ModelConfig::standard(RootSystem::D, 2, 3, kTau, kNu);
  d3.allow_inadmissible = true;
  CHECK(residual_sweep(d3, 2, 43) > 1e-3);

  ModelConfig bc = ModelConfig::standard(RootSystem::BC, 2, 2, kTau, kNu);
  bc.g = 0.7 * kNu;
  bc.allow_inadmissible = true;
  CHECK(residual_sweep(bc, 2, 47) > 1e-3);

  ModelConfig dp = ModelConfig::standard(RootSystem::ScalarDP, 2, 1, kTau, kNu);
  dp.mu = cplx(0.4, -0.2);
  dp.g = 0.7 * kNu;  // violates g (g^2 - 2 nu^2 + nu mu) = 0
  dp.allow_inadmissible = true;
  CHECK(residual_sweep(dp, 2, 53) > 1e-3);

  // Without the override the same configs are rejected up front.
  d3.allow_inadmissible = false;
  CHECK_THROWS_AS(rlax::lax_descriptor(d3), rlax::ConfigError);
  bc.allow_inadmissible = false;
  CHECK_THROWS_AS(rlax::lax_descriptor(bc), rlax::ConfigError);
}

TEST_CASE("rank-1 A pair equals the scalar pair with Kronecker kernels") {
  const int N = 3;
  const auto cfg = ModelConfig::standard(RootSystem::A, N, 1, kTau, kNu);
  Sampler smp(59);
  const auto st = rlax::sample_state(cfg, smp);
  const Mat L = rlax::build_L(cfg, st, kZ);
  const Mat M = rlax::build_M(cfg, st, kZ, /*include_scalar=*/false);
  Mat Ld = Mat::Zero(N, N), Md = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    Ld(i, i) = st.p(i);
    for (int k = 0; k < N; ++k) {
      if (k == i) continue;
      const cplx qik = st.q(i) - st.q(k);
      Ld(i, k) = kNu * rlax::kronecker_phi(kZ, qik, kTau);
      Md(i, k) = kNu * rlax::kronecker_f(kZ, qik, kTau);
      Md(i, i) += kNu * rlax::eisenstein_E2(qik, kTau);
    }
  }
  CHECK(rlax::max_abs(L - Ld) < 1e-12);
  CHECK(rlax::max_abs(M - Md) < 1e-12);
}

TEST_CASE("rank-1 BC pair equals the scalar pair with mu = nu, g = nu") {
  ModelConfig bc = ModelConfig::standard(RootSystem::BC, 2, 1, kTau, kNu);
  ModelConfig dp = ModelConfig::standard(RootSystem::ScalarDP, 2, 1, kTau, kNu);
  Sampler smp(61);
  const auto st = rlax::sample_state(bc, smp);
  const Mat Lbc = rlax::build_L(bc, st, kZ);
  const Mat Ldp = rlax::build_L(dp, st, kZ);
  CHECK(rlax::max_abs(Lbc - Ldp) < 1e-12);
  // The M matrices generate the same flow; they may differ by a scalar
  // (both satisfy the Lax equation, which fixes M up to a multiple of Id).
  const Mat D = rlax::build_M(bc, st, kZ) - rlax::build_M(dp, st, kZ);
  const Mat off = D - D(0, 0) * Mat::Identity(D.rows(), D.cols());
  CHECK(rlax::max_abs(off) < 1e-11);
}

TEST_CASE("off-diagonal cancellation identity on three sites") {
  const int order = 2, Nsite = 3;
  const auto fam = rlax::RMatrixFamily::belavin(order, kTau);
  Sampler smp(67);
  Eigen::VectorXcd q(Nsite);
  for (int i = 0; i < Nsite; ++i) q(i) = smp.point(kTau, 8e-2);
  if (rlax::lattice_distance(q(0) - q(1), kTau) < 5e-2 ||
      rlax::lattice_distance(q(0) - q(2), kTau) < 5e-2 ||
      rlax::lattice_distance(q(1) - q(2), kTau) < 5e-2)
    return;  // resample-free guard: seed is fixed and known clear
  const cplx z = kZ;
  auto Rm = [&](int i, int j) {
    return rlax::embed_pair(fam.R(z, q(i) - q(j)), i, j, Nsite, order);
  };
  auto Fm = [&](int i, int j) {
    return rlax::embed_pair(fam.F(z, q(i) - q(j)), i, j, Nsite, order);
  };
  auto F0m = [&](int i, int j) {
    return rlax::embed_pair(fam.F0(q(i) - q(j)), i, j, Nsite, order);
  };
  Mat Fscal = Mat::Zero(8, 8);
  for (int k = 0; k < Nsite; ++k)
    for (int m = 0; m < k; ++m) Fscal += F0m(k, m);
  for (auto [a, c] : std::vector<std::pair<int, int>>{{0, 2}, {1, 0}, {2, 1}}) {
    Mat lhs = rlax::comm(Rm(a, c), Fscal);
    for (int b = 0; b < Nsite; ++b)
      if (b != a && b != c) lhs += Rm(a, b) * Fm(b, c) - Fm(a, b) * Rm(b, c);
    Mat rhs = Mat::Zero(8, 8);
    for (int b = 0; b < Nsite; ++b) {
      if (b != c) rhs += Rm(a, c) * F0m(b, c);
      if (b != a) rhs -= F0m(a, b) * Rm(a, c);
    }
    CHECK(rlax::max_abs(lhs - rhs) / std::max(1.0, rlax::max_abs(rhs)) < 1e-10);
  }
}

TEST_CASE("Hamiltonian generates the equations of motion") {
  const double h = 1e-6;
  for (auto sys : {RootSystem::A, RootSystem::C, RootSystem::BC, RootSystem::D,
                   RootSystem::B, RootSystem::ScalarDP}) {
    const int order = (sys == RootSystem::ScalarDP) ? 1
                      : (sys == RootSystem::A || sys == RootSystem::C) ? 3 : 2;
    const auto cfg = ModelConfig::standard(sys, 2, order, kTau, kNu);
    Sampler smp(71);
    const auto st = rlax::sample_state(cfg, smp);
    const auto [qdot, pdot] = rlax::eom(cfg, st);
    for (int a = 0; a < cfg.N; ++a) {
      CHECK(std::abs(qdot(a) - st.p(a)) < 1e-14);
      PhasePoint plus = st, minus = st;
      plus.q(a) += h;
      minus.q(a) -= h;
      const cplx grad =
          (rlax::hamiltonian(cfg, plus) - rlax::hamiltonian(cfg, minus)) /
          (2.0 * h);
      CHECK(std::abs(pdot(a) + grad) < 1e-5 * std::max(1.0, std::abs(grad)));
    }
  }
}

TEST_CASE("admissibility table rows") {
  const auto tab = rlax::admissibility_table();
  REQUIRE(tab.size() == 4);
  CHECK(tab[0].system == "SO(2N)");
  CHECK(tab[1].couplings == "g=+-sqrt(2) nu, mu=0");
  CHECK(tab[2].rank == "any");
  CHECK(tab[3].sites == "2N+1");
}
