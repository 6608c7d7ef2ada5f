#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rlax/dynamics.hpp"

using namespace rlax;

namespace {

const cplx kTau(0.0, 0.9);

// Imaginary coupling makes the potential repulsive on the real slice, so
// the trajectory stays away from the lattice poles and the local error
// constant of the integrator remains moderate.
ModelConfig config_A2(int order) {
  return ModelConfig::standard(RootSystem::A, 2, order, kTau, cplx(0.0, 0.7));
}

PhasePoint initial_A2() {
  PhasePoint st;
  st.q.resize(2);
  st.p.resize(2);
  st.q << cplx(0.31, 0.0), cplx(-0.12, 0.0);
  st.p << cplx(0.20, 0.0), cplx(-0.20, 0.0);
  return st;
}

double h_drift(const Trajectory& tr) {
  for (const auto& d : conserved_report(tr))
    if (d.name == "H") return d.max_rel_drift;
  return -1.0;
}

}  // namespace

TEST_CASE("conserved quantities along the A_1 flow") {
  const ModelConfig cfg = config_A2(1);
  const std::vector<cplx> probes{cplx(0.31, 0.17)};
  const Trajectory tr = integrate(cfg, initial_A2(), 1.0, 1e-3, probes);

  REQUIRE(tr.t.size() > 10);
  CHECK(tr.t.back() == doctest::Approx(1.0));
  for (const auto& d : conserved_report(tr)) {
    INFO(d.name);
    CHECK(d.max_rel_drift < 1e-8);
  }
  // The pair property holds at every visited phase point, not just samples
  // from the generic ensemble.
  CHECK(lax_residual(cfg, tr.states.back(), probes[0]) < 1e-10);
}

TEST_CASE("conserved quantities, matrix-valued pair (order 2)") {
  const ModelConfig cfg = config_A2(2);
  const std::vector<cplx> probes{cplx(0.31, 0.17)};
  const Trajectory tr = integrate(cfg, initial_A2(), 0.5, 1e-3, probes);
  for (const auto& d : conserved_report(tr)) {
    INFO(d.name);
    CHECK(d.max_rel_drift < 1e-8);
  }
}

TEST_CASE("fourth-order convergence: halving dt shrinks drift >= 12x") {
  const ModelConfig cfg = config_A2(1);
  const std::vector<cplx> probes{};
  const double coarse =
      h_drift(integrate(cfg, initial_A2(), 5.0, 2e-2, probes, 5));
  const double fine =
      h_drift(integrate(cfg, initial_A2(), 5.0, 1e-2, probes, 10));
  REQUIRE(coarse > 1e-13);  // above the rounding floor, ratio is meaningful
  CHECK(coarse / fine >= 12.0);
}

TEST_CASE("integration rejects bad windows and near-pole data") {
  const ModelConfig cfg = config_A2(1);
  CHECK_THROWS_AS(integrate(cfg, initial_A2(), -1.0, 1e-3, {}), ConfigError);
  CHECK_THROWS_AS(integrate(cfg, initial_A2(), 1.0, 0.0, {}), ConfigError);
  PhasePoint bad = initial_A2();
  bad.q(1) = bad.q(0) + cplx(1e-8, 0.0);  // collision: q_01 hits the pole
  CHECK_THROWS_AS(integrate(cfg, bad, 1.0, 1e-3, {}), PoleProximityError);
}
