#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rlax/spin_tops.hpp"

using namespace rlax;

namespace {

const cplx kTau(0.0, 0.9);
const cplx kZ(0.37, 0.23);

SpinState make_state(int N, int r, cplx trace_val) {
  SpinState st;
  st.q.resize(N);
  st.p.resize(N);
  const cplx qpool[4] = {cplx(0.31, 0.12), cplx(-0.27, -0.05), cplx(0.11, 0.40),
                         cplx(-0.52, 0.21)};
  for (int i = 0; i < N; ++i) {
    st.q(i) = qpool[i % 4];
    st.p(i) = cplx(0.4 - 0.17 * i, 0.05 + 0.09 * i);
  }
  st.xi.resize(N, r);
  st.eta.resize(N, r);
  for (int i = 0; i < N; ++i)
    for (int a = 0; a < r; ++a) {
      st.xi(i, a) = cplx(0.7 + 0.13 * i - 0.21 * a, 0.25 - 0.07 * i + 0.11 * a);
      st.eta(i, a) = cplx(0.5 - 0.09 * i + 0.17 * a, -0.3 + 0.12 * i - 0.05 * a);
    }
  enforce_spin_constraint(st, trace_val);
  return st;
}

std::vector<Mat> rank_one_B(const SpinState& st) {
  std::vector<Mat> B;
  for (int i = 0; i < st.xi.rows(); ++i)
    B.push_back(st.xi.row(i).transpose() * st.eta.row(i));
  return B;
}

}  // namespace

TEST_CASE("spin flow matches the finite-difference Hamiltonian flow") {
  const SpinState st = make_state(3, 2, cplx(0.4, 0.1));
  const auto fl = spin_flows(st, kTau);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    SpinState sp = st, sm = st;
    sp.q(i) += h;
    sm.q(i) -= h;
    const cplx pd =
        -(spin_hamiltonian(sp, kTau) - spin_hamiltonian(sm, kTau)) / (2.0 * h);
    CHECK(std::abs(fl.pdot(i) - pd) < 1e-6 * std::max(1.0, std::abs(pd)));
    for (int a = 0; a < 2; ++a) {
      sp = st;
      sm = st;
      sp.eta(i, a) += h;
      sm.eta(i, a) -= h;
      const cplx xd =
          -(spin_hamiltonian(sp, kTau) - spin_hamiltonian(sm, kTau)) / (2.0 * h);
      CHECK(std::abs(fl.xidot(i, a) - xd) < 1e-6 * std::max(1.0, std::abs(xd)));
      sp = st;
      sm = st;
      sp.xi(i, a) += h;
      sm.xi(i, a) -= h;
      const cplx ed =
          (spin_hamiltonian(sp, kTau) - spin_hamiltonian(sm, kTau)) / (2.0 * h);
      CHECK(std::abs(fl.etadot(i, a) - ed) < 1e-6 * std::max(1.0, std::abs(ed)));
    }
  }
  // The flow preserves the diagonal constraint S_ii = const.
  const Mat Sdot =
      fl.xidot * st.eta.transpose() + st.xi * fl.etadot.transpose();
  for (int i = 0; i < 3; ++i) CHECK(std::abs(Sdot(i, i)) < 1e-12);
}

TEST_CASE("spin Calogero-Moser Lax equation closes on constrained states") {
  CHECK(spin_cm_residual(make_state(2, 2, cplx(0.4, 0.1)), kZ, kTau) < 1e-10);
  CHECK(spin_cm_residual(make_state(3, 2, cplx(0.4, 0.1)), kZ, kTau) < 1e-10);
  CHECK(spin_cm_residual(make_state(3, 3, cplx(0.4, 0.1)), kZ, kTau) < 1e-10);
}

TEST_CASE("vanishing spin matrix gives free motion") {
  SpinState st = make_state(2, 2, cplx(0.4, 0.1));
  st.xi.col(1).setZero();
  st.eta.col(0).setZero();  // xi rows lie in span(e0), eta rows in span(e1)
  CHECK(max_abs(st.S()) < 1e-15);
  const auto fl = spin_flows(st, kTau);
  CHECK(fl.pdot.cwiseAbs().maxCoeff() < 1e-15);
  const auto [L, M] = spin_cm_lax(st, kZ, kTau);
  CHECK(max_abs(M) < 1e-15);
  CHECK(max_abs(comm(L, M)) < 1e-15);
}

TEST_CASE("tops Hamiltonian: component and trace routes agree") {
  for (int order : {2, 3}) {
    const SpinState st = make_state(2, order, cplx(0.5, -0.2));
    const cplx h1 = tops_hamiltonian(st, order, kTau, false);
    const cplx h2 = tops_hamiltonian(st, order, kTau, true);
    CHECK(std::abs(h1 - h2) < 1e-12 * std::max(1.0, std::abs(h1)));
    const cplx hx = tops_hamiltonian_from_trL2(st, order, kTau);
    CHECK(std::abs(hx - h1) < 1e-10 * std::max(1.0, std::abs(h1)));
  }
}

TEST_CASE("classical scalar block: pure gamma=0 content") {
  const int N = 2, order = 2;
  Eigen::VectorXcd q(N);
  q << cplx(0.31, 0.12), cplx(-0.27, -0.05);
  const cplx b0(0.6, -0.1), b1(-0.2, 0.3);
  const std::vector<Mat> B{b0 * Mat::Identity(order, order),
                           b1 * Mat::Identity(order, order)};
  const cplx expect = -b0 * b1 * eisenstein_E2(q(0) - q(1), kTau);
  CHECK(std::abs(classical_F0(q, B, order, kTau) - expect) < 1e-12);
}

TEST_CASE("Fourier reduction of the E2-weighted trace sum") {
  for (int order : {1, 2, 3}) {
    const SpinState st = make_state(2, order, cplx(0.5, -0.2));
    const auto r = check_fourier_reduction(st.q, rank_one_B(st), order, kTau);
    INFO("order=" << order);
    CHECK(r.residual_sum < 1e-9);
    CHECK(r.residual_step < 1e-9);
  }
}

TEST_CASE("quantized tops interaction is a multiple of the constant block") {
  Eigen::VectorXcd q2(2);
  q2 << cplx(0.31, 0.12), cplx(-0.27, -0.05);
  const auto r = check_proposition2(2, 2, q2, kTau);
  CHECK(std::abs(r.a - cplx(0.5)) < 1e-10);
  CHECK(r.off_residual < 1e-9);

  Eigen::VectorXcd q3(3);
  q3 << cplx(0.31, 0.12), cplx(-0.27, -0.05), cplx(0.11, 0.40);
  const auto r3 = check_proposition2(3, 2, q3, kTau);
  CHECK(std::abs(r3.a - cplx(0.5)) < 1e-10);
  CHECK(r3.off_residual < 1e-9);

  // The scalar remainder does not depend on the positions.
  const cplx qsets[3][2] = {{cplx(0.31, 0.12), cplx(-0.27, -0.05)},
                            {cplx(0.11, 0.32), cplx(-0.40, 0.10)},
                            {cplx(0.22, -0.10), cplx(0.05, 0.25)}};
  cplx first;
  for (int s = 0; s < 3; ++s) {
    Eigen::VectorXcd q(2);
    q << qsets[s][0], qsets[s][1];
    const auto rr = check_proposition2(2, 2, q, kTau);
    if (s == 0)
      first = rr.constant;
    else
      CHECK(std::abs(rr.constant - first) < 1e-9);
  }
}
