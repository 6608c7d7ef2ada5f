#pragma once
// Seeded verification suites shared by the command-line tool and the
// acceptance binary. Each suite returns an IdentityReport whose entries
// carry the equation tag, the worst residual over the sampled points, and
// whether the identity is expected to hold (negative controls expect not).

#include "rlax/dynamics.hpp"
#include "rlax/quantum.hpp"
#include "rlax/spin_tops.hpp"

namespace rlax {

// --- Special functions ------------------------------------------------------

inline IdentityReport suite_elliptic(std::uint64_t seed, int samples,
                                     double tol) {
  IdentityReport rep("elliptic");
  const cplx taus[3] = {cplx(0, 1), cplx(0, 0.8), cplx(0.3, 0.9)};
  double fay = 0, degen_wp = 0, degen_mix = 0, add = 0, expans = 0, fzero = 0;
  for (const cplx tau : taus) {
    const auto fam = FunctionFamily::elliptic(tau);
    Sampler smp(seed);
    int done = 0;
    while (done < samples) {
      const cplx z = smp.point(tau, 5e-2), w = smp.point(tau, 5e-2);
      const cplx q = smp.point(tau, 5e-2), u = smp.point(tau, 5e-2);
      const cplx x = smp.point(tau, 5e-2), y = smp.point(tau, 5e-2);
      bool clear = true;
      for (cplx s : {z - w, w - z, q + u, z + w, x + y, q - x, q - y})
        if (lattice_distance(s, tau) < 5e-2) clear = false;
      if (!clear) continue;
      ++done;
      // Relative residuals: normalize each identity by its largest term.
      auto rel = [](cplx res, cplx t1, cplx t2, cplx t3) {
        const double s =
            std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
        return std::abs(res) / s;
      };
      {
        const cplx t1 = fam.phi(z, q) * fam.phi(w, u);
        const cplx t2 = fam.phi(z - w, q) * fam.phi(w, q + u);
        const cplx t3 = fam.phi(w - z, u) * fam.phi(z, q + u);
        fay = std::max(fay, rel(t1 - t2 - t3, t1, t2, t3));
      }
      {
        const cplx t1 = fam.phi(q, x) * fam.phi(q, -x);
        const cplx t2 = fam.wp(q) - fam.wp(x);
        degen_wp = std::max(degen_wp, rel(t1 - t2, t1, t2, 0.0));
      }
      {
        const cplx t1 = fam.phi(z, x) * fam.f(z, y);
        const cplx t2 = fam.phi(z, y) * fam.f(z, x);
        const cplx t3 = fam.phi(z, x + y) * (fam.wp(x) - fam.wp(y));
        degen_mix = std::max(degen_mix, rel(t1 - t2 - t3, t1, t2, t3));
      }
      {
        const cplx t1 = fam.phi(z, q) * fam.phi(w, q);
        const cplx t2 = fam.phi(z + w, q) * (fam.E1(z) + fam.E1(w));
        const cplx t3 = fam.f(z + w, q);
        add = std::max(add, rel(t1 - t2 + t3, t1, t2, t3));
      }
      // Short-distance expansion and the z = 0 value of f; both relative
      // to the dominant 1/z (resp. E2) scale.
      const double eps = 1e-4;
      const cplx e1 = fam.E1(q);
      const cplx pv = fam.phi(cplx(eps), q);
      expans = std::max(expans,
                        std::abs(pv - 1.0 / eps - e1 -
                                 eps * (e1 * e1 - fam.wp(q)) / 2.0) /
                            std::abs(pv));
      fzero = std::max(fzero, std::abs(fam.f(cplx(0.0), q) + fam.E2(q)) /
                                  std::max(1.0, std::abs(fam.E2(q))));
    }
  }
  rep.add("Fay trisecant", "Eq. (A.14)", fay, samples, tol);
  rep.add("phi product degeneration", "Eq. (A.15)", degen_wp, samples, tol);
  rep.add("phi-f exchange", "Eq. (A.16)", degen_mix, samples, tol);
  rep.add("phi addition", "Eq. (A.17)", add, samples, tol);
  rep.add("short-distance expansion", "Eq. (A.12)", expans, samples, tol);
  rep.add("f(0,q) = -E2(q)", "Eq. (A.13)", fzero, samples, tol);
  return rep;
}

// --- R-matrix families ------------------------------------------------------

inline IdentityReport suite_rmatrix(std::uint64_t seed, int samples, double tol,
                                    cplx tau) {
  IdentityReport rep("rmatrix");
  auto run_family = [&](const RMatrixFamily& fam, const std::string& label) {
    Sampler s1(seed), s2(seed + 1), s3(seed + 2);
    IdentityReport sub("rmatrix");
    sub.merge(check_aybe(fam, s1, samples, tol));
    sub.merge(check_unitarity_skew(fam, s2, samples, tol));
    sub.merge(check_qybe(fam, s3, samples, tol));
    for (auto& e : sub.entries) e.identity = label + ": " + e.identity;
    rep.merge(sub);
  };
  run_family(RMatrixFamily::belavin(2, tau), "elliptic n=2");
  run_family(RMatrixFamily::belavin(3, tau), "elliptic n=3");
  for (int n : {1, 2, 3})
    run_family(RMatrixFamily::yang(n), "rational n=" + std::to_string(n));
  run_family(RMatrixFamily::xxz(), "xxz");
  for (int n : {2, 3}) {
    Sampler s4(seed + 3), s5(seed + 4);
    IdentityReport sub("rmatrix");
    sub.merge(check_fourier(n, tau, s4, samples, tol));
    sub.merge(check_pauli_structure(n, tau, s5, samples, tol));
    for (auto& e : sub.entries)
      e.identity = "elliptic n=" + std::to_string(n) + ": " + e.identity;
    rep.merge(sub);
  }
  for (int n : {1, 2}) {
    Sampler s6(seed + 5);
    IdentityReport sub("rmatrix");
    sub.merge(check_kzb_flatness(n, tau, s6, samples, 1e-7));
    for (auto& e : sub.entries)
      e.identity = "elliptic n=" + std::to_string(n) + ": " + e.identity;
    rep.merge(sub);
  }
  return rep;
}

// --- Classical Lax pairs ----------------------------------------------------

inline double lax_residual_sweep(const ModelConfig& cfg, std::uint64_t seed,
                                 int samples, cplx z) {
  Sampler smp(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s)
    worst = std::max(worst, lax_residual(cfg, sample_state(cfg, smp), z));
  return worst;
}

inline IdentityReport suite_lax(std::uint64_t seed, int samples, double tol,
                                cplx tau) {
  IdentityReport rep("lax");
  const cplx nu(0.7, 0.1), z(0.31, 0.17);
  auto add = [&](const ModelConfig& cfg, const std::string& label,
                 const std::string& tag) {
    rep.add(label, tag, lax_residual_sweep(cfg, seed, samples, z), samples,
            tol);
  };
  for (int N : {2, 3})
    for (int n : {1, 2, 3})
      add(ModelConfig::standard(RootSystem::A, N, n, tau, nu),
          "A N=" + std::to_string(N) + " n=" + std::to_string(n),
          "Eqs. (1.4)-(1.7)");
  add(ModelConfig::standard(RootSystem::C, 2, 2, tau, nu), "C N=2 n=2",
      "Eqs. (2.12)-(2.16)");
  for (int gs : {+1, -1})
    add(ModelConfig::standard(RootSystem::BC, 2, 2, tau, nu, gs),
        std::string("BC N=2 n=2 g=") + (gs > 0 ? "+nu" : "-nu"),
        "Eqs. (2.21)-(2.26)");
  for (int N : {2, 3})
    add(ModelConfig::standard(RootSystem::D, N, 2, tau, nu),
        "D N=" + std::to_string(N) + " n=2", "Eq. (2.47)");
  for (int gs : {+1, -1})
    add(ModelConfig::standard(RootSystem::B, 2, 2, tau, nu, gs),
        std::string("B N=2 n=2 g=") + (gs > 0 ? "+" : "-") + "sqrt(2)nu",
        "Eq. (2.48)");
  {
    ModelConfig cfg = ModelConfig::standard(RootSystem::ScalarDP, 2, 1, tau, nu);
    cfg.mu = cplx(0.4, -0.2);
    cfg.g = std::sqrt(2.0 * cfg.nu * cfg.nu - cfg.nu * cfg.mu);
    add(cfg, "scalar 2N+1 pair", "Eqs. (1.10)-(1.12)");
  }
  return rep;
}

inline IdentityReport suite_lax_controls(std::uint64_t seed, int samples,
                                         cplx tau) {
  IdentityReport rep("lax-controls");
  const cplx nu(0.7, 0.1), z(0.31, 0.17);
  auto add = [&](ModelConfig cfg, const std::string& label,
                 const std::string& tag) {
    cfg.allow_inadmissible = true;
    rep.add(label, tag, lax_residual_sweep(cfg, seed, samples, z), samples,
            1e-3, /*expect_pass=*/false);
  };
  add(ModelConfig::standard(RootSystem::D, 2, 3, tau, nu), "D N=2 n=3",
      "sec. 2.3 rank constraint");
  {
    ModelConfig cfg = ModelConfig::standard(RootSystem::BC, 2, 2, tau, nu);
    cfg.g = 0.7 * nu;
    add(cfg, "BC N=2 g=0.7nu", "Eq. (2.37)");
  }
  {
    ModelConfig cfg = ModelConfig::standard(RootSystem::ScalarDP, 2, 1, tau, nu);
    cfg.mu = cplx(0.4, -0.2);
    cfg.g = 0.7 * nu;
    add(cfg, "scalar pair off the coupling surface", "Eq. (1.11)");
  }
  return rep;
}

// --- Quantum Lax ------------------------------------------------------------

inline Eigen::VectorXcd suite_positions(int N) {
  Eigen::VectorXcd q(N);
  const cplx pool[4] = {cplx(0.21, 0.11), cplx(-0.33, -0.07), cplx(0.08, 0.19),
                        cplx(-0.11, 0.05)};
  for (int i = 0; i < N; ++i) q(i) = pool[i % 4];
  return q;
}

inline IdentityReport suite_quantum(cplx tau, double tol) {
  IdentityReport rep("quantum");
  const cplx nu(0.7, 0.1), z(0.31, 0.17);
  auto run = [&](RootSystem sys, int N, const std::string& label,
                 bool expect_pass, const std::string& tag) {
    const auto cfg = ModelConfig::standard(sys, N, 2, tau, nu);
    double worst = 0.0;
    for (double hbar : {0.1, 1.0, 2.0}) {
      const auto r = quantum_lax_residual(cfg, suite_positions(N), z, hbar);
      worst = std::max({worst, r.order0, expect_pass ? r.order1 : 0.0});
    }
    rep.add(label, tag, worst, 3, expect_pass ? tol : 1e-3, expect_pass);
  };
  run(RootSystem::A, 2, "A N=2", true, "Eq. (3.1) and sec. 3 Proposition");
  run(RootSystem::A, 3, "A N=3", true, "Eq. (3.1) and sec. 3 Proposition");
  run(RootSystem::D, 2, "D N=2", true, "sec. 3 Proposition");
  // The B pair closes classically but leaves a finite order-0 coefficient
  // defect in its boundary blocks; recorded against the stated expectation.
  run(RootSystem::B, 2, "B N=2", true, "sec. 3 Proposition");
  run(RootSystem::C, 2, "C N=2 (obstructed)", false, "sec. 3 Proposition");
  run(RootSystem::BC, 2, "BC N=2 (obstructed)", false, "sec. 3 Proposition");

  for (RootSystem sys : {RootSystem::A, RootSystem::D, RootSystem::B})
    rep.add("momentum vs diagonal blocks, " +
                std::string(sys == RootSystem::A   ? "A"
                            : sys == RootSystem::D ? "D"
                                                   : "B"),
            "Eq. (3.14)",
            check_pd_commutation(ModelConfig::standard(sys, 2, 2, tau, nu),
                                 suite_positions(2)),
            1, 1e-9);
  rep.add("momentum vs diagonal blocks, C (obstructed)", "Eq. (3.14)",
          check_pd_commutation(ModelConfig::standard(RootSystem::C, 2, 2, tau, nu),
                               suite_positions(2)),
          1, 1e-3, false);

  const auto q3 = suite_positions(3);
  rep.add("sum-to-zero, rational", "Eq. (3.4)",
          check_sum_to_zero(FunctionFamily::rational(), nu, q3, z), 1, 1e-12);
  rep.add("sum-to-zero, trigonometric", "Eq. (3.4)",
          check_sum_to_zero(FunctionFamily::trigonometric(), nu, q3, z), 1,
          1e-12);
  rep.add("sum-to-zero, elliptic (not fulfilled)", "Eq. (3.4)",
          check_sum_to_zero(FunctionFamily::elliptic(tau), nu, q3, z), 1, 1e-3,
          false);

  for (double hbar : {0.5, 1.0}) {
    const auto r = spin_permutation_residual(3, 2, nu, tau, q3, z, hbar);
    rep.add("spin exchange pair, hbar=" + std::to_string(hbar),
            "Eqs. (3.6)-(3.9)", std::max(r.order0, r.order1), 1, tol);
  }
  return rep;
}

// --- Order-1 reductions -----------------------------------------------------

inline IdentityReport suite_reduction(cplx tau) {
  IdentityReport rep("reduction");
  const cplx nu(0.7, 0.1), z(0.31, 0.17);
  const int N = 2;
  const auto cfg = ModelConfig::standard(RootSystem::A, N, 1, tau, nu);
  Sampler smp(23);
  const PhasePoint st = sample_state(cfg, smp);
  const auto fn = FunctionFamily::elliptic(tau);

  // Scalar pair assembled directly from its closed form.
  Mat L = Mat::Zero(N, N), M = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    L(i, i) = st.p(i);
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      L(i, j) = nu * fn.phi(z, st.q(i) - st.q(j));
      M(i, j) = nu * fn.f(z, st.q(i) - st.q(j));
      M(i, i) += nu * fn.E2(st.q(i) - st.q(j));
    }
  }
  const Mat Lb = build_L(cfg, st, z);
  const Mat Mb = build_M(cfg, st, z, /*include_scalar=*/false);
  rep.add("order-1 A pair equals the scalar pair", "Eqs. (1.4)-(1.5)",
          std::max(max_abs(Mat(Lb - L)), max_abs(Mat(Mb - M))), 1, 1e-12);

  // Constant block vs the printed constant; the measured constant differs
  // from the printed one by a factor of two, so this entry fails.
  cplx wpsum = 0.0;
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < k; ++m) wpsum += wp(st.q(k) - st.q(m), tau);
  const cplx val = f0_scalar(N, tau, nu, st.q);
  rep.add("constant block vs printed constant", "Eq. (3.2)",
          std::abs(val + nu * wpsum - f0_const_printed(N, tau)), 1, 1e-10);
  rep.add("constant block vs measured constant", "Eq. (3.2), rederived",
          std::abs(val + nu * wpsum - f0_const_measured(N, tau, nu)), 1, 1e-12);
  return rep;
}

// --- Dynamics ---------------------------------------------------------------

inline IdentityReport suite_dynamics(cplx tau) {
  IdentityReport rep("dynamics");
  const auto cfg =
      ModelConfig::standard(RootSystem::A, 2, 1, tau, cplx(0.0, 0.7));
  PhasePoint st;
  st.q.resize(2);
  st.p.resize(2);
  st.q << cplx(0.31, 0.0), cplx(-0.12, 0.0);
  st.p << cplx(0.20, 0.0), cplx(-0.20, 0.0);
  const std::vector<cplx> probes{cplx(0.31, 0.17)};

  const Trajectory tr = integrate(cfg, st, 5.0, 1e-3, probes, 50);
  double drift = 0.0;
  for (const auto& d : conserved_report(tr))
    drift = std::max(drift, d.max_rel_drift);
  rep.add("H and tr L^k drift, dt=1e-3, t_end=5", "sec. 1 (isospectrality)",
          drift, static_cast<int>(tr.t.size()), 1e-8);

  const Trajectory coarse = integrate(cfg, st, 5.0, 2e-2, {}, 5);
  const Trajectory fine = integrate(cfg, st, 5.0, 1e-2, {}, 10);
  const double dc = conserved_report(coarse).front().max_rel_drift;
  const double df = conserved_report(fine).front().max_rel_drift;
  // Pass when halving dt shrinks the drift by >= 12x (fourth-order method).
  rep.add("drift reduction under dt halving", "integrator order check",
          df > 0 ? df / dc : 0.0, 2, 1.0 / 12.0);
  return rep;
}

// --- Spin Calogero-Moser and tops -------------------------------------------

inline SpinState suite_spin_state(int N, int r, cplx trace_val) {
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

inline IdentityReport suite_tops(cplx tau, double tol) {
  IdentityReport rep("tops");
  const cplx z(0.37, 0.23);
  rep.add("spin pair closes on constrained states", "Eqs. (4.3)-(4.6)",
          spin_cm_residual(suite_spin_state(2, 2, cplx(0.4, 0.1)), z, tau), 1,
          tol);
  rep.add("spin pair closes, N=3", "Eqs. (4.3)-(4.6)",
          spin_cm_residual(suite_spin_state(3, 2, cplx(0.4, 0.1)), z, tau), 1,
          tol);

  for (int order : {2, 3}) {
    const SpinState st = suite_spin_state(2, order, cplx(0.5, -0.2));
    std::vector<Mat> B;
    for (int i = 0; i < 2; ++i)
      B.push_back(st.xi.row(i).transpose() * st.eta.row(i));
    const auto fr = check_fourier_reduction(st.q, B, order, tau);
    rep.add("Fourier reduction, n=" + std::to_string(order), "Eq. (4.24)",
            std::max(fr.residual_sum, fr.residual_step), 1, 1e-9);
    const cplx h1 = tops_hamiltonian(st, order, tau, false);
    const cplx h2 = tops_hamiltonian(st, order, tau, true);
    const cplx hx = tops_hamiltonian_from_trL2(st, order, tau);
    rep.add("tops Hamiltonian two routes, n=" + std::to_string(order),
            "Eqs. (4.16), (4.22)",
            std::max(std::abs(h1 - h2), std::abs(hx - h1)) /
                std::max(1.0, std::abs(h1)),
            1, 1e-9);
  }

  const cplx qsets[5][3] = {
      {cplx(0.31, 0.12), cplx(-0.27, -0.05), cplx(0.11, 0.40)},
      {cplx(0.11, 0.32), cplx(-0.40, 0.10), cplx(0.21, -0.15)},
      {cplx(0.22, -0.10), cplx(0.05, 0.25), cplx(-0.31, 0.08)},
      {cplx(0.17, 0.21), cplx(-0.12, -0.18), cplx(0.36, 0.02)},
      {cplx(-0.25, 0.15), cplx(0.33, -0.09), cplx(0.02, 0.28)}};
  for (int N : {2, 3}) {
    double off = 0.0, fit = 0.0, spread = 0.0;
    cplx first;
    for (int s = 0; s < 5; ++s) {
      Eigen::VectorXcd q(N);
      for (int i = 0; i < N; ++i) q(i) = qsets[s][i];
      const auto r = check_proposition2(N, 2, q, tau);
      off = std::max(off, r.off_residual);
      fit = std::max(fit, std::abs(r.a - cplx(0.5)));
      if (s == 0)
        first = r.constant;
      else
        spread = std::max(spread, std::abs(r.constant - first));
    }
    const std::string n = std::to_string(N);
    rep.add("quantized interaction off-identity part, N=" + n,
            "Proposition 2 / Eq. (1.25)", std::max(off, fit), 5, 1e-9);
    rep.add("scalar remainder position-independence, N=" + n,
            "Proposition 2 / Eq. (1.25)", spread, 5, 1e-9);
  }
  return rep;
}

}  // namespace rlax
