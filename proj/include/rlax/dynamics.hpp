#pragma once
// Trajectory integration of the classical flow (fixed-step fourth-order
// Runge-Kutta) and isospectrality monitoring: H, tr L^k(z) for k = 1..4,
// and the spectrum of L(z) tracked by minimal-distance matching.

#include <array>
#include <vector>

#include "rlax/laxpairs.hpp"

namespace rlax {

struct Trajectory {
  std::vector<double> t;
  std::vector<PhasePoint> states;
  std::vector<cplx> H;
  // Per probe z, per snapshot: tr L^k for k = 1..4 and the eigenvalues.
  std::vector<cplx> probes;
  std::vector<std::vector<std::array<cplx, 4>>> traces;   // [probe][snap]
  std::vector<std::vector<Eigen::VectorXcd>> spectra;     // [probe][snap]
};

namespace detail {

inline void flow(const ModelConfig& cfg, const PhasePoint& s,
                 Eigen::VectorXcd& dq, Eigen::VectorXcd& dp) {
  auto [qd, pd] = eom(cfg, s);
  dq = qd;
  dp = pd;
}

inline void record(const ModelConfig& cfg, const PhasePoint& s, double time,
                   Trajectory& out) {
  out.t.push_back(time);
  out.states.push_back(s);
  out.H.push_back(hamiltonian(cfg, s));
  for (size_t pi = 0; pi < out.probes.size(); ++pi) {
    const Mat L = build_L(cfg, s, out.probes[pi]);
    std::array<cplx, 4> tr{};
    Mat Lk = L;
    for (int k = 0; k < 4; ++k) {
      tr[k] = Lk.trace();
      if (k < 3) Lk = Lk * L;
    }
    out.traces[pi].push_back(tr);
    out.spectra[pi].push_back(Eigen::ComplexEigenSolver<Mat>(L).eigenvalues());
  }
}

inline void check_clear(const ModelConfig& cfg, const PhasePoint& s) {
  for (int i = 0; i < cfg.N; ++i) {
    if (cfg.system != RootSystem::A) {
      require_pole_clear(s.q(i), cfg.tau, kPoleGuard, "q_i");
      require_pole_clear(2.0 * s.q(i), cfg.tau, kPoleGuard, "2 q_i");
    }
    for (int j = 0; j < i; ++j) {
      require_pole_clear(s.q(i) - s.q(j), cfg.tau, kPoleGuard, "q_i - q_j");
      if (cfg.system != RootSystem::A)
        require_pole_clear(s.q(i) + s.q(j), cfg.tau, kPoleGuard, "q_i + q_j");
    }
  }
}

}  // namespace detail

inline Trajectory integrate(const ModelConfig& cfg, const PhasePoint& state0,
                            double t_end, double dt,
                            const std::vector<cplx>& z_probe,
                            int record_stride = 25) {
  cfg.validate();
  if (dt <= 0.0 || t_end <= 0.0) throw ConfigError("bad integration window");
  Trajectory out;
  out.probes = z_probe;
  out.traces.resize(z_probe.size());
  out.spectra.resize(z_probe.size());

  PhasePoint s = state0;
  detail::check_clear(cfg, s);
  detail::record(cfg, s, 0.0, out);

  const long steps = std::lround(t_end / dt);
  Eigen::VectorXcd k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
  PhasePoint tmp = s;
  for (long n = 1; n <= steps; ++n) {
    detail::flow(cfg, s, k1q, k1p);
    tmp.q = s.q + 0.5 * dt * k1q;
    tmp.p = s.p + 0.5 * dt * k1p;
    detail::flow(cfg, tmp, k2q, k2p);
    tmp.q = s.q + 0.5 * dt * k2q;
    tmp.p = s.p + 0.5 * dt * k2p;
    detail::flow(cfg, tmp, k3q, k3p);
    tmp.q = s.q + dt * k3q;
    tmp.p = s.p + dt * k3p;
    detail::flow(cfg, tmp, k4q, k4p);
    s.q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    s.p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    detail::check_clear(cfg, s);
    if (n % record_stride == 0 || n == steps)
      detail::record(cfg, s, n * dt, out);
  }
  return out;
}

// Greedy minimal-distance matching between two eigenvalue sets; returns
// the largest matched distance (eigenvalue ordering is not continuous).
inline double spectrum_distance(Eigen::VectorXcd a, Eigen::VectorXcd b) {
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (long i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    long bj = -1;
    for (long j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(a(i) - b(j));
      if (d < best) { best = d; bj = j; }
    }
    used[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

struct ConservedDrift {
  std::string name;
  double max_rel_drift;
};

inline std::vector<ConservedDrift> conserved_report(const Trajectory& tr) {
  std::vector<ConservedDrift> out;
  auto drift = [](const std::vector<cplx>& v) {
    double w = 0.0;
    for (const cplx& x : v)
      w = std::max(w, std::abs(x - v.front()) /
                          std::max(1.0, std::abs(v.front())));
    return w;
  };
  out.push_back({"H", drift(tr.H)});
  for (size_t pi = 0; pi < tr.probes.size(); ++pi) {
    for (int k = 0; k < 4; ++k) {
      std::vector<cplx> v;
      v.reserve(tr.traces[pi].size());
      for (const auto& a : tr.traces[pi]) v.push_back(a[k]);
      out.push_back({"trL^" + std::to_string(k + 1) + "(z" +
                         std::to_string(pi) + ")",
                     drift(v)});
    }
    double w = 0.0;
    for (const auto& spec : tr.spectra[pi])
      w = std::max(w, spectrum_distance(spec, tr.spectra[pi].front()));
    out.push_back({"spectrum(z" + std::to_string(pi) + ")", w});
  }
  return out;
}

}  // namespace rlax
