#pragma once
// Lax pairs for the elliptic many-body models attached to the classical
// root systems: the R-matrix-valued A-type pair, the block constructions
// for C / BC (all 2N, resp. 2N+1, quantum sites kept) and for D / B (half
// of the sites kept, order-2 kernel), and the scalar (2N+1)-square pair
// with three independent couplings. Includes Hamiltonians, equations of
// motion, coupling admissibility, and the analytic Lax-residual verifier.

#include <string>
#include <utility>
#include <vector>

#include "rlax/rmatrix.hpp"

namespace rlax {

enum class RootSystem { A, B, C, D, BC, ScalarDP };
enum class SiteScheme { FullSites, HalfSites };

inline const char* root_name(RootSystem s) {
  switch (s) {
    case RootSystem::A: return "A";
    case RootSystem::B: return "B";
    case RootSystem::C: return "C";
    case RootSystem::D: return "D";
    case RootSystem::BC: return "BC";
    default: return "ScalarDP";
  }
}

struct PhasePoint {
  Eigen::VectorXcd q;
  Eigen::VectorXcd p;
};

struct ModelConfig {
  RootSystem system = RootSystem::A;
  int N = 2;       // particle count
  int order = 2;   // R-matrix rank
  cplx tau = cplx(0, 1);
  cplx nu = 1.0;
  cplx mu = 0.0;   // used by the scalar pair; fixed by the table elsewhere
  cplx g = 0.0;
  bool allow_inadmissible = false;  // negative controls force bad configs
  bool subtract_d0 = false;         // optional identity-shift normalization

  SiteScheme scheme() const {
    return (system == RootSystem::C || system == RootSystem::BC ||
            system == RootSystem::ScalarDP)
               ? SiteScheme::FullSites
               : SiteScheme::HalfSites;
  }
  // Number of quantum sites r carried inside each block.
  int sites() const {
    switch (system) {
      case RootSystem::A: return N;
      case RootSystem::D: return N;
      case RootSystem::B: return N + 1;
      case RootSystem::C: return 2 * N;
      case RootSystem::BC: return 2 * N + 1;
      default: return 0;
    }
  }
  // Block rows/cols of the Lax matrix.
  int aux() const {
    switch (system) {
      case RootSystem::A: return N;
      case RootSystem::D: return 2 * N;
      case RootSystem::B: return 2 * N + 1;
      case RootSystem::C: return 2 * N;
      case RootSystem::BC: return 2 * N + 1;
      default: return 2 * N + 1;
    }
  }
  long block_dim() const { return system == RootSystem::ScalarDP ? 1 : ipow(order, sites()); }
  long dim() const { return aux() * block_dim(); }

  // Canonical coupling assignment per the admissibility table.
  static ModelConfig standard(RootSystem sys, int N, int order, cplx tau,
                              cplx nu, int g_sign = +1) {
    ModelConfig c;
    c.system = sys;
    c.N = N;
    c.order = order;
    c.tau = tau;
    c.nu = nu;
    switch (sys) {
      case RootSystem::A: break;
      case RootSystem::D: c.mu = 0.0; c.g = 0.0; break;
      case RootSystem::B: c.mu = 0.0; c.g = double(g_sign) * std::sqrt(2.0) * nu; break;
      case RootSystem::C: c.mu = nu; c.g = 0.0; break;
      case RootSystem::BC: c.mu = nu; c.g = double(g_sign) * nu; break;
      case RootSystem::ScalarDP: c.order = 1; c.mu = nu; c.g = double(g_sign) * nu; break;
    }
    return c;
  }

  void validate() const {
    if (N < 1) throw ConfigError("particle count must be positive");
    if (order < 1) throw ConfigError("R-matrix rank must be positive");
    if (allow_inadmissible) return;
    auto near = [](cplx a, cplx b) { return std::abs(a - b) < 1e-12; };
    switch (system) {
      case RootSystem::A:
        break;  // unconstrained
      case RootSystem::D:
        if (order != 2) throw ConfigError("D system requires rank 2");
        if (!near(mu, 0.0) || !near(g, 0.0))
          throw ConfigError("D system requires mu = 0 and g = 0");
        break;
      case RootSystem::B:
        if (order != 2) throw ConfigError("B system requires rank 2");
        if (!near(mu, 0.0)) throw ConfigError("B system requires mu = 0");
        if (!near(g * g, 2.0 * nu * nu))
          throw ConfigError("B system requires g = +-sqrt(2) nu");
        break;
      case RootSystem::C:
        if (!near(g, 0.0) || !near(mu, nu))
          throw ConfigError("C system requires g = 0 and mu = nu");
        break;
      case RootSystem::BC:
        if (!near(mu, nu)) throw ConfigError("BC system requires mu = nu");
        if (!near(g * g, nu * nu))
          throw ConfigError("BC system requires g = +-nu");
        break;
      case RootSystem::ScalarDP:
        if (order != 1) throw ConfigError("scalar pair has rank 1");
        if (std::abs(g * (g * g - 2.0 * nu * nu + nu * mu)) > 1e-12)
          throw ConfigError(
              "scalar pair requires g (g^2 - 2 nu^2 + nu mu) = 0");
        break;
    }
  }
};

// ---------------------------------------------------------------------------
// Entry descriptors: every block of L and M is one of
//   R  : coef * R^z(arg)    F : coef * F^z(arg)    F0 : coef * F^0(arg)
//   P  : coef * wp(arg) * Id  (scalar pair diagonals only)
// placed at block (ai, aj), acting on quantum sites (si, sj), with
// arg = weights . q over the N particle coordinates.
// ---------------------------------------------------------------------------

struct BlockEntry {
  int ai, aj, si, sj;
  cplx coef;
  std::vector<double> w;
  char kind;  // 'R', 'F', '0', 'P'
};
struct MomentumEntry {
  int ai;
  double sign;
  int particle;
};

struct LaxDescriptor {
  int aux = 0, sites = 0;
  std::vector<BlockEntry> L;
  std::vector<BlockEntry> M;         // everything except the scalar term
  std::vector<BlockEntry> M_scalar;  // the 1 (x) F^0-type additive scalar
  std::vector<MomentumEntry> momenta;
};

namespace detail {

inline std::vector<double> wvec(int N, std::initializer_list<std::pair<int, double>> ps) {
  std::vector<double> w(N, 0.0);
  for (auto [i, c] : ps) w[i] += c;
  return w;
}

inline void lax_A(const ModelConfig& cfg, LaxDescriptor& d) {
  const int N = cfg.N;
  d.aux = N;
  d.sites = N;
  for (int i = 0; i < N; ++i) {
    d.momenta.push_back({i, +1.0, i});
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const auto w = wvec(N, {{i, 1.0}, {j, -1.0}});
      d.L.push_back({i, j, i, j, cfg.nu, w, 'R'});
      d.M.push_back({i, j, i, j, cfg.nu, w, 'F'});
    }
    // Diagonal d_i = -nu sum_{k != i} F^0_{ik}(q_ik).
    for (int k = 0; k < N; ++k) {
      if (k == i) continue;
      d.M.push_back({i, i, i, k, -cfg.nu, wvec(N, {{i, 1.0}, {k, -1.0}}), '0'});
    }
  }
  // Additive scalar nu sum_{k > m} F^0_{km}(q_km) on every diagonal block.
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k)
      for (int m = 0; m < k; ++m)
        d.M_scalar.push_back(
            {i, i, k, m, cfg.nu, wvec(N, {{k, 1.0}, {m, -1.0}}), '0'});
}

// C / BC: all 2N (+1) sites kept. Site a carries coordinate x_a = q_a,
// site a+N carries x_{a+N} = -q_a, the optional extra site carries x = 0;
// every block argument is x_i - x_j, which reduces to the printed
// arguments at rank 2 and stays valid for any rank.
inline void lax_C_BC(const ModelConfig& cfg, LaxDescriptor& d) {
  const int N = cfg.N;
  const bool bc = (cfg.system == RootSystem::BC);
  const int r = 2 * N + (bc ? 1 : 0);
  d.aux = r;
  d.sites = r;
  auto xw = [&](int s) -> std::vector<std::pair<int, double>> {
    if (s < N) return {{s, 1.0}};
    if (s < 2 * N) return {{s - N, -1.0}};
    return {};
  };
  auto dw = [&](int i, int j) {
    std::vector<double> w(N, 0.0);
    for (auto [k, c] : xw(i)) w[k] += c;
    for (auto [k, c] : xw(j)) w[k] -= c;
    return w;
  };
  for (int a = 0; a < N; ++a) {
    d.momenta.push_back({a, +1.0, a});
    d.momenta.push_back({a + N, -1.0, a});
  }
  auto coef = [&](int i, int j) {
    return (i < 2 * N && j < 2 * N) ? cfg.nu : cfg.g;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      d.L.push_back({i, j, i, j, coef(i, j), dw(i, j), 'R'});
      d.M.push_back({i, j, i, j, coef(i, j), dw(i, j), 'F'});
    }
  // Diagonal d_i = -sum_{k != i} c_ik F^0(x_i - x_k). The boundary weight
  // in the d-terms is g^2/nu on particle rows and nu on the extra row
  // (it enters squared there, so the sign choice of g drops out).
  auto dcoef = [&](int i, int k) {
    if (i < 2 * N && k < 2 * N) return cfg.nu;
    return (i < 2 * N) ? cfg.g * cfg.g / cfg.nu : cfg.nu;
  };
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      if (k == i) continue;
      d.M.push_back({i, i, i, k, -dcoef(i, k), dw(i, k), '0'});
    }
  // Additive scalar sum_{k > m} F^0(x_k - x_m), weight nu throughout.
  for (int ai = 0; ai < r; ++ai)
    for (int k = 0; k < r; ++k)
      for (int m = 0; m < k; ++m)
        d.M_scalar.push_back({ai, ai, k, m, cfg.nu, dw(k, m), '0'});
}

// D / B: only N (+1) sites kept; block row a and a+N both act on site a.
inline void lax_D_B(const ModelConfig& cfg, LaxDescriptor& d) {
  const int N = cfg.N;
  const bool bcase = (cfg.system == RootSystem::B);
  d.sites = N + (bcase ? 1 : 0);
  d.aux = 2 * N + (bcase ? 1 : 0);
  for (int a = 0; a < N; ++a) {
    d.momenta.push_back({a, +1.0, a});
    d.momenta.push_back({a + N, -1.0, a});
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      struct Spot { int ai, aj; std::vector<double> w; };
      const std::vector<Spot> spots = {
          {a, b, wvec(N, {{a, 1.0}, {b, -1.0}})},
          {a + N, b + N, wvec(N, {{a, -1.0}, {b, 1.0}})},
          {a, b + N, wvec(N, {{a, 1.0}, {b, 1.0}})},
          {a + N, b, wvec(N, {{a, -1.0}, {b, -1.0}})}};
      for (const auto& s : spots) {
        d.L.push_back({s.ai, s.aj, a, b, cfg.nu, s.w, 'R'});
        d.M.push_back({s.ai, s.aj, a, b, cfg.nu, s.w, 'F'});
      }
    }
  if (bcase) {
    const int s = 2 * N;  // extra block row, extra quantum site N
    for (int a = 0; a < N; ++a) {
      struct Spot { int ai, aj, si, sj; std::vector<double> w; };
      const std::vector<Spot> spots = {
          {a, s, a, N, wvec(N, {{a, 1.0}})},
          {a + N, s, a, N, wvec(N, {{a, -1.0}})},
          {s, a, N, a, wvec(N, {{a, -1.0}})},
          {s, a + N, N, a, wvec(N, {{a, 1.0}})}};
      for (const auto& e : spots) {
        d.L.push_back({e.ai, e.aj, e.si, e.sj, cfg.g, e.w, 'R'});
        d.M.push_back({e.ai, e.aj, e.si, e.sj, cfg.g, e.w, 'F'});
      }
    }
  }
  for (int a = 0; a < N; ++a)
    for (int row : {a, a + N}) {
      for (int c = 0; c < N; ++c) {
        if (c == a) continue;
        d.M.push_back({row, row, a, c, -cfg.nu, wvec(N, {{a, 1.0}, {c, -1.0}}), '0'});
        d.M.push_back({row, row, a, c, -cfg.nu, wvec(N, {{a, 1.0}, {c, 1.0}}), '0'});
      }
      if (bcase)
        d.M.push_back({row, row, a, N, -2.0 * cfg.nu, wvec(N, {{a, 1.0}}), '0'});
    }
  if (bcase) {
    const int s = 2 * N;
    for (int c = 0; c < N; ++c)
      d.M.push_back({s, s, c, N, -2.0 * cfg.nu, wvec(N, {{c, 1.0}}), '0'});
  }
  // Additive scalar: (1/2) sum_{c != e} (F^0(q_ce) + F^0(q_c + q_e)), plus
  // the boundary pieces in the B case.
  std::vector<BlockEntry> scal;
  for (int c = 0; c < N; ++c)
    for (int e = 0; e < N; ++e) {
      if (c == e) continue;
      scal.push_back({0, 0, c, e, 0.5 * cfg.nu, wvec(N, {{c, 1.0}, {e, -1.0}}), '0'});
      scal.push_back({0, 0, c, e, 0.5 * cfg.nu, wvec(N, {{c, 1.0}, {e, 1.0}}), '0'});
    }
  if (bcase)
    for (int c = 0; c < N; ++c)
      scal.push_back({0, 0, c, N, 2.0 * cfg.nu, wvec(N, {{c, 1.0}}), '0'});
  for (int ai = 0; ai < d.aux; ++ai)
    for (auto e : scal) {
      e.ai = e.aj = ai;
      d.M_scalar.push_back(e);
    }
}

// Scalar (2N+1)-square pair with couplings (nu, mu, g).
inline void lax_scalar_dp(const ModelConfig& cfg, LaxDescriptor& d) {
  const int N = cfg.N;
  d.aux = 2 * N + 1;
  d.sites = 2;  // rank-1 blocks; site labels are placeholders
  const int s = 2 * N;
  for (int a = 0; a < N; ++a) {
    d.momenta.push_back({a, +1.0, a});
    d.momenta.push_back({a + N, -1.0, a});
    for (int b = 0; b < N; ++b) {
      if (a != b) {
        struct Spot { int ai, aj; std::vector<double> w; };
        const std::vector<Spot> spots = {
            {a, b, wvec(N, {{a, 1.0}, {b, -1.0}})},
            {a + N, b + N, wvec(N, {{b, 1.0}, {a, -1.0}})},
            {a, b + N, wvec(N, {{a, 1.0}, {b, 1.0}})},
            {a + N, b, wvec(N, {{a, -1.0}, {b, -1.0}})}};
        for (const auto& e : spots) {
          d.L.push_back({e.ai, e.aj, 0, 1, cfg.nu, e.w, 'R'});
          d.M.push_back({e.ai, e.aj, 0, 1, cfg.nu, e.w, 'F'});
        }
      } else {
        d.L.push_back({a, a + N, 0, 1, cfg.mu, wvec(N, {{a, 2.0}}), 'R'});
        d.M.push_back({a, a + N, 0, 1, cfg.mu, wvec(N, {{a, 2.0}}), 'F'});
        d.L.push_back({a + N, a, 0, 1, cfg.mu, wvec(N, {{a, -2.0}}), 'R'});
        d.M.push_back({a + N, a, 0, 1, cfg.mu, wvec(N, {{a, -2.0}}), 'F'});
      }
    }
    struct Spot { int ai, aj; std::vector<double> w; };
    const std::vector<Spot> edge = {{a, s, wvec(N, {{a, 1.0}})},
                                    {a + N, s, wvec(N, {{a, -1.0}})},
                                    {s, a, wvec(N, {{a, -1.0}})},
                                    {s, a + N, wvec(N, {{a, 1.0}})}};
    for (const auto& e : edge) {
      d.L.push_back({e.ai, e.aj, 0, 1, cfg.g, e.w, 'R'});
      d.M.push_back({e.ai, e.aj, 0, 1, cfg.g, e.w, 'F'});
    }
    // d_a = (g^2/nu) wp(q_a) + mu wp(2 q_a) + nu sum_{b != a} (wp(q_ab) + wp(q_a+q_b)).
    for (int row : {a, a + N}) {
      d.M.push_back({row, row, 0, 1, cfg.g * cfg.g / cfg.nu, wvec(N, {{a, 1.0}}), 'P'});
      d.M.push_back({row, row, 0, 1, cfg.mu, wvec(N, {{a, 2.0}}), 'P'});
      for (int b = 0; b < N; ++b) {
        if (b == a) continue;
        d.M.push_back({row, row, 0, 1, cfg.nu, wvec(N, {{a, 1.0}, {b, -1.0}}), 'P'});
        d.M.push_back({row, row, 0, 1, cfg.nu, wvec(N, {{a, 1.0}, {b, 1.0}}), 'P'});
      }
    }
  }
  for (int c = 0; c < N; ++c)
    d.M.push_back({s, s, 0, 1, 2.0 * cfg.nu, wvec(N, {{c, 1.0}}), 'P'});
}

}  // namespace detail

inline LaxDescriptor lax_descriptor(const ModelConfig& cfg) {
  cfg.validate();
  LaxDescriptor d;
  switch (cfg.system) {
    case RootSystem::A: detail::lax_A(cfg, d); break;
    case RootSystem::C:
    case RootSystem::BC: detail::lax_C_BC(cfg, d); break;
    case RootSystem::D:
    case RootSystem::B: detail::lax_D_B(cfg, d); break;
    default: detail::lax_scalar_dp(cfg, d); break;
  }
  return d;
}

namespace detail {

inline cplx dot(const std::vector<double>& w, const Eigen::VectorXcd& q) {
  cplx s = 0.0;
  for (size_t i = 0; i < w.size(); ++i) s += w[i] * q(long(i));
  return s;
}

// Evaluate one block entry; deriv shifts the kind one derivative up
// (R -> F -> F', F0 -> F0').
inline Mat eval_entry(const BlockEntry& e, const RMatrixFamily& fam, cplx z,
                      cplx arg, int deriv) {
  switch (e.kind) {
    case 'R': return deriv == 0 ? fam.R(z, arg)
                   : deriv == 1 ? fam.F(z, arg)
                                : fam.Fp(z, arg);
    case 'F': return deriv == 0 ? fam.F(z, arg) : fam.Fp(z, arg);
    case '0': return deriv == 0 ? fam.F0(arg) : fam.F0p(arg);
    default:  // 'P'
      return (deriv == 0 ? fam.wp(arg) : fam.wp_prime(arg)) *
             Mat::Identity(fam.dim(), fam.dim());
  }
}

inline Mat assemble(const std::vector<BlockEntry>& entries,
                    const std::vector<MomentumEntry>& momenta,
                    const Eigen::VectorXcd& mom_val, const PhasePoint& st,
                    cplx z, const RMatrixFamily& fam, int aux, int sites) {
  const long bd = ipow(fam.order(), sites);
  Mat out = Mat::Zero(aux * bd, aux * bd);
  for (const auto& m : momenta)
    out.block(m.ai * bd, m.ai * bd, bd, bd) +=
        m.sign * mom_val(m.particle) * Mat::Identity(bd, bd);
  for (const auto& e : entries) {
    const Mat B = eval_entry(e, fam, z, dot(e.w, st.q), 0);
    out.block(e.ai * bd, e.aj * bd, bd, bd) +=
        e.coef * embed_pair(B, e.si, e.sj, sites, fam.order());
  }
  return out;
}

}  // namespace detail

inline RMatrixFamily family_of(const ModelConfig& cfg) {
  return RMatrixFamily::belavin(cfg.system == RootSystem::ScalarDP ? 1 : cfg.order,
                                cfg.tau);
}

inline Mat build_L(const ModelConfig& cfg, const PhasePoint& st, cplx z) {
  const auto d = lax_descriptor(cfg);
  const auto fam = family_of(cfg);
  return detail::assemble(d.L, d.momenta, st.p, st, z, fam, d.aux, d.sites);
}

inline Mat build_M(const ModelConfig& cfg, const PhasePoint& st, cplx z,
                   bool include_scalar = true) {
  const auto d = lax_descriptor(cfg);
  const auto fam = family_of(cfg);
  auto entries = d.M;
  if (include_scalar)
    entries.insert(entries.end(), d.M_scalar.begin(), d.M_scalar.end());
  Mat M = detail::assemble(entries, {}, st.p, st, z, fam, d.aux, d.sites);
  if (cfg.subtract_d0) {
    const long n = M.rows();
    M -= M(n - 1, n - 1) * Mat::Identity(n, n);
  }
  return M;
}

// Equations of motion: qdot = p, pdot fixed by the root system. The
// footnote rescaling makes (order * nu) the effective pair coupling, and
// the boundary couplings follow from the order^2 wp' diagonal identity.
inline std::pair<Eigen::VectorXcd, Eigen::VectorXcd> eom(const ModelConfig& cfg,
                                                         const PhasePoint& st) {
  cfg.validate();
  const int N = cfg.N;
  const cplx tau = cfg.tau;
  const double n = (cfg.system == RootSystem::ScalarDP) ? 1.0 : cfg.order;
  auto wpp = [&](cplx x) { return wp_prime(x, tau); };
  Eigen::VectorXcd pdot = Eigen::VectorXcd::Zero(N);
  const cplx nn = n * cfg.nu;
  for (int a = 0; a < N; ++a) {
    cplx s = 0.0;
    for (int c = 0; c < N; ++c) {
      if (c == a) continue;
      s += wpp(st.q(a) - st.q(c));
      if (cfg.system != RootSystem::A) s += wpp(st.q(a) + st.q(c));
    }
    s *= nn * nn;
    switch (cfg.system) {
      case RootSystem::C:
        s += nn * nn * wpp(2.0 * st.q(a));
        break;
      case RootSystem::BC:
        s += nn * nn * wpp(2.0 * st.q(a)) + n * n * cfg.nu * cfg.nu * wpp(st.q(a));
        break;
      case RootSystem::B:
        s += 2.0 * n * n * cfg.nu * cfg.nu * wpp(st.q(a));
        break;
      case RootSystem::ScalarDP:
        s += cfg.mu * cfg.mu * wpp(2.0 * st.q(a)) + cfg.g * cfg.g * wpp(st.q(a));
        break;
      default:
        break;
    }
    pdot(a) = s;
  }
  return {st.p, pdot};
}

// The Hamiltonian generating eom() under qdot = dH/dp, pdot = -dH/dq.
inline cplx hamiltonian(const ModelConfig& cfg, const PhasePoint& st) {
  cfg.validate();
  const int N = cfg.N;
  const cplx tau = cfg.tau;
  const double n = (cfg.system == RootSystem::ScalarDP) ? 1.0 : cfg.order;
  const cplx nn = n * cfg.nu;
  auto W = [&](cplx x) { return wp(x, tau); };
  cplx H = 0.0;
  for (int a = 0; a < N; ++a) H += st.p(a) * st.p(a) / 2.0;
  for (int a = 0; a < N; ++a)
    for (int c = 0; c < a; ++c) {
      H -= nn * nn * W(st.q(a) - st.q(c));
      if (cfg.system != RootSystem::A) H -= nn * nn * W(st.q(a) + st.q(c));
    }
  for (int a = 0; a < N; ++a) switch (cfg.system) {
      case RootSystem::C:
        H -= nn * nn / 2.0 * W(2.0 * st.q(a));
        break;
      case RootSystem::BC:
        H -= nn * nn / 2.0 * W(2.0 * st.q(a)) + n * n * cfg.nu * cfg.nu * W(st.q(a));
        break;
      case RootSystem::B:
        H -= 2.0 * n * n * cfg.nu * cfg.nu * W(st.q(a));
        break;
      case RootSystem::ScalarDP:
        H -= cfg.mu * cfg.mu / 2.0 * W(2.0 * st.q(a)) + cfg.g * cfg.g * W(st.q(a));
        break;
      default:
        break;
    }
  return H;
}

// Analytic time derivative of L along the flow: chain rule through each
// R-block's argument plus the momentum diagonal.
inline Mat build_Ldot(const ModelConfig& cfg, const PhasePoint& st, cplx z) {
  const auto d = lax_descriptor(cfg);
  const auto fam = family_of(cfg);
  const auto [qdot, pdot] = eom(cfg, st);
  const long bd = ipow(fam.order(), d.sites);
  Mat out = Mat::Zero(d.aux * bd, d.aux * bd);
  for (const auto& m : d.momenta)
    out.block(m.ai * bd, m.ai * bd, bd, bd) +=
        m.sign * pdot(m.particle) * Mat::Identity(bd, bd);
  for (const auto& e : d.L) {
    const cplx argdot = detail::dot(e.w, qdot);
    const Mat B = detail::eval_entry(e, fam, z, detail::dot(e.w, st.q), 1);
    out.block(e.ai * bd, e.aj * bd, bd, bd) +=
        e.coef * argdot * embed_pair(B, e.si, e.sj, d.sites, fam.order());
  }
  return out;
}

// Relative residual of the Lax equation Ldot = [L, M].
inline double lax_residual(const ModelConfig& cfg, const PhasePoint& st, cplx z) {
  const Mat L = build_L(cfg, st, z);
  const Mat M = build_M(cfg, st, z);
  const Mat C = L * M - M * L;
  return max_abs(build_Ldot(cfg, st, z) - C) / std::max(1.0, max_abs(C));
}

// Machine-readable admissibility table (one row per root system; strings
// match the summary table in the source text).
struct AdmissibilityRow {
  std::string system;
  std::string sites;
  std::string rank;
  std::string couplings;
};

inline std::vector<AdmissibilityRow> admissibility_table() {
  return {
      {"SO(2N)", "N", "2", "g=0, mu=0"},
      {"SO(2N+1)", "N+1", "2", "g=+-sqrt(2) nu, mu=0"},
      {"Sp(2N)", "2N", "any", "g=0, mu=nu"},
      {"BC(N)", "2N+1", "any", "g=+-nu, mu=nu"},
  };
}

// Deterministic pole-clear phase point for a config.
inline PhasePoint sample_state(const ModelConfig& cfg, Sampler& smp) {
  const int N = cfg.N;
  PhasePoint st;
  st.q.resize(N);
  st.p.resize(N);
  for (int retry = 0; retry < 256; ++retry) {
    for (int i = 0; i < N; ++i) {
      st.q(i) = smp.real(-0.4, 0.4) + cplx(0, 1) * smp.real(-0.2, 0.2);
      st.p(i) = smp.box(1.0, 0.3);
    }
    bool ok = true;
    const double guard = 5e-2;
    for (int i = 0; i < N && ok; ++i) {
      if (cfg.system != RootSystem::A &&
          (lattice_distance(st.q(i), cfg.tau) < guard ||
           lattice_distance(2.0 * st.q(i), cfg.tau) < guard))
        ok = false;
      for (int j = 0; j < i && ok; ++j) {
        if (lattice_distance(st.q(i) - st.q(j), cfg.tau) < guard) ok = false;
        if (cfg.system != RootSystem::A &&
            lattice_distance(st.q(i) + st.q(j), cfg.tau) < guard)
          ok = false;
      }
    }
    if (ok) return st;
  }
  throw PrecisionError("failed to sample a pole-clear phase point");
}

}  // namespace rlax
