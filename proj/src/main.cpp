// Command-line front end: verification suites, trajectory simulation, and
// the admissibility table, with machine-readable JSON reports.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlax/suites.hpp"

namespace {

using rlax::cplx;
using json = nlohmann::ordered_json;

// Parse "a+bi" / "a-bi" / "bi" / "a" into a complex number.
cplx parse_complex(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw CLI::ConversionError(s, "complex");
  const bool has_i = t.back() == 'i' || t.back() == 'j';
  if (!has_i) return cplx(std::stod(t), 0.0);
  t.pop_back();
  // Split at the last '+'/'-' that is not a leading sign or exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      if (t.empty() || t == "+") return cplx(0.0, 1.0);
      if (t == "-") return cplx(0.0, -1.0);
      return cplx(0.0, std::stod(t));
    }
    const std::string re = t.substr(0, split);
    std::string im = t.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return cplx(std::stod(re), std::stod(im));
  } catch (const std::exception&) {
    throw CLI::ConversionError(s, "complex");
  }
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

json entry_to_json(const rlax::IdentityEntry& e) {
  json j;
  j["suite"] = e.suite;
  j["identity"] = e.identity;
  j["paper_tag"] = e.paper_tag;
  j["max_residual"] = e.max_residual;
  j["samples"] = e.samples;
  j["tol"] = e.tol;
  j["pass"] = e.pass;
  return j;
}

struct Options {
  std::string suite = "all";
  std::string system;
  int N = 2;
  int ntilde = 2;
  cplx tau{0.0, 1.0};
  cplx nu{0.7, 0.1};
  std::optional<cplx> g;
  std::optional<cplx> mu;
  std::uint64_t seed = 7;
  int samples = 50;
  double tol = 1e-9;
  double pole_guard = 6e-2;
  std::string expect = "pass";
  std::string out;
  // simulate
  double t_end = 5.0;
  double dt = 1e-3;
  cplx z{0.31, 0.17};
  std::string csv = "trajectory.csv";
};

rlax::RootSystem system_from_name(const std::string& name) {
  if (name == "A") return rlax::RootSystem::A;
  if (name == "B") return rlax::RootSystem::B;
  if (name == "C") return rlax::RootSystem::C;
  if (name == "D") return rlax::RootSystem::D;
  if (name == "BC") return rlax::RootSystem::BC;
  if (name == "scalar" || name == "ScalarDP")
    return rlax::RootSystem::ScalarDP;
  throw rlax::ConfigError("unknown root system: " + name);
}

rlax::ModelConfig config_from(const Options& o) {
  rlax::ModelConfig cfg = rlax::ModelConfig::standard(
      system_from_name(o.system), o.N, o.ntilde, o.tau, o.nu);
  cfg.allow_inadmissible = true;  // probes may sit off the constraint surface
  if (o.g) cfg.g = *o.g;
  if (o.mu) cfg.mu = *o.mu;
  return cfg;
}

// Single-model Lax check used when `verify --suite lax --system ...` pins a
// concrete configuration instead of running the whole matrix of models.
rlax::IdentityReport targeted_lax(const Options& o) {
  rlax::IdentityReport rep("lax");
  const rlax::ModelConfig cfg = config_from(o);
  rlax::Sampler smp(o.seed);
  double worst = 0.0;
  const int n = std::min(o.samples, 20);
  for (int s = 0; s < n; ++s) {
    rlax::PhasePoint st = rlax::sample_state(cfg, smp);
    worst = std::max(worst, rlax::lax_residual(cfg, st, o.z));
  }
  rep.add(o.system + " N=" + std::to_string(o.N) +
              " n=" + std::to_string(o.ntilde),
          "Lax equation (1.6)", worst, n, std::max(o.tol, 1e-8),
          o.expect == "pass");
  return rep;
}

rlax::IdentityReport run_suite(const std::string& name, const Options& o) {
  if (name == "elliptic") return rlax::suite_elliptic(o.seed, o.samples, 1e-10);
  if (name == "rmatrix") return rlax::suite_rmatrix(o.seed, o.samples, o.tol, o.tau);
  if (name == "lax") {
    if (!o.system.empty()) return targeted_lax(o);
    rlax::IdentityReport rep = rlax::suite_lax(o.seed, 20, 1e-8, o.tau);
    rep.merge(rlax::suite_lax_controls(o.seed, 5, o.tau));
    return rep;
  }
  if (name == "quantum") {
    rlax::IdentityReport rep = rlax::suite_quantum(o.tau, 1e-8);
    rep.merge(rlax::suite_reduction(o.tau));
    return rep;
  }
  if (name == "tops") return rlax::suite_tops(o.tau, 1e-8);
  if (name == "dynamics") return rlax::suite_dynamics(o.tau);
  throw rlax::ConfigError("unknown suite: " + name);
}

json report_json(const rlax::IdentityReport& rep, const Options& o) {
  json j;
  j["suite"] = rep.suite;
  j["environment"] = {{"seed", o.seed},
                      {"tau", format_complex(o.tau)},
                      {"ntilde", o.ntilde},
                      {"samples", o.samples},
                      {"tol", o.tol}};
  j["entries"] = json::array();
  for (const auto& e : rep.entries) j["entries"].push_back(entry_to_json(e));
  j["ok"] = rep.ok();
  return j;
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    f << text;
  }
}

int cmd_verify(const Options& o) {
  rlax::IdentityReport rep("verify");
  if (o.suite == "all") {
    for (const char* s :
         {"elliptic", "rmatrix", "lax", "quantum", "tops", "dynamics"})
      rep.merge(run_suite(s, o));
  } else {
    rep = run_suite(o.suite, o);
  }
  emit(report_json(rep, o), o.out);
  bool all_as_expected = true;
  for (const auto& e : rep.entries) {
    if (e.pass != e.expect_pass) {
      all_as_expected = false;
      std::cerr << "FAIL: " << e.suite << " / " << e.identity << " ["
                << e.paper_tag << "] residual " << e.max_residual
                << (e.expect_pass ? " above tol " : " below control floor ")
                << e.tol << "\n";
    }
  }
  // For a pinned model the expectation is baked into the entry itself;
  // otherwise `--expect fail` succeeds exactly when the suite misbehaves.
  if (!o.system.empty() && o.suite == "lax") return all_as_expected ? 0 : 1;
  return (all_as_expected == (o.expect == "pass")) ? 0 : 1;
}

int cmd_simulate(const Options& o) {
  const std::string sys = o.system.empty() ? "A" : o.system;
  Options local = o;
  local.system = sys;
  const rlax::ModelConfig cfg = config_from(local);
  rlax::Sampler smp(o.seed);
  rlax::PhasePoint st = rlax::sample_state(cfg, smp);
  const rlax::Trajectory tr =
      rlax::integrate(cfg, st, o.t_end, o.dt, {o.z}, 25);

  std::ofstream csv(o.csv);
  csv << "t";
  for (int i = 0; i < cfg.N; ++i) csv << ",q" << i << "_re,q" << i << "_im";
  for (int i = 0; i < cfg.N; ++i) csv << ",p" << i << "_re,p" << i << "_im";
  csv << ",H_re,H_im";
  for (int k = 1; k <= 4; ++k) csv << ",trL" << k << "_re,trL" << k << "_im";
  csv << "\n";
  csv.precision(17);
  for (std::size_t s = 0; s < tr.t.size(); ++s) {
    csv << tr.t[s];
    for (int i = 0; i < cfg.N; ++i)
      csv << "," << tr.states[s].q(i).real() << ","
          << tr.states[s].q(i).imag();
    for (int i = 0; i < cfg.N; ++i)
      csv << "," << tr.states[s].p(i).real() << ","
          << tr.states[s].p(i).imag();
    csv << "," << tr.H[s].real() << "," << tr.H[s].imag();
    for (int k = 0; k < 4; ++k)
      csv << "," << tr.traces[0][s][k].real() << ","
          << tr.traces[0][s][k].imag();
    csv << "\n";
  }

  json j;
  j["model"] = {{"system", sys},
                {"N", cfg.N},
                {"ntilde", cfg.order},
                {"tau", format_complex(cfg.tau)},
                {"nu", format_complex(cfg.nu)}};
  j["run"] = {{"t_end", o.t_end},
              {"dt", o.dt},
              {"z_probe", format_complex(o.z)},
              {"snapshots", tr.t.size()},
              {"seed", o.seed},
              {"csv", o.csv}};
  j["conserved"] = json::array();
  for (const auto& d : rlax::conserved_report(tr))
    j["conserved"].push_back(
        {{"name", d.name}, {"max_rel_drift", d.max_rel_drift}});
  emit(j, o.out);
  return 0;
}

int cmd_table(const Options& o) {
  const auto rows = rlax::admissibility_table();
  std::cout << "Number of spin quantum spaces and values of coupling "
               "constants\n";
  for (const auto& r : rows)
    std::cout << "  " << r.system << "  sites=" << r.sites
              << "  ntilde=" << r.rank << "  " << r.couplings << "\n";
  json j = json::array();
  for (const auto& r : rows)
    j.push_back({{"system", r.system},
                 {"sites", r.sites},
                 {"ntilde", r.rank},
                 {"couplings", r.couplings}});
  if (!o.out.empty()) emit(j, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"R-matrix-valued Lax pairs for elliptic Calogero-Moser models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "plain-text key=value configuration file");

  Options o;
  if (const char* env = std::getenv("RLAX_TOL")) o.tol = std::stod(env);
  if (const char* env = std::getenv("RLAX_POLE_GUARD"))
    o.pole_guard = std::stod(env);

  std::string tau_s = "0+1i", nu_s = "0.7+0.1i", g_s, mu_s, z_s = "0.31+0.17i";
  auto add_common = [&](CLI::App* c) {
    c->add_option("--system", o.system, "root system: A, B, C, D, BC, scalar");
    c->add_option("--n", o.N, "number of particles N");
    c->add_option("--ntilde", o.ntilde, "R-matrix size (quantum space dim)");
    c->add_option("--tau", tau_s, "modular parameter, a+bi");
    c->add_option("--nu", nu_s, "coupling constant nu, a+bi");
    c->add_option("--g", g_s, "boundary coupling g, a+bi");
    c->add_option("--mu", mu_s, "third coupling mu, a+bi");
    c->add_option("--seed", o.seed, "sampling seed (bit-reproducible)");
    c->add_option("--samples", o.samples, "samples per identity");
    c->add_option("--tol", o.tol, "residual tolerance");
    c->add_option("--pole-guard", o.pole_guard,
                  "minimal lattice distance kept from poles");
    c->add_option("--out", o.out, "write the JSON report here");
  };

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite,
                     "elliptic|rmatrix|lax|quantum|tops|dynamics|all");
  verify->add_option("--expect", o.expect, "pass|fail")
      ->check(CLI::IsMember({"pass", "fail"}));
  add_common(verify);

  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate the equations of motion");
  simulate->add_option("--t-end", o.t_end, "integration time");
  simulate->add_option("--dt", o.dt, "RK4 time step");
  simulate->add_option("--z", z_s, "spectral probe, a+bi");
  simulate->add_option("--csv", o.csv, "trajectory CSV path");
  add_common(simulate);

  CLI::App* table =
      app.add_subcommand("table", "print the admissibility table");
  table->add_option("--out", o.out, "write the JSON table here");

  CLI::App* qc = app.add_subcommand("quantum-check", "quantum Lax suite");
  add_common(qc);
  CLI::App* tc = app.add_subcommand("tops-check", "spin-CM and tops suite");
  add_common(tc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    o.tau = parse_complex(tau_s);
    o.nu = parse_complex(nu_s);
    o.z = parse_complex(z_s);
    if (!g_s.empty()) o.g = parse_complex(g_s);
    if (!mu_s.empty()) o.mu = parse_complex(mu_s);

    if (verify->parsed()) return cmd_verify(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (table->parsed()) return cmd_table(o);
    if (qc->parsed()) {
      Options q = o;
      q.suite = "quantum";
      return cmd_verify(q);
    }
    if (tc->parsed()) {
      Options t = o;
      t.suite = "tops";
      return cmd_verify(t);
    }
  } catch (const rlax::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ConversionError& e) {
    std::cerr << "flag parse error: " << e.what() << "\n";
    return 2;
  } catch (const rlax::PoleProximityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
