#pragma once
// Identity-check reports: one entry per verified identity, carrying the
// measured residual, the tolerance it was judged against, and whether the
// identity was expected to hold (negative controls expect failure).

#include <algorithm>
#include <string>
#include <vector>

namespace rlax {

struct IdentityEntry {
  std::string suite;
  std::string identity;
  std::string paper_tag;  // equation label the identity comes from
  double max_residual = 0.0;
  int samples = 0;
  double tol = 0.0;
  bool pass = false;         // residual < tol
  bool expect_pass = true;   // negative controls expect pass == false
};

struct IdentityReport {
  std::string suite;
  std::vector<IdentityEntry> entries;

  explicit IdentityReport(std::string name = "") : suite(std::move(name)) {}

  IdentityEntry& add(const std::string& identity, const std::string& tag,
                     double residual, int samples, double tol,
                     bool expect_pass = true) {
    IdentityEntry e;
    e.suite = suite;
    e.identity = identity;
    e.paper_tag = tag;
    e.max_residual = residual;
    e.samples = samples;
    e.tol = tol;
    e.pass = residual < tol;
    e.expect_pass = expect_pass;
    entries.push_back(e);
    return entries.back();
  }

  void merge(const IdentityReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }

  // True when every identity behaved as expected (controls included).
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const IdentityEntry& e) { return e.pass == e.expect_pass; });
  }

  double worst() const {
    double w = 0.0;
    for (const auto& e : entries)
      if (e.expect_pass) w = std::max(w, e.max_residual);
    return w;
  }
};

}  // namespace rlax
