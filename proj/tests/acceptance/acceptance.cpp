// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails or exceeds its time budget.

#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace bethegt;
using cli::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> body;
};

bool suite_passes(const json& checks, std::string& detail, const std::string& label) {
  if (cli::all_pass(checks)) return true;
  for (const auto& c : checks)
    if (!c.value("pass", false)) detail += label + ":" + c.value("name", "?") + " ";
  return false;
}

Outcome lie_layer() {
  Outcome o{true, ""};
  for (int n = 1; n <= 3; ++n) o.pass &= suite_passes(cli::lie_checks(n, 25, 1), o.detail, "n" + std::to_string(n));
  o.pass &= suite_passes(cli::lie_checks(4, 200, 1), o.detail, "n4");
  std::string dims;
  for (int n = 2; n <= 5; ++n) {
    const auto d = lie::centralizer_dim(lie::principal_nilpotent(n));
    dims += std::to_string(d) + (n < 5 ? "," : "");
    if (d != static_cast<std::size_t>(n)) o.pass = false;
  }
  o.detail += "centralizer dims n=2..5: " + dims;
  return o;
}

Outcome pfaffian_differential() {
  Outcome o{true, "factors"};
  for (int k = 2; k <= 4; ++k) {
    const auto c = poly::verify_pfaffian_differential(k);
    o.pass &= c.ok && sgn(c.factor) != 0;
    o.detail += " k=" + std::to_string(k) + ":" + to_string(c.factor);
  }
  return o;
}

Outcome leading_terms() {
  Outcome o{true, ""};
  for (int n = 2; n <= 4; ++n) {
    std::size_t rows = 0;
    for (const auto& row : poly::verify_leading_terms(n)) {
      ++rows;
      if (!row.ok) {
        o.pass = false;
        o.detail += "n" + std::to_string(n) + ":" + row.name + " ";
      }
    }
    std::vector<poly::PolyQ> polys;
    for (const auto& f : poly::invariant_family(n)) polys.push_back(f.poly);
    const auto r = poly::jacobian_rank(polys, lie::principal_nilpotent(n));
    o.pass &= r == static_cast<std::size_t>(n * n);
    o.detail += "n=" + std::to_string(n) + " rows " + std::to_string(rows) + " rank " + std::to_string(r) + "; ";
  }
  return o;
}

Outcome symbol_level() {
  Outcome o{true, ""};
  for (int n = 2; n <= 3; ++n) {
    const lie::Algebra alg(n);
    const auto family = poly::invariant_family(n);
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        ++pairs;
        if (!poly::poisson_bracket(alg, family[a].poly, family[b].poly).is_zero()) {
          o.pass = false;
          o.detail += family[a].name() + "," + family[b].name() + " ";
        }
      }
    o.detail += "n=" + std::to_string(n) + " pairs " + std::to_string(pairs) + "; ";
  }
  for (int n = 1; n <= 4; ++n)
    if (!poly::poincare_check(n, 8).equal) {
      o.pass = false;
      o.detail += "poincare n=" + std::to_string(n) + " ";
    }
  o.detail += "poincare to degree 8 for n=1..4";
  return o;
}

Outcome envelope() {
  Outcome o{true, ""};
  const json checks = cli::envelope_checks(3, 6);
  o.pass = suite_passes(checks, o.detail, "n3");
  for (const auto& c : checks)
    if (c.value("name", "") == "mutual_commute") o.detail += "pairs " + std::to_string(c.value("pairs", 0));
  return o;
}

Outcome yangian() {
  Outcome o{true, ""};
  const json checks = cli::yangian_checks(10, 25, 1);
  o.pass = suite_passes(checks, o.detail, "yangian");
  std::size_t configs = 0;
  for (const auto& c : checks)
    if (c.value("name", "").rfind("configuration_", 0) == 0) ++configs;
  o.detail += std::to_string(configs) + " configurations, 25 samples, M=4";
  return o;
}

Outcome branching_battery() {
  Outcome o{true, ""};
  std::size_t weights = 0;
  for (int n = 2; n <= 4; ++n)
    for (const auto& w : gt::dominant_weights(n, 3)) {
      ++weights;
      const Integer dim = gt::weyl_dim(w);
      Integer total = 0;
      for (const auto& t : gt::branch(w)) total += t.multiplicity * gt::weyl_dim(t.mu);
      const bool ok = total == dim && Integer(static_cast<unsigned long>(gt::enumerate_patterns(w).size())) == dim;
      if (!ok) {
        o.pass = false;
        o.detail += w.to_string() + " ";
      }
    }
  o.detail += std::to_string(weights) + " weights";
  return o;
}

Outcome labeling_battery() {
  Outcome o{true, ""};
  const std::vector<double> u{0.3, 1.0, 1.7, 2.4};
  yang::FlowSchedule schedule;
  schedule.gap_tol = 1e-9;
  std::size_t weights = 0, patterns = 0;
  double min_overlap = 1.0;
  for (int n = 2; n <= 3; ++n)
    for (const auto& w : gt::dominant_weights(n, 2)) {
      ++weights;
      const auto r = yang::full_labeling(w, u, schedule, 1);
      bool levels = true;
      for (const auto& l : r.levels) levels = levels && l.labels_match;
      const bool ok = r.ok() && levels && r.min_terminal_overlap >= 0.99 && r.patterns == gt::enumerate_patterns(w);
      patterns += r.patterns.size();
      min_overlap = std::min(min_overlap, r.min_terminal_overlap);
      if (!ok) {
        o.pass = false;
        o.detail += w.to_string() + (r.error.empty() ? "" : " (" + r.error + ")") + " ";
      }
    }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", min_overlap);
  o.detail += std::to_string(weights) + " weights, " + std::to_string(patterns) + " patterns, min terminal overlap " + buf;
  return o;
}

Outcome path_battery() {
  Outcome o{true, ""};
  const std::vector<double> ua{0.3}, ub{-0.45};
  std::size_t spaces = 0;
  for (const auto& w : gt::dominant_weights(2, 2))
    for (const auto& t : gt::branch(w)) {
      ++spaces;
      const auto pc = yang::path_independence_check(w, t.mu, ua, ub, yang::FlowSchedule{}, 1);
      if (!pc.equal) {
        o.pass = false;
        o.detail += w.to_string() + "/" + t.mu.to_string() + " ";
      }
    }
  o.detail += std::to_string(spaces) + " multiplicity spaces";
  return o;
}

Outcome determinism() {
  Outcome o{true, ""};
  std::vector<cli::RunConfig> configs;
  auto add = [&](const std::string& command, const std::string& sub, auto&& tweak) {
    cli::RunConfig c;
    c.command = command;
    c.subcommand = sub;
    tweak(c);
    configs.push_back(c);
  };
  add("verify", "lie", [](cli::RunConfig& c) { c.n = 4; });
  add("verify", "yangian", [](cli::RunConfig& c) { c.configs = 4; c.samples = 10; c.seed = 7; });
  add("patterns", "enumerate", [](cli::RunConfig& c) { c.weight = "0,-1,-2"; });
  add("label", "", [](cli::RunConfig& c) { c.weight = "0,-1,-1"; c.jobs = 2; });
  add("flow", "", [](cli::RunConfig& c) { c.weight = "0,-2,-2"; c.mu = "-1,-2"; c.format = "csv"; });
  add("spectrum", "", [](cli::RunConfig& c) { c.weight = "-1/2,-3/2,-3/2"; c.mu = "-1/2,-3/2"; c.t = 2.5; });
  for (const auto& c : configs) {
    const std::string a = cli::render(cli::run(c), c), b = cli::render(cli::run(c), c);
    if (a != b) {
      o.pass = false;
      o.detail += c.command + " " + c.subcommand + " ";
    }
  }
  cli::RunConfig serial;
  serial.command = "label";
  serial.weight = "0,-1,-1";
  // jobs is echoed in the config block, so only the results are compared.
  if (cli::run(serial).body["result"] != cli::run(configs[3]).body["result"]) {
    o.pass = false;
    o.detail += "label jobs=1 vs jobs=2 ";
  }
  o.detail += std::to_string(configs.size()) + " reports rendered twice";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Lie layer: Jacobi, realization, centralizer of the principal nilpotent", 10, lie_layer},
      {2, "Pfaffian differential at the skew principal element", 30, pfaffian_differential},
      {3, "Leading differentials and Jacobian rank of the family", 120, leading_terms},
      {4, "Family Poisson-commutes; Poincare series agree", 300, symbol_level},
      {5, "Envelope invariants central and mutually commuting", 300, envelope},
      {6, "Twisted Yangian relations and Bethe commutativity", 120, yangian},
      {7, "Branching dimension identity and pattern counts", 120, branching_battery},
      {8, "Spectral-flow labeling is a bijection onto patterns", 900, labeling_battery},
      {9, "Path independence on o_4 multiplicity spaces", 300, path_battery},
      {10, "Byte-identical reports for fixed seeds", 120, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_seconds;
    const bool pass = o.pass && in_budget;
    if (!pass) ++failures;
    std::printf("%s [%d] %s (%.2f s, budget %.0f s%s) %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.budget_seconds, in_budget ? "" : ", over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
