#pragma once

// Subcommands of the bethegt tool. Each returns a report whose "pass" field
// is the conjunction of its checks.

#include "bethegt/serialize.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bethegt::cli {

using io::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxSymbolicRank = 5;
inline constexpr int kMaxEnvelopeRank = 3;
inline constexpr int kMaxLabelingRank = 3;

struct RunConfig {
  std::string command;     // verify, patterns, branch, spectrum, flow, label, paths
  std::string subcommand;  // suite or mode for verify / patterns
  int n = 2;
  std::string weight;
  std::string mu;
  bool half = false;
  std::vector<double> u{0.3, 1.0, 1.7, 2.4};
  std::vector<double> u2{-0.45, 0.8, 1.35, 2.9};
  double t = 0.0;
  double tmax = 1e6;
  double grid_q = 1.3;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
  std::string format = "json";
  bool exact = true;
  int maxdeg = 6;
  int samples = 25;
  int configs = 10;
  bool timing = false;
};

struct Report {
  json body;
  bool pass() const { return body.value("pass", false); }
};

/// Dispatches on command/subcommand. Throws UsageError for invalid
/// configurations (bad weights, caps exceeded, unknown commands).
Report run(const RunConfig& config);

/// The report as canonical JSON, or the eigenvalue table for `flow` with
/// format csv.
std::string render(const Report& report, const RunConfig& config);

/// Writes render() to config.out, or to stdout when out is empty.
void write_report(const Report& report, const RunConfig& config);

// Suites shared with the acceptance runner.
json lie_checks(int n, int samples, std::uint64_t seed);
json poisson_checks(int n, const std::string& mu, std::uint64_t seed);
json pfaffian_checks(int n, std::uint64_t seed);
json independence_checks(int n, std::uint64_t seed);
json poincare_checks(int n, int maxdeg);
json envelope_checks(int n, int maxdeg);
json yangian_checks(int configs, int samples, std::uint64_t seed);

/// True iff every element of a check array has "pass": true.
bool all_pass(const json& checks);

}  // namespace bethegt::cli
