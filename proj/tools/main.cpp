#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <utility>

int main(int argc, char** argv) {
  using bethegt::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Bethe subalgebras of twisted Yangians and type D Gelfand-Tsetlin patterns"};
  app.set_config("--config", "", "key = value file mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--n", cfg.n, "Rank n of o_2n");
  app.add_option("--weight", cfg.weight, "Weight as comma-separated rationals, e.g. \"0,-1,-3/2\"");
  app.add_option("--mu", cfg.mu, "Subweight, or the diagonal shift element for verify poisson");
  app.add_flag("--half", cfg.half, "Halve every weight entry");
  app.add_option("--u", cfg.u, "Flow direction u_1 < u_2 < ...")->delimiter(',');
  app.add_option("--u2", cfg.u2, "Second direction for paths")->delimiter(',');
  app.add_option("--t", cfg.t, "Flow parameter for spectrum");
  app.add_option("--tmax", cfg.tmax, "End of the flow");
  app.add_option("--grid-q", cfg.grid_q, "Ratio of the geometric t-grid");
  app.add_option("--seed", cfg.seed, "Random seed")->envname("BETHEGT_SEED");
  app.add_option("--jobs", cfg.jobs, "Worker threads");
  app.add_option("--out", cfg.out, "Output file (stdout when omitted)");
  app.add_option("--format", cfg.format, "json or csv (flow eigenvalue table)");
  auto* exact = app.add_flag("--exact", cfg.exact, "Exact commutator checks");
  app.add_flag("--float", [&](std::int64_t) { cfg.exact = false; }, "Floating-point commutator checks")->excludes(exact);
  app.add_option("--maxdeg", cfg.maxdeg, "Degree cap");
  app.add_option("--samples", cfg.samples, "Random samples per check");
  app.add_option("--configs", cfg.configs, "Random module configurations for verify yangian");
  app.add_flag("--timing", cfg.timing, "Record elapsed time in the report");

  auto* verify = app.add_subcommand("verify", "Machine checks of the algebraic statements");
  verify->require_subcommand(1);
  verify->fallthrough();
  for (const char* suite : {"lie", "poisson", "pfaffian", "independence", "poincare", "envelope", "yangian"}) {
    verify->add_subcommand(suite)->fallthrough()->callback([&cfg, suite] {
      cfg.command = "verify";
      cfg.subcommand = suite;
    });
  }
  auto* patterns = app.add_subcommand("patterns", "Gelfand-Tsetlin patterns of a weight");
  patterns->require_subcommand(1);
  patterns->fallthrough();
  for (const char* mode : {"count", "enumerate"}) {
    patterns->add_subcommand(mode)->fallthrough()->callback([&cfg, mode] {
      cfg.command = "patterns";
      cfg.subcommand = mode;
    });
  }
  const std::pair<const char*, const char*> commands[] = {
      {"branch", "Restriction of --weight to o_2n-2 with multiplicities"},
      {"spectrum", "Joint spectrum of the Bethe pencil on a multiplicity space at --t"},
      {"flow", "Track the eigenbasis from t = 0 to --tmax and label it by primed rows"},
      {"label", "Label a full basis of --weight through every restriction step"},
      {"paths", "Compare labels obtained along --u and --u2"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough()->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto report = bethegt::cli::run(cfg);
    bethegt::cli::write_report(report, cfg);
    return report.pass() ? 0 : 1;
  } catch (const bethegt::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
