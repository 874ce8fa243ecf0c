#include "commands.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

using namespace bethegt;
using cli::RunConfig;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run_tool(const std::string& args) {
  const std::string cmd = std::string(BETHEGT_TOOL_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

RunConfig config(const std::string& command, const std::string& sub = "") {
  RunConfig c;
  c.command = command;
  c.subcommand = sub;
  return c;
}

}  // namespace

TEST(Commands, PoincareReport) {
  auto c = config("verify", "poincare");
  c.n = 2;
  const auto r = cli::run(c);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.body["generator_degrees"], cli::json({1, 1, 2, 2}));
  EXPECT_EQ(r.body["command"], "verify poincare");
  EXPECT_FALSE(r.body.contains("elapsed_seconds"));
}

TEST(Commands, PatternsAndBranch) {
  auto c = config("patterns", "count");
  c.n = 3;
  c.weight = "-1,-1,-1";
  c.half = true;
  auto r = cli::run(c);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.body["result"]["count"], 4);

  c = config("branch");
  c.weight = "0,0,-1";
  r = cli::run(c);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.body["result"]["terms"].size(), 2u);
}

TEST(Commands, LabelSmallWeight) {
  auto c = config("label");
  c.weight = "0,-1";
  const auto r = cli::run(c);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.body["result"]["patterns"].size(), 4u);
}

TEST(Commands, UsageErrors) {
  auto c = config("patterns", "count");
  c.weight = "-3,-2,-1";
  EXPECT_THROW(cli::run(c), cli::UsageError);
  c = config("verify", "envelope");
  c.n = 4;
  EXPECT_THROW(cli::run(c), cli::UsageError);
  c = config("branch");
  c.weight = "0,-1";
  c.format = "csv";
  EXPECT_THROW(cli::run(c), cli::UsageError);
  c = config("flow");
  c.weight = "0,-1";
  c.mu = "-3";
  EXPECT_THROW(cli::run(c), cli::UsageError);
}

TEST(Commands, ReportsAreDeterministic) {
  auto c = config("verify", "yangian");
  c.configs = 3;
  c.samples = 5;
  c.seed = 42;
  EXPECT_EQ(cli::render(cli::run(c), c), cli::render(cli::run(c), c));
  auto f = config("label");
  f.weight = "0,-1,-1";
  const auto one = cli::run(f).body["result"];
  f.jobs = 3;
  EXPECT_EQ(cli::run(f).body["result"], one);
}

TEST(Executable, ExitCodes) {
  const auto ok = run_tool("verify poincare --n 2");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("\"pass\": true"), std::string::npos);
  EXPECT_EQ(run_tool("patterns count --weight=-3,-2,-1").code, 2);
  EXPECT_EQ(run_tool("no-such-command").code, 2);
  EXPECT_EQ(run_tool("verify lie --n 9").code, 2);
}

TEST(Executable, SeparateProcessesAgree) {
  const std::string args = "flow --weight=0,-2,-2 --mu=-1,-2 --u 0.3,1.0 --format csv --seed 5";
  const auto a = run_tool(args), b = run_tool(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("t,line0", 0), 0u);
}
