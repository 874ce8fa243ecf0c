#include "bethegt/serialize.hpp"
#include "commands.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bethegt;

namespace {

gt::WeightD dominant(const std::string& text, bool half) {
  auto w = gt::parse_weight(text, half);
  if (!gt::is_dominant(w)) throw py::value_error("weight " + w.to_string() + " is not dominant");
  return w;
}

std::vector<Rational> rationals(const std::vector<std::string>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(parse_rational(x));
  return out;
}

std::vector<yang::EvalModule> modules(const std::vector<std::string>& alpha, const std::vector<std::string>& beta) {
  if (alpha.size() != beta.size()) throw py::value_error("alpha and beta must have the same length");
  std::vector<yang::EvalModule> out;
  for (std::size_t i = 0; i < alpha.size(); ++i) out.push_back(yang::eval_module(parse_rational(alpha[i]), parse_rational(beta[i])));
  return out;
}

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

yang::FlowSchedule schedule(double t_max, double q, double gap_tol) {
  yang::FlowSchedule s;
  s.t_max = t_max;
  s.q = q;
  s.gap_tol = gap_tol;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bethe subalgebras of twisted Yangians and Gelfand-Tsetlin patterns of type D";

  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);

  m.def(
      "run",
      [](const std::string& command, const std::string& subcommand, const py::dict& options) {
        cli::RunConfig c;
        c.command = command;
        c.subcommand = subcommand;
        for (const auto& [key, value] : options) {
          const auto k = key.cast<std::string>();
          if (k == "n") c.n = value.cast<int>();
          else if (k == "weight") c.weight = value.cast<std::string>();
          else if (k == "mu") c.mu = value.cast<std::string>();
          else if (k == "half") c.half = value.cast<bool>();
          else if (k == "u") c.u = value.cast<std::vector<double>>();
          else if (k == "u2") c.u2 = value.cast<std::vector<double>>();
          else if (k == "t") c.t = value.cast<double>();
          else if (k == "tmax") c.tmax = value.cast<double>();
          else if (k == "grid_q") c.grid_q = value.cast<double>();
          else if (k == "seed") c.seed = value.cast<std::uint64_t>();
          else if (k == "jobs") c.jobs = value.cast<int>();
          else if (k == "exact") c.exact = value.cast<bool>();
          else if (k == "maxdeg") c.maxdeg = value.cast<int>();
          else if (k == "samples") c.samples = value.cast<int>();
          else if (k == "configs") c.configs = value.cast<int>();
          else throw py::key_error("unknown option '" + k + "'");
        }
        return io::canonical_dump(cli::run(c).body);
      },
      py::arg("command"), py::arg("subcommand") = "", py::arg("options") = py::dict(),
      "Runs a tool command and returns its JSON report as text.");

  m.def(
      "weyl_dim", [](const std::string& weight, bool half) { return gt::weyl_dim(dominant(weight, half)).get_str(); },
      py::arg("weight"), py::arg("half") = false, "Dimension of the irreducible o_2n module, as a decimal string.");

  m.def(
      "branch",
      [](const std::string& weight, bool half) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& t : gt::branch(dominant(weight, half))) out.emplace_back(t.mu.to_string(), t.multiplicity.get_str());
        return out;
      },
      py::arg("weight"), py::arg("half") = false, "Restriction to o_2n-2 as (mu, multiplicity) pairs.");

  m.def(
      "branching_params",
      [](const std::string& lambda, const std::string& mu, bool half) {
        return io::canonical_dump(io::to_json(gt::branching_params(gt::parse_weight(lambda, half), gt::parse_weight(mu, half))));
      },
      py::arg("weight"), py::arg("mu"), py::arg("half") = false);

  m.def(
      "patterns",
      [](const std::string& weight, bool half) {
        auto list = io::json::array();
        for (const auto& p : gt::enumerate_patterns(dominant(weight, half))) list.push_back(io::to_json(p));
        return io::canonical_dump(list);
      },
      py::arg("weight"), py::arg("half") = false);

  m.def("centralizer_dim_principal", [](int n) { return lie::centralizer_dim(lie::principal_nilpotent(n)); }, py::arg("n"));

  m.def("pfaffian_invariant", [](int k, int n) { return poly::pfaffian_invariant(k, n).to_string(); }, py::arg("k"), py::arg("n"));

  m.def(
      "bethe_operators",
      [](const std::vector<std::string>& alpha, const std::vector<std::string>& beta, const std::vector<double>& z, double delta,
         int count, double t) {
        const auto fs = modules(alpha, beta);
        const auto p = yang::bethe_operators<double>(fs, z, delta, count, t);
        std::vector<Eigen::MatrixXd> out;
        for (const auto& g : p.generators) out.push_back(to_eigen(g));
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("z"), py::arg("delta"), py::arg("count") = 4, py::arg("t") = 0.0,
      "Bethe generators on L(alpha_1, beta_1) x ... x W(delta) as dense float matrices.");

  m.def(
      "verify_relations",
      [](const std::vector<std::string>& alpha, const std::vector<std::string>& beta, const std::vector<std::string>& z,
         const std::string& delta, int samples, std::uint64_t seed) {
        const auto fs = modules(alpha, beta);
        const auto zs = rationals(z);
        return io::canonical_dump(io::to_json(yang::verify_relations(fs, zs, parse_rational(delta), samples, seed)));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("z"), py::arg("delta"), py::arg("samples") = 25, py::arg("seed") = 1);

  m.def(
      "flow",
      [](const std::string& lambda, const std::string& mu, const std::vector<double>& u, std::uint64_t seed, bool half,
         double t_max, double q, double gap_tol) {
        const auto f = yang::flow(dominant(lambda, half), gt::parse_weight(mu, half), u, schedule(t_max, q, gap_tol), seed);
        return io::canonical_dump(io::to_json(f));
      },
      py::arg("weight"), py::arg("mu"), py::arg("u"), py::arg("seed") = 1, py::arg("half") = false, py::arg("t_max") = 1e6,
      py::arg("q") = 1.3, py::arg("gap_tol") = 1e-9);

  m.def(
      "full_labeling",
      [](const std::string& lambda, const std::vector<double>& u, std::uint64_t seed, int jobs, bool half) {
        const auto w = dominant(lambda, half);
        std::string text;
        {
          py::gil_scoped_release release;
          text = io::canonical_dump(io::to_json(yang::full_labeling(w, u, yang::FlowSchedule{}, seed, jobs)));
        }
        return text;
      },
      py::arg("weight"), py::arg("u"), py::arg("seed") = 1, py::arg("jobs") = 1, py::arg("half") = false);
}
