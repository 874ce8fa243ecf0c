#include "bethegt/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bethegt::io {

namespace {

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& item : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        dump_into(item, indent, depth + 1, out);
      }
      out += nl;
      out += close_pad + "]";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_into(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

json half_json(gt::HalfInt h) { return h.twice(); }

json row_json(const gt::Row& r) {
  json a = json::array();
  for (auto h : r) a.push_back(half_json(h));
  return a;
}

gt::Row row_from_json(const json& j) {
  gt::Row r;
  for (const auto& x : j) r.push_back(gt::HalfInt::from_twice(x.get<std::int64_t>()));
  return r;
}

template <class T>
json scalar_json(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return rational_json(x);
  else
    return x;
}

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
json pencil_json(const yang::OperatorPencil<T>& p) {
  json j;
  j["matrices"] = json::array();
  for (const auto& g : p.generators) j["matrices"].push_back(matrix_json(g));
  j["t"] = scalar_json(p.t);
  j["z"] = json::array();
  for (const auto& z : p.z) j["z"].push_back(scalar_json(z));
  j["delta"] = scalar_json(p.delta);
  j["alpha"] = json::array();
  for (const auto& a : p.alpha) j["alpha"].push_back(rational_json(a));
  j["beta"] = json::array();
  for (const auto& b : p.beta) j["beta"].push_back(rational_json(b));
  j["dim"] = p.dim();
  return j;
}

json monomial_json(const poly::Monomial& m) {
  json out = json::array();
  for (std::size_t a = 0; a < m.size();) {
    std::size_t b = a;
    while (b < m.size() && m[b] == m[a]) ++b;
    const auto p = lie::basis_pair(m[a]);
    out.push_back({{"i", p.i}, {"j", p.j}, {"power", b - a}});
    a = b;
  }
  return out;
}

}  // namespace

std::string canonical_dump(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}

json to_json(const lie::LieElement& x) {
  json terms = json::array();
  for (const auto& [idx, c] : x.coeffs()) {
    const auto p = lie::basis_pair(idx);
    terms.push_back({{"i", p.i}, {"j", p.j}, {"c", rational_json(c)}});
  }
  return {{"n", x.rank()}, {"terms", terms}};
}

lie::LieElement lie_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  lie::LieElement x(n);
  for (const auto& t : j.at("terms")) {
    const Rational c = rational_from_json(t.at("c"));
    x += c * lie::LieElement::generator(t.at("i").get<int>(), t.at("j").get<int>(), n);
  }
  return x;
}

json to_json(const poly::PolyQ& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({{"exponents", monomial_json(m)}, {"coefficient", rational_json(c)}});
  return out;
}

poly::PolyQ poly_from_json(const json& j) {
  poly::PolyQ p;
  for (const auto& term : j) {
    poly::PolyQ mono = poly::PolyQ::constant(rational_from_json(term.at("coefficient")));
    for (const auto& e : term.at("exponents")) {
      const poly::PolyQ v = poly::PolyQ::coordinate(e.at("i").get<int>(), e.at("j").get<int>());
      for (int k = 0; k < e.at("power").get<int>(); ++k) mono = mono * v;
    }
    p += mono;
  }
  return p;
}

json to_json(const env::PBWElement& a) {
  json out = json::array();
  for (const auto& [m, c] : a.terms()) {
    json word = json::array();
    for (auto g : m) {
      const auto p = lie::basis_pair(g);
      word.push_back(json::array({p.i, p.j}));
    }
    out.push_back({{"word", word}, {"coefficient", rational_json(c)}});
  }
  return out;
}

json to_json(const gt::WeightD& w) { return {{"entries", row_json(w.entries)}, {"half", w.is_half()}, {"text", w.to_string()}}; }

json to_json(const gt::GTPatternD& p) {
  json rows = json::array(), primed = json::array();
  for (const auto& r : p.rows) rows.push_back(row_json(r));
  for (const auto& r : p.primed) primed.push_back(row_json(r));
  const bool half = !p.rows.empty() && !p.rows.back().empty() && !p.rows.back().front().is_integer();
  return {{"rows", rows}, {"primed", primed}, {"half", half}};
}

gt::GTPatternD pattern_from_json(const json& j) {
  gt::GTPatternD p;
  for (const auto& r : j.at("rows")) p.rows.push_back(row_from_json(r));
  for (const auto& r : j.at("primed")) p.primed.push_back(row_from_json(r));
  return p;
}

json to_json(const gt::BranchParams& p) {
  json alpha = json::array(), beta = json::array();
  for (auto a : p.alpha) alpha.push_back(rational_json(a.value()));
  for (auto b : p.beta) beta.push_back(rational_json(b.value()));
  return {{"alpha0", rational_json(p.alpha0.value())},
          {"alpha", alpha},
          {"beta", beta},
          {"delta", rational_json(p.delta().value())},
          {"admissible", p.admissible()},
          {"multiplicity", p.multiplicity().get_str()}};
}

json to_json(const yang::OperatorPencil<Rational>& p) { return pencil_json(p); }
json to_json(const yang::OperatorPencil<double>& p) { return pencil_json(p); }

json to_json(const yang::RelationReport& r) {
  return {{"pass", r.ok},
          {"samples", r.samples},
          {"resampled", r.resampled},
          {"seed", r.seed},
          {"quaternary_checks", r.quaternary_checks},
          {"symmetry_checks", r.symmetry_checks},
          {"failures", r.failures}};
}

json to_json(const yang::SpectrumResult& s) {
  json lines = json::array();
  for (const auto& l : s.lines) {
    json joint = json::array();
    for (const auto& v : l.joint) joint.push_back(json::array({v.real(), v.imag()}));
    lines.push_back({{"value", json::array({l.value.real(), l.value.imag()})}, {"joint", joint}});
  }
  return {{"simple", s.simple},   {"min_gap", s.min_gap}, {"attempts", s.attempts},
          {"seed", s.seed},       {"coefficients", s.coefficients}, {"lines", lines}};
}

json to_json(const yang::FlowResult& f) {
  json labels = json::array();
  for (const auto& l : f.labels) labels.push_back(row_json(l));
  return {{"lambda", to_json(f.lambda)},
          {"mu", to_json(f.mu)},
          {"params", to_json(f.params)},
          {"u", f.u},
          {"seed", f.seed},
          {"dimension", f.dimension},
          {"generators", f.generators},
          {"grid", f.grid},
          {"eigenvalues", f.eigenvalues},
          {"matchings", f.matchings},
          {"step_overlaps", f.step_overlaps},
          {"terminal", f.terminal},
          {"terminal_overlaps", f.terminal_overlaps},
          {"labels", labels},
          {"bisections", f.bisections},
          {"retries", f.retries},
          {"min_gap", f.min_gap},
          {"pass", f.ok},
          {"error", f.error}};
}

json to_json(const yang::LabelingResult& r) {
  json patterns = json::array(), levels = json::array();
  for (const auto& p : r.patterns) patterns.push_back(to_json(p));
  for (const auto& l : r.levels)
    levels.push_back({{"lambda", l.lambda.to_string()},
                      {"mu", l.mu.to_string()},
                      {"dimension", l.dimension},
                      {"labels_match", l.labels_match},
                      {"min_terminal_overlap", l.min_terminal_overlap},
                      {"bisections", l.bisections},
                      {"retries", l.retries},
                      {"error", l.error}});
  return {{"lambda", to_json(r.lambda)},
          {"patterns", patterns},
          {"pattern_count", r.patterns.size()},
          {"expected", r.expected},
          {"bijection", r.bijection},
          {"min_terminal_overlap", r.min_terminal_overlap},
          {"levels", levels},
          {"error", r.error},
          {"pass", r.ok()}};
}

json to_json(const poly::PoincareReport& r) {
  auto series = [](const std::vector<Integer>& s) {
    json a = json::array();
    for (const auto& x : s) a.push_back(x.get_str());
    return a;
  };
  return {{"n", r.n},
          {"max_degree", r.max_degree},
          {"generator_degrees", r.generator_degrees},
          {"limit_series", series(r.limit_series)},
          {"family_series", series(r.family_series)},
          {"generic_series", series(r.generic_series)},
          {"pass", r.equal}};
}

json to_json(const poly::LeadingTermCheck& c) {
  json j{{"name", c.name}, {"expected", lie::pair_name(c.expected)}, {"pass", c.ok}};
  j["found"] = c.found ? json(lie::pair_name(*c.found)) : json(nullptr);
  if (c.partner_ratio) j["partner_ratio"] = *c.partner_ratio;
  return j;
}

std::string eigenvalue_csv(const yang::FlowResult& f) {
  std::ostringstream os;
  os << "t";
  for (std::size_t a = 0; a < f.dimension; ++a) os << ",line" << a;
  os << "\n";
  char buf[40];
  for (std::size_t g = 0; g < f.grid.size(); ++g) {
    std::snprintf(buf, sizeof buf, "%.17g", f.grid[g]);
    os << buf;
    for (double v : f.eigenvalues[g]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << "," << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace bethegt::io
