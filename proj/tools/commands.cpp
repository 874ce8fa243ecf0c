#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace bethegt::cli {

namespace {

json check(const std::string& name, bool pass, json detail = json::object()) {
  detail["name"] = name;
  detail["pass"] = pass;
  return detail;
}

Rational random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound), den(1, den_bound);
  const long p = num(rng);
  Rational q(p, den(rng));
  q.canonicalize();
  return q;
}

lie::LieElement random_element(int n, std::mt19937_64& rng) {
  lie::LieElement x(n);
  for (std::size_t a = 0; a < lie::algebra_dim(n); ++a) x.add(a, random_rational(rng, 5, 4));
  return x;
}

void require_rank(int n, int lo, int hi, const std::string& what) {
  if (n < lo || n > hi)
    throw UsageError(what + ": rank " + std::to_string(n) + " outside the supported range " + std::to_string(lo) + ".." + std::to_string(hi));
}

gt::WeightD parse_weight_arg(const std::string& text, bool half, const std::string& flag) {
  if (text.empty()) throw UsageError(flag + " is required");
  try {
    return gt::parse_weight(text, half);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

gt::WeightD dominant_weight_arg(const std::string& text, bool half, const std::string& flag) {
  gt::WeightD w = parse_weight_arg(text, half, flag);
  if (!gt::is_dominant(w)) throw UsageError(flag + ": weight " + w.to_string() + " is not dominant");
  return w;
}

lie::LieElement shift_element(int n, const std::string& mu) {
  if (mu.empty()) return lie::mu_of_epsilon(n, Rational(1, 3));
  lie::LieElement x(n);
  std::stringstream ss(mu);
  std::string item;
  int i = 1;
  while (std::getline(ss, item, ',')) {
    if (i > n) throw UsageError("--mu: more than n entries");
    try {
      x += parse_rational(item) * lie::LieElement::generator(i, i, n);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--mu: ") + e.what());
    }
    ++i;
  }
  if (i != n + 1) throw UsageError("--mu: expected n diagonal entries");
  return x;
}

json config_json(const RunConfig& c) {
  return {{"command", c.command}, {"subcommand", c.subcommand}, {"n", c.n},        {"weight", c.weight},   {"mu", c.mu},
          {"half", c.half},       {"u", c.u},                   {"u2", c.u2},      {"t", c.t},             {"tmax", c.tmax},
          {"grid_q", c.grid_q},   {"seed", c.seed},             {"jobs", c.jobs},  {"format", c.format},   {"exact", c.exact},
          {"maxdeg", c.maxdeg},   {"samples", c.samples},       {"configs", c.configs}};
}

yang::FlowSchedule schedule_of(const RunConfig& c) {
  if (!(c.tmax > 0.1)) throw UsageError("--tmax must exceed the first grid point 0.1");
  if (!(c.grid_q > 1.0)) throw UsageError("--grid-q must be greater than 1");
  yang::FlowSchedule s;
  s.t_max = c.tmax;
  s.q = c.grid_q;
  return s;
}

std::vector<double> u_arg(const std::vector<double>& u, std::size_t needed, const std::string& flag) {
  try {
    yang::check_u_vector(u, needed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
  return u;
}

}  // namespace

bool all_pass(const json& checks) {
  for (const auto& c : checks)
    if (!c.value("pass", false)) return false;
  return true;
}

json lie_checks(int n, int samples, std::uint64_t seed) {
  json out = json::array();
  const lie::Algebra alg(n);
  const std::size_t d = alg.dim();
  out.push_back(check("basis_size", d == static_cast<std::size_t>(n * (2 * n - 1)), {{"n", n}, {"dim", d}}));

  auto gen = [&](std::size_t a) {
    lie::LieElement x(n);
    x.add(a, 1);
    return x;
  };
  std::mt19937_64 rng(seed);
  const bool full = n <= 3;

  bool anti = true, jacobi = true;
  std::size_t triples = 0;
  if (full) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const auto ab = lie::bracket(alg, gen(a), gen(b));
        if (!(ab == Rational(-1) * lie::bracket(alg, gen(b), gen(a)))) anti = false;
        for (std::size_t c = 0; c < d; ++c) {
          const auto j = lie::bracket(alg, ab, gen(c)) + lie::bracket(alg, lie::bracket(alg, gen(b), gen(c)), gen(a)) +
                         lie::bracket(alg, lie::bracket(alg, gen(c), gen(a)), gen(b));
          ++triples;
          if (!j.is_zero()) jacobi = false;
        }
      }
  } else {
    for (int s = 0; s < samples; ++s) {
      const auto x = random_element(n, rng), y = random_element(n, rng), z = random_element(n, rng);
      if (!(lie::bracket(alg, x, y) == Rational(-1) * lie::bracket(alg, y, x))) anti = false;
      const auto j = lie::bracket(alg, lie::bracket(alg, x, y), z) + lie::bracket(alg, lie::bracket(alg, y, z), x) +
                     lie::bracket(alg, lie::bracket(alg, z, x), y);
      ++triples;
      if (!j.is_zero()) jacobi = false;
    }
  }
  out.push_back(check("antisymmetry", anti, {{"exhaustive", full}}));
  out.push_back(check("jacobi", jacobi, {{"exhaustive", full}, {"triples", triples}}));

  bool realization = true, skew = true;
  std::size_t pairs = 0;
  auto cross = [&](const lie::LieElement& x, const lie::LieElement& y) {
    ++pairs;
    if (!(lie::matrix_of(lie::bracket(alg, x, y)) == commutator(lie::matrix_of(x), lie::matrix_of(y)))) realization = false;
  };
  if (full)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) cross(gen(a), gen(b));
  for (int s = 0; s < samples; ++s) {
    const auto x = random_element(n, rng), y = random_element(n, rng);
    cross(x, y);
    const auto m = lie::matrix_of(x);
    for (int i = -n; i <= n; ++i)
      for (int j = -n; j <= n; ++j) {
        if (i == 0 || j == 0) continue;
        if (m(lie::matrix_slot(i, n), lie::matrix_slot(j, n)) != -m(lie::matrix_slot(-j, n), lie::matrix_slot(-i, n))) skew = false;
      }
    if (!(lie::LieElement::from_matrix(m, n) == x)) skew = false;
  }
  out.push_back(check("matrix_realization", realization, {{"pairs", pairs}}));
  out.push_back(check("skew_condition", skew, {{"samples", samples}}));

  json dims = json::array();
  bool central = true;
  for (int k = 2; k <= n; ++k) {
    const std::size_t c = lie::centralizer_dim(lie::principal_nilpotent(k));
    dims.push_back({{"n", k}, {"centralizer_dim", c}});
    if (c != static_cast<std::size_t>(k)) central = false;
  }
  out.push_back(check("principal_nilpotent_centralizer", central, {{"levels", dims}}));
  return out;
}

json poisson_checks(int n, const std::string& mu_text, std::uint64_t seed) {
  (void)seed;
  json out = json::array();
  const lie::Algebra alg(n);
  const auto family = poly::invariant_family(n);

  bool commute = true;
  json failures = json::array();
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      ++pairs;
      if (!poly::poisson_bracket(alg, family[a].poly, family[b].poly).is_zero()) {
        commute = false;
        failures.push_back(family[a].name() + " " + family[b].name());
      }
    }
  out.push_back(check("family_commute", commute, {{"pairs", pairs}, {"members", family.size()}, {"failures", failures}}));

  bool invariant = true;
  for (const auto& f : family) {
    if (f.kind == poly::InvariantKind::corner_entry) continue;
    for (std::size_t g = 0; g < lie::algebra_dim(f.k); ++g)
      if (!poly::bracket_with_generator(alg, g, f.poly).is_zero()) invariant = false;
  }
  out.push_back(check("trace_and_pfaffian_invariance", invariant));

  const lie::LieElement mu = shift_element(n, mu_text);
  const bool regular = lie::centralizer_dim(mu) == static_cast<std::size_t>(n);
  const auto mf = poly::mf_generators(n, mu);
  bool mf_commute = true;
  for (std::size_t a = 0; a < mf.size(); ++a)
    for (std::size_t b = a + 1; b < mf.size(); ++b)
      if (!poly::poisson_bracket(alg, mf[a], mf[b]).is_zero()) mf_commute = false;
  out.push_back(check("shift_of_argument_commute", mf_commute, {{"mu", io::to_json(mu)}, {"regular", regular}, {"generators", mf.size()}}));
  return out;
}

json pfaffian_checks(int n, std::uint64_t seed) {
  json out = json::array();
  json levels = json::array();
  bool lemma = true;
  for (int k = 2; k <= n; ++k) {
    const auto c = poly::verify_pfaffian_differential(k);
    levels.push_back({{"k", k}, {"factor", io::rational_json(c.factor)}, {"pass", c.ok}});
    if (!c.ok) lemma = false;
  }
  out.push_back(check("pfaffian_differential", lemma, {{"levels", levels}}));

  std::mt19937_64 rng(seed);
  bool squares = true;
  for (int k = 1; k <= std::min(n, 3); ++k) {
    const poly::PolyQ pf = poly::pfaffian(poly::generic_skew_matrix(k));
    const std::size_t size = 2 * static_cast<std::size_t>(k);
    for (int s = 0; s < 5; ++s) {
      Matrix<Rational> m(size, size);
      std::vector<Rational> point(size * (size - 1) / 2);
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = a + 1; b < size; ++b) {
          const Rational v = random_rational(rng, 6, 3);
          m(a, b) = v;
          m(b, a) = -v;
          point[poly::skew_variable(a, b, k)] = v;
        }
      const Rational p = pf.evaluate(point);
      if (p * p != determinant(m)) squares = false;
    }
  }
  out.push_back(check("pfaffian_squared_is_determinant", squares));

  bool pk = true;
  for (int k = 1; k <= std::min(n, 3); ++k) {
    const poly::PolyQ p = poly::pfaffian_invariant(k, n);
    for (int s = 0; s < 5; ++s) {
      const auto x = random_element(n, rng);
      const auto full = lie::matrix_of(x);
      const std::size_t size = 2 * static_cast<std::size_t>(k);
      Matrix<Rational> sub(size, size);
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b)
          sub(a, b) = full(lie::matrix_slot(lie::slot_index(a, k), n), lie::matrix_slot(lie::slot_index(b, k), n));
      const Rational v = p.evaluate(poly::point_of(x));
      Rational det = determinant(sub);
      if (k % 2 == 1) det = -det;
      if (v * v != det) pk = false;
    }
  }
  out.push_back(check("pfaffian_invariant_square", pk, {{"relation", "p_k^2 = (-1)^k det F^(k)"}}));
  return out;
}

json independence_checks(int n, std::uint64_t seed) {
  json out = json::array();
  for (int k = 2; k <= n; ++k) {
    const auto table = poly::verify_leading_terms(k);
    json rows = json::array();
    bool ok = true;
    for (const auto& row : table) {
      rows.push_back(io::to_json(row));
      if (!row.ok) ok = false;
    }
    out.push_back(check("leading_terms_n" + std::to_string(k), ok, {{"table", rows}}));
  }
  std::mt19937_64 rng(seed);
  for (int k = 2; k <= n; ++k) {
    const auto family = poly::invariant_family(k);
    std::vector<poly::PolyQ> polys;
    for (const auto& f : family) polys.push_back(f.poly);
    const std::size_t at_e = poly::jacobian_rank(polys, lie::principal_nilpotent(k));
    const std::size_t at_random = poly::jacobian_rank(polys, random_element(k, rng));
    const std::size_t want = static_cast<std::size_t>(k * k);
    out.push_back(check("jacobian_rank_n" + std::to_string(k), at_e == want && at_random == want,
                        {{"members", family.size()}, {"rank_at_principal_nilpotent", at_e}, {"rank_at_random_point", at_random}}));
  }
  return out;
}

json poincare_checks(int n, int maxdeg) {
  json out = json::array();
  for (int k = 1; k <= n; ++k) {
    const auto r = poly::poincare_check(k, maxdeg);
    json detail = io::to_json(r);
    detail.erase("pass");
    out.push_back(check("poincare_n" + std::to_string(k), r.equal, detail));
  }
  return out;
}

json envelope_checks(int n, int maxdeg) {
  struct Item {
    std::string name;
    int level;
    int degree;
    env::PBWElement element;
  };
  json out = json::array();
  env::Envelope U(n);
  std::vector<Item> items;
  bool symbols = true;
  json symbol_rows = json::array();
  for (int k = 1; k <= n; ++k) {
    for (int m = 1; 2 * m <= maxdeg; ++m) {
      auto g = U.gelfand_invariant(k, m);
      const bool ok = env::symbol(g) == poly::trace_power(k, m, n);
      symbols = symbols && ok;
      symbol_rows.push_back({{"element", "tr[" + std::to_string(k) + "," + std::to_string(m) + "]"}, {"pass", ok}});
      items.push_back({"tr[" + std::to_string(k) + "," + std::to_string(m) + "]", k, 2 * m, std::move(g)});
    }
    if (k <= maxdeg) {
      const poly::PolyQ p = poly::pfaffian_invariant(k, n);
      auto s = U.symmetrize(p);
      const bool ok = env::symbol(s) == p;
      symbols = symbols && ok;
      symbol_rows.push_back({{"element", "symm_p[" + std::to_string(k) + "]"}, {"pass", ok}});
      items.push_back({"symm_p[" + std::to_string(k) + "]", k, k, std::move(s)});
    }
  }
  out.push_back(check("symbols", symbols, {{"elements", symbol_rows}}));

  bool central = true;
  json failures = json::array();
  for (const auto& it : items)
    for (std::size_t g = 0; g < lie::algebra_dim(it.level); ++g)
      if (!U.commutator(it.element, U.generator(g)).is_zero()) {
        central = false;
        failures.push_back(it.name + " vs " + lie::pair_name(lie::basis_pair(g)));
      }
  out.push_back(check("central_in_level", central, {{"elements", items.size()}, {"failures", failures}}));

  bool mutual = true;
  std::size_t pairs = 0;
  json mutual_failures = json::array();
  for (std::size_t a = 0; a < items.size(); ++a)
    for (std::size_t b = a + 1; b < items.size(); ++b) {
      ++pairs;
      if (!U.commutator(items[a].element, items[b].element).is_zero()) {
        mutual = false;
        mutual_failures.push_back(items[a].name + " vs " + items[b].name);
      }
    }
  out.push_back(check("mutual_commute", mutual, {{"pairs", pairs}, {"failures", mutual_failures}}));
  return out;
}

json yangian_checks(int configs, int samples, std::uint64_t seed) {
  json out = json::array();
  std::mt19937_64 rng(seed);

  // W(delta) alone.
  {
    const Rational delta = random_rational(rng, 9, 4);
    const std::vector<yang::EvalModule> none;
    const std::vector<Rational> noz;
    const auto s = yang::s_operator<Rational>(none, noz, delta);
    const auto c = s.laurent(1, 1, 2);
    const Rational u = random_rational(rng, 20, 7) + Rational(1, 3);
    const bool ok = c[0](0, 0) == 1 && c[1](0, 0) == delta - Rational(1, 2) && c[2](0, 0) == Rational(1, 4) - delta / 2 &&
                    s.at(1, 1, u)(0, 0) == (u + delta) / (u + Rational(1, 2)) &&
                    s.at(-1, -1, u)(0, 0) == (u - delta + 1) / (u + Rational(1, 2));
    const auto rel = yang::verify_relations(none, noz, delta, samples, seed);
    out.push_back(check("one_dimensional_module", ok && rel.ok,
                        {{"delta", io::rational_json(delta)},
                         {"s1", io::rational_json(c[1](0, 0))},
                         {"s2", io::rational_json(c[2](0, 0))},
                         {"relations", io::to_json(rel)}}));
  }

  std::uniform_int_distribution<int> nf_dist(1, 3), dim_dist(1, 4), den2(1, 2), beta_num(-3, 3);
  for (int cfg = 0; cfg < configs; ++cfg) {
    std::vector<yang::EvalModule> factors;
    std::vector<Rational> z;
    Rational delta;
    if (cfg == 0) {
      factors.push_back(yang::eval_module(Rational(1, 2), Rational(-1, 2)));
      z.push_back(0);
      delta = Rational(1, 2);
    } else {
      std::vector<int> dims;
      do {
        dims.assign(static_cast<std::size_t>(nf_dist(rng)), 0);
        for (auto& x : dims) x = dim_dist(rng);
      } while ([&] {
        int p = 1;
        for (int x : dims) p *= x;
        return p > 24;
      }());
      for (int dim : dims) {
        const int top = beta_num(rng);
        Rational beta(top, den2(rng));
        beta.canonicalize();
        factors.push_back(yang::eval_module(beta + dim - 1, beta));
        Rational zi;
        do {
          zi = random_rational(rng, 12, 5);
        } while (std::find(z.begin(), z.end(), zi) != z.end());
        z.push_back(zi);
      }
      delta = random_rational(rng, 9, 4);
    }
    json desc = json::array();
    for (std::size_t i = 0; i < factors.size(); ++i)
      desc.push_back({{"alpha", io::rational_json(factors[i].alpha)}, {"beta", io::rational_json(factors[i].beta)}, {"z", io::rational_json(z[i])}});

    const auto rel = yang::verify_relations(factors, z, delta, samples, seed + static_cast<std::uint64_t>(cfg));
    const auto pencil = yang::bethe_operators<Rational>(factors, z, delta, 4);
    const bool commute = yang::commutes_exactly(pencil);

    // Polynomial route against the factor-by-factor series.
    const auto t = yang::t_operator<Rational>(factors, z);
    const auto series = yang::t_series<Rational>(factors, z, 6);
    bool series_ok = true;
    for (int i : {-1, 1})
      for (int j : {-1, 1}) {
        const auto c = t.laurent(i, j, 6);
        for (int r = 0; r <= 6; ++r)
          if (!(c[r] == series[r][yang::yslot(i)][yang::yslot(j)])) series_ok = false;
      }
    out.push_back(check("configuration_" + std::to_string(cfg), rel.ok && commute && series_ok,
                        {{"factors", desc},
                         {"delta", io::rational_json(delta)},
                         {"dim", pencil.dim()},
                         {"relations", io::to_json(rel)},
                         {"bethe_commute", commute},
                         {"series_match", series_ok}}));
  }
  return out;
}

Report run(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  json body;
  body["command"] = c.subcommand.empty() ? c.command : c.command + " " + c.subcommand;
  body["config"] = config_json(c);
  body["seed"] = c.seed;
  json checks = json::array();

  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  if (c.format == "csv" && c.command != "flow") throw UsageError("csv output is only available for flow");
  if (c.jobs < 1) throw UsageError("--jobs must be positive");
  if (c.samples < 1) throw UsageError("--samples must be positive");

  if (c.command == "verify") {
    const std::string& s = c.subcommand;
    if (s == "lie") {
      require_rank(c.n, 1, kMaxSymbolicRank, "verify lie");
      checks = lie_checks(c.n, c.samples, c.seed);
    } else if (s == "poisson") {
      require_rank(c.n, 1, kMaxSymbolicRank, "verify poisson");
      checks = poisson_checks(c.n, c.mu, c.seed);
    } else if (s == "pfaffian") {
      require_rank(c.n, 1, kMaxSymbolicRank, "verify pfaffian");
      checks = pfaffian_checks(c.n, c.seed);
    } else if (s == "independence") {
      require_rank(c.n, 2, kMaxSymbolicRank, "verify independence");
      checks = independence_checks(c.n, c.seed);
    } else if (s == "poincare") {
      require_rank(c.n, 1, kMaxSymbolicRank, "verify poincare");
      if (c.maxdeg < 1) throw UsageError("--maxdeg must be positive");
      checks = poincare_checks(c.n, c.maxdeg);
      const auto r = poly::poincare_check(c.n, c.maxdeg);
      body["generator_degrees"] = r.generator_degrees;
    } else if (s == "envelope") {
      require_rank(c.n, 1, kMaxEnvelopeRank, "verify envelope");
      if (c.maxdeg < 1 || c.maxdeg > 6) throw UsageError("verify envelope: --maxdeg must be in 1..6");
      checks = envelope_checks(c.n, c.maxdeg);
    } else if (s == "yangian") {
      if (c.configs < 1) throw UsageError("--configs must be positive");
      checks = yangian_checks(c.configs, c.samples, c.seed);
    } else {
      throw UsageError("unknown verify suite '" + s + "'");
    }
  } else if (c.command == "patterns") {
    const auto w = dominant_weight_arg(c.weight, c.half, "--weight");
    const auto patterns = gt::enumerate_patterns(w);
    const Integer dim = gt::weyl_dim(w);
    json result{{"weight", io::to_json(w)}, {"count", patterns.size()}, {"weyl_dim", dim.get_str()}};
    checks.push_back(check("count_equals_dimension", Integer(static_cast<unsigned long>(patterns.size())) == dim));
    if (c.subcommand == "enumerate") {
      json list = json::array();
      bool valid = true;
      for (const auto& p : patterns) {
        list.push_back(io::to_json(p));
        if (!gt::validate_pattern(p).ok) valid = false;
      }
      result["patterns"] = list;
      checks.push_back(check("all_valid", valid));
    } else if (c.subcommand != "count") {
      throw UsageError("patterns: expected count or enumerate");
    }
    body["result"] = result;
  } else if (c.command == "branch") {
    const auto w = dominant_weight_arg(c.weight, c.half, "--weight");
    if (w.rank() < 2) throw UsageError("branch: rank must be at least 2");
    json terms = json::array();
    Integer total = 0;
    bool counts = true;
    for (const auto& t : gt::branch(w)) {
      const Integer dim = gt::weyl_dim(t.mu);
      total += t.multiplicity * dim;
      const auto p = gt::branching_params(w, t.mu);
      const auto rows = gt::primed_rows_between(w.entries, t.mu.entries);
      if (Integer(static_cast<unsigned long>(rows.size())) != t.multiplicity) counts = false;
      terms.push_back({{"mu", io::to_json(t.mu)}, {"multiplicity", t.multiplicity.get_str()}, {"dim", dim.get_str()}, {"params", io::to_json(p)}});
    }
    const Integer dim = gt::weyl_dim(w);
    checks.push_back(check("dimension_identity", total == dim, {{"sum", total.get_str()}, {"weyl_dim", dim.get_str()}}));
    checks.push_back(check("multiplicity_counts_primed_rows", counts));
    body["result"] = {{"weight", io::to_json(w)}, {"terms", terms}};
  } else if (c.command == "spectrum") {
    const auto w = dominant_weight_arg(c.weight, c.half, "--weight");
    const auto m = parse_weight_arg(c.mu, c.half, "--mu");
    if (m.rank() + 1 != w.rank()) throw UsageError("--mu must have rank one less than --weight");
    const auto params = gt::branching_params(w, m);
    if (!params.admissible()) throw UsageError("--mu does not occur in the restriction of --weight");
    const auto u = u_arg(c.u, params.alpha.size(), "--u");
    const int count = static_cast<int>(2 * params.alpha.size() + 2);
    const auto pencil = yang::multiplicity_pencil(params, u, c.t, count);
    const auto sp = yang::spectrum(pencil, c.seed);
    checks.push_back(check("simple_spectrum", sp.simple, {{"min_gap", sp.min_gap}}));
    if (c.exact) {
      const auto factors = yang::multiplicity_factors(params);
      std::vector<Rational> z;
      for (std::size_t i = 0; i < factors.size(); ++i) z.push_back(Rational(c.t) * Rational(u[i]));
      const auto exact = yang::bethe_operators<Rational>(factors, z, params.delta().value(), count, Rational(c.t));
      checks.push_back(check("bethe_commute_exact", yang::commutes_exactly(exact)));
    } else {
      const double defect = yang::commutator_defect(pencil);
      checks.push_back(check("bethe_commute_float", defect <= 1e-10, {{"defect", defect}}));
    }
    checks.push_back(check("dimension_matches_multiplicity",
                           Integer(static_cast<unsigned long>(pencil.dim())) == params.multiplicity()));
    body["result"] = {{"params", io::to_json(params)}, {"spectrum", io::to_json(sp)}, {"t", c.t}};
  } else if (c.command == "flow") {
    const auto w = dominant_weight_arg(c.weight, c.half, "--weight");
    const auto m = parse_weight_arg(c.mu, c.half, "--mu");
    if (m.rank() + 1 != w.rank()) throw UsageError("--mu must have rank one less than --weight");
    const auto params = gt::branching_params(w, m);
    if (!params.admissible()) throw UsageError("--mu does not occur in the restriction of --weight");
    const auto u = u_arg(c.u, params.alpha.size(), "--u");
    const auto f = yang::flow(w, m, u, schedule_of(c), c.seed);
    auto labels = f.labels;
    std::sort(labels.begin(), labels.end());
    checks.push_back(check("tracked", f.ok, {{"error", f.error}}));
    checks.push_back(check("labels_are_admissible_set", f.ok && labels == yang::admissible_labels(params)));
    body["result"] = io::to_json(f);
  } else if (c.command == "label") {
    const auto w = dominant_weight_arg(c.weight, c.half, "--weight");
    require_rank(w.rank(), 1, kMaxLabelingRank, "label");
    const auto u = u_arg(c.u, static_cast<std::size_t>(w.rank() - 1), "--u");
    const auto r = yang::full_labeling(w, u, schedule_of(c), c.seed, c.jobs);
    bool levels_ok = true;
    for (const auto& l : r.levels) levels_ok = levels_ok && l.labels_match;
    checks.push_back(check("bijection", r.bijection, {{"patterns", r.patterns.size()}, {"expected", r.expected}}));
    checks.push_back(check("level_labels", levels_ok && r.error.empty(), {{"error", r.error}}));
    checks.push_back(check("terminal_overlaps", r.min_terminal_overlap >= 0.99, {{"min", r.min_terminal_overlap}}));
    body["result"] = io::to_json(r);
  } else if (c.command == "paths") {
    const auto w = dominant_weight_arg(c.weight, c.half, "--weight");
    const auto m = parse_weight_arg(c.mu, c.half, "--mu");
    if (m.rank() + 1 != w.rank()) throw UsageError("--mu must have rank one less than --weight");
    const auto params = gt::branching_params(w, m);
    if (!params.admissible()) throw UsageError("--mu does not occur in the restriction of --weight");
    const auto ua = u_arg(c.u, params.alpha.size(), "--u");
    const auto ub = u_arg(c.u2, params.alpha.size(), "--u2");
    const auto pc = yang::path_independence_check(w, m, ua, ub, schedule_of(c), c.seed);
    checks.push_back(check("same_labels", pc.equal, {{"mismatches", pc.mismatches}}));
    body["result"] = {{"first", io::to_json(pc.first)}, {"second", io::to_json(pc.second)}};
  } else {
    throw UsageError("unknown command '" + c.command + "'");
  }

  body["checks"] = checks;
  body["pass"] = all_pass(checks);
  if (c.timing) body["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return Report{std::move(body)};
}

std::string render(const Report& report, const RunConfig& config) {
  if (config.command == "flow" && config.format == "csv") {
    yang::FlowResult f;
    const json& r = report.body.at("result");
    f.dimension = r.at("dimension").get<std::size_t>();
    f.grid = r.at("grid").get<std::vector<double>>();
    f.eigenvalues = r.at("eigenvalues").get<std::vector<std::vector<double>>>();
    return io::eigenvalue_csv(f);
  }
  return io::canonical_dump(report.body) + "\n";
}

void write_report(const Report& report, const RunConfig& config) {
  const std::string text = render(report, config);
  if (config.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(config.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + config.out + " for writing");
  os << text;
  if (!os) throw std::runtime_error("failed writing " + config.out);
}

}  // namespace bethegt::cli
