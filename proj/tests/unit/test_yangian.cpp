#include "bethegt/assignment.hpp"
#include "bethegt/yangian.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace bethegt;

namespace {

std::size_t slot(int i) { return i < 0 ? 0 : 1; }

// t_ab(u) on a tensor product, assembled from the single-factor formula by
// the coproduct t_ab = sum_c t_ac (x) t_cb.
yang::Block<Rational> t_at_point(const std::vector<yang::EvalModule>& fs, const std::vector<Rational>& z, const Rational& u) {
  yang::Block<Rational> acc;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) acc[slot(a)][slot(b)] = Matrix<Rational>::identity(1) * Rational(a == b ? 1 : 0);
  for (std::size_t f = 0; f < fs.size(); ++f) {
    yang::Block<Rational> single;
    for (int a : {-1, 1})
      for (int b : {-1, 1}) {
        auto m = fs[f].e[slot(a)][slot(b)] * (Rational(1) / (u - z[f]));
        if (a == b) m += Matrix<Rational>::identity(fs[f].dim);
        single[slot(a)][slot(b)] = m;
      }
    yang::Block<Rational> next;
    for (int a : {-1, 1})
      for (int b : {-1, 1}) {
        Matrix<Rational> sum(acc[0][0].rows() * fs[f].dim, acc[0][0].cols() * fs[f].dim);
        for (int c : {-1, 1}) sum += kron(acc[slot(a)][slot(c)], single[slot(c)][slot(b)]);
        next[slot(a)][slot(b)] = sum;
      }
    acc = next;
  }
  return acc;
}

Rational w_at(int a, const Rational& u, const Rational& delta) {
  const Rational num = a == 1 ? Rational(u + delta) : Rational(u - delta + 1);
  return num / (u + Rational(1, 2));
}

}  // namespace

TEST(EvaluationModules, GlTwoRelationsAndCasimir) {
  const std::vector<std::pair<Rational, Rational>> weights{{2, 0}, {Rational(1, 2), Rational(-3, 2)}, {Rational(5, 3), Rational(2, 3)}};
  for (const auto& [alpha, beta] : weights) {
    const auto m = yang::eval_module(alpha, beta);
    const std::size_t d = m.dim;
    EXPECT_EQ(Rational(static_cast<long>(d)), alpha - beta + 1);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int e = 0; e < 2; ++e) {
            Matrix<Rational> want(d, d);
            if (b == c) want += m.e[a][e];
            if (e == a) want -= m.e[c][b];
            EXPECT_EQ(commutator(m.e[a][b], m.e[c][e]), want);
          }
    const auto cas = m.e[0][0] * m.e[0][0] + m.e[1][1] * m.e[1][1] + m.e[0][1] * m.e[1][0] + m.e[1][0] * m.e[0][1];
    EXPECT_EQ(cas, Matrix<Rational>::identity(d) * (alpha * alpha + beta * beta + alpha - beta));
    EXPECT_EQ(m.e[0][0](0, 0), alpha);
    EXPECT_EQ(m.e[1][1](0, 0), beta);
  }
  EXPECT_THROW(yang::eval_module(0, 1), std::invalid_argument);
  EXPECT_THROW(yang::eval_module(Rational(1, 3), 0), std::invalid_argument);
}

TEST(TOperator, SingleFactorFormula) {
  const std::vector<yang::EvalModule> fs{yang::eval_module(1, -1)};
  const std::vector<Rational> z{0};
  const auto t = yang::t_operator<Rational>(fs, z);
  const Rational u(7, 3);
  EXPECT_EQ(t.at(-1, -1, u), Matrix<Rational>::identity(3) + fs[0].e[0][0] * (1 / u));
  EXPECT_EQ(t.at(1, -1, u), fs[0].e[1][0] * (1 / u));
  EXPECT_THROW(t.at(1, 1, Rational(0)), yang::PoleError);
}

TEST(TOperator, CoproductOnTensorProducts) {
  const std::vector<yang::EvalModule> fs{yang::eval_module(Rational(1, 2), Rational(-1, 2)), yang::eval_module(1, -1)};
  const std::vector<Rational> z{Rational(1, 3), Rational(-2, 5)};
  const auto t = yang::t_operator<Rational>(fs, z);
  for (const Rational& u : {Rational(5, 2), Rational(-7, 3), Rational(11, 4)}) {
    const auto want = t_at_point(fs, z, u);
    for (int a : {-1, 1})
      for (int b : {-1, 1}) EXPECT_EQ(t.at(a, b, u), want[slot(a)][slot(b)]);
  }
  const auto series = yang::t_series<Rational>(fs, z, 5);
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      const auto c = t.laurent(a, b, 5);
      for (int r = 0; r <= 5; ++r) EXPECT_EQ(c[r], series[r][slot(a)][slot(b)]);
    }
}

TEST(SOperator, MatchesDefinitionAtPoints) {
  const std::vector<yang::EvalModule> fs{yang::eval_module(Rational(3, 2), Rational(-1, 2)), yang::eval_module(0, 0)};
  const std::vector<Rational> z{Rational(1, 4), Rational(3, 2)};
  const Rational delta(2, 3);
  const auto s = yang::s_operator<Rational>(fs, z, delta);
  for (const Rational& u : {Rational(9, 4), Rational(-13, 5)}) {
    const auto plus = t_at_point(fs, z, u), minus = t_at_point(fs, z, -u);
    for (int i : {-1, 1})
      for (int j : {-1, 1}) {
        Matrix<Rational> want(plus[0][0].rows(), plus[0][0].cols());
        for (int a : {-1, 1}) want += plus[slot(i)][slot(a)] * minus[slot(-j)][slot(-a)] * w_at(a, u, delta);
        EXPECT_EQ(s.at(i, j, u), want);
      }
  }
}

TEST(SOperator, OneDimensionalModule) {
  const std::vector<yang::EvalModule> none;
  const std::vector<Rational> noz;
  for (const Rational& delta : {Rational(0), Rational(1, 2), Rational(-7, 3)}) {
    const auto s = yang::s_operator<Rational>(none, noz, delta);
    const auto c = s.laurent(1, 1, 2);
    EXPECT_EQ(c[0](0, 0), 1);
    EXPECT_EQ(c[1](0, 0), delta - Rational(1, 2));
    EXPECT_EQ(c[2](0, 0), Rational(1, 4) - delta / 2);
    EXPECT_TRUE(s.at(1, -1, Rational(3)).is_zero());
    EXPECT_EQ(s.at(-1, -1, Rational(3))(0, 0), (Rational(4) - delta) / Rational(7, 2));
  }
}

TEST(Relations, HoldOnProductModules) {
  const std::vector<yang::EvalModule> fs{yang::eval_module(Rational(1, 2), Rational(-1, 2)), yang::eval_module(Rational(1, 3), Rational(-2, 3))};
  const std::vector<Rational> z{Rational(2, 7), Rational(-5, 3)};
  const auto r = yang::verify_relations(fs, z, Rational(4, 5), 10, 3);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.samples, 10);
  EXPECT_GT(r.quaternary_checks, 0u);
  EXPECT_GT(r.symmetry_checks, 0u);
  const auto w = yang::verify_relations({}, {}, Rational(-1, 3), 10, 4);
  EXPECT_TRUE(w.ok);
}

TEST(BetheOperators, CommuteExactly) {
  const std::vector<yang::EvalModule> fs{yang::eval_module(1, -1), yang::eval_module(Rational(1, 2), Rational(-1, 2))};
  const std::vector<Rational> z{Rational(1, 3), Rational(2)};
  const auto p = yang::bethe_operators<Rational>(fs, z, Rational(3, 2), 4);
  EXPECT_EQ(p.generators.size(), 4u);
  EXPECT_EQ(p.dim(), 6u);
  EXPECT_TRUE(yang::commutes_exactly(p));
  const auto w = yang::bethe_operators<Rational>({}, {}, Rational(3, 2), 1);
  EXPECT_EQ(w.generators[0](0, 0), 1);
  const std::vector<double> zd{1.0 / 3.0, 2.0};
  const auto pd = yang::bethe_operators<double>(fs, zd, 1.5, 4);
  EXPECT_LT(yang::commutator_defect(pd), 1e-10);
  EXPECT_THROW(yang::bethe_operators<Rational>(fs, z, Rational(0), 0), std::invalid_argument);
}

TEST(Assignment, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> w(-1, 1);
  for (int s = 0; s < 20; ++s) {
    const std::size_t n = 5;
    std::vector<std::vector<double>> table(n, std::vector<double>(n));
    for (auto& row : table)
      for (auto& x : row) x = w(rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1e9;
    do {
      double v = 0;
      for (std::size_t r = 0; r < n; ++r) v += table[r][perm[r]];
      best = std::max(best, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto got = max_weight_assignment(table);
    double v = 0;
    for (std::size_t r = 0; r < n; ++r) v += table[r][got[r]];
    EXPECT_NEAR(v, best, 1e-12);
    EXPECT_EQ(std::set<std::size_t>(got.begin(), got.end()).size(), n);
  }
}

TEST(Spectrum, SimpleAtRepresentationPoint) {
  for (const auto& lambda : gt::dominant_weights(2, 2))
    for (const auto& term : gt::branch(lambda)) {
      const auto params = gt::branching_params(lambda, term.mu);
      const std::vector<double> u{0.3};
      const auto pencil = yang::multiplicity_pencil(params, u, 0.0, 4);
      EXPECT_EQ(Integer(pencil.dim()), term.multiplicity);
      const auto s = yang::spectrum(pencil, 1);
      EXPECT_TRUE(s.simple) << lambda.to_string() << " / " << term.mu.to_string();
      EXPECT_EQ(s.lines.size(), pencil.dim());
    }
}

TEST(Flow, LabelsAreTheAdmissibleRows) {
  const auto lambda = gt::parse_weight("0,-2,-2");
  const yang::FlowSchedule schedule;
  const std::vector<double> u{0.3, 1.0};
  for (const auto& term : gt::branch(lambda)) {
    const auto f = yang::flow(lambda, term.mu, u, schedule, 1);
    ASSERT_TRUE(f.ok) << f.error;
    auto want = yang::admissible_labels(f.params);
    auto got = f.labels;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    for (double o : f.terminal_overlaps) EXPECT_GE(o, 0.99);
  }
}

TEST(Flow, FullLabelingIsABijection) {
  const yang::FlowSchedule schedule;
  const std::vector<double> u{0.3, 1.0};
  for (const char* text : {"0,-1", "-1/2,-1/2,-1/2", "0,-1,-1"}) {
    const auto lambda = gt::parse_weight(text);
    const auto r = yang::full_labeling(lambda, u, schedule, 1, 2);
    EXPECT_TRUE(r.ok()) << text << " " << r.error;
    EXPECT_EQ(r.patterns, gt::enumerate_patterns(lambda));
    for (const auto& level : r.levels) EXPECT_TRUE(level.labels_match);
  }
}

TEST(Flow, PathIndependence) {
  const yang::FlowSchedule schedule;
  const std::vector<double> ua{0.3}, ub{-0.45};
  const auto lambda = gt::parse_weight("0,-2");
  for (const auto& term : gt::branch(lambda)) {
    const auto r = yang::path_independence_check(lambda, term.mu, ua, ub, schedule, 1);
    EXPECT_TRUE(r.equal) << term.mu.to_string();
  }
}

TEST(Flow, RejectsBadDirections) {
  const std::vector<double> unsorted{1.0, 0.5}, mirrored{-1.0, 1.0}, ok{0.3, 1.0};
  EXPECT_THROW(yang::check_u_vector(unsorted, 2), std::invalid_argument);
  EXPECT_THROW(yang::check_u_vector(mirrored, 2), std::invalid_argument);
  EXPECT_THROW(yang::check_u_vector(ok, 3), std::invalid_argument);
  EXPECT_NO_THROW(yang::check_u_vector(ok, 2));
  const auto lambda = gt::parse_weight("0,-1");
  EXPECT_THROW(yang::flow(lambda, gt::parse_weight("-2"), ok, yang::FlowSchedule{}, 1), std::invalid_argument);
}
