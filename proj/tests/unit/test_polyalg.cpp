#include "bethegt/polyalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace bethegt;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

lie::LieElement random_element(int n, std::mt19937_64& rng) {
  lie::LieElement x(n);
  for (std::size_t a = 0; a < lie::algebra_dim(n); ++a) x.add(a, random_rational(rng));
  return x;
}

// Sum over S_2k with the 1 / (2^k k!) normalization.
Rational pfaffian_by_permutations(const Matrix<Rational>& m) {
  const std::size_t size = m.rows();
  std::vector<std::size_t> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = a + 1; b < size; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Rational term = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t a = 0; a < size; a += 2) term *= m(perm[a], perm[a + 1]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  Rational norm = 1;
  for (std::size_t i = 1; i <= size / 2; ++i) norm *= 2 * static_cast<long>(i);
  return total / norm;
}

// Rows/columns -k..k of the matrix of x.
Matrix<Rational> leading_block(const lie::LieElement& x, int k) {
  const int n = x.rank();
  const auto full = lie::matrix_of(x);
  const std::size_t size = 2 * static_cast<std::size_t>(k);
  Matrix<Rational> sub(size, size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      const int i = a < static_cast<std::size_t>(k) ? static_cast<int>(a) - k : static_cast<int>(a) - k + 1;
      const int j = b < static_cast<std::size_t>(k) ? static_cast<int>(b) - k : static_cast<int>(b) - k + 1;
      sub(a, b) = full(static_cast<std::size_t>(i < 0 ? i + n : i + n - 1), static_cast<std::size_t>(j < 0 ? j + n : j + n - 1));
    }
  return sub;
}

Matrix<Rational> power(const Matrix<Rational>& m, int e) {
  auto r = Matrix<Rational>::identity(m.rows());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

// Number of monomials of each degree in free commuting generators, by
// enumerating exponent vectors.
std::vector<long> count_monomials(const std::vector<int>& degrees, int max_degree) {
  std::vector<long> counts(static_cast<std::size_t>(max_degree) + 1, 0);
  std::vector<int> exps(degrees.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == degrees.size()) {
      ++counts[static_cast<std::size_t>(used)];
      return;
    }
    for (int e = 0; used + e * degrees[i] <= max_degree; ++e) self(self, i + 1, used + e * degrees[i]);
  };
  rec(rec, 0, 0);
  return counts;
}

}  // namespace

TEST(Polynomials, ArithmeticAndEvaluation) {
  const auto a = poly::PolyQ::variable(0), b = poly::PolyQ::variable(1);
  const auto f = (a + b) * (a - b);
  EXPECT_EQ(f, a * a - b * b);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_TRUE(f.is_homogeneous());
  const std::vector<Rational> pt{Rational(3), Rational(1, 2)};
  EXPECT_EQ(f.evaluate(pt), Rational(35, 4));
  EXPECT_EQ(f.derivative(0), Rational(2) * a);
  EXPECT_EQ(poly::PolyQ().degree(), -1);
  EXPECT_TRUE((f - f).is_zero());
}

TEST(Polynomials, CoordinateSigns) {
  EXPECT_EQ(poly::PolyQ::coordinate(-1, -1), -poly::PolyQ::coordinate(1, 1));
  EXPECT_TRUE(poly::PolyQ::coordinate(2, -2).is_zero());
  EXPECT_EQ(poly::PolyQ::coordinate(1, 2), -poly::PolyQ::coordinate(-2, -1));
}

TEST(PoissonBracket, LinearPolynomialsFollowTheLieBracket) {
  std::mt19937_64 rng(5);
  const int n = 3;
  const lie::Algebra alg(n);
  for (int s = 0; s < 20; ++s) {
    const auto x = random_element(n, rng), y = random_element(n, rng);
    const auto fx = poly::PolyQ::from_lie(x), fy = poly::PolyQ::from_lie(y);
    const auto want = poly::PolyQ::from_lie(lie::LieElement::from_matrix(commutator(lie::matrix_of(x), lie::matrix_of(y)), n));
    EXPECT_EQ(poly::poisson_bracket(alg, fx, fy), want);
  }
}

TEST(PoissonBracket, LeibnizAndJacobi) {
  std::mt19937_64 rng(9);
  const int n = 2;
  const lie::Algebra alg(n);
  auto random_poly = [&] {
    poly::PolyQ p;
    for (int t = 0; t < 3; ++t) {
      std::uniform_int_distribution<std::size_t> var(0, alg.dim() - 1);
      p += poly::PolyQ::variable(var(rng), random_rational(rng)) * poly::PolyQ::variable(var(rng));
    }
    return p;
  };
  for (int s = 0; s < 10; ++s) {
    const auto f = random_poly(), g = random_poly(), h = random_poly();
    EXPECT_EQ(poly::poisson_bracket(alg, f, g * h),
              poly::poisson_bracket(alg, f, g) * h + g * poly::poisson_bracket(alg, f, h));
    const auto j = poly::poisson_bracket(alg, poly::poisson_bracket(alg, f, g), h) +
                   poly::poisson_bracket(alg, poly::poisson_bracket(alg, g, h), f) +
                   poly::poisson_bracket(alg, poly::poisson_bracket(alg, h, f), g);
    EXPECT_TRUE(j.is_zero());
    EXPECT_EQ(poly::poisson_bracket(alg, f, g), -poly::poisson_bracket(alg, g, f));
  }
}

TEST(PoissonBracket, RejectsForeignVariables) {
  const lie::Algebra alg(1);
  EXPECT_THROW(poly::poisson_bracket(alg, poly::PolyQ::coordinate(2, 1), poly::PolyQ::coordinate(1, 1)), std::invalid_argument);
}

TEST(Pfaffian, SmallCases) {
  poly::PolyMatrix m(2);
  m(0, 1) = poly::PolyQ::variable(0);
  m(1, 0) = -poly::PolyQ::variable(0);
  EXPECT_EQ(poly::pfaffian(m), poly::PolyQ::variable(0));

  poly::PolyMatrix odd(3);
  EXPECT_THROW(poly::pfaffian(odd), std::invalid_argument);
  poly::PolyMatrix bad(2);
  bad(0, 1) = poly::PolyQ::variable(0);
  EXPECT_THROW(poly::pfaffian(bad), std::invalid_argument);
}

TEST(Pfaffian, MatchesPermutationSum) {
  std::mt19937_64 rng(13);
  for (int k = 1; k <= 3; ++k) {
    const auto pf = poly::pfaffian(poly::generic_skew_matrix(k));
    const std::size_t size = 2 * static_cast<std::size_t>(k);
    for (int s = 0; s < 4; ++s) {
      Matrix<Rational> m(size, size);
      std::vector<Rational> point(size * (size - 1) / 2);
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = a + 1; b < size; ++b) {
          const Rational v = random_rational(rng);
          m(a, b) = v;
          m(b, a) = -v;
          point[poly::skew_variable(a, b, k)] = v;
        }
      const Rational want = pfaffian_by_permutations(m);
      EXPECT_EQ(pf.evaluate(point), want);
      EXPECT_EQ(want * want, determinant(m));
    }
  }
}

TEST(Invariants, LowDegreeForms) {
  const auto f11 = poly::PolyQ::coordinate(1, 1);
  EXPECT_EQ(poly::trace_power(1, 1, 2), Rational(2) * f11 * f11);
  EXPECT_EQ(poly::corner_entry(1, 1, 2), f11);
  EXPECT_EQ(poly::corner_entry(2, 1, 2), poly::PolyQ::coordinate(2, 2));
  EXPECT_EQ(poly::pfaffian_invariant(1, 2), f11);
  EXPECT_EQ(poly::corner_entry(2, 2, 2).degree(), 3);
  EXPECT_THROW(poly::trace_power(3, 1, 2), std::out_of_range);
}

TEST(Invariants, AgreeWithMatrixPowersAtRandomPoints) {
  std::mt19937_64 rng(17);
  const int n = 3;
  for (int s = 0; s < 5; ++s) {
    const auto x = random_element(n, rng);
    const auto pt = poly::point_of(x);
    for (int k = 1; k <= n; ++k) {
      const auto block = leading_block(x, k);
      for (int m = 1; m <= 2; ++m) {
        const auto p2 = power(block, 2 * m);
        Rational tr = 0;
        for (std::size_t i = 0; i < block.rows(); ++i) tr += p2(i, i);
        EXPECT_EQ(poly::trace_power(k, m, n).evaluate(pt), tr);
        const auto p1 = power(block, 2 * m - 1);
        EXPECT_EQ(poly::corner_entry(k, m, n).evaluate(pt), p1(block.rows() - 1, block.rows() - 1));
      }
      const Rational p = poly::pfaffian_invariant(k, n).evaluate(pt);
      const Rational det = determinant(block);
      EXPECT_EQ(p * p, k % 2 == 0 ? det : -det) << "k=" << k;
    }
  }
}

TEST(Invariants, TraceAndPfaffianAreInvariantAtTheirLevel) {
  const int n = 3;
  const lie::Algebra alg(n);
  for (int k = 1; k <= n; ++k) {
    std::vector<poly::PolyQ> polys{poly::trace_power(k, 1, n), poly::pfaffian_invariant(k, n)};
    for (const auto& f : polys)
      for (std::size_t g = 0; g < lie::algebra_dim(k); ++g) EXPECT_TRUE(poly::bracket_with_generator(alg, g, f).is_zero());
  }
  // F_{2,1} is outside o_2 and moves x_11.
  EXPECT_FALSE(poly::bracket_with_generator(alg, lie::basis_index({2, 1}), poly::trace_power(1, 1, n)).is_zero());
}

TEST(Invariants, FamilyPoissonCommutesForSmallRank) {
  for (int n = 2; n <= 3; ++n) {
    const lie::Algebra alg(n);
    const auto family = poly::invariant_family(n);
    ASSERT_EQ(family.size(), static_cast<std::size_t>(n * n));
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = a + 1; b < family.size(); ++b)
        EXPECT_TRUE(poly::poisson_bracket(alg, family[a].poly, family[b].poly).is_zero())
            << family[a].name() << " " << family[b].name();
  }
}

TEST(Invariants, ShiftOfArgumentFamilyCommutes) {
  const int n = 2;
  const lie::Algebra alg(n);
  const auto mu = lie::mu_of_epsilon(n, Rational(1, 3));
  const auto mf = poly::mf_generators(n, mu);
  EXPECT_EQ(mf.size(), 4u);
  for (std::size_t a = 0; a < mf.size(); ++a)
    for (std::size_t b = a + 1; b < mf.size(); ++b) EXPECT_TRUE(poly::poisson_bracket(alg, mf[a], mf[b]).is_zero());
  EXPECT_THROW(poly::mf_generators(n, lie::LieElement::generator(1, 2, n)), std::invalid_argument);
}

TEST(Differentials, PfaffianAtSkewPrincipalElement) {
  for (int k = 2; k <= 4; ++k) {
    const auto c = poly::verify_pfaffian_differential(k);
    EXPECT_TRUE(c.ok) << "k=" << k;
    EXPECT_NE(sgn(c.factor), 0);
  }
}

TEST(Differentials, LeadingTermsAtPrincipalNilpotent) {
  for (int n = 2; n <= 4; ++n) {
    const auto table = poly::verify_leading_terms(n);
    EXPECT_EQ(table.size(), static_cast<std::size_t>(2 * n - 1));
    for (const auto& row : table) EXPECT_TRUE(row.ok) << "n=" << n << " " << row.name;
  }
}

TEST(Differentials, UOrder) {
  EXPECT_TRUE(poly::in_u_tilde({2, -1}));
  EXPECT_FALSE(poly::in_u_tilde({2, -2}));
  EXPECT_FALSE(poly::in_u_tilde({-2, 1}));
  EXPECT_TRUE(poly::u_order_greater({2, 2}, {1, 1}));
  EXPECT_TRUE(poly::u_order_greater({2, -1}, {2, 1}));
}

TEST(Differentials, JacobianRanks) {
  const std::vector<poly::PolyQ> dependent{poly::PolyQ::coordinate(1, 1),
                                           poly::PolyQ::coordinate(1, 1) * poly::PolyQ::coordinate(1, 1)};
  EXPECT_EQ(poly::jacobian_rank(dependent, lie::LieElement::generator(1, 1, 1)), 1u);
  for (int n = 2; n <= 3; ++n) {
    std::vector<poly::PolyQ> polys;
    for (const auto& f : poly::invariant_family(n)) polys.push_back(f.poly);
    EXPECT_EQ(poly::jacobian_rank(polys, lie::principal_nilpotent(n)), static_cast<std::size_t>(n * n));
  }
}

TEST(Poincare, SeriesAgreeWithMonomialCounts) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = poly::poincare_check(n, 8);
    EXPECT_TRUE(r.equal) << "n=" << n;
    std::vector<int> degrees;
    for (int d = 2; d <= 2 * n - 2; d += 2)
      for (int e = 1; e <= d; ++e) degrees.push_back(e);
    for (int e = 1; e <= n; ++e) degrees.push_back(e);
    const auto counts = count_monomials(degrees, 8);
    for (std::size_t d = 0; d <= 8; ++d) EXPECT_EQ(r.family_series[d], counts[d]) << "n=" << n << " degree " << d;
  }
  EXPECT_EQ(poly::poincare_check(2, 4).generator_degrees, (std::vector<int>{1, 1, 2, 2}));
}
