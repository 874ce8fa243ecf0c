#include "bethegt/envelope.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bethegt;

namespace {

env::PBWElement mono(std::initializer_list<std::uint16_t> letters, const Rational& c = 1) {
  env::PBWElement e;
  e.add_term(poly::Monomial(letters), c);
  return e;
}

// Image of a basis generator in V (x) V, V the defining representation.
Matrix<Rational> tensor_image(std::size_t index, int n) {
  lie::LieElement x(n);
  x.add(index, 1);
  const auto m = lie::matrix_of(x);
  const auto id = Matrix<Rational>::identity(m.rows());
  return kron(m, id) + kron(id, m);
}

Matrix<Rational> represent(const env::PBWElement& a, int n) {
  const std::size_t side = 4 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  Matrix<Rational> out(side, side);
  for (const auto& [m, c] : a.terms()) {
    auto p = Matrix<Rational>::identity(side);
    for (auto g : m) p = p * tensor_image(g, n);
    out += c * p;
  }
  return out;
}

env::PBWElement random_word_element(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> gen(0, lie::algebra_dim(n) - 1);
  std::uniform_int_distribution<int> len(1, 3), coeff(-3, 3);
  env::Envelope U(n);
  env::PBWElement out;
  for (int t = 0; t < 2; ++t) {
    std::vector<std::size_t> word(static_cast<std::size_t>(len(rng)));
    for (auto& w : word) w = gen(rng);
    out += Rational(coeff(rng)) * U.normal_form(word);
  }
  return out;
}

}  // namespace

TEST(Envelope, OrderedWordsAreAlreadyNormal) {
  env::Envelope U(2);
  const std::vector<std::size_t> word{0, 1, 1, 4};
  EXPECT_EQ(U.normal_form(word), mono({0, 1, 1, 4}));
}

TEST(Envelope, SwapProducesCommutator) {
  env::Envelope U(2);
  // F_21 F_22 = F_22 F_21 - F_21.
  const std::vector<std::size_t> word{lie::basis_index({2, 1}), lie::basis_index({2, 2})};
  EXPECT_EQ(U.normal_form(word), mono({1, 2}) - mono({2}));
  EXPECT_EQ(U.commutator(U.generator(2, 2), U.generator(2, 1)), U.generator(2, 1));
  EXPECT_EQ(U.generator(-2, -1), Rational(-1) * U.generator(1, 2));
}

TEST(Envelope, NormalFormIsAnAlgebraMap) {
  std::mt19937_64 rng(21);
  const int n = 2;
  env::Envelope U(n);
  std::uniform_int_distribution<std::size_t> gen(0, lie::algebra_dim(n) - 1);
  for (int s = 0; s < 30; ++s) {
    std::vector<std::size_t> word(4);
    auto prod = Matrix<Rational>::identity(16);
    for (auto& w : word) {
      w = gen(rng);
      prod = prod * tensor_image(w, n);
    }
    EXPECT_EQ(represent(U.normal_form(word), n), prod);
  }
}

TEST(Envelope, MultiplicationIsAssociative) {
  std::mt19937_64 rng(23);
  env::Envelope U(2);
  for (int s = 0; s < 100; ++s) {
    const auto a = random_word_element(2, rng), b = random_word_element(2, rng), c = random_word_element(2, rng);
    EXPECT_EQ(U.multiply(U.multiply(a, b), c), U.multiply(a, U.multiply(b, c)));
  }
}

TEST(Envelope, GelfandInvariants) {
  env::Envelope U(3);
  const auto g11 = U.gelfand_invariant(1, 1);
  EXPECT_EQ(g11, mono({0, 0}, 2));
  for (int k = 1; k <= 3; ++k) {
    const auto g = U.gelfand_invariant(k, 1);
    EXPECT_EQ(env::symbol(g), poly::trace_power(k, 1, 3));
    for (std::size_t a = 0; a < lie::algebra_dim(k); ++a) EXPECT_TRUE(U.commutator(g, U.generator(a)).is_zero());
  }
  EXPECT_TRUE(U.commutator(U.gelfand_invariant(2, 1), U.gelfand_invariant(3, 1)).is_zero());
  EXPECT_FALSE(U.commutator(U.gelfand_invariant(1, 1), U.generator(lie::basis_index({2, 1}))).is_zero());
  EXPECT_THROW(U.gelfand_invariant(4, 1), std::out_of_range);
}

TEST(Envelope, CasimirActsByScalarOnDefiningRepresentation) {
  const int n = 2;
  env::Envelope U(n);
  const auto c = U.gelfand_invariant(n, 1);
  Matrix<Rational> image(4, 4);
  for (const auto& [m, coeff] : c.terms()) {
    auto p = Matrix<Rational>::identity(4);
    for (auto g : m) {
      lie::LieElement x(n);
      x.add(g, 1);
      p = p * lie::matrix_of(x);
    }
    image += coeff * p;
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(image(i, j), i == j ? image(0, 0) : Rational(0));
  EXPECT_NE(sgn(image(0, 0)), 0);
}

TEST(Envelope, Symmetrization) {
  env::Envelope U(2);
  const auto f11 = poly::PolyQ::coordinate(1, 1), f22 = poly::PolyQ::coordinate(2, 2), f21 = poly::PolyQ::coordinate(2, 1);
  EXPECT_EQ(U.symmetrize(f11 * f22), U.multiply(U.generator(1, 1), U.generator(2, 2)));
  const auto half = Rational(1, 2);
  EXPECT_EQ(U.symmetrize(f22 * f21),
            half * (U.multiply(U.generator(2, 2), U.generator(2, 1)) + U.multiply(U.generator(2, 1), U.generator(2, 2))));
  EXPECT_EQ(U.symmetrize(f11 + f22), U.generator(1, 1) + U.generator(2, 2));
  for (int k = 1; k <= 2; ++k) {
    const auto p = poly::pfaffian_invariant(k, 2);
    const auto s = U.symmetrize(p);
    EXPECT_EQ(env::symbol(s), p);
    for (std::size_t a = 0; a < lie::algebra_dim(k); ++a) EXPECT_TRUE(U.commutator(s, U.generator(a)).is_zero());
  }
  EXPECT_THROW(U.symmetrize(poly::PolyQ::coordinate(3, 1)), std::invalid_argument);
}

TEST(Envelope, CommutatorSymbolIsPoissonBracket) {
  std::mt19937_64 rng(29);
  const int n = 2;
  env::Envelope U(n);
  const lie::Algebra alg(n);
  std::uniform_int_distribution<std::size_t> var(0, alg.dim() - 1);
  for (int s = 0; s < 15; ++s) {
    const auto f = poly::PolyQ::variable(var(rng)) * poly::PolyQ::variable(var(rng));
    const auto g = poly::PolyQ::variable(var(rng)) * poly::PolyQ::variable(var(rng)) * poly::PolyQ::variable(var(rng));
    const auto c = U.commutator(U.symmetrize(f), U.symmetrize(g));
    const auto bracket = poly::poisson_bracket(alg, f, g);
    poly::PolyQ top;
    for (const auto& [m, coeff] : c.terms())
      if (static_cast<int>(m.size()) == 4) top.add_term(m, coeff);
    EXPECT_EQ(top, bracket);
  }
}

TEST(Envelope, RejectsForeignElements) {
  env::Envelope U(1);
  EXPECT_THROW(U.generator(1), std::out_of_range);
  EXPECT_THROW(U.multiply(mono({3}), mono({0})), std::invalid_argument);
}
