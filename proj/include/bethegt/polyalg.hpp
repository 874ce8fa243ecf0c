#pragma once

// S(o_2n) over Q: commutative polynomials in the canonical coordinates
// F_ij, the Lie-Poisson bracket, and the invariant families built from the
// F-matrix F^(k) = sum_{i,j=-k..k} F_ij (x) E_ij.
//
// Points of o_2n are identified with o_2n* coordinate-wise: the variable
// F_ij evaluated at a point X is the (i, j) entry of the matrix of X. This
// is the substitution "F = X" used when differentials are taken at a
// nilpotent element.

#include "bethegt/liealg.hpp"
#include "bethegt/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bethegt::poly {

/// Sorted multiset of variable indices.
using Monomial = std::vector<std::uint16_t>;

Monomial multiply(const Monomial& a, const Monomial& b);

class PolyQ {
 public:
  PolyQ() = default;
  static PolyQ constant(const Rational& c);
  static PolyQ variable(std::size_t index, const Rational& c = 1);
  /// The coordinate F_ij (signed canonical generator; zero for F_{i,-i}).
  static PolyQ coordinate(int i, int j);
  static PolyQ from_lie(const lie::LieElement& x);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  void add_term(const Monomial& m, const Rational& c);
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  PolyQ homogeneous_part(int d) const;
  /// One past the largest variable index used (0 for constants).
  std::size_t variable_bound() const;
  /// Smallest rank n whose algebra contains every variable.
  int min_rank() const;

  PolyQ derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  Rational coefficient(const Monomial& m) const;

  PolyQ& operator+=(const PolyQ& o);
  PolyQ& operator-=(const PolyQ& o);
  PolyQ& operator*=(const Rational& s);
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator-(PolyQ a) { return a *= Rational(-1); }
  friend PolyQ operator*(const Rational& s, PolyQ a) { return a *= s; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
};

/// Coordinates of a Lie element as a dense point, indexed by basis index.
std::vector<Rational> point_of(const lie::LieElement& x);

/// {F_a, g} for a basis generator F_a.
PolyQ bracket_with_generator(const lie::Algebra& alg, std::size_t a, const PolyQ& g);
/// Lie-Poisson bracket on S(o_2n). Throws if either argument uses variables
/// outside o_2n.
PolyQ poisson_bracket(const lie::Algebra& alg, const PolyQ& f, const PolyQ& g);
PolyQ poisson_bracket(const PolyQ& f, const PolyQ& g, int n);

/// Square matrix with polynomial entries.
class PolyMatrix {
 public:
  explicit PolyMatrix(std::size_t size) : size_(size), entries_(size * size) {}
  std::size_t size() const { return size_; }
  PolyQ& operator()(std::size_t r, std::size_t c) { return entries_[r * size_ + c]; }
  const PolyQ& operator()(std::size_t r, std::size_t c) const { return entries_[r * size_ + c]; }
  /// Entry at signed indices, for a matrix of size 2k.
  const PolyQ& at(int i, int j) const;

 private:
  std::size_t size_;
  std::vector<PolyQ> entries_;
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

/// F^(k): entry (i, j) is the coordinate F_ij.
PolyMatrix f_matrix(int k);
/// Skew image of F^(k) under F_ij -> M_{i,-j}: entry (a, b) is F_{a,-b}.
PolyMatrix skew_f_matrix(int k);

/// Pfaffian by expansion along the first row (memoized over index subsets).
/// Throws for odd size or a non-skew input.
PolyQ pfaffian(const PolyMatrix& m);

/// x_km = Tr (F^(k))^{2m}.
PolyQ trace_power(int k, int m, int n);
/// y_km = [(F^(k))^{2m-1}]_{kk}.
PolyQ corner_entry(int k, int m, int n);
/// p_k = +-pf of the skew image of F^(k), signed so that F_11 F_22 ... F_kk
/// has coefficient +1. p_k^2 = (-1)^k det F^(k).
PolyQ pfaffian_invariant(int k, int n);

/// d/ds f(x + s mu).
PolyQ directional_derivative(const PolyQ& f, const lie::LieElement& mu);

/// Free generators x_{n,1..n-1}, p_n of the invariants together with all
/// their mu-derivatives of order < degree. mu must be a diagonal Cartan
/// element.
std::vector<PolyQ> mf_generators(int n, const lie::LieElement& mu);

/// Gradient in canonical coordinates at a point.
struct Covector {
  std::map<std::size_t, Rational> coeffs;
  Rational operator[](std::size_t index) const;
  /// Coefficient of dF_ij (signed; zero for F_{i,-i}).
  Rational coord(int i, int j) const;
  bool is_zero() const { return coeffs.empty(); }
};

Covector differential(const PolyQ& f, const lie::LieElement& pt);
std::size_t jacobian_rank(std::span<const PolyQ> fs, const lie::LieElement& pt);

// Members of the family {x_km, y_km, p_k}.
enum class InvariantKind { trace_power, corner_entry, pfaffian };

struct FamilyMember {
  InvariantKind kind;
  int k = 0;
  int m = 0;  // unused for pfaffians
  int degree = 0;
  PolyQ poly;
  std::string name() const;
};

/// x_km, y_km (m = 1..k-1) and p_k at level k.
std::vector<FamilyMember> level_family(int k, int n);
/// Union of level_family(k, n) for k = 1..n; n^2 members.
std::vector<FamilyMember> invariant_family(int n);

// The order on U~ = {dF_ij : i = n..1, j = i..1,-1..-i, j != -i}:
// dF_ij > dF_i'j' iff i > i' or (i == i' and j < j'). Covector entries
// outside U~ sit below every element of U~.
bool in_u_tilde(lie::IndexPair p);
bool u_order_greater(lie::IndexPair a, lie::IndexPair b);
/// Highest U~ element with a nonzero coefficient.
std::optional<lie::IndexPair> leading_u_term(const Covector& c);

struct LeadingTermCheck {
  std::string name;
  lie::IndexPair expected;
  std::optional<lie::IndexPair> found;
  /// For the middle degree: required ratio coeff(dF_{n,1}) / coeff(dF_{n,-1}).
  std::optional<int> partner_ratio;
  bool ok = false;
};

/// Leading differentials at the principal nilpotent of the top-level family.
std::vector<LeadingTermCheck> verify_leading_terms(int n);

// Skew-symmetric matrix M with independent entries: one variable per slot
// pair a < b (slots ordered -k..-1, 1..k).
std::size_t skew_variable(std::size_t a, std::size_t b, int k);
PolyMatrix generic_skew_matrix(int k);
/// The skew element e~' with M_{i,-i-1} = 1 (i < k) and M_{-1,-2} = 1.
std::vector<Rational> skew_e_prime(int k);

struct PfaffianDifferentialCheck {
  bool ok = false;
  Rational factor;  // d pf = factor * (dM_{k,1} - dM_{k,-1})
  std::map<std::size_t, Rational> gradient;
};
PfaffianDifferentialCheck verify_pfaffian_differential(int k);

struct PoincareReport {
  int n = 0;
  int max_degree = 0;
  std::vector<int> generator_degrees;
  std::vector<Integer> limit_series;     // product formula of the limit algebra
  std::vector<Integer> family_series;    // free algebra on the family degrees
  std::vector<Integer> generic_series;   // shift-of-argument algebra for regular mu
  bool equal = false;
};

/// Expands (1 - x^d)^{-1} products up to max_degree and compares them.
PoincareReport poincare_check(int n, int max_degree);

}  // namespace bethegt::poly
