#pragma once

// o_2n in its defining realization F_ij = E_ij - E_{-j,-i}, i, j in
// {-n..-1, 1..n}.
//
// Basis convention. F_ij = -F_{-j,-i} and F_{i,-i} = 0, so every nonzero
// F_ij is +-1 times exactly one canonical generator. A pair (i, j) is
// canonical iff |i| > |j|, or i == j > 0. The canonical pairs are listed
// grouped by a = max(|i|, |j|) ascending:
//
//   F_aa, then for b = 1..a-1:  F_{a,b}, F_{a,-b}, F_{-a,b}, F_{-a,-b}
//
// so the basis of o_2k is a prefix of the basis of o_2n for k <= n and a
// basis index means the same generator at every rank.

#include "bethegt/matrix.hpp"
#include "bethegt/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bethegt::lie {

/// Nonzero index in {-n..-1, 1..n}.
class SignedIndex {
 public:
  SignedIndex(int value, int n);
  int value() const { return value_; }

 private:
  int value_;
};

struct IndexPair {
  int i = 0;
  int j = 0;
  auto operator<=>(const IndexPair&) const = default;
};

bool is_canonical(IndexPair p);

/// F_ij expressed through its canonical generator: F_ij = sign * F_pair.
/// sign == 0 for the vanishing F_{i,-i}.
struct Canonical {
  int sign = 0;
  IndexPair pair;
};
Canonical canonicalize(int i, int j);

/// Position of a canonical pair in the rank-independent basis order.
std::size_t basis_index(IndexPair canonical);
/// Inverse of basis_index.
IndexPair basis_pair(std::size_t index);
/// n(2n-1).
std::size_t algebra_dim(int n);

/// Row/column of a signed index inside a 2n x 2n matrix (-n..-1,1..n order).
std::size_t matrix_slot(int i, int n);
int slot_index(std::size_t slot, int n);

struct StructureTerm {
  std::size_t index;
  int coeff;
};

/// Basis list and structure constants of o_2n.
class Algebra {
 public:
  explicit Algebra(int n);

  int rank() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<IndexPair>& basis() const { return basis_; }

  /// [F_a, F_b] for basis indices a, b, as a sparse combination of basis
  /// elements. Computed from
  ///   [F_ij, F_kl] = d_jk F_il - d_li F_kj - d_{j,-l} F_{i,-k} + d_{i,-k} F_{-l,j}.
  const std::vector<StructureTerm>& bracket(std::size_t a, std::size_t b) const {
    return table_[a * basis_.size() + b];
  }

 private:
  int n_;
  std::vector<IndexPair> basis_;
  std::vector<std::vector<StructureTerm>> table_;
};

/// Sparse element of o_2n in canonical coordinates.
class LieElement {
 public:
  explicit LieElement(int n) : n_(n) {}

  /// The generator F_ij (possibly zero or a negative canonical generator).
  static LieElement generator(int i, int j, int n);
  static LieElement from_matrix(const Matrix<Rational>& m, int n);

  int rank() const { return n_; }
  const std::map<std::size_t, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t index) const;
  /// Coordinate of F_ij, i.e. the (i, j) entry of the matrix.
  Rational coord(int i, int j) const;

  void add(std::size_t index, const Rational& c);
  bool is_zero() const { return coeffs_.empty(); }

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& s);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& s, LieElement a) { return a *= s; }
  friend bool operator==(const LieElement& a, const LieElement& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int n_;
  std::map<std::size_t, Rational> coeffs_;
};

Algebra make_algebra(int n);

/// 2n x 2n matrix of x with rows/columns ordered -n..-1, 1..n.
Matrix<Rational> matrix_of(const LieElement& x);

/// Bracket through the structure constants.
LieElement bracket(const Algebra& alg, const LieElement& a, const LieElement& b);
LieElement bracket(const LieElement& a, const LieElement& b);

/// sum_{i<n} F_{i,i+1} + F_{-1,2}.
LieElement principal_nilpotent(int n);

/// F_nn + eps F_{n-1,n-1} + ... + eps^{n-1} F_11.
LieElement mu_of_epsilon(int n, const Rational& eps);

/// Matrix of ad(x) on the basis.
Matrix<Rational> ad_matrix(const Algebra& alg, const LieElement& x);
std::size_t centralizer_dim(const LieElement& x);

std::string pair_name(IndexPair p);

}  // namespace bethegt::lie
