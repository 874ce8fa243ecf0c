#pragma once

// U(o_2n) in the PBW basis of the canonical generators, ordered by basis
// index. Products are normal-ordered by moving generators left past larger
// ones: ...a g... = ...g a... + ...[a,g]... for a > g.

#include "bethegt/liealg.hpp"
#include "bethegt/polyalg.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bethegt::env {

using poly::Monomial;

/// Linear combination of nondecreasing PBW monomials.
class PBWElement {
 public:
  PBWElement() = default;
  static PBWElement scalar(const Rational& c);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  void add_term(const Monomial& m, const Rational& c);
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  PBWElement& operator+=(const PBWElement& o);
  PBWElement& operator-=(const PBWElement& o);
  PBWElement& operator*=(const Rational& s);
  friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
  friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
  friend PBWElement operator*(const Rational& s, PBWElement a) { return a *= s; }
  friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
};

/// Top-degree component read as a commutative polynomial.
poly::PolyQ symbol(const PBWElement& a);

/// Normal-ordering engine for one rank. Caches monomial-times-generator
/// products, so an instance is not safe to share between threads.
class Envelope {
 public:
  explicit Envelope(int n);

  int rank() const { return alg_.rank(); }
  const lie::Algebra& algebra() const { return alg_; }

  PBWElement generator(std::size_t index) const;
  /// The signed generator F_ij.
  PBWElement generator(int i, int j) const;

  PBWElement normal_form(std::span<const std::size_t> word);
  PBWElement multiply(const PBWElement& a, const PBWElement& b);
  PBWElement commutator(const PBWElement& a, const PBWElement& b);

  /// Tr (F^(k))^{2m} for the matrix F^(k) with entries F_ij in U(o_2n).
  PBWElement gelfand_invariant(int k, int m);
  /// Average over all orderings of every monomial.
  PBWElement symmetrize(const poly::PolyQ& f);

  std::size_t cache_size() const { return cache_.size(); }

 private:
  struct Key {
    Monomial mono;
    std::uint16_t gen;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  const PBWElement& times_generator(const Monomial& m, std::uint16_t g);
  PBWElement right_multiply(const PBWElement& a, std::uint16_t g);
  void check_element(const PBWElement& a) const;

  lie::Algebra alg_;
  std::unordered_map<Key, PBWElement, KeyHash> cache_;
};

}  // namespace bethegt::env
