#pragma once

// Dominant weights of o_2n, branching to o_2n-2 and Gelfand-Tsetlin patterns
// of type D.
//
// Weights use the nonpositive convention: lambda = (l_1, ..., l_n) is
// dominant iff -|l_1| >= l_2 >= ... >= l_n, with all entries integers or all
// half-integers. The usual D_n highest weight is (-l_n, ..., -l_2, -l_1).
//
// A pattern for lambda has rows r_k (k entries, k = 1..n, r_n = lambda) and
// primed rows p_k (k entries, k = 1..n-1) with, for every k >= 2,
//   -|r_k[1]| >= p[1] >= r_k[2] >= p[2] >= ... >= r_k[k-1] >= p[k-1] >= r_k[k]
//   -|r_{k-1}[1]| >= p[1] >= r_{k-1}[2] >= p[2] >= ... >= r_{k-1}[k-1] >= p[k-1]
// where p = p_{k-1}.

#include "bethegt/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bethegt::gt {

/// Integer or half-integer, stored doubled.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  constexpr HalfInt(int v) : twice_(2 * static_cast<std::int64_t>(v)) {}
  /// Throws if the denominator does not divide 2.
  explicit HalfInt(const Rational& r);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  Rational value() const {
    Rational q(static_cast<long>(twice_), 2);
    q.canonicalize();
    return q;
  }
  double to_double() const { return static_cast<double>(twice_) / 2.0; }
  std::string to_string() const;

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
  friend constexpr HalfInt abs(HalfInt a) { return from_twice(a.twice_ < 0 ? -a.twice_ : a.twice_); }

 private:
  std::int64_t twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

using Row = std::vector<HalfInt>;

/// Weight of o_2n in the nonpositive convention.
struct WeightD {
  Row entries;

  WeightD() = default;
  explicit WeightD(Row e) : entries(std::move(e)) {}
  int rank() const { return static_cast<int>(entries.size()); }
  bool is_half() const { return !entries.empty() && !entries.front().is_integer(); }
  std::string to_string() const;
  friend auto operator<=>(const WeightD&, const WeightD&) = default;
};

/// Comma-separated rationals, e.g. "0,-1,-3/2". With half_shorthand every
/// entry is halved.
WeightD parse_weight(std::string_view text, bool half_shorthand = false);
WeightD zero_weight(int n);
bool same_parity(const Row& r);
bool is_dominant(const WeightD& w);

/// Weyl dimension formula. Throws for non-dominant weights.
Integer weyl_dim(const WeightD& w);

/// All dominant weights of rank n with every |entry| <= bound, integer
/// class first, in lexicographic order.
std::vector<WeightD> dominant_weights(int n, int bound, bool include_half = true);

struct BranchParams {
  HalfInt alpha0;
  std::vector<HalfInt> alpha;  // alpha_1 .. alpha_{n-1}
  std::vector<HalfInt> beta;   // beta_1 .. beta_{n-1}
  HalfInt delta() const { return -alpha0; }
  bool admissible() const;
  /// prod (alpha_i - beta_i + 1), zero when not admissible.
  Integer multiplicity() const;
  /// Range of the primed entry i (0-based): [beta_i + i - 1/2, alpha_i + i - 1/2].
  HalfInt primed_low(std::size_t i) const;
  HalfInt primed_high(std::size_t i) const;
};

/// Parameters of the multiplicity space of mu (rank n-1) in lambda (rank n).
/// Throws on shape or parity mismatch.
BranchParams branching_params(const WeightD& lambda, const WeightD& mu);

struct BranchTerm {
  WeightD mu;
  Integer multiplicity;
};

/// Restriction to o_2n-2, every mu with nonzero multiplicity in
/// lexicographic order.
std::vector<BranchTerm> branch(const WeightD& lambda);

struct GTPatternD {
  std::vector<Row> rows;    // rows[k-1] has k entries
  std::vector<Row> primed;  // primed[k-1] has k entries, k < n

  int rank() const { return static_cast<int>(rows.size()); }
  WeightD top() const { return WeightD(rows.back()); }
  std::string to_string() const;
  friend auto operator<=>(const GTPatternD&, const GTPatternD&) = default;
};

struct PatternCheck {
  bool ok = true;
  std::string violation;
};

PatternCheck validate_pattern(const GTPatternD& p);

/// Primed rows between row (k entries) and the next row down.
std::vector<Row> primed_rows_between(const Row& upper, const Row& lower);

/// All patterns with top row lambda, sorted by operator<=>.
std::vector<GTPatternD> enumerate_patterns(const WeightD& lambda);

/// One restriction step: the primed row and the weight of the next level.
struct LevelLabel {
  Row primed;
  WeightD next;
  friend auto operator<=>(const LevelLabel&, const LevelLabel&) = default;
};

/// Assembles and validates a pattern from the steps n -> n-1 -> ... -> 1.
GTPatternD pattern_from_labels(const WeightD& top, const std::vector<LevelLabel>& chain);

}  // namespace bethegt::gt
