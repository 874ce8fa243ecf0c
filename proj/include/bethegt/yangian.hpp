#pragma once

// Twisted Yangian Y+(2) acting on L(a_1,b_1) (x) ... (x) L(a_r,b_r) (x) W(delta).
//
// Yangian indices are -1 and +1; gl_2 slot 0 carries -1 and slot 1 carries +1.
// On the tensor product
//   t_ab(u) = prod over factors of (delta_ab + E_ab / (u - z)),
// composed as a block product in factor order, and
//   s_ij(u) = sum_a t_ia(u) w_a(u) t_{-j,-a}(-u)
// with w_{+1}(u) = (u + delta)/(u + 1/2), w_{-1}(u) = (u - delta + 1)/(u + 1/2).
// Bethe generators come from s_{+1,+1}(u).

#include "bethegt/gtpattern.hpp"
#include "bethegt/matrix.hpp"
#include "bethegt/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bethegt::yang {

/// Slot of a Yangian index: -1 -> 0, +1 -> 1.
std::size_t yslot(int i);

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

/// gl_2 module L(alpha, beta) on v_0 .. v_{d-1}, d = alpha - beta + 1:
/// E_11 v_j = (alpha - j) v_j, E_22 v_j = (beta + j) v_j, E_21 v_j = v_{j+1},
/// E_12 v_j = j (alpha - beta - j + 1) v_{j-1}. e[a][b] is E_{a+1,b+1}.
struct EvalModule {
  Rational alpha;
  Rational beta;
  std::size_t dim = 1;
  std::array<std::array<Matrix<Rational>, 2>, 2> e;
};

EvalModule eval_module(const Rational& alpha, const Rational& beta);

template <class T>
using Block = std::array<std::array<Matrix<T>, 2>, 2>;

/// Polynomial in u with matrix coefficients; index = power.
template <class T>
using MatPoly = std::vector<Matrix<T>>;

/// 2x2 block of rational functions numerator(u) / denominator(u) with a
/// common scalar denominator.
template <class T>
class RationalOperator {
 public:
  RationalOperator(std::size_t dim, std::array<std::array<MatPoly<T>, 2>, 2> numerator, std::vector<T> denominator);

  std::size_t dim() const { return dim_; }
  const MatPoly<T>& numerator(int i, int j) const { return num_[yslot(i)][yslot(j)]; }
  const std::vector<T>& denominator() const { return den_; }

  /// Throws PoleError at a zero of the denominator.
  Matrix<T> at(int i, int j, const T& u) const;
  Block<T> at(const T& u) const;
  /// Coefficients of u^0, u^-1, ..., u^-order of entry (i, j).
  std::vector<Matrix<T>> laurent(int i, int j, int order) const;

 private:
  std::size_t dim_;
  std::array<std::array<MatPoly<T>, 2>, 2> num_;
  std::vector<T> den_;
};

template <class T>
RationalOperator<T> t_operator(std::span<const EvalModule> factors, std::span<const T> z);
template <class T>
RationalOperator<T> s_operator(std::span<const EvalModule> factors, std::span<const T> z, const T& delta);

/// Coefficients of u^-r (r = 0..order) of t_ij(+-u), expanded factor by factor.
/// Independent of the polynomial route; used as a cross-check.
template <class T>
std::vector<Block<T>> t_series(std::span<const EvalModule> factors, std::span<const T> z, int order, int sign = 1);

struct RelationReport {
  bool ok = true;
  int samples = 0;
  int resampled = 0;
  std::uint64_t seed = 0;
  std::size_t quaternary_checks = 0;
  std::size_t symmetry_checks = 0;
  std::vector<std::string> failures;
};

/// Quaternary and symmetry relations checked exactly at random rational
/// points (u, v) avoiding poles and u = +-v.
RelationReport verify_relations(std::span<const EvalModule> factors, std::span<const Rational> z, const Rational& delta,
                                int samples, std::uint64_t seed);

template <class T>
struct OperatorPencil {
  std::vector<Matrix<T>> generators;
  T t = T(0);
  std::vector<T> z;
  T delta = T(0);
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  std::size_t dim() const { return generators.empty() ? 0 : generators.front().rows(); }
};

/// B_m = t^{-2m} [u^{-(2m+1)}] s_{+1,+1}(u), m = 0..count-1 (no rescaling at t = 0).
template <class T>
OperatorPencil<T> bethe_operators(std::span<const EvalModule> factors, std::span<const T> z, const T& delta, int count,
                                  const T& t = T(0));

/// Largest Frobenius norm of [B_m, B_m'] relative to the largest generator norm.
double commutator_defect(const OperatorPencil<double>& p);
bool commutes_exactly(const OperatorPencil<Rational>& p);

/// Factors L(alpha_i, beta_i) of the multiplicity space of mu in lambda.
std::vector<EvalModule> multiplicity_factors(const gt::BranchParams& params);

/// Pencil on the multiplicity space at z_i = t u_i, delta = -alpha_0.
OperatorPencil<double> multiplicity_pencil(const gt::BranchParams& params, std::span<const double> u, double t, int count);

struct Eigenline {
  std::complex<double> value;                 // eigenvalue of the combination
  std::vector<std::complex<double>> joint;    // eigenvalue of each normalized generator
};

struct SpectrumResult {
  std::vector<Eigenline> lines;
  Eigen::MatrixXcd vectors;  // unit columns, one per line
  std::vector<double> coefficients;
  bool simple = true;
  double min_gap = 0.0;
  int attempts = 0;
  std::uint64_t seed = 0;
};

/// Joint eigenbasis of the pencil through a random combination of the
/// norm-normalized generators; the combination is redrawn up to 5 times
/// when its eigenvalues are not separated by gap_tol (relative to scale).
SpectrumResult spectrum(const OperatorPencil<double>& p, std::uint64_t seed, double gap_tol = 1e-9);

struct FlowSchedule {
  double t0 = 0.1;
  double q = 1.3;
  double t_max = 1e6;
  int max_depth = 20;
  double overlap_threshold = 0.9;
  double terminal_threshold = 0.99;
  double gap_tol = 1e-9;
  int generators = 0;   // 0: chosen from the number of factors
  int max_retries = 3;  // reruns with a perturbed u-vector
};

struct FlowResult {
  gt::WeightD lambda;
  gt::WeightD mu;
  gt::BranchParams params;
  std::vector<double> u;  // u-vector actually used
  std::uint64_t seed = 0;
  std::size_t dimension = 0;
  int generators = 0;
  std::vector<double> grid;
  std::vector<std::vector<double>> eigenvalues;         // [grid point][line]
  std::vector<std::vector<std::size_t>> matchings;      // [step][line] -> solver column
  std::vector<double> step_overlaps;                    // smallest matched overlap per step
  std::vector<std::size_t> terminal;                    // line -> product weight basis index
  std::vector<double> terminal_overlaps;
  std::vector<gt::Row> labels;                          // primed row per line
  int bisections = 0;
  int retries = 0;
  double min_gap = 0.0;
  bool ok = false;
  std::string error;
};

/// Tracks the eigenbasis of the multiplicity-space pencil along z_i = t u_i
/// from t = 0 to t_max and labels each line by its limit weight vector.
/// Requires u strictly increasing with distinct squares and at least n-1
/// entries (only the first n-1 are used).
FlowResult flow(const gt::WeightD& lambda, const gt::WeightD& mu, std::span<const double> u, const FlowSchedule& schedule,
                std::uint64_t seed);

/// Primed rows admissible between lambda and mu, from the parameter ranges.
std::vector<gt::Row> admissible_labels(const gt::BranchParams& params);

struct LevelReport {
  gt::WeightD lambda;
  gt::WeightD mu;
  std::size_t dimension = 0;
  bool labels_match = false;  // label multiset equals the admissible set
  double min_terminal_overlap = 1.0;
  int bisections = 0;
  int retries = 0;
  std::string error;
};

struct LabelingResult {
  gt::WeightD lambda;
  std::vector<std::vector<gt::LevelLabel>> chains;
  std::vector<gt::GTPatternD> patterns;  // sorted
  std::size_t expected = 0;
  bool bijection = false;
  double min_terminal_overlap = 1.0;
  std::vector<LevelReport> levels;
  std::string error;
  bool ok() const { return bijection && error.empty(); }
};

/// Flows every restriction step lambda -> ... -> rank 1 and assembles
/// patterns from the labels; level k uses the first k-1 entries of u.
LabelingResult full_labeling(const gt::WeightD& lambda, std::span<const double> u, const FlowSchedule& schedule,
                             std::uint64_t seed, int jobs = 1);

struct PathCheck {
  bool equal = false;
  FlowResult first;
  FlowResult second;
  std::size_t mismatches = 0;
};

/// Same t = 0 eigenbasis, two u-vectors: compares labels line by line.
PathCheck path_independence_check(const gt::WeightD& lambda, const gt::WeightD& mu, std::span<const double> u_a,
                                  std::span<const double> u_b, const FlowSchedule& schedule, std::uint64_t seed);

/// Throws std::invalid_argument unless u is strictly increasing with
/// pairwise distinct squares.
void check_u_vector(std::span<const double> u, std::size_t needed);

}  // namespace bethegt::yang
