#include "bethegt/yangian.hpp"

#include "bethegt/assignment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <thread>

namespace bethegt::yang {

std::size_t yslot(int i) {
  if (i == -1) return 0;
  if (i == 1) return 1;
  throw std::out_of_range("Yangian index must be -1 or +1");
}

EvalModule eval_module(const Rational& alpha, const Rational& beta) {
  Rational diff = alpha - beta;
  diff.canonicalize();
  if (diff.get_den() != 1 || sgn(diff) < 0) throw std::invalid_argument("eval_module: alpha - beta must be a nonnegative integer");
  if (diff > 1000) throw std::invalid_argument("eval_module: module too large");
  EvalModule m;
  m.alpha = alpha;
  m.beta = beta;
  m.dim = diff.get_num().get_ui() + 1;
  for (auto& row : m.e)
    for (auto& x : row) x = Matrix<Rational>(m.dim, m.dim);
  for (std::size_t j = 0; j < m.dim; ++j) {
    const Rational jj(static_cast<long>(j));
    m.e[0][0](j, j) = alpha - jj;
    m.e[1][1](j, j) = beta + jj;
    if (j + 1 < m.dim) m.e[1][0](j + 1, j) = 1;
    if (j >= 1) m.e[0][1](j - 1, j) = jj * (diff - jj + 1);
  }
  return m;
}

namespace {

template <class T>
T from_rational(const Rational& q) {
  return scalar_cast<T>(q);
}

template <class T>
bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return sgn(x) == 0;
  else
    return x == 0.0;
}

std::vector<std::size_t> factor_dims(std::span<const EvalModule> factors) {
  std::vector<std::size_t> dims;
  for (const auto& f : factors) dims.push_back(f.dim);
  return dims;
}

std::size_t total_dim(const std::vector<std::size_t>& dims) {
  std::size_t d = 1;
  for (auto x : dims) d *= x;
  return d;
}

template <class T>
Matrix<T> lift(const std::vector<std::size_t>& dims, std::size_t k, const Matrix<T>& m) {
  std::size_t before = 1, after = 1;
  for (std::size_t i = 0; i < k; ++i) before *= dims[i];
  for (std::size_t i = k + 1; i < dims.size(); ++i) after *= dims[i];
  return kron(kron(Matrix<T>::identity(before), m), Matrix<T>::identity(after));
}

template <class T>
MatPoly<T> poly_mul(const MatPoly<T>& a, const MatPoly<T>& b) {
  if (a.empty() || b.empty()) return {};
  MatPoly<T> out(a.size() + b.size() - 1, Matrix<T>(a[0].rows(), b[0].cols()));
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p].is_zero()) continue;
    for (std::size_t q = 0; q < b.size(); ++q) {
      if (b[q].is_zero()) continue;
      out[p + q] += a[p] * b[q];
    }
  }
  return out;
}

template <class T>
void poly_add(MatPoly<T>& a, const MatPoly<T>& b) {
  if (b.empty()) return;
  if (a.size() < b.size()) a.resize(b.size(), Matrix<T>(b[0].rows(), b[0].cols()));
  for (std::size_t p = 0; p < b.size(); ++p) a[p] += b[p];
}

template <class T>
MatPoly<T> poly_scale(const MatPoly<T>& a, const std::vector<T>& s) {
  if (a.empty()) return {};
  MatPoly<T> out(a.size() + s.size() - 1, Matrix<T>(a[0].rows(), a[0].cols()));
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < s.size(); ++q)
      if (!is_zero(s[q])) out[p + q] += a[p] * s[q];
  return out;
}

template <class T>
std::vector<T> scalar_mul(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < b.size(); ++q) out[p + q] += a[p] * b[q];
  return out;
}

// p(u) -> p(-u)
template <class P>
P reflect(P p) {
  for (std::size_t d = 1; d < p.size(); d += 2) p[d] = -p[d];
  return p;
}

template <class T>
T horner(const std::vector<T>& p, const T& u) {
  T acc(0);
  for (std::size_t d = p.size(); d-- > 0;) acc = acc * u + p[d];
  return acc;
}

template <class T>
Matrix<T> horner(const MatPoly<T>& p, const T& u, std::size_t dim) {
  Matrix<T> acc(dim, dim);
  for (std::size_t d = p.size(); d-- > 0;) acc = acc * u + p[d];
  return acc;
}

template <class T>
T power(T x, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

template <class T>
RationalOperator<T>::RationalOperator(std::size_t dim, std::array<std::array<MatPoly<T>, 2>, 2> numerator, std::vector<T> denominator)
    : dim_(dim), num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.empty()) throw std::invalid_argument("RationalOperator: empty denominator");
}

template <class T>
Matrix<T> RationalOperator<T>::at(int i, int j, const T& u) const {
  const T d = horner(den_, u);
  if (is_zero(d)) throw PoleError("evaluation at a pole");
  Matrix<T> m = horner(num_[yslot(i)][yslot(j)], u, dim_);
  return m * (T(1) / d);
}

template <class T>
Block<T> RationalOperator<T>::at(const T& u) const {
  const T d = horner(den_, u);
  if (is_zero(d)) throw PoleError("evaluation at a pole");
  const T inv = T(1) / d;
  Block<T> b;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) b[i][j] = horner(num_[i][j], u, dim_) * inv;
  return b;
}

template <class T>
std::vector<Matrix<T>> RationalOperator<T>::laurent(int i, int j, int order) const {
  const MatPoly<T>& p = num_[yslot(i)][yslot(j)];
  const std::size_t deg = den_.size() - 1;
  for (std::size_t d = deg + 1; d < p.size(); ++d)
    if (!p[d].is_zero()) throw std::logic_error("laurent: numerator degree exceeds denominator degree");
  const T inv_lead = T(1) / den_[deg];
  std::vector<Matrix<T>> c;
  for (int r = 0; r <= order; ++r) {
    Matrix<T> acc(dim_, dim_);
    if (static_cast<std::size_t>(r) <= deg && deg - r < p.size()) acc = p[deg - r];
    for (std::size_t q = 1; q <= std::min<std::size_t>(r, deg); ++q)
      if (!is_zero(den_[deg - q])) acc -= c[r - q] * den_[deg - q];
    c.push_back(acc * inv_lead);
  }
  return c;
}

template class RationalOperator<Rational>;
template class RationalOperator<double>;

template <class T>
RationalOperator<T> t_operator(std::span<const EvalModule> factors, std::span<const T> z) {
  if (factors.size() != z.size()) throw std::invalid_argument("t_operator: one z per factor required");
  const auto dims = factor_dims(factors);
  const std::size_t dim = total_dim(dims);
  const Matrix<T> id = Matrix<T>::identity(dim);
  const Matrix<T> zero(dim, dim);
  std::array<std::array<MatPoly<T>, 2>, 2> num;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) num[a][b] = {a == b ? id : zero};
  std::vector<T> den{T(1)};
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::array<std::array<MatPoly<T>, 2>, 2> local;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        Matrix<T> c0 = lift(dims, k, matrix_cast<T>(factors[k].e[a][b]));
        if (a == b) c0 -= id * z[k];
        local[a][b] = {c0, a == b ? id : zero};
      }
    std::array<std::array<MatPoly<T>, 2>, 2> next;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t a = 0; a < 2; ++a) poly_add(next[i][j], poly_mul(num[i][a], local[a][j]));
    num = std::move(next);
    den = scalar_mul(den, std::vector<T>{-z[k], T(1)});
  }
  return RationalOperator<T>(dim, std::move(num), std::move(den));
}

template <class T>
RationalOperator<T> s_operator(std::span<const EvalModule> factors, std::span<const T> z, const T& delta) {
  const RationalOperator<T> top = t_operator<T>(factors, z);
  const std::size_t dim = top.dim();
  const std::array<std::vector<T>, 2> w{std::vector<T>{T(1) - delta, T(1)}, std::vector<T>{delta, T(1)}};
  std::array<std::array<MatPoly<T>, 2>, 2> num;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t a = 0; a < 2; ++a) {
        const int yi = i == 0 ? -1 : 1, ya = a == 0 ? -1 : 1, yj = j == 0 ? -1 : 1;
        const MatPoly<T> left = poly_scale(top.numerator(yi, ya), w[a]);
        const MatPoly<T> right = reflect(top.numerator(-yj, -ya));
        poly_add(num[i][j], poly_mul(left, right));
      }
  std::vector<T> den = scalar_mul(top.denominator(), reflect(top.denominator()));
  den = scalar_mul(den, std::vector<T>{from_rational<T>(Rational(1, 2)), T(1)});
  return RationalOperator<T>(dim, std::move(num), std::move(den));
}

template <class T>
std::vector<Block<T>> t_series(std::span<const EvalModule> factors, std::span<const T> z, int order, int sign) {
  if (factors.size() != z.size()) throw std::invalid_argument("t_series: one z per factor required");
  const auto dims = factor_dims(factors);
  const std::size_t dim = total_dim(dims);
  const Matrix<T> id = Matrix<T>::identity(dim);
  const Matrix<T> zero(dim, dim);
  std::vector<Block<T>> acc(order + 1);
  for (int r = 0; r <= order; ++r)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) acc[r][a][b] = (r == 0 && a == b) ? id : zero;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::vector<Block<T>> local(order + 1);
    for (int r = 0; r <= order; ++r)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          if (r == 0) {
            local[r][a][b] = a == b ? id : zero;
          } else {
            T c = power(z[k], r - 1);
            if (sign < 0 && r % 2 == 1) c = -c;
            local[r][a][b] = lift(dims, k, matrix_cast<T>(factors[k].e[a][b])) * c;
          }
        }
    std::vector<Block<T>> next(order + 1);
    for (int r = 0; r <= order; ++r)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          Matrix<T> s(dim, dim);
          for (int p = 0; p <= r; ++p)
            for (std::size_t a = 0; a < 2; ++a) s += acc[p][i][a] * local[r - p][a][j];
          next[r][i][j] = std::move(s);
        }
    acc = std::move(next);
  }
  return acc;
}

template RationalOperator<Rational> t_operator<Rational>(std::span<const EvalModule>, std::span<const Rational>);
template RationalOperator<double> t_operator<double>(std::span<const EvalModule>, std::span<const double>);
template RationalOperator<Rational> s_operator<Rational>(std::span<const EvalModule>, std::span<const Rational>, const Rational&);
template RationalOperator<double> s_operator<double>(std::span<const EvalModule>, std::span<const double>, const double&);
template std::vector<Block<Rational>> t_series<Rational>(std::span<const EvalModule>, std::span<const Rational>, int, int);
template std::vector<Block<double>> t_series<double>(std::span<const EvalModule>, std::span<const double>, int, int);

RelationReport verify_relations(std::span<const EvalModule> factors, std::span<const Rational> z, const Rational& delta,
                                int samples, std::uint64_t seed) {
  RelationReport rep;
  rep.seed = seed;
  const RationalOperator<Rational> s = s_operator<Rational>(factors, z, delta);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num_dist(-60, 60), den_dist(1, 13);
  auto draw = [&] {
    const long num = num_dist(rng);
    return Rational(num, den_dist(rng));
  };
  auto neg = [](std::size_t x) { return 1 - x; };
  auto yname = [](std::size_t x) { return x == 0 ? "-1" : "+1"; };

  while (rep.samples < samples) {
    Rational u = draw(), v = draw();
    u.canonicalize();
    v.canonicalize();
    if (sgn(u) == 0 || sgn(v) == 0 || u == v || u == -v) {
      ++rep.resampled;
      continue;
    }
    Block<Rational> su, sv, smu;
    try {
      su = s.at(u);
      sv = s.at(v);
      smu = s.at(Rational(-u));
    } catch (const PoleError&) {
      ++rep.resampled;
      continue;
    }
    ++rep.samples;
    Matrix<Rational> uv[2][2][2][2], vu[2][2][2][2];
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t c = 0; c < 2; ++c)
          for (std::size_t d = 0; d < 2; ++d) {
            uv[a][b][c][d] = su[a][b] * sv[c][d];
            vu[a][b][c][d] = sv[a][b] * su[c][d];
          }
    const Rational inv_m = 1 / Rational(u - v), inv_p = 1 / Rational(u + v), inv_q = 1 / Rational(u * u - v * v);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l) {
            const Matrix<Rational> lhs = uv[i][j][k][l] - vu[k][l][i][j];
            Matrix<Rational> rhs = (uv[k][j][i][l] - vu[k][j][i][l]) * inv_m;
            rhs -= (uv[i][neg(k)][neg(j)][l] - vu[k][neg(i)][neg(l)][j]) * inv_p;
            rhs += (uv[k][neg(i)][neg(j)][l] - vu[k][neg(i)][neg(j)][l]) * inv_q;
            ++rep.quaternary_checks;
            if (!(lhs == rhs)) {
              rep.ok = false;
              if (rep.failures.size() < 10)
                rep.failures.push_back(std::string("quaternary (") + yname(i) + "," + yname(j) + "," + yname(k) + "," + yname(l) +
                                       ") at u=" + to_string(u) + " v=" + to_string(v));
            }
          }
    const Rational inv_2u = 1 / Rational(2 * u);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const Matrix<Rational> rhs = su[i][j] + (su[i][j] - smu[i][j]) * inv_2u;
        ++rep.symmetry_checks;
        if (!(smu[neg(j)][neg(i)] == rhs)) {
          rep.ok = false;
          if (rep.failures.size() < 10)
            rep.failures.push_back(std::string("symmetry (") + yname(i) + "," + yname(j) + ") at u=" + to_string(u));
        }
      }
  }
  return rep;
}

template <class T>
OperatorPencil<T> bethe_operators(std::span<const EvalModule> factors, std::span<const T> z, const T& delta, int count, const T& t) {
  if (count < 1) throw std::invalid_argument("bethe_operators: at least one generator required");
  const RationalOperator<T> s = s_operator<T>(factors, z, delta);
  const auto coeffs = s.laurent(1, 1, 2 * count - 1);
  OperatorPencil<T> p;
  p.t = t;
  p.z.assign(z.begin(), z.end());
  p.delta = delta;
  for (const auto& f : factors) {
    p.alpha.push_back(f.alpha);
    p.beta.push_back(f.beta);
  }
  const bool rescale = !is_zero(t);
  const T inv_t2 = rescale ? T(1) / (t * t) : T(1);
  T scale(1);
  for (int m = 0; m < count; ++m) {
    p.generators.push_back(coeffs[2 * m + 1] * scale);
    scale *= inv_t2;
  }
  return p;
}

template OperatorPencil<Rational> bethe_operators<Rational>(std::span<const EvalModule>, std::span<const Rational>, const Rational&, int,
                                                            const Rational&);
template OperatorPencil<double> bethe_operators<double>(std::span<const EvalModule>, std::span<const double>, const double&, int,
                                                        const double&);

double commutator_defect(const OperatorPencil<double>& p) {
  double scale = 0.0, worst = 0.0;
  for (const auto& b : p.generators) scale = std::max(scale, frobenius_norm(b));
  if (scale == 0.0) return 0.0;
  for (std::size_t a = 0; a < p.generators.size(); ++a)
    for (std::size_t b = a + 1; b < p.generators.size(); ++b)
      worst = std::max(worst, frobenius_norm(commutator(p.generators[a], p.generators[b])));
  return worst / (scale * scale);
}

bool commutes_exactly(const OperatorPencil<Rational>& p) {
  for (std::size_t a = 0; a < p.generators.size(); ++a)
    for (std::size_t b = a + 1; b < p.generators.size(); ++b)
      if (!commutator(p.generators[a], p.generators[b]).is_zero()) return false;
  return true;
}

std::vector<EvalModule> multiplicity_factors(const gt::BranchParams& params) {
  if (!params.admissible()) throw std::invalid_argument("multiplicity_factors: parameters are not admissible");
  std::vector<EvalModule> out;
  for (std::size_t i = 0; i < params.alpha.size(); ++i) out.push_back(eval_module(params.alpha[i].value(), params.beta[i].value()));
  return out;
}

namespace {

OperatorPencil<double> pencil_at(std::span<const EvalModule> factors, std::span<const double> u, double delta, double t, int count) {
  std::vector<double> z(factors.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = t * u[i];
  return bethe_operators<double>(factors, z, delta, count, t);
}

std::vector<double> draw_coefficients(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> c(count);
  for (auto& x : c) x = dist(rng);
  return c;
}

}  // namespace

OperatorPencil<double> multiplicity_pencil(const gt::BranchParams& params, std::span<const double> u, double t, int count) {
  const auto factors = multiplicity_factors(params);
  if (u.size() < factors.size()) throw std::invalid_argument("multiplicity_pencil: u-vector too short");
  return pencil_at(factors, u, params.delta().to_double(), t, count);
}

SpectrumResult spectrum(const OperatorPencil<double>& p, std::uint64_t seed, double gap_tol) {
  SpectrumResult res;
  res.seed = seed;
  const std::size_t dim = p.dim();
  const std::size_t count = p.generators.size();
  std::vector<Eigen::MatrixXd> gens;
  for (const auto& b : p.generators) {
    Eigen::MatrixXd m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = b(i, j);
    const double nrm = m.norm();
    if (nrm > 0.0) m /= nrm;
    gens.push_back(std::move(m));
  }

  constexpr int kMaxAttempts = 6;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    res.attempts = attempt + 1;
    res.coefficients = draw_coefficients(seed + static_cast<std::uint64_t>(attempt), count);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t m = 0; m < count; ++m) c += res.coefficients[m] * gens[m];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(c);
    if (solver.info() != Eigen::Success) continue;
    const Eigen::VectorXcd values = solver.eigenvalues();
    res.vectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < res.vectors.cols(); ++k) res.vectors.col(k).normalize();
    double max_abs = 0.0, gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a < values.size(); ++a) {
      max_abs = std::max(max_abs, std::abs(values[a]));
      for (Eigen::Index b = a + 1; b < values.size(); ++b) gap = std::min(gap, std::abs(values[a] - values[b]));
    }
    res.min_gap = dim > 1 ? gap : 0.0;
    res.simple = dim <= 1 || gap > gap_tol * std::max(1.0, max_abs);
    res.lines.clear();
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      Eigenline line;
      line.value = values[k];
      const Eigen::VectorXcd v = res.vectors.col(k);
      for (const auto& g : gens) line.joint.push_back(v.dot(g.cast<std::complex<double>>() * v));
      res.lines.push_back(std::move(line));
    }
    if (res.simple) break;
  }
  return res;
}

void check_u_vector(std::span<const double> u, std::size_t needed) {
  if (u.size() < needed)
    throw std::invalid_argument("u-vector needs at least " + std::to_string(needed) + " entries, got " + std::to_string(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) throw std::invalid_argument("u-vector entries must be finite");
    if (i > 0 && !(u[i - 1] < u[i])) throw std::invalid_argument("u-vector must be strictly increasing");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(u[i]) == std::abs(u[j])) throw std::invalid_argument("u-vector entries must have distinct absolute values");
  }
}

std::vector<gt::Row> admissible_labels(const gt::BranchParams& params) {
  std::vector<gt::Row> out;
  if (!params.admissible()) return out;
  const std::size_t m = params.alpha.size();
  gt::Row row(m);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m) {
      out.push_back(row);
      return;
    }
    for (gt::HalfInt v = params.primed_low(i); v <= params.primed_high(i); v = v + gt::HalfInt(1)) {
      row[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

namespace {

struct Snapshot {
  Eigen::MatrixXcd vectors;
  std::vector<double> values;  // base-combination eigenvalue per solver column
  bool simple = false;
  double min_gap = 0.0;
};

class FlowRun {
 public:
  FlowRun(std::vector<EvalModule> factors, std::vector<double> u, double delta, int count, const FlowSchedule& sched, std::uint64_t seed)
      : factors_(std::move(factors)), u_(std::move(u)), delta_(delta), count_(count), sched_(sched), seed_(seed),
        base_(draw_coefficients(seed, static_cast<std::size_t>(count))) {}

  bool run(FlowResult& out) {
    const Snapshot s0 = snapshot(0.0);
    out.min_gap = s0.min_gap;
    if (!s0.simple) {
      out.error = "non-simple spectrum at t=0";
      return false;
    }
    v_ = s0.vectors;
    t_ = 0.0;
    out.grid.push_back(0.0);
    out.eigenvalues.push_back(s0.values);

    std::vector<double> targets;
    for (double t = sched_.t0; t < sched_.t_max; t *= sched_.q) targets.push_back(t);
    targets.push_back(sched_.t_max);
    for (double tb : targets)
      if (!advance(tb, 0, out)) return false;
    return true;
  }

  const Eigen::MatrixXcd& vectors() const { return v_; }

 private:
  Snapshot snapshot(double t) const {
    const auto p = pencil_at(factors_, u_, delta_, t, count_);
    const SpectrumResult sr = spectrum(p, seed_, sched_.gap_tol);
    Snapshot s;
    s.vectors = sr.vectors;
    s.simple = sr.simple;
    s.min_gap = sr.min_gap;
    for (const auto& line : sr.lines) {
      std::complex<double> acc = 0.0;
      for (std::size_t m = 0; m < line.joint.size(); ++m) acc += base_[m] * line.joint[m];
      s.values.push_back(acc.real());
    }
    return s;
  }

  bool advance(double tb, int depth, FlowResult& out) {
    const Snapshot s = snapshot(tb);
    out.min_gap = std::min(out.min_gap, s.min_gap);
    if (!s.simple) {
      out.error = "non-simple spectrum at t=" + std::to_string(tb);
      return false;
    }
    const std::size_t dim = static_cast<std::size_t>(v_.cols());
    std::vector<std::vector<double>> ov(dim, std::vector<double>(dim));
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) ov[a][b] = std::abs(v_.col(a).dot(s.vectors.col(b)));
    const auto perm = max_weight_assignment(ov);
    double worst = 1.0;
    for (std::size_t a = 0; a < dim; ++a) worst = std::min(worst, ov[a][perm[a]]);
    if (worst < sched_.overlap_threshold) {
      if (depth >= sched_.max_depth) {
        out.error = "tracking failed on t-interval [" + std::to_string(t_) + ", " + std::to_string(tb) + "]";
        return false;
      }
      ++out.bisections;
      const double mid = 0.5 * (t_ + tb);
      return advance(mid, depth + 1, out) && advance(tb, depth + 1, out);
    }
    Eigen::MatrixXcd next(v_.rows(), v_.cols());
    std::vector<double> values(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      next.col(a) = s.vectors.col(perm[a]);
      values[a] = s.values[perm[a]];
    }
    v_ = std::move(next);
    t_ = tb;
    out.grid.push_back(tb);
    out.eigenvalues.push_back(std::move(values));
    out.matchings.push_back(perm);
    out.step_overlaps.push_back(worst);
    return true;
  }

  std::vector<EvalModule> factors_;
  std::vector<double> u_;
  double delta_;
  int count_;
  FlowSchedule sched_;
  std::uint64_t seed_;
  std::vector<double> base_;
  Eigen::MatrixXcd v_;
  double t_ = 0.0;
};

std::vector<double> perturbed(const std::vector<double>& u, std::mt19937_64& rng) {
  double spacing = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) spacing = std::min(spacing, std::abs(std::abs(u[i]) - std::abs(u[j])));
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  for (int tries = 0; tries < 100; ++tries) {
    std::vector<double> v = u;
    for (auto& x : v) x += dist(rng) * spacing;
    try {
      check_u_vector(v, v.size());
      return v;
    } catch (const std::invalid_argument&) {
    }
  }
  return u;
}

}  // namespace

FlowResult flow(const gt::WeightD& lambda, const gt::WeightD& mu, std::span<const double> u, const FlowSchedule& schedule,
                std::uint64_t seed) {
  FlowResult res;
  res.lambda = lambda;
  res.mu = mu;
  res.seed = seed;
  res.params = gt::branching_params(lambda, mu);
  if (!res.params.admissible()) throw std::invalid_argument("flow: mu does not occur in lambda");
  const auto factors = multiplicity_factors(res.params);
  const std::size_t nf = factors.size();
  check_u_vector(u, nf);
  std::vector<double> uu(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(nf));
  const auto dims = factor_dims(factors);
  res.dimension = total_dim(dims);
  res.generators = schedule.generators > 0 ? schedule.generators : static_cast<int>(2 * nf + 2);
  const double delta = res.params.delta().to_double();

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (int attempt = 0; attempt <= schedule.max_retries; ++attempt) {
    if (attempt > 0) {
      uu = perturbed(uu, rng);
      ++res.retries;
    }
    FlowResult trial = res;
    trial.u = uu;
    FlowRun run(factors, uu, delta, trial.generators, schedule, seed);
    if (!run.run(trial)) {
      res.error = trial.error;
      res.u = uu;
      res.grid = std::move(trial.grid);
      res.bisections = trial.bisections;
      continue;
    }
    // Terminal matching against the product weight basis.
    const Eigen::MatrixXcd& v = run.vectors();
    const std::size_t dim = res.dimension;
    std::vector<std::vector<double>> ov(dim, std::vector<double>(dim));
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t j = 0; j < dim; ++j) ov[a][j] = std::abs(v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(a)));
    trial.terminal = max_weight_assignment(ov);
    for (std::size_t a = 0; a < dim; ++a) {
      trial.terminal_overlaps.push_back(ov[a][trial.terminal[a]]);
      std::size_t idx = trial.terminal[a];
      std::vector<std::size_t> jj(nf);
      for (std::size_t i = nf; i-- > 0;) {
        jj[i] = idx % dims[i];
        idx /= dims[i];
      }
      gt::Row label(nf);
      for (std::size_t i = 0; i < nf; ++i) label[i] = res.params.primed_high(i) - gt::HalfInt(static_cast<int>(jj[i]));
      trial.labels.push_back(std::move(label));
    }
    const double worst = trial.terminal_overlaps.empty() ? 1.0 : *std::min_element(trial.terminal_overlaps.begin(), trial.terminal_overlaps.end());
    if (worst < schedule.terminal_threshold) {
      trial.error = "terminal overlap " + std::to_string(worst) + " below threshold";
      trial.ok = false;
    } else {
      trial.ok = true;
      trial.error.clear();
    }
    trial.retries = res.retries;
    return trial;
  }
  res.ok = false;
  return res;
}

LabelingResult full_labeling(const gt::WeightD& lambda, std::span<const double> u, const FlowSchedule& schedule, std::uint64_t seed,
                             int jobs) {
  LabelingResult res;
  res.lambda = lambda;
  if (!gt::is_dominant(lambda)) throw std::invalid_argument("full_labeling: weight " + lambda.to_string() + " is not dominant");
  const int n = lambda.rank();
  if (n > 1) check_u_vector(u, static_cast<std::size_t>(n - 1));

  // Every restriction step reachable from lambda, in a fixed order.
  std::vector<std::pair<gt::WeightD, gt::WeightD>> steps;
  std::map<std::pair<gt::WeightD, gt::WeightD>, std::size_t> index;
  std::map<gt::WeightD, std::vector<gt::WeightD>> children;
  std::function<void(const gt::WeightD&)> collect = [&](const gt::WeightD& w) {
    if (w.rank() < 2 || children.count(w)) return;
    auto& kids = children[w];
    for (const auto& term : gt::branch(w)) {
      kids.push_back(term.mu);
      if (index.emplace(std::make_pair(w, term.mu), steps.size()).second) steps.emplace_back(w, term.mu);
      collect(term.mu);
    }
  };
  collect(lambda);

  std::vector<FlowResult> flows(steps.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < steps.size(); i = next++) {
      const auto& [w, m] = steps[i];
      const std::span<const double> uk = u.first(static_cast<std::size_t>(w.rank() - 1));
      flows[i] = flow(w, m, uk, schedule, seed);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(steps.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& f : flows) {
    LevelReport lr;
    lr.lambda = f.lambda;
    lr.mu = f.mu;
    lr.dimension = f.dimension;
    lr.bisections = f.bisections;
    lr.retries = f.retries;
    lr.error = f.error;
    for (double o : f.terminal_overlaps) lr.min_terminal_overlap = std::min(lr.min_terminal_overlap, o);
    auto got = f.labels;
    std::sort(got.begin(), got.end());
    lr.labels_match = f.ok && got == admissible_labels(f.params);
    res.min_terminal_overlap = std::min(res.min_terminal_overlap, lr.min_terminal_overlap);
    if (!f.ok && res.error.empty()) res.error = "flow " + f.lambda.to_string() + " -> " + f.mu.to_string() + ": " + f.error;
    if (f.ok && !lr.labels_match && res.error.empty())
      res.error = "labels of " + f.lambda.to_string() + " -> " + f.mu.to_string() + " differ from the admissible set";
    res.levels.push_back(std::move(lr));
  }

  std::function<std::vector<std::vector<gt::LevelLabel>>(const gt::WeightD&)> chains_of = [&](const gt::WeightD& w) {
    std::vector<std::vector<gt::LevelLabel>> out;
    if (w.rank() < 2) {
      out.emplace_back();
      return out;
    }
    for (const auto& m : children[w]) {
      const FlowResult& f = flows[index.at({w, m})];
      const auto below = chains_of(m);
      for (const auto& label : f.labels)
        for (const auto& sub : below) {
          std::vector<gt::LevelLabel> chain{{label, m}};
          chain.insert(chain.end(), sub.begin(), sub.end());
          out.push_back(std::move(chain));
        }
    }
    return out;
  };
  res.chains = chains_of(lambda);
  for (const auto& chain : res.chains) {
    try {
      res.patterns.push_back(gt::pattern_from_labels(lambda, chain));
    } catch (const std::invalid_argument& e) {
      if (res.error.empty()) res.error = e.what();
    }
  }
  std::sort(res.patterns.begin(), res.patterns.end());
  auto expected = gt::enumerate_patterns(lambda);
  std::sort(expected.begin(), expected.end());
  res.expected = expected.size();
  res.bijection = res.patterns == expected;
  return res;
}

PathCheck path_independence_check(const gt::WeightD& lambda, const gt::WeightD& mu, std::span<const double> u_a,
                                  std::span<const double> u_b, const FlowSchedule& schedule, std::uint64_t seed) {
  const std::size_t nf = static_cast<std::size_t>(lambda.rank() - 1);
  check_u_vector(u_a, nf);
  check_u_vector(u_b, nf);
  PathCheck pc;
  pc.first = flow(lambda, mu, u_a, schedule, seed);
  pc.second = flow(lambda, mu, u_b, schedule, seed);
  if (!pc.first.ok || !pc.second.ok) return pc;
  for (std::size_t a = 0; a < pc.first.labels.size(); ++a)
    if (pc.first.labels[a] != pc.second.labels[a]) ++pc.mismatches;
  pc.equal = pc.mismatches == 0;
  return pc;
}

}  // namespace bethegt::yang
