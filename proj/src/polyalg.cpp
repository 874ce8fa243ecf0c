#include "bethegt/polyalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bethegt::poly {

using lie::Algebra;
using lie::IndexPair;
using lie::LieElement;

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// PolyQ

PolyQ PolyQ::constant(const Rational& c) {
  PolyQ p;
  p.add_term({}, c);
  return p;
}

PolyQ PolyQ::variable(std::size_t index, const Rational& c) {
  PolyQ p;
  p.add_term({static_cast<std::uint16_t>(index)}, c);
  return p;
}

PolyQ PolyQ::coordinate(int i, int j) {
  const auto c = lie::canonicalize(i, j);
  if (c.sign == 0) return {};
  return variable(lie::basis_index(c.pair), Rational(c.sign));
}

PolyQ PolyQ::from_lie(const LieElement& x) {
  PolyQ p;
  for (const auto& [a, c] : x.coeffs()) p.add_term({static_cast<std::uint16_t>(a)}, c);
  return p;
}

void PolyQ::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int PolyQ::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

bool PolyQ::is_homogeneous() const {
  if (terms_.empty()) return true;
  const std::size_t d = terms_.begin()->first.size();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.size() == d; });
}

PolyQ PolyQ::homogeneous_part(int d) const {
  PolyQ p;
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.size()) == d) p.terms_.emplace(m, c);
  return p;
}

std::size_t PolyQ::variable_bound() const {
  std::size_t b = 0;
  for (const auto& [m, c] : terms_)
    if (!m.empty()) b = std::max<std::size_t>(b, m.back() + 1u);
  return b;
}

int PolyQ::min_rank() const {
  const std::size_t b = variable_bound();
  int n = 0;
  while (lie::algebra_dim(n) < b) ++n;
  return n;
}

PolyQ PolyQ::derivative(std::size_t var) const {
  PolyQ d;
  for (const auto& [m, c] : terms_) {
    auto lo = std::lower_bound(m.begin(), m.end(), var);
    auto hi = std::upper_bound(lo, m.end(), var);
    const auto e = hi - lo;
    if (e == 0) continue;
    Monomial rest(m.begin(), lo);
    rest.insert(rest.end(), lo + 1, m.end());
    d.add_term(rest, c * static_cast<long>(e));
  }
  return d;
}

Rational PolyQ::evaluate(std::span<const Rational> point) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational prod = c;
    for (auto v : m) {
      if (v >= point.size()) throw std::out_of_range("evaluate: point has too few coordinates");
      prod *= point[v];
      if (sgn(prod) == 0) break;
    }
    sum += prod;
  }
  return sum;
}

Rational PolyQ::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyQ& PolyQ::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  PolyQ out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

std::string PolyQ::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    if (a != 1 || m.empty()) os << bethegt::to_string(a) << (m.empty() ? "" : "*");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) os << "*";
      os << lie::pair_name(lie::basis_pair(m[i]));
    }
  }
  return os.str();
}

std::vector<Rational> point_of(const LieElement& x) {
  std::vector<Rational> p(lie::algebra_dim(x.rank()));
  for (const auto& [a, c] : x.coeffs()) p[a] = c;
  return p;
}

// ---------------------------------------------------------------------------
// Poisson bracket

PolyQ bracket_with_generator(const Algebra& alg, std::size_t a, const PolyQ& g) {
  PolyQ out;
  for (const auto& [m, c] : g.terms()) {
    for (std::size_t p = 0; p < m.size(); ++p) {
      const auto& terms = alg.bracket(a, m[p]);
      if (terms.empty()) continue;
      Monomial rest;
      rest.reserve(m.size());
      rest.insert(rest.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(p));
      rest.insert(rest.end(), m.begin() + static_cast<std::ptrdiff_t>(p) + 1, m.end());
      for (const auto& t : terms) {
        Monomial nm = rest;
        nm.insert(std::upper_bound(nm.begin(), nm.end(), t.index), static_cast<std::uint16_t>(t.index));
        out.add_term(nm, c * t.coeff);
      }
    }
  }
  return out;
}

PolyQ poisson_bracket(const Algebra& alg, const PolyQ& f, const PolyQ& g) {
  if (f.variable_bound() > alg.dim() || g.variable_bound() > alg.dim())
    throw std::invalid_argument("poisson_bracket: rank mismatch");
  std::vector<std::uint16_t> vars;
  for (const auto& [m, c] : f.terms()) vars.insert(vars.end(), m.begin(), m.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  PolyQ out;
  for (auto a : vars) {
    PolyQ h = bracket_with_generator(alg, a, g);
    if (h.is_zero()) continue;
    out += f.derivative(a) * h;
  }
  return out;
}

PolyQ poisson_bracket(const PolyQ& f, const PolyQ& g, int n) { return poisson_bracket(Algebra(n), f, g); }

// ---------------------------------------------------------------------------
// Matrices

const PolyQ& PolyMatrix::at(int i, int j) const {
  const int k = static_cast<int>(size_ / 2);
  return (*this)(lie::matrix_slot(i, k), lie::matrix_slot(j, k));
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("PolyMatrix product: size mismatch");
  const std::size_t n = a.size();
  PolyMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b(k, j).is_zero()) continue;
        c(i, j) += a(i, k) * b(k, j);
      }
    }
  return c;
}

PolyMatrix f_matrix(int k) {
  PolyMatrix f(2 * static_cast<std::size_t>(k));
  for (std::size_t r = 0; r < f.size(); ++r)
    for (std::size_t c = 0; c < f.size(); ++c) f(r, c) = PolyQ::coordinate(lie::slot_index(r, k), lie::slot_index(c, k));
  return f;
}

PolyMatrix skew_f_matrix(int k) {
  PolyMatrix m(2 * static_cast<std::size_t>(k));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c)
      m(r, c) = PolyQ::coordinate(lie::slot_index(r, k), -lie::slot_index(c, k));
  return m;
}

namespace {

void check_level(int k, int n) {
  if (n < 1 || k < 1 || k > n)
    throw std::out_of_range("level k=" + std::to_string(k) + " out of range for rank " + std::to_string(n));
}

class PfaffianExpansion {
 public:
  explicit PfaffianExpansion(const PolyMatrix& m) : m_(m) {}

  PolyQ operator()(std::uint64_t mask) {
    if (mask == 0) return PolyQ::constant(1);
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int first = std::countr_zero(mask);
    const std::uint64_t rest = mask & ~(std::uint64_t{1} << first);
    PolyQ out;
    bool positive = true;
    for (std::uint64_t r = rest; r != 0; r &= r - 1) {
      const int j = std::countr_zero(r);
      const PolyQ& entry = m_(static_cast<std::size_t>(first), static_cast<std::size_t>(j));
      if (!entry.is_zero()) {
        const PolyQ minor = (*this)(rest & ~(std::uint64_t{1} << j));
        if (!minor.is_zero()) {
          PolyQ term = entry * minor;
          if (positive) out += term;
          else out -= term;
        }
      }
      positive = !positive;
    }
    memo_.emplace(mask, out);
    return out;
  }

 private:
  const PolyMatrix& m_;
  std::unordered_map<std::uint64_t, PolyQ> memo_;
};

}  // namespace

PolyQ pfaffian(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd size " + std::to_string(n));
  if (n > 62) throw std::invalid_argument("pfaffian: matrix too large");
  for (std::size_t i = 0; i < n; ++i) {
    if (!m(i, i).is_zero()) throw std::invalid_argument("pfaffian: nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(m(i, j) + m(j, i)).is_zero()) throw std::invalid_argument("pfaffian: matrix is not skew-symmetric");
  }
  PfaffianExpansion expand(m);
  return expand(n == 0 ? 0 : (std::uint64_t{1} << n) - 1);
}

PolyQ trace_power(int k, int m, int n) {
  check_level(k, n);
  if (m < 1) throw std::out_of_range("trace_power requires m >= 1");
  const PolyMatrix f = f_matrix(k);
  PolyMatrix p = f;
  for (int i = 1; i < m; ++i) p = p * f;
  PolyQ tr;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (!p(a, b).is_zero() && !p(b, a).is_zero()) tr += p(a, b) * p(b, a);
  return tr;
}

PolyQ corner_entry(int k, int m, int n) {
  check_level(k, n);
  if (m < 1) throw std::out_of_range("corner_entry requires m >= 1");
  const PolyMatrix f = f_matrix(k);
  const std::size_t row = lie::matrix_slot(k, k);
  std::vector<PolyQ> v(f.size());
  for (std::size_t c = 0; c < f.size(); ++c) v[c] = f(row, c);
  for (int step = 1; step < 2 * m - 1; ++step) {
    std::vector<PolyQ> next(f.size());
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (v[a].is_zero()) continue;
      for (std::size_t c = 0; c < f.size(); ++c)
        if (!f(a, c).is_zero()) next[c] += v[a] * f(a, c);
    }
    v = std::move(next);
  }
  return v[row];
}

PolyQ pfaffian_invariant(int k, int n) {
  check_level(k, n);
  PolyQ pf = pfaffian(skew_f_matrix(k));
  Monomial diag;
  for (int i = 1; i <= k; ++i) diag.push_back(static_cast<std::uint16_t>(lie::basis_index({i, i})));
  const Rational lead = pf.coefficient(diag);
  if (sgn(lead) == 0) throw std::logic_error("pfaffian_invariant: diagonal monomial missing");
  if (sgn(lead) < 0) pf *= Rational(-1);
  return pf;
}

PolyQ directional_derivative(const PolyQ& f, const LieElement& mu) {
  PolyQ out;
  for (const auto& [a, c] : mu.coeffs()) out += c * f.derivative(a);
  return out;
}

std::vector<PolyQ> mf_generators(int n, const LieElement& mu) {
  if (mu.rank() != n) throw std::invalid_argument("mf_generators: rank mismatch");
  for (const auto& [a, c] : mu.coeffs()) {
    const IndexPair p = lie::basis_pair(a);
    if (p.i != p.j) throw std::invalid_argument("mf_generators: mu must lie in the diagonal Cartan subalgebra");
  }
  std::vector<PolyQ> invariants;
  for (int m = 1; m < n; ++m) invariants.push_back(trace_power(n, m, n));
  invariants.push_back(pfaffian_invariant(n, n));
  std::vector<PolyQ> out;
  for (const auto& s : invariants) {
    PolyQ d = s;
    const int deg = s.degree();
    for (int order = 0; order < deg; ++order) {
      out.push_back(d);
      d = directional_derivative(d, mu);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Differentials

Rational Covector::operator[](std::size_t index) const {
  auto it = coeffs.find(index);
  return it == coeffs.end() ? Rational(0) : it->second;
}

Rational Covector::coord(int i, int j) const {
  const auto c = lie::canonicalize(i, j);
  if (c.sign == 0) return 0;
  return c.sign * (*this)[lie::basis_index(c.pair)];
}

namespace {

std::map<std::size_t, Rational> gradient_at(const PolyQ& f, std::span<const Rational> point) {
  std::map<std::size_t, Rational> grad;
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (p > 0 && m[p] == m[p - 1]) continue;
      std::size_t e = 1;
      while (p + e < m.size() && m[p + e] == m[p]) ++e;
      Rational prod = c * static_cast<unsigned long>(e);
      bool skipped = false;
      for (std::size_t q = 0; q < m.size() && sgn(prod) != 0; ++q) {
        if (!skipped && q == p) {
          skipped = true;
          continue;
        }
        if (m[q] >= point.size()) throw std::out_of_range("differential: point has too few coordinates");
        prod *= point[m[q]];
      }
      if (sgn(prod) == 0) continue;
      auto [it, inserted] = grad.try_emplace(m[p], prod);
      if (!inserted) {
        it->second += prod;
        if (sgn(it->second) == 0) grad.erase(it);
      }
    }
  }
  return grad;
}

}  // namespace

Covector differential(const PolyQ& f, const LieElement& pt) {
  if (f.variable_bound() > lie::algebra_dim(pt.rank()))
    throw std::invalid_argument("differential: polynomial uses coordinates outside the point's algebra");
  const auto point = point_of(pt);
  return Covector{gradient_at(f, point)};
}

std::size_t jacobian_rank(std::span<const PolyQ> fs, const LieElement& pt) {
  const std::size_t d = lie::algebra_dim(pt.rank());
  Matrix<Rational> jac(fs.size(), d);
  for (std::size_t r = 0; r < fs.size(); ++r) {
    const Covector c = differential(fs[r], pt);
    for (const auto& [a, v] : c.coeffs) jac(r, a) = v;
  }
  return rank(std::move(jac));
}

// ---------------------------------------------------------------------------
// Families

std::string FamilyMember::name() const {
  switch (kind) {
    case InvariantKind::trace_power: return "x[" + std::to_string(k) + "," + std::to_string(m) + "]";
    case InvariantKind::corner_entry: return "y[" + std::to_string(k) + "," + std::to_string(m) + "]";
    case InvariantKind::pfaffian: return "p[" + std::to_string(k) + "]";
  }
  return {};
}

std::vector<FamilyMember> level_family(int k, int n) {
  check_level(k, n);
  std::vector<FamilyMember> out;
  for (int m = 1; m < k; ++m) out.push_back({InvariantKind::trace_power, k, m, 2 * m, trace_power(k, m, n)});
  for (int m = 1; m < k; ++m) out.push_back({InvariantKind::corner_entry, k, m, 2 * m - 1, corner_entry(k, m, n)});
  out.push_back({InvariantKind::pfaffian, k, 0, k, pfaffian_invariant(k, n)});
  return out;
}

std::vector<FamilyMember> invariant_family(int n) {
  std::vector<FamilyMember> out;
  for (int k = 1; k <= n; ++k) {
    auto level = level_family(k, n);
    out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
  }
  return out;
}

bool in_u_tilde(IndexPair p) { return p.i > 0 && std::abs(p.j) <= p.i && p.j != -p.i; }

bool u_order_greater(IndexPair a, IndexPair b) { return a.i > b.i || (a.i == b.i && a.j < b.j); }

std::optional<IndexPair> leading_u_term(const Covector& c) {
  std::optional<IndexPair> best;
  for (const auto& [a, v] : c.coeffs) {
    const IndexPair p = lie::basis_pair(a);
    if (!in_u_tilde(p)) continue;
    if (!best || u_order_greater(p, *best)) best = p;
  }
  return best;
}

std::vector<LeadingTermCheck> verify_leading_terms(int n) {
  if (n < 2) throw std::invalid_argument("verify_leading_terms requires n >= 2");
  const LieElement e = lie::principal_nilpotent(n);
  std::vector<LeadingTermCheck> out;
  for (const auto& member : level_family(n, n)) {
    LeadingTermCheck check;
    check.name = member.name();
    const int d = member.degree;
    // A degree-d weight-zero polynomial can only pick up dF_{n,j} of
    // principal height 1 - d at e~.
    if (d < n) {
      check.expected = {n, n - d + 1};
    } else if (d > n) {
      check.expected = {n, -(d - n + 1)};
    } else {
      check.expected = {n, -1};
      check.partner_ratio = member.kind == InvariantKind::pfaffian ? -1 : 1;
    }
    const Covector c = differential(member.poly, e);
    check.found = leading_u_term(c);
    check.ok = check.found && *check.found == check.expected;
    if (check.ok && check.partner_ratio) {
      const Rational lead = c.coord(n, -1);
      check.ok = sgn(lead) != 0 && c.coord(n, 1) == *check.partner_ratio * lead;
    }
    out.push_back(std::move(check));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic skew matrices and the Pfaffian differential

std::size_t skew_variable(std::size_t a, std::size_t b, int k) {
  const std::size_t size = 2 * static_cast<std::size_t>(k);
  if (a >= b || b >= size) throw std::out_of_range("skew_variable expects a < b < 2k");
  return a * size - a * (a + 1) / 2 + (b - a - 1);
}

PolyMatrix generic_skew_matrix(int k) {
  PolyMatrix m(2 * static_cast<std::size_t>(k));
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      m(a, b) = PolyQ::variable(skew_variable(a, b, k));
      m(b, a) = PolyQ::variable(skew_variable(a, b, k), -1);
    }
  return m;
}

namespace {

// Sets M_{i,j} = value in skew-variable coordinates.
void set_skew(std::vector<Rational>& point, int i, int j, const Rational& value, int k) {
  const std::size_t a = lie::matrix_slot(i, k);
  const std::size_t b = lie::matrix_slot(j, k);
  if (a < b) point[skew_variable(a, b, k)] = value;
  else point[skew_variable(b, a, k)] = -value;
}

}  // namespace

std::vector<Rational> skew_e_prime(int k) {
  if (k < 2) throw std::invalid_argument("skew_e_prime requires k >= 2");
  const std::size_t size = 2 * static_cast<std::size_t>(k);
  std::vector<Rational> point(size * (size - 1) / 2);
  for (int i = 1; i < k; ++i) set_skew(point, i, -i - 1, 1, k);
  set_skew(point, -1, -2, 1, k);
  return point;
}

PfaffianDifferentialCheck verify_pfaffian_differential(int k) {
  PfaffianDifferentialCheck out;
  const PolyQ pf = pfaffian(generic_skew_matrix(k));
  const auto point = skew_e_prime(k);
  out.gradient = gradient_at(pf, point);

  // dM_{k,1} - dM_{k,-1} in skew-variable coordinates.
  std::vector<Rational> target(point.size());
  auto add_d = [&](int i, int j, int s) {
    const std::size_t a = lie::matrix_slot(i, k);
    const std::size_t b = lie::matrix_slot(j, k);
    if (a < b) target[skew_variable(a, b, k)] += s;
    else target[skew_variable(b, a, k)] -= s;
  };
  add_d(k, 1, 1);
  add_d(k, -1, -1);

  const std::size_t pivot = lie::matrix_slot(-1, k) < lie::matrix_slot(k, k)
                                ? skew_variable(lie::matrix_slot(-1, k), lie::matrix_slot(k, k), k)
                                : skew_variable(lie::matrix_slot(k, k), lie::matrix_slot(-1, k), k);
  const auto it = out.gradient.find(pivot);
  if (it == out.gradient.end()) return out;
  out.factor = it->second / target[pivot];
  out.ok = true;
  for (std::size_t v = 0; v < target.size(); ++v) {
    auto g = out.gradient.find(v);
    const Rational got = g == out.gradient.end() ? Rational(0) : g->second;
    if (got != out.factor * target[v]) out.ok = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poincare series

namespace {

void divide_by_one_minus_power(std::vector<Integer>& series, int d, int times) {
  for (int t = 0; t < times; ++t)
    for (std::size_t i = static_cast<std::size_t>(d); i < series.size(); ++i) series[i] += series[i - static_cast<std::size_t>(d)];
}

std::vector<Integer> unit_series(int max_degree) {
  std::vector<Integer> s(static_cast<std::size_t>(max_degree) + 1, 0);
  s[0] = 1;
  return s;
}

}  // namespace

PoincareReport poincare_check(int n, int max_degree) {
  if (n < 1) throw std::invalid_argument("poincare_check requires n >= 1");
  if (max_degree < 1) throw std::invalid_argument("poincare_check requires maxdeg >= 1");
  PoincareReport r;
  r.n = n;
  r.max_degree = max_degree;
  for (int k = 1; k <= n; ++k) {
    for (int m = 1; m < k; ++m) {
      r.generator_degrees.push_back(2 * m - 1);
      r.generator_degrees.push_back(2 * m);
    }
    r.generator_degrees.push_back(k);
  }
  std::sort(r.generator_degrees.begin(), r.generator_degrees.end());

  r.limit_series = unit_series(max_degree);
  for (int k = 1; k < n; ++k) {
    divide_by_one_minus_power(r.limit_series, 2 * k - 1, n - k);
    divide_by_one_minus_power(r.limit_series, 2 * k, n - k);
  }
  for (int k = 1; k <= n; ++k) divide_by_one_minus_power(r.limit_series, k, 1);

  r.family_series = unit_series(max_degree);
  for (int d : r.generator_degrees) divide_by_one_minus_power(r.family_series, d, 1);

  std::vector<int> invariant_degrees;
  for (int m = 1; m < n; ++m) invariant_degrees.push_back(2 * m);
  invariant_degrees.push_back(n);
  r.generic_series = unit_series(max_degree);
  for (int deg : invariant_degrees)
    for (int j = 1; j <= deg; ++j) divide_by_one_minus_power(r.generic_series, j, 1);

  r.equal = r.limit_series == r.family_series && r.limit_series == r.generic_series;
  return r;
}

}  // namespace bethegt::poly
