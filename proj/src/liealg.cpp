#include "bethegt/liealg.hpp"

#include <cstdlib>
#include <stdexcept>

namespace bethegt::lie {

SignedIndex::SignedIndex(int value, int n) : value_(value) {
  if (value == 0 || std::abs(value) > n)
    throw std::out_of_range("signed index " + std::to_string(value) + " out of range for rank " + std::to_string(n));
}

bool is_canonical(IndexPair p) {
  return std::abs(p.i) > std::abs(p.j) || (p.i == p.j && p.i > 0);
}

Canonical canonicalize(int i, int j) {
  if (i == 0 || j == 0) throw std::out_of_range("signed index 0");
  if (j == -i) return {0, {i, j}};
  if (is_canonical({i, j})) return {1, {i, j}};
  return {-1, {-j, -i}};
}

std::size_t algebra_dim(int n) {
  if (n < 0) throw std::invalid_argument("negative rank");
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(2 * n - 1);
}

std::size_t basis_index(IndexPair p) {
  if (!is_canonical(p)) throw std::invalid_argument("basis_index: pair " + pair_name(p) + " is not canonical");
  const int a = std::abs(p.i);
  const std::size_t offset = algebra_dim(a - 1);
  if (p.i == p.j) return offset;
  const int b = std::abs(p.j);
  const std::size_t slot = (p.i > 0 ? 0 : 2) + (p.j > 0 ? 0 : 1);
  return offset + 1 + 4 * static_cast<std::size_t>(b - 1) + slot;
}

IndexPair basis_pair(std::size_t index) {
  int a = 1;
  while (algebra_dim(a) <= index) ++a;
  std::size_t r = index - algebra_dim(a - 1);
  if (r == 0) return {a, a};
  r -= 1;
  const int b = static_cast<int>(r / 4) + 1;
  const std::size_t slot = r % 4;
  return {slot < 2 ? a : -a, slot % 2 == 0 ? b : -b};
}

std::size_t matrix_slot(int i, int n) {
  if (i == 0 || std::abs(i) > n) throw std::out_of_range("index " + std::to_string(i) + " out of range for rank " + std::to_string(n));
  return static_cast<std::size_t>(i < 0 ? i + n : i + n - 1);
}

int slot_index(std::size_t slot, int n) {
  const int s = static_cast<int>(slot);
  return s < n ? s - n : s - n + 1;
}

namespace {

void push_term(std::vector<StructureTerm>& out, int i, int j, int coeff) {
  const Canonical c = canonicalize(i, j);
  if (c.sign == 0) return;
  const std::size_t idx = basis_index(c.pair);
  for (auto& t : out) {
    if (t.index == idx) {
      t.coeff += c.sign * coeff;
      return;
    }
  }
  out.push_back({idx, c.sign * coeff});
}

}  // namespace

Algebra::Algebra(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("o_2n requires n >= 1");
  const std::size_t d = algebra_dim(n);
  basis_.reserve(d);
  for (std::size_t a = 0; a < d; ++a) basis_.push_back(basis_pair(a));
  table_.resize(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto [i, j] = basis_[a];
    for (std::size_t b = 0; b < d; ++b) {
      const auto [k, l] = basis_[b];
      auto& out = table_[a * d + b];
      if (j == k) push_term(out, i, l, 1);
      if (l == i) push_term(out, k, j, -1);
      if (j == -l) push_term(out, i, -k, -1);
      if (i == -k) push_term(out, -l, j, 1);
      std::erase_if(out, [](const StructureTerm& t) { return t.coeff == 0; });
    }
  }
}

Algebra make_algebra(int n) { return Algebra(n); }

LieElement LieElement::generator(int i, int j, int n) {
  SignedIndex(i, n);
  SignedIndex(j, n);
  LieElement x(n);
  const Canonical c = canonicalize(i, j);
  if (c.sign != 0) x.add(basis_index(c.pair), Rational(c.sign));
  return x;
}

LieElement LieElement::from_matrix(const Matrix<Rational>& m, int n) {
  if (m.rows() != static_cast<std::size_t>(2 * n) || m.cols() != m.rows())
    throw std::invalid_argument("from_matrix: expected a 2n x 2n matrix");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != -m(m.rows() - 1 - c, m.rows() - 1 - r))
        throw std::invalid_argument("from_matrix: matrix is not in o_2n");
  LieElement x(n);
  for (std::size_t a = 0; a < algebra_dim(n); ++a) {
    const IndexPair p = basis_pair(a);
    const Rational& c = m(matrix_slot(p.i, n), matrix_slot(p.j, n));
    if (sgn(c) != 0) x.add(a, c);
  }
  return x;
}

Rational LieElement::coeff(std::size_t index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational LieElement::coord(int i, int j) const {
  SignedIndex(i, n_);
  SignedIndex(j, n_);
  const Canonical c = canonicalize(i, j);
  if (c.sign == 0) return 0;
  return c.sign * coeff(basis_index(c.pair));
}

void LieElement::add(std::size_t index, const Rational& c) {
  if (index >= algebra_dim(n_)) throw std::out_of_range("basis index out of range for rank " + std::to_string(n_));
  if (sgn(c) == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) coeffs_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (o.n_ != n_) throw std::invalid_argument("rank mismatch");
  for (const auto& [k, c] : o.coeffs_) add(k, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  if (o.n_ != n_) throw std::invalid_argument("rank mismatch");
  for (const auto& [k, c] : o.coeffs_) add(k, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= s;
  return *this;
}

Matrix<Rational> matrix_of(const LieElement& x) {
  const int n = x.rank();
  Matrix<Rational> m(2 * n, 2 * n);
  for (const auto& [a, c] : x.coeffs()) {
    const IndexPair p = basis_pair(a);
    m(matrix_slot(p.i, n), matrix_slot(p.j, n)) += c;
    m(matrix_slot(-p.j, n), matrix_slot(-p.i, n)) -= c;
  }
  return m;
}

LieElement bracket(const Algebra& alg, const LieElement& a, const LieElement& b) {
  if (a.rank() != b.rank() || a.rank() != alg.rank()) throw std::invalid_argument("bracket: rank mismatch");
  LieElement out(a.rank());
  for (const auto& [i, ci] : a.coeffs())
    for (const auto& [j, cj] : b.coeffs())
      for (const auto& t : alg.bracket(i, j)) out.add(t.index, ci * cj * t.coeff);
  return out;
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("bracket: rank mismatch");
  return bracket(Algebra(a.rank()), a, b);
}

LieElement principal_nilpotent(int n) {
  if (n < 2) throw std::invalid_argument("principal_nilpotent requires n >= 2");
  LieElement e(n);
  for (int i = 1; i < n; ++i) e += LieElement::generator(i, i + 1, n);
  e += LieElement::generator(-1, 2, n);
  return e;
}

LieElement mu_of_epsilon(int n, const Rational& eps) {
  LieElement mu(n);
  Rational power = 1;
  for (int i = n; i >= 1; --i) {
    mu.add(basis_index({i, i}), power);
    power *= eps;
  }
  return mu;
}

Matrix<Rational> ad_matrix(const Algebra& alg, const LieElement& x) {
  const std::size_t d = alg.dim();
  Matrix<Rational> ad(d, d);
  for (std::size_t b = 0; b < d; ++b)
    for (const auto& [a, c] : x.coeffs())
      for (const auto& t : alg.bracket(a, b)) ad(t.index, b) += c * t.coeff;
  return ad;
}

std::size_t centralizer_dim(const LieElement& x) {
  const Algebra alg(x.rank());
  return alg.dim() - rank(ad_matrix(alg, x));
}

std::string pair_name(IndexPair p) { return "F(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")"; }

}  // namespace bethegt::lie
