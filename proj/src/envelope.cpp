#include "bethegt/envelope.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bethegt::env {

PBWElement PBWElement::scalar(const Rational& c) {
  PBWElement e;
  e.add_term({}, c);
  return e;
}

void PBWElement::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int PBWElement::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

PBWElement& PBWElement::operator+=(const PBWElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PBWElement& PBWElement::operator-=(const PBWElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PBWElement& PBWElement::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::string PBWElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << bethegt::to_string(c) << ")";
    for (auto g : m) os << " " << lie::pair_name(lie::basis_pair(g));
  }
  return os.str();
}

poly::PolyQ symbol(const PBWElement& a) {
  const int d = a.degree();
  poly::PolyQ p;
  for (const auto& [m, c] : a.terms())
    if (static_cast<int>(m.size()) == d) p.add_term(m, c);
  return p;
}

std::size_t Envelope::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull ^ k.gen;
  for (auto v : k.mono) h = (h ^ v) * 0x100000001b3ull;
  return h;
}

Envelope::Envelope(int n) : alg_(n) {}

PBWElement Envelope::generator(std::size_t index) const {
  if (index >= alg_.dim()) throw std::out_of_range("generator index out of range");
  PBWElement e;
  e.add_term({static_cast<std::uint16_t>(index)}, 1);
  return e;
}

PBWElement Envelope::generator(int i, int j) const {
  lie::SignedIndex(i, rank());
  lie::SignedIndex(j, rank());
  const auto c = lie::canonicalize(i, j);
  PBWElement e;
  if (c.sign != 0) e.add_term({static_cast<std::uint16_t>(lie::basis_index(c.pair))}, c.sign);
  return e;
}

const PBWElement& Envelope::times_generator(const Monomial& m, std::uint16_t g) {
  Key key{m, g};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  PBWElement out;
  if (m.empty() || m.back() <= g) {
    Monomial nm = m;
    nm.push_back(g);
    out.add_term(nm, 1);
  } else {
    // m = m' a with a > g:  m' a g = (m' g) a + m' [a, g].
    const std::uint16_t a = m.back();
    const Monomial prefix(m.begin(), m.end() - 1);
    const PBWElement swapped = times_generator(prefix, g);
    for (const auto& [mm, c] : swapped.terms()) {
      const PBWElement& tail = times_generator(mm, a);
      for (const auto& [tm, tc] : tail.terms()) out.add_term(tm, c * tc);
    }
    for (const auto& t : alg_.bracket(a, g)) {
      const PBWElement& lower = times_generator(prefix, static_cast<std::uint16_t>(t.index));
      for (const auto& [lm, lc] : lower.terms()) out.add_term(lm, lc * t.coeff);
    }
  }
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

PBWElement Envelope::right_multiply(const PBWElement& a, std::uint16_t g) {
  PBWElement out;
  for (const auto& [m, c] : a.terms()) {
    const PBWElement& prod = times_generator(m, g);
    for (const auto& [pm, pc] : prod.terms()) out.add_term(pm, c * pc);
  }
  return out;
}

void Envelope::check_element(const PBWElement& a) const {
  for (const auto& [m, c] : a.terms())
    if (!m.empty() && m.back() >= alg_.dim()) throw std::invalid_argument("PBW element does not belong to this algebra");
}

PBWElement Envelope::normal_form(std::span<const std::size_t> word) {
  PBWElement out = PBWElement::scalar(1);
  for (auto g : word) {
    if (g >= alg_.dim()) throw std::out_of_range("word letter out of range");
    out = right_multiply(out, static_cast<std::uint16_t>(g));
  }
  return out;
}

PBWElement Envelope::multiply(const PBWElement& a, const PBWElement& b) {
  check_element(a);
  check_element(b);
  PBWElement out;
  for (const auto& [mb, cb] : b.terms()) {
    PBWElement partial = a;
    for (auto g : mb) partial = right_multiply(partial, g);
    out += cb * partial;
  }
  return out;
}

PBWElement Envelope::commutator(const PBWElement& a, const PBWElement& b) {
  return multiply(a, b) - multiply(b, a);
}

PBWElement Envelope::gelfand_invariant(int k, int m) {
  if (k < 1 || k > rank()) throw std::out_of_range("gelfand_invariant: level out of range");
  if (m < 1) throw std::out_of_range("gelfand_invariant: m must be positive");
  const std::size_t size = 2 * static_cast<std::size_t>(k);
  // Entry (a, b) of F^(k) as a signed generator.
  std::vector<lie::Canonical> entries(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) entries[a * size + b] = lie::canonicalize(lie::slot_index(a, k), lie::slot_index(b, k));

  PBWElement trace;
  for (std::size_t row = 0; row < size; ++row) {
    std::vector<PBWElement> v(size);
    v[row] = PBWElement::scalar(1);
    for (int step = 0; step < 2 * m; ++step) {
      std::vector<PBWElement> next(size);
      for (std::size_t a = 0; a < size; ++a) {
        if (v[a].is_zero()) continue;
        for (std::size_t b = 0; b < size; ++b) {
          const auto& e = entries[a * size + b];
          if (e.sign == 0) continue;
          const auto g = static_cast<std::uint16_t>(lie::basis_index(e.pair));
          next[b] += Rational(e.sign) * right_multiply(v[a], g);
        }
      }
      v = std::move(next);
    }
    trace += v[row];
  }
  return trace;
}

PBWElement Envelope::symmetrize(const poly::PolyQ& f) {
  if (f.variable_bound() > alg_.dim()) throw std::invalid_argument("symmetrize: polynomial outside this algebra");
  PBWElement out;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::size_t> word(m.begin(), m.end());
    std::vector<std::vector<std::size_t>> orderings;
    do {
      orderings.push_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    const Rational weight = c / Rational(static_cast<long>(orderings.size()));
    for (const auto& w : orderings) out += weight * normal_form(w);
  }
  return out;
}

}  // namespace bethegt::env
