#include "bethegt/gtpattern.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bethegt::gt {

HalfInt::HalfInt(const Rational& r) {
  Rational twice = r * 2;
  twice.canonicalize();
  if (twice.get_den() != 1) throw std::invalid_argument("value " + bethegt::to_string(r) + " is not a half-integer");
  if (!twice.get_num().fits_slong_p()) throw std::out_of_range("half-integer too large");
  twice_ = twice.get_num().get_si();
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::string WeightD::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ",";
    s += entries[i].to_string();
  }
  return s + ")";
}

WeightD parse_weight(std::string_view text, bool half_shorthand) {
  Row row;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    Rational r = parse_rational(item);
    if (half_shorthand) r /= 2;
    row.emplace_back(r);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  WeightD w(std::move(row));
  if (!same_parity(w.entries)) throw std::invalid_argument("weight mixes integer and half-integer entries");
  return w;
}

WeightD zero_weight(int n) { return WeightD(Row(static_cast<std::size_t>(n), HalfInt(0))); }

bool same_parity(const Row& r) {
  return std::all_of(r.begin(), r.end(), [&](HalfInt h) { return h.is_integer() == r.front().is_integer(); });
}

bool is_dominant(const WeightD& w) {
  const Row& e = w.entries;
  if (e.empty() || !same_parity(e)) return false;
  if (e.size() >= 2 && !(-abs(e[0]) >= e[1])) return false;
  for (std::size_t i = 2; i < e.size(); ++i)
    if (e[i - 1] < e[i]) return false;
  return true;
}

Integer weyl_dim(const WeightD& w) {
  if (!is_dominant(w)) throw std::invalid_argument("weyl_dim: weight " + w.to_string() + " is not dominant");
  const int n = w.rank();
  std::vector<Rational> l(n);
  for (int i = 0; i < n; ++i) l[i] = -w.entries[n - 1 - i].value() + (n - 1 - i);
  Rational num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= l[i] * l[i] - l[j] * l[j];
      const int ri = n - 1 - i, rj = n - 1 - j;
      den *= ri * ri - rj * rj;
    }
  Rational d = num / den;
  d.canonicalize();
  if (d.get_den() != 1) throw std::logic_error("weyl_dim: non-integral dimension");
  return d.get_num();
}

std::vector<WeightD> dominant_weights(int n, int bound, bool include_half) {
  if (n < 1 || bound < 0) throw std::invalid_argument("dominant_weights: bad arguments");
  std::vector<WeightD> out;
  for (int parity = 0; parity < (include_half ? 2 : 1); ++parity) {
    std::vector<std::int64_t> values;
    for (std::int64_t t = -2 * bound; t <= 2 * bound; ++t)
      if ((t % 2 != 0) == (parity == 1)) values.push_back(t);
    Row row(n);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        WeightD w(row);
        if (is_dominant(w)) out.push_back(std::move(w));
        return;
      }
      for (auto t : values) {
        row[i] = HalfInt::from_twice(t);
        if (i == 1 && !(-abs(row[0]) >= row[1])) continue;
        if (i >= 2 && row[i - 1] < row[i]) continue;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

bool BranchParams::admissible() const {
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] < beta[i]) return false;
  return true;
}

Integer BranchParams::multiplicity() const {
  if (!admissible()) return 0;
  Integer m = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) m *= (alpha[i] - beta[i]).twice() / 2 + 1;
  return m;
}

HalfInt BranchParams::primed_low(std::size_t i) const { return beta.at(i) + HalfInt(static_cast<int>(i)) + kHalf; }
HalfInt BranchParams::primed_high(std::size_t i) const { return alpha.at(i) + HalfInt(static_cast<int>(i)) + kHalf; }

BranchParams branching_params(const WeightD& lambda, const WeightD& mu) {
  const int n = lambda.rank();
  if (n < 2 || mu.rank() != n - 1) throw std::invalid_argument("branching_params: expected ranks n and n-1 with n >= 2");
  Row all = lambda.entries;
  all.insert(all.end(), mu.entries.begin(), mu.entries.end());
  if (!same_parity(all)) throw std::invalid_argument("branching_params: parity mismatch between lambda and mu");
  const Row& l = lambda.entries;
  const Row& m = mu.entries;
  BranchParams p;
  p.alpha.resize(n - 1);
  p.beta.resize(n - 1);
  p.alpha[0] = std::min(-abs(l[0]), -abs(m[0])) - kHalf;
  p.alpha0 = p.alpha[0] + abs(l[0] + m[0]);
  for (int i = 2; i <= n - 1; ++i) p.alpha[i - 1] = std::min(l[i - 1], m[i - 1]) - HalfInt(i) + kHalf;
  for (int i = 1; i <= n - 1; ++i) {
    const HalfInt top = i < n - 1 ? std::max(l[i], m[i]) : l[i];
    p.beta[i - 1] = top - HalfInt(i) + kHalf;
  }
  return p;
}

std::vector<BranchTerm> branch(const WeightD& lambda) {
  const int n = lambda.rank();
  if (n < 2) throw std::invalid_argument("branch: rank must be at least 2");
  if (!is_dominant(lambda)) throw std::invalid_argument("branch: weight " + lambda.to_string() + " is not dominant");
  const std::int64_t bound = abs(lambda.entries.back()).twice();
  std::vector<BranchTerm> out;
  for (const auto& mu : dominant_weights(n - 1, static_cast<int>((bound + 1) / 2), true)) {
    if (mu.is_half() != lambda.is_half()) continue;
    const BranchParams p = branching_params(lambda, mu);
    Integer mult = p.multiplicity();
    if (mult > 0) out.push_back({mu, std::move(mult)});
  }
  return out;
}

std::string GTPatternD::to_string() const {
  std::ostringstream os;
  for (int k = rank(); k >= 1; --k) {
    os << WeightD(rows[k - 1]).to_string();
    if (k > 1) os << " " << WeightD(primed[k - 2]).to_string() << " ";
  }
  return os.str();
}

namespace {

// Checks -|upper[0]| >= p[0] >= upper[1] >= p[1] >= ... with `upper` either
// one longer than p (chain closed by upper's last entry) or the same length.
std::string check_chain(const Row& upper, const Row& p, const std::string& name) {
  const std::size_t m = p.size();
  if (m == 0) return {};
  if (!(-abs(upper[0]) >= p[0])) return name + ": -|" + upper[0].to_string() + "| >= " + p[0].to_string() + " fails";
  for (std::size_t i = 1; i < m; ++i) {
    if (!(p[i - 1] >= upper[i])) return name + ": " + p[i - 1].to_string() + " >= " + upper[i].to_string() + " fails";
    if (!(upper[i] >= p[i])) return name + ": " + upper[i].to_string() + " >= " + p[i].to_string() + " fails";
  }
  if (upper.size() > m && !(p[m - 1] >= upper[m])) return name + ": " + p[m - 1].to_string() + " >= " + upper[m].to_string() + " fails";
  return {};
}

}  // namespace

PatternCheck validate_pattern(const GTPatternD& p) {
  const int n = p.rank();
  if (n == 0) return {false, "empty pattern"};
  if (static_cast<int>(p.primed.size()) != n - 1) return {false, "shape: expected " + std::to_string(n - 1) + " primed rows"};
  for (int k = 1; k <= n; ++k)
    if (static_cast<int>(p.rows[k - 1].size()) != k) return {false, "shape: row " + std::to_string(k) + " has wrong length"};
  for (int k = 1; k < n; ++k)
    if (static_cast<int>(p.primed[k - 1].size()) != k) return {false, "shape: primed row " + std::to_string(k) + " has wrong length"};
  Row all;
  for (const auto& r : p.rows) all.insert(all.end(), r.begin(), r.end());
  for (const auto& r : p.primed) all.insert(all.end(), r.begin(), r.end());
  if (!same_parity(all)) return {false, "parity: pattern mixes integers and half-integers"};
  if (!is_dominant(p.top())) return {false, "top row is not dominant"};
  for (int k = n; k >= 2; --k) {
    const Row& primed = p.primed[k - 2];
    if (auto v = check_chain(p.rows[k - 1], primed, "row " + std::to_string(k) + " / primed " + std::to_string(k - 1)); !v.empty())
      return {false, v};
    if (auto v = check_chain(p.rows[k - 2], primed, "row " + std::to_string(k - 1) + " / primed " + std::to_string(k - 1)); !v.empty())
      return {false, v};
  }
  return {};
}

namespace {

std::vector<HalfInt> range(HalfInt lo, HalfInt hi) {
  std::vector<HalfInt> out;
  for (HalfInt v = lo; v <= hi; v = v + HalfInt(1)) out.push_back(v);
  return out;
}

// Rows r with k-1 entries and -|r[0]| >= p[0] >= r[1] >= p[1] >= ... >= r[k-2] >= p[k-2].
std::vector<Row> rows_below(const Row& p) {
  const std::size_t m = p.size();
  std::vector<Row> out;
  Row r(m);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m) {
      out.push_back(r);
      return;
    }
    const std::vector<HalfInt> vals = i == 0 ? range(p[0], -p[0]) : range(p[i], p[i - 1]);
    for (auto v : vals) {
      r[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<Row> primed_rows_between(const Row& upper, const Row& lower) {
  const std::size_t m = lower.size();
  if (upper.size() != m + 1) throw std::invalid_argument("primed_rows_between: lengths must differ by one");
  std::vector<Row> out;
  Row p(m);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m) {
      if (check_chain(lower, p, "").empty()) out.push_back(p);
      return;
    }
    const HalfInt hi = std::min(i == 0 ? -abs(upper[0]) : upper[i], i == 0 ? -abs(lower[0]) : lower[i]);
    const HalfInt lo = std::max(upper[i + 1], i + 1 < m ? lower[i + 1] : upper[i + 1]);
    for (auto v : range(lo, hi)) {
      p[i] = v;
      rec(i + 1);
    }
  };
  if (m > 0) rec(0);
  return out;
}

std::vector<GTPatternD> enumerate_patterns(const WeightD& lambda) {
  if (!is_dominant(lambda)) throw std::invalid_argument("enumerate_patterns: weight " + lambda.to_string() + " is not dominant");
  const int n = lambda.rank();
  std::vector<GTPatternD> out;
  GTPatternD cur;
  cur.rows.assign(n, {});
  cur.primed.assign(n - 1, {});
  cur.rows[n - 1] = lambda.entries;
  std::function<void(int)> rec = [&](int k) {
    if (k == 1) {
      out.push_back(cur);
      return;
    }
    const Row& r = cur.rows[k - 1];
    Row p(k - 1);
    std::function<void(std::size_t)> prime = [&](std::size_t i) {
      if (i == p.size()) {
        cur.primed[k - 2] = p;
        for (auto& below : rows_below(p)) {
          cur.rows[k - 2] = std::move(below);
          rec(k - 1);
        }
        return;
      }
      const HalfInt hi = i == 0 ? -abs(r[0]) : r[i];
      for (auto v : range(r[i + 1], hi)) {
        p[i] = v;
        prime(i + 1);
      }
    };
    prime(0);
  };
  rec(n);
  std::sort(out.begin(), out.end());
  return out;
}

GTPatternD pattern_from_labels(const WeightD& top, const std::vector<LevelLabel>& chain) {
  const int n = top.rank();
  if (n < 1 || static_cast<int>(chain.size()) != n - 1) throw std::invalid_argument("pattern_from_labels: chain length must be rank - 1");
  GTPatternD p;
  p.rows.assign(n, {});
  p.primed.assign(n - 1, {});
  p.rows[n - 1] = top.entries;
  for (int k = n; k >= 2; --k) {
    const LevelLabel& step = chain[n - k];
    if (static_cast<int>(step.primed.size()) != k - 1 || step.next.rank() != k - 1)
      throw std::invalid_argument("pattern_from_labels: step " + std::to_string(n - k) + " has inconsistent shape");
    p.primed[k - 2] = step.primed;
    p.rows[k - 2] = step.next.entries;
  }
  const PatternCheck c = validate_pattern(p);
  if (!c.ok) throw std::invalid_argument("pattern_from_labels: " + c.violation);
  return p;
}

}  // namespace bethegt::gt
