#include "ddim/numpoly.hpp"

#include <algorithm>
#include <numeric>

#include "ddim/errors.hpp"

namespace ddim {

namespace {

void check_vars(const NumericalPolynomial& f, const NumericalPolynomial& g, const char* op) {
  if (f.num_vars() != g.num_vars())
    throw ArgumentError(std::string(op) + ": variable count mismatch (" +
                        std::to_string(f.num_vars()) + " vs " + std::to_string(g.num_vars()) +
                        ")");
}

std::vector<int> merged_bounds(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

// Coefficients of C(t+i, i) = (t+1)...(t+i)/i! in powers of t.
std::vector<Rational> binomial_basis_in_powers(int i) {
  std::vector<Rational> poly{Rational(1)};
  for (int j = 1; j <= i; ++j) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t e = 0; e < poly.size(); ++e) {
      next[e] += poly[e] * j;
      next[e + 1] += poly[e];
    }
    poly = std::move(next);
  }
  Integer fact = 1;
  for (int j = 2; j <= i; ++j) fact *= j;
  for (auto& c : poly) c /= fact;
  return poly;
}

std::string var_name(std::size_t var, std::size_t num_vars) {
  return num_vars == 1 ? std::string("t") : "t" + std::to_string(var + 1);
}

// Joins signed summands as "a + b - c".
std::string join_signed(const std::vector<std::pair<bool, std::string>>& parts) {
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [negative, body] = parts[i];
    if (i == 0)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace

NumericalPolynomial::NumericalPolynomial(std::vector<int> degree_bounds)
    : bounds_(std::move(degree_bounds)) {
  for (int b : bounds_)
    if (b < 0) throw ArgumentError("negative degree bound");
}

NumericalPolynomial::NumericalPolynomial(std::vector<int> degree_bounds,
                                         std::map<MultiIndex, Integer> coeffs)
    : NumericalPolynomial(std::move(degree_bounds)) {
  for (auto& [index, a] : coeffs) {
    if (a == 0) continue;
    if (index.size() != bounds_.size())
      throw ArgumentError("multi-index " + to_string(index) + " has wrong length");
    for (std::size_t k = 0; k < index.size(); ++k)
      if (index[k] < 0 || index[k] > bounds_[k])
        throw ArgumentError("multi-index " + to_string(index) + " exceeds degree bounds");
    coeffs_.emplace(index, a);
  }
}

NumericalPolynomial NumericalPolynomial::constant(std::size_t num_vars, const Integer& value) {
  std::map<MultiIndex, Integer> c;
  c.emplace(MultiIndex(num_vars, 0), value);
  return NumericalPolynomial(std::vector<int>(num_vars, 0), std::move(c));
}

NumericalPolynomial NumericalPolynomial::basis_term(const MultiIndex& index, const Integer& a) {
  std::map<MultiIndex, Integer> c;
  c.emplace(index, a);
  return NumericalPolynomial(std::vector<int>(index.begin(), index.end()), std::move(c));
}

Integer NumericalPolynomial::coeff(const MultiIndex& index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

std::optional<int> NumericalPolynomial::total_degree() const {
  if (coeffs_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [index, a] : coeffs_)
    d = std::max(d, std::accumulate(index.begin(), index.end(), 0));
  return d;
}

std::optional<int> NumericalPolynomial::degree_in(std::size_t var) const {
  if (var >= bounds_.size()) throw ArgumentError("variable index out of range");
  if (coeffs_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [index, a] : coeffs_) d = std::max(d, index[var]);
  return d;
}

Rational NumericalPolynomial::evaluate(std::span<const std::int64_t> r) const {
  if (r.size() != bounds_.size())
    throw ArgumentError("evaluate: expected " + std::to_string(bounds_.size()) +
                        " arguments, got " + std::to_string(r.size()));
  // Per-variable tables C(r_k + i, i), i = 0..bound_k.
  std::vector<std::vector<Integer>> table(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    for (int i = 0; i <= bounds_[k]; ++i)
      table[k].push_back(binomial_poly(Integer(static_cast<long>(r[k])) + i, i));
  }
  Integer sum = 0;
  for (const auto& [index, a] : coeffs_) {
    Integer term = a;
    for (std::size_t k = 0; k < index.size(); ++k) term *= table[k][index[k]];
    sum += term;
  }
  return Rational(sum);
}

std::map<MultiIndex, Rational> NumericalPolynomial::to_monomials() const {
  std::map<int, std::vector<Rational>> cache;
  auto expansion = [&](int i) -> const std::vector<Rational>& {
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, binomial_basis_in_powers(i)).first;
    return it->second;
  };
  std::map<MultiIndex, Rational> out;
  for (const auto& [index, a] : coeffs_) {
    std::map<MultiIndex, Rational> partial{{MultiIndex{}, Rational(a)}};
    for (int i : index) {
      const auto& uni = expansion(i);
      std::map<MultiIndex, Rational> next;
      for (const auto& [exps, c] : partial) {
        for (std::size_t e = 0; e < uni.size(); ++e) {
          if (uni[e] == 0) continue;
          MultiIndex ext = exps;
          ext.push_back(static_cast<int>(e));
          next[ext] += c * uni[e];
        }
      }
      partial = std::move(next);
    }
    for (auto& [exps, c] : partial) out[exps] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

NumericalPolynomial NumericalPolynomial::from_monomials(
    std::size_t num_vars, const std::map<MultiIndex, Rational>& monomials) {
  std::vector<int> bounds(num_vars, 0);
  for (const auto& [exps, c] : monomials) {
    if (exps.size() != num_vars) throw ArgumentError("monomial exponent length mismatch");
    for (std::size_t k = 0; k < num_vars; ++k) bounds[k] = std::max(bounds[k], exps[k]);
  }
  std::map<IntVec, Integer> values;
  IntVec point(num_vars, 0);
  while (true) {
    Rational v = 0;
    for (const auto& [exps, c] : monomials) {
      Rational term = c;
      for (std::size_t k = 0; k < num_vars; ++k) {
        Integer power = 1;
        for (int e = 0; e < exps[k]; ++e) power *= static_cast<long>(point[k]);
        term *= power;
      }
      v += term;
    }
    if (v.get_den() != 1)
      throw ArgumentError("polynomial is not integer-valued at " + to_string(point));
    values.emplace(point, v.get_num());
    std::size_t k = 0;
    while (k < num_vars && point[k] == bounds[k]) point[k++] = 0;
    if (k == num_vars) break;
    ++point[k];
  }
  return interpolate(values, bounds);
}

NumericalPolynomial NumericalPolynomial::with_bounds(std::vector<int> bounds) const {
  if (bounds.size() != bounds_.size()) throw ArgumentError("with_bounds: length mismatch");
  return NumericalPolynomial(merged_bounds(bounds, bounds_), coeffs_);
}

bool NumericalPolynomial::operator==(const NumericalPolynomial& other) const {
  return bounds_.size() == other.bounds_.size() && coeffs_ == other.coeffs_;
}

NumericalPolynomial add(const NumericalPolynomial& f, const NumericalPolynomial& g) {
  check_vars(f, g, "add");
  std::map<MultiIndex, Integer> c = f.coeffs();
  for (const auto& [index, a] : g.coeffs()) c[index] += a;
  return NumericalPolynomial(merged_bounds(f.degree_bounds(), g.degree_bounds()), std::move(c));
}

NumericalPolynomial negate(const NumericalPolynomial& f) { return scale(f, -1); }

NumericalPolynomial subtract(const NumericalPolynomial& f, const NumericalPolynomial& g) {
  return add(f, negate(g));
}

NumericalPolynomial scale(const NumericalPolynomial& f, const Integer& c) {
  std::map<MultiIndex, Integer> out;
  if (c != 0)
    for (const auto& [index, a] : f.coeffs()) out.emplace(index, a * c);
  return NumericalPolynomial(f.degree_bounds(), std::move(out));
}

NumericalPolynomial tensor(const NumericalPolynomial& f, const NumericalPolynomial& g) {
  std::vector<int> bounds = f.degree_bounds();
  bounds.insert(bounds.end(), g.degree_bounds().begin(), g.degree_bounds().end());
  std::map<MultiIndex, Integer> out;
  for (const auto& [i, a] : f.coeffs()) {
    for (const auto& [j, b] : g.coeffs()) {
      MultiIndex ij = i;
      ij.insert(ij.end(), j.begin(), j.end());
      out.emplace(std::move(ij), a * b);
    }
  }
  return NumericalPolynomial(std::move(bounds), std::move(out));
}

NumericalPolynomial interpolate(const std::map<IntVec, Integer>& values,
                                const std::vector<int>& degree_bounds) {
  const std::size_t k = degree_bounds.size();
  if (values.empty()) throw InterpolationError("no interpolation values", {});
  IntVec origin = values.begin()->first;
  for (const auto& [point, v] : values) {
    if (point.size() != k) throw ArgumentError("interpolation point " + to_string(point) +
                                               " has wrong dimension");
    for (std::size_t j = 0; j < k; ++j) origin[j] = std::min(origin[j], point[j]);
  }
  for (int b : degree_bounds)
    if (b < 0) throw ArgumentError("negative degree bound");

  std::vector<std::size_t> dims(k), stride(k);
  std::size_t total = 1;
  for (std::size_t j = 0; j < k; ++j) {
    dims[j] = static_cast<std::size_t>(degree_bounds[j]) + 1;
    stride[j] = total;
    total *= dims[j];
  }
  std::vector<Integer> grid(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    IntVec point = origin;
    for (std::size_t j = 0; j < k; ++j)
      point[j] += static_cast<std::int64_t>((flat / stride[j]) % dims[j]);
    auto it = values.find(point);
    if (it == values.end())
      throw InterpolationError("incomplete interpolation grid: missing " + to_string(point),
                               point);
    grid[flat] = it->second;
  }

  for (std::size_t axis = 0; axis < k; ++axis) {
    const int b = degree_bounds[axis];
    const Integer h = static_cast<long>(origin[axis]);
    // Table of C(h + i, i - j) for 0 <= j <= i <= b.
    std::vector<std::vector<Integer>> shift(b + 1, std::vector<Integer>(b + 1));
    for (int i = 0; i <= b; ++i)
      for (int j = 0; j <= i; ++j) shift[i][j] = binomial_poly(h + i, i - j);
    for (std::size_t flat = 0; flat < total; ++flat) {
      if ((flat / stride[axis]) % dims[axis] != 0) continue;  // visit each line once
      std::vector<Integer> line(b + 1);
      for (int x = 0; x <= b; ++x) line[x] = grid[flat + x * stride[axis]];
      std::vector<Integer> diff(b + 1);
      for (int j = 0; j <= b; ++j) {
        diff[j] = line[0];
        for (int x = 0; x + j < b; ++x) line[x] = line[x + 1] - line[x];
      }
      std::vector<Integer> a(b + 1);
      for (int j = b; j >= 0; --j) {
        a[j] = diff[j];
        for (int i = j + 1; i <= b; ++i) a[j] -= a[i] * shift[i][j];
      }
      for (int x = 0; x <= b; ++x) grid[flat + x * stride[axis]] = a[x];
    }
  }

  std::map<MultiIndex, Integer> coeffs;
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (grid[flat] == 0) continue;
    MultiIndex index(k);
    for (std::size_t j = 0; j < k; ++j) index[j] = static_cast<int>((flat / stride[j]) % dims[j]);
    coeffs.emplace(std::move(index), grid[flat]);
  }
  NumericalPolynomial f(degree_bounds, std::move(coeffs));

  for (const auto& [point, v] : values) {
    Rational got = f.evaluate(point);
    if (got != Rational(v))
      throw InterpolationError("inconsistent interpolation data at " + to_string(point) +
                                   ": value " + to_string(v) + ", fitted " + to_string(got),
                               point);
  }
  return f;
}

std::set<MultiIndex> maximal_lex_elements(const std::set<MultiIndex>& points) {
  std::set<MultiIndex> out;
  if (points.empty()) return out;
  const std::size_t k = points.begin()->size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const MultiIndex* best = nullptr;
    for (const auto& pt : points) {
      if (pt.size() != k) throw ArgumentError("maximal_lex_elements: ragged point set");
      if (best == nullptr) {
        best = &pt;
        continue;
      }
      for (std::size_t j : perm) {
        if (pt[j] != (*best)[j]) {
          if (pt[j] > (*best)[j]) best = &pt;
          break;
        }
      }
    }
    out.insert(*best);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

InvariantReport invariants(const NumericalPolynomial& f, std::span<const int> blocks, int n) {
  if (blocks.size() + 1 != f.num_vars())
    throw ArgumentError("invariants: partition has " + std::to_string(blocks.size()) +
                        " blocks but polynomial has " + std::to_string(f.num_vars()) +
                        " variables");
  InvariantReport rep;
  rep.total_degree = f.total_degree();
  rep.top_index.assign(blocks.begin(), blocks.end());
  rep.top_index.push_back(n);
  rep.leading_coeff = f.coeff(rep.top_index);
  Integer two_n = 1;
  for (int i = 0; i < n; ++i) two_n *= 2;
  rep.trdeg_candidate = Rational(rep.leading_coeff, two_n);
  rep.trdeg_candidate.canonicalize();
  rep.leading_divisible = rep.leading_coeff % two_n == 0;
  for (const auto& [index, a] : f.coeffs()) {
    rep.e_set.insert(index);
    if (rep.total_degree && std::accumulate(index.begin(), index.end(), 0) == *rep.total_degree)
      rep.top_degree_coeffs.emplace(index, a);
  }
  for (const auto& index : maximal_lex_elements(rep.e_set))
    rep.e_prime.emplace(index, f.coeff(index));
  return rep;
}

std::string format_monomial(const NumericalPolynomial& f) {
  auto mons = f.to_monomials();
  std::vector<std::pair<MultiIndex, Rational>> sorted(mons.begin(), mons.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& [exps, c] : sorted) {
    std::string vars;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += var_name(k, exps.size());
      if (exps[k] > 1) vars += "^" + std::to_string(exps[k]);
    }
    Rational mag = abs(c);
    std::string body;
    if (vars.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = vars;
    else
      body = mag.get_str() + "*" + vars;
    parts.emplace_back(c < 0, body);
  }
  return join_signed(parts);
}

std::string format_binomial(const NumericalPolynomial& f) {
  std::vector<std::pair<MultiIndex, Integer>> sorted(f.coeffs().begin(), f.coeffs().end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& [index, a] : sorted) {
    std::string factors;
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (index[k] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "C(" + var_name(k, index.size()) + "+" + std::to_string(index[k]) + "," +
                 std::to_string(index[k]) + ")";
    }
    Integer mag = abs(a);
    std::string body;
    if (factors.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = factors;
    else
      body = mag.get_str() + "*" + factors;
    parts.emplace_back(a < 0, body);
  }
  return join_signed(parts);
}

}  // namespace ddim
