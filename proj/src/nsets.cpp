#include "ddim/nsets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ddim/errors.hpp"

namespace ddim {

namespace {

// Calls fn(v) for every v in N^m with sum over block k of v <= r[k].
void for_each_in_blocks(const std::vector<int>& blocks, const IntVec& r,
                        const std::function<void(const std::vector<int>&)>& fn) {
  const int m = std::accumulate(blocks.begin(), blocks.end(), 0);
  std::vector<int> block_of(m);
  for (int b = 0, pos = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int i = 0; i < blocks[b]; ++i) block_of[pos++] = b;
  std::vector<int> v(m, 0);
  IntVec budget = r;
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      fn(v);
      return;
    }
    const int b = block_of[i];
    for (std::int64_t x = 0; x <= budget[b]; ++x) {
      v[i] = static_cast<int>(x);
      budget[b] -= x;
      rec(i + 1);
      budget[b] += x;
    }
    v[i] = 0;
  };
  rec(0);
}

// Calls fn(l) for every l in Z^n with sum |l_j| <= radius.
void for_each_in_cross(int n, std::int64_t radius,
                       const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> l(n, 0);
  std::function<void(int, std::int64_t)> rec = [&](int j, std::int64_t left) {
    if (j == n) {
      fn(l);
      return;
    }
    for (std::int64_t x = -left; x <= left; ++x) {
      l[j] = static_cast<int>(x);
      rec(j + 1, left - (x < 0 ? -x : x));
    }
    l[j] = 0;
  };
  rec(0, radius);
}

bool product_leq(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// C(t + m - b, m) in the basis C(t+i, i), i = 0..m.
const NumericalPolynomial& shifted_simplex(int m, int b) {
  static thread_local std::map<std::pair<int, int>, NumericalPolynomial> cache;
  auto key = std::make_pair(m, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::map<IntVec, Integer> vals;
  for (int t = 0; t <= m; ++t) vals[{t}] = binomial_poly(Integer(t + m - b), m);
  return cache.emplace(key, interpolate(vals, {m})).first->second;
}

}  // namespace

int PartitionedShape::m() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }

void PartitionedShape::validate() const {
  for (int b : blocks)
    if (b < 0) throw ArgumentError("negative block size");
  if (n < 0) throw ArgumentError("negative number of signed coordinates");
}

void PointSetN::validate() const {
  shape.validate();
  const auto m = static_cast<std::size_t>(shape.m());
  for (const auto& pt : points) {
    if (pt.size() != m) throw ArgumentError("point " + to_string(pt) + " is not in N^" +
                                            std::to_string(m));
    for (int x : pt)
      if (x < 0) throw ArgumentError("point " + to_string(pt) + " has a negative entry");
  }
}

void PointSetZ::validate() const {
  shape.validate();
  const int m = shape.m();
  for (const auto& pt : points) {
    if (pt.size() != static_cast<std::size_t>(m + shape.n))
      throw ArgumentError("point " + to_string(pt) + " has wrong length");
    for (int i = 0; i < m; ++i)
      if (pt[i] < 0) throw ArgumentError("point " + to_string(pt) + " has a negative N entry");
  }
}

PointSetN minimal_elements(const PointSetN& e) {
  e.validate();
  PointSetN out{e.shape, {}};
  for (const auto& a : e.points) {
    bool minimal = true;
    for (const auto& b : e.points) {
      if (b != a && product_leq(b, a)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.points.insert(a);
  }
  return out;
}

NumericalPolynomial omega_E(const PointSetN& e, int max_generators) {
  const PointSetN minimal = minimal_elements(e);
  const std::vector<std::vector<int>> gens(minimal.points.begin(), minimal.points.end());
  const int q = static_cast<int>(gens.size());
  if (q > max_generators)
    throw ArgumentError("inclusion-exclusion over " + std::to_string(q) +
                        " minimal points exceeds the limit of " +
                        std::to_string(max_generators));
  const auto& blocks = e.shape.blocks;
  const int m = e.shape.m();
  const int p = e.shape.p();

  // Signed multiplicity of every block-sum vector b_sigma.
  std::map<std::vector<int>, Integer> weight;
  std::vector<int> ebar(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
    std::fill(ebar.begin(), ebar.end(), 0);
    int size = 0;
    for (int i = 0; i < q; ++i) {
      if (!(mask >> i & 1)) continue;
      ++size;
      for (int j = 0; j < m; ++j) ebar[j] = std::max(ebar[j], gens[i][j]);
    }
    std::vector<int> b(p, 0);
    for (int k = 0, pos = 0; k < p; ++k)
      for (int i = 0; i < blocks[k]; ++i) b[k] += ebar[pos++];
    weight[b] += (size % 2 == 0) ? 1 : -1;
  }

  NumericalPolynomial result{std::vector<int>(blocks.begin(), blocks.end())};
  for (const auto& [b, w] : weight) {
    if (w == 0) continue;
    NumericalPolynomial term = NumericalPolynomial::constant(0, w);
    for (int k = 0; k < p; ++k) term = tensor(term, shifted_simplex(blocks[k], b[k]));
    result = add(result, term);
  }
  for (int k = 0; k < p; ++k) {
    auto d = result.degree_in(k);
    if (d && *d > blocks[k]) throw InternalError("omega_E exceeds its degree bound");
  }
  return result;
}

std::int64_t count_V_E(const PointSetN& e, const IntVec& r) {
  e.validate();
  if (r.size() != static_cast<std::size_t>(e.shape.p()))
    throw ArgumentError("count_V_E: r must have one entry per block");
  for (auto x : r)
    if (x < 0) throw ArgumentError("count_V_E: negative bound");
  std::int64_t count = 0;
  for_each_in_blocks(e.shape.blocks, r, [&](const std::vector<int>& v) {
    for (const auto& a : e.points)
      if (product_leq(a, v)) return;
    ++count;
  });
  return count;
}

bool orthant_leq(const std::vector<int>& a, const std::vector<int>& w, int m) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(i) < m) {
      if (a[i] > w[i]) return false;
    } else {
      if (static_cast<long>(a[i]) * w[i] < 0) return false;
      if (std::abs(a[i]) > std::abs(w[i])) return false;
    }
  }
  return true;
}

NumericalPolynomial phi_A(const PointSetZ& a, int max_generators) {
  a.validate();
  const int m = a.shape.m();
  const int n = a.shape.n;
  PointSetN b;
  b.shape.blocks = a.shape.blocks;
  b.shape.blocks.push_back(2 * n);
  for (const auto& pt : a.points) {
    std::vector<int> rho(pt.begin(), pt.begin() + m);
    for (int j = 0; j < n; ++j) rho.push_back(std::max(pt[m + j], 0));
    for (int j = 0; j < n; ++j) rho.push_back(std::max(-pt[m + j], 0));
    b.points.insert(std::move(rho));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> ei(m + 2 * n, 0);
    ei[m + i] = 1;
    ei[m + n + i] = 1;
    b.points.insert(std::move(ei));
  }
  NumericalPolynomial omega = omega_E(b, max_generators + n);
  // The binomial-basis bound on t_{p+1} is n, not 2n.
  std::vector<int> bounds(a.shape.blocks.begin(), a.shape.blocks.end());
  bounds.push_back(n);
  for (const auto& [index, c] : omega.coeffs())
    if (index.back() > n) throw InternalError("phi_A exceeds degree n in t_{p+1}");
  return NumericalPolynomial(bounds, omega.coeffs());
}

std::int64_t count_W_A(const PointSetZ& a, const IntVec& r) {
  a.validate();
  const int p = a.shape.p();
  if (r.size() != static_cast<std::size_t>(p + 1))
    throw ArgumentError("count_W_A: r must have p+1 entries");
  for (auto x : r)
    if (x < 0) throw ArgumentError("count_W_A: negative bound");
  const int m = a.shape.m();
  const int n = a.shape.n;
  IntVec block_r(r.begin(), r.begin() + p);
  std::int64_t count = 0;
  std::vector<int> w(m + n);
  for_each_in_blocks(a.shape.blocks, block_r, [&](const std::vector<int>& k) {
    std::copy(k.begin(), k.end(), w.begin());
    for_each_in_cross(n, r[p], [&](const std::vector<int>& l) {
      std::copy(l.begin(), l.end(), w.begin() + m);
      for (const auto& pt : a.points)
        if (orthant_leq(pt, w, m)) return;
      ++count;
    });
  });
  return count;
}

NumericalPolynomial free_phi(const PartitionedShape& shape) {
  shape.validate();
  const int n = shape.n;
  std::map<MultiIndex, Integer> sigma;
  Integer binom = 1;  // C(n, i)
  for (int i = 0; i <= n; ++i) {
    Integer c = binom;
    for (int j = 0; j < i; ++j) c *= 2;
    if ((n - i) % 2) c = -c;
    sigma.emplace(MultiIndex{i}, c);
    binom = binom * (n - i) / (i + 1);
  }
  MultiIndex blocks(shape.blocks.begin(), shape.blocks.end());
  return tensor(NumericalPolynomial::basis_term(blocks), NumericalPolynomial({n}, sigma));
}

}  // namespace ddim
