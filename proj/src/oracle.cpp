#include "ddim/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ddim/errors.hpp"

namespace ddim {

namespace {

using Poly = DeltaSigmaPolynomial;

template <class T>
using SparseRow = std::vector<std::pair<int, T>>;

bool is_zero(const Rational& x) { return x == 0; }
bool is_zero(const Coefficient& x) { return x.is_zero(); }

// row - f * pivot, both sorted by column.
template <class T>
SparseRow<T> axpy(const SparseRow<T>& row, const T& f, const SparseRow<T>& pivot) {
  SparseRow<T> out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(f * pivot[j].second));
      ++j;
    } else {
      T v = row[i].second - f * pivot[j].second;
      if (!is_zero(v)) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class T>
SparseRow<T> scale(const SparseRow<T>& row, const T& f) {
  SparseRow<T> out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) out.emplace_back(c, v * f);
  return out;
}

// Incremental row echelon form. Returns the number of pivots in columns >= split.
// Over the rationals pivot rows are scaled to a leading 1; over symbol polynomials the
// elimination is fraction free (cross multiplication), which keeps zero tests exact.
template <class T>
std::size_t pivots_beyond(std::vector<SparseRow<T>> rows, int columns, int split) {
  std::vector<SparseRow<T>> pivot(columns);
  std::vector<bool> has(columns, false);
  std::size_t count = 0;
  for (auto& row : rows) {
    while (!row.empty()) {
      const int c = row.front().first;
      if (!has[c]) {
        if constexpr (std::is_same_v<T, Rational>) {
          Rational inv = 1 / row.front().second;
          row = scale(row, inv);
        }
        pivot[c] = std::move(row);
        has[c] = true;
        if (c >= split) ++count;
        break;
      }
      if constexpr (std::is_same_v<T, Rational>) {
        row = axpy(row, Rational(row.front().second), pivot[c]);
      } else {
        T lead_row = row.front().second;
        T lead_piv = pivot[c].front().second;
        row = axpy(scale(row, lead_piv), lead_row, pivot[c]);
      }
    }
  }
  return count;
}

struct Consequences {
  std::vector<SparseRow<Coefficient>> rows;
  int columns = 0;
  int split = 0;  // columns >= split lie in the region itself
  bool has_symbols = false;
};

void enumerate_k(const Shape& shape, const Region& region, std::int64_t buffer,
                 const std::vector<std::int64_t>& min_room,
                 const std::function<void(const std::vector<int>&)>& fn) {
  const int m = shape.m();
  std::vector<int> k(m, 0);
  std::vector<std::int64_t> budget = min_room;
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      fn(k);
      return;
    }
    const int b = region.kind == Region::Kind::kBox ? shape.block_of(i) : 0;
    for (std::int64_t x = 0; x <= budget[b]; ++x) {
      k[i] = static_cast<int>(x);
      budget[b] -= x;
      rec(i + 1);
      budget[b] += x;
    }
    k[i] = 0;
  };
  (void)buffer;
  rec(0);
}

Consequences build(const std::vector<Poly>& system, const Region& region, int buffer) {
  const Shape& shape = system.front().shape();
  const int p = shape.p();
  const int n = shape.n;
  Consequences out;
  std::vector<Poly> rows_poly;

  for (const Poly& a : system) {
    if (a.in_field()) continue;
    const auto terms = a.terms();
    // Room left for lambda after the largest orders among the terms.
    std::vector<std::int64_t> room;
    std::int64_t max_l = 0;
    for (const Term& t : terms)
      for (int x : t.mono.l) max_l = std::max<std::int64_t>(max_l, std::abs(x));
    std::int64_t sigma_bound;
    if (region.kind == Region::Kind::kBox) {
      for (int i = 0; i < p; ++i) {
        std::int64_t top = 0;
        for (const Term& t : terms) top = std::max(top, ord_block(t.mono, shape, i));
        room.push_back(region.r[i] + buffer - top);
      }
      sigma_bound = region.r[p] + buffer + max_l;
    } else {
      std::int64_t top = 0;
      for (const Term& t : terms) top = std::max(top, ord_total(t.mono) - ord_sigma(t.mono));
      room.push_back(region.r[0] + buffer - top);
      sigma_bound = region.r[0] + buffer + max_l;
    }
    if (std::any_of(room.begin(), room.end(), [](std::int64_t x) { return x < 0; })) continue;

    enumerate_k(shape, region, buffer, room, [&](const std::vector<int>& k) {
      LambdaMonomial lambda{k, std::vector<int>(n, 0)};
      std::function<void(int)> rec = [&](int j) {
        if (j == n) {
          for (const Term& t : terms)
            if (!region.contains(apply(lambda, t).mono, shape, buffer)) return;
          Poly b = apply_lambda(lambda, a);
          for (const Term& t : b.terms())
            if (!region.contains(t.mono, shape, buffer)) return;
          rows_poly.push_back(std::move(b));
          return;
        }
        for (std::int64_t x = -sigma_bound; x <= sigma_bound; ++x) {
          lambda.l[j] = static_cast<int>(x);
          rec(j + 1);
        }
        lambda.l[j] = 0;
      };
      rec(0);
    });
  }

  // Columns: terms outside the region first, then terms inside; higher terms first.
  std::map<Term, int> column;
  std::vector<std::pair<std::vector<std::int64_t>, Term>> outside, inside;
  std::set<Term> seen;
  for (const Poly& b : rows_poly)
    for (const Term& t : b.terms()) seen.insert(t);
  for (const Term& t : seen) {
    auto key = order_tuple(t.mono, kSigmaOrder, shape);
    key.push_back(t.gen);
    (region.contains(t.mono, shape, 0) ? inside : outside).emplace_back(std::move(key), t);
  }
  auto by_key = [](const auto& x, const auto& y) { return x.first > y.first; };
  std::sort(outside.begin(), outside.end(), by_key);
  std::sort(inside.begin(), inside.end(), by_key);
  int next = 0;
  for (const auto& [key, t] : outside) column[t] = next++;
  out.split = next;
  for (const auto& [key, t] : inside) column[t] = next++;
  out.columns = next;

  for (const Poly& b : rows_poly) {
    SparseRow<Coefficient> row;
    for (const auto& [pp, c] : b.monomials()) {
      if (pp.empty()) continue;  // constants only shift the relation
      if (!c.is_rational()) out.has_symbols = true;
      row.emplace_back(column.at(pp.front().first), c);
    }
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (!row.empty()) out.rows.push_back(std::move(row));
  }
  return out;
}

std::size_t specialized_relations(const Consequences& cons, std::uint64_t seed) {
  Specialization spec(seed);
  std::vector<SparseRow<Rational>> rows;
  rows.reserve(cons.rows.size());
  for (const auto& row : cons.rows) {
    SparseRow<Rational> q;
    for (const auto& [c, v] : row) {
      Rational x = v.evaluate(spec);
      if (x != 0) q.emplace_back(c, std::move(x));
    }
    if (!q.empty()) rows.push_back(std::move(q));
  }
  return pivots_beyond(std::move(rows), cons.columns, cons.split);
}

void check_system(const std::vector<Poly>& system, const Region& region) {
  if (system.empty()) throw ArgumentError("the oracle needs the shape of at least one polynomial");
  const Shape& shape = system.front().shape();
  for (const Poly& a : system) {
    if (!(a.shape() == shape)) throw ArgumentError("polynomials of different shapes");
    if (!a.is_linear()) throw NonlinearError("polynomial " + to_string(a) + " is not linear");
  }
  region.validate(shape);
}

}  // namespace

bool Region::contains(const LambdaMonomial& lambda, const Shape& shape,
                      std::int64_t buffer) const {
  if (kind == Kind::kBall) return ord_total(lambda) <= r[0] + buffer;
  for (int i = 0; i < shape.p(); ++i)
    if (ord_block(lambda, shape, i) > r[i] + buffer) return false;
  return ord_sigma(lambda) <= r[shape.p()] + buffer;
}

std::int64_t Region::monomial_count(const Shape& shape) const {
  // Number of l in Z^n with sum |l_j| <= radius, by dynamic programming over coordinates.
  auto cross = [](int n, std::int64_t radius) {
    std::vector<std::int64_t> ways(radius + 1, 0);  // ways[s]: vectors with sum |l| = s
    ways[0] = 1;
    for (int j = 0; j < n; ++j) {
      std::vector<std::int64_t> next(radius + 1, 0);
      for (std::int64_t s = 0; s <= radius; ++s)
        for (std::int64_t x = 0; s + x <= radius; ++x) next[s + x] += ways[s] * (x == 0 ? 1 : 2);
      ways = std::move(next);
    }
    return ways;
  };
  // Compositions of at most total into `parts` nonnegative parts, by exact size.
  auto simplex = [](int parts, std::int64_t total) {
    std::vector<std::int64_t> ways(total + 1, 0);
    ways[0] = 1;
    for (int j = 0; j < parts; ++j)
      for (std::int64_t s = 1; s <= total; ++s) ways[s] += ways[s - 1];
    return ways;
  };
  if (kind == Kind::kBall) {
    auto d = simplex(shape.m(), r[0]);
    auto c = cross(shape.n, r[0]);
    std::int64_t count = 0;
    for (std::int64_t a = 0; a <= r[0]; ++a)
      for (std::int64_t b = 0; a + b <= r[0]; ++b) count += d[a] * c[b];
    return count;
  }
  std::int64_t count = 1;
  for (int i = 0; i < shape.p(); ++i) {
    auto d = simplex(shape.blocks[i], r[i]);
    std::int64_t sum = 0;
    for (auto x : d) sum += x;
    count *= sum;
  }
  auto c = cross(shape.n, r[shape.p()]);
  std::int64_t sum = 0;
  for (auto x : c) sum += x;
  return count * sum;
}

void Region::validate(const Shape& shape) const {
  const std::size_t want = kind == Kind::kBall ? 1 : static_cast<std::size_t>(shape.p() + 1);
  if (r.size() != want)
    throw ArgumentError("region needs " + std::to_string(want) + " bounds, got " +
                        std::to_string(r.size()));
  for (auto x : r)
    if (x < 0) throw ArgumentError("region bounds must be nonnegative");
}

OracleResult trdeg_at_buffer(const std::vector<DeltaSigmaPolynomial>& system,
                             const Region& region, int buffer, const OracleOptions& options) {
  check_system(system, region);
  if (buffer < 0) throw ArgumentError("negative buffer");
  const Shape& shape = system.front().shape();
  Consequences cons = build(system, region, buffer);
  OracleResult result;
  result.region_terms = region.monomial_count(shape) * shape.s;
  result.buffer = buffer;
  result.rows = cons.rows.size();
  result.columns = static_cast<std::size_t>(cons.columns);
  std::size_t relations;
  if (options.mode == OracleMode::kSymbolic) {
    relations = pivots_beyond(cons.rows, cons.columns, cons.split);
  } else {
    relations = specialized_relations(cons, options.seeds[0]);
    if (cons.has_symbols) {
      std::size_t again = specialized_relations(cons, options.seeds[1]);
      if (again != relations)
        throw OracleError("two specializations of the constants give " +
                          std::to_string(relations) + " and " + std::to_string(again) +
                          " relations");
    }
  }
  result.relations = static_cast<std::int64_t>(relations);
  result.trdeg = result.region_terms - result.relations;
  return result;
}

OracleResult trdeg_linear(const std::vector<DeltaSigmaPolynomial>& system, const Region& region,
                          const OracleOptions& options) {
  if (options.agreement < 1) throw ArgumentError("agreement must be positive");
  OracleResult last = trdeg_at_buffer(system, region, options.start_buffer, options);
  int agreeing = 1;
  for (int b = options.start_buffer + 1; agreeing < options.agreement; ++b) {
    if (b > options.max_buffer) return last;
    OracleResult cur = trdeg_at_buffer(system, region, b, options);
    agreeing = cur.trdeg == last.trdeg ? agreeing + 1 : 1;
    last = cur;
  }
  last.stabilized = true;
  return last;
}

OracleResult trdeg_linear_box(const std::vector<DeltaSigmaPolynomial>& system, const IntVec& r,
                              const OracleOptions& options) {
  return trdeg_linear(system, Region::box(r), options);
}

}  // namespace ddim
