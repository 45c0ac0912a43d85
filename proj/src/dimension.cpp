#include "ddim/dimension.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ddim/errors.hpp"
#include "ddim/nsets.hpp"

namespace ddim {

namespace {

using Poly = DeltaSigmaPolynomial;

struct LeaderInfo {
  Term sigma;
  std::vector<std::int64_t> block_ords;  // ord_i of u_A^{(i)}
};

std::vector<LeaderInfo> leader_info(const AutoreducedSet& sigma, const Shape& shape) {
  std::vector<LeaderInfo> out;
  for (const Poly& a : sigma.elements) {
    Leaders l = leaders(a);
    LeaderInfo info{l.sigma, {}};
    for (int i = 0; i < shape.p(); ++i) info.block_ords.push_back(ord_block(l.block[i].mono, shape, i));
    out.push_back(std::move(info));
  }
  return out;
}

// Calls fn(lambda) for every lambda with ord_i lambda <= r_i and ord_sigma lambda <= r_{p+1}.
void for_each_in_box(const Shape& shape, const IntVec& r,
                     const std::function<void(const LambdaMonomial&)>& fn) {
  const int m = shape.m();
  const int n = shape.n;
  LambdaMonomial lambda{std::vector<int>(m, 0), std::vector<int>(n, 0)};
  IntVec budget(r.begin(), r.begin() + shape.p());
  std::function<void(int, std::int64_t)> signed_part = [&](int j, std::int64_t left) {
    if (j == n) {
      fn(lambda);
      return;
    }
    for (std::int64_t x = -left; x <= left; ++x) {
      lambda.l[j] = static_cast<int>(x);
      signed_part(j + 1, left - std::abs(x));
    }
    lambda.l[j] = 0;
  };
  std::function<void(int)> unsigned_part = [&](int i) {
    if (i == m) {
      signed_part(0, r[shape.p()]);
      return;
    }
    const int b = shape.block_of(i);
    for (std::int64_t x = 0; x <= budget[b]; ++x) {
      lambda.k[i] = static_cast<int>(x);
      budget[b] -= x;
      unsigned_part(i + 1);
      budget[b] += x;
    }
    lambda.k[i] = 0;
  };
  unsigned_part(0);
}

void check_r(const Shape& shape, const IntVec& r) {
  if (r.size() != static_cast<std::size_t>(shape.p() + 1))
    throw ArgumentError("r needs " + std::to_string(shape.p() + 1) + " entries, got " +
                        std::to_string(r.size()));
  for (auto x : r)
    if (x < 0) throw ArgumentError("r must be nonnegative");
}

std::vector<int> phi_bounds(const Shape& shape) {
  std::vector<int> b(shape.blocks.begin(), shape.blocks.end());
  b.push_back(shape.n);
  return b;
}

// Per-axis orders reached by the terms of the set: block orders, and for the last axis
// the largest ord_sigma plus the largest spread of an automorphism exponent.
IntVec structural_threshold(const std::vector<Poly>& polys, const Shape& shape) {
  IntVec h(shape.p() + 1, 1);
  for (const Poly& a : polys) {
    std::int64_t spread = 0;
    for (int j = 0; j < shape.n; ++j) {
      int lo = 0, hi = 0;
      bool first = true;
      for (const Term& t : a.terms()) {
        lo = first ? t.mono.l[j] : std::min(lo, t.mono.l[j]);
        hi = first ? t.mono.l[j] : std::max(hi, t.mono.l[j]);
        first = false;
      }
      spread = std::max<std::int64_t>(spread, hi - lo);
    }
    std::int64_t top_sigma = 0;
    for (const Term& t : a.terms()) {
      for (int i = 0; i < shape.p(); ++i) h[i] = std::max(h[i], ord_block(t.mono, shape, i));
      top_sigma = std::max(top_sigma, ord_sigma(t.mono));
    }
    h[shape.p()] = std::max(h[shape.p()], top_sigma + spread);
  }
  return h;
}

std::vector<Poly> oracle_system(const ExtensionSpec& spec) {
  std::vector<Poly> system;
  for (const Poly& a : spec.polynomials)
    if (!a.is_zero()) system.push_back(a);
  if (system.empty() && spec.charset) system = *spec.charset;
  if (system.empty()) system.push_back(Poly::constant(spec.shape, 0));
  return system;
}

bool all_linear(const std::vector<Poly>& system) {
  return std::all_of(system.begin(), system.end(), [](const Poly& a) { return a.is_linear(); });
}

void build_charset(const ExtensionSpec& spec, const DimensionOptions& options,
                   DimensionReport& report) {
  if (spec.charset) {
    report.charset = make_autoreduced(*spec.charset);
    report.charset_source = "supplied";
    if (all_linear(report.charset.elements)) {
      report.coherence = is_coherent(report.charset, options.coherence_depth);
      if (report.coherence.verdict == Coherence::kViolation)
        throw PreconditionError("supplied characteristic set is not coherent: " +
                                report.coherence.witness_origin);
    }
    return;
  }
  std::vector<Poly> relations;
  for (const Poly& a : spec.polynomials) {
    if (a.is_zero()) continue;
    if (a.in_field())
      throw InconsistentSystemError("defining polynomial " + to_string(a) + " is a nonzero constant");
    relations.push_back(a);
  }
  if (!all_linear(relations))
    throw NonlinearError("automatic mode needs linear polynomials; supply a characteristic set");
  if (relations.empty()) {
    report.charset_source = "principal";
    report.coherence.verdict = Coherence::kCertified;
    return;
  }
  if (relations.size() == 1) {
    report.charset = principal_charset(relations.front());
    report.charset_source = "principal";
  } else {
    report.charset = complete_linear(relations, options.max_rounds);
    report.charset_source = "completion";
  }
  report.coherence = is_coherent(report.charset, options.coherence_depth);
}

}  // namespace

void ExtensionSpec::validate() const {
  if (!shape) throw ArgumentError("extension has no shape");
  shape->validate();
  for (const Poly& a : polynomials)
    if (!(a.shape() == *shape)) throw ArgumentError("polynomial " + to_string(a) + " has another shape");
  if (charset)
    for (const Poly& a : *charset)
      if (!(a.shape() == *shape)) throw ArgumentError("charset element " + to_string(a) + " has another shape");
}

NumericalPolynomial u1_polynomial(const AutoreducedSet& sigma, const Shape& shape) {
  NumericalPolynomial total(phi_bounds(shape));
  const PartitionedShape parts{shape.blocks, shape.n};
  for (int g = 0; g < shape.s; ++g) {
    PointSetZ a{parts, {}};
    for (const Poly& e : sigma.elements) {
      Term v = leaders(e).sigma;
      if (v.gen != g) continue;
      std::vector<int> pt = v.mono.k;
      pt.insert(pt.end(), v.mono.l.begin(), v.mono.l.end());
      a.points.insert(std::move(pt));
    }
    total = add(total, a.points.empty() ? free_phi(parts) : phi_A(a));
  }
  return total;
}

UCounts count_U(const AutoreducedSet& sigma, const Shape& shape, const IntVec& r) {
  check_r(shape, r);
  const auto info = leader_info(sigma, shape);
  UCounts counts;
  for (int g = 0; g < shape.s; ++g) {
    for_each_in_box(shape, r, [&](const LambdaMonomial& u) {
      bool multiple = false;
      for (const LeaderInfo& a : info) {
        if (a.sigma.gen != g || !divides(a.sigma.mono, u)) continue;
        multiple = true;
        LambdaMonomial lambda = quotient(u, a.sigma.mono);
        bool exceeds = false;
        for (int i = 0; i < shape.p() && !exceeds; ++i)
          exceeds = ord_block(lambda, shape, i) + a.block_ords[i] > r[i];
        if (!exceeds) return;
      }
      ++(multiple ? counts.u2 : counts.u1);
    });
  }
  return counts;
}

U2Fit u2_polynomial(const AutoreducedSet& sigma, const Shape& shape, int max_threshold) {
  const std::vector<int> bounds = phi_bounds(shape);
  IntVec h = structural_threshold(sigma.elements, shape);
  std::string last_failure;
  while (true) {
    for (auto x : h)
      if (x > max_threshold)
        throw ThresholdError(
            "U^(2) count did not fit a polynomial with origin below " +
            std::to_string(max_threshold) + "; " +
            (last_failure.empty() ? "the structural threshold " + to_string(h) + " is already past it"
                                  : "last failure: " + last_failure));
    std::map<IntVec, Integer> values;
    IntVec step(h.size(), 0);
    while (true) {
      IntVec r(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) r[i] = h[i] + step[i];
      values[r] = count_U(sigma, shape, r).u2;
      std::size_t i = 0;
      while (i < h.size() && step[i] == bounds[i] + 1) step[i++] = 0;
      if (i == h.size()) break;
      ++step[i];
    }
    try {
      return {interpolate(values, bounds), h};
    } catch (const InterpolationError& e) {
      last_failure = e.what();
      for (auto& x : h) x *= 2;
    }
  }
}

DimensionReport dimension_polynomial(const ExtensionSpec& spec, const DimensionOptions& options) {
  spec.validate();
  const Shape& shape = *spec.shape;
  DimensionReport report;
  build_charset(spec, options, report);

  report.u1 = u1_polynomial(report.charset, shape);
  U2Fit fit = u2_polynomial(report.charset, shape, options.max_threshold);
  report.u2 = fit.psi.with_bounds(phi_bounds(shape));
  report.phi = add(report.u1, report.u2);
  report.invariants = invariants(report.phi, shape.blocks, shape.n);

  for (int i = 0; i <= shape.p(); ++i) {
    auto d = report.phi.degree_in(i);
    if (d && *d > phi_bounds(shape)[i])
      throw InternalError("dimension polynomial exceeds its degree bound in t" + std::to_string(i + 1));
  }
  if (!report.invariants.leading_divisible)
    throw InternalError("leading coefficient " + to_string(report.invariants.leading_coeff) +
                        " is not divisible by 2^n");

  // Points past the thresholds where both closed forms must match the counts.
  IntVec base = fit.threshold;
  const IntVec structural = structural_threshold(report.charset.elements, shape);
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = std::max(base[i], structural[i]);
  const int checks = std::max(options.oracle_checks, 3);
  while (true) {
    for (auto x : base)
      if (x > options.max_threshold)
        throw ThresholdError("U^(1) closed form disagrees with counts below " +
                             std::to_string(options.max_threshold));
    std::vector<IntVec> points;
    for (int j = 0; j < checks; ++j) {
      IntVec r = base;
      for (auto& x : r) x += j;
      points.push_back(r);
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
      IntVec r = base;
      ++r[i];
      points.push_back(r);
    }
    report.verification.clear();
    bool ok = true;
    for (const IntVec& r : points) {
      VerificationPoint vp{r, report.phi.evaluate(r), count_U(report.charset, shape, r), {}, false};
      vp.pass = vp.phi == vp.counts.total() && report.u1.evaluate(r) == vp.counts.u1 &&
                report.u2.evaluate(r) == vp.counts.u2;
      ok = ok && vp.pass;
      report.verification.push_back(std::move(vp));
    }
    if (ok) break;
    for (auto& x : base) x *= 2;
  }
  report.threshold = base;

  const std::vector<Poly> system = oracle_system(spec);
  if (options.run_oracle && all_linear(system)) {
    for (VerificationPoint& vp : report.verification) {
      OracleResult o = trdeg_linear_box(system, vp.r, options.oracle);
      vp.oracle = o.trdeg;
      if (vp.phi != o.trdeg)
        throw OracleError("at r=" + to_string(vp.r) + " the polynomial gives " +
                          to_string(vp.phi) + " but the oracle counts " + std::to_string(o.trdeg));
    }
  }
  return report;
}

StrengthTable strength_table(const ExtensionSpec& spec, const IntVec& box,
                             const DimensionOptions& options) {
  spec.validate();
  const Shape& shape = *spec.shape;
  check_r(shape, box);
  const std::vector<Poly> system = oracle_system(spec);
  if (!all_linear(system)) throw NonlinearError("strength tables need a linear system");
  StrengthTable table;
  table.phi = dimension_polynomial(spec, options).phi;
  IntVec r(box.size(), 0);
  while (true) {
    StrengthRow row{r, table.phi.evaluate(r), trdeg_linear_box(system, r, options.oracle).trdeg, false};
    row.agree = row.phi == row.counted;
    table.rows.push_back(std::move(row));
    std::size_t i = 0;
    while (i < r.size() && r[i] == box[i]) r[i++] = 0;
    if (i == r.size()) break;
    ++r[i];
  }
  const std::int64_t top = *std::max_element(box.begin(), box.end());
  for (std::int64_t t = 0; t <= top && !table.threshold; ++t) {
    bool ok = true;
    for (const auto& row : table.rows)
      if (*std::min_element(row.r.begin(), row.r.end()) >= t && !row.agree) ok = false;
    if (ok) table.threshold = t;
  }
  return table;
}

UnivariateResult univariate_polynomial(const ExtensionSpec& spec, const DimensionOptions& options) {
  spec.validate();
  const Shape& shape = *spec.shape;
  const std::vector<Poly> system = oracle_system(spec);
  if (!all_linear(system)) throw NonlinearError("the univariate polynomial needs a linear system");
  const int degree = shape.m() + shape.n;
  std::int64_t h = 1;
  for (const Poly& a : system)
    for (const Term& t : a.terms()) h = std::max(h, ord_total(t.mono));
  std::map<std::int64_t, std::int64_t> cache;
  auto value = [&](std::int64_t t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    OracleResult o = trdeg_linear(system, Region::ball(t), options.oracle);
    if (!o.stabilized)
      throw OracleError("oracle did not stabilize on the ball of radius " + std::to_string(t));
    return cache[t] = o.trdeg;
  };
  std::string last_failure;
  while (h <= options.max_threshold) {
    std::map<IntVec, Integer> values;
    UnivariateResult result;
    for (std::int64_t t = h; t <= h + degree + 2; ++t) {
      values[{t}] = value(t);
      result.values.emplace_back(t, cache[t]);
    }
    try {
      result.phi = interpolate(values, {degree});
      result.threshold = h;
      return result;
    } catch (const InterpolationError& e) {
      last_failure = e.what();
      h *= 2;
    }
  }
  throw ThresholdError("ball counts did not fit a polynomial below " +
                       std::to_string(options.max_threshold) + "; last failure: " + last_failure);
}

Comparison compare_extensions(const ExtensionSpec& a, const ExtensionSpec& b,
                              const DimensionOptions& options) {
  a.validate();
  b.validate();
  if (a.shape->blocks != b.shape->blocks || a.shape->n != b.shape->n)
    throw ArgumentError("extensions have different partitions or numbers of automorphisms");
  Comparison out;
  out.first = dimension_polynomial(a, options);
  out.second = dimension_polynomial(b, options);
  const InvariantReport& x = out.first.invariants;
  const InvariantReport& y = out.second.invariants;
  if (x.total_degree != y.total_degree) out.differences.push_back("total degree differs");
  if (x.leading_coeff != y.leading_coeff)
    out.differences.push_back("coefficient at top index " + to_string(x.top_index) + " differs");
  for (const auto& [idx, c] : x.e_prime) {
    auto it = y.e_prime.find(idx);
    if (it == y.e_prime.end())
      out.differences.push_back("E' element " + to_string(idx) + " only in the first");
    else if (it->second != c)
      out.differences.push_back("coefficient at binomial index " + to_string(idx) + " differs");
  }
  for (const auto& [idx, c] : y.e_prime)
    if (!x.e_prime.count(idx))
      out.differences.push_back("E' element " + to_string(idx) + " only in the second");
  if (x.total_degree == y.total_degree) {
    for (const auto& [idx, c] : x.top_degree_coeffs) {
      auto it = y.top_degree_coeffs.find(idx);
      if ((it == y.top_degree_coeffs.end() || it->second != c) && !x.e_prime.count(idx))
        out.differences.push_back("coefficient at binomial index " + to_string(idx) + " differs");
    }
    for (const auto& [idx, c] : y.top_degree_coeffs)
      if (!x.top_degree_coeffs.count(idx) && !y.e_prime.count(idx))
        out.differences.push_back("coefficient at binomial index " + to_string(idx) + " differs");
  }
  out.distinguished = !out.differences.empty();
  out.polynomials_equal = out.first.phi == out.second.phi;
  return out;
}

}  // namespace ddim
