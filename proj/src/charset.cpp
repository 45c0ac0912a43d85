#include "ddim/charset.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ddim/errors.hpp"

namespace ddim {

namespace {

using Poly = DeltaSigmaPolynomial;

struct ElementInfo {
  Term v;
  std::vector<std::int64_t> u_ords;  // ord_j u^{(j)}
  int degree = 0;
  Poly initial;
  Poly separant;
};

ElementInfo info_of(const Poly& a) {
  if (a.in_field()) throw PreconditionError("element " + to_string(a) + " lies in the field");
  RankVector rank = rank_vector(a);
  auto [initial, separant] = initial_separant(a);
  return {rank.v, rank.block_ords, rank.degree, std::move(initial), std::move(separant)};
}

std::vector<std::int64_t> leader_ords(const Poly& h) {
  std::vector<std::int64_t> out;
  for (int j = 0; j < h.shape().p(); ++j)
    out.push_back(ord_block(highest_term(h, j).mono, h.shape(), j));
  return out;
}

// w = lambda v_A with lambda ~ v_A, the block orders of lambda u_A^{(j)} stay within h_ords,
// and either lambda involves a derivation or deg_w H >= deg_{v_A} A.
bool eligible(const ElementInfo& e, const Term& w, const std::vector<std::int64_t>& h_ords,
              int deg_w, const Shape& shape, LambdaMonomial* lambda_out) {
  if (!divides(e.v, w)) return false;
  LambdaMonomial lambda = quotient(w, e.v);
  for (int j = 0; j < shape.p(); ++j)
    if (ord_block(lambda, shape, j) + e.u_ords[j] > h_ords[j]) return false;
  if (!lambda.has_delta() && deg_w < e.degree) return false;
  if (lambda_out) *lambda_out = std::move(lambda);
  return true;
}

std::vector<Term> terms_descending(const Poly& h) {
  std::vector<std::pair<std::vector<std::int64_t>, Term>> keyed;
  for (const Term& u : h.terms())
    keyed.emplace_back(order_tuple(u.mono, kSigmaOrder, h.shape()), u);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second.gen > b.second.gen;
  });
  std::vector<Term> out;
  for (auto& [key, u] : keyed) out.push_back(std::move(u));
  return out;
}

struct SigmaLeader {
  Term w;
  std::size_t index;
  LambdaMonomial lambda;
};

std::optional<SigmaLeader> sigma_leader(const Poly& h, const std::vector<ElementInfo>& infos) {
  if (h.in_field() || infos.empty()) return std::nullopt;
  const Shape& shape = h.shape();
  const auto h_ords = leader_ords(h);
  for (const Term& w : terms_descending(h)) {
    const int deg_w = h.degree_in(w);
    std::optional<SigmaLeader> best;
    for (std::size_t i = 0; i < infos.size(); ++i) {
      LambdaMonomial lambda;
      if (!eligible(infos[i], w, h_ords, deg_w, shape, &lambda)) continue;
      if (!best || compare(infos[i].v, infos[best->index].v, kSigmaOrder, shape) > 0)
        best = SigmaLeader{w, i, std::move(lambda)};
    }
    if (best) return best;
  }
  return std::nullopt;
}

Poly power(const Poly& a, int e) {
  Poly out = Poly::constant(a.shape_ptr(), 1);
  for (int i = 0; i < e; ++i) out = out * a;
  return out;
}

// H = B' w^r + B'' with B' free of w and deg_w B'' < r.
std::pair<Poly, Poly> split(const Poly& h, const Term& w, int r) {
  Poly lead(h.shape_ptr());
  Poly rest(h.shape_ptr());
  for (const auto& [pp, c] : h.monomials()) {
    auto it = std::find_if(pp.begin(), pp.end(), [&](const auto& f) { return f.first == w; });
    if (it != pp.end() && it->second == r) {
      PowerProduct without = pp;
      without.erase(without.begin() + (it - pp.begin()));
      lead.add(without, c);
    } else {
      rest.add(pp, c);
    }
  }
  return {lead, rest};
}

void check_linear(const AutoreducedSet& set) {
  for (const auto& a : set.elements)
    if (!a.is_linear()) throw NonlinearError("element " + to_string(a) + " is not linear");
}

// Makes the initial 1 when it is a rational number.
Poly normalized(const Poly& b) {
  if (b.in_field()) return b;
  auto [initial, separant] = initial_separant(b);
  if (!initial.in_field()) return b;
  Coefficient c = initial.constant_part();
  if (!c.is_rational()) return b;
  return b.scaled(Coefficient(Rational(1) / c.rational_value()));
}

void for_each_lambda(const Shape& shape, int depth,
                     const std::function<void(const LambdaMonomial&)>& fn) {
  LambdaMonomial lambda = LambdaMonomial::identity(shape);
  const int m = shape.m();
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m + shape.n) {
      fn(lambda);
      return;
    }
    if (pos < m) {
      for (int x = 0; x <= left; ++x) {
        lambda.k[pos] = x;
        rec(pos + 1, left - x);
      }
      lambda.k[pos] = 0;
    } else {
      for (int x = -left; x <= left; ++x) {
        lambda.l[pos - m] = x;
        rec(pos + 1, left - std::abs(x));
      }
      lambda.l[pos - m] = 0;
    }
  };
  rec(0, depth);
}

struct Obstruction {
  Poly remainder;
  std::string origin;
};

// Nonzero remainders of the coherence conditions. Stops at the first one unless collect_all.
std::vector<Obstruction> coherence_obstructions(const AutoreducedSet& set, int depth,
                                                bool collect_all) {
  std::vector<Obstruction> out;
  if (set.empty()) return out;
  const Shape& shape = set.elements.front().shape();
  std::vector<ElementInfo> infos;
  for (const auto& a : set.elements) infos.push_back(info_of(a));

  for (std::size_t i = 0; i < infos.size(); ++i) {
    for (std::size_t j = i + 1; j < infos.size(); ++j) {
      const Term& vi = infos[i].v;
      const Term& vj = infos[j].v;
      if (vi.gen != vj.gen || !similar(vi, vj)) continue;
      Term w = vi;
      for (std::size_t x = 0; x < w.mono.k.size(); ++x)
        w.mono.k[x] = std::max(vi.mono.k[x], vj.mono.k[x]);
      for (std::size_t x = 0; x < w.mono.l.size(); ++x)
        w.mono.l[x] = std::abs(vi.mono.l[x]) >= std::abs(vj.mono.l[x]) ? vi.mono.l[x]
                                                                        : vj.mono.l[x];
      LambdaMonomial li = quotient(w, vi);
      LambdaMonomial lj = quotient(w, vj);
      Poly combo = apply_lambda(lj, infos[j].initial) * apply_lambda(li, set.elements[i]) -
                   apply_lambda(li, infos[i].initial) * apply_lambda(lj, set.elements[j]);
      Poly rem = reduce(combo, set).remainder;
      if (!rem.is_zero()) {
        out.push_back({rem, "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") at " + to_string(w)});
        if (!collect_all) return out;
      }
    }
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    bool stop = false;
    for_each_lambda(shape, depth, [&](const LambdaMonomial& lambda) {
      if (stop || lambda.is_identity()) return;
      Poly rem = reduce(apply_lambda(lambda, set.elements[i]), set).remainder;
      if (!rem.is_zero()) {
        out.push_back({rem, "(" + to_string(lambda) + ") A" + std::to_string(i + 1)});
        if (!collect_all) stop = true;
      }
    });
    if (stop) return out;
  }
  return out;
}

}  // namespace

AutoreducedSet make_autoreduced(std::vector<DeltaSigmaPolynomial> elements) {
  std::stable_sort(elements.begin(), elements.end(),
                   [](const Poly& a, const Poly& b) { return rank_compare(a, b) < 0; });
  if (!is_autoreduced(elements)) throw PreconditionError("the set is not autoreduced");
  return AutoreducedSet{std::move(elements)};
}

bool is_reduced(const DeltaSigmaPolynomial& b, const DeltaSigmaPolynomial& a) {
  const ElementInfo e = info_of(a);
  if (b.in_field()) return true;
  const auto h_ords = leader_ords(b);
  for (const Term& w : b.terms())
    if (eligible(e, w, h_ords, b.degree_in(w), b.shape(), nullptr)) return false;
  return true;
}

bool is_reduced(const DeltaSigmaPolynomial& b, const std::vector<DeltaSigmaPolynomial>& set) {
  return std::all_of(set.begin(), set.end(), [&](const Poly& a) { return is_reduced(b, a); });
}

bool is_autoreduced(const std::vector<DeltaSigmaPolynomial>& set) {
  for (const auto& a : set)
    if (a.in_field()) return false;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j)
      if (i != j && !is_reduced(set[i], set[j])) return false;
  return true;
}

ReductionResult reduce(const DeltaSigmaPolynomial& b, const AutoreducedSet& set) {
  std::vector<ElementInfo> infos;
  for (const auto& a : set.elements) infos.push_back(info_of(a));
  ReductionResult result{b, {}, 0};
  Poly& h = result.remainder;
  std::optional<std::pair<Term, int>> previous;
  const Shape& shape = b.shape();
  constexpr std::size_t kMaxSteps = 1000000;

  while (auto lead = sigma_leader(h, infos)) {
    const Term& w = lead->w;
    const int r = h.degree_in(w);
    if (previous) {
      auto c = compare(w, previous->first, kSigmaOrder, shape);
      if (c > 0 || (c == 0 && r >= previous->second))
        throw InternalError("reduction step did not lower the Sigma-leader of " + to_string(h));
    }
    previous = {w, r};
    if (++result.steps > kMaxSteps) throw InternalError("reduction exceeded the step limit");

    const ElementInfo& e = infos[lead->index];
    const Poly& a = set.elements[lead->index];
    const LambdaMonomial& lambda = lead->lambda;
    auto [b1, b2] = split(h, w, r);
    Poly lambda_a = apply_lambda(lambda, a);
    MultiplierFactor factor;
    factor.index = lead->index;
    if (lambda.has_delta()) {
      LambdaMonomial shift = lambda.sigma_part();
      Poly s = apply_lambda(shift, e.separant);
      Poly t = lambda_a - s * Poly::term(h.shape_ptr(), w);
      h = b1 * power(-t, r) + power(s, r) * b2;
      factor.separant = true;
      factor.shift = shift;
      factor.exponent = r;
    } else {
      Poly init = apply_lambda(lambda, e.initial);
      h = init * h - power(Poly::term(h.shape_ptr(), w), r - e.degree) * lambda_a * b1;
      factor.shift = lambda;
    }
    auto same = std::find_if(result.multiplier.begin(), result.multiplier.end(),
                             [&](const MultiplierFactor& f) {
                               return f.index == factor.index && f.separant == factor.separant &&
                                      f.shift == factor.shift;
                             });
    if (same != result.multiplier.end())
      same->exponent += factor.exponent;
    else
      result.multiplier.push_back(factor);
  }
  if (!is_reduced(h, set.elements))
    throw InternalError("reduction ended with a polynomial that is not reduced");
  return result;
}

std::strong_ordering set_rank_compare(const AutoreducedSet& a, const AutoreducedSet& b) {
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i)
    if (auto c = rank_compare(a.elements[i], b.elements[i]); c != 0) return c;
  // A longer set with an equal prefix has lower rank.
  return b.size() <=> a.size();
}

AutoreducedSet principal_charset(const DeltaSigmaPolynomial& a) {
  if (!a.is_linear()) throw NonlinearError("polynomial " + to_string(a) + " is not linear");
  if (a.in_field()) throw PreconditionError("polynomial " + to_string(a) + " lies in the field");
  const Shape& shape = a.shape();
  int spread = 0;
  for (const Term& u : a.terms())
    for (int x : u.mono.l) spread = std::max(spread, std::abs(x));
  const int radius = spread + 1;

  struct Candidate {
    LambdaMonomial shift;
    Poly poly;
    Term v;
  };
  std::vector<Candidate> candidates;
  LambdaMonomial shift = LambdaMonomial::identity(shape);
  std::function<void(int)> rec = [&](int j) {
    if (j == shape.n) {
      Poly b = apply_lambda(shift, a);
      Term v = highest_term(b, kSigmaOrder);
      candidates.push_back({shift, std::move(b), std::move(v)});
      return;
    }
    for (int x = -radius; x <= radius; ++x) {
      shift.l[j] = x;
      rec(j + 1);
    }
    shift.l[j] = 0;
  };
  rec(0);

  auto preference = [](const LambdaMonomial& s) {
    return std::make_tuple(s.is_identity() ? 0 : 1, ord_sigma(s), s.l);
  };
  std::map<Term, const Candidate*> chosen;
  for (const auto& c : candidates) {
    bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](const Candidate& o) {
      return o.v != c.v && divides(o.v, c.v);
    });
    if (!minimal) continue;
    auto [it, inserted] = chosen.emplace(c.v, &c);
    if (!inserted && preference(c.shift) < preference(it->second->shift)) it->second = &c;
  }
  std::vector<Poly> elements;
  for (const auto& [v, c] : chosen) elements.push_back(c->poly);
  AutoreducedSet result;
  try {
    result = make_autoreduced(std::move(elements));
  } catch (const PreconditionError&) {
    throw InternalError("minimal shifts of " + to_string(a) + " are not autoreduced");
  }
  CoherenceReport coherence = is_coherent(result);
  if (coherence.verdict != Coherence::kCertified)
    throw InternalError("minimal shifts of " + to_string(a) + " are not coherent: " +
                        coherence.witness_origin);
  return result;
}

int coherence_bound(const AutoreducedSet& set) {
  int spread = 0;
  for (const auto& a : set.elements) {
    const int n = a.shape().n;
    for (int j = 0; j < n; ++j) {
      int lo = 0, hi = 0;
      bool first = true;
      for (const Term& u : a.terms()) {
        if (first) {
          lo = hi = u.mono.l[j];
          first = false;
        }
        lo = std::min(lo, u.mono.l[j]);
        hi = std::max(hi, u.mono.l[j]);
      }
      spread = std::max(spread, hi - lo);
    }
  }
  return spread + 1;
}

CoherenceReport is_coherent(const AutoreducedSet& set, int depth) {
  check_linear(set);
  if (!is_autoreduced(set.elements)) throw PreconditionError("the set is not autoreduced");
  CoherenceReport report;
  report.structural_bound = coherence_bound(set);
  report.depth = depth < 0 ? report.structural_bound : depth;
  auto found = coherence_obstructions(set, report.depth, false);
  if (!found.empty()) {
    report.verdict = Coherence::kViolation;
    report.witness = found.front().remainder;
    report.witness_origin = found.front().origin;
  } else {
    report.verdict = report.depth >= report.structural_bound ? Coherence::kCertified
                                                             : Coherence::kInconclusive;
  }
  return report;
}

AutoreducedSet complete_linear(const std::vector<DeltaSigmaPolynomial>& g, int max_rounds) {
  std::vector<Poly> basis;
  for (const auto& b : g) {
    if (!b.is_linear()) throw NonlinearError("polynomial " + to_string(b) + " is not linear");
    if (b.is_zero()) continue;
    if (b.in_field())
      throw InconsistentSystemError("the system contains the nonzero constant " + to_string(b));
    basis.push_back(normalized(b));
  }
  for (int round = 0; round < max_rounds; ++round) {
    std::stable_sort(basis.begin(), basis.end(),
                     [](const Poly& a, const Poly& b) { return rank_compare(a, b) < 0; });
    std::vector<Poly> chosen;
    std::vector<Poly> others;
    for (const auto& b : basis) {
      bool fits = is_reduced(b, chosen) &&
                  std::all_of(chosen.begin(), chosen.end(),
                              [&](const Poly& a) { return is_reduced(a, b); });
      (fits ? chosen : others).push_back(b);
    }
    AutoreducedSet sigma{chosen};
    std::vector<Poly> fresh;
    auto adjoin = [&](const Poly& rem) {
      if (rem.is_zero()) return;
      if (rem.in_field())
        throw InconsistentSystemError("the system implies the nonzero constant " +
                                      to_string(rem));
      Poly n = normalized(rem);
      if (std::find(fresh.begin(), fresh.end(), n) == fresh.end()) fresh.push_back(n);
    };
    for (const auto& b : others) adjoin(reduce(b, sigma).remainder);
    for (const auto& ob : coherence_obstructions(sigma, coherence_bound(sigma), true))
      adjoin(ob.remainder);
    if (fresh.empty()) {
      if (is_coherent(sigma).verdict != Coherence::kCertified)
        throw InternalError("completion ended with a set that is not coherent");
      return sigma;
    }
    basis = std::move(chosen);
    basis.insert(basis.end(), fresh.begin(), fresh.end());
  }
  throw ThresholdError("completion did not stabilise within " + std::to_string(max_rounds) +
                       " rounds");
}

}  // namespace ddim
