#include "ddim/ddpoly.hpp"

#include <algorithm>

#include "ddim/errors.hpp"

namespace ddim {

namespace {

PowerProduct multiply(const PowerProduct& a, const PowerProduct& b) {
  PowerProduct out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

void check_term(const Term& u, const Shape& shape) {
  if (u.mono.k.size() != static_cast<std::size_t>(shape.m()) ||
      u.mono.l.size() != static_cast<std::size_t>(shape.n) || u.gen < 0 || u.gen >= shape.s)
    throw ArgumentError("term " + to_string(u) + " does not match the shape");
}

// delta_i as a derivation of the polynomial ring.
DeltaSigmaPolynomial derive(const DeltaSigmaPolynomial& a, int i) {
  const Shape& shape = a.shape();
  auto d = LambdaMonomial::delta(shape, i);
  DeltaSigmaPolynomial out(a.shape_ptr());
  for (const auto& [pp, c] : a.monomials()) {
    Coefficient dc = c.apply(d);
    if (!dc.is_zero()) out.add(pp, dc);
    for (std::size_t pos = 0; pos < pp.size(); ++pos) {
      const auto& [u, e] = pp[pos];
      PowerProduct rest = pp;
      if (e == 1)
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      else
        rest[pos].second -= 1;
      out.add(multiply(rest, {{apply(d, u), 1}}), c * Coefficient(e));
    }
  }
  return out;
}

}  // namespace

int total_degree(const PowerProduct& pp) {
  int d = 0;
  for (const auto& [u, e] : pp) d += e;
  return d;
}

DeltaSigmaPolynomial::DeltaSigmaPolynomial(std::shared_ptr<const Shape> shape)
    : shape_(std::move(shape)) {}

DeltaSigmaPolynomial DeltaSigmaPolynomial::constant(std::shared_ptr<const Shape> shape,
                                                    const Coefficient& c) {
  DeltaSigmaPolynomial out(std::move(shape));
  out.add({}, c);
  return out;
}

DeltaSigmaPolynomial DeltaSigmaPolynomial::term(std::shared_ptr<const Shape> shape, const Term& u,
                                                const Coefficient& c, int power) {
  check_term(u, *shape);
  if (power <= 0) throw ArgumentError("term powers must be positive");
  DeltaSigmaPolynomial out(std::move(shape));
  out.add({{u, power}}, c);
  return out;
}

bool DeltaSigmaPolynomial::in_field() const {
  return monomials_.empty() || (monomials_.size() == 1 && monomials_.begin()->first.empty());
}

bool DeltaSigmaPolynomial::is_linear() const {
  return std::all_of(monomials_.begin(), monomials_.end(),
                     [](const auto& kv) { return total_degree(kv.first) <= 1; });
}

Coefficient DeltaSigmaPolynomial::constant_part() const {
  auto it = monomials_.find(PowerProduct{});
  return it == monomials_.end() ? Coefficient() : it->second;
}

Coefficient DeltaSigmaPolynomial::coefficient(const Term& u) const {
  auto it = monomials_.find(PowerProduct{{u, 1}});
  return it == monomials_.end() ? Coefficient() : it->second;
}

std::set<Term> DeltaSigmaPolynomial::terms() const {
  std::set<Term> out;
  for (const auto& [pp, c] : monomials_)
    for (const auto& [u, e] : pp) out.insert(u);
  return out;
}

int DeltaSigmaPolynomial::degree_in(const Term& u) const {
  int d = 0;
  for (const auto& [pp, c] : monomials_)
    for (const auto& [t, e] : pp)
      if (t == u) d = std::max(d, e);
  return d;
}

void DeltaSigmaPolynomial::add(const PowerProduct& pp, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = monomials_.emplace(pp, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) monomials_.erase(it);
  }
}

DeltaSigmaPolynomial DeltaSigmaPolynomial::operator-() const {
  DeltaSigmaPolynomial out = *this;
  for (auto& [pp, c] : out.monomials_) c = -c;
  return out;
}

DeltaSigmaPolynomial& DeltaSigmaPolynomial::operator+=(const DeltaSigmaPolynomial& other) {
  if (!(*shape_ == other.shape())) throw ArgumentError("polynomials of different shapes");
  for (const auto& [pp, c] : other.monomials_) add(pp, c);
  return *this;
}

DeltaSigmaPolynomial& DeltaSigmaPolynomial::operator-=(const DeltaSigmaPolynomial& other) {
  if (!(*shape_ == other.shape())) throw ArgumentError("polynomials of different shapes");
  for (const auto& [pp, c] : other.monomials_) add(pp, -c);
  return *this;
}

DeltaSigmaPolynomial operator*(const DeltaSigmaPolynomial& a, const DeltaSigmaPolynomial& b) {
  if (!(a.shape() == b.shape())) throw ArgumentError("polynomials of different shapes");
  DeltaSigmaPolynomial out(a.shape_ptr());
  for (const auto& [pa, ca] : a.monomials_)
    for (const auto& [pb, cb] : b.monomials_) out.add(multiply(pa, pb), ca * cb);
  return out;
}

DeltaSigmaPolynomial DeltaSigmaPolynomial::scaled(const Coefficient& c) const {
  DeltaSigmaPolynomial out(shape_);
  if (c.is_zero()) return out;
  for (const auto& [pp, x] : monomials_) out.add(pp, x * c);
  return out;
}

bool DeltaSigmaPolynomial::operator==(const DeltaSigmaPolynomial& other) const {
  return *shape_ == other.shape() && monomials_ == other.monomials_;
}

Term highest_term(const DeltaSigmaPolynomial& a, OrderId order) {
  const Term* best = nullptr;
  for (const auto& [pp, c] : a.monomials())
    for (const auto& [u, e] : pp)
      if (!best || compare(u, *best, order, a.shape()) > 0) best = &u;
  if (!best) throw NoLeaderError("polynomial " + to_string(a) + " has no terms");
  return *best;
}

Leaders leaders(const DeltaSigmaPolynomial& a) {
  Leaders out{{}, highest_term(a, kSigmaOrder)};
  for (int i = 0; i < a.shape().p(); ++i) out.block.push_back(highest_term(a, i));
  return out;
}

std::pair<DeltaSigmaPolynomial, DeltaSigmaPolynomial> initial_separant(
    const DeltaSigmaPolynomial& a) {
  const Term v = highest_term(a, kSigmaOrder);
  const int d = a.degree_in(v);
  DeltaSigmaPolynomial initial(a.shape_ptr());
  DeltaSigmaPolynomial separant(a.shape_ptr());
  for (const auto& [pp, c] : a.monomials()) {
    auto it = std::find_if(pp.begin(), pp.end(), [&](const auto& f) { return f.first == v; });
    if (it == pp.end()) continue;
    const int e = it->second;
    PowerProduct rest = pp;
    auto pos = rest.begin() + (it - pp.begin());
    if (e == d) {
      PowerProduct without = rest;
      without.erase(without.begin() + (it - pp.begin()));
      initial.add(without, c);
    }
    if (e == 1)
      rest.erase(pos);
    else
      pos->second -= 1;
    separant.add(rest, c * Coefficient(e));
  }
  return {initial, separant};
}

RankVector rank_vector(const DeltaSigmaPolynomial& a) {
  Leaders lead = leaders(a);
  RankVector out{lead.sigma, a.degree_in(lead.sigma), {}};
  for (int i = 0; i < a.shape().p(); ++i)
    out.block_ords.push_back(ord_block(lead.block[i].mono, a.shape(), i));
  return out;
}

std::strong_ordering rank_compare(const DeltaSigmaPolynomial& a, const DeltaSigmaPolynomial& b) {
  const bool fa = a.in_field();
  const bool fb = b.in_field();
  if (fa || fb) return fb <=> fa;
  RankVector ra = rank_vector(a);
  RankVector rb = rank_vector(b);
  if (auto c = compare(ra.v, rb.v, kSigmaOrder, a.shape()); c != 0) return c;
  if (auto c = ra.degree <=> rb.degree; c != 0) return c;
  return ra.block_ords <=> rb.block_ords;
}

DeltaSigmaPolynomial apply_lambda(const LambdaMonomial& lambda, const DeltaSigmaPolynomial& a) {
  const Shape& shape = a.shape();
  if (lambda.k.size() != static_cast<std::size_t>(shape.m()) ||
      lambda.l.size() != static_cast<std::size_t>(shape.n))
    throw ArgumentError("monomial " + to_string(lambda) + " does not match the shape");
  const LambdaMonomial shift = lambda.sigma_part();
  DeltaSigmaPolynomial cur(a.shape_ptr());
  for (const auto& [pp, c] : a.monomials()) {
    PowerProduct moved;
    for (const auto& [u, e] : pp) moved.emplace_back(apply(shift, u), e);
    std::sort(moved.begin(), moved.end());
    cur.add(moved, c.apply(shift));
  }
  for (int i = 0; i < shape.m(); ++i)
    for (int step = 0; step < lambda.k[i]; ++step) cur = derive(cur, i);
  return cur;
}

std::string to_string(const PowerProduct& pp) {
  std::string out;
  for (const auto& [u, e] : pp) {
    if (!out.empty()) out += " * ";
    std::string t = to_string(u);
    if (e == 1)
      out += t;
    else
      out += "(" + t + ")^" + std::to_string(e);
  }
  return out;
}

std::string to_string(const DeltaSigmaPolynomial& a) {
  if (a.is_zero()) return "0";
  // Highest terms first under <_sigma.
  std::vector<std::pair<const PowerProduct*, const Coefficient*>> items;
  for (const auto& [pp, c] : a.monomials()) items.emplace_back(&pp, &c);
  const Shape& shape = a.shape();
  auto top = [&](const PowerProduct& pp) {
    const Term* best = nullptr;
    for (const auto& [u, e] : pp)
      if (!best || compare(u, *best, kSigmaOrder, shape) > 0) best = &u;
    return best;
  };
  std::stable_sort(items.begin(), items.end(), [&](const auto& x, const auto& y) {
    const Term* tx = top(*x.first);
    const Term* ty = top(*y.first);
    if (!tx || !ty) return tx && !ty;
    auto c = compare(*tx, *ty, kSigmaOrder, shape);
    if (c != 0) return c > 0;
    return total_degree(*x.first) > total_degree(*y.first);
  });
  std::string out;
  for (const auto& [pp, c] : items) {
    std::string coeff = to_string(*c);
    bool compound = c->terms().size() > 1;
    std::string body = to_string(*pp);
    std::string piece;
    if (body.empty())
      piece = compound ? "(" + coeff + ")" : coeff;
    else if (coeff == "1")
      piece = body;
    else if (coeff == "-1")
      piece = "-" + body;
    else
      piece = (compound ? "(" + coeff + ")" : coeff) + "*" + body;
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

}  // namespace ddim
