#include "ddim/lambda.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "ddim/errors.hpp"

namespace ddim {

int Shape::m() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }

int Shape::block_of(int i) const {
  for (int b = 0, end = 0; b < p(); ++b) {
    end += blocks[b];
    if (i < end) return b;
  }
  throw ArgumentError("derivation index " + std::to_string(i) + " out of range");
}

void Shape::validate() const {
  for (int b : blocks)
    if (b <= 0) throw ArgumentError("block sizes must be positive");
  if (n < 0) throw ArgumentError("negative number of automorphisms");
  if (s <= 0) throw ArgumentError("at least one indeterminate is required");
}

LambdaMonomial LambdaMonomial::identity(const Shape& shape) {
  return {std::vector<int>(shape.m(), 0), std::vector<int>(shape.n, 0)};
}

LambdaMonomial LambdaMonomial::delta(const Shape& shape, int i, int power) {
  auto out = identity(shape);
  if (i < 0 || i >= shape.m()) throw ArgumentError("no derivation d" + std::to_string(i + 1));
  if (power < 0) throw ArgumentError("negative derivation exponent");
  out.k[i] = power;
  return out;
}

LambdaMonomial LambdaMonomial::alpha(const Shape& shape, int j, int power) {
  auto out = identity(shape);
  if (j < 0 || j >= shape.n) throw ArgumentError("no automorphism a" + std::to_string(j + 1));
  out.l[j] = power;
  return out;
}

bool LambdaMonomial::is_identity() const {
  return !has_delta() && std::all_of(l.begin(), l.end(), [](int x) { return x == 0; });
}

bool LambdaMonomial::has_delta() const {
  return std::any_of(k.begin(), k.end(), [](int x) { return x != 0; });
}

LambdaMonomial LambdaMonomial::delta_part() const { return {k, std::vector<int>(l.size(), 0)}; }

LambdaMonomial LambdaMonomial::sigma_part() const { return {std::vector<int>(k.size(), 0), l}; }

LambdaMonomial operator*(const LambdaMonomial& a, const LambdaMonomial& b) {
  if (a.k.size() != b.k.size() || a.l.size() != b.l.size())
    throw ArgumentError("monomials of different shapes");
  LambdaMonomial out = a;
  for (std::size_t i = 0; i < out.k.size(); ++i) out.k[i] += b.k[i];
  for (std::size_t j = 0; j < out.l.size(); ++j) out.l[j] += b.l[j];
  return out;
}

std::int64_t ord_block(const LambdaMonomial& lambda, const Shape& shape, int block) {
  int start = 0;
  for (int b = 0; b < block; ++b) start += shape.blocks[b];
  std::int64_t sum = 0;
  for (int i = start; i < start + shape.blocks[block]; ++i) sum += lambda.k[i];
  return sum;
}

std::int64_t ord_sigma(const LambdaMonomial& lambda) {
  std::int64_t sum = 0;
  for (int x : lambda.l) sum += std::abs(x);
  return sum;
}

std::int64_t ord_total(const LambdaMonomial& lambda) {
  return std::accumulate(lambda.k.begin(), lambda.k.end(), std::int64_t{0}) + ord_sigma(lambda);
}

std::vector<std::int64_t> ord_vector(const LambdaMonomial& lambda, const Shape& shape) {
  std::vector<std::int64_t> out;
  for (int b = 0; b < shape.p(); ++b) out.push_back(ord_block(lambda, shape, b));
  out.push_back(ord_sigma(lambda));
  out.push_back(ord_total(lambda));
  return out;
}

namespace {

void check_shape(const LambdaMonomial& lambda, const Shape& shape) {
  if (lambda.k.size() != static_cast<std::size_t>(shape.m()) ||
      lambda.l.size() != static_cast<std::size_t>(shape.n))
    throw ArgumentError("monomial " + to_string(lambda) + " does not match the shape");
}

}  // namespace

std::vector<std::int64_t> order_tuple(const LambdaMonomial& lambda, OrderId order,
                                      const Shape& shape) {
  check_shape(lambda, shape);
  const int p = shape.p();
  std::vector<std::int64_t> t;
  t.reserve(shape.m() + 2 * shape.n + p + 2);
  if (order == kSigmaOrder) {
    t.push_back(ord_sigma(lambda));
    t.push_back(ord_total(lambda));
    for (int b = 0; b < p; ++b) t.push_back(ord_block(lambda, shape, b));
    for (int x : lambda.l) t.push_back(std::abs(x));
    for (int x : lambda.l) t.push_back(x);
    for (int x : lambda.k) t.push_back(x);
    return t;
  }
  if (order < 0 || order >= p) throw ArgumentError("no order <_" + std::to_string(order + 1));
  t.push_back(ord_block(lambda, shape, order));
  t.push_back(ord_total(lambda));
  for (int b = 0; b < p; ++b)
    if (b != order) t.push_back(ord_block(lambda, shape, b));
  t.push_back(ord_sigma(lambda));
  int start = 0;
  for (int b = 0; b < order; ++b) start += shape.blocks[b];
  const int end = start + shape.blocks[order];
  for (int i = start; i < end; ++i) t.push_back(lambda.k[i]);
  for (int i = 0; i < start; ++i) t.push_back(lambda.k[i]);
  for (int i = end; i < shape.m(); ++i) t.push_back(lambda.k[i]);
  for (int x : lambda.l) t.push_back(std::abs(x));
  for (int x : lambda.l) t.push_back(x);
  return t;
}

std::strong_ordering compare(const LambdaMonomial& a, const LambdaMonomial& b, OrderId order,
                             const Shape& shape) {
  return order_tuple(a, order, shape) <=> order_tuple(b, order, shape);
}

std::strong_ordering compare(const Term& a, const Term& b, OrderId order, const Shape& shape) {
  auto c = compare(a.mono, b.mono, order, shape);
  if (c != 0) return c;
  return a.gen <=> b.gen;
}

bool similar(const LambdaMonomial& a, const LambdaMonomial& b) {
  if (a.l.size() != b.l.size()) throw ArgumentError("monomials of different shapes");
  for (std::size_t j = 0; j < a.l.size(); ++j)
    if (static_cast<long>(a.l[j]) * b.l[j] < 0) return false;
  return true;
}

bool similar(const Term& a, const Term& b) { return similar(a.mono, b.mono); }
bool similar(const Term& u, const LambdaMonomial& lambda) { return similar(u.mono, lambda); }

bool divides(const LambdaMonomial& a, const LambdaMonomial& b) {
  if (a.k.size() != b.k.size()) throw ArgumentError("monomials of different shapes");
  if (!similar(a, b)) return false;
  for (std::size_t i = 0; i < a.k.size(); ++i)
    if (a.k[i] > b.k[i]) return false;
  for (std::size_t j = 0; j < a.l.size(); ++j)
    if (std::abs(a.l[j]) > std::abs(b.l[j])) return false;
  return true;
}

bool divides(const Term& u, const Term& v) { return u.gen == v.gen && divides(u.mono, v.mono); }

LambdaMonomial quotient(const LambdaMonomial& b, const LambdaMonomial& a) {
  if (!divides(a, b))
    throw DivisibilityError(to_string(a) + " does not divide " + to_string(b));
  LambdaMonomial out = b;
  for (std::size_t i = 0; i < out.k.size(); ++i) out.k[i] -= a.k[i];
  for (std::size_t j = 0; j < out.l.size(); ++j) out.l[j] -= a.l[j];
  return out;
}

LambdaMonomial quotient(const Term& v, const Term& u) {
  if (u.gen != v.gen)
    throw DivisibilityError(to_string(u) + " does not divide " + to_string(v));
  return quotient(v.mono, u.mono);
}

Term apply(const LambdaMonomial& lambda, const Term& u) { return {lambda * u.mono, u.gen}; }

std::string to_string(const LambdaMonomial& lambda) {
  std::string out;
  auto factor = [&](char name, std::size_t i, int e) {
    if (e == 0) return;
    if (!out.empty()) out += ' ';
    out += name;
    out += std::to_string(i + 1);
    if (e != 1) out += "^" + std::to_string(e);
  };
  for (std::size_t i = 0; i < lambda.k.size(); ++i) factor('d', i, lambda.k[i]);
  for (std::size_t j = 0; j < lambda.l.size(); ++j) factor('a', j, lambda.l[j]);
  return out.empty() ? "1" : out;
}

std::string to_string(const Term& u) {
  std::string y = "y" + std::to_string(u.gen + 1);
  std::string mono = to_string(u.mono);
  return mono == "1" ? y : mono + " " + y;
}

}  // namespace ddim
