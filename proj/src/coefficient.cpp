#include "ddim/coefficient.hpp"

#include <algorithm>

#include "ddim/errors.hpp"

namespace ddim {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Monomial = Coefficient::Monomial;

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
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

// One derivation step delta_i on c * mono.
Coefficient derive(const Monomial& mono, const Rational& c, int i) {
  Coefficient out;
  for (std::size_t pos = 0; pos < mono.size(); ++pos) {
    const auto& [sym, e] = mono[pos];
    Monomial rest = mono;
    if (e == 1)
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
    else
      rest[pos].second -= 1;
    Symbol d = sym;
    d.shift.k[i] += 1;
    out += Coefficient::monomial(multiply(rest, {{d, 1}}), c * e);
  }
  return out;
}

}  // namespace

std::string to_string(const Symbol& s) {
  bool plain = s.shift.is_identity();
  return plain ? s.base : "[" + to_string(s.shift) + "]" + s.base;
}

Rational Specialization::value(const Symbol& s) const {
  std::uint64_t h = splitmix(seed_);
  for (unsigned char ch : s.base) h = splitmix(h ^ ch);
  for (int x : s.shift.k) h = splitmix(h ^ static_cast<std::uint64_t>(x + 0x1000));
  for (int x : s.shift.l) h = splitmix(h ^ static_cast<std::uint64_t>(x + 0x2000000));
  return Rational(static_cast<long>(1 + h % 1000003));
}

Coefficient::Coefficient(const Rational& value) {
  if (value != 0) terms_.emplace(Monomial{}, value);
}

Coefficient Coefficient::monomial(Monomial mono, const Rational& c) {
  Coefficient out;
  if (c != 0) out.terms_.emplace(std::move(mono), c);
  return out;
}

Coefficient Coefficient::symbol(const Symbol& s) {
  Coefficient out;
  out.terms_.emplace(Monomial{{s, 1}}, Rational(1));
  return out;
}

bool Coefficient::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Coefficient::rational_value() const {
  if (!is_rational()) throw PreconditionError("coefficient " + to_string(*this) +
                                              " is not a rational number");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::set<Symbol> Coefficient::symbols() const {
  std::set<Symbol> out;
  for (const auto& [mono, c] : terms_)
    for (const auto& [s, e] : mono) out.insert(s);
  return out;
}

Coefficient Coefficient::operator-() const {
  Coefficient out = *this;
  for (auto& [mono, c] : out.terms_) c = -c;
  return out;
}

Coefficient& Coefficient::operator+=(const Coefficient& other) {
  for (const auto& [mono, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& other) { return *this += -other; }

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  Coefficient out;
  if (a.is_rational() && b.is_rational()) return Coefficient(a.rational_value() * b.rational_value());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial mono = multiply(ma, mb);
      Rational c = ca * cb;
      auto [it, inserted] = out.terms_.emplace(std::move(mono), c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Coefficient Coefficient::apply(const LambdaMonomial& lambda) const {
  if (is_rational()) return lambda.has_delta() ? Coefficient() : *this;
  Coefficient cur;
  // alpha part: rename every symbol.
  for (const auto& [mono, c] : terms_) {
    Monomial renamed;
    for (const auto& [s, e] : mono) {
      Symbol t = s;
      if (t.shift.l.size() != lambda.l.size() || t.shift.k.size() != lambda.k.size())
        throw ArgumentError("symbol " + to_string(s) + " does not match the shape");
      for (std::size_t j = 0; j < lambda.l.size(); ++j) t.shift.l[j] += lambda.l[j];
      renamed.emplace_back(std::move(t), e);
    }
    std::sort(renamed.begin(), renamed.end());
    cur.terms_.emplace(std::move(renamed), c);
  }
  for (std::size_t i = 0; i < lambda.k.size(); ++i) {
    for (int step = 0; step < lambda.k[i]; ++step) {
      Coefficient next;
      for (const auto& [mono, c] : cur.terms_) next += derive(mono, c, static_cast<int>(i));
      cur = std::move(next);
    }
  }
  return cur;
}

Rational Coefficient::evaluate(const Specialization& spec) const {
  Rational sum = 0;
  for (const auto& [mono, c] : terms_) {
    Rational term = c;
    for (const auto& [s, e] : mono) {
      Rational v = spec.value(s);
      for (int r = 0; r < e; ++r) term *= v;
    }
    sum += term;
  }
  return sum;
}

std::string to_string(const Coefficient& c) {
  if (c.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
    const auto& [mono, q] = *it;
    Rational v = q;
    if (!first) {
      out += v < 0 ? " - " : " + ";
      v = abs(v);
    }
    first = false;
    std::string factors;
    for (const auto& [s, e] : mono) {
      if (!factors.empty()) factors += "*";
      factors += to_string(s);
      if (e != 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty())
      out += v.get_str();
    else if (v == 1)
      out += factors;
    else if (v == -1)
      out += "-" + factors;
    else
      out += v.get_str() + "*" + factors;
  }
  return out;
}

}  // namespace ddim
