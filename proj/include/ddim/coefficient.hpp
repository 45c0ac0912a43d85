#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ddim/arith.hpp"
#include "ddim/lambda.hpp"

namespace ddim {

/// lambda applied to a declared constant c. Distinct (base, shift) pairs are treated as
/// algebraically independent, so delta and alpha act on constants by renaming the shift.
struct Symbol {
  std::string base;
  LambdaMonomial shift;

  auto operator<=>(const Symbol&) const = default;
};

std::string to_string(const Symbol& s);

/// Deterministic pseudo-random substitution of rationals for symbols.
class Specialization {
 public:
  explicit Specialization(std::uint64_t seed) : seed_(seed) {}
  Rational value(const Symbol& s) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Element of the coefficient field: a polynomial with rational coefficients in the
/// symbols. Reduction never divides by coefficients, so ring operations suffice.
class Coefficient {
 public:
  using Monomial = std::vector<std::pair<Symbol, int>>;  // sorted, positive exponents

  Coefficient() = default;
  Coefficient(const Rational& value);  // NOLINT: implicit lift of rationals
  Coefficient(int value) : Coefficient(Rational(value)) {}  // NOLINT
  static Coefficient symbol(const Symbol& s);
  static Coefficient monomial(Monomial mono, const Rational& c);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Throws PreconditionError unless is_rational().
  Rational rational_value() const;
  std::set<Symbol> symbols() const;

  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& other);
  Coefficient& operator-=(const Coefficient& other);
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  bool operator==(const Coefficient&) const = default;

  /// Action of lambda: alpha renames symbols, each delta acts as a derivation.
  Coefficient apply(const LambdaMonomial& lambda) const;
  Rational evaluate(const Specialization& spec) const;

 private:
  std::map<Monomial, Rational> terms_;
};

std::string to_string(const Coefficient& c);

}  // namespace ddim
