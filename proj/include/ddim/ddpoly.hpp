#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ddim/coefficient.hpp"
#include "ddim/lambda.hpp"

namespace ddim {

/// Product of powers of terms; sorted by the structural term order, positive exponents.
/// The empty product is 1.
using PowerProduct = std::vector<std::pair<Term, int>>;

int total_degree(const PowerProduct& pp);

/// Sparse difference-differential polynomial sum c_M * M over power products M.
class DeltaSigmaPolynomial {
 public:
  explicit DeltaSigmaPolynomial(std::shared_ptr<const Shape> shape);
  explicit DeltaSigmaPolynomial(const Shape& shape)
      : DeltaSigmaPolynomial(std::make_shared<const Shape>(shape)) {}

  static DeltaSigmaPolynomial constant(std::shared_ptr<const Shape> shape, const Coefficient& c);
  static DeltaSigmaPolynomial term(std::shared_ptr<const Shape> shape, const Term& u,
                                   const Coefficient& c = 1, int power = 1);

  const Shape& shape() const { return *shape_; }
  const std::shared_ptr<const Shape>& shape_ptr() const { return shape_; }
  const std::map<PowerProduct, Coefficient>& monomials() const { return monomials_; }

  bool is_zero() const { return monomials_.empty(); }
  /// No term occurs: the polynomial is an element of the coefficient field.
  bool in_field() const;
  bool is_linear() const;
  Coefficient constant_part() const;
  /// Coefficient of the degree-one monomial u.
  Coefficient coefficient(const Term& u) const;
  std::set<Term> terms() const;
  int degree_in(const Term& u) const;

  void add(const PowerProduct& pp, const Coefficient& c);

  DeltaSigmaPolynomial operator-() const;
  DeltaSigmaPolynomial& operator+=(const DeltaSigmaPolynomial& other);
  DeltaSigmaPolynomial& operator-=(const DeltaSigmaPolynomial& other);
  friend DeltaSigmaPolynomial operator+(DeltaSigmaPolynomial a, const DeltaSigmaPolynomial& b) {
    return a += b;
  }
  friend DeltaSigmaPolynomial operator-(DeltaSigmaPolynomial a, const DeltaSigmaPolynomial& b) {
    return a -= b;
  }
  friend DeltaSigmaPolynomial operator*(const DeltaSigmaPolynomial& a,
                                        const DeltaSigmaPolynomial& b);
  DeltaSigmaPolynomial scaled(const Coefficient& c) const;
  bool operator==(const DeltaSigmaPolynomial& other) const;

 private:
  std::shared_ptr<const Shape> shape_;
  std::map<PowerProduct, Coefficient> monomials_;
};

/// Highest term under one order. Throws NoLeaderError for elements of the field.
Term highest_term(const DeltaSigmaPolynomial& a, OrderId order);

struct Leaders {
  std::vector<Term> block;  ///< u_A^{(1)}, ..., u_A^{(p)}
  Term sigma;               ///< v_A
};

Leaders leaders(const DeltaSigmaPolynomial& a);

/// (I_A, S_A): leading coefficient and partial derivative with respect to v_A.
std::pair<DeltaSigmaPolynomial, DeltaSigmaPolynomial> initial_separant(
    const DeltaSigmaPolynomial& a);

struct RankVector {
  Term v;
  int degree = 0;
  std::vector<std::int64_t> block_ords;  ///< ord_i u_A^{(i)}
};

RankVector rank_vector(const DeltaSigmaPolynomial& a);
/// Elements of the field have the lowest rank; two of them compare equal.
std::strong_ordering rank_compare(const DeltaSigmaPolynomial& a, const DeltaSigmaPolynomial& b);

/// lambda A: alpha shifts terms and renames constants, each delta is applied as a derivation.
DeltaSigmaPolynomial apply_lambda(const LambdaMonomial& lambda, const DeltaSigmaPolynomial& a);

std::string to_string(const PowerProduct& pp);
std::string to_string(const DeltaSigmaPolynomial& a);

}  // namespace ddim
