#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ddim/arith.hpp"

namespace ddim {

/// Numerical polynomial in k variables, stored in the binomial basis
///
///   f(t_1..t_k) = sum_i a_i * C(t_1+i_1, i_1) * ... * C(t_k+i_k, i_k)
///
/// with integer coefficients a_i. Every stored index satisfies i_j <= degree_bounds[j]
/// and zero coefficients are never stored.
class NumericalPolynomial {
 public:
  NumericalPolynomial() = default;
  explicit NumericalPolynomial(std::vector<int> degree_bounds);
  NumericalPolynomial(std::vector<int> degree_bounds, std::map<MultiIndex, Integer> coeffs);

  static NumericalPolynomial constant(std::size_t num_vars, const Integer& value);
  /// a * C(t_1+i_1, i_1)...C(t_k+i_k, i_k); bounds default to the index itself.
  static NumericalPolynomial basis_term(const MultiIndex& index, const Integer& a = 1);

  std::size_t num_vars() const { return bounds_.size(); }
  const std::vector<int>& degree_bounds() const { return bounds_; }
  const std::map<MultiIndex, Integer>& coeffs() const { return coeffs_; }
  Integer coeff(const MultiIndex& index) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Total degree; std::nullopt stands for the degree of the zero polynomial.
  std::optional<int> total_degree() const;
  /// Degree in one variable; std::nullopt for the zero polynomial.
  std::optional<int> degree_in(std::size_t var) const;

  /// Exact value at an integer point. Throws ArgumentError on a length mismatch.
  Rational evaluate(std::span<const std::int64_t> r) const;
  Rational evaluate(std::initializer_list<std::int64_t> r) const {
    return evaluate(std::span<const std::int64_t>(r.begin(), r.size()));
  }

  /// Coefficients in the monomial basis t_1^{e_1}...t_k^{e_k}.
  std::map<MultiIndex, Rational> to_monomials() const;
  /// Inverse of to_monomials. Throws ArgumentError if the result is not integer-valued.
  static NumericalPolynomial from_monomials(std::size_t num_vars,
                                            const std::map<MultiIndex, Rational>& monomials);

  /// Same polynomial with wider degree bounds (componentwise max).
  NumericalPolynomial with_bounds(std::vector<int> bounds) const;

  bool operator==(const NumericalPolynomial& other) const;

 private:
  std::vector<int> bounds_;
  std::map<MultiIndex, Integer> coeffs_;
};

NumericalPolynomial add(const NumericalPolynomial& f, const NumericalPolynomial& g);
NumericalPolynomial negate(const NumericalPolynomial& f);
NumericalPolynomial subtract(const NumericalPolynomial& f, const NumericalPolynomial& g);
NumericalPolynomial scale(const NumericalPolynomial& f, const Integer& c);
/// Product of polynomials in disjoint variable sets: f(t_1..t_a) * g(t_{a+1}..t_{a+b}).
NumericalPolynomial tensor(const NumericalPolynomial& f, const NumericalPolynomial& g);

inline NumericalPolynomial operator+(const NumericalPolynomial& f, const NumericalPolynomial& g) {
  return add(f, g);
}
inline NumericalPolynomial operator-(const NumericalPolynomial& f, const NumericalPolynomial& g) {
  return subtract(f, g);
}
inline NumericalPolynomial operator-(const NumericalPolynomial& f) { return negate(f); }

/// Recovers the unique polynomial with the given degree bounds from exact values.
///
/// The grid origin h is the componentwise minimum of the supplied points; the points
/// h + {0..bound_k} along every axis must all be present. Extra points are allowed and
/// are checked against the result. Coefficients come from iterated forward differences:
/// along one axis Delta^j f(h) = sum_{i>=j} a_i C(h+i, i-j), which is unitriangular.
NumericalPolynomial interpolate(const std::map<IntVec, Integer>& values,
                                const std::vector<int>& degree_bounds);

/// Elements of S that are maximal under at least one of the (k)! lexicographic orders
/// obtained by permuting coordinate priority.
std::set<MultiIndex> maximal_lex_elements(const std::set<MultiIndex>& points);

struct InvariantReport {
  std::optional<int> total_degree;  ///< nullopt for the zero polynomial
  MultiIndex top_index;             ///< (m_1,..,m_p,n)
  Integer leading_coeff;            ///< a_{m_1..m_p n}
  Rational trdeg_candidate;         ///< leading_coeff / 2^n
  bool leading_divisible = true;    ///< 2^n | leading_coeff
  std::set<MultiIndex> e_set;
  std::map<MultiIndex, Integer> e_prime;
  std::map<MultiIndex, Integer> top_degree_coeffs;  ///< binomial-basis, |i| = d

  bool operator==(const InvariantReport&) const = default;
};

/// Generator-independent data of a dimension polynomial with partition blocks (m_1..m_p)
/// and n automorphisms.
InvariantReport invariants(const NumericalPolynomial& f, std::span<const int> blocks, int n);

/// "t1*t2 + 4*t1*t3 + 1": monomials by decreasing total degree, then decreasing exponents.
/// With a single variable the name is "t".
std::string format_monomial(const NumericalPolynomial& f);
/// "2*C(t1+1,1)*C(t2+1,1) - 3"
std::string format_binomial(const NumericalPolynomial& f);

}  // namespace ddim
