#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ddim/arith.hpp"

namespace ddim {

/// Ambient data: the partition of the derivations into blocks, the number of automorphisms
/// and the number of differential indeterminates y_1..y_s.
struct Shape {
  std::vector<int> blocks;  ///< (m_1, ..., m_p)
  int n = 0;
  int s = 1;

  int m() const;
  int p() const { return static_cast<int>(blocks.size()); }
  /// Block index of derivation i (0-based).
  int block_of(int i) const;
  void validate() const;
  bool operator==(const Shape&) const = default;
};

/// delta_1^{k_1}...delta_m^{k_m} alpha_1^{l_1}...alpha_n^{l_n}.
struct LambdaMonomial {
  std::vector<int> k;
  std::vector<int> l;

  static LambdaMonomial identity(const Shape& shape);
  static LambdaMonomial delta(const Shape& shape, int i, int power = 1);
  static LambdaMonomial alpha(const Shape& shape, int j, int power = 1);

  bool is_identity() const;
  bool has_delta() const;  ///< lambda_Delta != 1
  LambdaMonomial delta_part() const;
  LambdaMonomial sigma_part() const;

  /// Structural order, used only for containers.
  auto operator<=>(const LambdaMonomial&) const = default;
};

LambdaMonomial operator*(const LambdaMonomial& a, const LambdaMonomial& b);

/// lambda y_gen, with gen 0-based.
struct Term {
  LambdaMonomial mono;
  int gen = 0;

  auto operator<=>(const Term&) const = default;
};

/// Order selector: 0..p-1 are the block orders <_1..<_p, kSigmaOrder is <_sigma.
using OrderId = int;
inline constexpr OrderId kSigmaOrder = -1;

/// (ord_1, ..., ord_p, ord_sigma, ord).
std::vector<std::int64_t> ord_vector(const LambdaMonomial& lambda, const Shape& shape);
std::int64_t ord_block(const LambdaMonomial& lambda, const Shape& shape, int block);
std::int64_t ord_sigma(const LambdaMonomial& lambda);
std::int64_t ord_total(const LambdaMonomial& lambda);

/// The (m+2n+p+2)-tuple whose lexicographic order defines <_order.
std::vector<std::int64_t> order_tuple(const LambdaMonomial& lambda, OrderId order,
                                      const Shape& shape);

std::strong_ordering compare(const LambdaMonomial& a, const LambdaMonomial& b, OrderId order,
                             const Shape& shape);
/// Monomials first, then the generator index (larger index is higher).
std::strong_ordering compare(const Term& a, const Term& b, OrderId order, const Shape& shape);

/// Signed exponent vectors share a closed orthant.
bool similar(const LambdaMonomial& a, const LambdaMonomial& b);
bool similar(const Term& a, const Term& b);
bool similar(const Term& u, const LambdaMonomial& lambda);

bool divides(const LambdaMonomial& a, const LambdaMonomial& b);
/// Same generator and divisibility of the monomials.
bool divides(const Term& u, const Term& v);
/// b / a. Throws DivisibilityError unless divides(a, b).
LambdaMonomial quotient(const LambdaMonomial& b, const LambdaMonomial& a);
LambdaMonomial quotient(const Term& v, const Term& u);

Term apply(const LambdaMonomial& lambda, const Term& u);

/// "d1^2 d2 a1^-3"; the identity renders as "1".
std::string to_string(const LambdaMonomial& lambda);
/// "d1^2 a1 y1"; a bare generator renders as "y1".
std::string to_string(const Term& u);

}  // namespace ddim
