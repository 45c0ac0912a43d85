#pragma once

#include <set>
#include <vector>

#include "ddim/arith.hpp"
#include "ddim/numpoly.hpp"

namespace ddim {

/// Partition of {1..m} into contiguous blocks of sizes (m_1..m_p), plus the number n of
/// signed (Z) coordinates that follow the m unsigned ones.
struct PartitionedShape {
  std::vector<int> blocks;
  int n = 0;

  int m() const;
  int p() const { return static_cast<int>(blocks.size()); }
  void validate() const;
};

/// Finite subset of N^m.
struct PointSetN {
  PartitionedShape shape;
  std::set<std::vector<int>> points;
  void validate() const;
};

/// Finite subset of N^m x Z^n; the last n coordinates are signed.
struct PointSetZ {
  PartitionedShape shape;
  std::set<std::vector<int>> points;
  void validate() const;
};

/// Upper limit on the number of minimal points fed to inclusion-exclusion.
inline constexpr int kDefaultMaxGenerators = 20;

/// Minimal points under the product order.
PointSetN minimal_elements(const PointSetN& e);

/// Dimension polynomial of E in p variables (one per block), via the inclusion-exclusion
/// sum over subsets of the minimal elements. Throws ArgumentError when more than
/// max_generators minimal elements remain.
NumericalPolynomial omega_E(const PointSetN& e, int max_generators = kDefaultMaxGenerators);

/// Brute-force Card V_E(r): points v with ord_k v <= r_k that dominate no element of E.
std::int64_t count_V_E(const PointSetN& e, const IntVec& r);

/// a ⊴ w: signed parts share a closed orthant and (unsigned, |signed|) parts compare
/// under the product order.
bool orthant_leq(const std::vector<int>& a, const std::vector<int>& w, int m);

/// Dimension polynomial of A ⊆ N^m x Z^n in p+1 variables, through the embedding
/// rho into N^{m+2n} and the extra points e_i.
NumericalPolynomial phi_A(const PointSetZ& a, int max_generators = kDefaultMaxGenerators);

/// Brute-force Card W_A(r) with r of length p+1.
std::int64_t count_W_A(const PointSetZ& a, const IntVec& r);

/// C(t_1+m_1, m_1)...C(t_p+m_p, m_p) * sum_i (-1)^{n-i} 2^i C(n,i) C(t_{p+1}+i, i).
NumericalPolynomial free_phi(const PartitionedShape& shape);

}  // namespace ddim
