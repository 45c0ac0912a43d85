#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ddim/ddpoly.hpp"

namespace ddim {

/// Elements listed by increasing rank; pairwise reduced, none in the coefficient field.
struct AutoreducedSet {
  std::vector<DeltaSigmaPolynomial> elements;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
};

/// Sorts by rank and checks the autoreduced property. Throws PreconditionError otherwise.
AutoreducedSet make_autoreduced(std::vector<DeltaSigmaPolynomial> elements);

/// One factor gamma(I_k)^e or gamma(S_k)^e of the multiplier J.
struct MultiplierFactor {
  std::size_t index = 0;  ///< position of A_k in the set
  bool separant = false;  ///< S_k when true, I_k otherwise
  LambdaMonomial shift;   ///< gamma
  int exponent = 1;
};

struct ReductionResult {
  DeltaSigmaPolynomial remainder;
  std::vector<MultiplierFactor> multiplier;  ///< empty means J = 1
  std::size_t steps = 0;
};

/// B is reduced with respect to A. Throws PreconditionError if A is in the field.
bool is_reduced(const DeltaSigmaPolynomial& b, const DeltaSigmaPolynomial& a);
bool is_reduced(const DeltaSigmaPolynomial& b, const std::vector<DeltaSigmaPolynomial>& set);

bool is_autoreduced(const std::vector<DeltaSigmaPolynomial>& set);

/// J B = B_0 mod [set], with B_0 reduced with respect to every element of the set.
ReductionResult reduce(const DeltaSigmaPolynomial& b, const AutoreducedSet& set);

/// less means the first set has lower rank.
std::strong_ordering set_rank_compare(const AutoreducedSet& a, const AutoreducedSet& b);

/// Minimal elements of {lambda A} under divisibility of sigma-leaders.
AutoreducedSet principal_charset(const DeltaSigmaPolynomial& a);

enum class Coherence { kCertified, kViolation, kInconclusive };

struct CoherenceReport {
  Coherence verdict = Coherence::kInconclusive;
  int depth = 0;
  int structural_bound = 0;
  /// Nonzero remainder that should have vanished, with a description of its origin.
  std::optional<DeltaSigmaPolynomial> witness;
  std::string witness_origin;
};

/// Smallest depth at which a clean bounded check counts as a certificate: the largest
/// spread of an automorphism exponent inside one element, plus one.
int coherence_bound(const AutoreducedSet& set);

/// Checks that every lambda A_i with ord lambda <= depth, and every pair combination at the
/// minimal common multiples of similar sigma-leaders, reduces to zero. Requires linear
/// elements. depth < 0 selects the structural bound.
CoherenceReport is_coherent(const AutoreducedSet& set, int depth = -1);

/// Characteristic set of the linear ideal generated by g. Throws NonlinearError for
/// nonlinear input and InconsistentSystemError if a nonzero constant is derived.
AutoreducedSet complete_linear(const std::vector<DeltaSigmaPolynomial>& g, int max_rounds = 64);

}  // namespace ddim
