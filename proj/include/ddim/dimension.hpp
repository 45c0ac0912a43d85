#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddim/charset.hpp"
#include "ddim/numpoly.hpp"
#include "ddim/oracle.hpp"

namespace ddim {

/// A finitely generated extension presented by generators y_1..y_s and defining equations.
struct ExtensionSpec {
  std::shared_ptr<const Shape> shape;
  std::vector<std::string> constants;
  std::vector<DeltaSigmaPolynomial> polynomials;
  /// Characteristic set supplied by the user; computed from the polynomials when absent.
  std::optional<std::vector<DeltaSigmaPolynomial>> charset;

  /// Throws ArgumentError when shapes disagree or nothing fixes the shape.
  void validate() const;
};

struct DimensionOptions {
  int max_threshold = 64;
  int max_rounds = 64;
  int coherence_depth = -1;
  /// Extra points checked beyond the thresholds (at least 3 are always checked).
  int oracle_checks = 3;
  bool run_oracle = true;
  OracleOptions oracle;
};

struct UCounts {
  std::int64_t u1 = 0;
  std::int64_t u2 = 0;
  std::int64_t total() const { return u1 + u2; }
};

struct VerificationPoint {
  IntVec r;
  Rational phi;
  UCounts counts;
  std::optional<std::int64_t> oracle;
  bool pass = false;
};

struct U2Fit {
  NumericalPolynomial psi;
  IntVec threshold;  ///< grid origin at which the fit verified
};

struct DimensionReport {
  NumericalPolynomial phi;
  NumericalPolynomial u1;
  NumericalPolynomial u2;
  InvariantReport invariants;
  AutoreducedSet charset;
  std::string charset_source;  ///< "principal", "completion" or "supplied"
  CoherenceReport coherence;
  IntVec threshold;
  std::vector<VerificationPoint> verification;
};

/// Sum over generators of phi_A for the sigma-leader exponents on that generator.
NumericalPolynomial u1_polynomial(const AutoreducedSet& sigma, const Shape& shape);

/// Card U^(1) and Card U^(2) in the box r, by enumerating every term.
UCounts count_U(const AutoreducedSet& sigma, const Shape& shape, const IntVec& r);

/// psi with psi(r) = Card U^(2)(r) for large r, fitted on a grid whose origin doubles until
/// an extra shell of points agrees. Throws ThresholdError past max_threshold.
U2Fit u2_polynomial(const AutoreducedSet& sigma, const Shape& shape, int max_threshold = 64);

/// Characteristic set, Phi = u1 + u2, invariants and a verification against count_U and
/// the oracle. Throws OracleError when the oracle disagrees.
DimensionReport dimension_polynomial(const ExtensionSpec& spec,
                                     const DimensionOptions& options = {});

struct StrengthRow {
  IntVec r;
  Rational phi;
  std::int64_t counted = 0;
  bool agree = false;
};

struct StrengthTable {
  NumericalPolynomial phi;
  std::vector<StrengthRow> rows;
  /// Smallest T such that every row with all r_i >= T agrees.
  std::optional<std::int64_t> threshold;
};

/// Phi against oracle counts for every r in [0, box].
StrengthTable strength_table(const ExtensionSpec& spec, const IntVec& box,
                             const DimensionOptions& options = {});

struct UnivariateResult {
  NumericalPolynomial phi;  ///< one variable
  std::int64_t threshold = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> values;
};

/// Univariate polynomial from oracle counts over total-order balls.
UnivariateResult univariate_polynomial(const ExtensionSpec& spec,
                                       const DimensionOptions& options = {});

struct Comparison {
  bool distinguished = false;
  std::vector<std::string> differences;
  bool polynomials_equal = false;
  DimensionReport first;
  DimensionReport second;
};

/// Compares the generator-independent invariants of two extensions of the same shape.
Comparison compare_extensions(const ExtensionSpec& a, const ExtensionSpec& b,
                              const DimensionOptions& options = {});

}  // namespace ddim
